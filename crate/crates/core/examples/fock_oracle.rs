//! Photon subtraction simulated in a truncated Fock space, compared with the
//! Gaussian closed forms for the heralded covariance matrix.

use cvkey::fock::{oracle_check, DEFAULT_CUTOFF};

fn main() -> cvkey::Result<()> {
    println!("{:>5} {:>5} {:>3} {:>14} {:>10} {:>10}", "r", "t_bs", "k", "P(k)", "|dP|", "|dV|");
    for r in [0.3, 0.5, 0.8] {
        for t_bs in [0.7, 0.9] {
            for k in 0..=2 {
                let c = oracle_check(r, t_bs, k, DEFAULT_CUTOFF)?;
                println!(
                    "{r:>5} {t_bs:>5} {k:>3} {:>14.8e} {:>10.2e} {:>10.2e}",
                    c.prob_oracle,
                    c.prob_deviation(),
                    c.cm_deviation
                );
            }
        }
    }
    Ok(())
}
