//! Logarithmic negativity of a TMSV under mode-mismatch noise, and the
//! noise level at which it becomes separable.

use cvkey::analysis::separability_threshold;
use cvkey::gaussian::log_negativity;
use cvkey::resources::{apply_mode_mismatch, tmsv};

/// Squeezing with `cosh 2r ≈ 50`; the nearness to `ln 10` is a coincidence.
#[allow(clippy::approx_constant)]
const R_COSH2R_50: f64 = 2.3026;

fn main() -> cvkey::Result<()> {
    for r in [0.3, 1.0, R_COSH2R_50] {
        let star = separability_threshold(r)?;
        println!("r = {r}: separable for delta >= {star:.9}");
        for frac in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let delta = frac * star;
            let e_n = log_negativity(&apply_mode_mismatch(&tmsv(r)?, delta)?)?;
            println!("  delta = {delta:.6}  E_N = {e_n:.6}");
        }
    }
    Ok(())
}
