//! CSV emission. Floats are written in scientific notation with nine
//! significant digits.

use std::io::{self, Write};

use crate::analysis::{SweepAxis, SweepRow};
use crate::fock::OracleComparison;
use crate::keyrate::RateBreakdown;
use crate::resources::ResourceSpec;

pub fn num(v: f64) -> String {
    format!("{v:.8e}")
}

pub fn write_rate(out: &mut dyn Write, spec: &ResourceSpec, delta: f64, b: &RateBreakdown, length_km: f64, eta: f64) -> io::Result<()> {
    writeln!(
        out,
        "resource,r,t_bs,delta,L_km,eta,beta,key_rate_bits,raw_rate,i_ab_bits,chi_be_bits,lambda1,lambda2,lambda3"
    )?;
    let fields = [spec.r, spec.t_bs, delta, length_km, eta, b.beta, b.key_rate, b.raw_rate, b.i_ab, b.chi_be, b.lambda1, b.lambda2, b.lambda3];
    writeln!(out, "{},{}", spec.kind.label(), fields.map(num).join(","))
}

pub fn write_sweep(out: &mut dyn Write, axis: SweepAxis, rows: &[SweepRow]) -> io::Result<()> {
    writeln!(out, "{},key_rate_bits,i_ab_bits,chi_be_bits,entangled,raw_rate", axis.column())?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            num(r.axis_value),
            num(r.key_rate),
            num(r.i_ab),
            num(r.chi_be),
            r.entangled,
            num(r.raw_rate)
        )?;
    }
    Ok(())
}

pub fn write_oracle(out: &mut dyn Write, rows: &[(OracleComparison, bool)]) -> io::Result<()> {
    writeln!(
        out,
        "r,t_bs,k,cutoff,prob_oracle,prob_closed,x_oracle,x_closed,y_oracle,y_closed,z_oracle,z_closed,cm_max_dev,max_mean,pass"
    )?;
    for (c, pass) in rows {
        let (xo, yo, zo) = c.entries_oracle;
        let (xc, yc, zc) = c.entries_closed;
        let floats = [c.prob_oracle, c.prob_closed, xo, xc, yo, yc, zo, zc, c.cm_deviation, c.max_mean];
        writeln!(out, "{},{},{},{},{},{}", num(c.r), num(c.t_bs), c.k, c.cutoff, floats.map(num).join(","), pass)?;
    }
    Ok(())
}
