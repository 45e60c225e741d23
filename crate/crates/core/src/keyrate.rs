//! Devetak–Winter key rate under reverse reconciliation with heterodyne
//! (no-switching) detection on both sides.
//!
//! The rate carries no heralding-probability prefactor: a heralded resource
//! is prepared offline, so only the conditional state matters.

use crate::channel::{transmit, ChannelParams};
use crate::error::{Error, Result};
use crate::gaussian::{
    g_entropy, heterodyne_conditional, single_mode_symplectic, symplectic_spectrum, OneModeCM,
    TwoModeCM,
};
use crate::resources::{MismatchParams, ResourceSpec};

const RATE_TOL: f64 = 1e-9;

/// Every intermediate quantity of one key-rate evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateBreakdown {
    /// Mutual information between Alice and Bob, bits per pulse.
    pub i_ab: f64,
    /// Holevo bound on Eve's information about Bob's data.
    pub chi_be: f64,
    /// `max{0, β·I_AB − χ_BE}`.
    pub key_rate: f64,
    /// `β·I_AB − χ_BE` before clamping.
    pub raw_rate: f64,
    pub beta: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    /// Symplectic eigenvalue of Alice's state conditioned on Bob.
    pub lambda3: f64,
    pub v_source: TwoModeCM,
    pub v_shared: TwoModeCM,
    pub v_conditional: OneModeCM,
}

/// Heterodyne mutual information, summed over both quadratures.
pub fn mutual_information(v: &TwoModeCM) -> Result<f64> {
    let cond = heterodyne_conditional(v)?;
    mutual_information_with(v, &cond)
}

fn mutual_information_with(v: &TwoModeCM, cond: &OneModeCM) -> Result<f64> {
    let a = v.a();
    let quadrature = |marginal: f64, conditional: f64| -> Result<f64> {
        let ratio = (marginal + 1.0) / (conditional + 1.0);
        if !(ratio > 0.0 && ratio.is_finite()) {
            return Err(Error::numerical(format!("non-positive variance ratio {ratio}")));
        }
        Ok(0.5 * ratio.log2())
    };
    let info = quadrature(a[(0, 0)], cond.x_variance())? + quadrature(a[(1, 1)], cond.p_variance())?;
    if info < -RATE_TOL {
        return Err(Error::numerical(format!("negative mutual information {info:e}")));
    }
    Ok(info.max(0.0))
}

fn holevo_from_spectrum(l1: f64, l2: f64, l3: f64) -> Result<f64> {
    // Pure-state eigenvalues come out a few ulps of the matrix scale below
    // one; anything inside the physicality tolerance is treated as one.
    let s = |l: f64| {
        if l < 1.0 - RATE_TOL {
            return Err(Error::numerical(format!("unphysical symplectic eigenvalue {l}")));
        }
        g_entropy((l.max(1.0) - 1.0) / 2.0)
    };
    let chi = s(l1)? + s(l2)? - s(l3)?;
    if chi < -RATE_TOL {
        return Err(Error::numerical(format!("negative Holevo bound {chi:e}")));
    }
    Ok(chi.max(0.0))
}

/// Holevo bound on Eve's information about Bob's heterodyne outcomes.
pub fn holevo_bound(v: &TwoModeCM) -> Result<f64> {
    let (l1, l2) = symplectic_spectrum(v)?;
    let l3 = single_mode_symplectic(&heterodyne_conditional(v)?)?;
    holevo_from_spectrum(l1, l2, l3)
}

/// Key rate for an already transmitted covariance matrix. `v_source` is
/// only recorded in the breakdown.
pub fn rate_from_shared(v_source: TwoModeCM, v_shared: TwoModeCM, beta: f64) -> Result<RateBreakdown> {
    let cond = heterodyne_conditional(&v_shared)?;
    let i_ab = mutual_information_with(&v_shared, &cond)?;
    let (lambda1, lambda2) = symplectic_spectrum(&v_shared)?;
    let lambda3 = single_mode_symplectic(&cond)?;
    let chi_be = holevo_from_spectrum(lambda1, lambda2, lambda3)?;
    let raw_rate = beta * i_ab - chi_be;
    Ok(RateBreakdown {
        i_ab,
        chi_be,
        key_rate: if raw_rate > 0.0 { raw_rate } else { 0.0 },
        raw_rate,
        beta,
        lambda1,
        lambda2,
        lambda3,
        v_source,
        v_shared,
        v_conditional: cond,
    })
}

/// Full pipeline: source, mode-mismatch noise, channel, rates.
pub fn secret_key_rate(spec: &ResourceSpec, mm: &MismatchParams, ch: &ChannelParams) -> Result<RateBreakdown> {
    ch.validate()?;
    let source = spec.noisy_covariance(mm.delta()?)?;
    let shared = transmit(&source, ch)?;
    rate_from_shared(source, shared, ch.beta)
}
