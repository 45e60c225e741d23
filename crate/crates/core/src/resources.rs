//! Source states and mode-mismatch noise.
//!
//! Every resource is described by its covariance matrix in the standard
//! form `A = x·I`, `B = y·I`, `C = z·σ₃`. Mode B is the one that meets the
//! ancilla beamsplitter and is later sent down the fibre.

use nalgebra::Matrix4;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::TwoModeCM;

/// Largest photon number accepted for a subtracted resource.
pub const MAX_SUBTRACTED_PHOTONS: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ResourceKind {
    Tmsv,
    /// Heralded on `k` photons at the ancilla detector.
    Subtracted { k: u32 },
    /// Heralded on no click; identical to `Subtracted { k: 0 }`.
    ZeroPhotonCatalysis,
    /// Zero-photon catalysis where a no-click event is, with probability
    /// `p`, a lost ancilla photon instead of a vacuum projection.
    ZpcWithLoss { p: f64 },
}

impl ResourceKind {
    pub fn label(&self) -> String {
        match self {
            ResourceKind::Tmsv => "tmsv".into(),
            ResourceKind::Subtracted { k } => format!("subtracted-{k}"),
            ResourceKind::ZeroPhotonCatalysis => "zpc".into(),
            ResourceKind::ZpcWithLoss { p } => format!("zpc-loss-{p}"),
        }
    }
}

/// Which source to build and at what operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResourceSpec {
    pub kind: ResourceKind,
    /// Two-mode squeezing parameter.
    pub r: f64,
    /// Transmittance of the ancilla beamsplitter.
    pub t_bs: f64,
}

impl ResourceSpec {
    pub fn new(kind: ResourceKind, r: f64, t_bs: f64) -> Result<Self> {
        let spec = ResourceSpec { kind, r, t_bs };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r > 0.0 && self.r.is_finite()) {
            return Err(Error::domain(format!("squeezing r must be positive, got {}", self.r)));
        }
        if !(self.t_bs > 0.0 && self.t_bs <= 1.0) {
            return Err(Error::domain(format!(
                "beamsplitter transmittance must lie in (0, 1], got {}",
                self.t_bs
            )));
        }
        match self.kind {
            ResourceKind::Subtracted { k } if k > MAX_SUBTRACTED_PHOTONS => Err(Error::domain(
                format!("k = {k} exceeds the supported maximum {MAX_SUBTRACTED_PHOTONS}"),
            )),
            ResourceKind::ZpcWithLoss { p } if !(0.0..=1.0).contains(&p) => Err(Error::domain(
                format!("loss probability must lie in [0, 1], got {p}"),
            )),
            _ => Ok(()),
        }
    }

    /// Covariance matrix of the heralded source, before mode-mismatch noise.
    pub fn covariance(&self) -> Result<TwoModeCM> {
        self.validate()?;
        match self.kind {
            ResourceKind::Tmsv => tmsv(self.r),
            ResourceKind::Subtracted { k } => subtracted_tmsv(self.r, self.t_bs, k),
            ResourceKind::ZeroPhotonCatalysis => subtracted_tmsv(self.r, self.t_bs, 0),
            ResourceKind::ZpcWithLoss { p } => zpc_with_loss(self.r, self.t_bs, p),
        }
    }

    /// Source covariance with mode-mismatch noise `delta` on every
    /// diagonal entry. For the loss mixture the noise goes on after mixing.
    pub fn noisy_covariance(&self, delta: f64) -> Result<TwoModeCM> {
        apply_mode_mismatch(&self.covariance()?, delta)
    }

    /// Heralding probability; one for TMSV and for the loss mixture, whose
    /// heralding statistics are not modelled.
    pub fn heralding_probability(&self) -> Result<f64> {
        match self.kind {
            ResourceKind::Tmsv | ResourceKind::ZpcWithLoss { .. } => Ok(1.0),
            ResourceKind::Subtracted { k } => subtraction_probability(self.r, self.t_bs, k),
            ResourceKind::ZeroPhotonCatalysis => subtraction_probability(self.r, self.t_bs, 0),
        }
    }
}

/// `r` such that `cosh 2r` equals the given value.
pub fn r_from_cosh2r(cosh2r: f64) -> Result<f64> {
    if !(cosh2r > 1.0 && cosh2r.is_finite()) {
        return Err(Error::domain(format!("cosh 2r must exceed 1, got {cosh2r}")));
    }
    Ok(cosh2r.acosh() / 2.0)
}

/// Mode-mismatch description: either the multimode detection model or a
/// direct value of the excess variance `δ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MismatchParams {
    /// Number of unmatched signal modes `N`.
    pub n_unmatched: u32,
    /// Number of matched signal modes `M`.
    pub m_matched: u32,
    /// Detection amplitude `ε` of the unmatched modes.
    pub epsilon: f64,
    /// Local-oscillator amplitude `α`.
    pub alpha: f64,
    /// Mean photon number per unmatched mode.
    pub n_bar: f64,
    /// When set, used as `δ` directly.
    pub delta_override: Option<f64>,
}

impl MismatchParams {
    pub fn direct(delta: f64) -> Self {
        MismatchParams {
            n_unmatched: 0,
            m_matched: 1,
            epsilon: 0.0,
            alpha: 1.0,
            n_bar: 0.0,
            delta_override: Some(delta),
        }
    }

    pub fn multimode(n_unmatched: u32, m_matched: u32, epsilon: f64, alpha: f64, n_bar: f64) -> Self {
        MismatchParams { n_unmatched, m_matched, epsilon, alpha, n_bar, delta_override: None }
    }

    pub fn delta(&self) -> Result<f64> {
        delta_from_multimode(self)
    }
}

impl Default for MismatchParams {
    fn default() -> Self {
        MismatchParams::direct(0.0)
    }
}

/// `δ = N ε² n̄ / (M α²)`, or the override when one is given.
pub fn delta_from_multimode(mm: &MismatchParams) -> Result<f64> {
    if let Some(delta) = mm.delta_override {
        if !(delta >= 0.0 && delta.is_finite()) {
            return Err(Error::domain(format!("delta must be non-negative, got {delta}")));
        }
        return Ok(delta);
    }
    if mm.m_matched == 0 {
        return Err(Error::domain("number of matched modes M must be at least 1"));
    }
    if !(mm.alpha > 0.0 && mm.alpha.is_finite()) {
        return Err(Error::domain(format!("local oscillator amplitude must be positive, got {}", mm.alpha)));
    }
    if !(0.0..=1.0).contains(&mm.epsilon) {
        return Err(Error::domain(format!("epsilon must lie in [0, 1], got {}", mm.epsilon)));
    }
    if !(mm.n_bar >= 0.0 && mm.n_bar.is_finite()) {
        return Err(Error::domain(format!("n_bar must be non-negative, got {}", mm.n_bar)));
    }
    Ok(f64::from(mm.n_unmatched) * mm.epsilon * mm.epsilon * mm.n_bar
        / (f64::from(mm.m_matched) * mm.alpha * mm.alpha))
}

fn check_squeezing(r: f64) -> Result<()> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::domain(format!("squeezing r must be non-negative, got {r}")));
    }
    Ok(())
}

fn check_transmittance(t_bs: f64) -> Result<()> {
    if !(t_bs > 0.0 && t_bs <= 1.0) {
        return Err(Error::domain(format!("beamsplitter transmittance must lie in (0, 1], got {t_bs}")));
    }
    Ok(())
}

/// Two-mode squeezed vacuum: `A = B = cosh 2r·I`, `C = sinh 2r·σ₃`.
pub fn tmsv(r: f64) -> Result<TwoModeCM> {
    check_squeezing(r)?;
    TwoModeCM::standard_form((2.0 * r).cosh(), (2.0 * r).cosh(), (2.0 * r).sinh())
}

/// Standard-form entries `(x, y, z)` of the `k`-photon-subtracted TMSV.
pub fn subtracted_entries(r: f64, t_bs: f64, k: u32) -> Result<(f64, f64, f64)> {
    check_squeezing(r)?;
    check_transmittance(t_bs)?;
    let tau = r.tanh();
    let lambda = tau * tau * t_bs;
    let denom = herald_denominator(r, t_bs);
    let k = f64::from(k);
    let x = 2.0 * (1.0 + k) / denom - 1.0;
    let y = 2.0 * (1.0 + k * lambda) / denom - 1.0;
    let z = 2.0 * t_bs.sqrt() * tau * (1.0 + k) / denom;
    Ok((x, y, z))
}

pub fn subtracted_tmsv(r: f64, t_bs: f64, k: u32) -> Result<TwoModeCM> {
    if k > MAX_SUBTRACTED_PHOTONS {
        return Err(Error::domain(format!(
            "k = {k} exceeds the supported maximum {MAX_SUBTRACTED_PHOTONS}"
        )));
    }
    let (x, y, z) = subtracted_entries(r, t_bs, k)?;
    TwoModeCM::standard_form(x, y, z)
}

/// Probability of detecting exactly `k` photons at the ancilla.
pub fn subtraction_probability(r: f64, t_bs: f64, k: u32) -> Result<f64> {
    check_squeezing(r)?;
    check_transmittance(t_bs)?;
    let tau2 = r.tanh().powi(2);
    let denom = herald_denominator(r, t_bs);
    let ratio = tau2 * (1.0 - t_bs) / denom;
    Ok(r.cosh().powi(-2) / denom * ratio.powi(k as i32))
}

/// `1 − tanh²r·T` as `sech²r + tanh²r·(1 − T)`, which keeps full relative
/// precision when `tanh r` is close to one.
fn herald_denominator(r: f64, t_bs: f64) -> f64 {
    r.cosh().powi(-2) + r.tanh().powi(2) * (1.0 - t_bs)
}

/// Zero-photon catalysis mixed with the lost-ancilla branch, whose state is
/// `diag(cosh 2r, cosh 2r, 1, 1)`.
pub fn zpc_with_loss(r: f64, t_bs: f64, p: f64) -> Result<TwoModeCM> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!("loss probability must lie in [0, 1], got {p}")));
    }
    let (x, y, z) = subtracted_entries(r, t_bs, 0)?;
    let n = (2.0 * r).cosh();
    TwoModeCM::standard_form(p * n + (1.0 - p) * x, p + (1.0 - p) * y, (1.0 - p) * z)
}

/// Adds `delta` to every diagonal entry.
pub fn apply_mode_mismatch(v: &TwoModeCM, delta: f64) -> Result<TwoModeCM> {
    if !(delta >= 0.0 && delta.is_finite()) {
        return Err(Error::domain(format!("delta must be non-negative, got {delta}")));
    }
    TwoModeCM::new(v.matrix() + Matrix4::from_diagonal_element(delta))
}
