//! Fibre transmission and detector noise.

use nalgebra::Matrix2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::TwoModeCM;

pub const DEFAULT_LOSS_COEFF: f64 = 0.02;
pub const DEFAULT_BETA: f64 = 0.95;

/// Link and post-processing parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelParams {
    /// Fibre length in km.
    pub length_km: f64,
    /// Exponent coefficient `l` in `T = ½·10^(−l·L)`.
    pub loss_coeff: f64,
    /// Detector efficiency.
    pub eta: f64,
    /// Reconciliation efficiency.
    pub beta: f64,
}

impl Default for ChannelParams {
    fn default() -> Self {
        ChannelParams { length_km: 0.0, loss_coeff: DEFAULT_LOSS_COEFF, eta: 1.0, beta: DEFAULT_BETA }
    }
}

impl ChannelParams {
    pub fn new(length_km: f64, eta: f64, beta: f64) -> Result<Self> {
        let ch = ChannelParams { length_km, eta, beta, ..Default::default() };
        ch.validate()?;
        Ok(ch)
    }

    pub fn with_length(self, length_km: f64) -> Self {
        ChannelParams { length_km, ..self }
    }

    pub fn with_eta(self, eta: f64) -> Self {
        ChannelParams { eta, ..self }
    }

    pub fn with_beta(self, beta: f64) -> Self {
        ChannelParams { beta, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.length_km >= 0.0 && self.length_km.is_finite()) {
            return Err(Error::domain(format!("length must be non-negative, got {}", self.length_km)));
        }
        if !(self.loss_coeff >= 0.0 && self.loss_coeff.is_finite()) {
            return Err(Error::domain(format!("loss coefficient must be non-negative, got {}", self.loss_coeff)));
        }
        if !(self.eta > 0.0 && self.eta <= 1.0) {
            return Err(Error::domain(format!("detector efficiency must lie in (0, 1], got {}", self.eta)));
        }
        if !(self.beta > 0.0 && self.beta <= 1.0) {
            return Err(Error::domain(format!("reconciliation efficiency must lie in (0, 1], got {}", self.beta)));
        }
        Ok(())
    }

    pub fn transmittance(&self) -> Result<f64> {
        transmittance(self.length_km, self.loss_coeff)
    }
}

/// `T = ½·10^(−l·L)`.
pub fn transmittance(length_km: f64, loss_coeff: f64) -> Result<f64> {
    if !(length_km >= 0.0) {
        return Err(Error::domain(format!("length must be non-negative, got {length_km}")));
    }
    let t = 0.5 * 10f64.powf(-loss_coeff * length_km);
    if !(t > 0.0) {
        return Err(Error::numerical(format!("transmittance underflows at L = {length_km} km")));
    }
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseFigures {
    pub line: f64,
    pub homodyne: f64,
    pub total: f64,
}

/// Line noise `(1−T)/T`, detector noise `(1−η)/η` and the total
/// `χ_line + 2χ_homo/T`.
pub fn noise_figures(t: f64, eta: f64) -> Result<NoiseFigures> {
    if !(t > 0.0) {
        return Err(Error::domain(format!("transmittance must be positive, got {t}")));
    }
    if !(eta > 0.0) {
        return Err(Error::domain(format!("detector efficiency must be positive, got {eta}")));
    }
    let line = (1.0 - t) / t;
    let homodyne = (1.0 - eta) / eta;
    Ok(NoiseFigures { line, homodyne, total: line + 2.0 * homodyne / t })
}

/// Maps the source CM to the shared one: `A` unchanged, `C → √T·C`,
/// `B → T(B + χ_tot·I)`.
pub fn transmit(v: &TwoModeCM, params: &ChannelParams) -> Result<TwoModeCM> {
    params.validate()?;
    let t = params.transmittance()?;
    let noise = noise_figures(t, params.eta)?;
    transmit_raw(v, t, noise.total)
}

/// The channel map for an explicit transmittance and added noise.
pub fn transmit_raw(v: &TwoModeCM, t: f64, chi_tot: f64) -> Result<TwoModeCM> {
    if !(t > 0.0 && t <= 1.0) || !(chi_tot >= 0.0) {
        return Err(Error::domain(format!("invalid channel: T = {t}, chi_tot = {chi_tot}")));
    }
    let b = (v.b() + Matrix2::from_diagonal_element(chi_tot)) * t;
    TwoModeCM::from_blocks(v.a(), b, v.c() * t.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resources::tmsv;
    use approx::assert_abs_diff_eq;

    #[test]
    fn transmittance_values() {
        assert_eq!(transmittance(0.0, 0.02).unwrap(), 0.5);
        assert_abs_diff_eq!(transmittance(50.0, 0.02).unwrap(), 0.05, epsilon = 1e-15);
        assert_abs_diff_eq!(transmittance(15.0, 0.02).unwrap(), 0.250594, epsilon = 1e-6);
        assert!(matches!(transmittance(-1.0, 0.02), Err(Error::Domain(_))));
        let ts: Vec<f64> = (0..50).map(|i| transmittance(i as f64 * 3.0, 0.02).unwrap()).collect();
        assert!(ts.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn noise_figure_values() {
        assert_eq!(noise_figures(0.5, 1.0).unwrap(), NoiseFigures { line: 1.0, homodyne: 0.0, total: 1.0 });
        let n = noise_figures(0.05, 1.0).unwrap();
        assert_abs_diff_eq!(n.line, 19.0, epsilon = 1e-12);
        assert_abs_diff_eq!(n.total, 19.0, epsilon = 1e-12);
        let n = noise_figures(0.5, 0.8).unwrap();
        assert_abs_diff_eq!(n.homodyne, 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(n.total, 2.0, epsilon = 1e-15);
        assert!(noise_figures(0.0, 1.0).is_err());
        assert!(noise_figures(0.5, 0.0).is_err());
    }

    #[test]
    fn transmit_at_zero_length() {
        let r = 0.7;
        let v = tmsv(r).unwrap();
        let out = transmit(&v, &ChannelParams::new(0.0, 1.0, 0.95).unwrap()).unwrap();
        assert_eq!(out.a(), v.a());
        assert_abs_diff_eq!(out.b()[(0, 0)], 0.5 * ((2.0 * r).cosh() + 1.0), epsilon = 1e-14);
        assert_abs_diff_eq!(out.c()[(0, 0)], (2.0 * r).sinh() / 2f64.sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(out.c()[(1, 1)], -(2.0 * r).sinh() / 2f64.sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn identity_channel_and_uncorrelated_input() {
        let v = tmsv(0.3).unwrap();
        assert_eq!(transmit_raw(&v, 1.0, 0.0).unwrap(), v);
        let product = TwoModeCM::standard_form(2.0, 3.0, 0.0).unwrap();
        let out = transmit(&product, &ChannelParams::new(40.0, 0.9, 0.95).unwrap()).unwrap();
        assert_eq!(out.c(), Matrix2::zeros());
    }

    #[test]
    fn channel_validation() {
        assert!(ChannelParams::new(-1.0, 1.0, 0.95).is_err());
        assert!(ChannelParams::new(1.0, 0.0, 0.95).is_err());
        assert!(ChannelParams::new(1.0, 1.0, 1.2).is_err());
    }
}
