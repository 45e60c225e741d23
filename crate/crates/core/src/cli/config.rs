//! Run configuration: TOML file sections overlaid by command-line flags.
//!
//! ```toml
//! output = "zpc.csv"
//!
//! [resource]
//! kind = "zpc-loss"   # tmsv | subtracted | zpc | zpc-loss
//! cosh2r = 50.0       # or r = ...
//! t_bs = 0.9
//! p = 0.002
//!
//! [mismatch]
//! delta = 0.01        # or n_unmatched, m_matched, epsilon, alpha, n_bar
//!
//! [channel]
//! length_km = 15.0
//! loss_coeff = 0.02
//! eta = 1.0
//! beta = 0.95
//!
//! [sweep]
//! start = 0.0
//! stop = 200.5
//! step = 0.5
//!
//! [solver]
//! tol = 0.01
//!
//! [oracle]
//! cutoff = 60
//! ```

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::analysis::SweepAxis;
use crate::channel::{ChannelParams, DEFAULT_BETA, DEFAULT_LOSS_COEFF};
use crate::error::{Error, Result};
use crate::fock::DEFAULT_CUTOFF;
use crate::resources::{r_from_cosh2r, MismatchParams, ResourceKind, ResourceSpec};

pub const DEFAULT_COSH2R: f64 = 50.0;
pub const DEFAULT_T_BS: f64 = 0.9;
pub const DEFAULT_DELTA: f64 = 0.01;
pub const DEFAULT_LENGTH_KM: f64 = 15.0;
pub const DEFAULT_LOSS_PROB: f64 = 0.002;

#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ResourceSection {
    pub kind: Option<String>,
    pub k: Option<u32>,
    pub p: Option<f64>,
    pub r: Option<f64>,
    pub cosh2r: Option<f64>,
    pub t_bs: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MismatchSection {
    pub delta: Option<f64>,
    pub n_unmatched: Option<u32>,
    pub m_matched: Option<u32>,
    pub epsilon: Option<f64>,
    pub alpha: Option<f64>,
    pub n_bar: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ChannelSection {
    pub length_km: Option<f64>,
    pub loss_coeff: Option<f64>,
    pub eta: Option<f64>,
    pub beta: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub start: Option<f64>,
    pub stop: Option<f64>,
    pub step: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SolverSection {
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct OracleSection {
    pub cutoff: Option<usize>,
}

/// Every knob, all optional. Parsed from a file and from flags, then
/// merged with flags taking precedence.
#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub resource: ResourceSection,
    #[serde(default)]
    pub mismatch: MismatchSection,
    #[serde(default)]
    pub channel: ChannelSection,
    #[serde(default)]
    pub sweep: SweepSection,
    #[serde(default)]
    pub solver: SolverSection,
    #[serde(default)]
    pub oracle: OracleSection,
}

macro_rules! overlay {
    ($base:expr, $top:expr; $($field:ident),+) => {
        $( if $top.$field.is_some() { $base.$field = $top.$field.clone(); } )+
    };
}

impl PartialConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::config(format!("config file: {}", e.message())))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config(format!("cannot read config file {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// `self` with every value set in `top` replaced. Setting either form
    /// of the squeezing in `top` clears the other form from `self`.
    pub fn overlay(mut self, top: &PartialConfig) -> Self {
        if top.resource.r.is_some() || top.resource.cosh2r.is_some() {
            self.resource.r = None;
            self.resource.cosh2r = None;
        }
        if top.mismatch.delta.is_some() {
            self.mismatch = MismatchSection::default();
        }
        overlay!(self, top; output);
        overlay!(self.resource, top.resource; kind, k, p, r, cosh2r, t_bs);
        overlay!(self.mismatch, top.mismatch; delta, n_unmatched, m_matched, epsilon, alpha, n_bar);
        overlay!(self.channel, top.channel; length_km, loss_coeff, eta, beta);
        overlay!(self.sweep, top.sweep; start, stop, step);
        overlay!(self.solver, top.solver; tol);
        overlay!(self.oracle, top.oracle; cutoff);
        self
    }

    pub fn resolve(&self, defaults: Defaults) -> Result<RunConfig> {
        let res = &self.resource;
        let field = |name: &str, e: Error| match e {
            Error::Domain(msg) | Error::Config(msg) => Error::config(format!("{name}: {msg}")),
            other => other,
        };

        let r = match (res.r, res.cosh2r) {
            (Some(_), Some(_)) => {
                return Err(Error::config("resource: give either r or cosh2r, not both"))
            }
            (Some(r), None) => r,
            (None, Some(c)) => r_from_cosh2r(c).map_err(|e| field("resource.cosh2r", e))?,
            (None, None) => defaults.r,
        };
        let kind = match res.kind.as_deref().unwrap_or("tmsv") {
            "tmsv" => ResourceKind::Tmsv,
            "subtracted" => ResourceKind::Subtracted { k: res.k.unwrap_or(1) },
            "zpc" => ResourceKind::ZeroPhotonCatalysis,
            "zpc-loss" => ResourceKind::ZpcWithLoss { p: res.p.unwrap_or(DEFAULT_LOSS_PROB) },
            other => {
                return Err(Error::config(format!(
                    "resource.kind: unknown resource '{other}' (expected tmsv, subtracted, zpc or zpc-loss)"
                )))
            }
        };
        let resource = ResourceSpec::new(kind, r, res.t_bs.unwrap_or(DEFAULT_T_BS))
            .map_err(|e| field("resource", e))?;

        let mm = &self.mismatch;
        let multimode = mm.n_unmatched.is_some()
            || mm.m_matched.is_some()
            || mm.epsilon.is_some()
            || mm.alpha.is_some()
            || mm.n_bar.is_some();
        let mismatch = match (mm.delta, multimode) {
            (Some(_), true) => {
                return Err(Error::config(
                    "mismatch: give either delta or the multimode parameters, not both",
                ))
            }
            (Some(d), false) => MismatchParams::direct(d),
            (None, true) => MismatchParams::multimode(
                mm.n_unmatched.unwrap_or(0),
                mm.m_matched.unwrap_or(1),
                mm.epsilon.unwrap_or(0.0),
                mm.alpha.unwrap_or(1.0),
                mm.n_bar.unwrap_or(0.0),
            ),
            (None, false) => MismatchParams::direct(DEFAULT_DELTA),
        };
        mismatch.delta().map_err(|e| field("mismatch", e))?;

        let ch = &self.channel;
        let channel = ChannelParams {
            length_km: ch.length_km.unwrap_or(DEFAULT_LENGTH_KM),
            loss_coeff: ch.loss_coeff.unwrap_or(DEFAULT_LOSS_COEFF),
            eta: ch.eta.unwrap_or(1.0),
            beta: ch.beta.unwrap_or(DEFAULT_BETA),
        };
        channel.validate().map_err(|e| field("channel", e))?;

        let (start, stop, step) = defaults.window;
        let window = (
            self.sweep.start.unwrap_or(start),
            self.sweep.stop.unwrap_or(stop),
            self.sweep.step.unwrap_or(step),
        );
        let tol = self.solver.tol.unwrap_or(defaults.tol);
        if !(tol > 0.0) {
            return Err(Error::config(format!("solver.tol: must be positive, got {tol}")));
        }

        Ok(RunConfig {
            resource,
            mismatch,
            channel,
            window,
            tol,
            cutoff: self.oracle.cutoff.unwrap_or(DEFAULT_CUTOFF),
            output: self.output.clone(),
        })
    }
}

/// Subcommand-specific fallbacks.
#[derive(Debug, Clone, Copy)]
pub struct Defaults {
    pub r: f64,
    pub window: (f64, f64, f64),
    pub tol: f64,
}

impl Defaults {
    pub fn for_axis(axis: SweepAxis, tol: f64) -> Self {
        Defaults {
            r: r_from_cosh2r(DEFAULT_COSH2R).expect("default squeezing is valid"),
            window: axis.default_window(),
            tol,
        }
    }
}

/// Fully resolved and validated configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub resource: ResourceSpec,
    pub mismatch: MismatchParams,
    pub channel: ChannelParams,
    /// Sweep window `(start, stop, step)`.
    pub window: (f64, f64, f64),
    pub tol: f64,
    pub cutoff: usize,
    pub output: Option<PathBuf>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::DEFAULT_TOL_KM;

    fn defaults() -> Defaults {
        Defaults::for_axis(SweepAxis::DistanceKm, DEFAULT_TOL_KM)
    }

    #[test]
    fn empty_config_uses_defaults() {
        let cfg = PartialConfig::default().resolve(defaults()).unwrap();
        assert_eq!(cfg.resource.kind, ResourceKind::Tmsv);
        assert!(((2.0 * cfg.resource.r).cosh() - 50.0).abs() < 1e-9);
        assert_eq!(cfg.mismatch.delta().unwrap(), DEFAULT_DELTA);
        assert_eq!(cfg.channel.beta, 0.95);
        assert_eq!(cfg.channel.length_km, 15.0);
        assert_eq!(cfg.window, SweepAxis::DistanceKm.default_window());
    }

    #[test]
    fn file_parses_and_flags_override() {
        let file = PartialConfig::from_toml(
            r#"
            output = "a.csv"
            [resource]
            kind = "subtracted"
            k = 2
            cosh2r = 10.0
            [channel]
            beta = 0.9
            eta = 0.99
            "#,
        )
        .unwrap();
        let mut flags = PartialConfig::default();
        flags.resource.r = Some(0.4);
        flags.channel.beta = Some(0.97);
        let cfg = file.overlay(&flags).resolve(defaults()).unwrap();
        assert_eq!(cfg.resource.kind, ResourceKind::Subtracted { k: 2 });
        assert_eq!(cfg.resource.r, 0.4);
        assert_eq!(cfg.channel.beta, 0.97);
        assert_eq!(cfg.channel.eta, 0.99);
        assert_eq!(cfg.output, Some(PathBuf::from("a.csv")));
    }

    #[test]
    fn delta_flag_replaces_multimode_file_values() {
        let file = PartialConfig::from_toml("[mismatch]\nn_unmatched = 2\nm_matched = 1\nepsilon = 0.5\nalpha = 2.0\nn_bar = 0.4\n").unwrap();
        let cfg = file.clone().resolve(defaults()).unwrap();
        assert!((cfg.mismatch.delta().unwrap() - 0.05).abs() < 1e-15);
        let mut flags = PartialConfig::default();
        flags.mismatch.delta = Some(0.02);
        let cfg = file.overlay(&flags).resolve(defaults()).unwrap();
        assert_eq!(cfg.mismatch.delta().unwrap(), 0.02);
    }

    #[test]
    fn field_level_errors() {
        let err = |text: &str| PartialConfig::from_toml(text).and_then(|c| c.resolve(defaults())).unwrap_err().to_string();
        assert!(err("[resource]\nkind = \"photon-added\"").contains("resource.kind"));
        assert!(err("[resource]\nr = 0.5\ncosh2r = 3.0").contains("resource"));
        assert!(err("[resource]\nt_bs = 1.5").contains("resource"));
        assert!(err("[channel]\neta = 0.0").contains("channel"));
        assert!(err("[mismatch]\ndelta = -0.1").contains("mismatch"));
        assert!(err("[mismatch]\ndelta = 0.1\nn_bar = 1.0").contains("mismatch"));
        assert!(err("[solver]\ntol = 0.0").contains("solver.tol"));
        assert!(err("[channel]\nlength = 3.0").contains("config file"));
    }
}
