//! Parameter sweeps and boundary solvers.
//!
//! Both solvers first walk a coarse grid to confirm the key rate is
//! monotone along the searched axis, then bisect the first cell in which
//! the rate drops to zero. A rate at or below [`ZERO_KEY`] counts as no key.

use rayon::prelude::*;

use crate::channel::ChannelParams;
use crate::error::{Error, NoKey, Result};
use crate::gaussian::log_negativity;
use crate::keyrate::{secret_key_rate, RateBreakdown};
use crate::resources::{MismatchParams, ResourceSpec};

pub const ZERO_KEY: f64 = 1e-12;
pub const DISTANCE_BRACKET_KM: (f64, f64) = (0.0, 500.0);
pub const EFFICIENCY_BRACKET: (f64, f64) = (1e-3, 1.0);
pub const MAX_SWEEP_POINTS: usize = 1_000_000;
pub const DEFAULT_TOL_KM: f64 = 0.01;
pub const DEFAULT_TOL_ETA: f64 = 1e-6;

const DISTANCE_GRID_STEP_KM: f64 = 2.5;
const EFFICIENCY_GRID_STEP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    DistanceKm,
    DetectorEta,
    Delta,
}

impl SweepAxis {
    pub fn column(&self) -> &'static str {
        match self {
            SweepAxis::DistanceKm => "L_km",
            SweepAxis::DetectorEta => "eta",
            SweepAxis::Delta => "delta",
        }
    }

    /// Default half-open window `[start, stop)` and step.
    pub fn default_window(&self) -> (f64, f64, f64) {
        match self {
            SweepAxis::DistanceKm => (0.0, 200.5, 0.5),
            SweepAxis::DetectorEta => (0.97, 1.00025, 0.0005),
            SweepAxis::Delta => (0.0, 0.1005, 0.001),
        }
    }
}

/// A one-dimensional grid over the half-open window `[start, stop)`; the
/// swept field of the fixed parameters is ignored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub start: f64,
    pub stop: f64,
    pub step: f64,
    pub resource: ResourceSpec,
    pub mismatch: MismatchParams,
    pub channel: ChannelParams,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub axis_value: f64,
    pub key_rate: f64,
    pub raw_rate: f64,
    pub i_ab: f64,
    pub chi_be: f64,
    /// Whether the shared state has positive logarithmic negativity.
    pub entangled: bool,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.start.is_finite() && self.stop.is_finite() && self.start < self.stop) {
            return Err(Error::config(format!(
                "sweep needs start < stop, got [{}, {})",
                self.start, self.stop
            )));
        }
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(Error::config(format!("sweep step must be positive, got {}", self.step)));
        }
        let n = self.point_count();
        if n > MAX_SWEEP_POINTS {
            return Err(Error::config(format!("sweep has {n} points, limit is {MAX_SWEEP_POINTS}")));
        }
        self.resource.validate()?;
        Ok(())
    }

    fn point_count(&self) -> usize {
        ((self.stop - self.start) / self.step - 1e-9).ceil().max(1.0) as usize
    }

    pub fn grid(&self) -> Vec<f64> {
        (0..self.point_count())
            .map(|i| {
                let v = self.start + i as f64 * self.step;
                // Snap rounding overshoot of the physical upper limit.
                if self.axis == SweepAxis::DetectorEta && v > 1.0 && v - 1.0 < 1e-9 {
                    1.0
                } else {
                    v
                }
            })
            .collect()
    }

    /// Parameters for one grid point.
    pub fn point(&self, value: f64) -> (MismatchParams, ChannelParams) {
        match self.axis {
            SweepAxis::DistanceKm => (self.mismatch, self.channel.with_length(value)),
            SweepAxis::DetectorEta => (self.mismatch, self.channel.with_eta(value)),
            SweepAxis::Delta => (MismatchParams::direct(value), self.channel),
        }
    }
}

fn row(axis_value: f64, b: &RateBreakdown) -> Result<SweepRow> {
    Ok(SweepRow {
        axis_value,
        key_rate: b.key_rate,
        raw_rate: b.raw_rate,
        i_ab: b.i_ab,
        chi_be: b.chi_be,
        entangled: log_negativity(&b.v_shared)? > 0.0,
    })
}

/// Evaluates every grid point, in parallel on the current rayon pool. Rows
/// come back in grid order regardless of scheduling.
pub fn sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    spec.grid()
        .into_par_iter()
        .map(|value| {
            let (mm, ch) = spec.point(value);
            row(value, &secret_key_rate(&spec.resource, &mm, &ch)?)
        })
        .collect()
}

/// Locates the first zero of a key-rate profile that starts positive at
/// `grid[0]`, bisecting to `tol`.
fn bracket_and_bisect(
    axis: &'static str,
    grid: &[f64],
    tol: f64,
    mut key: impl FnMut(f64) -> Result<f64>,
) -> Result<Option<f64>> {
    let values = grid.iter().map(|&x| key(x)).collect::<Result<Vec<_>>>()?;
    let Some(first_zero) = values.iter().position(|&k| k <= ZERO_KEY) else {
        return Ok(None);
    };
    for i in 1..values.len() {
        let rising = values[i] > values[i - 1] + ZERO_KEY * values[i - 1].abs().max(1.0);
        let reappears = i > first_zero && values[i] > ZERO_KEY;
        if rising || reappears {
            return Err(Error::NonMonotone { axis, at: grid[i] });
        }
    }
    let (mut pos, mut zero) = (grid[first_zero - 1], grid[first_zero]);
    while (zero - pos).abs() > tol {
        let mid = 0.5 * (pos + zero);
        if key(mid)? > ZERO_KEY {
            pos = mid;
        } else {
            zero = mid;
        }
    }
    Ok(Some(0.5 * (pos + zero)))
}

/// Largest fibre length with positive key, within `tol_km`.
pub fn max_distance(spec: &ResourceSpec, mm: &MismatchParams, ch: &ChannelParams, tol_km: f64) -> Result<f64> {
    if !(tol_km > 0.0) {
        return Err(Error::config(format!("tolerance must be positive, got {tol_km}")));
    }
    let (lo, hi) = DISTANCE_BRACKET_KM;
    let rate = |l: f64| secret_key_rate(spec, mm, &ch.with_length(l)).map(|b| b.key_rate);
    if rate(lo)? <= ZERO_KEY {
        return Err(Error::NoKey(NoKey::AtAnyDistance));
    }
    let n = ((hi - lo) / DISTANCE_GRID_STEP_KM).round() as usize;
    let grid: Vec<f64> = (0..=n).map(|i| lo + i as f64 * DISTANCE_GRID_STEP_KM).collect();
    bracket_and_bisect("length", &grid, tol_km, rate)?
        .ok_or(Error::Unbracketed { axis: "length", lo, hi })
}

/// Smallest detector efficiency with positive key at the channel's length,
/// within `tol`.
pub fn min_efficiency(spec: &ResourceSpec, mm: &MismatchParams, ch: &ChannelParams, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::config(format!("tolerance must be positive, got {tol}")));
    }
    let (lo, hi) = EFFICIENCY_BRACKET;
    let rate = |eta: f64| secret_key_rate(spec, mm, &ch.with_eta(eta)).map(|b| b.key_rate);
    if rate(hi)? <= ZERO_KEY {
        return Err(Error::NoKey(NoKey::EvenWithPerfectDetectors));
    }
    let n = ((hi - lo) / EFFICIENCY_GRID_STEP).round() as usize;
    let grid: Vec<f64> = (0..=n).map(|i| (hi - i as f64 * EFFICIENCY_GRID_STEP).max(lo)).collect();
    bracket_and_bisect("detector efficiency", &grid, tol, rate)?
        .ok_or(Error::Unbracketed { axis: "detector efficiency", lo, hi })
}

/// Mode-mismatch noise at which a TMSV of squeezing `r` becomes separable:
/// `1 − cosh 2r + sinh 2r = 1 − e^(−2r)`.
pub fn separability_threshold(r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::domain(format!("squeezing r must be positive, got {r}")));
    }
    Ok(-(-2.0 * r).exp_m1())
}

/// Reconciliation efficiency at which [`max_distance`] equals `target_km`,
/// found by bisection over `β ∈ [0.5, 1]` to within `tol`.
pub fn calibrate_beta(
    spec: &ResourceSpec,
    mm: &MismatchParams,
    ch: &ChannelParams,
    target_km: f64,
    tol: f64,
) -> Result<f64> {
    // Signed distance error; saturates when there is no key or no zero.
    let miss = |beta: f64| -> Result<f64> {
        match max_distance(spec, mm, &ch.with_beta(beta), DEFAULT_TOL_KM) {
            Ok(l) => Ok(l - target_km),
            Err(Error::NoKey(_)) => Ok(f64::NEG_INFINITY),
            Err(Error::Unbracketed { .. }) => Ok(f64::INFINITY),
            Err(e) => Err(e),
        }
    };
    let (mut lo, mut hi) = (0.5, 1.0);
    if miss(lo)? > 0.0 || miss(hi)? < 0.0 {
        return Err(Error::Unbracketed { axis: "reconciliation efficiency", lo, hi });
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if miss(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
