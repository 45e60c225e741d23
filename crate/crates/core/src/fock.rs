//! Brute-force check of the heralded-state formulas in a truncated Fock
//! basis.
//!
//! Mode B of a two-mode squeezed vacuum meets a vacuum ancilla on a
//! beamsplitter (`b → √T·b + √(1−T)·c`) and the ancilla is projected onto
//! `|k⟩`. The heralding probability and the second moments of the
//! conditional state are then read off the amplitudes directly.
//!
//! Quadratures are `x = a + a†` and `p = −i(a − a†)`, so the vacuum has
//! unit variance, the same convention as the closed forms in
//! [`crate::resources`].

use nalgebra::Matrix4;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gaussian::TwoModeCM;
use crate::resources::{subtracted_entries, subtraction_probability};

pub const DEFAULT_CUTOFF: usize = 60;
pub const MAX_CUTOFF: usize = 256;
const SCHMIDT_TAIL: f64 = 1e-12;
const SLICE_TAIL: f64 = 1e-10;
const MIN_PROBABILITY: f64 = 1e-14;

/// Two-mode state with `cutoff` levels per mode, indexed `(n_A, n_B)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    cutoff: usize,
    amplitudes: Vec<Complex64>,
}

impl FockState {
    pub fn zeros(cutoff: usize) -> Self {
        FockState { cutoff, amplitudes: vec![Complex64::new(0.0, 0.0); cutoff * cutoff] }
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn amplitude(&self, na: usize, nb: usize) -> Complex64 {
        if na < self.cutoff && nb < self.cutoff {
            self.amplitudes[na * self.cutoff + nb]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    pub fn set_amplitude(&mut self, na: usize, nb: usize, value: Complex64) {
        self.amplitudes[na * self.cutoff + nb] = value;
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Weight on the outermost level of either mode.
    pub fn tail_weight(&self) -> f64 {
        let d = self.cutoff - 1;
        let edge: f64 = (0..self.cutoff)
            .map(|i| self.amplitude(d, i).norm_sqr() + self.amplitude(i, d).norm_sqr())
            .sum();
        edge - self.amplitude(d, d).norm_sqr()
    }

    fn expect(&self, mut term: impl FnMut(usize, usize) -> Option<(usize, usize, f64)>) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for na in 0..self.cutoff {
            for nb in 0..self.cutoff {
                let psi = self.amplitude(na, nb);
                if psi.norm_sqr() == 0.0 {
                    continue;
                }
                if let Some((ma, mb, coeff)) = term(na, nb) {
                    acc += self.amplitude(ma, mb).conj() * psi * coeff;
                }
            }
        }
        acc
    }

    /// First moments `(⟨x_A⟩, ⟨p_A⟩, ⟨x_B⟩, ⟨p_B⟩)` of a normalised state.
    pub fn means(&self) -> [f64; 4] {
        let a = self.expect(|na, nb| (na > 0).then(|| (na - 1, nb, (na as f64).sqrt())));
        let b = self.expect(|na, nb| (nb > 0).then(|| (na, nb - 1, (nb as f64).sqrt())));
        [2.0 * a.re, 2.0 * a.im, 2.0 * b.re, 2.0 * b.im]
    }

    /// Symmetrised covariance matrix of a normalised state.
    pub fn covariance(&self) -> Matrix4<f64> {
        let sq = |n: usize| (n as f64).sqrt();
        let n_a = self.expect(|na, nb| Some((na, nb, na as f64))).re;
        let n_b = self.expect(|na, nb| Some((na, nb, nb as f64))).re;
        let aa = self.expect(|na, nb| (na > 1).then(|| (na - 2, nb, sq(na) * sq(na - 1))));
        let bb = self.expect(|na, nb| (nb > 1).then(|| (na, nb - 2, sq(nb) * sq(nb - 1))));
        let ab = self.expect(|na, nb| (na > 0 && nb > 0).then(|| (na - 1, nb - 1, sq(na) * sq(nb))));
        let adag_b = self.expect(|na, nb| (nb > 0).then(|| (na + 1, nb - 1, sq(na + 1) * sq(nb))));
        let mu = self.means();

        let mut m = Matrix4::zeros();
        m[(0, 0)] = 2.0 * n_a + 1.0 + 2.0 * aa.re;
        m[(1, 1)] = 2.0 * n_a + 1.0 - 2.0 * aa.re;
        m[(0, 1)] = 2.0 * aa.im;
        m[(2, 2)] = 2.0 * n_b + 1.0 + 2.0 * bb.re;
        m[(3, 3)] = 2.0 * n_b + 1.0 - 2.0 * bb.re;
        m[(2, 3)] = 2.0 * bb.im;
        m[(0, 2)] = 2.0 * ab.re + 2.0 * adag_b.re;
        m[(1, 3)] = -2.0 * ab.re + 2.0 * adag_b.re;
        m[(0, 3)] = 2.0 * ab.im + 2.0 * adag_b.im;
        m[(1, 2)] = 2.0 * ab.im - 2.0 * adag_b.im;
        for i in 0..4 {
            for j in i..4 {
                m[(i, j)] -= mu[i] * mu[j];
                m[(j, i)] = m[(i, j)];
            }
        }
        m
    }
}

/// Schmidt form `√(1−τ²)·Σ τⁿ |n, n⟩` with `τ = tanh r`. The cutoff is
/// doubled (up to [`MAX_CUTOFF`]) until `τ^(2D) < 1e-12`.
pub fn tmsv_fock(r: f64, cutoff: usize) -> Result<FockState> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::domain(format!("squeezing r must be non-negative, got {r}")));
    }
    if cutoff < 2 {
        return Err(Error::domain("Fock cutoff must be at least 2"));
    }
    let tau = r.tanh();
    let tail = |d: usize| tau.powi(2 * d as i32);
    let mut d = cutoff;
    while tail(d) >= SCHMIDT_TAIL && d < MAX_CUTOFF {
        d = (2 * d).min(MAX_CUTOFF);
    }
    if tail(d) >= SCHMIDT_TAIL {
        return Err(Error::Truncation { cutoff: d, tail: tail(d) });
    }
    let mut state = FockState::zeros(d);
    let norm = (1.0 - tau * tau).sqrt();
    let mut amp = norm;
    for n in 0..d {
        state.set_amplitude(n, n, Complex64::new(amp, 0.0));
        amp *= tau;
    }
    Ok(state)
}

fn sqrt_binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * ((n - i) as f64 / (k - i) as f64)).sqrt()
}

fn check_transmittance(t_bs: f64) -> Result<()> {
    if !(t_bs > 0.0 && t_bs <= 1.0) {
        return Err(Error::domain(format!("beamsplitter transmittance must lie in (0, 1], got {t_bs}")));
    }
    Ok(())
}

/// Unnormalised state of modes A and B after mode B passes the beamsplitter
/// and the ancilla is found in `|k⟩`.
fn herald(state: &FockState, t_bs: f64, k: usize) -> FockState {
    let d = state.cutoff();
    let (t, rr) = (t_bs.sqrt(), (1.0 - t_bs).sqrt());
    let ancilla = rr.powi(k as i32);
    let mut out = FockState::zeros(d);
    for na in 0..d {
        for m in k..d {
            let psi = state.amplitude(na, m);
            if psi.norm_sqr() == 0.0 {
                continue;
            }
            let coeff = sqrt_binomial(m, k) * t.powi((m - k) as i32) * ancilla;
            out.set_amplitude(na, m - k, psi * coeff);
        }
    }
    out
}

/// Probability of every ancilla count `k < cutoff`.
pub fn ancilla_distribution(state: &FockState, t_bs: f64) -> Result<Vec<f64>> {
    check_transmittance(t_bs)?;
    Ok((0..state.cutoff()).map(|k| herald(state, t_bs, k).norm_sqr()).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    pub probability: f64,
    pub cm: TwoModeCM,
    /// First moments of the conditional state.
    pub means: [f64; 4],
    pub state: FockState,
}

/// Heralds on `k` ancilla photons and measures the conditional state.
pub fn project_ancilla(state: &FockState, t_bs: f64, k: usize) -> Result<Projection> {
    check_transmittance(t_bs)?;
    if 2 * k >= state.cutoff() {
        return Err(Error::domain(format!("k = {k} needs cutoff above {}", 2 * k)));
    }
    let mut out = herald(state, t_bs, k);
    let probability = out.norm_sqr();
    if probability < MIN_PROBABILITY {
        return Err(Error::DegenerateProjection(probability));
    }
    let scale = probability.sqrt().recip();
    out.amplitudes.iter_mut().for_each(|c| *c *= scale);
    let tail = out.tail_weight();
    if tail >= SLICE_TAIL {
        return Err(Error::Truncation { cutoff: out.cutoff(), tail });
    }
    let cm = TwoModeCM::new(out.covariance())?;
    Ok(Projection { probability, cm, means: out.means(), state: out })
}

/// Oracle result next to the closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleComparison {
    pub r: f64,
    pub t_bs: f64,
    pub k: u32,
    pub cutoff: usize,
    pub prob_oracle: f64,
    pub prob_closed: f64,
    /// `(x, y, z)` read from the oracle covariance matrix.
    pub entries_oracle: (f64, f64, f64),
    pub entries_closed: (f64, f64, f64),
    /// Largest absolute deviation over all sixteen CM entries.
    pub cm_deviation: f64,
    pub max_mean: f64,
}

impl OracleComparison {
    pub fn prob_deviation(&self) -> f64 {
        (self.prob_oracle - self.prob_closed).abs()
    }
}

pub fn oracle_check(r: f64, t_bs: f64, k: u32, cutoff: usize) -> Result<OracleComparison> {
    let state = tmsv_fock(r, cutoff)?;
    let proj = project_ancilla(&state, t_bs, k as usize)?;
    let (x, y, z) = subtracted_entries(r, t_bs, k)?;
    let closed = TwoModeCM::standard_form(x, y, z)?;
    let m = proj.cm.matrix();
    Ok(OracleComparison {
        r,
        t_bs,
        k,
        cutoff: state.cutoff(),
        prob_oracle: proj.probability,
        prob_closed: subtraction_probability(r, t_bs, k)?,
        entries_oracle: (m[(0, 0)], m[(2, 2)], m[(0, 2)]),
        entries_closed: (x, y, z),
        cm_deviation: (m - closed.matrix()).abs().max(),
        max_mean: proj.means.iter().fold(0.0f64, |acc, v| acc.max(v.abs())),
    })
}
