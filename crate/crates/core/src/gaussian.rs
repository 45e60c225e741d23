//! Covariance-matrix calculus for two-mode states.
//!
//! Quadratures are ordered `(x_A, p_A, x_B, p_B)` and measured in shot-noise
//! units, so the vacuum has covariance matrix `I`. All logarithms are base 2.
//!
//! Symplectic eigenvalues are obtained from the two-mode invariants
//! `Δ = det A + det B ± 2 det C` and `det V` rather than from an
//! eigensolver, which keeps every result a deterministic function of the
//! matrix entries. Matrices in standard form (`A = a·I`, `B = b·I`, `C`
//! diagonal) take a cancellation-free route; every state built by this
//! crate has that form.

use nalgebra::{Matrix2, Matrix4};

use crate::error::{Error, Result};

const SYMMETRY_TOL: f64 = 1e-12;
const PHYSICAL_TOL: f64 = 1e-9;
const DISCRIMINANT_TOL: f64 = 1e-9;
const ENTROPY_ARG_TOL: f64 = 1e-12;

/// Two-mode covariance matrix with blocks `[[A, C], [Cᵀ, B]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeCM(Matrix4<f64>);

impl TwoModeCM {
    /// Wraps a 4×4 matrix after checking symmetry and positive local
    /// variances.
    pub fn new(m: Matrix4<f64>) -> Result<Self> {
        for i in 0..4 {
            for j in (i + 1)..4 {
                let (u, l) = (m[(i, j)], m[(j, i)]);
                if (u - l).abs() > SYMMETRY_TOL * (1.0 + u.abs().max(l.abs())) {
                    return Err(Error::domain(format!(
                        "covariance matrix not symmetric at ({i},{j}): {u} vs {l}"
                    )));
                }
            }
        }
        if (0..4).any(|i| !(m[(i, i)] > 0.0)) {
            return Err(Error::domain("covariance matrix needs positive diagonal entries"));
        }
        Ok(TwoModeCM(m))
    }

    pub fn from_blocks(a: Matrix2<f64>, b: Matrix2<f64>, c: Matrix2<f64>) -> Result<Self> {
        let mut m = Matrix4::zeros();
        m.fixed_view_mut::<2, 2>(0, 0).copy_from(&a);
        m.fixed_view_mut::<2, 2>(2, 2).copy_from(&b);
        m.fixed_view_mut::<2, 2>(0, 2).copy_from(&c);
        m.fixed_view_mut::<2, 2>(2, 0).copy_from(&c.transpose());
        Self::new(m)
    }

    /// The standard form `A = a·I`, `B = b·I`, `C = c·σ₃` shared by every
    /// resource state in this crate.
    pub fn standard_form(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::from_blocks(
            Matrix2::from_diagonal_element(a),
            Matrix2::from_diagonal_element(b),
            Matrix2::new(c, 0.0, 0.0, -c),
        )
    }

    /// Two vacua.
    pub fn vacuum() -> Self {
        TwoModeCM(Matrix4::identity())
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    pub fn a(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(0, 0).into_owned()
    }

    pub fn b(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(2, 2).into_owned()
    }

    pub fn c(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(0, 2).into_owned()
    }

    pub fn det(&self) -> f64 {
        self.0.determinant()
    }

    /// Both symplectic eigenvalues at least `1 - 1e-9`.
    pub fn is_physical(&self) -> bool {
        matches!(symplectic_spectrum(self), Ok((_, l2)) if l2 >= 1.0 - PHYSICAL_TOL)
    }
}

/// Single-mode covariance matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneModeCM(Matrix2<f64>);

impl OneModeCM {
    pub fn new(m: Matrix2<f64>) -> Result<Self> {
        let (u, l) = (m[(0, 1)], m[(1, 0)]);
        if (u - l).abs() > SYMMETRY_TOL * (1.0 + u.abs().max(l.abs())) {
            return Err(Error::domain("single-mode covariance matrix not symmetric"));
        }
        if !(m[(0, 0)] > 0.0 && m[(1, 1)] > 0.0) {
            return Err(Error::domain(
                "single-mode covariance matrix needs positive diagonal entries",
            ));
        }
        Ok(OneModeCM(m))
    }

    pub fn matrix(&self) -> &Matrix2<f64> {
        &self.0
    }

    pub fn x_variance(&self) -> f64 {
        self.0[(0, 0)]
    }

    pub fn p_variance(&self) -> f64 {
        self.0[(1, 1)]
    }
}

/// Entropy function `G(x) = (x+1)log₂(x+1) − x·log₂x`, in bits, with
/// `G(0) = 0`.
pub fn g_entropy(x: f64) -> Result<f64> {
    if x.is_nan() || x < -ENTROPY_ARG_TOL {
        return Err(Error::domain(format!("G(x) needs x >= 0, got {x}")));
    }
    if x <= 0.0 {
        return Ok(0.0);
    }
    Ok((x + 1.0) * (x + 1.0).log2() - x * x.log2())
}

/// Local data `(a, b, c₁, c₂)` when `A = a·I`, `B = b·I` and
/// `C = diag(c₁, c₂)`.
fn standard_form_entries(v: &TwoModeCM) -> Option<(f64, f64, f64, f64)> {
    let m = v.matrix();
    let standard = m[(0, 1)] == 0.0
        && m[(2, 3)] == 0.0
        && m[(0, 3)] == 0.0
        && m[(1, 2)] == 0.0
        && m[(0, 0)] == m[(1, 1)]
        && m[(2, 2)] == m[(3, 3)];
    standard.then(|| (m[(0, 0)], m[(2, 2)], m[(0, 2)], m[(1, 3)]))
}

/// Seralian `Δ` and discriminant `Δ² − 4 det V` for a matrix with
/// correlation block `diag(c₁, c₂)`. The discriminant is evaluated in the
/// factored form `(a²−b²)² + 4(a·c₁ + b·c₂)(a·c₂ + b·c₁)`, which is exact
/// for pure and symmetric states where the naive difference cancels.
fn standard_invariants(a: f64, b: f64, c1: f64, c2: f64) -> (f64, f64, f64) {
    let delta = a * a + b * b + 2.0 * c1 * c2;
    let det = (a * b - c1 * c1) * (a * b - c2 * c2);
    let (diff, sum) = (a - b, c1 + c2);
    let disc = (diff * (a + b)).powi(2) + 4.0 * (diff * c1 + b * sum) * (diff * c2 + b * sum);
    (delta, disc, det)
}

fn general_invariants(v: &TwoModeCM, sign: f64) -> (f64, f64, f64) {
    let delta = v.a().determinant() + v.b().determinant() + sign * 2.0 * v.c().determinant();
    let det = v.det();
    (delta, delta * delta - 4.0 * det, det)
}

/// Roots `(ν₊, ν₋)` of `ν⁴ − Δν² + det V`.
fn spectrum_from_invariants(delta: f64, mut disc: f64, det: f64) -> Result<(f64, f64)> {
    if !(det > 0.0) {
        return Err(Error::numerical(format!(
            "covariance determinant must be positive, got {det}"
        )));
    }
    if disc < 0.0 {
        if disc < -DISCRIMINANT_TOL * (delta * delta).max(1.0) {
            return Err(Error::numerical(format!(
                "negative symplectic discriminant {disc:e}"
            )));
        }
        disc = 0.0;
    }
    let upper = (delta + disc.sqrt()) / 2.0;
    if !(upper > 0.0) {
        return Err(Error::numerical(format!("invalid seralian Δ = {delta}")));
    }
    // Smaller root via det V / upper, avoiding cancellation in Δ − √(Δ² − 4 det V).
    let lower = det / upper;
    Ok((upper.sqrt(), lower.sqrt()))
}

/// Symplectic eigenvalues `(λ₁, λ₂)` with `λ₁ ≥ λ₂`.
pub fn symplectic_spectrum(v: &TwoModeCM) -> Result<(f64, f64)> {
    let (delta, disc, det) = match standard_form_entries(v) {
        Some((a, b, c1, c2)) => standard_invariants(a, b, c1, c2),
        None => general_invariants(v, 1.0),
    };
    spectrum_from_invariants(delta, disc, det)
}

/// Smallest symplectic eigenvalue of the partially transposed state.
pub fn pt_min_symplectic(v: &TwoModeCM) -> Result<f64> {
    // Partial transposition flips the sign of p_B, hence of c₂.
    let (delta, disc, det) = match standard_form_entries(v) {
        Some((a, b, c1, c2)) => standard_invariants(a, b, c1, -c2),
        None => general_invariants(v, -1.0),
    };
    spectrum_from_invariants(delta, disc, det).map(|(_, low)| low)
}

/// Logarithmic negativity `max{0, −log₂ l_min}`.
pub fn log_negativity(v: &TwoModeCM) -> Result<f64> {
    let l_min = pt_min_symplectic(v)?;
    Ok((-l_min.log2()).max(0.0))
}

/// Covariance of mode A after a heterodyne measurement of mode B:
/// `A − C (B + I)⁻¹ Cᵀ`.
pub fn heterodyne_conditional(v: &TwoModeCM) -> Result<OneModeCM> {
    let shifted = v.b() + Matrix2::identity();
    let inv = shifted
        .try_inverse()
        .ok_or_else(|| Error::numerical("B + I is singular"))?;
    let c = v.c();
    let mut cond = v.a() - c * inv * c.transpose();
    let off = 0.5 * (cond[(0, 1)] + cond[(1, 0)]);
    cond[(0, 1)] = off;
    cond[(1, 0)] = off;
    OneModeCM::new(cond).map_err(|_| {
        Error::numerical(format!("conditional covariance is not positive: {cond:?}"))
    })
}

/// `√det V` of a single-mode covariance matrix.
pub fn single_mode_symplectic(v: &OneModeCM) -> Result<f64> {
    let det = v.matrix().determinant();
    if det < -SYMMETRY_TOL {
        return Err(Error::numerical(format!(
            "negative single-mode determinant {det:e}"
        )));
    }
    Ok(det.max(0.0).sqrt())
}
