//! Test-only oracles, independent of the closed forms in the library.
#![allow(dead_code)]

use nalgebra::{Matrix4, SymmetricEigen};

/// Symplectic form for `(x_A, p_A, x_B, p_B)` ordering.
pub fn omega() -> Matrix4<f64> {
    let mut w = Matrix4::zeros();
    w[(0, 1)] = 1.0;
    w[(1, 0)] = -1.0;
    w[(2, 3)] = 1.0;
    w[(3, 2)] = -1.0;
    w
}

/// Largest symplectic eigenvalue of `V^{sign}` from a generic eigensolver:
/// with `S = V^{sign/2}`, the antisymmetric `K = S Ω S` satisfies `KᵀK`
/// having eigenvalues `ν₁², ν₁², ν₂², ν₂²`. Powers are taken on the
/// eigendecomposition of `V` itself, since an LU inverse of a strongly
/// squeezed matrix loses most of its digits.
fn generic_largest(v: &Matrix4<f64>, sign: f64) -> f64 {
    let eig = SymmetricEigen::new(*v);
    let root = eig.eigenvalues.map(|d| d.powf(0.5 * sign));
    let s = eig.eigenvectors * Matrix4::from_diagonal(&root) * eig.eigenvectors.transpose();
    let k = s * omega() * s;
    let mut nu2: Vec<f64> = SymmetricEigen::new(k.transpose() * k).eigenvalues.iter().copied().collect();
    nu2.sort_by(|a, b| b.partial_cmp(a).unwrap());
    ((nu2[0] + nu2[1]) / 2.0).sqrt()
}

/// Symplectic eigenvalues `(ν₁ ≥ ν₂)`. The smaller one is the reciprocal
/// of the largest symplectic eigenvalue of `V⁻¹`, which keeps full
/// relative precision for strongly squeezed states.
pub fn generic_symplectic(v: &Matrix4<f64>) -> (f64, f64) {
    (generic_largest(v, 1.0), 1.0 / generic_largest(v, -1.0))
}

/// Smallest symplectic eigenvalue of the partial transpose, generic route.
pub fn generic_pt_min(v: &Matrix4<f64>) -> f64 {
    let p = Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, 1.0, 1.0, -1.0));
    generic_symplectic(&(p * v * p)).1
}

/// Plain bisection for the boundary of a predicate that holds at `lo` and
/// fails at `hi`.
pub fn bisect(mut lo: f64, mut hi: f64, tol: f64, holds: impl Fn(f64) -> bool) -> f64 {
    assert!(holds(lo) && !holds(hi));
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if holds(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
