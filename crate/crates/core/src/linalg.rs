//! Small dense linear-algebra helpers on complex matrices.

use alloc::vec::Vec;
use nalgebra::linalg::{Schur, SymmetricEigen};

use crate::{CMatrix, Error, Result, C64};

pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * C64::new(0.5, 0.0)
}

/// Eigenvalues of the Hermitian part, ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let eig = SymmetricEigen::new(hermitian_part(m));
    let mut v: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(core::cmp::Ordering::Equal));
    v
}

pub fn min_eigenvalue(m: &CMatrix) -> f64 {
    hermitian_eigenvalues(m).first().copied().unwrap_or(0.0)
}

pub fn max_eigenvalue(m: &CMatrix) -> f64 {
    hermitian_eigenvalues(m).last().copied().unwrap_or(0.0)
}

pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut v: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    v.sort_by(|a, b| b.partial_cmp(a).unwrap_or(core::cmp::Ordering::Equal));
    v
}

pub fn largest_singular_value(m: &CMatrix) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

pub fn eigenvalues(m: &CMatrix) -> Result<Vec<C64>> {
    if m.nrows() == 0 {
        return Ok(Vec::new());
    }
    let schur = Schur::try_new(m.clone(), 1e-15, 10_000)
        .ok_or_else(|| Error::Numerical("eigenvalue iteration did not converge".into()))?;
    let ev = schur
        .eigenvalues()
        .ok_or_else(|| Error::Numerical("eigenvalues unavailable".into()))?;
    Ok(ev.iter().copied().collect())
}

pub fn spectral_radius(m: &CMatrix) -> Result<f64> {
    Ok(eigenvalues(m)?.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// A ⊗ I_r.
pub fn kron_identity(a: &CMatrix, r: usize) -> CMatrix {
    let n = a.nrows();
    let mut out = CMatrix::zeros(n * r, n * r);
    for i in 0..n {
        for j in 0..n {
            for k in 0..r {
                out[(i * r + k, j * r + k)] = a[(i, j)];
            }
        }
    }
    out
}

/// Largest generalized eigenvalue of the Hermitian pencil (B, A), A positive
/// definite, via the congruence L⁻¹ B L⁻* with A = L L*.
pub fn pencil_max(b: &CMatrix, a: &CMatrix) -> Result<f64> {
    let chol = hermitian_part(a)
        .cholesky()
        .ok_or_else(|| Error::SingularGram(min_eigenvalue(a)))?;
    let l = chol.l();
    let x = l
        .solve_lower_triangular(b)
        .ok_or_else(|| Error::Numerical("triangular solve failed".into()))?;
    let y = l
        .solve_lower_triangular(&x.adjoint())
        .ok_or_else(|| Error::Numerical("triangular solve failed".into()))?;
    Ok(max_eigenvalue(&y.adjoint()))
}

pub fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}
