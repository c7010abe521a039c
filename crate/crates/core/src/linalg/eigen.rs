//! Hermitian eigensystems.

use nalgebra::{DMatrix, SymmetricEigen};

use super::matrix::{Matrix, C64};
use crate::error::{Error, Result};
use crate::tol;

/// Eigenvalues in descending order with the matching eigenvectors as the
/// columns of `vectors`.
#[derive(Debug, Clone)]
pub struct Eigensystem {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

impl Eigensystem {
    pub fn max_abs_value(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Number of eigenvalues above `RANK_RELATIVE · λ_max`.
    pub fn rank(&self) -> usize {
        let cut = self.rank_cutoff();
        self.values.iter().filter(|&&v| v > cut).count()
    }

    fn rank_cutoff(&self) -> f64 {
        let top = self.values.first().copied().unwrap_or(0.0).max(0.0);
        (tol::RANK_RELATIVE * top).max(tol::PSD_ABSOLUTE)
    }

    /// Orthonormal basis (as columns) of the span of eigenvectors whose
    /// eigenvalues exceed the rank cutoff.
    pub fn range_basis(&self) -> Matrix {
        let r = self.rank();
        self.vectors.columns(0, r)
    }

    /// `Q diag(g(λ)) Q*`.
    pub fn reconstruct_with(&self, g: impl Fn(f64) -> f64) -> Matrix {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for (j, &v) in self.values.iter().enumerate() {
            let s = g(v);
            for i in 0..n {
                scaled[(i, j)] *= s;
            }
        }
        &scaled * &self.vectors.adjoint()
    }

    pub fn reconstruct(&self) -> Matrix {
        self.reconstruct_with(|v| v)
    }
}

/// Diagonalizes a Hermitian matrix.
///
/// Rejects input whose Hermitian defect exceeds the structural tolerance
/// relative to its size. The input is symmetrized before diagonalizing.
pub fn hermitian_eigensystem(h: &Matrix) -> Result<Eigensystem> {
    if !h.is_square() {
        return Err(Error::shape(format!(
            "eigensystem of non-square {}x{}",
            h.rows(),
            h.cols()
        )));
    }
    let defect = h.hermitian_defect();
    if defect > tol::STRUCTURAL * h.frobenius_norm().max(1.0) {
        return Err(Error::NotHermitian { defect });
    }
    let n = h.rows();
    if n == 0 {
        return Ok(Eigensystem {
            values: Vec::new(),
            vectors: Matrix::zeros(0, 0),
        });
    }
    let half = C64::new(0.5, 0.0);
    let sym = DMatrix::from_fn(n, n, |i, j| (h[(i, j)] + h[(j, i)].conj()) * half);
    let eig = SymmetricEigen::try_new(sym, f64::EPSILON, 0)
        .ok_or_else(|| Error::IllConditioned("eigensolver did not converge".into()))?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = Matrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok(Eigensystem { values, vectors })
}

/// Largest singular value, from the eigensystem of the smaller Gram matrix.
pub fn spectral_norm(a: &Matrix) -> f64 {
    if a.rows() == 0 || a.cols() == 0 {
        return 0.0;
    }
    let gram = if a.rows() >= a.cols() {
        &a.adjoint() * a
    } else {
        a * &a.adjoint()
    };
    let eig = hermitian_eigensystem(&gram).expect("Gram matrices are Hermitian");
    eig.values[0].max(0.0).sqrt()
}

/// Positive square root of a PSD matrix, with `(·)^{-1/2}` available via
/// [`psd_inverse_sqrt`].
pub fn psd_sqrt(h: &Matrix) -> Result<Matrix> {
    let eig = hermitian_eigensystem(h)?;
    Ok(eig.reconstruct_with(|v| v.max(0.0).sqrt()))
}

/// Inverse square root of a positive-definite matrix.
pub fn psd_inverse_sqrt(h: &Matrix) -> Result<Matrix> {
    let eig = hermitian_eigensystem(h)?;
    let cut = tol::RANK_RELATIVE * eig.values.first().copied().unwrap_or(0.0);
    if eig.values.iter().any(|&v| v <= cut) {
        return Err(Error::IllConditioned("matrix is singular".into()));
    }
    Ok(eig.reconstruct_with(|v| 1.0 / v.sqrt()))
}

/// Rotates the column so that its largest-magnitude entry is real and
/// positive. Makes eigenvector output reproducible.
pub(crate) fn fix_phase(col: &mut [C64]) {
    let mut best = 0;
    let mut best_mag = -1.0;
    for (i, z) in col.iter().enumerate() {
        // Prefer the earliest index among near-ties.
        if z.norm() > best_mag + 1e-12 {
            best = i;
            best_mag = z.norm();
        }
    }
    if best_mag <= 0.0 {
        return;
    }
    let phase = col[best].conj() / col[best].norm();
    for z in col.iter_mut() {
        *z *= phase;
    }
    col[best] = C64::new(col[best].re, 0.0);
}
