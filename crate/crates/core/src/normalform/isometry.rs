use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{extend_to_unitary, Matrix};
use crate::tol;

/// `V = U·ι_{m,n}` with `U` unitary and `ι_{m,n} = I_m ⊕ ⊥_p`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsometryFactorization {
    pub u: Matrix,
    pub m: usize,
    pub p: usize,
}

impl IsometryFactorization {
    /// Rebuilds `U·ι`, which is the first `m` columns of `U`.
    pub fn reassemble(&self) -> Matrix {
        self.u.columns(0, self.m)
    }
}

pub fn factor_isometry(v: &Matrix) -> Result<IsometryFactorization> {
    let u = extend_to_unitary(v)?;
    Ok(IsometryFactorization {
        u,
        m: v.cols(),
        p: v.rows() - v.cols(),
    })
}

/// Given unitaries agreeing on their first `m` columns, returns the unitary
/// `W` with `u1·(I_m ⊕ W) = u2`.
///
/// Writing `uₖ = [[Aₖ, Cₖ], [Bₖ, Dₖ]]` with `m` leading columns,
/// `W = C₁*C₂ + D₁*D₂`.
pub fn isometry_witness(u1: &Matrix, u2: &Matrix, m: usize) -> Result<Matrix> {
    let n = u1.rows();
    if !u1.is_square() || u2.shape() != (n, n) || m > n {
        return Err(Error::shape(
            "isometry_witness needs equal square unitaries",
        ));
    }
    for u in [u1, u2] {
        let defect = u.isometry_defect();
        if defect > tol::STRUCTURAL {
            return Err(Error::NotIsometry { defect });
        }
    }
    let lead = u1.columns(0, m).distance(&u2.columns(0, m));
    if lead > tol::STRUCTURAL.max(1e-8) {
        return Err(Error::WitnessInfeasible {
            residual: lead,
            reason: "leading columns differ".into(),
        });
    }
    let p = n - m;
    let w = &u1.columns(m, p).adjoint() * &u2.columns(m, p);
    let residual = (u1 * &crate::linalg::direct_sum(&Matrix::identity(m), &w)).distance(u2);
    if residual > 1e-8 {
        return Err(Error::WitnessInfeasible {
            residual,
            reason: "witness equation fails".into(),
        });
    }
    Ok(w)
}
