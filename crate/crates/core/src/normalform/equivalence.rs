use serde::Serialize;

use super::isometry::isometry_witness;
use super::stinespring::{stabilizer, NormalForm};
use crate::error::{Error, Result};
use crate::linalg::{direct_sum, extend_to_unitary, hermitian_eigensystem, Matrix};

/// Unitaries `P` and `Qᵢ` with `(I_p ⊕ P)·U₁·(⊕ᵢ Qᵢ ⊗ I_{mᵢ}) = U₂`.
#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceWitness {
    pub p: Matrix,
    pub q: Vec<Matrix>,
    pub residual: f64,
}

const RESIDUAL: f64 = 1e-7;

fn infeasible(residual: f64, reason: impl Into<String>) -> Error {
    Error::WitnessInfeasible {
        residual,
        reason: reason.into(),
    }
}

/// Constructs the unitaries relating two normal forms of the same channel.
///
/// Per block, the Kraus rows of both forms are related by a unitary `Qᵢ`
/// (they have the same Gram matrix); once the multiplicity spaces are
/// aligned, the two completions differ only on the ancilla, which
/// [`isometry_witness`] recovers.
pub fn equivalence_witness(nf1: &NormalForm, nf2: &NormalForm) -> Result<EquivalenceWitness> {
    if (nf1.q, nf1.p, &nf1.mbar, &nf1.sbar) != (nf2.q, nf2.p, &nf2.mbar, &nf2.sbar) {
        return Err(infeasible(
            f64::INFINITY,
            "normal forms have different shapes",
        ));
    }
    let (k1, k2) = (nf1.kraus(), nf2.kraus());
    let mut qs = Vec::with_capacity(nf1.mbar.len());
    for (b1, b2) in k1.iter().zip(&k2) {
        qs.push(align_multiplicity(b1, b2)?);
    }
    let z = stabilizer(&nf1.mbar, &qs);
    let left = &z * &nf1.u.adjoint();
    let y = isometry_witness(&left, &nf2.u.adjoint(), nf1.p).map_err(|e| match e {
        Error::WitnessInfeasible { residual, .. } => {
            infeasible(residual, "the forms denote different channels")
        }
        other => other,
    })?;
    let p = y.adjoint();
    let q: Vec<Matrix> = qs.iter().map(Matrix::adjoint).collect();
    let lhs = &(&direct_sum(&Matrix::identity(nf1.p), &p) * &nf1.u) * &stabilizer(&nf1.mbar, &q);
    let residual = lhs.distance(&nf2.u);
    if residual > RESIDUAL {
        return Err(infeasible(residual, "witness equation fails"));
    }
    Ok(EquivalenceWitness { p, q, residual })
}

/// Unitary `Q` with `Σ_u Q[t,u]·V¹_u = V²_t` for two Kraus lists of equal
/// length presenting the same map.
fn align_multiplicity(v1: &[Matrix], v2: &[Matrix]) -> Result<Matrix> {
    let s = v1.len();
    if s == 0 {
        return Ok(Matrix::zeros(0, 0));
    }
    let rows = |vs: &[Matrix]| {
        let d = vs[0].rows() * vs[0].cols();
        Matrix::from_fn(vs.len(), d, |t, k| vs[t].data()[k])
    };
    let (m1, m2) = (rows(v1), rows(v2));
    let g1 = &m1.adjoint() * &m1;
    let g2 = &m2.adjoint() * &m2;
    let gap = g1.distance(&g2);
    if gap > RESIDUAL {
        return Err(infeasible(gap, "the forms denote different channels"));
    }
    let eig = hermitian_eigensystem(&g1)?;
    let r = eig.rank();
    let basis = eig.vectors.columns(0, r);
    let scale = Matrix::diag(
        &eig.values[..r]
            .iter()
            .map(|&l| crate::C64::new(1.0 / l.sqrt(), 0.0))
            .collect::<Vec<_>>(),
    );
    let z1 = &(&m1 * &basis) * &scale;
    let z2 = &(&m2 * &basis) * &scale;
    let e1 = extend_to_unitary(&z1)?;
    let e2 = extend_to_unitary(&z2)?;
    Ok(&e2 * &e1.adjoint())
}
