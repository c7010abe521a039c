use serde::{Deserialize, Serialize};

use crate::algebra::{Channel, ChoiMap};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigensystem, kron, Matrix, C64};
use crate::normalform::bratteli_form;

use super::norms::Element;

/// Multiplicities `sbar` with `Σ sᵢmᵢ = n`, indexing the connected components
/// of the unital *-homomorphisms `mbar → [n]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BratteliTuple {
    pub n: usize,
    pub mbar: Vec<usize>,
    pub sbar: Vec<usize>,
}

/// One connected component: a homogeneous space `U(n)/∏U(sᵢ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentInfo {
    pub tuple: BratteliTuple,
    pub real_dimension: usize,
    pub is_point: bool,
}

impl ComponentInfo {
    pub fn new(tuple: BratteliTuple) -> Self {
        let stabilizer: usize = tuple.sbar.iter().map(|s| s * s).sum();
        let real_dimension = tuple.n * tuple.n - stabilizer;
        ComponentInfo {
            tuple,
            real_dimension,
            is_point: real_dimension == 0,
        }
    }
}

/// All solutions of `Σ sᵢmᵢ = n` in descending lexicographic order.
pub fn bratteli_tuples(n: usize, mbar: &[usize]) -> Vec<BratteliTuple> {
    fn go(rest: usize, mbar: &[usize], prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        match mbar.split_first() {
            None => {
                if rest == 0 {
                    out.push(prefix.clone());
                }
            }
            Some((&m, tail)) => {
                let max = rest.checked_div(m).unwrap_or(0);
                for s in (0..=max).rev() {
                    prefix.push(s);
                    go(rest - s * m, tail, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(n, mbar, &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|sbar| BratteliTuple {
            n,
            mbar: mbar.to_vec(),
            sbar,
        })
        .collect()
}

pub fn component_atlas(n: usize, mbar: &[usize]) -> Vec<ComponentInfo> {
    bratteli_tuples(n, mbar)
        .into_iter()
        .map(ComponentInfo::new)
        .collect()
}

/// Complex dimension of the commutant of the image of `f`, from the null
/// space of `X ↦ [X, f(E_ab)]` over all matrix units.
pub fn commutant_dimension(f: &ChoiMap) -> Result<usize> {
    if f.cod().len() != 1 {
        return Err(Error::NotSingleBlockCodomain(f.cod().len()));
    }
    let n = f.cod().dims()[0];
    let id = Matrix::identity(n);
    let mut gram = Matrix::zeros(n * n, n * n);
    for (i, &m) in f.dom().dims().iter().enumerate() {
        for a in 0..m {
            for b in 0..m {
                let g = f.image_of_unit(0, i, a, b);
                // vec(XG − GX) = (I ⊗ Gᵀ − G ⊗ I)·vec(X), row-major.
                let l = &kron(&id, &g.transpose()) - &kron(&g, &id);
                gram = &gram + &(&l.adjoint() * &l);
            }
        }
    }
    let eig = hermitian_eigensystem(&gram)?;
    Ok(n * n - eig.rank())
}

/// The component containing a unital *-homomorphism into a single block.
/// The dimension formula is cross-checked against the commutant.
pub fn component_of(f: &Channel) -> Result<ComponentInfo> {
    let form = bratteli_form(f)?;
    let info = ComponentInfo::new(BratteliTuple {
        n: form.p,
        mbar: form.mbar,
        sbar: form.sbar,
    });
    let expected: usize = info.tuple.sbar.iter().map(|s| s * s).sum();
    let nullity = commutant_dimension(f.map())?;
    if nullity != expected {
        return Err(Error::IllConditioned(format!(
            "commutant has dimension {nullity}, multiplicities give {expected}"
        )));
    }
    Ok(info)
}

/// A unit-norm element separating two *-homomorphisms from different
/// components, with a unit vector on which their images differ by 1.
#[derive(Debug, Clone)]
pub struct SeparationWitness {
    pub block: usize,
    pub element: Element,
    pub vector: Vec<C64>,
    pub bound: f64,
}

/// Picks a block where the multiplicities differ. The images of `E₀₀` there
/// are projections of different ranks, so a unit vector in the range of the
/// larger and the kernel of the smaller exists.
pub fn separation_witness(f: &Channel, g: &Channel) -> Result<SeparationWitness> {
    let (ff, fg) = (bratteli_form(f)?, bratteli_form(g)?);
    if ff.mbar != fg.mbar || ff.p != fg.p {
        return Err(Error::shape(
            "separation needs *-homomorphisms with equal shapes",
        ));
    }
    let block = ff
        .sbar
        .iter()
        .zip(&fg.sbar)
        .position(|(a, b)| a != b)
        .ok_or(Error::SameComponent)?;
    let element: Element = ff
        .mbar
        .iter()
        .enumerate()
        .map(|(i, &m)| {
            if i == block {
                Matrix::unit(m, 0, 0)
            } else {
                Matrix::zeros(m, m)
            }
        })
        .collect();
    let pf = f.map().image_of_unit(0, block, 0, 0);
    let pg = g.map().image_of_unit(0, block, 0, 0);
    let (big, small) = if ff.sbar[block] > fg.sbar[block] {
        (&pf, &pg)
    } else {
        (&pg, &pf)
    };
    let range = hermitian_eigensystem(big)?.range_basis();
    let restricted = &(&range.adjoint() * small) * &range;
    let eig = hermitian_eigensystem(&restricted)?;
    let w = eig.vectors.columns(eig.values.len() - 1, 1);
    let v = &range * &w;
    let diff = &(&pf - &pg) * &v;
    Ok(SeparationWitness {
        block,
        element,
        vector: v.col(0),
        bound: diff.frobenius_norm(),
    })
}

/// A unitary `W` with `W f(a) W* = g(a)` for *-homomorphisms in the same
/// component.
pub fn unitary_intertwiner(f: &Channel, g: &Channel) -> Result<Matrix> {
    let (ff, fg) = (bratteli_form(f)?, bratteli_form(g)?);
    if ff.mbar != fg.mbar || ff.sbar != fg.sbar {
        return Err(Error::WitnessInfeasible {
            residual: f64::INFINITY,
            reason: "the *-homomorphisms lie in different components".into(),
        });
    }
    Ok(&fg.u * &ff.u.adjoint())
}
