//! Named canonical morphisms of the channel category.

use serde::{Deserialize, Serialize};

use super::channel::{choi_from_images, Channel, ChoiMap, Picture};
use super::kraus::choi_of_kraus;
use super::object::CStarObject;
use super::ops::{compose, oplus, otimes};
use super::pure;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// A canonical morphism together with its shape parameters.
///
/// The strict isomorphisms (associators, unitors and whichever distributor is
/// trivial under the lexicographic tensor ordering) have no entry beyond
/// [`Structural::Identity`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Structural {
    Identity(CStarObject),
    /// `A ⊕ B → B ⊕ A`.
    GammaPlus(CStarObject, CStarObject),
    /// `A ⊗ B → B ⊗ A`.
    GammaTimes(CStarObject, CStarObject),
    /// `(A⊗B) ⊕ (A⊗C) → A⊗(B⊕C)`.
    Delta(CStarObject, CStarObject, CStarObject),
    /// `(A⊗C) ⊕ (B⊗C) → (A⊕B)⊗C`.
    DeltaSharp(CStarObject, CStarObject, CStarObject),
    /// `A → [1]`, the trace on every block.
    Terminal(CStarObject),
    /// `[] → A`.
    Initial(CStarObject),
    /// Inclusion of `summands[index]` into the direct sum of `summands`.
    Injection {
        summands: Vec<CStarObject>,
        index: usize,
    },
    /// `A ⊕ … ⊕ A → A` with `arity` copies, summing the blocks.
    Fold {
        object: CStarObject,
        arity: usize,
    },
    /// `[traced·kept] → [kept]`, tracing out the outer tensor factor.
    PartialTrace {
        traced: usize,
        kept: usize,
    },
    /// `[n+m] → [n, m]`: keep the two diagonal corners.
    MeasurePhi(usize, usize),
    /// `[Σ dims] → dims` by left-associated iteration of `MeasurePhi`.
    Measure(Vec<usize>),
}

pub fn identity(obj: &CStarObject, picture: Picture) -> Channel {
    let map = wiring(obj.clone(), obj.clone(), |j, i| i == j);
    Channel::trusted(map, picture)
}

/// Choi matrix of the identity on `M_n`.
fn identity_choi(n: usize) -> Matrix {
    choi_from_images(n, n, |a, b| Matrix::unit(n, a, b))
}

/// Map whose `(j, i)` component is the identity when `connect(j, i)` holds
/// and zero otherwise. Connected blocks must have equal sizes.
fn wiring(dom: CStarObject, cod: CStarObject, connect: impl Fn(usize, usize) -> bool) -> ChoiMap {
    let (dd, cd) = (dom.dims().to_vec(), cod.dims().to_vec());
    ChoiMap::from_fn(dom, cod, |j, i| {
        if connect(j, i) {
            debug_assert_eq!(dd[i], cd[j]);
            identity_choi(dd[i])
        } else {
            let d = dd[i] * cd[j];
            Matrix::zeros(d, d)
        }
    })
}

/// The Schrödinger-picture channel named by `s`.
pub fn channel(s: &Structural) -> Result<Channel> {
    let map = match s {
        Structural::Identity(a) => return Ok(identity(a, Picture::Schrodinger)),
        Structural::GammaPlus(a, b) => {
            let (ka, kb) = (a.len(), b.len());
            wiring(a.oplus(b), b.oplus(a), |j, i| {
                if j < kb {
                    i == ka + j
                } else {
                    i == j - kb
                }
            })
        }
        Structural::GammaTimes(a, b) => {
            let (ka, kb) = (a.len(), b.len());
            let (ad, bd) = (a.dims().to_vec(), b.dims().to_vec());
            ChoiMap::from_fn(a.otimes(b), b.otimes(a), |j, i| {
                let (ia, ib) = (i / kb, i % kb);
                let (jb, ja) = (j / ka, j % ka);
                let d = ad[ia] * bd[ib];
                if ia == ja && ib == jb {
                    let swap = pure::gamma_times(ad[ia], bd[ib]);
                    choi_of_kraus(d, d, &[swap]).expect("square permutation")
                } else {
                    let e = d * ad[ja] * bd[jb];
                    Matrix::zeros(e, e)
                }
            })
        }
        Structural::Delta(a, b, c) => {
            let (ka, kb, kc) = (a.len(), b.len(), c.len());
            let w = kb + kc;
            let dom = a.otimes(b).oplus(&a.otimes(c));
            wiring(dom, a.otimes(&b.oplus(c)), |j, i| {
                let target = if i < ka * kb {
                    (i / kb) * w + i % kb
                } else {
                    let s = i - ka * kb;
                    (s / kc) * w + kb + s % kc
                };
                j == target
            })
        }
        Structural::DeltaSharp(a, b, c) => {
            let dom = a.otimes(c).oplus(&b.otimes(c));
            debug_assert_eq!(dom, a.oplus(b).otimes(c));
            wiring(dom.clone(), dom, |j, i| i == j)
        }
        Structural::Terminal(a) => {
            let dims = a.dims().to_vec();
            ChoiMap::from_fn(a.clone(), CStarObject::unit(), |_, i| {
                Matrix::identity(dims[i])
            })
        }
        Structural::Initial(a) => ChoiMap::zero(CStarObject::initial(), a.clone()),
        Structural::Injection { summands, index } => {
            let part = summands.get(*index).ok_or_else(|| {
                Error::shape(format!(
                    "injection index {index} out of range for {} summands",
                    summands.len()
                ))
            })?;
            let offset: usize = summands[..*index].iter().map(|o| o.len()).sum();
            let total = CStarObject::oplus_all(summands);
            wiring(part.clone(), total, |j, i| j == offset + i)
        }
        Structural::Fold { object, arity } => {
            let k = object.len();
            let dom = CStarObject::oplus_all(std::iter::repeat_n(object, *arity));
            wiring(dom, object.clone(), |j, i| i % k == j)
        }
        Structural::PartialTrace { traced, kept } => {
            let t = channel(&Structural::Terminal(positive(*traced)?))?;
            let id = identity(&positive(*kept)?, Picture::Schrodinger);
            return otimes(&t, &id);
        }
        Structural::MeasurePhi(n, m) => {
            let (n, m) = (*n, *m);
            let cod = CStarObject::new(vec![n, m])?;
            let dom = positive(n + m)?;
            ChoiMap::from_fn(dom, cod, |j, _| {
                let (size, off) = if j == 0 { (n, 0) } else { (m, n) };
                choi_from_images(n + m, size, |a, b| {
                    let inside = |x: usize| x >= off && x < off + size;
                    if inside(a) && inside(b) {
                        Matrix::unit(size, a - off, b - off)
                    } else {
                        Matrix::zeros(size, size)
                    }
                })
            })
        }
        Structural::Measure(dims) => return measure(dims),
    };
    Ok(Channel::trusted(map, Picture::Schrodinger))
}

fn positive(n: usize) -> Result<CStarObject> {
    if n == 0 {
        return Err(Error::shape("block size must be positive"));
    }
    Ok(CStarObject::single(n))
}

fn measure(dims: &[usize]) -> Result<Channel> {
    let obj = CStarObject::new(dims.to_vec())?;
    match dims {
        [] | [_] => Ok(identity(&obj, Picture::Schrodinger)),
        [init @ .., last] => {
            let head: usize = init.iter().sum();
            let split = channel(&Structural::MeasurePhi(head, *last))?;
            let rest = oplus(
                &measure(init)?,
                &identity(&CStarObject::single(*last), Picture::Schrodinger),
            )?;
            compose(&rest, &split)
        }
    }
}
