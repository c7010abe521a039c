//! The universal extensions of functors along the completion embeddings.

use super::target::{ColaxFunctor, CoproductTarget, TargetCategory, UnitaryFunctor};
use crate::algebra::{dualize, Channel, Picture};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::normalform::{bratteli_form, factor_isometry, stinespring_family, NormalForm};

/// Extends a functor on unitaries to isometries:
/// `F̂(V) = F(U) ∘ (id_{F(m)} ⊕ ⊥_{F(p)})` where `V = U·ι_{m,m+p}`.
pub fn lift_isometry<T, F>(target: &T, functor: &F, v: &Matrix) -> Result<T::Morphism>
where
    T: TargetCategory,
    F: UnitaryFunctor<T>,
{
    let fac = factor_isometry(v)?;
    let pad = target.oplus(
        &target.identity(&functor.object(fac.m)),
        &target.initial(&functor.object(fac.p)),
    )?;
    target.compose(&functor.unitary(&fac.u)?, &pad)
}

/// `Ψ: F(Σ lᵢ) → ⊕ᵢ F(lᵢ)`, iterating `ψ` with left-associated bracketing.
pub fn psi_iterated<T, F>(target: &T, functor: &F, parts: &[usize]) -> Result<T::Morphism>
where
    T: TargetCategory,
    F: ColaxFunctor<T>,
{
    match parts {
        [] => Ok(target.identity(&functor.object(0))),
        [single] => Ok(target.identity(&functor.object(*single))),
        [init @ .., last] => {
            let head: usize = init.iter().sum();
            let split = functor.psi(head, *last)?;
            let rest = target.oplus(
                &psi_iterated(target, functor, init)?,
                &target.identity(&functor.object(*last)),
            )?;
            target.compose(&rest, &split)
        }
    }
}

/// `(⊕ᵢ ∇_{sᵢ}) ∘ Ψ ∘ F(V)` for an isometry `V: p → Σ sᵢmᵢ`.
fn assemble<T, F>(
    target: &T,
    functor: &F,
    v: &Matrix,
    mbar: &[usize],
    sbar: &[usize],
) -> Result<T::Morphism>
where
    T: CoproductTarget,
    F: ColaxFunctor<T>,
{
    let parts: Vec<usize> = mbar
        .iter()
        .zip(sbar)
        .flat_map(|(&m, &s)| std::iter::repeat_n(m, s))
        .collect();
    let folds = mbar
        .iter()
        .zip(sbar)
        .map(|(&m, &s)| target.fold(&functor.object(m), s))
        .collect::<Result<Vec<_>>>()?;
    let chain = target.compose(
        &psi_iterated(target, functor, &parts)?,
        &functor.isometry(v)?,
    )?;
    target.compose(&target.oplus_all(&folds)?, &chain)
}

/// Image of one normal form read in the Schrödinger picture.
pub fn lift_normal_form<T, F>(target: &T, functor: &F, nf: &NormalForm) -> Result<T::Morphism>
where
    T: CoproductTarget,
    F: ColaxFunctor<T>,
{
    assemble(target, functor, &nf.isometry(), &nf.mbar, &nf.sbar)
}

/// Copairs the lifts of the per-block normal forms of a channel with domain
/// `[p₁, …, p_r]` and codomain `mbar`.
pub fn lift_normal_forms<T, F>(
    target: &T,
    functor: &F,
    forms: &[NormalForm],
    mbar: &[usize],
) -> Result<T::Morphism>
where
    T: CoproductTarget,
    F: ColaxFunctor<T>,
{
    let parts = forms
        .iter()
        .map(|nf| lift_normal_form(target, functor, nf))
        .collect::<Result<Vec<_>>>()?;
    let cod = mbar.iter().fold(target.zero(), |acc, &m| {
        target.oplus_objects(&acc, &functor.object(m))
    });
    target.copair_all(&parts, &cod)
}

/// Extends a colax functor on isometries to all channels, through the
/// Stinespring normal form of each input block.
pub fn lift_channel<T, F>(target: &T, functor: &F, g: &Channel) -> Result<T::Morphism>
where
    T: CoproductTarget,
    F: ColaxFunctor<T>,
{
    if g.picture() != Picture::Schrodinger {
        return Err(Error::NotCptp);
    }
    let forms = stinespring_family(g)?;
    lift_normal_forms(target, functor, &forms, g.cod().dims())
}

/// Extends a colax functor to unital *-homomorphisms `f: A → B`, landing on
/// the image of the dual channel `B → A`.
pub fn lift_starhom<T, F>(target: &T, functor: &F, f: &Channel) -> Result<T::Morphism>
where
    T: CoproductTarget,
    F: ColaxFunctor<T>,
{
    let heis = match f.picture() {
        Picture::Heisenberg => f.clone(),
        Picture::Schrodinger => dualize(f),
    };
    if !heis.classify().star_hom {
        return Err(Error::NotStarHom);
    }
    let map = heis.map();
    let mbar = map.dom().dims().to_vec();
    let parts = (0..map.cod().len())
        .map(|j| {
            let row = crate::algebra::ChoiMap::new(
                map.dom().clone(),
                crate::algebra::CStarObject::single(map.cod().dims()[j]),
                vec![map.blocks()[j].clone()],
            )?;
            let form = bratteli_form(&Channel::new(row, Picture::Heisenberg)?)?;
            assemble(target, functor, &form.u.adjoint(), &form.mbar, &form.sbar)
        })
        .collect::<Result<Vec<_>>>()?;
    let cod = mbar.iter().fold(target.zero(), |acc, &m| {
        target.oplus_objects(&acc, &functor.object(m))
    });
    target.copair_all(&parts, &cod)
}
