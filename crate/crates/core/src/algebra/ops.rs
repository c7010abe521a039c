//! Composition, the two monoidal products, duality and copairing.

use super::channel::{choi_to_transfer, transfer_to_choi, Channel, ChoiMap, Picture};
use super::object::CStarObject;
use super::structural::{self, Structural};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

fn same_picture(f: &Channel, g: &Channel, op: &str) -> Result<Picture> {
    if f.picture() != g.picture() {
        return Err(Error::shape(format!(
            "{op}: pictures differ ({:?} vs {:?})",
            f.picture(),
            g.picture()
        )));
    }
    Ok(f.picture())
}

/// `g ∘ f` on raw maps.
pub fn compose_maps(g: &ChoiMap, f: &ChoiMap) -> Result<ChoiMap> {
    if f.cod() != g.dom() {
        return Err(Error::shape(format!(
            "cannot compose {}→{} after {}→{}",
            g.dom(),
            g.cod(),
            f.dom(),
            f.cod()
        )));
    }
    let (a, b, c) = (f.dom(), f.cod(), g.cod());
    Ok(ChoiMap::from_fn(a.clone(), c.clone(), |j, i| {
        let (n, m) = (a.dims()[i], c.dims()[j]);
        let t = (0..b.len()).fold(Matrix::zeros(m * m, n * n), |acc, k| {
            let mid = b.dims()[k];
            let tg = choi_to_transfer(g.block(j, k), mid, m);
            let tf = choi_to_transfer(f.block(k, i), n, mid);
            &acc + &(&tg * &tf)
        });
        transfer_to_choi(&t, n, m)
    }))
}

/// `g ∘ f`: apply `f` first.
pub fn compose(g: &Channel, f: &Channel) -> Result<Channel> {
    let picture = same_picture(f, g, "compose")?;
    Ok(Channel::trusted(compose_maps(g.map(), f.map())?, picture))
}

/// Composes a non-empty sequence in diagrammatic order (first element applied
/// first).
pub fn compose_seq(chain: &[Channel]) -> Result<Channel> {
    let (first, rest) = chain
        .split_first()
        .ok_or_else(|| Error::shape("empty composition"))?;
    rest.iter()
        .try_fold(first.clone(), |acc, next| compose(next, &acc))
}

pub fn oplus_maps(f: &ChoiMap, g: &ChoiMap) -> ChoiMap {
    let dom = f.dom().oplus(g.dom());
    let cod = f.cod().oplus(g.cod());
    let (fk, fp) = (f.dom().len(), f.cod().len());
    let (dd, cd) = (dom.dims().to_vec(), cod.dims().to_vec());
    ChoiMap::from_fn(dom, cod, |j, i| match (j < fp, i < fk) {
        (true, true) => f.block(j, i).clone(),
        (false, false) => g.block(j - fp, i - fk).clone(),
        _ => {
            let d = dd[i] * cd[j];
            Matrix::zeros(d, d)
        }
    })
}

/// `f ⊕ g`: concatenated objects, block-diagonal grid.
pub fn oplus(f: &Channel, g: &Channel) -> Result<Channel> {
    let picture = same_picture(f, g, "oplus")?;
    Ok(Channel::trusted(oplus_maps(f.map(), g.map()), picture))
}

/// Direct sum of any number of channels sharing a picture; the empty sum is
/// the identity on the initial object.
pub fn oplus_all(parts: &[Channel], picture: Picture) -> Result<Channel> {
    parts.iter().try_fold(
        structural::identity(&CStarObject::initial(), picture),
        |acc, p| oplus(&acc, p),
    )
}

pub fn otimes_maps(f: &ChoiMap, g: &ChoiMap) -> ChoiMap {
    let dom = f.dom().otimes(g.dom());
    let cod = f.cod().otimes(g.cod());
    let (gk, gp) = (g.dom().len(), g.cod().len());
    ChoiMap::from_fn(dom, cod, |jl, ik| {
        let (j, l) = (jl / gp, jl % gp);
        let (i, k) = (ik / gk, ik % gk);
        let (n1, m1) = (f.dom().dims()[i], f.cod().dims()[j]);
        let (n2, m2) = (g.dom().dims()[k], g.cod().dims()[l]);
        let (cf, cg) = (f.block(j, i), g.block(l, k));
        let (n, m) = (n1 * n2, m1 * m2);
        // Regroup (in₁ out₁)(in₂ out₂) into (in₁ in₂)(out₁ out₂).
        Matrix::from_fn(n * m, n * m, |r, s| {
            let (aa, xx) = (r / m, r % m);
            let (bb, yy) = (s / m, s % m);
            let (a1, a2, x1, x2) = (aa / n2, aa % n2, xx / m2, xx % m2);
            let (b1, b2, y1, y2) = (bb / n2, bb % n2, yy / m2, yy % m2);
            cf[(a1 * m1 + x1, b1 * m1 + y1)] * cg[(a2 * m2 + x2, b2 * m2 + y2)]
        })
    })
}

/// `f ⊗ g` with lexicographically ordered objects, `f` outer.
pub fn otimes(f: &Channel, g: &Channel) -> Result<Channel> {
    let picture = same_picture(f, g, "otimes")?;
    Ok(Channel::trusted(otimes_maps(f.map(), g.map()), picture))
}

pub fn dualize_map(f: &ChoiMap) -> ChoiMap {
    let (dom, cod) = (f.dom(), f.cod());
    ChoiMap::from_fn(cod.clone(), dom.clone(), |i, j| {
        let (n, m) = (dom.dims()[i], cod.dims()[j]);
        let c = f.block(j, i);
        // D[(x, b), (y, a)] = C[(a, y), (b, x)]
        Matrix::from_fn(m * n, m * n, |r, s| {
            let (x, b) = (r / n, r % n);
            let (y, a) = (s / n, s % n);
            c[(a * m + y, b * m + x)]
        })
    })
}

/// The adjoint with respect to the trace pairing `Tr(f*(b)·a) = Tr(b·f(a))`.
/// Swaps domain and codomain and flips the picture.
pub fn dualize(f: &Channel) -> Channel {
    Channel::trusted(dualize_map(f.map()), f.picture().flip())
}

/// `[f, g]: A ⊕ B → C` by juxtaposing block columns.
pub fn copair(f: &Channel, g: &Channel) -> Result<Channel> {
    copair_all(&[f.clone(), g.clone()])
}

/// Copairing of a non-empty family with common codomain.
pub fn copair_all(parts: &[Channel]) -> Result<Channel> {
    let first = parts
        .first()
        .ok_or_else(|| Error::shape("copair of an empty family"))?;
    let cod = first.cod().clone();
    for p in parts {
        if p.picture() != Picture::Schrodinger {
            return Err(Error::shape("copair needs Schrödinger-picture channels"));
        }
        if *p.cod() != cod {
            return Err(Error::shape(format!(
                "copair: codomains {} and {} differ",
                cod,
                p.cod()
            )));
        }
    }
    let dom = CStarObject::oplus_all(parts.iter().map(|p| p.dom()));
    let blocks = (0..cod.len())
        .map(|j| {
            parts
                .iter()
                .flat_map(|p| p.blocks()[j].iter().cloned())
                .collect()
        })
        .collect();
    Ok(Channel::trusted(
        ChoiMap::new(dom, cod, blocks)?,
        Picture::Schrodinger,
    ))
}

/// `A⊕B → C⊕C = (I⊕I)⊗C → I⊗C = C`, i.e. `(!_{[1,1]} ⊗ id_C) ∘ (f ⊕ g)`.
pub fn copair_via_terminal(f: &Channel, g: &Channel) -> Result<Channel> {
    if f.cod() != g.cod() {
        return Err(Error::shape(format!(
            "copair: codomains {} and {} differ",
            f.cod(),
            g.cod()
        )));
    }
    let sum = oplus(f, g)?;
    let bang = structural::channel(&Structural::Terminal(CStarObject::classical(2)))?;
    let id_c = structural::identity(f.cod(), Picture::Schrodinger);
    compose(&otimes(&bang, &id_c)?, &sum)
}

/// Converts a Schrödinger channel between classical objects `[1,…,1]` into
/// its column-stochastic matrix `P[j][i] = Prob(j | i)`.
pub fn to_stochastic(f: &Channel) -> Result<Vec<Vec<f64>>> {
    if f.dom().dims().iter().chain(f.cod().dims()).any(|&d| d != 1) {
        return Err(Error::shape("stochastic matrices need classical objects"));
    }
    Ok(f.blocks()
        .iter()
        .map(|row| row.iter().map(|b| b[(0, 0)].re).collect())
        .collect())
}

/// Inverse of [`to_stochastic`]; rejects matrices that are not
/// column-stochastic.
pub fn from_stochastic(p: &[Vec<f64>], inputs: usize) -> Result<Channel> {
    let blocks = p
        .iter()
        .map(|row| {
            if row.len() != inputs {
                return Err(Error::shape("ragged stochastic matrix"));
            }
            Ok(row
                .iter()
                .map(|&x| Matrix::from_real_rows(&[&[x]]))
                .collect())
        })
        .collect::<Result<Vec<Vec<Matrix>>>>()?;
    Channel::from_blocks(
        Picture::Schrodinger,
        CStarObject::classical(inputs),
        CStarObject::classical(p.len()),
        blocks,
    )
}
