use serde::{Deserialize, Deserializer, Serialize};

use crate::algebra::{
    choi_of_kraus, dualize, kraus_of_block, CStarObject, Channel, ChoiMap, Picture,
};
use crate::error::{Error, Result};
use crate::linalg::{extend_to_unitary, Matrix};
use crate::tol;

/// Normal form `R_{q,p} ∘ Ad_U ∘ φ ∘ ⊕ᵢ Δ_{sᵢ,mᵢ}` of a unital completely
/// positive map `mbar → [p]`, or of its Schrödinger dual
/// `∇ ∘ measure ∘ E(U*·ι_{p,q})`.
///
/// In the Heisenberg picture this reads `f(A) = W*·(⊕ᵢ I_{sᵢ} ⊗ Aᵢ)·W` with
/// `W = U*·ι_{p,q}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalForm {
    pub q: usize,
    pub p: usize,
    pub mbar: Vec<usize>,
    pub sbar: Vec<usize>,
    pub u: Matrix,
    pub picture: Picture,
}

#[derive(Deserialize)]
struct NormalFormRecord {
    q: usize,
    p: usize,
    mbar: Vec<usize>,
    sbar: Vec<usize>,
    u: Matrix,
    picture: Picture,
}

impl<'de> Deserialize<'de> for NormalForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = NormalFormRecord::deserialize(d)?;
        NormalForm::new(r.q, r.p, r.mbar, r.sbar, r.u, r.picture).map_err(serde::de::Error::custom)
    }
}

impl NormalForm {
    pub fn new(
        q: usize,
        p: usize,
        mbar: Vec<usize>,
        sbar: Vec<usize>,
        u: Matrix,
        picture: Picture,
    ) -> Result<Self> {
        if mbar.len() != sbar.len() {
            return Err(Error::shape("mbar and sbar lengths differ"));
        }
        CStarObject::new(mbar.clone())?;
        let total: usize = mbar.iter().zip(&sbar).map(|(m, s)| m * s).sum();
        if total != q || q < p {
            return Err(Error::shape(format!(
                "need Σ sᵢmᵢ = q ≥ p, got Σ = {total}, q = {q}, p = {p}"
            )));
        }
        if u.shape() != (q, q) {
            return Err(Error::shape("U must be q×q"));
        }
        let defect = u.isometry_defect();
        if defect > tol::STRUCTURAL {
            return Err(Error::NotIsometry { defect });
        }
        Ok(NormalForm {
            q,
            p,
            mbar,
            sbar,
            u,
            picture,
        })
    }

    /// The Stinespring isometry `W = U*·ι_{p,q}`.
    pub fn isometry(&self) -> Matrix {
        self.u.adjoint().columns(0, self.p)
    }

    /// Kraus operators `W_{i,t}` (`mᵢ×p`), the rows of `W` for copy `t` of
    /// block `i`.
    pub fn kraus(&self) -> Vec<Vec<Matrix>> {
        let w = self.isometry();
        let mut row = 0;
        self.mbar
            .iter()
            .zip(&self.sbar)
            .map(|(&m, &s)| {
                (0..s)
                    .map(|_| {
                        let k = w.submatrix(row, 0, m, self.p);
                        row += m;
                        k
                    })
                    .collect()
            })
            .collect()
    }

    /// Same data read in the other picture.
    pub fn flipped(&self) -> NormalForm {
        NormalForm {
            picture: self.picture.flip(),
            ..self.clone()
        }
    }

    /// Replaces `U` by `(I_p ⊕ P)·U·(⊕ᵢ Qᵢ ⊗ I_{mᵢ})`, which leaves the
    /// denoted channel unchanged.
    pub fn transformed(&self, pmat: &Matrix, qs: &[Matrix]) -> Result<NormalForm> {
        let left = crate::linalg::direct_sum(&Matrix::identity(self.p), pmat);
        let right = stabilizer(&self.mbar, qs);
        if left.shape() != self.u.shape() || right.shape() != self.u.shape() {
            return Err(Error::shape("equivalence data has the wrong size"));
        }
        NormalForm::new(
            self.q,
            self.p,
            self.mbar.clone(),
            self.sbar.clone(),
            &(&left * &self.u) * &right,
            self.picture,
        )
    }
}

/// `⊕ᵢ Qᵢ ⊗ I_{mᵢ}`.
pub(crate) fn stabilizer(mbar: &[usize], qs: &[Matrix]) -> Matrix {
    let parts: Vec<Matrix> = qs
        .iter()
        .zip(mbar)
        .map(|(q, &m)| crate::linalg::kron(q, &Matrix::identity(m)))
        .collect();
    crate::linalg::direct_sum_all(&parts)
}

/// Minimal Stinespring normal form of a unital completely positive map into
/// a single block. Schrödinger-picture channels are dualised first and the
/// result keeps the input's picture.
pub fn stinespring(f: &Channel) -> Result<NormalForm> {
    let heis = heisenberg(f);
    let map = heis.map();
    if map.cod().len() != 1 {
        return Err(Error::NotSingleBlockCodomain(map.cod().len()));
    }
    let p = map.cod().dims()[0];
    let mbar = map.dom().dims().to_vec();
    let dual = dualize(&heis);
    let kraus = mbar
        .iter()
        .enumerate()
        .map(|(i, &m)| kraus_of_block(dual.block(i, 0), p, m))
        .collect::<Result<Vec<_>>>()?;
    normal_form_from_kraus(p, &mbar, &kraus, f.picture())
}

/// Normal forms of each codomain component of a Heisenberg map, or of each
/// domain component of a Schrödinger channel.
pub fn stinespring_family(f: &Channel) -> Result<Vec<NormalForm>> {
    let heis = heisenberg(f);
    let map = heis.map();
    (0..map.cod().len())
        .map(|j| {
            let row = ChoiMap::new(
                map.dom().clone(),
                CStarObject::single(map.cod().dims()[j]),
                vec![map.blocks()[j].clone()],
            )?;
            let component = Channel::new(row, Picture::Heisenberg).map_err(|_| Error::NotCpu)?;
            let mut nf = stinespring(&component)?;
            nf.picture = f.picture();
            Ok(nf)
        })
        .collect()
}

fn heisenberg(f: &Channel) -> Channel {
    match f.picture() {
        Picture::Heisenberg => f.clone(),
        Picture::Schrodinger => dualize(f),
    }
}

/// Normal form from explicit Heisenberg Kraus operators: block `i` gets
/// `mᵢ×p` operators `V_{i,t}` with `f(A) = Σ V* A V`. Redundant operators
/// give a non-minimal dilation.
pub fn normal_form_from_kraus(
    p: usize,
    mbar: &[usize],
    kraus: &[Vec<Matrix>],
    picture: Picture,
) -> Result<NormalForm> {
    if kraus.len() != mbar.len() {
        return Err(Error::shape("one Kraus list per block is required"));
    }
    let mut rows = Vec::new();
    for (ks, &m) in kraus.iter().zip(mbar) {
        for k in ks {
            if k.shape() != (m, p) {
                return Err(Error::shape(format!("Kraus operator must be {m}x{p}")));
            }
            rows.push(k.clone());
        }
    }
    let w = Matrix::vstack(&rows, p)?;
    let q = w.rows();
    let defect = w.isometry_defect();
    if q < p || defect > tol::STRUCTURAL.max(1e-8) {
        return Err(Error::NotCpu);
    }
    // Rounding in the eigensolver leaves W a hair off isometric; the
    // completion step needs it within the structural tolerance.
    let u = extend_to_unitary(&w)
        .or_else(|_| extend_to_unitary(&reorthonormalize(&w)))?
        .adjoint();
    NormalForm::new(
        q,
        p,
        mbar.to_vec(),
        kraus.iter().map(|k| k.len()).collect(),
        u,
        picture,
    )
}

fn reorthonormalize(w: &Matrix) -> Matrix {
    let g = &w.adjoint() * w;
    let inv = crate::linalg::psd_inverse_sqrt(&g).expect("Gram matrix of a near-isometry");
    w * &inv
}

/// The channel a normal form denotes, in its own picture.
pub fn eval_normal_form(nf: &NormalForm) -> Result<Channel> {
    let dom = CStarObject::new(nf.mbar.clone())?;
    let cod = CStarObject::single(nf.p);
    let kraus = nf.kraus();
    let blocks = kraus
        .iter()
        .zip(&nf.mbar)
        .map(|(ks, &m)| {
            let adj: Vec<Matrix> = ks.iter().map(Matrix::adjoint).collect();
            choi_of_kraus(m, nf.p, &adj)
        })
        .collect::<Result<Vec<_>>>()?;
    let heis = Channel::new(ChoiMap::new(dom, cod, vec![blocks])?, Picture::Heisenberg)?;
    Ok(match nf.picture {
        Picture::Heisenberg => heis,
        Picture::Schrodinger => dualize(&heis),
    })
}

/// Reassembles a family produced by [`stinespring_family`]; all members must
/// share `mbar` and picture.
pub fn eval_family(forms: &[NormalForm], mbar: &[usize], picture: Picture) -> Result<Channel> {
    let dom = CStarObject::new(mbar.to_vec())?;
    let cod = CStarObject::new(forms.iter().map(|f| f.p).collect())?;
    let mut rows = Vec::with_capacity(forms.len());
    for nf in forms {
        if nf.mbar != mbar {
            return Err(Error::shape("normal forms disagree on mbar"));
        }
        let mut one = nf.clone();
        one.picture = Picture::Heisenberg;
        rows.push(eval_normal_form(&one)?.into_map().into_blocks().remove(0));
    }
    let heis = Channel::new(ChoiMap::new(dom, cod, rows)?, Picture::Heisenberg)?;
    Ok(match picture {
        Picture::Heisenberg => heis,
        Picture::Schrodinger => dualize(&heis),
    })
}

/// Semantic equality: the largest Frobenius distance between Choi blocks.
pub fn channel_equal(f: &Channel, g: &Channel, tol: f64) -> Result<(bool, f64)> {
    if f.picture() != g.picture() {
        return Err(Error::shape(
            "cannot compare channels in different pictures",
        ));
    }
    let d = f.map().block_distance(g.map())?;
    Ok((d <= tol, d))
}
