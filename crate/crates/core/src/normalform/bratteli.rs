use serde::{Deserialize, Serialize};

use crate::algebra::CStarObject;
use crate::algebra::{choi_of_kraus, Channel, ChoiMap, Picture};
use crate::error::{Error, Result};
use crate::linalg::{fix_phase, hermitian_eigensystem, Matrix};
use crate::tol;

/// A unital *-homomorphism `⊕ᵢ M_{mᵢ} → M_p` in the form
/// `f(A) = U·(⊕ᵢ I_{sᵢ} ⊗ Aᵢ)·U*`.
///
/// Column `offset_i + t·mᵢ + a` of `U` is the `a`-th basis vector of the
/// `t`-th copy of block `i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BratteliForm {
    pub p: usize,
    pub mbar: Vec<usize>,
    pub sbar: Vec<usize>,
    pub u: Matrix,
}

impl BratteliForm {
    pub fn new(p: usize, mbar: Vec<usize>, sbar: Vec<usize>, u: Matrix) -> Result<Self> {
        let form = BratteliForm { p, mbar, sbar, u };
        form.check()?;
        Ok(form)
    }

    fn check(&self) -> Result<()> {
        if self.mbar.len() != self.sbar.len() {
            return Err(Error::shape("mbar and sbar lengths differ"));
        }
        let total: usize = self.mbar.iter().zip(&self.sbar).map(|(m, s)| m * s).sum();
        if total != self.p {
            return Err(Error::shape(format!("Σ sᵢmᵢ = {total} but p = {}", self.p)));
        }
        if self.u.shape() != (self.p, self.p) {
            return Err(Error::shape("U must be p×p"));
        }
        let defect = self.u.isometry_defect();
        if defect > tol::STRUCTURAL {
            return Err(Error::NotIsometry { defect });
        }
        CStarObject::new(self.mbar.clone())?;
        Ok(())
    }

    /// Columns of `U` spanning the copies of block `i`, copy-major.
    fn block_columns(&self, i: usize) -> (usize, usize) {
        let off = self
            .mbar
            .iter()
            .zip(&self.sbar)
            .take(i)
            .map(|(m, s)| m * s)
            .sum();
        (off, self.mbar[i] * self.sbar[i])
    }

    /// The Heisenberg-picture channel `mbar → [p]` this form denotes.
    pub fn to_channel(&self) -> Result<Channel> {
        self.check()?;
        let dom = CStarObject::new(self.mbar.clone())?;
        let cod = CStarObject::single(self.p);
        if cod.is_empty() {
            return Err(Error::shape(
                "*-homomorphisms into the zero algebra are not unital",
            ));
        }
        let blocks = (0..self.mbar.len())
            .map(|i| {
                let m = self.mbar[i];
                let (off, _) = self.block_columns(i);
                let kraus: Vec<Matrix> = (0..self.sbar[i])
                    .map(|t| self.u.columns(off + t * m, m))
                    .collect();
                choi_of_kraus(m, self.p, &kraus)
            })
            .collect::<Result<Vec<_>>>()?;
        Channel::new(ChoiMap::new(dom, cod, vec![blocks])?, Picture::Heisenberg)
    }
}

/// Recovers the Bratteli form of a unital *-homomorphism into a single block.
pub fn bratteli_form(f: &Channel) -> Result<BratteliForm> {
    let map = f.map();
    if map.cod().len() != 1 {
        return Err(Error::NotSingleBlockCodomain(map.cod().len()));
    }
    if !map.classify().star_hom {
        return Err(Error::NotStarHom);
    }
    let p = map.cod().dims()[0];
    let mbar = map.dom().dims().to_vec();
    let mut sbar = Vec::with_capacity(mbar.len());
    let mut columns: Vec<Vec<crate::C64>> = Vec::with_capacity(p);
    for (i, &m) in mbar.iter().enumerate() {
        let proj = map.image_of_unit(0, i, 0, 0);
        let trace = proj.trace().re;
        let s = tol::round_count(trace).ok_or_else(|| {
            Error::IllConditioned(format!("trace of image projection is {trace}"))
        })?;
        let eig = hermitian_eigensystem(&proj)?;
        if eig.rank() != s {
            return Err(Error::IllConditioned(format!(
                "image projection has rank {} but trace {trace}",
                eig.rank()
            )));
        }
        let basis: Vec<Vec<crate::C64>> = (0..s)
            .map(|t| {
                let mut v = eig.vectors.col(t);
                fix_phase(&mut v);
                v
            })
            .collect();
        let images: Vec<Matrix> = (0..m).map(|a| map.image_of_unit(0, i, a, 0)).collect();
        for v in &basis {
            let vm = Matrix::column(v);
            for img in &images {
                columns.push((img * &vm).col(0));
            }
        }
        sbar.push(s);
    }
    if columns.len() != p {
        return Err(Error::IllConditioned(format!(
            "recovered {} columns for a {p}-dimensional codomain",
            columns.len()
        )));
    }
    let u = Matrix::from_fn(p, p, |r, c| columns[c][r]);
    BratteliForm::new(p, mbar, sbar, u)
}
