//! Concrete target categories and functors into them.

use crate::algebra::{
    compose, copair, embed, identity, oplus, otimes, structural, CStarObject, Channel, Picture,
    Structural,
};
use crate::error::{Error, Result};
use crate::linalg::{direct_sum, kron, Matrix};
use crate::tol;

use super::target::{ColaxFunctor, CoproductTarget, TargetCategory, UnitaryFunctor};

/// Finite-dimensional C*-algebras with Schrödinger-picture channels.
#[derive(Clone, Copy, Debug, Default)]
pub struct CptpCategory;

impl TargetCategory for CptpCategory {
    type Object = CStarObject;
    type Morphism = Channel;

    fn zero(&self) -> CStarObject {
        CStarObject::initial()
    }
    fn unit(&self) -> CStarObject {
        CStarObject::unit()
    }
    fn oplus_objects(&self, a: &CStarObject, b: &CStarObject) -> CStarObject {
        a.oplus(b)
    }
    fn otimes_objects(&self, a: &CStarObject, b: &CStarObject) -> CStarObject {
        a.otimes(b)
    }
    fn dom(&self, f: &Channel) -> CStarObject {
        f.dom().clone()
    }
    fn cod(&self, f: &Channel) -> CStarObject {
        f.cod().clone()
    }
    fn identity(&self, a: &CStarObject) -> Channel {
        identity(a, Picture::Schrodinger)
    }
    fn compose(&self, g: &Channel, f: &Channel) -> Result<Channel> {
        compose(g, f)
    }
    fn oplus(&self, f: &Channel, g: &Channel) -> Result<Channel> {
        oplus(f, g)
    }
    fn otimes(&self, f: &Channel, g: &Channel) -> Result<Channel> {
        otimes(f, g)
    }
    fn initial(&self, a: &CStarObject) -> Channel {
        structural(&Structural::Initial(a.clone())).expect("initial maps always exist")
    }
    fn distance(&self, f: &Channel, g: &Channel) -> f64 {
        f.map().block_distance(g.map()).unwrap_or(f64::INFINITY)
    }
}

impl CoproductTarget for CptpCategory {
    fn terminal(&self, a: &CStarObject) -> Channel {
        structural(&Structural::Terminal(a.clone())).expect("terminal maps always exist")
    }
    fn copair(&self, f: &Channel, g: &Channel) -> Result<Channel> {
        copair(f, g)
    }
}

/// Isometries with `⊕` as direct sum and `⊗` as Kronecker product. There is
/// no terminal object, so only the isometry lift applies.
#[derive(Clone, Copy, Debug, Default)]
pub struct IsometryCategory;

impl TargetCategory for IsometryCategory {
    type Object = usize;
    type Morphism = Matrix;

    fn zero(&self) -> usize {
        0
    }
    fn unit(&self) -> usize {
        1
    }
    fn oplus_objects(&self, a: &usize, b: &usize) -> usize {
        a + b
    }
    fn otimes_objects(&self, a: &usize, b: &usize) -> usize {
        a * b
    }
    fn dom(&self, f: &Matrix) -> usize {
        f.cols()
    }
    fn cod(&self, f: &Matrix) -> usize {
        f.rows()
    }
    fn identity(&self, a: &usize) -> Matrix {
        Matrix::identity(*a)
    }
    fn compose(&self, g: &Matrix, f: &Matrix) -> Result<Matrix> {
        g.matmul(f)
    }
    fn oplus(&self, f: &Matrix, g: &Matrix) -> Result<Matrix> {
        Ok(direct_sum(f, g))
    }
    fn otimes(&self, f: &Matrix, g: &Matrix) -> Result<Matrix> {
        Ok(kron(f, g))
    }
    fn initial(&self, a: &usize) -> Matrix {
        Matrix::zeros(*a, 0)
    }
    fn distance(&self, f: &Matrix, g: &Matrix) -> f64 {
        f.distance(g)
    }
}

/// The category with one object and one morphism.
#[derive(Clone, Copy, Debug, Default)]
pub struct TerminalCategory;

impl TargetCategory for TerminalCategory {
    type Object = ();
    type Morphism = ();

    fn zero(&self) {}
    fn unit(&self) {}
    fn oplus_objects(&self, _: &(), _: &()) {}
    fn otimes_objects(&self, _: &(), _: &()) {}
    fn dom(&self, _: &()) {}
    fn cod(&self, _: &()) {}
    fn identity(&self, _: &()) {}
    fn compose(&self, _: &(), _: &()) -> Result<()> {
        Ok(())
    }
    fn oplus(&self, _: &(), _: &()) -> Result<()> {
        Ok(())
    }
    fn otimes(&self, _: &(), _: &()) -> Result<()> {
        Ok(())
    }
    fn initial(&self, _: &()) {}
    fn distance(&self, _: &(), _: &()) -> f64 {
        0.0
    }
}

impl CoproductTarget for TerminalCategory {
    fn terminal(&self, _: &()) {}
    fn copair(&self, _: &(), _: &()) -> Result<()> {
        Ok(())
    }
}

/// The embedding `E: n ↦ [n], V ↦ Ad_V` with the measurement `φ` as `ψ`,
/// optionally followed by entrywise complex conjugation.
#[derive(Clone, Copy, Debug, Default)]
pub struct EmbedFunctor {
    pub conjugate: bool,
}

impl EmbedFunctor {
    fn image(&self, v: &Matrix) -> Result<Channel> {
        if self.conjugate {
            embed(&v.conj())
        } else {
            embed(v)
        }
    }
}

impl ColaxFunctor<CptpCategory> for EmbedFunctor {
    fn object(&self, n: usize) -> CStarObject {
        CStarObject::single(n)
    }
    fn isometry(&self, v: &Matrix) -> Result<Channel> {
        self.image(v)
    }
    fn psi(&self, a: usize, b: usize) -> Result<Channel> {
        match (a, b) {
            (0, b) => Ok(identity(&CStarObject::single(b), Picture::Schrodinger)),
            (a, 0) => Ok(identity(&CStarObject::single(a), Picture::Schrodinger)),
            // φ has a real Choi matrix, so conjugation fixes it.
            (a, b) => structural(&Structural::MeasurePhi(a, b)),
        }
    }
}

/// The inclusion of unitaries into isometries.
#[derive(Clone, Copy, Debug, Default)]
pub struct InclusionFunctor;

impl UnitaryFunctor<IsometryCategory> for InclusionFunctor {
    fn object(&self, n: usize) -> usize {
        n
    }
    fn unitary(&self, u: &Matrix) -> Result<Matrix> {
        require_unitary(u)?;
        Ok(u.clone())
    }
}

/// Entrywise complex conjugation of unitaries, landing in isometries.
#[derive(Clone, Copy, Debug, Default)]
pub struct ConjugationFunctor;

impl UnitaryFunctor<IsometryCategory> for ConjugationFunctor {
    fn object(&self, n: usize) -> usize {
        n
    }
    fn unitary(&self, u: &Matrix) -> Result<Matrix> {
        require_unitary(u)?;
        Ok(u.conj())
    }
}

/// The constant functor into [`TerminalCategory`].
#[derive(Clone, Copy, Debug, Default)]
pub struct TerminalFunctor;

impl ColaxFunctor<TerminalCategory> for TerminalFunctor {
    fn object(&self, _: usize) {}
    fn isometry(&self, v: &Matrix) -> Result<()> {
        let defect = v.isometry_defect();
        if v.rows() < v.cols() || defect > tol::STRUCTURAL {
            return Err(Error::NotIsometry { defect });
        }
        Ok(())
    }
    fn psi(&self, _: usize, _: usize) -> Result<()> {
        Ok(())
    }
}

impl UnitaryFunctor<TerminalCategory> for TerminalFunctor {
    fn object(&self, _: usize) {}
    fn unitary(&self, u: &Matrix) -> Result<()> {
        require_unitary(u)
    }
}

fn require_unitary(u: &Matrix) -> Result<()> {
    let defect = u.isometry_defect();
    if !u.is_square() || defect > tol::STRUCTURAL {
        return Err(Error::NotIsometry { defect });
    }
    Ok(())
}
