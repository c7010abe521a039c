use std::fmt::Debug;

use serde::Serialize;

use crate::error::Result;
use crate::linalg::Matrix;

/// What a host category must provide to receive lifted functors: a strict
/// bipermutative structure whose additive unit is initial.
pub trait TargetCategory {
    type Object: Clone + PartialEq + Debug;
    type Morphism: Clone + Debug;

    /// Additive unit, required to be initial.
    fn zero(&self) -> Self::Object;
    /// Multiplicative unit.
    fn unit(&self) -> Self::Object;
    fn oplus_objects(&self, a: &Self::Object, b: &Self::Object) -> Self::Object;
    fn otimes_objects(&self, a: &Self::Object, b: &Self::Object) -> Self::Object;

    fn dom(&self, f: &Self::Morphism) -> Self::Object;
    fn cod(&self, f: &Self::Morphism) -> Self::Object;
    fn identity(&self, a: &Self::Object) -> Self::Morphism;
    /// `g ∘ f`.
    fn compose(&self, g: &Self::Morphism, f: &Self::Morphism) -> Result<Self::Morphism>;
    fn oplus(&self, f: &Self::Morphism, g: &Self::Morphism) -> Result<Self::Morphism>;
    fn otimes(&self, f: &Self::Morphism, g: &Self::Morphism) -> Result<Self::Morphism>;

    /// The unique morphism `zero → a`.
    fn initial(&self, a: &Self::Object) -> Self::Morphism;

    /// A distance between parallel morphisms; infinite when they are not
    /// parallel.
    fn distance(&self, f: &Self::Morphism, g: &Self::Morphism) -> f64;

    fn oplus_all(&self, parts: &[Self::Morphism]) -> Result<Self::Morphism> {
        parts
            .iter()
            .try_fold(self.identity(&self.zero()), |acc, p| self.oplus(&acc, p))
    }
}

/// A target whose additive structure is a coproduct and whose
/// multiplicative unit is terminal.
pub trait CoproductTarget: TargetCategory {
    /// The unique morphism `a → unit`.
    fn terminal(&self, a: &Self::Object) -> Self::Morphism;
    /// `[f, g]: A ⊕ B → C`.
    fn copair(&self, f: &Self::Morphism, g: &Self::Morphism) -> Result<Self::Morphism>;

    /// `[f₁, …, f_k]`; the empty family gives the initial morphism into `cod`.
    fn copair_all(&self, parts: &[Self::Morphism], cod: &Self::Object) -> Result<Self::Morphism> {
        match parts.split_first() {
            None => Ok(self.initial(cod)),
            Some((first, rest)) => rest
                .iter()
                .try_fold(first.clone(), |acc, p| self.copair(&acc, p)),
        }
    }

    /// `∇: a ⊕ … ⊕ a → a` with `arity` copies.
    fn fold(&self, a: &Self::Object, arity: usize) -> Result<Self::Morphism> {
        self.copair_all(&vec![self.identity(a); arity], a)
    }

    /// `A⊕B → C⊕C = (I⊕I)⊗C → I⊗C = C`, the copairing built from the
    /// terminal object alone.
    fn copair_via_terminal(
        &self,
        f: &Self::Morphism,
        g: &Self::Morphism,
    ) -> Result<Self::Morphism> {
        let c = self.cod(f);
        let two = self.oplus_objects(&self.unit(), &self.unit());
        let bang = self.otimes(&self.terminal(&two), &self.identity(&c))?;
        self.compose(&bang, &self.oplus(f, g)?)
    }
}

/// A strict bipermutative functor defined on unitaries.
pub trait UnitaryFunctor<T: TargetCategory> {
    fn object(&self, n: usize) -> T::Object;
    fn unitary(&self, u: &Matrix) -> Result<T::Morphism>;
}

/// A functor on isometries that is strict for `⊗` and colax for `⊕`, with
/// comparison maps `ψ_{a,b}: F(a+b) → F(a) ⊕ F(b)`. `F(0)` must be the
/// target's zero object.
pub trait ColaxFunctor<T: TargetCategory> {
    fn object(&self, n: usize) -> T::Object;
    fn isometry(&self, v: &Matrix) -> Result<T::Morphism>;
    fn psi(&self, a: usize, b: usize) -> Result<T::Morphism>;
}

/// One law checked by a self-test.
#[derive(Clone, Debug, Serialize)]
pub struct LawReport {
    pub law: String,
    pub residual: f64,
    pub ok: bool,
}

impl LawReport {
    pub fn new(law: &str, residual: f64, tol: f64) -> Self {
        LawReport {
            law: law.to_string(),
            residual,
            ok: residual <= tol,
        }
    }
}

/// Checks identity, associativity, unit, distributivity and coproduct laws
/// on the given morphisms (`f` and `g` must share a codomain).
pub fn check_target_laws<T: CoproductTarget>(
    t: &T,
    f: &T::Morphism,
    g: &T::Morphism,
    h: &T::Morphism,
    tol: f64,
) -> Result<Vec<LawReport>> {
    let mut out = Vec::new();
    let id_dom = t.identity(&t.dom(f));
    let id_cod = t.identity(&t.cod(f));
    let left = t.compose(&id_cod, f)?;
    let right = t.compose(f, &id_dom)?;
    out.push(LawReport::new(
        "identity",
        t.distance(&left, f).max(t.distance(&right, f)),
        tol,
    ));

    let a1 = t.oplus(&t.oplus(f, g)?, h)?;
    let a2 = t.oplus(f, &t.oplus(g, h)?)?;
    out.push(LawReport::new(
        "oplus associativity",
        t.distance(&a1, &a2),
        tol,
    ));
    let m1 = t.otimes(&t.otimes(f, g)?, h)?;
    let m2 = t.otimes(f, &t.otimes(g, h)?)?;
    out.push(LawReport::new(
        "otimes associativity",
        t.distance(&m1, &m2),
        tol,
    ));

    let zero = t.identity(&t.zero());
    let one = t.identity(&t.unit());
    let u = t
        .distance(&t.oplus(f, &zero)?, f)
        .max(t.distance(&t.oplus(&zero, f)?, f))
        .max(t.distance(&t.otimes(f, &one)?, f))
        .max(t.distance(&t.otimes(&one, f)?, f));
    out.push(LawReport::new("units", u, tol));

    let d1 = t.otimes(&t.oplus(f, g)?, h)?;
    let d2 = t.oplus(&t.otimes(f, h)?, &t.otimes(g, h)?)?;
    out.push(LawReport::new(
        "right distributivity",
        t.distance(&d1, &d2),
        tol,
    ));

    let term = t.compose(&t.terminal(&t.cod(f)), f)?;
    out.push(LawReport::new(
        "terminal",
        t.distance(&term, &t.terminal(&t.dom(f))),
        tol,
    ));

    let cp = t.copair(f, g)?;
    let via = t.copair_via_terminal(f, g)?;
    out.push(LawReport::new(
        "copair via terminal",
        t.distance(&cp, &via),
        tol,
    ));
    let (df, dg) = (t.dom(f), t.dom(g));
    let inj1 = t.oplus(&t.identity(&df), &t.initial(&dg))?;
    let inj2 = t.oplus(&t.initial(&df), &t.identity(&dg))?;
    let c1 = t.distance(&t.compose(&cp, &inj1)?, f);
    let c2 = t.distance(&t.compose(&cp, &inj2)?, g);
    out.push(LawReport::new("copair injections", c1.max(c2), tol));
    Ok(out)
}

/// Checks functoriality, `⊗`-strictness and naturality of `ψ` on sampled
/// isometries `v: a → a'` and `w: b → b'`.
pub fn check_functor_laws<T: TargetCategory, F: ColaxFunctor<T>>(
    t: &T,
    functor: &F,
    v: &Matrix,
    w: &Matrix,
    v2: &Matrix,
    tol: f64,
) -> Result<Vec<LawReport>> {
    let mut out = Vec::new();
    let composite = functor.isometry(&(v2 * v))?;
    let separate = t.compose(&functor.isometry(v2)?, &functor.isometry(v)?)?;
    out.push(LawReport::new(
        "functoriality",
        t.distance(&composite, &separate),
        tol,
    ));
    let tensor = functor.isometry(&crate::linalg::kron(v, w))?;
    let split = t.otimes(&functor.isometry(v)?, &functor.isometry(w)?)?;
    out.push(LawReport::new(
        "otimes strictness",
        t.distance(&tensor, &split),
        tol,
    ));
    let (a, a2, b, b2) = (v.cols(), v.rows(), w.cols(), w.rows());
    let lhs = t.compose(
        &functor.psi(a2, b2)?,
        &functor.isometry(&crate::linalg::direct_sum(v, w))?,
    )?;
    let rhs = t.compose(
        &t.oplus(&functor.isometry(v)?, &functor.isometry(w)?)?,
        &functor.psi(a, b)?,
    )?;
    out.push(LawReport::new(
        "psi naturality",
        t.distance(&lhs, &rhs),
        tol,
    ));
    let f0 = functor.object(0);
    out.push(LawReport::new(
        "zero preserved",
        if f0 == t.zero() { 0.0 } else { f64::INFINITY },
        tol,
    ));
    Ok(out)
}
