use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The algebra `⊕ᵢ M_{nᵢ}(ℂ)`, stored as its list of block sizes.
///
/// The empty list is the initial object; `[1]` is the tensor unit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct CStarObject(Vec<usize>);

impl CStarObject {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.contains(&0) {
            return Err(Error::shape(format!(
                "block sizes must be positive, got {dims:?}"
            )));
        }
        Ok(CStarObject(dims))
    }

    pub fn initial() -> Self {
        CStarObject(Vec::new())
    }

    pub fn unit() -> Self {
        CStarObject(vec![1])
    }

    /// `[n]`, or the initial object when `n = 0`.
    pub fn single(n: usize) -> Self {
        if n == 0 {
            Self::initial()
        } else {
            CStarObject(vec![n])
        }
    }

    /// `[1, …, 1]` with `k` entries: the classical algebra on `k` points.
    pub fn classical(k: usize) -> Self {
        CStarObject(vec![1; k])
    }

    pub fn dims(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `Σ nᵢ`.
    pub fn total_dim(&self) -> usize {
        self.0.iter().sum()
    }

    /// `Σ nᵢ²`, the complex dimension of the algebra.
    pub fn algebra_dim(&self) -> usize {
        self.0.iter().map(|n| n * n).sum()
    }

    /// List concatenation.
    pub fn oplus(&self, other: &CStarObject) -> CStarObject {
        let mut dims = self.0.clone();
        dims.extend_from_slice(&other.0);
        CStarObject(dims)
    }

    /// Pairwise products in lexicographic order, `self` outer.
    pub fn otimes(&self, other: &CStarObject) -> CStarObject {
        CStarObject(
            self.0
                .iter()
                .flat_map(|a| other.0.iter().map(move |b| a * b))
                .collect(),
        )
    }

    pub fn oplus_all<'a>(objects: impl IntoIterator<Item = &'a CStarObject>) -> CStarObject {
        objects
            .into_iter()
            .fold(CStarObject::initial(), |acc, o| acc.oplus(o))
    }
}

impl TryFrom<Vec<usize>> for CStarObject {
    type Error = Error;
    fn try_from(dims: Vec<usize>) -> Result<Self> {
        CStarObject::new(dims)
    }
}

impl From<CStarObject> for Vec<usize> {
    fn from(o: CStarObject) -> Vec<usize> {
        o.0
    }
}

impl fmt::Debug for CStarObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for CStarObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// An object of the unitary and isometry categories: a Hilbert-space
/// dimension. Zero is the initial object.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PureObject(pub usize);

impl PureObject {
    /// The image `n ↦ [n]` under the embedding into C*-algebras.
    pub fn promote(self) -> CStarObject {
        CStarObject::single(self.0)
    }
}
