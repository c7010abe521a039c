use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::object::CStarObject;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigensystem, Matrix, C64, ZERO};
use crate::tol;

/// Which side of the duality a map lives on.
///
/// Schrödinger maps are trace preserving and act on states; Heisenberg maps
/// are unital and act on observables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Picture {
    Schrodinger,
    Heisenberg,
}

impl Picture {
    pub fn flip(self) -> Picture {
        match self {
            Picture::Schrodinger => Picture::Heisenberg,
            Picture::Heisenberg => Picture::Schrodinger,
        }
    }
}

/// Result of [`ChoiMap::classify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub cp: bool,
    pub tp: bool,
    pub unital: bool,
    pub star_hom: bool,
}

/// A linear map `⊕ᵢ M_{nᵢ} → ⊕ⱼ M_{mⱼ}` given by its block family of Choi
/// matrices, with no positivity or normalisation guarantees.
///
/// Block `[j][i]` is `Σ_{ab} E_ab ⊗ g_{j,i}(E_ab)` for the component
/// `g_{j,i}: M_{nᵢ} → M_{mⱼ}`, so that its entry at row `a·mⱼ + x`, column
/// `b·mⱼ + y` is `g_{j,i}(E_ab)[x, y]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChoiMap {
    dom: CStarObject,
    cod: CStarObject,
    blocks: Vec<Vec<Matrix>>,
}

impl ChoiMap {
    pub fn new(dom: CStarObject, cod: CStarObject, blocks: Vec<Vec<Matrix>>) -> Result<Self> {
        if blocks.len() != cod.len() {
            return Err(Error::shape(format!(
                "codomain {cod} needs {} block rows, got {}",
                cod.len(),
                blocks.len()
            )));
        }
        for (j, row) in blocks.iter().enumerate() {
            if row.len() != dom.len() {
                return Err(Error::shape(format!(
                    "domain {dom} needs {} blocks in row {j}, got {}",
                    dom.len(),
                    row.len()
                )));
            }
            for (i, b) in row.iter().enumerate() {
                let d = dom.dims()[i] * cod.dims()[j];
                if b.shape() != (d, d) {
                    return Err(Error::shape(format!(
                        "block [{j}][{i}] must be {d}x{d}, got {}x{}",
                        b.rows(),
                        b.cols()
                    )));
                }
            }
        }
        Ok(ChoiMap { dom, cod, blocks })
    }

    pub(crate) fn from_fn(
        dom: CStarObject,
        cod: CStarObject,
        mut f: impl FnMut(usize, usize) -> Matrix,
    ) -> Self {
        let blocks = (0..cod.len())
            .map(|j| (0..dom.len()).map(|i| f(j, i)).collect())
            .collect();
        ChoiMap { dom, cod, blocks }
    }

    pub fn zero(dom: CStarObject, cod: CStarObject) -> Self {
        let (dd, cd) = (dom.dims().to_vec(), cod.dims().to_vec());
        Self::from_fn(dom, cod, |j, i| {
            let d = dd[i] * cd[j];
            Matrix::zeros(d, d)
        })
    }

    pub fn dom(&self) -> &CStarObject {
        &self.dom
    }

    pub fn cod(&self) -> &CStarObject {
        &self.cod
    }

    pub fn blocks(&self) -> &[Vec<Matrix>] {
        &self.blocks
    }

    pub fn block(&self, j: usize, i: usize) -> &Matrix {
        &self.blocks[j][i]
    }

    pub fn into_blocks(self) -> Vec<Vec<Matrix>> {
        self.blocks
    }

    fn n(&self, i: usize) -> usize {
        self.dom.dims()[i]
    }

    fn m(&self, j: usize) -> usize {
        self.cod.dims()[j]
    }

    /// `g_{j,i}(E_ab)`.
    pub fn image_of_unit(&self, j: usize, i: usize, a: usize, b: usize) -> Matrix {
        choi_image_of_unit(&self.blocks[j][i], self.n(i), self.m(j), a, b)
    }

    /// Applies the map to an element given blockwise.
    pub fn apply(&self, input: &[Matrix]) -> Result<Vec<Matrix>> {
        if input.len() != self.dom.len() {
            return Err(Error::shape(format!(
                "input has {} blocks, domain {} has {}",
                input.len(),
                self.dom,
                self.dom.len()
            )));
        }
        for (i, x) in input.iter().enumerate() {
            if x.shape() != (self.n(i), self.n(i)) {
                return Err(Error::shape(format!("input block {i} has wrong shape")));
            }
        }
        Ok((0..self.cod.len())
            .map(|j| {
                let m = self.m(j);
                input
                    .iter()
                    .enumerate()
                    .fold(Matrix::zeros(m, m), |acc, (i, x)| {
                        &acc + &choi_apply(&self.blocks[j][i], self.n(i), m, x)
                    })
            })
            .collect())
    }

    /// `max_i ‖Σⱼ Tr_out C_{j,i} − I‖_F`.
    pub fn tp_defect(&self) -> f64 {
        (0..self.dom.len())
            .map(|i| {
                let n = self.n(i);
                let sum = (0..self.cod.len()).fold(Matrix::zeros(n, n), |acc, j| {
                    &acc + &trace_output(&self.blocks[j][i], n, self.m(j))
                });
                sum.distance(&Matrix::identity(n))
            })
            .fold(0.0, f64::max)
    }

    /// `max_j ‖Σᵢ Tr_in C_{j,i} − I‖_F`.
    pub fn unital_defect(&self) -> f64 {
        (0..self.cod.len())
            .map(|j| {
                let m = self.m(j);
                let sum = (0..self.dom.len()).fold(Matrix::zeros(m, m), |acc, i| {
                    &acc + &trace_input(&self.blocks[j][i], self.n(i), m)
                });
                sum.distance(&Matrix::identity(m))
            })
            .fold(0.0, f64::max)
    }

    /// The most negative eigenvalue among blocks failing the PSD test, if any.
    pub fn cp_violation(&self) -> Option<f64> {
        self.blocks
            .iter()
            .flatten()
            .filter_map(psd_violation)
            .reduce(f64::min)
    }

    pub fn classify(&self) -> Flags {
        self.classify_with_tol(tol::STRUCTURAL)
    }

    pub fn classify_with_tol(&self, tol: f64) -> Flags {
        let cp = self.cp_violation().is_none();
        let tp = self.tp_defect() <= tol;
        let unital = self.unital_defect() <= tol;
        let star_hom = unital && self.star_hom_defect() <= tol;
        Flags {
            cp,
            tp,
            unital,
            star_hom,
        }
    }

    /// Largest Frobenius violation of multiplicativity and `*`-preservation on
    /// pairs of matrix units.
    pub fn star_hom_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for j in 0..self.cod.len() {
            let m = self.m(j);
            let images: Vec<Vec<Matrix>> = (0..self.dom.len())
                .map(|i| {
                    let n = self.n(i);
                    (0..n * n)
                        .map(|ab| self.image_of_unit(j, i, ab / n, ab % n))
                        .collect()
                })
                .collect();
            for (i, imgs_i) in images.iter().enumerate() {
                let n = self.n(i);
                for a in 0..n {
                    for b in 0..n {
                        let g_ab = &imgs_i[a * n + b];
                        let adj = g_ab.adjoint().distance(&imgs_i[b * n + a]);
                        worst = worst.max(adj);
                        for (i2, imgs_i2) in images.iter().enumerate() {
                            let n2 = self.n(i2);
                            for c in 0..n2 {
                                for d in 0..n2 {
                                    let prod = g_ab * &imgs_i2[c * n2 + d];
                                    let expected = if i == i2 && b == c {
                                        imgs_i[a * n + d].clone()
                                    } else {
                                        Matrix::zeros(m, m)
                                    };
                                    worst = worst.max(prod.distance(&expected));
                                }
                            }
                        }
                    }
                }
            }
        }
        worst
    }

    /// Largest Frobenius distance between corresponding Choi blocks.
    pub fn block_distance(&self, other: &ChoiMap) -> Result<f64> {
        if self.dom != other.dom || self.cod != other.cod {
            return Err(Error::shape(format!(
                "cannot compare {}→{} with {}→{}",
                self.dom, self.cod, other.dom, other.cod
            )));
        }
        Ok(self
            .blocks
            .iter()
            .flatten()
            .zip(other.blocks.iter().flatten())
            .map(|(a, b)| a.distance(b))
            .fold(0.0, f64::max))
    }
}

/// A validated completely positive map: trace preserving in the Schrödinger
/// picture, unital in the Heisenberg picture.
#[derive(Clone, Debug, PartialEq)]
pub struct Channel {
    map: ChoiMap,
    picture: Picture,
}

impl Channel {
    pub fn new(map: ChoiMap, picture: Picture) -> Result<Self> {
        Self::with_tol(map, picture, tol::STRUCTURAL)
    }

    /// Validates with an explicit structural tolerance.
    pub fn with_tol(map: ChoiMap, picture: Picture, tol: f64) -> Result<Self> {
        if let Some(eigenvalue) = map.cp_violation() {
            return Err(Error::NotCp { eigenvalue });
        }
        match picture {
            Picture::Schrodinger => {
                let defect = map.tp_defect();
                if defect > tol {
                    return Err(Error::NotTracePreserving { defect });
                }
            }
            Picture::Heisenberg => {
                let defect = map.unital_defect();
                if defect > tol {
                    return Err(Error::NotUnital { defect });
                }
            }
        }
        Ok(Channel { map, picture })
    }

    pub fn from_blocks(
        picture: Picture,
        dom: CStarObject,
        cod: CStarObject,
        blocks: Vec<Vec<Matrix>>,
    ) -> Result<Self> {
        Self::new(ChoiMap::new(dom, cod, blocks)?, picture)
    }

    /// Wraps a map produced by an operation under which channels are closed.
    pub(crate) fn trusted(map: ChoiMap, picture: Picture) -> Self {
        Channel { map, picture }
    }

    pub fn map(&self) -> &ChoiMap {
        &self.map
    }

    pub fn into_map(self) -> ChoiMap {
        self.map
    }

    pub fn picture(&self) -> Picture {
        self.picture
    }

    pub fn dom(&self) -> &CStarObject {
        self.map.dom()
    }

    pub fn cod(&self) -> &CStarObject {
        self.map.cod()
    }

    pub fn blocks(&self) -> &[Vec<Matrix>] {
        self.map.blocks()
    }

    pub fn block(&self, j: usize, i: usize) -> &Matrix {
        self.map.block(j, i)
    }

    pub fn apply(&self, input: &[Matrix]) -> Result<Vec<Matrix>> {
        self.map.apply(input)
    }

    pub fn classify(&self) -> Flags {
        self.map.classify()
    }
}

#[derive(Serialize, Deserialize)]
struct ChannelRecord {
    picture: Picture,
    dom: CStarObject,
    cod: CStarObject,
    blocks: Vec<Vec<Matrix>>,
}

impl Serialize for Channel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ChannelRecord {
            picture: self.picture,
            dom: self.dom().clone(),
            cod: self.cod().clone(),
            blocks: self.blocks().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Channel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ChannelRecord::deserialize(d)?;
        Channel::from_blocks(r.picture, r.dom, r.cod, r.blocks).map_err(serde::de::Error::custom)
    }
}

/// `g(E_ab)` for the component with `n×n` input and `m×m` output.
pub(crate) fn choi_image_of_unit(c: &Matrix, n: usize, m: usize, a: usize, b: usize) -> Matrix {
    debug_assert!(a < n && b < n);
    Matrix::from_fn(m, m, |x, y| c[(a * m + x, b * m + y)])
}

/// `g(X)[x, y] = Σ_{ab} X[a, b] · C[(a, x), (b, y)]`.
pub(crate) fn choi_apply(c: &Matrix, n: usize, m: usize, x: &Matrix) -> Matrix {
    Matrix::from_fn(m, m, |r, s| {
        let mut acc = ZERO;
        for a in 0..n {
            for b in 0..n {
                let v = x[(a, b)];
                if v != ZERO {
                    acc += v * c[(a * m + r, b * m + s)];
                }
            }
        }
        acc
    })
}

/// Builds the Choi matrix from the images of the matrix units.
pub(crate) fn choi_from_images(
    n: usize,
    m: usize,
    image: impl Fn(usize, usize) -> Matrix,
) -> Matrix {
    let mut c = Matrix::zeros(n * m, n * m);
    for a in 0..n {
        for b in 0..n {
            let img = image(a, b);
            for x in 0..m {
                for y in 0..m {
                    c[(a * m + x, b * m + y)] = img[(x, y)];
                }
            }
        }
    }
    c
}

/// Matrix of the component acting on row-major vectorisations:
/// `T[(x, y), (a, b)] = C[(a, x), (b, y)]`.
pub(crate) fn choi_to_transfer(c: &Matrix, n: usize, m: usize) -> Matrix {
    Matrix::from_fn(m * m, n * n, |r, s| {
        let (x, y) = (r / m, r % m);
        let (a, b) = (s / n, s % n);
        c[(a * m + x, b * m + y)]
    })
}

pub(crate) fn transfer_to_choi(t: &Matrix, n: usize, m: usize) -> Matrix {
    Matrix::from_fn(n * m, n * m, |r, s| {
        let (a, x) = (r / m, r % m);
        let (b, y) = (s / m, s % m);
        t[(x * m + y, a * n + b)]
    })
}

/// `Tr_out C`, an `n×n` matrix.
pub(crate) fn trace_output(c: &Matrix, n: usize, m: usize) -> Matrix {
    Matrix::from_fn(n, n, |a, b| {
        (0..m).map(|x| c[(a * m + x, b * m + x)]).sum::<C64>()
    })
}

/// `Tr_in C`, an `m×m` matrix.
pub(crate) fn trace_input(c: &Matrix, n: usize, m: usize) -> Matrix {
    Matrix::from_fn(m, m, |x, y| {
        (0..n).map(|a| c[(a * m + x, a * m + y)]).sum::<C64>()
    })
}

/// Returns the offending eigenvalue when `h` is not positive semidefinite
/// within `-(PSD_RELATIVE·λ_max + PSD_ABSOLUTE)`.
pub(crate) fn psd_violation(h: &Matrix) -> Option<f64> {
    if h.rows() == 0 {
        return None;
    }
    let eig = match hermitian_eigensystem(h) {
        Ok(e) => e,
        Err(_) => return Some(-h.hermitian_defect()),
    };
    let floor = -(tol::PSD_RELATIVE * eig.max_abs_value() + tol::PSD_ABSOLUTE);
    let lowest = *eig.values.last().expect("non-empty");
    (lowest < floor).then_some(lowest)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obj(d: &[usize]) -> CStarObject {
        CStarObject::new(d.to_vec()).unwrap()
    }

    fn transpose_map() -> ChoiMap {
        // g(E_ab) = E_ba
        let c = choi_from_images(2, 2, |a, b| Matrix::unit(2, b, a));
        ChoiMap::new(obj(&[2]), obj(&[2]), vec![vec![c]]).unwrap()
    }

    #[test]
    fn transpose_is_positive_but_not_cp() {
        let f = transpose_map().classify();
        assert!(!f.cp);
        assert!(f.tp && f.unital);
        assert!(matches!(
            Channel::new(transpose_map(), Picture::Schrodinger),
            Err(Error::NotCp { .. })
        ));
    }

    #[test]
    fn transfer_round_trip() {
        let c = choi_from_images(2, 3, |a, b| {
            Matrix::from_fn(3, 3, |x, y| {
                C64::new((a + 2 * b) as f64, (x * 3 + y) as f64)
            })
        });
        let t = choi_to_transfer(&c, 2, 3);
        assert_eq!(t.shape(), (9, 4));
        assert_eq!(transfer_to_choi(&t, 2, 3), c);
    }

    #[test]
    fn shape_validation() {
        let bad = ChoiMap::new(obj(&[2]), obj(&[2]), vec![vec![Matrix::identity(2)]]);
        assert!(matches!(bad, Err(Error::Shape(_))));
        let empty = ChoiMap::new(CStarObject::initial(), obj(&[3]), vec![vec![]]).unwrap();
        assert!(empty.classify().tp);
        assert!(!empty.classify().unital);
    }

    #[test]
    fn json_round_trip_validates() {
        let id = choi_from_images(1, 1, |_, _| Matrix::identity(1));
        let ch = Channel::from_blocks(Picture::Schrodinger, obj(&[1]), obj(&[1]), vec![vec![id]])
            .unwrap();
        let s = serde_json::to_string(&ch).unwrap();
        assert_eq!(
            s,
            r#"{"picture":"schrodinger","dom":[1],"cod":[1],"blocks":[[{"rows":1,"cols":1,"data":[[1.0,0.0]]}]]}"#
        );
        let back: Channel = serde_json::from_str(&s).unwrap();
        assert_eq!(back, ch);
        let bad = s.replace("[[1.0,0.0]]", "[[2.0,0.0]]");
        assert!(serde_json::from_str::<Channel>(&bad).is_err());
    }
}
