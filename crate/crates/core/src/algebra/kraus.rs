use super::channel::{Channel, ChoiMap, Picture};
use super::object::CStarObject;
use crate::error::{Error, Result};
use crate::linalg::{fix_phase, hermitian_eigensystem, Matrix, C64};
use crate::tol;

/// Kraus operators indexed `[output block][input block][t]`. Each operator
/// for component `(j, i)` is `mⱼ×nᵢ` and the component acts as
/// `X ↦ Σ_t K_t X K_t*`.
pub type KrausFamily = Vec<Vec<Vec<Matrix>>>;

/// Choi matrix of `X ↦ Σ K X K*` for `m×n` operators.
pub fn choi_of_kraus(n: usize, m: usize, kraus: &[Matrix]) -> Result<Matrix> {
    let mut c = Matrix::zeros(n * m, n * m);
    for k in kraus {
        if k.shape() != (m, n) {
            return Err(Error::shape(format!(
                "Kraus operator must be {m}x{n}, got {}x{}",
                k.rows(),
                k.cols()
            )));
        }
        // vec(K)[a·m + x] = K[x, a]
        for r in 0..n * m {
            let kr = k[(r % m, r / m)];
            if kr == C64::new(0.0, 0.0) {
                continue;
            }
            for s in 0..n * m {
                c[(r, s)] += kr * k[(s % m, s / m)].conj();
            }
        }
    }
    Ok(c)
}

/// Raw map of a Kraus family; no normalisation is checked.
pub fn map_from_kraus(dom: CStarObject, cod: CStarObject, kraus: &KrausFamily) -> Result<ChoiMap> {
    if kraus.len() != cod.len() || kraus.iter().any(|row| row.len() != dom.len()) {
        return Err(Error::shape(format!(
            "Kraus grid must be {}x{}",
            cod.len(),
            dom.len()
        )));
    }
    let blocks = kraus
        .iter()
        .enumerate()
        .map(|(j, row)| {
            row.iter()
                .enumerate()
                .map(|(i, ks)| choi_of_kraus(dom.dims()[i], cod.dims()[j], ks))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    ChoiMap::new(dom, cod, blocks)
}

/// Builds a channel from Kraus operators, validating the condition matching
/// `picture`.
pub fn channel_from_kraus(
    picture: Picture,
    dom: CStarObject,
    cod: CStarObject,
    kraus: &KrausFamily,
) -> Result<Channel> {
    Channel::new(map_from_kraus(dom, cod, kraus)?, picture)
}

/// Kraus operators of one `(nm)×(nm)` Choi block: eigenvectors scaled by
/// `√λ` for eigenvalues above the rank threshold, largest first.
pub fn kraus_of_block(c: &Matrix, n: usize, m: usize) -> Result<Vec<Matrix>> {
    if c.shape() != (n * m, n * m) {
        return Err(Error::shape("Choi block has the wrong size"));
    }
    if n * m == 0 {
        return Ok(Vec::new());
    }
    let eig = hermitian_eigensystem(c)?;
    let top = eig.max_abs_value();
    let lowest = *eig.values.last().expect("non-empty");
    if lowest < -(tol::PSD_RELATIVE * top + tol::PSD_ABSOLUTE) {
        return Err(Error::NotCp { eigenvalue: lowest });
    }
    let r = eig.rank();
    Ok((0..r)
        .map(|t| {
            let mut v = eig.vectors.col(t);
            fix_phase(&mut v);
            let s = eig.values[t].sqrt();
            Matrix::from_fn(m, n, |x, a| v[a * m + x] * s)
        })
        .collect())
}

/// Kraus decomposition of every component.
pub fn kraus_from_choi(map: &ChoiMap) -> Result<KrausFamily> {
    map.blocks()
        .iter()
        .enumerate()
        .map(|(j, row)| {
            row.iter()
                .enumerate()
                .map(|(i, c)| kraus_of_block(c, map.dom().dims()[i], map.cod().dims()[j]))
                .collect()
        })
        .collect()
}

/// The embedding `E`: an `n×m` isometry `V` becomes `Ad_V: [m] → [n]`.
pub fn embed(v: &Matrix) -> Result<Channel> {
    let defect = v.isometry_defect();
    if v.rows() < v.cols() || defect > tol::STRUCTURAL {
        return Err(Error::NotIsometry { defect });
    }
    let dom = CStarObject::single(v.cols());
    let cod = CStarObject::single(v.rows());
    let grid = if dom.is_empty() || cod.is_empty() {
        vec![Vec::new(); cod.len()]
    } else {
        vec![vec![vec![v.clone()]]]
    };
    Ok(Channel::trusted(
        map_from_kraus(dom, cod, &grid)?,
        Picture::Schrodinger,
    ))
}
