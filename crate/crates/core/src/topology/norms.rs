use crate::algebra::{choi_to_transfer, Channel, ChoiMap, Picture};
use crate::error::{Error, Result};
use crate::linalg::{spectral_norm, Matrix};

/// An element of a multi-block algebra, one matrix per block.
pub type Element = Vec<Matrix>;

/// Matrix of the superoperator on row-major vectorized elements. Rows are
/// grouped by output block, columns by input block.
pub fn transfer_matrix(f: &Channel) -> Matrix {
    let (dom, cod) = (f.dom().dims(), f.cod().dims());
    let rows: Vec<Matrix> = cod
        .iter()
        .enumerate()
        .map(|(j, &m)| {
            let parts: Vec<Matrix> = dom
                .iter()
                .enumerate()
                .map(|(i, &n)| choi_to_transfer(f.block(j, i), n, m))
                .collect();
            Matrix::hstack(&parts, m * m).expect("rows of one output block agree")
        })
        .collect();
    Matrix::vstack(&rows, f.dom().algebra_dim()).expect("every row spans the input algebra")
}

/// Spectral norm of the transfer matrix.
pub fn transfer_norm(f: &Channel) -> f64 {
    spectral_norm(&transfer_matrix(f))
}

fn same_shape(f: &Channel, g: &Channel) -> Result<()> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Err(Error::shape(format!(
            "cannot compare {}→{} with {}→{}",
            f.dom(),
            f.cod(),
            g.dom(),
            g.cod()
        )));
    }
    Ok(())
}

/// `‖T(f) − T(g)‖`, the operator norm for Hilbert–Schmidt norms on both sides.
///
/// Equivalent to the operator norm for spectral norms up to dimension
/// factors, so both induce the same topology.
pub fn distance(f: &Channel, g: &Channel) -> Result<f64> {
    same_shape(f, g)?;
    Ok(spectral_norm(&(&transfer_matrix(f) - &transfer_matrix(g))))
}

/// Spectral norm of an algebra element: the largest over its blocks.
pub fn element_norm(a: &[Matrix]) -> f64 {
    a.iter().map(spectral_norm).fold(0.0, f64::max)
}

/// `max_a ‖(f − g)(a)‖` over unit-norm witnesses, a lower bound on the
/// spectral-induced operator norm of `f − g`.
pub fn opnorm_lower_bound(f: &Channel, g: &Channel, witnesses: &[Element]) -> Result<f64> {
    same_shape(f, g)?;
    witnesses.iter().try_fold(0.0f64, |best, a| {
        let norm = element_norm(a);
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::WitnessNotNormalized { norm });
        }
        let (fa, ga) = (f.apply(a)?, g.apply(a)?);
        let diff: Vec<Matrix> = fa.iter().zip(&ga).map(|(x, y)| x - y).collect();
        Ok(best.max(element_norm(&diff)))
    })
}

/// `(1 − t)·f + t·g`, blockwise on Choi matrices.
pub fn convex_path(f: &Channel, g: &Channel, t: f64) -> Result<Channel> {
    same_shape(f, g)?;
    if f.picture() != Picture::Schrodinger || g.picture() != Picture::Schrodinger {
        return Err(Error::shape(
            "convex paths join Schrödinger-picture channels",
        ));
    }
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::shape(format!("path parameter {t} outside [0, 1]")));
    }
    let blocks = f
        .blocks()
        .iter()
        .zip(g.blocks())
        .map(|(rf, rg)| {
            rf.iter()
                .zip(rg)
                .map(|(a, b)| &a.scale_real(1.0 - t) + &b.scale_real(t))
                .collect()
        })
        .collect();
    Channel::new(
        ChoiMap::new(f.dom().clone(), f.cod().clone(), blocks)?,
        Picture::Schrodinger,
    )
}
