use super::matrix::{Matrix, C64, ZERO};
use crate::error::{Error, Result};
use crate::tol;

/// Kronecker product with `(a⊗b)[i·p + k, j·q + l] = a[i,j]·b[k,l]`, where
/// `b` is `p×q`.
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (p, q) = b.shape();
    Matrix::from_fn(a.rows() * p, a.cols() * q, |r, c| {
        a[(r / p, c / q)] * b[(r % p, c % q)]
    })
}

/// Left-folded Kronecker product; the empty product is the 1×1 identity.
pub fn kron_all<'a>(factors: impl IntoIterator<Item = &'a Matrix>) -> Matrix {
    factors
        .into_iter()
        .fold(Matrix::identity(1), |acc, f| kron(&acc, f))
}

/// Block-diagonal `[[a, 0], [0, b]]`.
pub fn direct_sum(a: &Matrix, b: &Matrix) -> Matrix {
    direct_sum_all([a, b])
}

pub fn direct_sum_all<'a>(blocks: impl IntoIterator<Item = &'a Matrix>) -> Matrix {
    let blocks: Vec<&Matrix> = blocks.into_iter().collect();
    let rows = blocks.iter().map(|b| b.rows()).sum();
    let cols = blocks.iter().map(|b| b.cols()).sum();
    let mut out = Matrix::zeros(rows, cols);
    let (mut r, mut c) = (0, 0);
    for b in blocks {
        out.set_block(r, c, b);
        r += b.rows();
        c += b.cols();
    }
    out
}

/// The permutation matrix sending basis vector `e_i` to `e_{sigma[i]}`.
pub fn permutation_matrix(sigma: &[usize]) -> Matrix {
    let n = sigma.len();
    let mut m = Matrix::zeros(n, n);
    for (i, &j) in sigma.iter().enumerate() {
        m[(j, i)] = C64::new(1.0, 0.0);
    }
    m
}

/// Completes an `n×m` isometry to an `n×n` unitary whose first `m` columns
/// are exactly `v`.
///
/// Candidates are the standard basis vectors in index order; a candidate is
/// skipped when its residual after projection has norm below `1e-6`.
pub fn extend_to_unitary(v: &Matrix) -> Result<Matrix> {
    let (n, m) = v.shape();
    if m > n {
        return Err(Error::shape(format!(
            "cannot extend a {n}x{m} matrix to a unitary"
        )));
    }
    let defect = v.isometry_defect();
    if defect > tol::STRUCTURAL {
        return Err(Error::NotIsometry { defect });
    }
    let mut basis: Vec<Vec<C64>> = (0..m).map(|j| v.col(j)).collect();
    for k in 0..n {
        if basis.len() == n {
            break;
        }
        let mut w = vec![ZERO; n];
        w[k] = C64::new(1.0, 0.0);
        // Two passes of classical Gram-Schmidt keep the result orthogonal to
        // working precision.
        for _ in 0..2 {
            for b in &basis {
                let dot: C64 = b.iter().zip(&w).map(|(x, y)| x.conj() * y).sum();
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= dot * bi;
                }
            }
        }
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue;
        }
        for z in &mut w {
            *z /= norm;
        }
        basis.push(w);
    }
    debug_assert_eq!(basis.len(), n);
    let mut u = Matrix::from_fn(n, n, |i, j| basis[j][i]);
    u.set_block(0, 0, v);
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn x() -> Matrix {
        Matrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
    }

    #[test]
    fn kron_of_identities() {
        assert_eq!(
            kron(&Matrix::identity(2), &Matrix::identity(2)),
            Matrix::identity(4)
        );
    }

    #[test]
    fn kron_x_identity_swaps_halves() {
        let k = kron(&x(), &Matrix::identity(2));
        assert_eq!(k, permutation_matrix(&[2, 3, 0, 1]));
    }

    #[test]
    fn kron_of_t_gates() {
        let t = Matrix::diag(&[C64::new(1.0, 0.0), C64::from_polar(1.0, PI / 4.0)]);
        let expected = Matrix::diag(&[
            C64::new(1.0, 0.0),
            C64::from_polar(1.0, PI / 4.0),
            C64::from_polar(1.0, PI / 4.0),
            C64::from_polar(1.0, PI / 2.0),
        ]);
        assert!(kron(&t, &t).distance(&expected) < 1e-15);
    }

    #[test]
    fn direct_sum_with_empty_block() {
        let d = direct_sum(&Matrix::zeros(2, 0), &Matrix::identity(2));
        let expected =
            Matrix::from_real_rows(&[&[0.0, 0.0], &[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]);
        assert_eq!(d, expected);
    }

    #[test]
    fn direct_sum_builds_controlled_not() {
        let d = direct_sum(&Matrix::identity(1), &x());
        assert_eq!(d, permutation_matrix(&[0, 2, 1]));
    }

    #[test]
    fn t_gate_from_phases() {
        let t = direct_sum(
            &Matrix::scalar(C64::from_polar(1.0, 0.0)),
            &Matrix::scalar(C64::from_polar(1.0, PI / 4.0)),
        );
        assert_eq!(t[(1, 1)], C64::from_polar(1.0, PI / 4.0));
        assert_eq!(t.shape(), (2, 2));
    }

    #[test]
    fn extend_fixed_cases() {
        assert_eq!(
            extend_to_unitary(&Matrix::identity(3)).unwrap(),
            Matrix::identity(3)
        );
        let e0 = Matrix::from_real_rows(&[&[1.0], &[0.0]]);
        assert_eq!(extend_to_unitary(&e0).unwrap(), Matrix::identity(2));
    }

    #[test]
    fn extend_rejects_bad_input() {
        let wide = Matrix::zeros(1, 2);
        assert!(matches!(extend_to_unitary(&wide), Err(Error::Shape(_))));
        let not_iso = Matrix::from_real_rows(&[&[2.0], &[0.0]]);
        assert!(matches!(
            extend_to_unitary(&not_iso),
            Err(Error::NotIsometry { .. })
        ));
    }

    #[test]
    fn extend_empty_isometry() {
        assert_eq!(
            extend_to_unitary(&Matrix::zeros(3, 0)).unwrap(),
            Matrix::identity(3)
        );
        assert_eq!(
            extend_to_unitary(&Matrix::zeros(0, 0)).unwrap(),
            Matrix::zeros(0, 0)
        );
    }
}
