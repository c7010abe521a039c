//! Canonical isomorphisms of the unitary category as permutation matrices.

use crate::linalg::{permutation_matrix, Matrix};

/// `γ_{n,m}: n ⊕ m → m ⊕ n`.
pub fn gamma_plus(n: usize, m: usize) -> Matrix {
    let sigma: Vec<usize> = (0..n + m)
        .map(|i| if i < n { m + i } else { i - n })
        .collect();
    permutation_matrix(&sigma)
}

/// `γ′_{n,m}: n ⊗ m → m ⊗ n`, sending `e_i ⊗ e_k` to `e_k ⊗ e_i`.
pub fn gamma_times(n: usize, m: usize) -> Matrix {
    let sigma: Vec<usize> = (0..n * m).map(|r| (r % m) * n + r / m).collect();
    permutation_matrix(&sigma)
}

/// `δ: (a⊗b) ⊕ (a⊗c) → a⊗(b⊕c)`.
pub fn delta(a: usize, b: usize, c: usize) -> Matrix {
    let w = b + c;
    let sigma: Vec<usize> = (0..a * w)
        .map(|r| {
            if r < a * b {
                (r / b) * w + r % b
            } else {
                let s = r - a * b;
                (s / c) * w + b + s % c
            }
        })
        .collect();
    permutation_matrix(&sigma)
}

/// `δ♯: (a⊗c) ⊕ (b⊗c) → (a⊕b)⊗c`. With lexicographic Kronecker products
/// both sides index the same basis, so this is the identity.
pub fn delta_sharp(a: usize, b: usize, c: usize) -> Matrix {
    Matrix::identity((a + b) * c)
}

/// `⊥_n: 0 → n`, the empty `n×0` matrix.
pub fn bottom(n: usize) -> Matrix {
    Matrix::zeros(n, 0)
}

/// `ι_{m,n} = I_m ⊕ ⊥_{n−m}`, the `n×m` isometry onto the first `m` basis
/// vectors.
pub fn iota(m: usize, n: usize) -> Matrix {
    assert!(m <= n, "iota needs m <= n");
    Matrix::eye(n, m)
}
