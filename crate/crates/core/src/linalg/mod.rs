//! Dense complex linear algebra.

mod eigen;
mod matrix;
mod ops;

pub(crate) use eigen::fix_phase;
pub use eigen::{hermitian_eigensystem, psd_inverse_sqrt, psd_sqrt, spectral_norm, Eigensystem};
pub use matrix::{Matrix, C64, ONE, ZERO};
pub use ops::{direct_sum, direct_sum_all, extend_to_unitary, kron, kron_all, permutation_matrix};
