#![allow(dead_code)]

use qbiperm::algebra::{channel_from_kraus, embed, CStarObject, Channel, Picture};
use qbiperm::linalg::{Matrix, C64};

pub fn obj(d: &[usize]) -> CStarObject {
    CStarObject::new(d.to_vec()).unwrap()
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn x_gate() -> Matrix {
    Matrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
}

pub fn hadamard() -> Matrix {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    Matrix::from_real_rows(&[&[r, r], &[r, -r]])
}

pub fn amplitude_damping(gamma: f64) -> Channel {
    let k0 = Matrix::from_real_rows(&[&[1.0, 0.0], &[0.0, (1.0 - gamma).sqrt()]]);
    let k1 = Matrix::from_real_rows(&[&[0.0, gamma.sqrt()], &[0.0, 0.0]]);
    channel_from_kraus(
        Picture::Schrodinger,
        obj(&[2]),
        obj(&[2]),
        &vec![vec![vec![k0, k1]]],
    )
    .unwrap()
}

/// `[1] → [n]` preparing basis state `i`.
pub fn prep(n: usize, i: usize) -> Channel {
    let mut v = Matrix::zeros(n, 1);
    v[(i, 0)] = c(1.0, 0.0);
    embed(&v).unwrap()
}

pub fn dist(f: &Channel, g: &Channel) -> f64 {
    assert_eq!(f.picture(), g.picture(), "pictures differ");
    f.map().block_distance(g.map()).unwrap()
}

pub fn assert_close(f: &Channel, g: &Channel, tol: f64) {
    let d = dist(f, g);
    assert!(d <= tol, "channels differ by {d:e}");
}

/// A random density-like Hermitian PSD matrix of size `n`.
pub fn density(s: &mut qbiperm::random::Sampler, n: usize) -> Matrix {
    let g = s.gaussian_matrix(n, n);
    let p = &g * &g.adjoint();
    let t = p.trace().re;
    p.scale_real(1.0 / t)
}
