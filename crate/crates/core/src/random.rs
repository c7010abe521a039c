//! Seeded samplers for matrices, objects and channels.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::{channel_from_kraus, dualize, CStarObject, Channel, Picture};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, C64, ZERO};
use crate::normalform::BratteliForm;

/// Deterministic sampler; identical seeds give identical streams.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Uniform integer in `lo..=hi`.
    pub fn int(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.random_range(lo..=hi)
    }

    /// Uniform real in `[lo, hi)`.
    pub fn real(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    pub fn gaussian(&mut self) -> C64 {
        let re: f64 = self.rng.sample(StandardNormal);
        let im: f64 = self.rng.sample(StandardNormal);
        C64::new(re, im)
    }

    pub fn gaussian_matrix(&mut self, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(rows, cols, |_, _| self.gaussian())
    }

    /// Random Hermitian matrix with Gaussian entries.
    pub fn hermitian(&mut self, n: usize) -> Matrix {
        let g = self.gaussian_matrix(n, n);
        (&g + &g.adjoint()).scale_real(0.5)
    }

    /// `n×m` isometry from orthonormalising Gaussian columns.
    pub fn isometry(&mut self, n: usize, m: usize) -> Matrix {
        assert!(m <= n, "isometry needs m <= n");
        loop {
            let g = self.gaussian_matrix(n, m);
            if let Some(q) = orthonormal_columns(&g) {
                return q;
            }
        }
    }

    pub fn unitary(&mut self, n: usize) -> Matrix {
        self.isometry(n, n)
    }

    /// Object with `1..=max_blocks` blocks of size `1..=max_dim`.
    pub fn object(&mut self, max_blocks: usize, max_dim: usize) -> CStarObject {
        let k = self.int(1, max_blocks);
        let dims = (0..k).map(|_| self.int(1, max_dim)).collect();
        CStarObject::new(dims).expect("positive sizes")
    }

    /// Random Schrödinger channel with at most `max_kraus` Kraus operators
    /// per component. Some components may vanish.
    pub fn cptp(
        &mut self,
        dom: &CStarObject,
        cod: &CStarObject,
        max_kraus: usize,
    ) -> Result<Channel> {
        if cod.is_empty() && !dom.is_empty() {
            return Err(Error::shape("no channel into the initial object"));
        }
        let p = cod.len();
        let mut kraus = vec![vec![Vec::new(); dom.len()]; p];
        for (i, &n) in dom.dims().iter().enumerate() {
            let mut counts: Vec<usize> = (0..p).map(|_| self.int(0, max_kraus)).collect();
            let height = |c: &[usize]| c.iter().zip(cod.dims()).map(|(r, m)| r * m).sum::<usize>();
            while height(&counts) < n {
                let j = self.int(0, p - 1);
                counts[j] += 1;
            }
            let w = self.isometry(height(&counts), n);
            let mut row = 0;
            for (j, &r) in counts.iter().enumerate() {
                let m = cod.dims()[j];
                for _ in 0..r {
                    kraus[j][i].push(w.submatrix(row, 0, m, n));
                    row += m;
                }
            }
        }
        channel_from_kraus(Picture::Schrodinger, dom.clone(), cod.clone(), &kraus)
    }

    /// Random unital *-homomorphism `mbar → [Σ sᵢmᵢ]` with Bratteli data
    /// `sbar` and a Haar-random unitary.
    pub fn star_hom(&mut self, mbar: &[usize], sbar: &[usize]) -> Result<BratteliForm> {
        let p = mbar.iter().zip(sbar).map(|(m, s)| m * s).sum();
        let u = self.unitary(p);
        BratteliForm::new(p, mbar.to_vec(), sbar.to_vec(), u)
    }

    /// Random Heisenberg-picture unital map `dom → cod`.
    pub fn cpu(
        &mut self,
        dom: &CStarObject,
        cod: &CStarObject,
        max_kraus: usize,
    ) -> Result<Channel> {
        Ok(dualize(&self.cptp(cod, dom, max_kraus)?))
    }
}

/// Gram–Schmidt on the columns; `None` if they are numerically dependent.
fn orthonormal_columns(g: &Matrix) -> Option<Matrix> {
    let (n, m) = g.shape();
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(m);
    for j in 0..m {
        let mut w = g.col(j);
        for _ in 0..2 {
            for b in &cols {
                let dot: C64 = b.iter().zip(&w).map(|(x, y)| x.conj() * y).sum();
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= dot * bi;
                }
            }
        }
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            return None;
        }
        w.iter_mut().for_each(|z| *z /= norm);
        cols.push(w);
    }
    let mut q = Matrix::zeros(n, m);
    for (j, c) in cols.iter().enumerate() {
        for (i, &z) in c.iter().enumerate() {
            q[(i, j)] = if z.norm() == 0.0 { ZERO } else { z };
        }
    }
    Some(q)
}
