use serde::{Deserialize, Serialize};

use crate::algebra::{compose, embed, oplus, otimes, Channel};
use crate::error::Result;
use crate::linalg::{psd_inverse_sqrt, spectral_norm, Matrix, C64};
use crate::random::Sampler;

use super::norms::{distance, transfer_norm};

/// Largest observed `lhs / rhs` for one Lipschitz estimate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ContinuityReport {
    pub bound: String,
    pub max_ratio: f64,
    pub samples: usize,
}

struct Tally {
    bound: &'static str,
    max_ratio: f64,
    samples: usize,
}

impl Tally {
    fn new(bound: &'static str) -> Self {
        Tally {
            bound,
            max_ratio: 0.0,
            samples: 0,
        }
    }

    /// Pairs with a vanishing right side only count against the bound when
    /// the left side is visibly nonzero.
    fn record(&mut self, lhs: f64, rhs: f64) {
        self.samples += 1;
        let ratio = if rhs > 1e-12 {
            lhs / rhs
        } else if lhs > 1e-10 {
            f64::INFINITY
        } else {
            0.0
        };
        self.max_ratio = self.max_ratio.max(ratio);
    }

    fn finish(self) -> ContinuityReport {
        ContinuityReport {
            bound: self.bound.into(),
            max_ratio: self.max_ratio,
            samples: self.samples,
        }
    }
}

/// An isometry near `v`: either `v` itself, a global phase of it, a small
/// perturbation re-orthonormalized by the polar factor, or an unrelated one.
fn partner(s: &mut Sampler, v: &Matrix) -> Result<Matrix> {
    let (n, m) = v.shape();
    Ok(match s.int(0, 3) {
        0 => v.clone(),
        1 => v.scale(C64::from_polar(1.0, s.real(0.0, std::f64::consts::TAU))),
        2 => {
            let eps = s.real(1e-6, 0.3);
            let w = v + &s.gaussian_matrix(n, m).scale_real(eps);
            &w * &psd_inverse_sqrt(&(&w.adjoint() * &w))?
        }
        _ => s.isometry(n, m),
    })
}

fn channel_pair(s: &mut Sampler, max_dim: usize) -> Result<(Channel, Channel)> {
    let dom = s.object(2, max_dim);
    let cod = s.object(2, max_dim);
    let f = s.cptp(&dom, &cod, 2)?;
    let g = if s.int(0, 1) == 0 {
        let t = s.real(0.0, 1.0);
        super::norms::convex_path(&f, &s.cptp(&dom, &cod, 2)?, t)?
    } else {
        s.cptp(&dom, &cod, 2)?
    };
    Ok((f, g))
}

/// Samples the estimates making embedding, composition, `⊕` and `⊗`
/// continuous for the transfer-matrix norm:
///
/// * `embed`: `d(E(V), E(W)) ≤ 2‖V − W‖`
/// * `compose`: `d(g∘f, g′∘f′) ≤ ‖g‖·d(f, f′) + d(g, g′)·‖f′‖`
/// * `oplus`: `d(h⊕f, h⊕f′) = d(f, f′)`
/// * `otimes`: `d(h⊗f, h⊗f′) ≤ ‖h‖·d(f, f′)`
pub fn continuity_report(samples: usize, seed: u64) -> Result<Vec<ContinuityReport>> {
    let mut s = Sampler::new(seed);
    let mut emb = Tally::new("embed");
    let mut comp = Tally::new("compose");
    let mut sum = Tally::new("oplus");
    let mut prod = Tally::new("otimes");
    for _ in 0..samples {
        let n = s.int(1, 4);
        let m = s.int(1, n);
        let v = s.isometry(n, m);
        let w = partner(&mut s, &v)?;
        emb.record(
            distance(&embed(&v)?, &embed(&w)?)?,
            2.0 * spectral_norm(&(&v - &w)),
        );

        let (f, f2) = channel_pair(&mut s, 4)?;
        let mid = f.cod().clone();
        let cod = s.object(2, 4);
        let g = s.cptp(&mid, &cod, 2)?;
        let g2 = s.cptp(&mid, &cod, 2)?;
        comp.record(
            distance(&compose(&g, &f)?, &compose(&g2, &f2)?)?,
            transfer_norm(&g) * distance(&f, &f2)? + distance(&g, &g2)? * transfer_norm(&f2),
        );

        let h_dom = s.object(2, 2);
        let h_cod = s.object(2, 2);
        let h = s.cptp(&h_dom, &h_cod, 2)?;
        sum.record(
            distance(&oplus(&h, &f)?, &oplus(&h, &f2)?)?,
            distance(&f, &f2)?,
        );

        let (f, f2) = channel_pair(&mut s, 2)?;
        prod.record(
            distance(&otimes(&h, &f)?, &otimes(&h, &f2)?)?,
            transfer_norm(&h) * distance(&f, &f2)?,
        );
    }
    Ok(vec![
        emb.finish(),
        comp.finish(),
        sum.finish(),
        prod.finish(),
    ])
}
