use std::collections::BTreeMap;

use qbiperm::algebra::embed;
use qbiperm::completion::{
    check_functor_laws, check_target_laws, lift_channel, CptpCategory, EmbedFunctor, LawReport,
    TerminalCategory,
};
use qbiperm::random::Sampler;
use qbiperm::topology::{continuity_report, distance};
use qbiperm::Result;
use serde_json::{json, Value};

const LAW_TOL: f64 = 1e-9;

#[derive(Default)]
struct Summary {
    residual: f64,
    ok: bool,
    checks: usize,
}

fn absorb(summary: &mut BTreeMap<String, Summary>, reports: Vec<LawReport>) {
    for r in reports {
        let entry = summary.entry(r.law).or_insert(Summary {
            ok: true,
            ..Summary::default()
        });
        entry.residual = entry.residual.max(r.residual);
        entry.ok &= r.ok;
        entry.checks += 1;
    }
}

/// Target-category and functor laws, the lift triangle on sampled
/// isometries, and the continuity estimates. Returns the report and whether
/// everything passed.
pub fn run(seed: u64, samples: usize) -> Result<(Value, bool)> {
    let mut s = Sampler::new(seed);
    let mut laws = BTreeMap::new();
    for _ in 0..samples {
        let (a, b, c, d, cod) = (
            s.object(2, 2),
            s.object(2, 2),
            s.object(2, 2),
            s.object(2, 2),
            s.object(2, 2),
        );
        let f = s.cptp(&a, &cod, 2)?;
        let g = s.cptp(&b, &cod, 2)?;
        let h = s.cptp(&c, &d, 2)?;
        absorb(
            &mut laws,
            check_target_laws(&CptpCategory, &f, &g, &h, LAW_TOL)?,
        );
        absorb(
            &mut laws,
            check_target_laws(&TerminalCategory, &(), &(), &(), LAW_TOL)?,
        );

        let n = s.int(1, 3);
        let v = s.isometry(n + 1, n);
        let k = s.int(1, 2);
        let w = s.isometry(2, k);
        let v2 = s.isometry(n + 2, n + 1);
        for conjugate in [false, true] {
            let functor = EmbedFunctor { conjugate };
            absorb(
                &mut laws,
                check_functor_laws(&CptpCategory, &functor, &v, &w, &v2, LAW_TOL)?,
            );
        }

        let e = embed(&v)?;
        let lifted = lift_channel(&CptpCategory, &EmbedFunctor { conjugate: false }, &e)?;
        absorb(
            &mut laws,
            vec![LawReport::new(
                "lift triangle",
                distance(&lifted, &e)?,
                1e-8,
            )],
        );
    }
    let continuity = continuity_report(samples, seed)?;
    let ok = laws.values().all(|l| l.ok) && continuity.iter().all(|c| c.max_ratio <= 1.0 + LAW_TOL);
    let laws: Vec<Value> = laws
        .into_iter()
        .map(|(law, s)| json!({ "law": law, "max_residual": s.residual, "checks": s.checks, "ok": s.ok }))
        .collect();
    Ok((
        json!({ "seed": seed, "samples": samples, "laws": laws, "continuity": continuity, "ok": ok }),
        ok,
    ))
}
