//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use common::*;
use qbiperm::algebra::{
    channel_from_kraus, compose, copair, dualize, embed, identity, kraus_from_choi, oplus, otimes,
    structural, to_stochastic, CStarObject, Channel, ChoiMap, Picture, Structural,
};
use qbiperm::circuits::{compile, parse, typecheck, CircuitType, Value};
use qbiperm::completion::{lift_channel, lift_normal_forms, CptpCategory, EmbedFunctor};
use qbiperm::linalg::{direct_sum, Matrix, C64};
use qbiperm::normalform::{
    bratteli_form, equivalence_witness, eval_normal_form, factor_isometry, isometry_witness,
    normal_form_from_kraus, stinespring, stinespring_family,
};
use qbiperm::random::Sampler;
use qbiperm::topology::{
    bratteli_tuples, commutant_dimension, component_atlas, component_of, continuity_report,
    convex_path, distance, opnorm_lower_bound, separation_witness, transfer_matrix,
    unitary_intertwiner,
};
use qbiperm::Error;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let holds: bool = $cond;
        if !holds {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Debug>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| format!("{e:?}"))
}

const QFT3: &str = include_str!("data/qft3.qc");
const PHASE_ESTIMATION: &str = include_str!("data/phase_estimation.qc");

fn qft3_matrix() -> Result<Matrix, String> {
    match ok(compile(QFT3))? {
        Value::Pure(m) => Ok(m),
        Value::Channel(_) => Err("qft3 evaluated to a channel".into()),
    }
}

fn isometry_completion() -> Outcome {
    let mut s = Sampler::new(101);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let n = s.int(1, 8);
        let m = s.int(0, n);
        let v = s.isometry(n, m);
        let f = ok(factor_isometry(&v))?;
        worst = worst.max((&f.u * &Matrix::eye(n, m)).distance(&v));
    }
    ensure!(worst <= 1e-9, "factorization residual {worst:e}");
    let mut worst_w = 0.0f64;
    for _ in 0..200 {
        let n = s.int(1, 8);
        let m = s.int(0, n);
        let u1 = s.unitary(n);
        let u2 = &u1 * &direct_sum(&Matrix::identity(m), &s.unitary(n - m));
        let w = ok(isometry_witness(&u1, &u2, m))?;
        ensure!(w.is_unitary(1e-9), "witness not unitary");
        worst_w = worst_w.max((&u1 * &direct_sum(&Matrix::identity(m), &w)).distance(&u2));
    }
    ensure!(worst_w <= 1e-8, "witness residual {worst_w:e}");
    Ok(format!("factorization {worst:.1e}, witness {worst_w:.1e}"))
}

fn choi_kraus() -> Outcome {
    let mut s = Sampler::new(102);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let (dom, cod) = (s.object(3, 3), s.object(3, 3));
        let f = ok(s.cptp(&dom, &cod, 3))?;
        let k = ok(kraus_from_choi(f.map()))?;
        let back = ok(channel_from_kraus(Picture::Schrodinger, dom, cod, &k))?;
        worst = worst.max(dist(&f, &back));
    }
    ensure!(worst <= 1e-9, "round trip {worst:e}");
    let mut t = Matrix::zeros(4, 4);
    for a in 0..2 {
        for b in 0..2 {
            t[(a * 2 + b, b * 2 + a)] = c(1.0, 0.0);
        }
    }
    let transpose = ok(ChoiMap::new(obj(&[2]), obj(&[2]), vec![vec![t]]))?;
    ensure!(
        matches!(
            Channel::new(transpose, Picture::Schrodinger),
            Err(Error::NotCp { .. })
        ),
        "transpose map accepted"
    );
    Ok(format!("round trip {worst:.1e}, transpose rejected"))
}

fn bratteli() -> Outcome {
    let mut s = Sampler::new(103);
    let (mut cases, mut worst) = (0, 0.0f64);
    while cases < 100 {
        let k = s.int(1, 3);
        let mbar: Vec<usize> = (0..k).map(|_| s.int(1, 3)).collect();
        let sbar: Vec<usize> = (0..k).map(|_| s.int(0, 3)).collect();
        let p: usize = mbar.iter().zip(&sbar).map(|(m, s)| m * s).sum();
        if p == 0 || p > 12 {
            continue;
        }
        cases += 1;
        let f = ok(ok(s.star_hom(&mbar, &sbar))?.to_channel())?;
        let b = ok(bratteli_form(&f))?;
        ensure!(b.sbar == sbar, "recovered {:?}, built {:?}", b.sbar, sbar);
        worst = worst.max(ok(ok(b.to_channel())?.map().block_distance(f.map()))?);
    }
    ensure!(worst <= 1e-8, "evaluation residual {worst:e}");
    Ok(format!("{cases} forms recovered, residual {worst:.1e}"))
}

fn stinespring_dilation() -> Outcome {
    let mut s = Sampler::new(104);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let dom = s.object(2, 3);
        let p = s.int(1, 3);
        let f = ok(s.cpu(&dom, &CStarObject::single(p), 3))?;
        let nf = ok(stinespring(&f))?;
        worst = worst.max(ok(ok(eval_normal_form(&nf))?
            .map()
            .block_distance(f.map()))?);
        let ranks: Vec<usize> = ok(kraus_from_choi(dualize(&f).map()))?
            .iter()
            .map(|row| row[0].len())
            .collect();
        let q: usize = ranks.iter().zip(dom.dims()).map(|(r, m)| r * m).sum();
        ensure!(nf.q == q, "q = {} but Choi ranks give {q}", nf.q);
        let bound: usize = dom.dims().iter().map(|m| m * m * p).sum();
        ensure!(nf.q <= bound, "q = {} exceeds {bound}", nf.q);
    }
    ensure!(worst <= 1e-8, "round trip {worst:e}");
    let ad = ok(stinespring(&amplitude_damping(0.5)))?;
    ensure!(
        ad.q == 4 && ad.sbar == vec![2],
        "amplitude damping q={} sbar={:?}",
        ad.q,
        ad.sbar
    );
    Ok(format!(
        "round trip {worst:.1e}; amplitude damping q=4, sbar=[2]"
    ))
}

fn mixed_kraus(s: &mut Sampler, kraus: &[Vec<Matrix>]) -> Vec<Vec<Matrix>> {
    kraus
        .iter()
        .map(|ks| {
            let mix = s.unitary(ks.len());
            (0..ks.len())
                .map(|t| {
                    ks.iter()
                        .enumerate()
                        .fold(Matrix::zeros(ks[0].rows(), ks[0].cols()), |acc, (u, k)| {
                            &acc + &k.scale(mix[(t, u)])
                        })
                })
                .collect()
        })
        .collect()
}

fn equivalence() -> Outcome {
    let mut s = Sampler::new(105);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let dom = s.object(2, 3);
        let p = s.int(1, 3);
        let f = ok(s.cpu(&dom, &CStarObject::single(p), 3))?;
        let nf = ok(stinespring(&f))?;
        let other = ok(normal_form_from_kraus(
            nf.p,
            &nf.mbar,
            &mixed_kraus(&mut s, &nf.kraus()),
            Picture::Heisenberg,
        ))?;
        let w = ok(equivalence_witness(&nf, &other))?;
        worst = worst.max(w.residual);
    }
    ensure!(worst <= 1e-7, "witness residual {worst:e}");
    Ok(format!("50 pairs, residual {worst:.1e}"))
}

fn universal_lifts() -> Outcome {
    let e = EmbedFunctor { conjugate: false };
    let lift = |g: &Channel| ok(lift_channel(&CptpCategory, &e, g));
    let corpus = vec![
        ("identity", identity(&obj(&[2]), Picture::Schrodinger)),
        ("measure", ok(structural(&Structural::MeasurePhi(1, 1)))?),
        (
            "partial trace",
            ok(structural(&Structural::PartialTrace { traced: 2, kept: 2 }))?,
        ),
        ("amplitude damping", amplitude_damping(0.5)),
        ("copair", ok(copair(&prep(2, 0), &prep(2, 1)))?),
        ("qft3", ok(embed(&qft3_matrix()?))?),
    ];
    let mut worst = 0.0f64;
    for (name, g) in &corpus {
        let d = dist(&lift(g)?, g);
        ensure!(d <= 1e-8, "{name}: lift differs by {d:e}");
        worst = worst.max(d);
    }
    let mut s = Sampler::new(106);
    let mut worst_wd = 0.0f64;
    for _ in 0..20 {
        let (dom, cod) = (s.object(2, 2), s.object(2, 3));
        let g = ok(s.cptp(&dom, &cod, 2))?;
        let forms = ok(stinespring_family(&g))?;
        let others = forms
            .iter()
            .map(|nf| {
                normal_form_from_kraus(
                    nf.p,
                    &nf.mbar,
                    &mixed_kraus(&mut s, &nf.kraus()),
                    nf.picture,
                )
            })
            .collect::<Result<Vec<_>, _>>();
        let (a, b) = (
            ok(lift_normal_forms(&CptpCategory, &e, &forms, cod.dims()))?,
            ok(lift_normal_forms(
                &CptpCategory,
                &e,
                &ok(others)?,
                cod.dims(),
            ))?,
        );
        worst_wd = worst_wd.max(dist(&a, &b));
    }
    ensure!(worst_wd <= 1e-8, "dilation dependence {worst_wd:e}");
    let mut worst_strict = 0.0f64;
    for _ in 0..50 {
        let objs: Vec<CStarObject> = (0..4).map(|_| s.object(2, 2)).collect();
        let g = ok(s.cptp(&objs[0], &objs[1], 2))?;
        let h = ok(s.cptp(&objs[2], &objs[3], 2))?;
        let sum = dist(
            &lift(&ok(oplus(&g, &h))?)?,
            &ok(oplus(&lift(&g)?, &lift(&h)?))?,
        );
        let prod = dist(
            &lift(&ok(otimes(&g, &h))?)?,
            &ok(otimes(&lift(&g)?, &lift(&h)?))?,
        );
        worst_strict = worst_strict.max(sum).max(prod);
    }
    ensure!(worst_strict <= 1e-8, "strictness {worst_strict:e}");
    Ok(format!(
        "corpus {worst:.1e}, dilation choice {worst_wd:.1e}, strictness {worst_strict:.1e}"
    ))
}

fn topology_census() -> Outcome {
    let atlas = component_atlas(2, &[1, 1]);
    let dims: Vec<usize> = atlas.iter().map(|c| c.real_dimension).collect();
    ensure!(dims == vec![0, 2, 0], "component dimensions {dims:?}");
    let mut s = Sampler::new(107);
    let mut checked = 0;
    for n in 1..=6 {
        for mbar in [
            vec![1],
            vec![2],
            vec![1, 1],
            vec![1, 2],
            vec![2, 3],
            vec![1, 1, 1],
        ] {
            for t in bratteli_tuples(n, &mbar) {
                let f = ok(ok(s.star_hom(&mbar, &t.sbar))?.to_channel())?;
                let info = ok(component_of(&f))?;
                let nullity = ok(commutant_dimension(f.map()))?;
                ensure!(
                    n * n - nullity == info.real_dimension && info.tuple == t,
                    "{t:?}: nullity {nullity}, dimension {}",
                    info.real_dimension
                );
                checked += 1;
            }
        }
    }
    Ok(format!(
        "3 components, dims [0,2,0]; {checked} *-homs match the commutant"
    ))
}

fn component_separation() -> Outcome {
    let mut s = Sampler::new(108);
    let (mut pairs, mut same) = (0, 0);
    let (mut lowest, mut worst) = (f64::INFINITY, 0.0f64);
    for n in 1..=6 {
        for mbar in [vec![1, 1], vec![1, 2], vec![2, 3], vec![1, 1, 1]] {
            let tuples = bratteli_tuples(n, &mbar);
            let homs = tuples
                .iter()
                .map(|t| {
                    let a = s.star_hom(&mbar, &t.sbar)?.to_channel()?;
                    let b = s.star_hom(&mbar, &t.sbar)?.to_channel()?;
                    Ok((a, b))
                })
                .collect::<Result<Vec<_>, Error>>();
            let homs = ok(homs)?;
            for (i, (f, f2)) in homs.iter().enumerate() {
                let w = ok(unitary_intertwiner(f2, f))?;
                let moved = ok(compose(&dualize(&ok(embed(&w.adjoint()))?), f2))?;
                worst = worst.max(ok(distance(&moved, f))?);
                same += 1;
                for (g, _) in &homs[i + 1..] {
                    let sep = ok(separation_witness(f, g))?;
                    lowest = lowest.min(ok(opnorm_lower_bound(f, g, &[sep.element]))?);
                    pairs += 1;
                }
            }
        }
    }
    ensure!(lowest >= 1.0 - 1e-9, "separation bound {lowest}");
    ensure!(worst <= 1e-7, "intertwiner residual {worst:e}");
    Ok(format!(
        "{pairs} distinct pairs, min bound {lowest:.9}; {same} same-tuple pairs, residual {worst:.1e}"
    ))
}

fn continuity() -> Outcome {
    let reports = ok(continuity_report(1000, 109))?;
    let mut parts = Vec::new();
    for r in &reports {
        ensure!(
            r.max_ratio <= 1.0 + 1e-9,
            "{}: ratio {}",
            r.bound,
            r.max_ratio
        );
        parts.push(format!("{} {:.6}", r.bound, r.max_ratio));
    }
    let mut s = Sampler::new(110);
    for _ in 0..50 {
        let n = s.int(1, 4);
        let m = s.int(1, n);
        let v = s.isometry(n, m);
        let w = v.scale(C64::from_polar(1.0, s.real(0.0, std::f64::consts::TAU)));
        let d = ok(distance(&ok(embed(&v))?, &ok(embed(&w))?))?;
        ensure!(d <= 1e-12, "global phase visible: {d:e}");
    }
    Ok(format!(
        "max ratios: {}; global phase invisible",
        parts.join(", ")
    ))
}

fn hom_set_geometry() -> Outcome {
    let mut s = Sampler::new(111);
    for _ in 0..200 {
        let f = ok(s.cptp(&CStarObject::unit(), &obj(&[1, 1]), 2))?;
        let t = transfer_matrix(&f);
        let p = t[(0, 0)].re;
        ensure!((-1e-12..=1.0 + 1e-12).contains(&p), "p = {p}");
        ensure!((t[(1, 0)].re - (1.0 - p)).abs() <= 1e-12, "not (p, 1-p)");
        let g = ok(s.cptp(&CStarObject::unit(), &obj(&[2]), 2))?;
        let rho = g.block(0, 0);
        let eig = ok(qbiperm::linalg::hermitian_eigensystem(rho))?;
        ensure!(
            (rho.trace().re - 1.0).abs() <= 1e-12 && eig.values[1] >= -1e-12,
            "not a state"
        );
    }
    for _ in 0..100 {
        let (a, b) = (s.object(2, 3), s.object(2, 3));
        let f = ok(s.cptp(&a, &b, 3))?;
        let g = ok(s.cptp(&a, &b, 3))?;
        let mid = ok(convex_path(&f, &g, 0.5))?;
        let flags = mid.classify();
        ensure!(flags.cp && flags.tp, "midpoint left the hom-set");
    }
    Ok("interval and Bloch-ball cores, midpoints stay CPTP".into())
}

fn circuits() -> Outcome {
    let u = qft3_matrix()?;
    let dft = Matrix::from_fn(8, 8, |j, k| {
        C64::from_polar(
            1.0 / 8f64.sqrt(),
            std::f64::consts::TAU * (j * k) as f64 / 8.0,
        )
    });
    let d = u.distance(&dft);
    ensure!(d <= 1e-10, "qft3 differs from DFT by {d:e}");
    let cnot = match ok(compile("cnot"))? {
        Value::Pure(m) => m,
        Value::Channel(_) => return Err("cnot is a channel".into()),
    };
    ensure!(
        cnot == direct_sum(&Matrix::identity(2), &x_gate()),
        "cnot is not I ⊕ X"
    );
    let ty = ok(typecheck(&ok(parse(PHASE_ESTIMATION))?))?;
    let bit = obj(&[1, 1]);
    let qubit = obj(&[2]);
    let expected = CircuitType::Channel {
        dom: qubit.otimes(&qubit),
        cod: bit.otimes(&bit).otimes(&bit).otimes(&qubit.otimes(&qubit)),
    };
    ensure!(ty == expected, "phase estimation type {ty:?}");
    let coin = ok(ok(compile("init[1,2] ; H ; measure[1,1]"))?.into_channel())?;
    let p = ok(to_stochastic(&coin))?;
    ensure!(
        (p[0][0] - 0.5).abs() <= 1e-12 && (p[1][0] - 0.5).abs() <= 1e-12,
        "coin {p:?}"
    );
    let (dom, cod) = ty.promoted();
    Ok(format!(
        "qft3 vs DFT {d:.1e}; cnot exact; phase estimation {dom}→{cod}; fair coin"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("isometry completion", isometry_completion),
        ("Choi/Kraus", choi_kraus),
        ("Bratteli normal form", bratteli),
        ("Stinespring dilation", stinespring_dilation),
        ("normal-form equivalence", equivalence),
        ("universal lifts", universal_lifts),
        ("topology census", topology_census),
        ("separation of components", component_separation),
        ("enriched continuity", continuity),
        ("hom-set geometry", hom_set_geometry),
        ("circuits", circuits),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
