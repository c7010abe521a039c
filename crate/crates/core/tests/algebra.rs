mod common;

use common::*;
use proptest::prelude::*;
use qbiperm::algebra::{
    choi_of_kraus, compose, compose_seq, copair, copair_via_terminal, dualize, embed,
    from_stochastic, identity, kraus_from_choi, oplus, otimes, pure, structural, to_stochastic,
    CStarObject, Channel, ChoiMap, Picture, Structural,
};
use qbiperm::linalg::{direct_sum, kron, permutation_matrix, Matrix};
use qbiperm::random::Sampler;
use qbiperm::Error;

fn id(d: &[usize]) -> Channel {
    identity(&obj(d), Picture::Schrodinger)
}

fn st(s: Structural) -> Channel {
    structural(&s).unwrap()
}

#[test]
fn identity_from_single_kraus() {
    let f = qbiperm::algebra::channel_from_kraus(
        Picture::Schrodinger,
        obj(&[2]),
        obj(&[2]),
        &vec![vec![vec![Matrix::identity(2)]]],
    )
    .unwrap();
    let choi = f.block(0, 0);
    assert!((choi.trace().re - 2.0).abs() < 1e-15);
    let mut expected = Matrix::zeros(4, 4);
    for a in 0..2 {
        for b in 0..2 {
            expected[(a * 2 + a, b * 2 + b)] = c(1.0, 0.0);
        }
    }
    assert_eq!(*choi, expected);
    let k = kraus_from_choi(f.map()).unwrap();
    assert_eq!(k[0][0].len(), 1);
    assert!(k[0][0][0].distance(&Matrix::identity(2)) < 1e-12);
}

#[test]
fn amplitude_damping_flags() {
    let f = amplitude_damping(0.5).classify();
    assert!(f.cp && f.tp);
    assert!(!f.unital && !f.star_hom);
}

#[test]
fn amplitude_damping_kraus_round_trip() {
    let f = amplitude_damping(0.5);
    let k = kraus_from_choi(f.map()).unwrap();
    assert_eq!(k[0][0].len(), 2);
    let back = qbiperm::algebra::channel_from_kraus(Picture::Schrodinger, obj(&[2]), obj(&[2]), &k)
        .unwrap();
    assert_close(&back, &f, 1e-9);
}

#[test]
fn dephasing_is_measure_then_encode() {
    let kraus = vec![vec![vec![Matrix::unit(2, 0, 0), Matrix::unit(2, 1, 1)]]];
    let deph =
        qbiperm::algebra::channel_from_kraus(Picture::Schrodinger, obj(&[2]), obj(&[2]), &kraus)
            .unwrap();
    let encode = copair(&prep(2, 0), &prep(2, 1)).unwrap();
    let via = compose(&encode, &st(Structural::MeasurePhi(1, 1))).unwrap();
    assert_close(&deph, &via, 1e-15);

    let k = kraus_from_choi(deph.map()).unwrap();
    assert_eq!(k[0][0].len(), 2);
    for op in &k[0][0] {
        let e00 = op.distance(&Matrix::unit(2, 0, 0)) < 1e-12;
        let e11 = op.distance(&Matrix::unit(2, 1, 1)) < 1e-12;
        assert!(e00 || e11, "{op:?}");
    }
}

#[test]
fn unitary_conjugation_is_star_hom() {
    let mut s = Sampler::new(3);
    let u = s.unitary(3);
    let f = embed(&u).unwrap().classify();
    assert!(f.cp && f.tp && f.unital && f.star_hom);
}

#[test]
fn transpose_map_rejected() {
    let mut blocks = Matrix::zeros(4, 4);
    for a in 0..2 {
        for b in 0..2 {
            blocks[(a * 2 + b, b * 2 + a)] = c(1.0, 0.0);
        }
    }
    let map = ChoiMap::new(obj(&[2]), obj(&[2]), vec![vec![blocks]]).unwrap();
    assert!(!map.classify().cp);
    assert!(matches!(
        Channel::new(map, Picture::Schrodinger),
        Err(Error::NotCp { .. })
    ));
}

#[test]
fn hadamard_then_measure() {
    let f = compose(
        &st(Structural::MeasurePhi(1, 1)),
        &embed(&hadamard()).unwrap(),
    )
    .unwrap();
    let mut s = Sampler::new(4);
    let rho = density(&mut s, 2);
    let out = f.apply(std::slice::from_ref(&rho)).unwrap();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let plus = Matrix::from_real_rows(&[&[r], &[r]]);
    let minus = Matrix::from_real_rows(&[&[r], &[-r]]);
    let p = (&(&plus.adjoint() * &rho) * &plus)[(0, 0)];
    let m = (&(&minus.adjoint() * &rho) * &minus)[(0, 0)];
    assert!((out[0][(0, 0)] - p).norm() < 1e-14);
    assert!((out[1][(0, 0)] - m).norm() < 1e-14);
}

#[test]
fn coproduct_laws() {
    let inj = |i| {
        st(Structural::Injection {
            summands: vec![obj(&[1]), obj(&[1])],
            index: i,
        })
    };
    assert_close(&copair(&inj(0), &inj(1)).unwrap(), &id(&[1, 1]), 0.0);
    assert_close(
        &copair_via_terminal(&inj(0), &inj(1)).unwrap(),
        &id(&[1, 1]),
        1e-15,
    );
    let fold = st(Structural::Fold {
        object: obj(&[1]),
        arity: 2,
    });
    assert_close(&copair(&id(&[1]), &id(&[1])).unwrap(), &fold, 0.0);
    assert_close(&compose(&fold, &inj(1)).unwrap(), &id(&[1]), 0.0);
}

#[test]
fn classical_to_quantum_encoding() {
    let enc = copair(&prep(2, 0), &prep(2, 1)).unwrap();
    assert_eq!(enc.dom(), &obj(&[1, 1]));
    let out = enc
        .apply(&[Matrix::scalar(c(0.3, 0.0)), Matrix::scalar(c(0.7, 0.0))])
        .unwrap();
    assert!(out[0].distance(&Matrix::diag(&[c(0.3, 0.0), c(0.7, 0.0)])) < 1e-15);
}

#[test]
fn monoidal_products_on_generators() {
    assert_close(&oplus(&id(&[1]), &id(&[1])).unwrap(), &id(&[1, 1]), 0.0);
    let lhs = otimes(&embed(&x_gate()).unwrap(), &id(&[2])).unwrap();
    let rhs = embed(&kron(&x_gate(), &Matrix::identity(2))).unwrap();
    assert_close(&lhs, &rhs, 1e-15);
}

fn coin(p: f64) -> Channel {
    from_stochastic(&[vec![p], vec![1.0 - p]], 1).unwrap()
}

#[test]
fn product_of_classical_coins() {
    let (p, q) = (0.3, 0.8);
    let prod = otimes(&coin(p), &coin(q)).unwrap();
    let dist = to_stochastic(&prod).unwrap();
    let expected = [p * q, p * (1.0 - q), (1.0 - p) * q, (1.0 - p) * (1.0 - q)];
    for (row, e) in dist.iter().zip(expected) {
        assert!((row[0] - e).abs() < 1e-15);
    }
}

#[test]
fn stochastic_rejects_non_stochastic() {
    assert!(from_stochastic(&[vec![0.5], vec![0.6]], 1).is_err());
    assert!(from_stochastic(&[vec![-0.5], vec![1.5]], 1).is_err());
}

#[test]
fn duals_of_simple_maps() {
    assert_close(
        &dualize(&id(&[2])),
        &identity(&obj(&[2]), Picture::Heisenberg),
        0.0,
    );
    let tr = st(Structural::Terminal(obj(&[3])));
    let emb = dualize(&tr);
    assert_eq!(emb.picture(), Picture::Heisenberg);
    let out = emb.apply(&[Matrix::scalar(c(2.5, 0.0))]).unwrap();
    assert!(out[0].distance(&Matrix::identity(3).scale_real(2.5)) < 1e-15);
    let ad = dualize(&amplitude_damping(0.5));
    assert!(ad.classify().unital);
    let id_out = ad.apply(&[Matrix::identity(2)]).unwrap();
    assert!(id_out[0].distance(&Matrix::identity(2)) < 1e-12);
}

#[test]
fn state_preparation() {
    let p = prep(2, 0);
    let out = p.apply(&[Matrix::scalar(c(1.0, 0.0))]).unwrap();
    assert_eq!(out[0], Matrix::unit(2, 0, 0));
    assert_close(&embed(&Matrix::identity(3)).unwrap(), &id(&[3]), 0.0);
}

#[test]
fn measure_phi_keeps_corners() {
    let rho = Matrix::from_rows(&[
        vec![c(0.4, 0.0), c(0.1, 0.2)],
        vec![c(0.1, -0.2), c(0.6, 0.0)],
    ]);
    let out = st(Structural::MeasurePhi(1, 1)).apply(&[rho]).unwrap();
    assert_eq!(out[0][(0, 0)], c(0.4, 0.0));
    assert_eq!(out[1][(0, 0)], c(0.6, 0.0));
}

#[test]
fn terminal_is_trace() {
    let mut s = Sampler::new(5);
    let rho = density(&mut s, 2);
    let out = st(Structural::Terminal(obj(&[2])))
        .apply(std::slice::from_ref(&rho))
        .unwrap();
    assert!((out[0][(0, 0)] - rho.trace()).norm() < 1e-15);
}

#[test]
fn iterated_measure_is_left_associated() {
    let m = st(Structural::Measure(vec![1, 2, 1]));
    assert_eq!(m.cod(), &obj(&[1, 2, 1]));
    let mut s = Sampler::new(6);
    let rho = density(&mut s, 4);
    let out = m.apply(std::slice::from_ref(&rho)).unwrap();
    assert_eq!(out[1], rho.submatrix(1, 1, 2, 2));
    let explicit = compose_seq(&[
        st(Structural::MeasurePhi(3, 1)),
        oplus(&st(Structural::MeasurePhi(1, 2)), &id(&[1])).unwrap(),
    ])
    .unwrap();
    assert_close(&m, &explicit, 0.0);
}

#[test]
fn partial_trace_traces_outer_factor() {
    let mut s = Sampler::new(8);
    let a = density(&mut s, 2);
    let b = density(&mut s, 2);
    let out = st(Structural::PartialTrace { traced: 2, kept: 2 })
        .apply(&[kron(&a, &b)])
        .unwrap();
    assert!(out[0].distance(&b) < 1e-14);
}

/// Brute-force bijection `(a⊗b)⊕(a⊗c) → a⊗(b⊕c)` on basis labels.
fn delta_oracle(a: usize, b: usize, c: usize) -> Matrix {
    let mut labels = Vec::new();
    for i in 0..a {
        for j in 0..b {
            labels.push((i, j));
        }
    }
    for i in 0..a {
        for k in 0..c {
            labels.push((i, b + k));
        }
    }
    let sigma: Vec<usize> = labels.iter().map(|&(i, l)| i * (b + c) + l).collect();
    permutation_matrix(&sigma)
}

/// Brute-force bijection `(a⊗c)⊕(b⊗c) → (a⊕b)⊗c`.
fn delta_sharp_oracle(a: usize, b: usize, c: usize) -> Matrix {
    let mut labels = Vec::new();
    for i in 0..a {
        for k in 0..c {
            labels.push((i, k));
        }
    }
    for j in 0..b {
        for k in 0..c {
            labels.push((a + j, k));
        }
    }
    let sigma: Vec<usize> = labels.iter().map(|&(l, k)| l * c + k).collect();
    permutation_matrix(&sigma)
}

#[test]
fn distributors_match_index_bijections() {
    for a in 1..4 {
        for b in 1..4 {
            for c in 1..4 {
                assert_eq!(pure::delta(a, b, c), delta_oracle(a, b, c));
                assert_eq!(pure::delta_sharp(a, b, c), delta_sharp_oracle(a, b, c));
                // δ♯ = γ′ ∘ δ ∘ (γ′ ⊕ γ′) and δ = γ′ ∘ δ♯ ∘ (γ′ ⊕ γ′).
                let via_delta = &(&pure::gamma_times(c, a + b) * &pure::delta(c, a, b))
                    * &direct_sum(&pure::gamma_times(a, c), &pure::gamma_times(b, c));
                assert_eq!(via_delta, pure::delta_sharp(a, b, c));
                let via_sharp = &(&pure::gamma_times(b + c, a) * &pure::delta_sharp(b, c, a))
                    * &direct_sum(&pure::gamma_times(a, b), &pure::gamma_times(a, c));
                assert_eq!(via_sharp, pure::delta(a, b, c));
            }
        }
    }
}

#[test]
fn delta_sharp_example_shape() {
    let d = pure::delta_sharp(2, 2, 2);
    assert_eq!(d, delta_sharp_oracle(2, 2, 2));
    assert!(d.is_unitary(0.0));
}

#[test]
fn swap_and_not_gates() {
    assert_eq!(pure::gamma_plus(1, 1), x_gate());
    let swap = pure::gamma_times(2, 2);
    assert_eq!(swap, permutation_matrix(&[0, 2, 1, 3]));
    let mut s = Sampler::new(9);
    let (u, v) = (s.unitary(2), s.unitary(3));
    let lhs = &pure::gamma_times(2, 3) * &kron(&u, &v);
    let rhs = &kron(&v, &u) * &pure::gamma_times(2, 3);
    assert!(lhs.distance(&rhs) < 1e-14);
}

#[test]
fn channel_distributors_are_natural() {
    let mut s = Sampler::new(10);
    let (a, b, cc) = (obj(&[1, 2]), obj(&[2]), obj(&[1, 1]));
    let f = s.cptp(&a, &obj(&[2, 1]), 2).unwrap();
    let g = s.cptp(&b, &obj(&[1]), 2).unwrap();
    let h = s.cptp(&cc, &obj(&[2]), 2).unwrap();
    // δ♯ is the identity: (f⊗h)⊕(g⊗h) = (f⊕g)⊗h on the nose.
    let lhs = oplus(&otimes(&f, &h).unwrap(), &otimes(&g, &h).unwrap()).unwrap();
    let rhs = otimes(&oplus(&f, &g).unwrap(), &h).unwrap();
    assert_close(&lhs, &rhs, 1e-15);
    let sharp = st(Structural::DeltaSharp(a.clone(), b.clone(), cc.clone()));
    assert_close(&sharp, &id(a.oplus(&b).otimes(&cc).dims()), 0.0);
    // δ ∘ ((h⊗f)⊕(h⊗g)) = (h⊗(f⊕g)) ∘ δ
    let d_in = st(Structural::Delta(cc.clone(), a.clone(), b.clone()));
    let d_out = st(Structural::Delta(obj(&[2]), obj(&[2, 1]), obj(&[1])));
    let lhs = compose(
        &d_out,
        &oplus(&otimes(&h, &f).unwrap(), &otimes(&h, &g).unwrap()).unwrap(),
    )
    .unwrap();
    let rhs = compose(&otimes(&h, &oplus(&f, &g).unwrap()).unwrap(), &d_in).unwrap();
    assert_close(&lhs, &rhs, 1e-12);
    // δ agrees with the γ′ derivation.
    let gt = |x: &CStarObject, y: &CStarObject| st(Structural::GammaTimes(x.clone(), y.clone()));
    let derived = compose_seq(&[
        oplus(&gt(&cc, &a), &gt(&cc, &b)).unwrap(),
        st(Structural::DeltaSharp(a.clone(), b.clone(), cc.clone())),
        gt(&a.oplus(&b), &cc),
    ])
    .unwrap();
    assert_close(&derived, &d_in, 1e-15);
}

#[test]
fn gamma_plus_is_natural() {
    let mut s = Sampler::new(11);
    let f = s.cptp(&obj(&[2]), &obj(&[1, 2]), 2).unwrap();
    let g = s.cptp(&obj(&[1, 3]), &obj(&[2]), 2).unwrap();
    let lhs = compose(
        &st(Structural::GammaPlus(obj(&[1, 2]), obj(&[2]))),
        &oplus(&f, &g).unwrap(),
    )
    .unwrap();
    let rhs = compose(
        &oplus(&g, &f).unwrap(),
        &st(Structural::GammaPlus(obj(&[2]), obj(&[1, 3]))),
    )
    .unwrap();
    assert_close(&lhs, &rhs, 1e-14);
}

#[test]
fn gamma_times_is_natural() {
    let mut s = Sampler::new(12);
    let f = s.cptp(&obj(&[2, 1]), &obj(&[1, 2]), 2).unwrap();
    let g = s.cptp(&obj(&[2]), &obj(&[1, 1]), 2).unwrap();
    let lhs = compose(
        &st(Structural::GammaTimes(f.cod().clone(), g.cod().clone())),
        &otimes(&f, &g).unwrap(),
    )
    .unwrap();
    let rhs = compose(
        &otimes(&g, &f).unwrap(),
        &st(Structural::GammaTimes(f.dom().clone(), g.dom().clone())),
    )
    .unwrap();
    assert_close(&lhs, &rhs, 1e-13);
}

#[test]
fn choi_of_kraus_rejects_bad_shapes() {
    assert!(choi_of_kraus(2, 2, &[Matrix::identity(3)]).is_err());
}

fn small_object() -> impl Strategy<Value = CStarObject> {
    prop::collection::vec(1usize..=3, 1..=3).prop_map(|d| CStarObject::new(d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn closure_under_operations(seed in any::<u64>(), a in small_object(), b in small_object(),
                                cc in small_object()) {
        let mut s = Sampler::new(seed);
        let f = s.cptp(&a, &b, 2).unwrap();
        let g = s.cptp(&b, &cc, 2).unwrap();
        for h in [compose(&g, &f).unwrap(), oplus(&f, &g).unwrap(), otimes(&f, &g).unwrap()] {
            let flags = h.classify();
            prop_assert!(flags.cp && flags.tp);
            prop_assert!(Channel::new(h.into_map(), Picture::Schrodinger).is_ok());
        }
    }

    #[test]
    fn monoidal_products_are_strictly_associative(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let a = s.object(2, 2);
        let f = s.cptp(&a, &obj(&[2]), 2).unwrap();
        let g = s.cptp(&obj(&[1, 2]), &obj(&[1, 1]), 2).unwrap();
        let h = s.cptp(&obj(&[2]), &obj(&[1, 2]), 2).unwrap();
        let l = oplus(&oplus(&f, &g).unwrap(), &h).unwrap();
        let r = oplus(&f, &oplus(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(l.map(), r.map());
        let l = otimes(&otimes(&f, &g).unwrap(), &h).unwrap();
        let r = otimes(&f, &otimes(&g, &h).unwrap()).unwrap();
        prop_assert!(dist(&l, &r) < 1e-14);
    }

    #[test]
    fn stochastic_correspondence(seed in any::<u64>(), k in 1usize..4, p in 1usize..4) {
        let mut s = Sampler::new(seed);
        let f = s.cptp(&CStarObject::classical(k), &CStarObject::classical(p), 2).unwrap();
        let m = to_stochastic(&f).unwrap();
        for i in 0..k {
            let col: f64 = m.iter().map(|row| row[i]).sum();
            prop_assert!((col - 1.0).abs() < 1e-12);
            prop_assert!(m.iter().all(|row| row[i] >= -1e-15));
        }
        let back = from_stochastic(&m, k).unwrap();
        prop_assert!(dist(&back, &f) < 1e-15);
    }

    #[test]
    fn duality_is_an_involution(seed in any::<u64>(), a in small_object(), b in small_object()) {
        let mut s = Sampler::new(seed);
        let f = s.cptp(&a, &b, 2).unwrap();
        let d = dualize(&f);
        prop_assert_eq!(dualize(&d), f.clone());
        let (ff, fd) = (f.classify(), d.classify());
        prop_assert_eq!(ff.cp, fd.cp);
        prop_assert_eq!(ff.tp, fd.unital);
        prop_assert_eq!(ff.unital, fd.tp);
        // Tr(f*(y)·x) = Tr(y·f(x)) on random block elements.
        let xs: Vec<Matrix> = a.dims().iter().map(|&n| s.gaussian_matrix(n, n)).collect();
        let ys: Vec<Matrix> = b.dims().iter().map(|&n| s.gaussian_matrix(n, n)).collect();
        let fx = f.apply(&xs).unwrap();
        let dy = d.apply(&ys).unwrap();
        let lhs: qbiperm::C64 = dy.iter().zip(&xs).map(|(p, q)| (p * q).trace()).sum();
        let rhs: qbiperm::C64 = ys.iter().zip(&fx).map(|(p, q)| (p * q).trace()).sum();
        prop_assert!((lhs - rhs).norm() < 1e-10 * (1.0 + lhs.norm()));
    }

    #[test]
    fn measurement_is_natural(seed in any::<u64>(), m1 in 1usize..3, m2 in 1usize..3,
                              e1 in 0usize..2, e2 in 0usize..2) {
        let mut s = Sampler::new(seed);
        let v = s.isometry(m1 + e1, m1);
        let w = s.isometry(m2 + e2, m2);
        let lhs = compose(
            &st(Structural::MeasurePhi(m1 + e1, m2 + e2)),
            &embed(&direct_sum(&v, &w)).unwrap(),
        ).unwrap();
        let rhs = compose(
            &oplus(&embed(&v).unwrap(), &embed(&w).unwrap()).unwrap(),
            &st(Structural::MeasurePhi(m1, m2)),
        ).unwrap();
        prop_assert!(dist(&lhs, &rhs) < 1e-14);
    }

    #[test]
    fn embedding_is_functorial_and_forgets_phase(seed in any::<u64>(), n in 1usize..4,
                                                 theta in 0.0f64..std::f64::consts::TAU) {
        let mut s = Sampler::new(seed);
        let w = s.isometry(n + 1, n);
        let v = s.isometry(n + 2, n + 1);
        let lhs = compose(&embed(&v).unwrap(), &embed(&w).unwrap()).unwrap();
        prop_assert!(dist(&lhs, &embed(&(&v * &w)).unwrap()) < 1e-13);
        let phased = v.scale(qbiperm::C64::from_polar(1.0, theta));
        prop_assert!(dist(&embed(&phased).unwrap(), &embed(&v).unwrap()) < 1e-15);
        let x = s.unitary(2);
        let y = s.unitary(n);
        let t = otimes(&embed(&x).unwrap(), &embed(&y).unwrap()).unwrap();
        prop_assert!(dist(&t, &embed(&kron(&x, &y)).unwrap()) < 1e-14);
    }

    #[test]
    fn copair_agrees_with_terminal_construction(seed in any::<u64>(), a in small_object(),
                                                b in small_object(), cc in small_object()) {
        let mut s = Sampler::new(seed);
        let f = s.cptp(&a, &cc, 2).unwrap();
        let g = s.cptp(&b, &cc, 2).unwrap();
        let direct = copair(&f, &g).unwrap();
        let via = copair_via_terminal(&f, &g).unwrap();
        prop_assert!(dist(&direct, &via) < 1e-14);
    }
}
