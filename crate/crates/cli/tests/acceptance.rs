//! Acceptance gate: seven end-to-end criteria covering the golden example
//! tables, stratum geometry, predicted-vs-observed sweeps, the derivative
//! shape law, the per-ball identity, conservation on random characteristic
//! sequences, and the structural property suites.
//!
//! Each criterion is one test that prints a single
//! `acceptance N (<label>): PASS` line when it holds.

use num::{BigInt, BigRational};
use num_complex::Complex64;
use polar_branches::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};

const FIT_TOL: f64 = 1e-6;

fn small_curve() -> BivariatePoly {
    // (y^3 - x^4)^2 - x^9, characteristic (6; 8, 11)
    &(&BivariatePoly::y_pow(3) - &BivariatePoly::x_pow(4)).pow(2) - &BivariatePoly::x_pow(9)
}

fn big_curve() -> BivariatePoly {
    // ((y^3 - x^4)^4 + x^17 y^3)^2 + x^22 (y^3 - x^4)^5, characteristic
    // (24; 32, 62, 137)
    let g = &BivariatePoly::y_pow(3) - &BivariatePoly::x_pow(4);
    let inner = &g.pow(4) + &(&BivariatePoly::x_pow(17) * &BivariatePoly::y_pow(3));
    &inner.pow(2) + &(&BivariatePoly::x_pow(22) * &g.pow(5))
}

fn cusp() -> BivariatePoly {
    &BivariatePoly::y_pow(2) - &BivariatePoly::x_pow(3)
}

fn perturbed_cusp() -> BivariatePoly {
    // y^3 - x^4 + x^5, characteristic (3; 4)
    &(&BivariatePoly::y_pow(3) - &BivariatePoly::x_pow(4)) + &BivariatePoly::x_pow(5)
}

fn rows(d: &PolarDecomposition) -> Vec<(i64, i64, i64)> {
    d.bunches
        .iter()
        .map(|b| (b.ord_total, b.ord_gamma1, b.ord_gamma2))
        .collect()
}

fn failing(d: &PolarDecomposition) -> Vec<(String, String)> {
    d.verdicts
        .iter()
        .filter(|(_, v)| !v.pass)
        .map(|(k, v)| (k.clone(), v.detail.clone()))
        .collect()
}

#[test]
fn acceptance_1_small_example_table() {
    let bd = prepare_branch(&small_curve(), &Config::numeric(), None).unwrap();
    assert_eq!(bd.chr.b(), &[6, 8, 11]);
    use CorollaryFlag::*;
    // (k, i_k, rows, flags per bunch)
    let golden: [(i64, usize, Vec<(i64, i64, i64)>, Vec<Vec<CorollaryFlag>>); 5] = [
        (1, 2, vec![(2, 2, 0), (3, 3, 0)], vec![vec![], vec![IrreducibleCase1, Gamma1SemiRoot]]),
        (2, 1, vec![(4, 1, 3)], vec![vec![Gamma1SemiRoot]]),
        (3, 1, vec![(3, 0, 3)], vec![vec![IrreducibleCase2]]),
        (4, 1, vec![(2, 2, 0)], vec![vec![]]),
        (5, 1, vec![(1, 1, 0)], vec![vec![IrreducibleCase1, Gamma1SemiRoot]]),
    ];
    for (k, i_k, want_rows, want_flags) in golden {
        let d = decompose_polar(&bd, k).unwrap();
        assert!(d.all_pass, "k = {k}: {:?}", failing(&d));
        assert_eq!(d.i_k, i_k, "k = {k}");
        assert_eq!(rows(&d), want_rows, "k = {k}");
        for (bp, wf) in d.predicted.bunches.iter().zip(&want_flags) {
            assert_eq!(&bp.flags, wf, "k = {k}, bunch {}", bp.i);
        }
    }
    // Factor structure at the spotlight orders.
    let d1 = decompose_polar(&bd, 1).unwrap();
    assert_eq!(d1.bunches[0].factors.len(), 2);
    assert!(d1.bunches[0]
        .factors
        .iter()
        .all(|f| f.degree == 1 && f.class == SemiRootClass::SemiRoot(0)));
    assert_eq!(d1.bunches[1].factors.len(), 1);
    assert_eq!(d1.bunches[1].factors[0].degree, 3);
    assert_eq!(d1.bunches[1].factors[0].class, SemiRootClass::SemiRoot(1));
    let d2 = decompose_polar(&bd, 2).unwrap();
    let g2: Vec<_> = d2.bunches[0]
        .factors
        .iter()
        .filter(|f| f.side == RefinementSide::Gamma2)
        .collect();
    assert_eq!(g2.len(), 1);
    assert_eq!(g2[0].degree, 3);
    assert_eq!(g2[0].chr.b(), &[3, 4]);
    assert_eq!(g2[0].class, SemiRootClass::ThresholdSemiRoot(1));
    let d3 = decompose_polar(&bd, 3).unwrap();
    assert_eq!(d3.bunches[0].factors.len(), 1);
    assert_eq!(d3.bunches[0].factors[0].class, SemiRootClass::ThresholdSemiRoot(1));
    println!("acceptance 1 (small example golden table): PASS");
}

#[test]
fn acceptance_2_big_example_strata() {
    let bd = prepare_branch(&big_curve(), &Config::numeric(), None).unwrap();
    assert_eq!(bd.chr.b(), &[24, 32, 62, 137]);
    assert_eq!(bd.chr.e(), &[24, 8, 2, 1]);
    let sizes: Vec<usize> = bd.strata.iter().map(|s| s.balls.len()).collect();
    assert_eq!(sizes, vec![1, 3, 12]);
    let members: Vec<usize> = bd.strata.iter().map(|s| s.balls[0].members.len()).collect();
    assert_eq!(members, vec![24, 8, 2]);
    // Ball polynomial models: (z^3 - c)^8, (z^4 - c)^2, (z^2 - c)^1.
    let shapes: Vec<(i64, i64)> = bd.strata.iter().map(|s| (s.balls[0].n_i, s.balls[0].e_i)).collect();
    assert_eq!(shapes, vec![(3, 8), (4, 2), (2, 1)]);
    for s in &bd.strata {
        for b in &s.balls {
            assert!(
                b.fit_err <= FIT_TOL,
                "T_{} ball fit {:.3e} above tolerance",
                s.i,
                b.fit_err
            );
            assert!(b.c_b.norm() > 0.0);
        }
    }
    println!("acceptance 2 (big example strata and ball fits): PASS");
}

#[test]
fn acceptance_3_predicted_vs_observed_sweep() {
    let cfg = Config::numeric();
    for (name, curve) in [
        ("small", small_curve()),
        ("big", big_curve()),
        ("cusp", cusp()),
        ("perturbed cusp", perturbed_cusp()),
    ] {
        let bd = prepare_branch(&curve, &cfg, None).unwrap();
        for k in 1..bd.chr.b0() {
            let d = decompose_polar(&bd, k).unwrap();
            assert!(d.all_pass, "{name}, k = {k}: {:?}", failing(&d));
        }
    }
    // Spot claims on the big curve.
    let bd = prepare_branch(&big_curve(), &cfg, None).unwrap();
    let d1 = decompose_polar(&bd, 1).unwrap();
    assert_eq!(rows(&d1), vec![(2, 2, 0), (9, 9, 0), (12, 12, 0)]);
    assert_eq!(d1.bunches[2].factors.len(), 1);
    assert_eq!(d1.bunches[2].factors[0].degree, 12);
    assert_eq!(d1.bunches[2].factors[0].class, SemiRootClass::SemiRoot(2));
    assert_eq!(d1.bunches[2].factors[0].chr.b(), &[12, 16, 31]);
    let d4 = decompose_polar(&bd, 4).unwrap();
    assert_eq!(rows(&d4), vec![(8, 2, 6), (12, 0, 12)]);
    let g2: Vec<_> = d4.bunches[0]
        .factors
        .iter()
        .filter(|f| f.side == RefinementSide::Gamma2)
        .collect();
    assert_eq!(g2.len(), 2);
    assert!(g2.iter().all(|f| f.degree == 3
        && f.chr.b() == [3, 4]
        && f.class == SemiRootClass::ThresholdSemiRoot(1)));
    assert_eq!(d4.bunches[1].factors.len(), 1);
    assert_eq!(d4.bunches[1].factors[0].degree, 12);
    assert_eq!(d4.bunches[1].factors[0].class, SemiRootClass::ThresholdSemiRoot(2));
    assert_eq!(d4.bunches[1].factors[0].chr.b(), &[12, 16, 31]);
    assert_eq!(d4.predicted.bunches[1].flags, vec![CorollaryFlag::IrreducibleCase2]);
    let d7 = decompose_polar(&bd, 7).unwrap();
    assert_eq!(rows(&d7), vec![(14, 2, 12), (3, 3, 0)]);
    let g2: Vec<_> = d7.bunches[0]
        .factors
        .iter()
        .filter(|f| f.side == RefinementSide::Gamma2)
        .collect();
    assert_eq!(g2.len(), 4);
    assert!(g2.iter().all(|f| f.degree == 3 && f.chr.b() == [3, 4]));
    assert!(d7.predicted.bunches[1].flags.contains(&CorollaryFlag::IrreducibleCase1));
    assert_eq!(d7.bunches[1].factors.len(), 1);
    assert_eq!(d7.bunches[1].factors[0].degree, 3);
    assert_eq!(d7.bunches[1].factors[0].class, SemiRootClass::SemiRoot(1));
    println!("acceptance 3 (predicted vs observed over every polar order): PASS");
}

#[test]
fn acceptance_4_shape_oracle_exhaustive() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut checked = 0u32;
    for n in 1..=30i64 {
        for e in 1..=(30 / n) {
            let num = loop {
                let v = rng.gen_range(-20..=20i64);
                if v != 0 {
                    break v;
                }
            };
            let den = rng.gen_range(1..=10i64);
            let c = BigRational::new(BigInt::from(num), BigInt::from(den));
            for k in 1..(n * e) {
                let predicted = derivative_shape(n, e, k).unwrap();
                let oracle = derivative_shape_oracle(n, e, k, &c).unwrap();
                assert_eq!(
                    predicted, oracle,
                    "shape mismatch at n = {n}, e = {e}, k = {k}, c = {c}"
                );
                checked += 1;
            }
        }
    }
    assert!(checked > 500, "exhaustive sweep too small: {checked}");
    println!("acceptance 4 (derivative shape law, exhaustive n*e <= 30): PASS");
}

#[test]
fn acceptance_5_ball_identity_everywhere() {
    let cfg = Config::numeric();
    for (name, curve) in [("small", small_curve()), ("big", big_curve())] {
        let bd = prepare_branch(&curve, &cfg, None).unwrap();
        for k in 1..bd.chr.b0() {
            let polar = bd.curve.y_derivative(k as u32);
            let polar_rs = puiseux_roots(&polar, bd.depth, &cfg).unwrap();
            for stratum in &bd.strata {
                for (bi, ball) in stratum.balls.iter().enumerate() {
                    if k >= ball.e_prev {
                        continue;
                    }
                    let err = ball_derivative_identity(ball, &polar_rs, k, cfg.tol).unwrap();
                    assert!(
                        err <= FIT_TOL,
                        "{name}: T_{} ball {bi}, k = {k}: lc mismatch {err:.3e}",
                        stratum.i
                    );
                }
            }
        }
    }
    println!("acceptance 5 (derivative identity on every ball): PASS");
}

#[test]
fn acceptance_6_conservation_on_random_sequences() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut produced = 0;
    while produced < 10 {
        // Random divisor chain b_0 = e_0 > e_1 > ... > e_h = 1, then
        // characteristic terms b_i = e_i * t with t coprime to n_i.
        let b0 = rng.gen_range(4..=64i64);
        let mut e = vec![b0];
        while *e.last().unwrap() > 1 {
            let last = *e.last().unwrap();
            let divisors: Vec<i64> = (1..last).filter(|d| last % d == 0).collect();
            e.push(divisors[rng.gen_range(0..divisors.len())]);
        }
        if e.len() < 3 {
            continue; // want at least one true characteristic exponent
        }
        let mut b = vec![b0];
        let mut ok = true;
        for i in 1..e.len() {
            let n_i = e[i - 1] / e[i];
            let floor = b[i - 1] / e[i] + 1;
            let mut t = 0;
            for _ in 0..200 {
                let cand = rng.gen_range(floor..floor + 40);
                if num::integer::gcd(cand, n_i) == 1 {
                    t = cand;
                    break;
                }
            }
            if t == 0 {
                ok = false;
                break;
            }
            b.push(e[i] * t);
        }
        if !ok {
            continue;
        }
        let chr = match CharacteristicData::new(b.clone()) {
            Ok(c) => c,
            Err(err) => panic!("generator produced invalid sequence {b:?}: {err}"),
        };
        assert_eq!(chr.e(), &e[..], "gcd ladder must match the generator");
        for k in 1..b0 {
            let p = predicted_decomposition(&chr, k).unwrap();
            let total: i64 = p.bunches.iter().map(|x| x.ord_total).sum();
            assert_eq!(total, b0 - k, "conservation at {b:?}, k = {k}");
            for bunch in &p.bunches {
                assert_eq!(
                    bunch.ord_gamma1 + bunch.ord_gamma2,
                    bunch.ord_total,
                    "refinement split at {b:?}, k = {k}, bunch {}",
                    bunch.i
                );
                let e_prev = chr.e()[bunch.i - 1];
                assert_eq!(
                    bunch.per_ball_gamma1 + bunch.per_ball_gamma2 + bunch.per_ball_deeper,
                    e_prev - k,
                    "per-ball budget at {b:?}, k = {k}, bunch {}",
                    bunch.i
                );
            }
        }
        produced += 1;
    }
    println!("acceptance 6 (conservation over 10 random characteristic sequences): PASS");
}

// --- criterion 7: structural property suites -------------------------------

fn random_series(rng: &mut ChaCha8Rng, ram: i64, span: i64) -> PuiseuxSeries {
    let mut terms: BTreeMap<i64, Complex64> = BTreeMap::new();
    let count = rng.gen_range(1..=4usize);
    for _ in 0..count {
        let i = rng.gen_range(1..=span);
        let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if c.norm() > 1e-3 {
            terms.insert(i, c);
        }
    }
    PuiseuxSeries::new(
        Mode::Numeric,
        terms
            .into_iter()
            .map(|(i, c)| (Exponent::new(i, ram), Scalar::from_complex(c))),
        Trunc::Infinite,
    )
    .unwrap()
}

/// Contact as an extended rational: None is infinite (identical series).
fn finite_contact(a: &PuiseuxSeries, b: &PuiseuxSeries, tol: f64) -> Option<Exponent> {
    match a.contact_order(b, tol).unwrap() {
        OrderBound::Finite(v) => Some(v),
        OrderBound::Infinite => None,
        OrderBound::AtLeast(v) => panic!("untruncated series left contact undecided at {v}"),
    }
}

fn sti_suite(rng: &mut ChaCha8Rng, tol: f64) {
    for trial in 0..150 {
        let ram = [1, 2, 3, 4, 6][rng.gen_range(0..5)];
        let a = random_series(rng, ram, 12);
        let b = random_series(rng, ram, 12);
        let c = random_series(rng, ram, 12);
        let ab = finite_contact(&a, &b, tol);
        let bc = finite_contact(&b, &c, tol);
        let ac = finite_contact(&a, &c, tol);
        // Ultrametric: the smallest of the three pairwise contacts is
        // attained at least twice (None = infinity).
        let mut v = [ab, bc, ac];
        v.sort_by(|x, y| match (x, y) {
            (None, None) => std::cmp::Ordering::Equal,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (Some(_), None) => std::cmp::Ordering::Less,
            (Some(p), Some(q)) => p.cmp(q),
        });
        assert_eq!(
            v[0], v[1],
            "trial {trial}: contacts {ab:?}, {bc:?}, {ac:?} break the ultrametric"
        );
    }
}

fn dichotomy_suite(rng: &mut ChaCha8Rng, tol: f64) {
    for trial in 0..150 {
        let ram = [1, 2, 3, 4, 6][rng.gen_range(0..5)];
        let a = random_series(rng, ram, 10);
        let b = random_series(rng, ram, 10);
        let h = Exponent::new(rng.gen_range(1..=10), ram);
        let ball_a = PseudoBall::new(&a, h);
        let ball_b = PseudoBall::new(&b, h);
        let same = ball_a.contains(ball_b.center(), tol).unwrap();
        assert_eq!(
            same,
            ball_b.contains(ball_a.center(), tol).unwrap(),
            "trial {trial}: containment must be symmetric at equal heights"
        );
        for _ in 0..3 {
            let probe = random_series(rng, ram, 10);
            let in_a = ball_a.contains(&probe, tol).unwrap();
            let in_b = ball_b.contains(&probe, tol).unwrap();
            if same {
                assert_eq!(in_a, in_b, "trial {trial}: equal balls disagree on a probe");
            } else {
                assert!(!(in_a && in_b), "trial {trial}: disjoint balls share a probe");
            }
        }
        // The centers themselves are the sharpest probes.
        if !same {
            assert!(!ball_a.contains(&b, tol).unwrap() || !ball_b.contains(&a, tol).unwrap());
        }
    }
}

fn star_suite(rng: &mut ChaCha8Rng, tol: f64) {
    for trial in 0..150 {
        let ram = [1, 2, 3, 4, 6][rng.gen_range(0..5)];
        let a = random_series(rng, ram, 12);
        let b = random_series(rng, ram, 12);
        let j = rng.gen_range(0..ram);
        let sa = a.star(j, ram).unwrap();
        let sb = b.star(j, ram).unwrap();
        assert_eq!(
            finite_contact(&a, &b, tol),
            finite_contact(&sa, &sb, tol),
            "trial {trial}: rotation by {j}/{ram} changed a contact order"
        );
    }
}

fn curve_ultrametric_suite(cfg: &Config) {
    let depth = Exponent::from_int(4);
    let pool: Vec<RootSet> = [
        small_curve(),
        &BivariatePoly::y_pow(3) - &BivariatePoly::x_pow(4),
        cusp(),
        &BivariatePoly::y_pow(1) - &BivariatePoly::x_pow(2),
    ]
    .iter()
    .map(|f| puiseux_roots(f, depth, cfg).unwrap())
    .collect();
    let contact = |i: usize, j: usize| -> Exponent {
        match cont_curves(&pool[i], &pool[j], cfg.tol).unwrap() {
            OrderBound::Finite(v) => v,
            other => panic!("curve contact undecided: {other}"),
        }
    };
    for i in 0..pool.len() {
        for j in (i + 1)..pool.len() {
            for l in (j + 1)..pool.len() {
                let mut v = [contact(i, j), contact(j, l), contact(i, l)];
                v.sort();
                assert_eq!(v[0], v[1], "curves ({i},{j},{l}) break the ultrametric");
            }
        }
    }
}

fn contact_star_invariance_suite(cfg: &Config) {
    let bd = prepare_branch(&small_curve(), cfg, None).unwrap();
    let semi = &BivariatePoly::y_pow(3) - &BivariatePoly::x_pow(4);
    let semi_roots = puiseux_roots(&semi, Exponent::from_int(3), cfg).unwrap();
    for entry in &semi_roots.entries {
        let base = cont(&bd.roots, &entry.series, cfg.tol).unwrap();
        let m = entry.series.ram();
        for j in 0..m {
            let rotated = entry.series.star(j, m).unwrap();
            assert_eq!(
                cont(&bd.roots, &rotated, cfg.tol).unwrap(),
                base,
                "contact with the branch must be rotation-invariant"
            );
        }
    }
    let polar_rs = puiseux_roots(&bd.curve.y_derivative(1), bd.depth, cfg).unwrap();
    for entry in &polar_rs.entries {
        let base = cont(&bd.roots, &entry.series, cfg.tol).unwrap();
        let m = entry.series.ram();
        for j in 0..m {
            let rotated = entry.series.star(j, m).unwrap();
            assert_eq!(cont(&bd.roots, &rotated, cfg.tol).unwrap(), base);
        }
    }
}

fn conjugate_contact_suite(cfg: &Config) {
    for curve in [small_curve(), big_curve()] {
        let bd = prepare_branch(&curve, cfg, None).unwrap();
        let m = bd.chr.b0();
        let gamma = &bd.roots.entries[0].series;
        assert_eq!(gamma.ram(), m, "canonical depth separates all conjugates");
        for j in 0..m {
            let rotated = gamma.star(j, m).unwrap();
            let observed = gamma.contact_order(&rotated, cfg.tol).unwrap();
            match conjugate_contact(&bd.chr, j) {
                OrderBound::Finite(v) => {
                    assert_eq!(
                        observed,
                        OrderBound::Finite(v),
                        "conjugate contact at j = {j} of {}",
                        bd.chr
                    );
                }
                _ => assert!(
                    !observed.is_finite(),
                    "j = {j} should give an invisible (beyond-depth) difference"
                ),
            }
        }
    }
}

fn closed_form_roots_suite(cfg: &Config) {
    // Roots of (y^3 - x^4)^2 - x^9 in closed form:
    //   y = zeta x^{4/3} (1 + s x^{1/2})^{1/3}
    //     = zeta x^{4/3} + s zeta/3 x^{11/6} - zeta/9 x^{7/3} + 5 s zeta/81 x^{17/6} - ...
    // with zeta^3 = 1 and s = +-1.
    let bd = prepare_branch(&small_curve(), cfg, Some(Exponent::from_int(3))).unwrap();
    assert_eq!(bd.roots.entries.len(), 6);
    let e43 = Exponent::new(4, 3);
    let e116 = Exponent::new(11, 6);
    let e73 = Exponent::new(7, 3);
    let e176 = Exponent::new(17, 6);
    let mut seen: BTreeSet<(i64, i64)> = BTreeSet::new();
    for entry in &bd.roots.entries {
        let at = |e: Exponent| -> Complex64 {
            entry
                .series
                .coeff_at(e)
                .map(|s| s.to_complex())
                .unwrap_or_else(|| Complex64::new(0.0, 0.0))
        };
        let zeta = at(e43);
        assert!((zeta.powi(3) - Complex64::new(1.0, 0.0)).norm() < 1e-9);
        let c2 = at(e116);
        let s = if (c2 - zeta / 3.0).norm() < (c2 + zeta / 3.0).norm() { 1.0 } else { -1.0 };
        assert!((c2 - s * zeta / 3.0).norm() < 1e-9, "x^(11/6) coefficient");
        assert!((at(e73) + zeta / 9.0).norm() < 1e-9, "x^(7/3) coefficient");
        assert!(
            (at(e176) - 5.0 * s * zeta / 81.0).norm() < 1e-9,
            "x^(17/6) coefficient"
        );
        // Each (zeta, s) combination appears exactly once.
        let key = ((zeta.arg() * 3.0 / std::f64::consts::PI).round() as i64, s as i64);
        assert!(seen.insert(key), "duplicate root branch {key:?}");
    }
    assert_eq!(seen.len(), 6);
    // Pairwise contact multiset: twelve pairs at 4/3, three at 11/6.
    let mut counts: BTreeMap<Exponent, u32> = BTreeMap::new();
    for i in 0..6 {
        for j in (i + 1)..6 {
            let c = finite_contact(
                &bd.roots.entries[i].series,
                &bd.roots.entries[j].series,
                cfg.tol,
            )
            .expect("distinct conjugates have finite contact");
            *counts.entry(c).or_insert(0) += 1;
        }
    }
    assert_eq!(
        counts,
        BTreeMap::from([(e43, 12), (e116, 3)]),
        "pairwise contact census"
    );
}

fn product_reconstruction_suite(cfg: &Config) {
    // Vieta check at a sample abscissa: the monic polynomial built from the
    // evaluated roots matches f(x0, y) coefficient by coefficient.
    let f = small_curve();
    let bd = prepare_branch(&f, cfg, None).unwrap();
    let x0 = 1e-3;
    let evals: Vec<Complex64> = bd
        .roots
        .entries
        .iter()
        .map(|e| e.series.eval(Complex64::new(x0, 0.0)))
        .collect();
    let product = {
        let mut p = vec![Complex64::new(1.0, 0.0)];
        for r in &evals {
            let mut next = vec![Complex64::new(0.0, 0.0); p.len() + 1];
            for (i, c) in p.iter().enumerate() {
                next[i] -= c * r;
                next[i + 1] += c;
            }
            p = next;
        }
        p
    };
    let mut exact = vec![Complex64::new(0.0, 0.0); 7];
    for (&(i, j), c) in f.terms() {
        let v = c.numer().to_string().parse::<f64>().unwrap()
            / c.denom().to_string().parse::<f64>().unwrap();
        exact[j as usize] += Complex64::new(v * x0.powi(i as i32), 0.0);
    }
    for (i, (got, want)) in product.iter().zip(&exact).enumerate() {
        assert!(
            (got - want).norm() < 1e-9,
            "y^{i} coefficient: product {got}, curve {want}"
        );
    }
}

#[test]
fn acceptance_7_property_suites() {
    let cfg = Config::numeric();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    sti_suite(&mut rng, cfg.tol);
    dichotomy_suite(&mut rng, cfg.tol);
    star_suite(&mut rng, cfg.tol);
    curve_ultrametric_suite(&cfg);
    contact_star_invariance_suite(&cfg);
    conjugate_contact_suite(&cfg);
    closed_form_roots_suite(&cfg);
    product_reconstruction_suite(&cfg);
    println!("acceptance 7 (contact and root-structure property suites): PASS");
}
