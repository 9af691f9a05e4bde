//! Randomized invariants. Series ring laws, group products against exact
//! window products, production-matrix round trips, determinant identities
//! and positivity monotonicity. All arithmetic is exact, so every property
//! is a strict equality or implication, never an approximation.

use num::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::strategy::Strategy;
use riordan_core::*;

const ORD: usize = 10;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn nonneg_rat() -> impl Strategy<Value = Rational> {
    (0i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn pos_rat() -> impl Strategy<Value = Rational> {
    (1i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn series(order: usize) -> impl Strategy<Value = Series> {
    proptest::collection::vec(small_rat(), order + 1)
        .prop_map(move |c| Series::polynomial(&c, order))
}

/// Invertible series: nonzero constant term of either sign.
fn unit_series(order: usize) -> impl Strategy<Value = Series> {
    (pos_rat(), any::<bool>(), proptest::collection::vec(small_rat(), order)).prop_map(
        move |(c0, flip, rest)| {
            let mut c = vec![if flip { -c0 } else { c0 }];
            c.extend(rest);
            Series::polynomial(&c, order)
        },
    )
}

/// Reversible series: f(0) = 0, f'(0) != 0 of either sign.
fn delta_series(order: usize) -> impl Strategy<Value = Series> {
    (
        pos_rat(),
        any::<bool>(),
        proptest::collection::vec(small_rat(), order - 1),
    )
        .prop_map(move |(f1, flip, rest)| {
            let mut c = vec![Rational::zero(), if flip { -f1 } else { f1 }];
            c.extend(rest);
            Series::polynomial(&c, order)
        })
}

/// Normalized Riordan pair: g(0) = 1, f = t + higher terms.
fn normalized_pair(order: usize) -> impl Strategy<Value = (Series, Series)> {
    (
        proptest::collection::vec(small_rat(), order),
        proptest::collection::vec(small_rat(), order - 1),
    )
        .prop_map(move |(gt, ft)| {
            let mut g = vec![Rational::one()];
            g.extend(gt);
            let mut f = vec![Rational::zero(), Rational::one()];
            f.extend(ft);
            (Series::polynomial(&g, order), Series::polynomial(&f, order))
        })
}

fn normalized_almost(order: usize) -> impl Strategy<Value = AlmostRiordanSpec> {
    (proptest::collection::vec(small_rat(), order), normalized_pair(order)).prop_map(
        move |(dt, (g, f))| {
            let mut d = vec![Rational::one()];
            d.extend(dt);
            AlmostRiordanSpec::new(Series::polynomial(&d, order), g, f).expect("normalized spec")
        },
    )
}

/// Constructible tier only: d(0) > 0, g(0) > 0, f'(0) > 0, otherwise free.
fn constructible_almost(order: usize) -> impl Strategy<Value = AlmostRiordanSpec> {
    (
        (pos_rat(), proptest::collection::vec(small_rat(), order)),
        (pos_rat(), proptest::collection::vec(small_rat(), order)),
        (pos_rat(), proptest::collection::vec(small_rat(), order - 1)),
    )
        .prop_map(move |((d0, dt), (g0, gt), (f1, ft))| {
            let mut d = vec![d0];
            d.extend(dt);
            let mut g = vec![g0];
            g.extend(gt);
            let mut f = vec![Rational::zero(), f1];
            f.extend(ft);
            AlmostRiordanSpec::new(
                Series::polynomial(&d, order),
                Series::polynomial(&g, order),
                Series::polynomial(&f, order),
            )
            .expect("constructible spec")
        })
}

fn quasi_spec(order: usize) -> impl Strategy<Value = QuasiRiordanSpec> {
    (
        (pos_rat(), proptest::collection::vec(small_rat(), order)),
        proptest::collection::vec(small_rat(), order),
    )
        .prop_map(move |((g0, gt), ft)| {
            let mut g = vec![g0];
            g.extend(gt);
            let mut f = vec![Rational::zero()];
            f.extend(ft);
            QuasiRiordanSpec::new(Series::polynomial(&g, order), Series::polynomial(&f, order))
                .expect("quasi spec")
        })
}

fn normalized_quasi(order: usize) -> impl Strategy<Value = QuasiRiordanSpec> {
    (
        proptest::collection::vec(small_rat(), order),
        proptest::collection::vec(small_rat(), order),
    )
        .prop_map(move |(gt, ft)| {
            let mut g = vec![Rational::one()];
            g.extend(gt);
            let mut f = vec![Rational::zero()];
            f.extend(ft);
            QuasiRiordanSpec::new(Series::polynomial(&g, order), Series::polynomial(&f, order))
                .expect("normalized quasi spec")
        })
}

fn riordan_spec(order: usize) -> impl Strategy<Value = RiordanSpec> {
    (
        (pos_rat(), any::<bool>(), proptest::collection::vec(small_rat(), order)),
        (pos_rat(), any::<bool>(), proptest::collection::vec(small_rat(), order - 1)),
    )
        .prop_map(move |((g0, gs, gt), (f1, fs, ft))| {
            let mut g = vec![if gs { -g0 } else { g0 }];
            g.extend(gt);
            let mut f = vec![Rational::zero(), if fs { -f1 } else { f1 }];
            f.extend(ft);
            RiordanSpec::new(Series::polynomial(&g, order), Series::polynomial(&f, order))
                .expect("riordan spec")
        })
}

fn nonneg_production() -> impl Strategy<Value = TridiagonalProduction> {
    (
        (pos_rat(), nonneg_rat(), nonneg_rat()),
        (pos_rat(), nonneg_rat(), nonneg_rat()),
        (nonneg_rat(), nonneg_rat()),
    )
        .prop_map(|((a0, a1, a2), (z0, z1, z2), (w0, w1))| TridiagonalProduction {
            a0,
            a1,
            a2,
            z0,
            z1,
            z2,
            w0,
            w1,
        })
}

/// Recovery needs a0 > 0 and z0 > 0 for a constructible result; the other
/// entries may take either sign.
fn recoverable_production() -> impl Strategy<Value = TridiagonalProduction> {
    (
        (pos_rat(), small_rat(), small_rat()),
        (pos_rat(), small_rat(), small_rat()),
        (small_rat(), small_rat()),
    )
        .prop_map(|((a0, a1, a2), (z0, z1, z2), (w0, w1))| TridiagonalProduction {
            a0,
            a1,
            a2,
            z0,
            z1,
            z2,
            w0,
            w1,
        })
}

fn expr_tree() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![small_rat().prop_map(Expr::Num), Just(Expr::T)];
    leaf.prop_recursive(3, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner.clone(), 0i64..=3).prop_map(|(a, k)| Expr::Pow(Box::new(a), k)),
            (inner, 1i64..=5, 1i64..=3).prop_map(|(a, n, d)| Expr::Div(
                Box::new(a),
                Box::new(Expr::Num(rat(n, d)))
            )),
        ]
    })
}

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(cfg(128))]

    #[test]
    fn series_ring_laws(a in series(8), b in series(8), c in series(8)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn mul_div_round_trip(a in series(8), b in unit_series(8)) {
        prop_assert_eq!((&a * &b).div(&b).unwrap(), a);
    }

    #[test]
    fn reversion_round_trips(f in delta_series(ORD)) {
        let rev = f.reversion().unwrap();
        let t = Series::t(ORD);
        prop_assert_eq!(f.compose(&rev).unwrap(), t.clone());
        prop_assert_eq!(rev.compose(&f).unwrap(), t);
    }

    #[test]
    fn sqrt_inverts_squaring(u in unit_series(8)) {
        let u = if u.constant_term().is_negative() { -&u } else { u };
        let s = &u * &u;
        prop_assert_eq!(s.sqrt().unwrap(), u);
    }

    #[test]
    fn expr_display_parse_eval_round_trip(e in expr_tree()) {
        let printed = e.to_string();
        let reparsed = parse_expr(&printed).unwrap();
        let direct = expr::eval(&e, 8).unwrap();
        let via_text = expr::eval(&reparsed, 8).unwrap();
        prop_assert_eq!(direct, via_text);
    }

    #[test]
    fn matrix_csv_json_round_trips(
        rows in 1usize..=5,
        cols in 1usize..=5,
        seed in proptest::collection::vec(small_rat(), 25),
    ) {
        let mut it = seed.into_iter();
        let data: Vec<Vec<Rational>> = (0..rows)
            .map(|_| (0..cols).map(|_| it.next().unwrap()).collect())
            .collect();
        let m = MatrixWindow::from_rows(data).unwrap();
        prop_assert_eq!(MatrixWindow::from_csv(&m.to_csv()).unwrap(), m.clone());
        let json = serde_json::to_string(&m).unwrap();
        prop_assert_eq!(serde_json::from_str::<MatrixWindow>(&json).unwrap(), m);
    }

    #[test]
    fn tp_report_serde_round_trips(spec in constructible_almost(ORD)) {
        let r = tp_check(&spec.window(6, 6).unwrap(), 3, tp::Strategy::All);
        let json = serde_json::to_string(&r).unwrap();
        prop_assert_eq!(serde_json::from_str::<TpReport>(&json).unwrap(), r);
    }
}

proptest! {
    #![proptest_config(cfg(100))]

    #[test]
    fn almost_product_matches_window_product(
        a in normalized_almost(ORD),
        b in normalized_almost(ORD),
    ) {
        let prod = a.multiply(&b).unwrap();
        let wa = a.window(8, 8).unwrap();
        let wb = b.window(8, 8).unwrap();
        prop_assert_eq!(prod.window(8, 8).unwrap(), wa.mul(&wb).unwrap());
    }

    #[test]
    fn quasi_product_matches_window_product(
        lhs in quasi_spec(ORD),
        rhs in normalized_quasi(ORD),
    ) {
        let prod = lhs.multiply(&rhs).unwrap();
        let wl = lhs.window(8, 8).unwrap();
        let wr = rhs.window(8, 8).unwrap();
        prop_assert_eq!(prod.window(8, 8).unwrap(), wl.mul(&wr).unwrap());
    }

    #[test]
    fn riordan_quasi_factorization_holds(spec in riordan_spec(ORD)) {
        prop_assert!(verify_quasi_factorization(&spec, 8).unwrap());
    }

    #[test]
    fn semidirect_factor_windows_multiply_back(spec in constructible_almost(ORD)) {
        let (quasi, tail) = spec.semidirect_factors().unwrap();
        let w = spec.window(8, 8).unwrap();
        let parts = quasi.window(8, 8).unwrap().mul(&tail.window(8, 8).unwrap()).unwrap();
        prop_assert_eq!(w, parts);
    }

    #[test]
    fn production_round_trip(spec in normalized_almost(ORD)) {
        let azw = azw_from_almost(&spec, 6).unwrap();
        let from_azw = production_from_azw(&azw, 6).unwrap();
        let w = spec.window(7, 6).unwrap();
        prop_assert_eq!(from_azw, extract_production(&w).unwrap());
        prop_assert!(check_production_identity(&spec, &azw, 6).unwrap());
    }

    #[test]
    fn tridiagonal_recovery_round_trips(p in recoverable_production(), d0 in pos_rat()) {
        let spec = recover_from_tridiagonal(&p, &d0, ORD).unwrap();
        prop_assert_eq!(spec.d().constant_term(), &d0);
        let azw = azw_from_almost(&spec, 6).unwrap();
        prop_assert_eq!(
            azw.a.clone(),
            Series::polynomial(&[p.a0.clone(), p.a1.clone(), p.a2.clone()], 6)
        );
        prop_assert_eq!(
            azw.z.clone(),
            Series::polynomial(&[p.z0.clone(), p.z1.clone(), p.z2.clone()], 6)
        );
        prop_assert_eq!(
            azw.w.clone(),
            Series::polynomial(&[p.w0.clone(), p.w1.clone()], 6)
        );
        prop_assert!(check_production_identity(&spec, &azw, 6).unwrap());
    }

    #[test]
    fn recovered_f_satisfies_a_relation(p in recoverable_production()) {
        let spec = recover_from_tridiagonal(&p, &Rational::one(), ORD).unwrap();
        let f = spec.f();
        let quad = (f * f).mul_tpow(1).scale(&p.a2).truncate(ORD);
        let linear = &f.mul_tpow(1).scale(&p.a1).truncate(ORD) - f;
        let constant = Series::t(ORD).scale(&p.a0);
        let residue = &(&quad + &linear) + &constant;
        prop_assert_eq!(residue, Series::constant(Rational::zero(), ORD));
    }

    #[test]
    fn unit_d_reduces_to_riordan((g, f) in normalized_pair(ORD)) {
        let riordan = RiordanSpec::new(g.clone(), f.clone()).unwrap();
        let almost = AlmostRiordanSpec::new(Series::one(ORD), g, f).unwrap();
        let wa = almost.window(7, 7).unwrap();
        let wr = riordan.window(6, 6).unwrap();
        prop_assert_eq!(wa.clone(), MatrixWindow::identity(1).direct_sum(&wr));
        let ra = tp_check(&wa, 3, tp::Strategy::All);
        let rr = tp_check(&wr, 3, tp::Strategy::All);
        prop_assert_eq!(ra.verdict, rr.verdict);
    }
}

proptest! {
    #![proptest_config(cfg(64))]

    #[test]
    fn det_t_closed_matches_recurrence(a0 in small_rat(), a1 in small_rat(), a2 in small_rat()) {
        for n in 1..=14 {
            prop_assert_eq!(
                det_t_closed(&a0, &a1, &a2, n),
                det_t_recurrence(&a0, &a1, &a2, n)
            );
        }
    }

    #[test]
    fn det_t_closed_matches_on_split_discriminant(
        p in nonneg_rat(),
        q in nonneg_rat(),
        a0 in pos_rat(),
    ) {
        // roots p and q: a1 = p + q, a0 a2 = p q, discriminant (p - q)^2
        let a1 = &p + &q;
        let a2 = &p * &q / &a0;
        for n in 1..=20 {
            prop_assert_eq!(
                det_t_closed(&a0, &a1, &a2, n),
                det_t_recurrence(&a0, &a1, &a2, n)
            );
        }
    }

    #[test]
    fn det_t_closed_matches_on_double_root(k in nonneg_rat(), a0 in pos_rat()) {
        let a1 = &k + &k;
        let a2 = &k * &k / &a0;
        for n in 1..=20 {
            prop_assert_eq!(
                det_t_closed(&a0, &a1, &a2, n),
                det_t_recurrence(&a0, &a1, &a2, n)
            );
        }
    }

    #[test]
    fn det_j_matches_leading_minor(p in nonneg_production()) {
        for n in 1..=7 {
            prop_assert_eq!(det_j(&p, n), p.production_window(n).det());
        }
    }

    #[test]
    fn continuant_matches_interior_minor(p in nonneg_production()) {
        let w = p.production_window(8);
        for n in 1..=5 {
            let idx: Vec<usize> = (2..2 + n).collect();
            prop_assert_eq!(
                minor(&w, &idx, &idx).unwrap(),
                det_t_recurrence(&p.a0, &p.a1, &p.a2, n)
            );
        }
    }
}

proptest! {
    #![proptest_config(cfg(48))]

    #[test]
    fn tp_check_is_monotone_in_order(spec in constructible_almost(ORD)) {
        let w = spec.window(7, 7).unwrap();
        let hi = tp_check(&w, 4, tp::Strategy::All);
        let lo = tp_check(&w, 2, tp::Strategy::All);
        if hi.verdict == Verdict::WindowTp {
            prop_assert_eq!(lo.verdict, Verdict::WindowTp);
        }
        if lo.verdict == Verdict::NotTp {
            prop_assert_eq!(hi.verdict, Verdict::NotTp);
        }
    }

    #[test]
    fn inner_block_failure_propagates(spec in constructible_almost(ORD)) {
        // rows and columns >= 1 of (d | g, f) hold exactly the (g, f) window
        let w = spec.window(8, 8).unwrap();
        let inner = w.block(1, 1, 7, 7);
        let riordan = RiordanSpec::new(spec.g().clone(), spec.f().clone()).unwrap();
        prop_assert_eq!(inner.clone(), riordan.window(7, 7).unwrap());
        if tp_check(&inner, 3, tp::Strategy::All).verdict == Verdict::NotTp {
            prop_assert_eq!(tp_check(&w, 3, tp::Strategy::All).verdict, Verdict::NotTp);
        }
    }

    #[test]
    fn tridiagonal_verdicts_match_window_evidence(p in nonneg_production()) {
        match tp_verdict(&p) {
            TriVerdict::Tp => {
                let j = p.production_window(12);
                prop_assert_eq!(jacobi_tp_check(&j).unwrap().verdict, Verdict::WindowTp);
                let spec = recover_from_tridiagonal(&p, &Rational::one(), 9).unwrap();
                let w = spec.window(8, 8).unwrap();
                prop_assert_eq!(tp_check(&w, 4, tp::Strategy::All).verdict, Verdict::WindowTp);
            }
            TriVerdict::NotTp => {
                let wit = first_negative_contiguous_minor(&p).unwrap();
                prop_assert!(wit.value.is_negative());
                let need = wit.start + wit.size;
                if need <= 12 {
                    let j = p.production_window(need);
                    let idx: Vec<usize> = (wit.start..need).collect();
                    prop_assert_eq!(minor(&j, &idx, &idx).unwrap(), wit.value);
                }
            }
            TriVerdict::Inapplicable => {
                prop_assert!(false, "nonnegative data must be decidable");
            }
        }
    }

    #[test]
    fn one_root_family_regions_recover_tp_windows(
        which in 0usize..2,
        i in 0u8..=12,
        j in 0u8..=8,
    ) {
        // the one-root families: the printed region equals the exact criterion
        let (family, alpha, beta) = if which == 0 {
            let alpha = rat_int(2) + rat(i as i64, 4);
            let beta = (Rational::one() - rat_int(2) / &alpha) * rat(j as i64, 8);
            (RegionFamily::Azw1, alpha, beta)
        } else {
            let alpha = rat(i as i64, 4);
            let beta = &alpha * &rat(j as i64, 32);
            (RegionFamily::Azw2, alpha, beta)
        };
        prop_assert!(region_check(family, &alpha, &beta).unwrap());
        let p = tridiagonal_params(family, &alpha, &beta);
        prop_assert_eq!(tp_verdict(&p), TriVerdict::Tp);
        let spec = recover_from_tridiagonal(&p, &Rational::one(), 9).unwrap();
        let w = spec.window(8, 8).unwrap();
        prop_assert_eq!(tp_check(&w, 3, tp::Strategy::All).verdict, Verdict::WindowTp);
    }
}
