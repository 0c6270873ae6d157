//! Interval soundness and the algebraic facts behind the degree bounds.

mod common;

use common::{h, p2, rng};
use logsurf_core::bounds::{
    a_b_constants, a_b_lambda, ceiling_identity, degree_bound_general, general_from_invariants, p_poly, r_plus,
    Quantity,
};
use logsurf_core::interval::{sqrt_interval, RationalInterval};
use logsurf_core::lattice::{BoundaryComponent, Divisor, SurfaceModel};
use logsurf_core::rational::{int, rat, Rational};
use logsurf_core::resolution::ResolutionDatum;
use logsurf_core::scenario::{Assertions, Scenario};
use logsurf_core::verdict::Verdict;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::Rng;

/// Bisection enclosure of `√v` of width at most `2^-bits`.
fn bisect_sqrt(v: &Rational, bits: u32) -> (Rational, Rational) {
    let mut lo = Rational::zero();
    let mut hi = if v > &Rational::one() { v.clone() } else { Rational::one() };
    let eps = Rational::new(BigInt::one(), BigInt::one() << bits);
    while &hi - &lo > eps {
        let mid = (&lo + &hi) / int(2);
        if &mid * &mid <= *v {
            lo = mid;
        } else {
            hi = mid;
        }
        // keep denominators small
        let scale = BigInt::one() << (bits + 2);
        lo = Rational::new((&lo * Rational::from_integer(scale.clone())).floor().to_integer(), scale.clone());
        hi = Rational::new((&hi * Rational::from_integer(scale.clone())).ceil().to_integer(), scale);
    }
    (lo, hi)
}

fn overlaps(a: &RationalInterval, lo: &Rational, hi: &Rational) -> bool {
    a.lo() <= hi && lo <= a.hi()
}

fn nonneg_rational() -> impl Strategy<Value = Rational> {
    (0u64..1_000_000_000, 1u64..1_000_000).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn sqrt_interval_is_sound(v in nonneg_rational(), bits in 8u32..=256) {
        let s = sqrt_interval(&v, bits).unwrap();
        prop_assert!(s.lo() * s.lo() <= v && v <= s.hi() * s.hi());
        let cap = if s.hi() > &Rational::one() { s.hi().clone() } else { Rational::one() };
        prop_assert!(s.width() <= cap * Rational::new(BigInt::one(), BigInt::one() << bits));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sqrt_interval_agrees_with_bisection(v in nonneg_rational()) {
        let s = sqrt_interval(&v, 64).unwrap();
        let (lo, hi) = bisect_sqrt(&v, 256);
        prop_assert!(overlaps(&s, &lo, &hi));
    }

    #[test]
    fn constants_contain_reference(k in 1i64..400, e in -50i64..400) {
        let (k, e) = (int(k), int(e));
        if let Some((a, b)) = a_b_constants(&k, &e, 64).unwrap() {
            let u = int(3) * &e - &k;
            let (rl, rh) = bisect_sqrt(&(int(2) * &k * &u), 256);
            let gap = &k - &e;
            let a_lo = (&rl + int(2) * &k) / &gap;
            let a_hi = (&rh + int(2) * &k) / &gap;
            prop_assert!(overlaps(&a, &a_lo, &a_hi));
            let b_lo = (&k * &u + int(2) * &e * &rl) / (int(2) * &gap);
            let b_hi = (&k * &u + int(2) * &e * &rh) / (int(2) * &gap);
            let (b_lo, b_hi) = if b_lo <= b_hi { (b_lo, b_hi) } else { (b_hi, b_lo) };
            prop_assert!(overlaps(&b, &b_lo, &b_hi));
        }
    }

    #[test]
    fn r_plus_dominates_and_brackets_root(sn in 0i64..300, gn in 0i64..1000) {
        let sigma = rat(1, 3) + rat(sn, 450);
        let gamma = rat(gn, 100);
        let rp = r_plus(&sigma, &gamma, 128).unwrap().unwrap();
        prop_assert_eq!(rp.ge_exact(&(int(3) * &gamma)), Verdict::Holds);
        prop_assert!(!p_poly(&sigma, &gamma, rp.lo()).is_negative());
        prop_assert!(!p_poly(&sigma, &gamma, rp.hi()).is_positive());
    }

    #[test]
    fn general_report_depends_on_invariants_only(seed in any::<u64>()) {
        let mut r = rng(seed);
        let scale = r.gen_range(1i64..=4);
        let (da, db) = (r.gen_range(3i64..=7), r.gen_range(1i64..=7));
        let plain = line_against(&[da, db], 1);
        let scaled = scaled_line_against(&[da, db], scale);
        let a = degree_bound_general(&plain, 64).unwrap();
        let b = degree_bound_general(&scaled, 64).unwrap();
        prop_assert_eq!(plain.invariants(), scaled.invariants());
        prop_assert_eq!(a, b);
    }
}

fn line_against(degrees: &[i64], curve: i64) -> Scenario {
    let total: i64 = degrees.iter().sum();
    let asr = Assertions { kappa_nonneg: true, nef: true, big: true };
    Scenario::new(p2(degrees), h(curve), ResolutionDatum::new(vec![], 0).unwrap(), asr, Some(h(total - 3))).unwrap()
}

/// The same surface written in the basis `G = H/s`, so `G² = 1/s²`.
fn scaled_line_against(degrees: &[i64], s: i64) -> Scenario {
    let mut classes = vec!["G".to_string()];
    let mut degs = vec![rat(1, s)];
    let mut comps = Vec::new();
    for (i, &d) in degrees.iter().enumerate() {
        let name = format!("B{}", i + 1);
        classes.push(name.clone());
        degs.push(int(d));
        comps.push(BoundaryComponent { class: name, genus: ((d - 1) * (d - 2) / 2) as u32 });
    }
    let matrix = degs.iter().map(|a| degs.iter().map(|b| a * b).collect()).collect();
    let model = SurfaceModel::new(classes, matrix, Divisor::from_terms([("G", int(-3 * s))]), 3, comps).unwrap();
    let total: i64 = degrees.iter().sum();
    let asr = Assertions { kappa_nonneg: true, nef: true, big: true };
    Scenario::new(
        model,
        Divisor::from_terms([("G", int(s))]),
        ResolutionDatum::new(vec![], 0).unwrap(),
        asr,
        Some(Divisor::from_terms([("G", int((total - 3) * s))])),
    )
    .unwrap()
}

#[test]
fn ceiling_identity_range() {
    for t in 0..=1000u32 {
        assert!(ceiling_identity(&BigInt::from(t)), "t = {t}");
    }
}

#[test]
fn a_lambda_cap_on_lambda_grid() {
    // (2/3, 1] in steps of 1/3000
    for k in 1..=1000i64 {
        let lambda = rat(2, 3) + rat(k, 3000);
        let (a, _) = a_b_lambda(&lambda, 128).unwrap().unwrap();
        let lhs = a.scale(&(&lambda + int(1))).div_exact(&(&lambda + rat(1, 2))).unwrap();
        let cap = int(50) / (&lambda / int(2) - rat(1, 3));
        assert_eq!(lhs.le_exact(&cap), Verdict::Holds, "lambda = {lambda}");
    }
}

#[test]
fn sextics_line_general_report() {
    let sc = line_against(&[6, 6], 1);
    let r = general_from_invariants(sc.invariants(), sc.assertions(), 64).unwrap();
    assert!(r.hypotheses_met());
    let Some(Quantity::Interval(bound)) = &r.bound else { panic!("no bound") };
    assert!(bound.lo() > &int(9));
    assert!(r.verdicts.iter().all(|v| v.verdict == Verdict::Holds), "{:?}", r.verdicts);
}
