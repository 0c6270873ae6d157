//! Adjunction, Chern numbers and the inequality chain on hand-built and
//! random resolution data.

mod common;

use common::{fixtures, random_scenarios, smooth_transverse};
use logsurf_core::bmy::{
    boundoldpoints, chain_validators, chern_data, discriminant_inequality, main_quadratic, main_quadratic_coefficients,
    reduction_data,
};
use logsurf_core::rational::{int, rat, Rational};
use logsurf_core::resolution::check_adjunction;
use logsurf_core::scenario::Scenario;
use num_traits::Signed;

fn grid(n: i64) -> impl Iterator<Item = Rational> {
    (0..=n).map(move |k| rat(k, n))
}

/// `c₂` as the orbifold Euler number: remove the points under `E′`, then
/// weight the open part of `C̃` by `1 − α`.
fn c2_orbifold(sc: &Scenario, alpha: &Rational) -> Rational {
    let r = sc.resolved();
    let inv = sc.invariants();
    let s_prime = int(r.datum().s_prime() as i64);
    let e_prime_dot_c = r.lattice().intersect(&r.exceptional_off_boundary(), r.c_tilde()).unwrap();
    &inv.e_open_surface - s_prime - alpha * (&inv.e_open_curve - e_prime_dot_c)
}

#[test]
fn adjunction_on_fixtures() {
    for f in fixtures() {
        let adj = check_adjunction(f.scenario.resolved()).unwrap();
        assert!(adj.holds(), "{}: {} vs {}", f.name, adj.lhs, adj.rhs);
        assert!(adj.genus_consistent, "{}", f.name);
    }
}

#[test]
fn adjunction_on_random_data() {
    for sc in random_scenarios(11, 200) {
        let adj = check_adjunction(sc.resolved()).unwrap();
        assert!(adj.holds() && adj.genus_consistent, "{:?} gives {adj:?}", sc.datum());
    }
}

#[test]
fn e_prime_dot_c_two_ways() {
    for sc in random_scenarios(12, 200) {
        let r = sc.resolved();
        let direct = r.lattice().intersect(&r.exceptional_off_boundary(), r.c_tilde()).unwrap();
        let mut formula = int(0);
        for c in r.datum().centers() {
            match c.stage {
                logsurf_core::Stage::S1 => formula += int(c.m as i64),
                logsurf_core::Stage::Late1 => formula -= int(c.m as i64 * c.epsilon as i64),
                _ => {}
            }
        }
        assert_eq!(direct, formula, "{:?}", sc.datum());
    }
}

#[test]
fn chern_numbers_two_ways() {
    let mut scenarios: Vec<Scenario> = fixtures().into_iter().map(|f| f.scenario).collect();
    scenarios.extend(random_scenarios(13, 100));
    for sc in &scenarios {
        for alpha in grid(6) {
            let ch = chern_data(sc, &alpha).unwrap();
            assert_eq!(ch.c2_norm, c2_orbifold(sc, &alpha), "{:?} at {alpha}", sc.datum());
            let lat = sc.resolved().lattice();
            assert_eq!(lat.self_intersection(&ch.d_alpha).unwrap(), ch.c1sq_norm);
        }
    }
}

#[test]
fn quartic_line_quadratic() {
    let sc = smooth_transverse();
    assert_eq!(main_quadratic_coefficients(sc.invariants()), [int(20), int(4), int(-1)]);
    for alpha in grid(100) {
        let q = main_quadratic(sc.invariants(), &alpha);
        assert_eq!(q, int(20) + int(4) * &alpha - &alpha * &alpha);
        assert!(!q.is_negative());
    }
}

#[test]
fn discriminant_minimizer() {
    let mut scenarios: Vec<Scenario> = fixtures().into_iter().map(|f| f.scenario).collect();
    scenarios.extend(random_scenarios(14, 100));
    for sc in &scenarios {
        let inv = sc.invariants();
        let rep = discriminant_inequality(inv, true);
        if let Some(a0) = &rep.alpha0 {
            let lead = &inv.c_sq + int(3) * &inv.kd_dot_c + int(3) * &inv.e_open_curve;
            assert_eq!(main_quadratic(inv, a0) * lead, -rep.value.clone());
        }
    }
}

#[test]
fn old_points_grid() {
    for m in 2..=50u32 {
        for alpha in grid(100) {
            let (lhs, rhs) = boundoldpoints(m, &alpha);
            assert!(lhs <= rhs, "m = {m}, alpha = {alpha}");
        }
    }
}

fn chain_failures(sc: &Scenario, alphas: impl Iterator<Item = Rational>) -> Vec<String> {
    let mut out = Vec::new();
    for alpha in alphas {
        let ch = chern_data(sc, &alpha).unwrap();
        let red = reduction_data(sc, &ch).unwrap();
        let rep = chain_validators(sc, &ch, &red);
        for c in rep.checks.iter().filter(|c| !c.holds()) {
            out.push(format!("alpha {alpha}: {} {:?}: {} {} {}", c.name, c.index, c.lhs, c.relation, c.rhs));
        }
    }
    out
}

#[test]
fn chain_on_fixtures() {
    for f in fixtures() {
        let bad = chain_failures(&f.scenario, grid(20));
        assert!(bad.is_empty(), "{}: {bad:#?}", f.name);
    }
}

#[test]
fn chain_on_random_data() {
    for sc in random_scenarios(15, 60) {
        let bad = chain_failures(&sc, grid(4));
        assert!(bad.is_empty(), "{:?}: {bad:#?}", sc.datum());
    }
}
