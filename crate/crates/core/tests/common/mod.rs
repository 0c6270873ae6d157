//! Fixtures and random generators shared by the integration tests.

#![allow(dead_code)]

use logsurf_core::lattice::{BoundaryComponent, Cycle, Divisor, SurfaceModel};
use logsurf_core::rational::{int, rat, Rational};
use logsurf_core::resolution::{BlowupCenter, ResolutionDatum, Stage};
use logsurf_core::scenario::{Assertions, Scenario};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    let offset = std::env::var("LOGSURF_SEED").ok().and_then(|s| s.parse::<u64>().ok()).unwrap_or(0);
    ChaCha8Rng::seed_from_u64(seed ^ offset)
}

/// `ℙ²` with hyperplane class `H` and smooth boundary curves of the given
/// degrees, pairwise transverse.
pub fn p2(boundary_degrees: &[i64]) -> SurfaceModel {
    let mut classes = vec!["H".to_string()];
    let mut degs = vec![1i64];
    let mut comps = Vec::new();
    for (i, &d) in boundary_degrees.iter().enumerate() {
        let name = format!("D{}", i + 1);
        classes.push(name.clone());
        degs.push(d);
        comps.push(BoundaryComponent { class: name, genus: ((d - 1) * (d - 2) / 2) as u32 });
    }
    let matrix = degs.iter().map(|a| degs.iter().map(|b| int(a * b)).collect()).collect();
    SurfaceModel::new(classes, matrix, Divisor::from_terms([("H", int(-3))]), 3, comps).unwrap()
}

pub fn h(d: i64) -> Divisor {
    Divisor::from_terms([("H", int(d))])
}

/// Arithmetic genus of a plane curve of degree `d` minus the `δ`-invariant
/// read off the multiplicities.
pub fn noether_genus(d: i64, centers: &[BlowupCenter]) -> Option<u32> {
    let mut g = (d - 1) * (d - 2) / 2;
    for c in centers {
        g -= (c.m as i64) * (c.m as i64 - 1) / 2;
    }
    u32::try_from(g).ok()
}

pub struct Fixture {
    pub name: &'static str,
    pub scenario: Scenario,
}

fn scenario(boundary: &[i64], degree: i64, centers: Vec<BlowupCenter>, kappa: bool) -> Scenario {
    let genus = noether_genus(degree, &centers).expect("nonnegative genus");
    let datum = ResolutionDatum::new(centers, genus).unwrap();
    let total: i64 = boundary.iter().sum();
    let (assertions, rep) = if kappa && total >= 3 {
        let nef = total >= 3;
        (Assertions { kappa_nonneg: true, nef, big: total > 3 }, Some(h(total - 3)))
    } else {
        (Assertions::default(), None)
    };
    Scenario::new(p2(boundary), h(degree), datum, assertions, rep).unwrap()
}

pub fn smooth_transverse() -> Scenario {
    scenario(&[4], 1, vec![], true)
}

pub fn sextics_line() -> Scenario {
    scenario(&[6, 6], 1, vec![], true)
}

pub fn nodal_cubic() -> Scenario {
    scenario(&[], 3, vec![BlowupCenter::new(Stage::S1, 2, 0, [])], false)
}

pub fn tacnodal_quartic() -> Scenario {
    scenario(
        &[],
        4,
        vec![BlowupCenter::new(Stage::S1, 2, 0, []), BlowupCenter::new(Stage::Late1, 2, 0, [1])],
        false,
    )
}

/// Every hand-built scenario; those with a boundary of degree at least 3
/// carry `κ ≥ 0` and the representative `(deg D − 3)H`.
pub fn fixtures() -> Vec<Fixture> {
    let s1 = |m| BlowupCenter::new(Stage::S1, m, 0, []);
    let cusp = vec![s1(2), BlowupCenter::new(Stage::Late1, 1, 0, [1]), BlowupCenter::new(Stage::Late1, 1, 0, [1, 2])];
    let tangent = vec![BlowupCenter::new(Stage::S2, 1, 1, []), BlowupCenter::new(Stage::Late2, 1, 1, [1])];
    let tacnode = vec![s1(2), BlowupCenter::new(Stage::Late1, 2, 0, [1])];
    vec![
        Fixture { name: "line vs quartic", scenario: smooth_transverse() },
        Fixture { name: "line vs two sextics", scenario: sextics_line() },
        Fixture { name: "nodal cubic", scenario: nodal_cubic() },
        Fixture { name: "tacnodal quartic", scenario: tacnodal_quartic() },
        Fixture { name: "cuspidal cubic", scenario: scenario(&[], 3, cusp.clone(), false) },
        Fixture { name: "line tangent to conic", scenario: scenario(&[2], 1, tangent.clone(), false) },
        Fixture { name: "nodal cubic vs quartic", scenario: scenario(&[4], 3, vec![s1(2)], true) },
        Fixture { name: "cuspidal cubic vs quartic", scenario: scenario(&[4], 3, cusp, true) },
        Fixture { name: "tacnodal quartic vs cubic", scenario: scenario(&[3], 4, tacnode, true) },
        Fixture { name: "line tangent to quartic", scenario: scenario(&[4], 1, tangent.clone(), true) },
        Fixture { name: "line tangent to sextic pair", scenario: scenario(&[6, 6], 1, tangent, true) },
        Fixture { name: "triple point quintic vs two cubics", scenario: scenario(&[3, 3], 5, vec![s1(3)], true) },
    ]
}

/// Random curve-like lattice: at most six classes, diagonal in `{−3..3}`,
/// off-diagonal entries in `{0..3}`.
pub fn random_lattice(rng: &mut ChaCha8Rng) -> SurfaceModel {
    let n = rng.gen_range(2..=6);
    let classes: Vec<String> = (0..n).map(|i| format!("L{i}")).collect();
    let mut m = vec![vec![Rational::from_integer(0.into()); n]; n];
    for i in 0..n {
        m[i][i] = int(rng.gen_range(-3..=3));
        for j in i + 1..n {
            let v = int(rng.gen_range(0..=3));
            m[i][j] = v.clone();
            m[j][i] = v;
        }
    }
    SurfaceModel::new(classes, m, Divisor::zero(), 0, vec![]).unwrap()
}

/// Random effective divisor with coefficients in `{0, 1/2, 1, ..., 3}`.
pub fn random_effective(rng: &mut ChaCha8Rng, model: &SurfaceModel) -> Divisor {
    loop {
        let d = Divisor::from_terms(
            model.classes().iter().map(|c| (c.clone(), rat(rng.gen_range(0..=6), 2))),
        );
        if !d.is_zero() {
            return d;
        }
    }
}

/// Random negative definite cycle, grown greedily from a shuffled order.
pub fn random_definite_cycle(rng: &mut ChaCha8Rng, model: &SurfaceModel) -> Cycle {
    let mut order: Vec<String> = model.classes().to_vec();
    order.shuffle(rng);
    let target = rng.gen_range(1..=order.len());
    let mut picked: Vec<String> = Vec::new();
    for c in order {
        if picked.len() == target {
            break;
        }
        let mut trial = picked.clone();
        trial.push(c);
        if model.is_negative_definite(&Cycle::new(trial.clone())).unwrap() {
            picked = trial;
        }
    }
    Cycle::new(picked)
}

/// Negative definite cycle containing `e`, when one with an extra class
/// exists.
pub fn grow_cycle(rng: &mut ChaCha8Rng, model: &SurfaceModel, e: &Cycle) -> Cycle {
    let mut rest: Vec<&String> = model.classes().iter().filter(|c| !e.contains(c)).collect();
    rest.shuffle(rng);
    let mut out = e.clone();
    for c in rest {
        let trial = out.union(&Cycle::new([c.clone()]));
        if model.is_negative_definite(&trial).unwrap() {
            out = trial;
            if rng.gen_bool(0.5) {
                break;
            }
        }
    }
    out
}

/// Random centers for a point off `D` (S1 followed by late points), obeying
/// the proximity inequality and `ε ≤ 1`.
fn random_tree(rng: &mut ChaCha8Rng, first: BlowupCenter, late_stage: Stage, offset: usize, budget: usize) -> Vec<BlowupCenter> {
    let mut tree = vec![first];
    // remaining capacity of each exceptional curve for proximate points
    let mut capacity: Vec<u32> = vec![tree[0].m];
    let mut delta_alive = tree[0].delta > 0 && late_stage == Stage::Late2;
    for _ in 0..budget {
        if !rng.gen_bool(0.6) {
            break;
        }
        let last = tree.len() - 1;
        // proximate to the last point, and possibly to its own free parent
        let mut prox = vec![last];
        if let Some(&p) = tree[last].proximity.iter().next() {
            if rng.gen_bool(0.3) {
                prox.push(p - offset - 1);
            }
        }
        let cap = prox.iter().map(|&p| capacity[p]).min().unwrap();
        if cap == 0 {
            break;
        }
        let m = rng.gen_range(1..=cap);
        for &p in &prox {
            capacity[p] -= m;
        }
        let delta = if late_stage == Stage::Late2 && prox.len() == 1 && delta_alive && rng.gen_bool(0.5) {
            1
        } else {
            delta_alive = false;
            0
        };
        let center = BlowupCenter::new(late_stage, m, delta, prox.iter().map(|&p| p + offset + 1));
        capacity.push(m);
        tree.push(center);
    }
    tree
}

/// Random consistent resolution data for a plane curve against transverse
/// smooth boundary curves. Returns `None` if the degree is too small for
/// the drawn singularities.
pub fn random_scenario(rng: &mut ChaCha8Rng) -> Option<Scenario> {
    let nb = rng.gen_range(0..=2);
    let boundary: Vec<i64> = (0..nb).map(|_| rng.gen_range(1..=6)).collect();
    let degree = rng.gen_range(1..=9);

    let mut s1_trees: Vec<Vec<BlowupCenter>> = Vec::new();
    for _ in 0..rng.gen_range(0..=2) {
        let m = rng.gen_range(2..=3);
        s1_trees.push(random_tree(rng, BlowupCenter::new(Stage::S1, m, 0, []), Stage::Late1, 0, 3));
    }
    let mut s2_trees: Vec<Vec<BlowupCenter>> = Vec::new();
    if nb > 0 {
        for _ in 0..rng.gen_range(0..=2) {
            let m = rng.gen_range(1..=2);
            let delta = if nb == 2 && rng.gen_bool(0.3) { 2 } else { 1 };
            s2_trees.push(random_tree(rng, BlowupCenter::new(Stage::S2, m, delta, []), Stage::Late2, 0, 3));
        }
    }

    // Lay out S1, S2, Late1, Late2 and renumber proximity.
    let firsts: Vec<&Vec<BlowupCenter>> = s1_trees.iter().chain(&s2_trees).collect();
    let mut centers: Vec<BlowupCenter> = firsts.iter().map(|t| t[0].clone()).collect();
    let mut late1 = Vec::new();
    let mut late2 = Vec::new();
    let mut index_of: Vec<Vec<usize>> = firsts.iter().enumerate().map(|(i, _)| vec![i + 1]).collect();
    let mut next = centers.len() + 1;
    for (k, tree) in firsts.iter().enumerate() {
        if tree[0].stage == Stage::S1 {
            for c in &tree[1..] {
                late1.push((k, c.clone()));
            }
        }
    }
    for (k, tree) in firsts.iter().enumerate() {
        if tree[0].stage == Stage::S2 {
            for c in &tree[1..] {
                late2.push((k, c.clone()));
            }
        }
    }
    for (k, c) in late1.into_iter().chain(late2) {
        index_of[k].push(next);
        next += 1;
        let mut c = c;
        c.proximity = c.proximity.iter().map(|&p| index_of[k][p - 1]).collect();
        centers.push(c);
    }

    let genus = noether_genus(degree, &centers)?;
    // intersection with D must cover the multiplicities at points over C ∩ D
    let dc: i64 = boundary.iter().sum::<i64>() * degree;
    let used: i64 = centers.iter().map(|c| c.m as i64 * c.delta as i64).sum();
    if used > dc {
        return None;
    }
    let datum = ResolutionDatum::new(centers, genus).ok()?;
    let total: i64 = boundary.iter().sum();
    let (assertions, rep) = if total >= 3 {
        (Assertions { kappa_nonneg: true, nef: true, big: total > 3 }, Some(h(total - 3)))
    } else {
        (Assertions::default(), None)
    };
    Scenario::new(p2(&boundary), h(degree), datum, assertions, rep).ok()
}

/// Draw random scenarios until `n` have been produced.
pub fn random_scenarios(seed: u64, n: usize) -> Vec<Scenario> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        if let Some(s) = random_scenario(&mut r) {
            out.push(s);
        }
    }
    out
}
