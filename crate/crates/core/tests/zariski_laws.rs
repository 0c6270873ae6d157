//! Laws of the supported Zariski decomposition on random curve-like
//! lattices, checked against the brute-force oracle.

mod common;

use common::{grow_cycle, random_definite_cycle, random_effective, random_lattice, rng};
use logsurf_core::lattice::{Cycle, Divisor, SurfaceModel};
use logsurf_core::rational::{int, Rational};
use logsurf_core::zariski::{zariski_absolute, zariski_oracle, zariski_support, ZariskiError};
use proptest::prelude::*;

fn instance(seed: u64) -> (SurfaceModel, Divisor, Cycle) {
    let mut r = rng(seed);
    loop {
        let model = random_lattice(&mut r);
        let e = random_definite_cycle(&mut r, &model);
        if e.is_empty() {
            continue;
        }
        let d = random_effective(&mut r, &model);
        return (model, d, e);
    }
}

/// Same lattice with a numerically trivial class `Z` appended.
fn with_trivial_class(model: &SurfaceModel) -> SurfaceModel {
    let n = model.classes().len();
    let mut classes = model.classes().to_vec();
    classes.push("Z".into());
    let mut m: Vec<Vec<Rational>> = model.matrix().iter().map(|row| {
        let mut row = row.clone();
        row.push(int(0));
        row
    }).collect();
    m.push(vec![int(0); n + 1]);
    SurfaceModel::new(classes, m, Divisor::zero(), 0, vec![]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn fixed_point_matches_oracle(seed in any::<u64>()) {
        let (model, d, e) = instance(seed);
        let fast = zariski_support(&d, &e, &model).unwrap();
        let slow = zariski_oracle(&d, &e, &model).unwrap();
        prop_assert!(fast.certificate.holds());
        prop_assert_eq!(&fast.positive, &slow.positive);
        prop_assert_eq!(&fast.negative, &slow.negative);
    }

    #[test]
    fn monotone_in_divisor(seed in any::<u64>()) {
        let (model, d, e) = instance(seed);
        let mut r = rng(seed.wrapping_add(1));
        let bigger = &d + &random_effective(&mut r, &model);
        let small = zariski_support(&d, &e, &model).unwrap();
        let large = zariski_support(&bigger, &e, &model).unwrap();
        prop_assert!(small.positive.leq(&large.positive));
    }

    #[test]
    fn monotone_in_cycle(seed in any::<u64>()) {
        let (model, d, e) = instance(seed);
        let mut r = rng(seed.wrapping_add(2));
        let wide = grow_cycle(&mut r, &model, &e);
        let narrow_dec = zariski_support(&d, &e, &model).unwrap();
        let wide_dec = zariski_support(&d, &wide, &model).unwrap();
        prop_assert!(narrow_dec.negative.leq(&wide_dec.negative));
        prop_assert!(wide_dec.positive.leq(&narrow_dec.positive));
        let n_small = narrow_dec.negative_sq(&model).unwrap();
        let n_large = wide_dec.negative_sq(&model).unwrap();
        prop_assert!(int(0) >= n_small && n_small >= n_large);
        prop_assert!(narrow_dec.positive_sq(&model).unwrap() <= wide_dec.positive_sq(&model).unwrap());
    }

    #[test]
    fn absolute_dominates(seed in any::<u64>()) {
        let (model, d, e) = instance(seed);
        let sup = zariski_support(&d, &e, &model).unwrap();
        match zariski_absolute(&d, &model) {
            Ok(abs) => {
                prop_assert!(sup.negative.leq(&abs.negative));
                prop_assert!(sup.positive_sq(&model).unwrap() <= abs.positive_sq(&model).unwrap());
            }
            Err(ZariskiError::ModelInconsistent(_)) | Err(ZariskiError::CertificateFailed(_)) => {}
            Err(other) => prop_assert!(false, "unexpected error {other}"),
        }
    }

    #[test]
    fn numerically_equivalent_divisors_share_negative_part(seed in any::<u64>()) {
        let (model, d, e) = instance(seed);
        let wide = with_trivial_class(&model);
        let shifted = &d + &Divisor::from_terms([("Z", int(2))]);
        let a = zariski_support(&d, &e, &wide).unwrap();
        let b = zariski_support(&shifted, &e, &wide).unwrap();
        prop_assert_eq!(a.negative, b.negative);
    }

    #[test]
    fn nef_divisors_are_their_own_positive_part(seed in any::<u64>()) {
        let (model, d, e) = instance(seed);
        let p = zariski_support(&d, &e, &model).unwrap().positive;
        let again = zariski_support(&p, &e, &model).unwrap();
        prop_assert!(again.negative.is_zero());
    }
}
