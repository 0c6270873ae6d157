//! Inputs shared by the benchmarks under `benches/`.

use logsurf_core::{int, Assertions, BlowupCenter, BoundaryComponent, Divisor, ResolutionDatum, Scenario, Stage, SurfaceModel};

/// `ℙ²` with smooth, pairwise transverse boundary curves of the given degrees.
pub fn plane(boundary_degrees: &[i64]) -> SurfaceModel {
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
    SurfaceModel::new(classes, matrix, Divisor::from_terms([("H", int(-3))]), 3, comps).expect("valid plane model")
}

/// Tacnodal quartic against a smooth cubic, with `K + D ≡ 0`.
pub fn tacnodal_quartic() -> Scenario {
    let centers = vec![BlowupCenter::new(Stage::S1, 2, 0, []), BlowupCenter::new(Stage::Late1, 2, 0, [1])];
    let datum = ResolutionDatum::new(centers, 1).expect("valid resolution");
    let asr = Assertions { kappa_nonneg: true, nef: true, big: false };
    Scenario::new(plane(&[3]), Divisor::from_terms([("H", int(4))]), datum, asr, Some(Divisor::zero()))
        .expect("valid scenario")
}

/// Cuspidal cubic against a smooth quartic: three blow-ups over the cusp.
pub fn cuspidal_cubic() -> Scenario {
    let centers = vec![
        BlowupCenter::new(Stage::S1, 2, 0, []),
        BlowupCenter::new(Stage::Late1, 1, 0, [1]),
        BlowupCenter::new(Stage::Late1, 1, 0, [1, 2]),
    ];
    let datum = ResolutionDatum::new(centers, 0).expect("valid resolution");
    let asr = Assertions { kappa_nonneg: true, nef: true, big: true };
    Scenario::new(plane(&[4]), Divisor::from_terms([("H", int(3))]), datum, asr, Some(Divisor::from_terms([("H", int(1))])))
        .expect("valid scenario")
}

/// Line transverse to two sextics.
pub fn sextics_line() -> Scenario {
    let datum = ResolutionDatum::new(vec![], 0).expect("valid resolution");
    let asr = Assertions { kappa_nonneg: true, nef: true, big: true };
    Scenario::new(plane(&[6, 6]), Divisor::from_terms([("H", int(1))]), datum, asr, Some(Divisor::from_terms([("H", int(9))])))
        .expect("valid scenario")
}
