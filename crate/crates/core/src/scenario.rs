//! A complete input: surface, boundary, curve, resolution data and the
//! assertions the user vouches for.

use num_traits::Signed;

use crate::lattice::{Divisor, LatticeError, SurfaceModel};
use crate::rational::{int, Rational};
use crate::resolution::{build_resolved_lattice, euler_open_curve, euler_open_surface, ResolutionDatum, ResolutionError, ResolvedSurface};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScenarioError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error("representative of K + D is not effective: {0}")]
    RepresentativeNotEffective(Divisor),
    #[error("representative {0} is not numerically equivalent to K + D")]
    RepresentativeNotEquivalent(Divisor),
}

/// Properties of `K + D` that cannot be computed from intersection data.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Assertions {
    /// `κ(X, K + D) ≥ 0`.
    pub kappa_nonneg: bool,
    pub nef: bool,
    pub big: bool,
}

/// The numbers every evaluator is built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariants {
    /// `(K + D)²`
    pub kd_sq: Rational,
    /// `e(X ∖ D)`
    pub e_open_surface: Rational,
    /// `(K + D)·C`
    pub kd_dot_c: Rational,
    pub c_sq: Rational,
    /// `e(C ∖ D)`
    pub e_open_curve: Rational,
    pub d_dot_c: Rational,
    pub genus: u32,
    /// Number of blow-ups in the log resolution of `C + D`.
    pub centers: usize,
}

impl Invariants {
    /// `C ≅ ℙ¹` and `D·C ≤ 1`.
    pub fn is_smooth_d_rational(&self) -> bool {
        self.genus == 0 && self.centers == 0 && self.d_dot_c <= int(1)
    }

    /// Smooth and transverse to `D`: nothing to blow up.
    pub fn is_smooth_transverse(&self) -> bool {
        self.centers == 0
    }
}

#[derive(Debug, Clone)]
pub struct Scenario {
    model: SurfaceModel,
    curve: Divisor,
    assertions: Assertions,
    representative: Option<Divisor>,
    resolved: ResolvedSurface,
    invariants: Invariants,
}

impl Scenario {
    pub fn new(
        model: SurfaceModel,
        curve: Divisor,
        datum: ResolutionDatum,
        assertions: Assertions,
        representative: Option<Divisor>,
    ) -> Result<Self, ScenarioError> {
        let resolved = build_resolved_lattice(&model, &datum, &curve)?;
        let kd = model.log_canonical();
        if let Some(rep) = &representative {
            model.check_divisor(rep)?;
            if rep.terms().any(|(_, c)| c.is_negative()) {
                return Err(ScenarioError::RepresentativeNotEffective(rep.clone()));
            }
            if !model.numerically_equivalent(rep, &kd)? {
                return Err(ScenarioError::RepresentativeNotEquivalent(rep.clone()));
            }
        }
        let invariants = Invariants {
            kd_sq: model.self_intersection(&kd)?,
            e_open_surface: euler_open_surface(&model)?,
            kd_dot_c: model.intersect(&kd, &curve)?,
            c_sq: model.self_intersection(&curve)?,
            e_open_curve: euler_open_curve(&resolved)?,
            d_dot_c: model.intersect(&model.boundary_divisor(), &curve)?,
            genus: datum.genus(),
            centers: datum.len(),
        };
        Ok(Self { model, curve, assertions, representative, resolved, invariants })
    }

    pub fn model(&self) -> &SurfaceModel {
        &self.model
    }

    pub fn curve(&self) -> &Divisor {
        &self.curve
    }

    pub fn datum(&self) -> &ResolutionDatum {
        self.resolved.datum()
    }

    pub fn assertions(&self) -> &Assertions {
        &self.assertions
    }

    /// User-supplied effective divisor numerically equivalent to `K + D`.
    pub fn representative(&self) -> Option<&Divisor> {
        self.representative.as_ref()
    }

    pub fn resolved(&self) -> &ResolvedSurface {
        &self.resolved
    }

    pub fn invariants(&self) -> &Invariants {
        &self.invariants
    }
}
