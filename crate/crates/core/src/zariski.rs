//! Zariski decomposition of effective ℚ-divisors, relative to a negative
//! definite cycle or absolute (relative to all components of the divisor).
//!
//! Both variants use the Fujita-style fixed point: start from the curves
//! on which `D` is negative, solve for the negative part, and enlarge the
//! support with any curve on which the remainder is still negative.

use num_traits::{Signed, Zero};

use crate::lattice::{Cycle, Divisor, LatticeError, SurfaceModel};
use crate::linalg;
use crate::rational::Rational;

/// Default cap on the subset enumeration in [`zariski_oracle`].
pub const ORACLE_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ZariskiError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("divisor {0} is not effective")]
    NotEffective(Divisor),
    #[error("cycle {0} is not negative definite")]
    NotNegativeDefinite(Cycle),
    #[error("model inconsistent: forced support {0} is not negative definite")]
    ModelInconsistent(Cycle),
    #[error("invariant violated: decomposition fails `{0}`")]
    CertificateFailed(&'static str),
    #[error("oracle limited to {limit} components, got {size}")]
    OracleTooLarge { size: usize, limit: usize },
    #[error("oracle found {0} admissible decompositions, expected exactly one")]
    OracleNotUnique(usize),
}

/// Individually checked properties of a candidate decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Certificate {
    pub sums_to_divisor: bool,
    pub positive_effective: bool,
    pub negative_effective: bool,
    pub negative_supported_on_cycle: bool,
    pub negative_support_definite: bool,
    pub positive_nef_on_cycle: bool,
    pub positive_trivial_on_negative: bool,
    pub orthogonal: bool,
    pub squares_add: bool,
}

impl Certificate {
    fn checks(&self) -> [(&'static str, bool); 9] {
        [
            ("D = P + N", self.sums_to_divisor),
            ("P effective", self.positive_effective),
            ("N effective", self.negative_effective),
            ("supp N in cycle", self.negative_supported_on_cycle),
            ("supp N negative definite", self.negative_support_definite),
            ("P nef on cycle", self.positive_nef_on_cycle),
            ("P trivial on supp N", self.positive_trivial_on_negative),
            ("P.N = 0", self.orthogonal),
            ("D^2 = P^2 + N^2", self.squares_add),
        ]
    }

    pub fn holds(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn first_failure(&self) -> Option<&'static str> {
        self.checks().into_iter().find(|(_, ok)| !ok).map(|(name, _)| name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub positive: Divisor,
    pub negative: Divisor,
    /// Components actually carrying the negative part.
    pub support: Cycle,
    pub certificate: Certificate,
}

impl Decomposition {
    pub fn negative_sq(&self, model: &SurfaceModel) -> Result<Rational, LatticeError> {
        model.self_intersection(&self.negative)
    }

    pub fn positive_sq(&self, model: &SurfaceModel) -> Result<Rational, LatticeError> {
        model.self_intersection(&self.positive)
    }
}

/// Check every defining property of `D = P + N` relative to `cycle`.
pub fn certify(
    d: &Divisor,
    cycle: &Cycle,
    positive: &Divisor,
    negative: &Divisor,
    model: &SurfaceModel,
) -> Result<Certificate, LatticeError> {
    let nsupp = negative.support();
    let mut nef = true;
    let mut trivial = true;
    for c in cycle.iter() {
        let pc = model.intersect(positive, &Divisor::from_class(c.clone()))?;
        nef &= !pc.is_negative();
        if nsupp.contains(c) {
            trivial &= pc.is_zero();
        }
    }
    let d2 = model.self_intersection(d)?;
    let p2 = model.self_intersection(positive)?;
    let n2 = model.self_intersection(negative)?;
    Ok(Certificate {
        sums_to_divisor: &(positive + negative) == d,
        positive_effective: positive.is_effective(),
        negative_effective: negative.is_effective(),
        negative_supported_on_cycle: nsupp.is_subset(cycle),
        negative_support_definite: model.is_negative_definite(&nsupp)?,
        positive_nef_on_cycle: nef,
        positive_trivial_on_negative: trivial,
        orthogonal: model.intersect(positive, negative)?.is_zero(),
        squares_add: d2 == p2 + n2,
    })
}

/// Negative part supported on `s` with `N·Eᵢ = D·Eᵢ` for `Eᵢ ∈ s`.
fn solve_on(d: &Divisor, s: &Cycle, model: &SurfaceModel) -> Result<Option<Divisor>, LatticeError> {
    let gram = model.gram(s)?;
    let rhs: Vec<Rational> = s
        .iter()
        .map(|c| model.intersect(d, &Divisor::from_class(c.clone())))
        .collect::<Result<_, _>>()?;
    Ok(linalg::solve(&gram, &rhs)
        .map(|a| Divisor::from_terms(s.iter().cloned().zip(a))))
}

fn negative_against(d: &Divisor, candidates: &Cycle, model: &SurfaceModel) -> Result<Vec<String>, LatticeError> {
    let mut out = Vec::new();
    for c in candidates.iter() {
        if model.intersect(d, &Divisor::from_class(c.clone()))?.is_negative() {
            out.push(c.clone());
        }
    }
    Ok(out)
}

/// Fixed-point iteration over `candidates`. With `check_definite`, a
/// forced support that is not negative definite is reported as a model
/// inconsistency; otherwise the caller guarantees definiteness.
fn fujita(
    d: &Divisor,
    candidates: &Cycle,
    model: &SurfaceModel,
    check_definite: bool,
) -> Result<Divisor, ZariskiError> {
    let mut s = Cycle::new(negative_against(d, candidates, model)?);
    let mut n = Divisor::zero();
    while !s.is_empty() {
        if check_definite && !model.is_negative_definite(&s)? {
            return Err(ZariskiError::ModelInconsistent(s));
        }
        n = solve_on(d, &s, model)?.ok_or_else(|| ZariskiError::ModelInconsistent(s.clone()))?;
        let rest: Cycle = Cycle::new(candidates.iter().filter(|c| !s.contains(c)).cloned());
        let grow = negative_against(&(d - &n), &rest, model)?;
        if grow.is_empty() {
            break;
        }
        s = s.union(&Cycle::new(grow));
    }
    Ok(n)
}

fn finish(d: &Divisor, cycle: &Cycle, negative: Divisor, model: &SurfaceModel) -> Result<Decomposition, ZariskiError> {
    let positive = d - &negative;
    let certificate = certify(d, cycle, &positive, &negative, model)?;
    if let Some(failed) = certificate.first_failure() {
        return Err(ZariskiError::CertificateFailed(failed));
    }
    Ok(Decomposition { support: negative.support(), positive, negative, certificate })
}

fn require_effective(d: &Divisor, model: &SurfaceModel) -> Result<(), ZariskiError> {
    model.check_divisor(d)?;
    if !d.is_effective() {
        return Err(ZariskiError::NotEffective(d.clone()));
    }
    Ok(())
}

/// Decomposition of `d` with support in the negative definite cycle `e`.
pub fn zariski_support(d: &Divisor, e: &Cycle, model: &SurfaceModel) -> Result<Decomposition, ZariskiError> {
    require_effective(d, model)?;
    if !model.is_negative_definite(e)? {
        return Err(ZariskiError::NotNegativeDefinite(e.clone()));
    }
    let candidates = e.intersection(&d.support());
    let n = fujita(d, &candidates, model, false)?;
    finish(d, e, n, model)
}

/// Absolute decomposition: nef on every component of `d`.
pub fn zariski_absolute(d: &Divisor, model: &SurfaceModel) -> Result<Decomposition, ZariskiError> {
    require_effective(d, model)?;
    let candidates = d.support();
    let n = fujita(d, &candidates, model, true)?;
    finish(d, &candidates, n, model)
}

/// Brute force over all subsets of `e ∩ supp d`; exactly one subset must
/// yield a certified decomposition.
pub fn zariski_oracle(d: &Divisor, e: &Cycle, model: &SurfaceModel) -> Result<Decomposition, ZariskiError> {
    zariski_oracle_with_limit(d, e, model, ORACLE_LIMIT)
}

pub fn zariski_oracle_with_limit(
    d: &Divisor,
    e: &Cycle,
    model: &SurfaceModel,
    limit: usize,
) -> Result<Decomposition, ZariskiError> {
    require_effective(d, model)?;
    if !model.is_negative_definite(e)? {
        return Err(ZariskiError::NotNegativeDefinite(e.clone()));
    }
    let candidates: Vec<String> = e.intersection(&d.support()).iter().cloned().collect();
    if candidates.len() > limit {
        return Err(ZariskiError::OracleTooLarge { size: candidates.len(), limit });
    }
    let mut found: Vec<Decomposition> = Vec::new();
    for mask in 0u32..(1u32 << candidates.len()) {
        let s = Cycle::new(
            candidates
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, c)| c.clone()),
        );
        let Some(n) = solve_on(d, &s, model)? else { continue };
        let p = d - &n;
        let cert = certify(d, e, &p, &n, model)?;
        if cert.holds() && !found.iter().any(|f| f.negative == n) {
            found.push(Decomposition { support: n.support(), positive: p, negative: n, certificate: cert });
        }
    }
    match found.len() {
        1 => Ok(found.pop().expect("one element")),
        k => Err(ZariskiError::OracleNotUnique(k)),
    }
}

/// `N` is zero exactly when `d` is already nef on `e`.
pub fn is_nef_on(d: &Divisor, e: &Cycle, model: &SurfaceModel) -> Result<bool, LatticeError> {
    Ok(negative_against(d, e, model)?.is_empty())
}
