//! Chern numbers of the logarithmic orbibundle attached to `(X, D + αC)`,
//! its nef reduction, and the exact inequality chain leading to the
//! quadratic inequality in `α`.
//!
//! Everything is normalized by the degree of the covering, which cancels,
//! so all quantities live on the resolved lattice.

use num_traits::{One, Signed, Zero};

use crate::lattice::{Divisor, LatticeError};
use crate::rational::{int, max, rat, Rational};
use crate::resolution::{check_adjunction, ebar_name, ResolutionError, Stage, CURVE_TILDE};
use crate::scenario::{Invariants, Scenario};
use crate::verdict::{ExactCheck, Hypothesis, HypothesisStatus, Relation, Verdict};
use crate::zariski::{zariski_absolute, zariski_support, ZariskiError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BmyError {
    #[error("alpha = {0} is outside [0, 1]")]
    AlphaOutOfRange(Rational),
    #[error("scenario is inconsistent: adjunction gives {lhs} on the base but {rhs} from the resolution")]
    Inconsistent { lhs: Rational, rhs: Rational },
    #[error("{0} is required but not available")]
    HypothesisUnmet(&'static str),
    #[error("effective representative is not numerically equivalent to D_alpha")]
    RepresentativeMismatch,
    #[error(transparent)]
    Zariski(#[from] ZariskiError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernData {
    pub alpha: Rational,
    /// `c₂ / d`
    pub c2_norm: Rational,
    /// `c₁² / d`
    pub c1sq_norm: Rational,
    /// `D_α` in the lattice basis (base pullbacks and `Ebar_i`).
    pub d_alpha: Divisor,
}

fn check_alpha(alpha: &Rational) -> Result<(), BmyError> {
    if alpha.is_negative() || alpha > &Rational::one() {
        return Err(BmyError::AlphaOutOfRange(alpha.clone()));
    }
    Ok(())
}

pub fn chern_data(sc: &Scenario, alpha: &Rational) -> Result<ChernData, BmyError> {
    check_alpha(alpha)?;
    let r = sc.resolved();
    let adj = check_adjunction(r)?;
    if !adj.holds() {
        return Err(BmyError::Inconsistent { lhs: adj.lhs, rhs: adj.rhs });
    }
    let inv = sc.invariants();
    let mut c2 = &inv.e_open_surface - alpha * &inv.e_open_curve;
    let mut c1sq = &inv.kd_sq + int(2) * alpha * &inv.kd_dot_c + alpha * alpha * &inv.c_sq;
    let mut d_alpha = &sc.model().log_canonical() + &sc.curve().scale(alpha);
    for (i, (c, &x)) in r.datum().centers().iter().zip(r.discrepancies()).enumerate() {
        let am = alpha * int(c.m as i64);
        let xm = int(x) - &am;
        match c.stage {
            Stage::S1 => c2 += &am - int(1),
            Stage::Late1 => c2 -= &am * int(c.epsilon as i64),
            Stage::S2 | Stage::Late2 => {}
        }
        c1sq -= &xm * &xm;
        d_alpha.add_term(ebar_name(i + 1), &xm);
    }
    Ok(ChernData { alpha: alpha.clone(), c2_norm: c2, c1sq_norm: c1sq, d_alpha })
}

/// Which effective divisor stood in for `D_α` in the curve model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representative {
    /// User-supplied effective `K + D`, plus the exceptional part.
    User,
    /// The formal `K + Σ Dᵢ` happened to be effective.
    Formal,
    /// `K + D + αC` on the base with `Σ(xᵢ − αmᵢ)Ebar_i`, when effective.
    Pullback,
    /// Only `Σ xᵢ Ebar_i + αC̃`: enough for the decompositions supported
    /// on exceptional curves, not for the absolute one.
    ExceptionalOnly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionData {
    pub alpha: Rational,
    pub representative: Representative,
    /// `N_α` on the strict curves of `G + F″`.
    pub n_alpha: Divisor,
    /// Coefficients of `N_α` on `Ebar_1..Ebar_n` (zero for `i ≤ s′`).
    pub b: Vec<Rational>,
    pub n_alpha_sq: Rational,
    /// `P_α = D_α − N_α` in the lattice basis.
    pub p_alpha: Divisor,
    /// `N̂_α = N_{F+G}(P_α)` on strict curves.
    pub n_hat: Divisor,
    pub b_hat: Vec<Rational>,
    pub n_hat_sq: Rational,
    /// Absolute negative part `N̄_α = N(P_α)`, when an effective
    /// representative of `P_α` is known.
    pub n_bar: Option<Divisor>,
    pub n_bar_sq: Option<Rational>,
}

/// Exceptional part `Σ xᵢ Ebar_i + αC̃`, written on strict curves.
fn exceptional_part(sc: &Scenario, alpha: &Rational) -> Divisor {
    let r = sc.resolved();
    let mut d = Divisor::from_terms([(CURVE_TILDE, alpha.clone())]);
    for (i, &x) in r.discrepancies().iter().enumerate() {
        d = &d + &r.total_in_curves(i + 1).scale(&int(x));
    }
    d
}

fn ebar_coefficients(sc: &Scenario, curves: &Divisor) -> Vec<Rational> {
    let r = sc.resolved();
    let lat = r.to_lattice(curves);
    (1..=r.datum().len()).map(|i| r.ebar_coeff(&lat, i)).collect()
}

pub fn reduction_data(sc: &Scenario, chern: &ChernData) -> Result<ReductionData, BmyError> {
    let r = sc.resolved();
    let cm = r.curve_model();
    let alpha = &chern.alpha;
    let exc = exceptional_part(sc, alpha);

    let mut candidates: Vec<(Representative, Divisor)> = Vec::new();
    if let Some(rep) = sc.representative() {
        candidates.push((Representative::User, rep + &exc));
    }
    let formal = sc.model().log_canonical();
    if formal.is_effective() {
        candidates.push((Representative::Formal, &formal + &exc));
    }
    let mut pulled = &formal + &sc.curve().scale(alpha);
    for (i, (c, &x)) in r.datum().centers().iter().zip(r.discrepancies()).enumerate() {
        let xm = int(x) - alpha * int(c.m as i64);
        pulled = &pulled + &r.total_in_curves(i + 1).scale(&xm);
    }
    if pulled.is_effective() {
        candidates.push((Representative::Pullback, pulled));
    }
    let (kind, start) = candidates
        .into_iter()
        .next()
        .unwrap_or((Representative::ExceptionalOnly, exc));
    if kind != Representative::ExceptionalOnly
        && !r.lattice().numerically_equivalent(&r.to_lattice(&start), &chern.d_alpha)?
    {
        return Err(BmyError::RepresentativeMismatch);
    }

    let n = zariski_support(&start, &r.g_plus_f_second(), cm)?;
    let p_start = n.positive.clone();
    let hat = zariski_support(&p_start, &r.f_cycle().union(&r.g_cycle()), cm)?;
    let (n_bar, n_bar_sq) = if kind == Representative::ExceptionalOnly {
        (None, None)
    } else {
        let bar = zariski_absolute(&p_start, cm)?;
        let sq = cm.self_intersection(&bar.negative)?;
        (Some(bar.negative), Some(sq))
    };
    Ok(ReductionData {
        alpha: alpha.clone(),
        representative: kind,
        b: ebar_coefficients(sc, &n.negative),
        n_alpha_sq: cm.self_intersection(&n.negative)?,
        p_alpha: &chern.d_alpha - &r.to_lattice(&n.negative),
        b_hat: ebar_coefficients(sc, &hat.negative),
        n_hat_sq: cm.self_intersection(&hat.negative)?,
        n_alpha: n.negative,
        n_hat: hat.negative,
        n_bar,
        n_bar_sq,
    })
}

/// `3c₂ − c₁² + N_α² + N̄_α²/4`, all per covering degree.
pub fn principal_lhs(chern: &ChernData, red: &ReductionData) -> Result<Rational, BmyError> {
    let bar = red
        .n_bar_sq
        .as_ref()
        .ok_or(BmyError::HypothesisUnmet("an effective representative of K + D"))?;
    Ok(int(3) * &chern.c2_norm - &chern.c1sq_norm + &red.n_alpha_sq + bar / int(4))
}

/// Coefficients `[a₀, a₁, a₂]` of the quadratic in `α` whose
/// nonnegativity on `[0, 1]` is the main inequality.
pub fn main_quadratic_coefficients(inv: &Invariants) -> [Rational; 3] {
    let three_halves_e = rat(3, 2) * &inv.e_open_curve;
    let lead = &inv.c_sq + int(3) * &inv.kd_dot_c + int(3) * &inv.e_open_curve;
    [
        int(3) * &inv.e_open_surface - &inv.kd_sq,
        int(-2) * (&inv.kd_dot_c + three_halves_e),
        lead / int(2),
    ]
}

pub fn main_quadratic(inv: &Invariants, alpha: &Rational) -> Rational {
    let [a0, a1, a2] = main_quadratic_coefficients(inv);
    a0 + a1 * alpha + a2 * alpha * alpha
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantReport {
    pub value: Rational,
    /// Minimizer of the main quadratic when its leading coefficient is
    /// positive.
    pub alpha0: Option<Rational>,
    pub hypotheses: Vec<Hypothesis>,
    pub verdict: Verdict,
    /// Whether the weaker, literally stated hypothesis
    /// `(K + D)·C ≥ −3/2 e(X ∖ D)` holds; informational only.
    pub literal_hypothesis: bool,
}

pub fn discriminant_inequality(inv: &Invariants, kappa_asserted: bool) -> DiscriminantReport {
    let bracket = &inv.kd_dot_c + rat(3, 2) * &inv.e_open_curve;
    let lead = &inv.c_sq + int(3) * &inv.kd_dot_c + int(3) * &inv.e_open_curve;
    let value = int(2) * &bracket * &bracket
        - (int(3) * &inv.e_open_surface - &inv.kd_sq) * &lead;
    let alpha0 = lead.is_positive().then(|| int(2) * &bracket / &lead);
    DiscriminantReport {
        verdict: Verdict::from(!value.is_positive()),
        value,
        alpha0,
        hypotheses: vec![
            Hypothesis::new("kappa(K+D) >= 0", HypothesisStatus::asserted(kappa_asserted)),
            Hypothesis::new("C not smooth D-rational", HypothesisStatus::checked(!inv.is_smooth_d_rational())),
            Hypothesis::new("(K+D).C >= -3/2 e(C-D)", HypothesisStatus::checked(!bracket.is_negative())),
        ],
        literal_hypothesis: &inv.kd_dot_c >= &(rat(-3, 2) * &inv.e_open_surface),
    }
}

/// `4(1 − αm + α²m²) − max(2 − αm, 0)²` and `6α²m(m − 1)`.
pub fn boundoldpoints(m: u32, alpha: &Rational) -> (Rational, Rational) {
    let am = alpha * int(m as i64);
    let tail = max(&(int(2) - &am), &Rational::zero());
    let lhs = int(4) * (int(1) - &am + &am * &am) - &tail * &tail;
    let rhs = int(6) * alpha * &am * int(m as i64 - 1);
    (lhs, rhs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainReport {
    pub alpha: Rational,
    pub checks: Vec<ExactCheck>,
    pub principal_lhs: Option<Rational>,
    pub main_quadratic: Rational,
}

impl ChainReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(ExactCheck::holds)
    }
}

/// Every inequality of the chain, index by index, followed by the
/// aggregate comparisons.
pub fn chain_validators(sc: &Scenario, chern: &ChernData, red: &ReductionData) -> ChainReport {
    let r = sc.resolved();
    let alpha = &chern.alpha;
    let a2 = alpha * alpha;
    let mut checks = Vec::new();
    let mut s1_tail = Rational::zero();
    for (k, (c, &x)) in r.datum().centers().iter().zip(r.discrepancies()).enumerate() {
        let i = Some(k + 1);
        let m = int(c.m as i64);
        let x = int(x);
        let xm = &x - alpha * &m;
        let b = &red.b[k];
        let bh = &red.b_hat[k];
        let fst_lhs = &xm * &xm - b * b;
        checks.push(ExactCheck::new("b + b_hat >= x - alpha m", i, b + bh, Relation::Ge, xm.clone()));
        match c.stage {
            Stage::S1 => {
                checks.push(ExactCheck::new("b_hat >= x - alpha m", i, bh.clone(), Relation::Ge, xm.clone()));
                let (lhs, rhs) = boundoldpoints(c.m, alpha);
                checks.push(ExactCheck::new("old points", i, lhs, Relation::Le, rhs));
                let t = max(&xm, &Rational::zero());
                s1_tail += &t * &t;
            }
            Stage::S2 => {
                checks.push(ExactCheck::new("b >= x - alpha m", i, b.clone(), Relation::Ge, xm.clone()));
                checks.push(ExactCheck::new("first sum", i, fst_lhs, Relation::Le, &a2 * &m * (&m - &x)));
            }
            Stage::Late1 => {
                checks.push(ExactCheck::new("b >= x - alpha m", i, b.clone(), Relation::Ge, xm.clone()));
                let eps = int(c.epsilon as i64);
                let lhs = int(-3) * alpha * &m * eps + fst_lhs;
                checks.push(ExactCheck::new("second sum", i, lhs, Relation::Le, &a2 * &m * (&m - int(1))));
            }
            Stage::Late2 => {
                checks.push(ExactCheck::new("b >= x - alpha m", i, b.clone(), Relation::Ge, xm.clone()));
                let extra = int(c.epsilon as i64 + c.delta as i64);
                checks.push(ExactCheck::new("third sum", i, fst_lhs, Relation::Le, &a2 * &m * (&m - int(1) + extra)));
            }
        }
    }
    checks.push(ExactCheck::new(
        "N_hat^2 <= -sum max(x - alpha m, 0)^2",
        None,
        red.n_hat_sq.clone(),
        Relation::Le,
        -s1_tail,
    ));
    if let Some(bar) = &red.n_bar_sq {
        checks.push(ExactCheck::new("N_bar^2 <= N_hat^2", None, bar.clone(), Relation::Le, red.n_hat_sq.clone()));
    }
    let main = main_quadratic(sc.invariants(), alpha);
    let principal = principal_lhs(chern, red).ok();
    if let Some(p) = &principal {
        checks.push(ExactCheck::new("principal <= main quadratic", None, p.clone(), Relation::Le, main.clone()));
        if sc.assertions().kappa_nonneg {
            checks.push(ExactCheck::new("principal >= 0", None, p.clone(), Relation::Ge, Rational::zero()));
        }
    }
    ChainReport { alpha: alpha.clone(), checks, principal_lhs: principal, main_quadratic: main }
}
