//! Explicit upper bounds for `(K + D)·C`, with radicals enclosed in
//! rational intervals, and the pipeline for plane curves against a pair of
//! smooth plane curves.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::interval::{sqrt_interval, with_retries, IntervalError, RationalInterval};
use crate::rational::{ceil, floor, int, rat, Rational};
use crate::scenario::{Assertions, Invariants, Scenario};
use crate::verdict::{Hypothesis, HypothesisStatus, NamedVerdict, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundsError {
    #[error("(K+D)^2 = {0} is not positive")]
    NotBig(Rational),
    #[error("intersection data violate the Hodge index theorem: y^2 = {0} < 0")]
    HodgeIndex(Rational),
    #[error("degrees must satisfy d >= d2 >= d1 > 0, got d1 = {d1}, d2 = {d2}, d = {d}")]
    DegreeOrder { d1: u64, d2: u64, d: u64 },
    #[error("lambda0 = {0} must lie strictly between 2/3 and 1")]
    Lambda0OutOfRange(Rational),
    #[error(transparent)]
    Interval(#[from] IntervalError),
}

/// Scale-free coordinates of the pair `(K + D, C)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedInvariants {
    /// `(K+D)·C / (K+D)²`
    pub x: Rational,
    /// `e(X ∖ D) / (K+D)²`
    pub sigma: Rational,
    /// `−e(C ∖ D) / (2 (K+D)²)`
    pub gamma: Rational,
    /// `−(C − x(K+D))² / (K+D)²`
    pub y_sq: Rational,
}

pub fn normalized_invariants(inv: &Invariants) -> Result<NormalizedInvariants, BoundsError> {
    let k = &inv.kd_sq;
    if !k.is_positive() {
        return Err(BoundsError::NotBig(k.clone()));
    }
    let x = &inv.kd_dot_c / k;
    let y_sq = &x * &x - &inv.c_sq / k;
    if y_sq.is_negative() {
        return Err(BoundsError::HodgeIndex(y_sq));
    }
    Ok(NormalizedInvariants {
        sigma: &inv.e_open_surface / k,
        gamma: -&inv.e_open_curve / (int(2) * k),
        x,
        y_sq,
    })
}

/// `𝒫(x) = (σ−1)x² + (4γ+3σ−1)x − 2γ(3γ+3σ−1)`.
pub fn p_poly(sigma: &Rational, gamma: &Rational, x: &Rational) -> Rational {
    let s = int(3) * sigma - int(1);
    (sigma - int(1)) * x * x + (int(4) * gamma + &s) * x - int(2) * gamma * (int(3) * gamma + &s)
}

/// Larger root of `𝒫`, or `None` when `σ ≥ 1` or the roots are not real.
pub fn r_plus(sigma: &Rational, gamma: &Rational, bits: u32) -> Result<Option<RationalInterval>, BoundsError> {
    if sigma >= &Rational::one() {
        return Ok(None);
    }
    let s = int(3) * sigma - int(1);
    let disc = int(8) * &s * gamma * gamma + int(8) * sigma * &s * gamma + &s * &s;
    if disc.is_negative() {
        return Ok(None);
    }
    let num = sqrt_interval(&disc, bits)?.add_exact(&(int(4) * gamma + &s));
    Ok(Some(num.div_exact(&(int(2) * (int(1) - sigma)))?))
}

/// `(A, B)` for given `(K+D)²` and `e(X ∖ D)`, when `(K+D)² > e` and
/// `3e ≥ (K+D)²`.
pub fn a_b_constants(
    kd_sq: &Rational,
    e: &Rational,
    bits: u32,
) -> Result<Option<(RationalInterval, RationalInterval)>, BoundsError> {
    let u = int(3) * e - kd_sq;
    let gap = kd_sq - e;
    if !gap.is_positive() || u.is_negative() || kd_sq.is_negative() {
        return Ok(None);
    }
    let rad = sqrt_interval(&(int(2) * kd_sq * &u), bits)?;
    let a = rad.add_exact(&(int(2) * kd_sq)).div_exact(&gap)?;
    let b = rad.scale(&(int(2) * e)).add_exact(&(kd_sq * &u)).div_exact(&(int(2) * &gap))?;
    Ok(Some((a, b)))
}

/// `t²/(t+1) + 3` has ceiling `t + 3` for every integer `t ≥ 0`.
pub fn ceiling_identity(t: &BigInt) -> bool {
    assert!(!t.is_negative(), "ceiling identity is stated for t >= 0");
    let t = Rational::from_integer(t.clone());
    let v = &t * &t / (&t + int(1)) + int(3);
    Rational::from_integer(ceil(&v)) == t + int(3)
}

/// `(t² − 3)/(t + 2) + 6`: the contraction inequality when `C` misses `D`.
pub fn disjoint_branch(t: &Rational) -> Option<Rational> {
    let den = t + int(2);
    (!den.is_zero()).then(|| (t * t - int(3)) / den + int(6))
}

/// `t²/(t + 1) + 3`: the contraction inequality when `D·C = 1`.
pub fn meeting_branch(t: &Rational) -> Option<Rational> {
    let den = t + int(1);
    (!den.is_zero()).then(|| t * t / den + int(3))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    General,
    Smooth,
    DRational,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::General => "general",
            Branch::Smooth => "smooth",
            Branch::DRational => "d-rational",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Quantity {
    Exact(Rational),
    Interval(RationalInterval),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub branch: Branch,
    /// Precision of the last evaluation, in bits.
    pub bits: u32,
    pub a: Option<RationalInterval>,
    pub b: Option<RationalInterval>,
    pub r_plus: Option<RationalInterval>,
    /// Upper bound for `(K + D)·C`.
    pub bound: Option<Quantity>,
    pub quantities: Vec<(String, Quantity)>,
    pub hypotheses: Vec<Hypothesis>,
    pub verdicts: Vec<NamedVerdict>,
    pub notes: Vec<String>,
}

impl BoundReport {
    fn new(branch: Branch, bits: u32) -> Self {
        Self {
            branch,
            bits,
            a: None,
            b: None,
            r_plus: None,
            bound: None,
            quantities: Vec::new(),
            hypotheses: Vec::new(),
            verdicts: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn hypotheses_met(&self) -> bool {
        self.hypotheses.iter().all(|h| !h.status.is_unmet())
    }

    pub fn has_unknown(&self) -> bool {
        self.verdicts.iter().any(|v| v.verdict == Verdict::Unknown)
    }

    pub fn verdict(&self, name: &str) -> Option<Verdict> {
        self.verdicts.iter().find(|v| v.name == name).map(|v| v.verdict)
    }

    pub fn quantity(&self, name: &str) -> Option<&Quantity> {
        self.quantities.iter().find(|(n, _)| n == name).map(|(_, q)| q)
    }

    fn exact(&mut self, name: &str, v: Rational) {
        self.quantities.push((name.to_string(), Quantity::Exact(v)));
    }

    fn hyp(&mut self, name: &str, status: HypothesisStatus) {
        self.hypotheses.push(Hypothesis::new(name, status));
    }

    fn check(&mut self, v: NamedVerdict) {
        self.verdicts.push(v);
    }
}

/// Nef is taken on trust but `(K+D)·C < 0` refutes it.
fn nef_status(inv: &Invariants, asserted: &Assertions) -> HypothesisStatus {
    if asserted.nef && inv.kd_dot_c.is_negative() {
        HypothesisStatus::Unmet
    } else {
        HypothesisStatus::asserted(asserted.nef)
    }
}

fn common_hypotheses(r: &mut BoundReport, inv: &Invariants, asserted: &Assertions) {
    r.hyp("kappa(K+D) >= 0", HypothesisStatus::asserted(asserted.kappa_nonneg));
    r.hyp("K+D nef", nef_status(inv, asserted));
}

fn general_at(inv: &Invariants, asserted: &Assertions, bits: u32) -> Result<BoundReport, BoundsError> {
    let mut r = BoundReport::new(Branch::General, bits);
    let k = &inv.kd_sq;
    let e = &inv.e_open_surface;
    common_hypotheses(&mut r, inv, asserted);
    r.hyp("(K+D)^2 > 0", HypothesisStatus::checked(k.is_positive()));
    r.hyp("(K+D)^2 > e(X-D)", HypothesisStatus::checked(k > e));
    r.hyp("3e(X-D) >= (K+D)^2", HypothesisStatus::checked(&(int(3) * e) >= k));
    r.hyp("C not smooth D-rational", HypothesisStatus::checked(!inv.is_smooth_d_rational()));
    if !k.is_positive() {
        r.notes.push("normalized invariants need (K+D)^2 > 0".into());
        return Ok(r);
    }
    let ni = normalized_invariants(inv)?;
    r.exact("x", ni.x.clone());
    r.exact("sigma", ni.sigma.clone());
    r.exact("gamma", ni.gamma.clone());
    r.exact("y^2", ni.y_sq.clone());
    let p = p_poly(&ni.sigma, &ni.gamma, &ni.x);
    r.exact("P(x)", p.clone());
    let three_gamma = int(3) * &ni.gamma;
    r.check(NamedVerdict::conditional(
        "P(x) >= 0",
        ni.x >= three_gamma,
        Verdict::from(!p.is_negative()),
        "x >= 3 gamma",
    ));

    let t = RationalInterval::point(inv.kd_dot_c.clone());
    if let Some((a, b)) = a_b_constants(k, e, bits)? {
        let bound = a.scale(&(-&inv.e_open_curve / int(2))).add(&b);
        r.check(NamedVerdict::new("(K+D).C <= A(-e(C-D)/2) + B", t.le(&bound)));
        r.a = Some(a);
        r.b = Some(b);
        r.bound = Some(Quantity::Interval(bound));
    } else {
        r.notes.push("A and B need (K+D)^2 > e(X-D) and 3e(X-D) >= (K+D)^2".into());
    }

    match r_plus(&ni.sigma, &ni.gamma, bits)? {
        Some(rp) => {
            r.check(NamedVerdict::new("x <= R+", RationalInterval::point(ni.x.clone()).le(&rp)));
            let gamma_nonneg = !ni.gamma.is_negative();
            r.check(NamedVerdict::conditional(
                "R+ >= 3 gamma",
                gamma_nonneg,
                rp.ge_exact(&three_gamma),
                "gamma >= 0",
            ));
            if let Some(Quantity::Interval(bound)) = &r.bound {
                let v = rp.scale(k).le(bound);
                r.check(NamedVerdict::conditional(
                    "(K+D)^2 R+ <= A(-e(C-D)/2) + B",
                    gamma_nonneg && !e.is_negative(),
                    v,
                    "gamma >= 0 and e(X-D) >= 0",
                ));
            }
            r.r_plus = Some(rp);
        }
        None => r.notes.push("R+ is undefined: sigma >= 1 or P has no real roots".into()),
    }
    Ok(r)
}

fn smooth_at(inv: &Invariants, asserted: &Assertions, bits: u32) -> Result<BoundReport, BoundsError> {
    let mut r = BoundReport::new(Branch::Smooth, bits);
    let k = &inv.kd_sq;
    let e = &inv.e_open_surface;
    let ec = &inv.e_open_curve;
    let t = &inv.kd_dot_c;
    common_hypotheses(&mut r, inv, asserted);
    r.hyp("C smooth and transverse to D", HypothesisStatus::checked(inv.is_smooth_transverse()));
    r.hyp("C not smooth D-rational", HypothesisStatus::checked(!inv.is_smooth_d_rational()));
    let u = int(3) * e - k;
    let w = &u - int(2) * ec;
    r.hyp("3e(X-D) >= (K+D)^2", HypothesisStatus::checked(!u.is_negative()));
    r.exact("3e(X-D) - (K+D)^2", u.clone());
    r.exact("3e(X-D) - (K+D)^2 - 2e(C-D)", w.clone());

    let q = int(2) * t * t + (int(6) * ec - int(2) * &u) * t - int(2) * ec * &u + rat(9, 2) * ec * ec;
    r.exact("q(t)", q.clone());
    r.check(NamedVerdict::conditional(
        "q((K+D).C) <= 0",
        t >= &(rat(-3, 2) * ec),
        Verdict::from(!q.is_positive()),
        "(K+D).C >= -3/2 e(C-D)",
    ));

    if u.is_negative() || w.is_negative() {
        r.notes.push("smooth bound needs 3e(X-D) - (K+D)^2 >= 0 and >= 2e(C-D)".into());
        return Ok(r);
    }
    let bound = sqrt_interval(&(&u * &w), bits)?
        .scale(&rat(1, 2))
        .add_exact(&(rat(-3, 2) * ec + &u / int(2)));
    r.check(NamedVerdict::new("(K+D).C <= smooth bound", RationalInterval::point(t.clone()).le(&bound)));
    r.bound = Some(Quantity::Interval(bound));
    Ok(r)
}

fn d_rational(inv: &Invariants, asserted: &Assertions) -> BoundReport {
    let mut r = BoundReport::new(Branch::DRational, 0);
    let k = &inv.kd_sq;
    let e = &inv.e_open_surface;
    let t = &inv.kd_dot_c;
    let dc = &inv.d_dot_c;
    common_hypotheses(&mut r, inv, asserted);
    let rational = inv.is_smooth_d_rational() && !dc.is_negative();
    r.hyp("C smooth D-rational", HypothesisStatus::checked(rational));
    r.hyp("C^2 < 0", HypothesisStatus::checked(inv.c_sq.is_negative()));
    if !rational || !inv.c_sq.is_negative() {
        r.notes.push("contraction of C needs a smooth D-rational curve with C^2 < 0".into());
        return r;
    }
    let m = -&inv.c_sq;
    let u = int(3) * e - k;
    let meets = dc == &int(1);
    let (e0, k0) = if meets {
        (e - int(1), k + (&m - int(1)) * (&m - int(1)) / &m)
    } else {
        (e - int(2) + m.recip(), k + (&m - int(2)) * (&m - int(2)) / &m)
    };
    r.exact("m", m.clone());
    r.exact("e0", e0.clone());
    r.exact("(K+D)0^2", k0.clone());
    let disjoint = disjoint_branch(t);
    let meeting = meeting_branch(t);
    if let Some(v) = &disjoint {
        r.exact("(t^2-3)/(t+2) + 6", v.clone());
    }
    if let Some(v) = &meeting {
        r.exact("t^2/(t+1) + 3", v.clone());
    }
    r.check(NamedVerdict::new(
        "(K+D).C = m - 2 + D.C",
        Verdict::from(t == &(&m - int(2) + dc)),
    ));
    r.check(NamedVerdict::new("(K+D)0^2 <= 3 e0", Verdict::from(k0 <= int(3) * &e0)));
    let t_nonneg = !t.is_negative();
    let t_int = t.is_integer() && t_nonneg;
    if meets {
        let branch = meeting.expect("t >= 0 on the asserted branch or t + 1 != 0");
        r.check(NamedVerdict::new("3e - (K+D)^2 >= t^2/(t+1) + 3", Verdict::from(u >= branch)));
        r.check(NamedVerdict::conditional(
            "ceil(t^2/(t+1) + 3) = t + 3",
            t_int,
            Verdict::from(t_int && ceiling_identity(&t.to_integer())),
            "t is a nonnegative integer",
        ));
    } else if let Some(branch) = disjoint {
        r.check(NamedVerdict::new("3e - (K+D)^2 >= (t^2-3)/(t+2) + 6", Verdict::from(u >= branch)));
        r.check(NamedVerdict::conditional(
            "(t^2-3)/(t+2) + 6 >= t + 3",
            t_nonneg,
            Verdict::from(branch >= t + int(3)),
            "t >= 0",
        ));
    }
    let bound = &u - int(3);
    r.check(NamedVerdict::new("(K+D).C <= 3e - (K+D)^2 - 3", Verdict::from(t <= &bound)));
    r.bound = Some(Quantity::Exact(bound));
    r
}

fn retried(
    bits: u32,
    eval: impl Fn(u32) -> Result<BoundReport, BoundsError>,
) -> Result<BoundReport, BoundsError> {
    let (out, _) = with_retries(bits, eval, |r| matches!(r, Ok(rep) if rep.has_unknown()));
    out
}

/// General bound from the five numbers `(K+D)²`, `e(X∖D)`, `(K+D)·C`,
/// `C²`, `e(C∖D)` and the asserted properties.
pub fn general_from_invariants(inv: &Invariants, asserted: &Assertions, bits: u32) -> Result<BoundReport, BoundsError> {
    retried(bits, |b| general_at(inv, asserted, b))
}

pub fn smooth_from_invariants(inv: &Invariants, asserted: &Assertions, bits: u32) -> Result<BoundReport, BoundsError> {
    retried(bits, |b| smooth_at(inv, asserted, b))
}

pub fn degree_bound_general(sc: &Scenario, bits: u32) -> Result<BoundReport, BoundsError> {
    general_from_invariants(sc.invariants(), sc.assertions(), bits)
}

pub fn degree_bound_smooth(sc: &Scenario, bits: u32) -> Result<BoundReport, BoundsError> {
    smooth_from_invariants(sc.invariants(), sc.assertions(), bits)
}

pub fn degree_bound_d_rational(sc: &Scenario) -> BoundReport {
    d_rational(sc.invariants(), sc.assertions())
}

/// Branches that apply to the shape of the scenario: the general bound,
/// plus the smooth or D-rational one when `C` qualifies.
pub fn auto_branches(inv: &Invariants) -> Vec<Branch> {
    let mut out = vec![Branch::General];
    if inv.is_smooth_d_rational() {
        out.push(Branch::DRational);
    } else if inv.is_smooth_transverse() {
        out.push(Branch::Smooth);
    }
    out
}

pub fn degree_bound(sc: &Scenario, branch: Branch, bits: u32) -> Result<BoundReport, BoundsError> {
    match branch {
        Branch::General => degree_bound_general(sc, bits),
        Branch::Smooth => degree_bound_smooth(sc, bits),
        Branch::DRational => Ok(degree_bound_d_rational(sc)),
    }
}

pub fn default_lambda0() -> Rational {
    rat(7, 10)
}

/// `(h, k)` in the threshold `ν > (h g + k) / ((λ₀/2 − 1/3)(λ₀/2 + 1/4))`.
pub fn threshold_constants() -> (Rational, Rational) {
    (rat(4, 9), int(22))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct P2Report {
    pub d1: u64,
    pub d2: u64,
    pub d: u64,
    pub g: u64,
    pub m: u64,
    pub lambda: Rational,
    pub nu: Rational,
    pub lambda0: Rational,
    /// `e(ℙ² ∖ D)`
    pub e_open: Rational,
    pub kd_sq: Rational,
    pub kd_dot_c: Rational,
    pub threshold: Rational,
    pub a_lambda: Option<RationalInterval>,
    pub b_lambda: Option<RationalInterval>,
    pub a: Option<RationalInterval>,
    pub b: Option<RationalInterval>,
    pub m_bound: Option<BigInt>,
    pub hypotheses: Vec<Hypothesis>,
    pub verdicts: Vec<NamedVerdict>,
    pub bits: u32,
}

impl P2Report {
    pub fn hypotheses_met(&self) -> bool {
        self.hypotheses.iter().all(|h| !h.status.is_unmet())
    }

    pub fn has_unknown(&self) -> bool {
        self.verdicts.iter().any(|v| v.verdict == Verdict::Unknown)
    }

    pub fn verdict(&self, name: &str) -> Option<Verdict> {
        self.verdicts.iter().find(|v| v.name == name).map(|v| v.verdict)
    }
}

/// `(a(λ), b(λ))`, defined for `λ > 2/3`.
pub fn a_b_lambda(lambda: &Rational, bits: u32) -> Result<Option<(RationalInterval, RationalInterval)>, BoundsError> {
    let den = lambda / int(2) - rat(1, 3);
    if !den.is_positive() {
        return Ok(None);
    }
    let l1 = lambda + int(1);
    let q = int(2) * lambda * lambda + lambda + int(2);
    let root = sqrt_interval(&(int(2) * &q), bits)?.scale(&l1);
    let a = root.add_exact(&(int(2) * &l1 * &l1)).div_exact(&den)?;
    let b = root
        .scale(&(lambda * lambda + lambda + int(1)))
        .add_exact(&(&l1 * &l1 * &q))
        .div_exact(&(int(2) * &den))?;
    Ok(Some((a, b)))
}

fn p2_at(d1: u64, d2: u64, d: u64, g: u64, m: u64, lambda0: &Rational, bits: u32) -> Result<P2Report, BoundsError> {
    let (rd1, rd2, rd, rg) = (int(d1 as i64), int(d2 as i64), int(d as i64), int(g as i64));
    let lambda = &rd1 / &rd2;
    let nu = &rd / &rd2;
    let l1 = &lambda + int(1);
    let sq2 = &rd2 * &rd2;
    let e = int(3) + &rd1 * (&rd1 - int(3)) + &rd2 * (&rd2 - int(3)) + &rd1 * &rd2;
    let sum = &rd1 + &rd2;
    let kd_sq = &sum * &sum - int(6) * &sum + int(9);
    let kd_dot_c = (&sum - int(3)) * &rd;
    let gap = &kd_sq - &e;
    let (h, k) = threshold_constants();
    let threshold = (&h * &rg + &k) / ((lambda0 / int(2) - rat(1, 3)) * (lambda0 / int(2) + rat(1, 4)));

    let mut verdicts = vec![
        NamedVerdict::new(
            "e(P2-D) closed form",
            Verdict::from(e == (&lambda * &lambda + &lambda + int(1)) * &sq2 - int(3) * &l1 * &rd2 + int(3)),
        ),
        NamedVerdict::new(
            "(K+D)^2 closed form",
            Verdict::from(kd_sq == &l1 * &l1 * &sq2 - int(6) * &l1 * &rd2 + int(9)),
        ),
        NamedVerdict::new(
            "(K+D)^2 - e closed form",
            Verdict::from(gap == &lambda * &rd2 * (&rd2 - int(3) * &l1) + int(6)),
        ),
        NamedVerdict::new(
            "3e - (K+D)^2 closed form",
            Verdict::from(
                int(3) * &e - &kd_sq
                    == (int(2) * &lambda * &lambda + &lambda + int(2)) * &sq2 - int(3) * &l1 * &rd2,
            ),
        ),
        NamedVerdict::new("(K+D)^2 - e > 0", Verdict::from(gap.is_positive())),
        NamedVerdict::new(
            "(K+D)^2 - e >= (lambda/2 - 1/3) d2^2",
            Verdict::from(gap >= (&lambda / int(2) - rat(1, 3)) * &sq2),
        ),
        NamedVerdict::new(
            "(K+D).C >= (lambda + 1/2) nu d2^2",
            Verdict::from(kd_dot_c >= (&lambda + rat(1, 2)) * &nu * &sq2),
        ),
    ];

    let ab_lambda = a_b_lambda(&lambda, bits)?;
    let ab = a_b_constants(&kd_sq, &e, bits)?;
    let mut m_bound = None;
    if let Some((al, bl)) = &ab_lambda {
        if let Some((a, b)) = &ab {
            verdicts.push(NamedVerdict::new("A <= a(lambda)", a.le(al)));
            verdicts.push(NamedVerdict::new("B <= d2^2 b(lambda)", b.le(&bl.scale(&sq2))));
        }
        let den = &lambda / int(2) - rat(1, 3);
        let cap = int(50) / &den;
        let scaled = al.scale(&l1).div_exact(&(&lambda + rat(1, 2)))?;
        verdicts.push(NamedVerdict::new(
            "(lambda+1) a(lambda)/(lambda+1/2) <= 50/(lambda/2-1/3)",
            scaled.le_exact(&cap),
        ));
        let mb = floor(&cap);
        verdicts.push(NamedVerdict::new("m <= m-bound", Verdict::from(BigInt::from(m) <= mb)));
        m_bound = Some(mb);
    }

    let hypotheses = vec![
        Hypothesis::new("d2 >= 6", HypothesisStatus::checked(d2 >= 6)),
        Hypothesis::new("lambda >= lambda0", HypothesisStatus::checked(&lambda >= lambda0)),
        Hypothesis::new("nu > threshold", HypothesisStatus::checked(nu > threshold)),
    ];
    Ok(P2Report {
        d1,
        d2,
        d,
        g,
        m,
        lambda,
        nu,
        lambda0: lambda0.clone(),
        e_open: e,
        kd_sq,
        kd_dot_c,
        threshold,
        a_lambda: ab_lambda.as_ref().map(|p| p.0.clone()),
        b_lambda: ab_lambda.map(|p| p.1),
        a: ab.as_ref().map(|p| p.0.clone()),
        b: ab.map(|p| p.1),
        m_bound,
        hypotheses,
        verdicts,
        bits,
    })
}

/// Bound on the minimal contact order `m` of a plane curve of degree `d`
/// and geometric genus `g` with a pair of smooth transverse plane curves of
/// degrees `d1 <= d2`.
pub fn p2_corollary(d1: u64, d2: u64, d: u64, g: u64, m: u64, lambda0: &Rational, bits: u32) -> Result<P2Report, BoundsError> {
    if !(d >= d2 && d2 >= d1 && d1 > 0) {
        return Err(BoundsError::DegreeOrder { d1, d2, d });
    }
    if lambda0 <= &rat(2, 3) || lambda0 >= &Rational::one() {
        return Err(BoundsError::Lambda0OutOfRange(lambda0.clone()));
    }
    let (out, _) = with_retries(
        bits,
        |b| p2_at(d1, d2, d, g, m, lambda0, b),
        |r| matches!(r, Ok(rep) if rep.has_unknown()),
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(kd_sq: i64, e: i64, t: i64, c_sq: i64, ec: i64, d_dot_c: i64, genus: u32, centers: usize) -> Invariants {
        Invariants {
            kd_sq: int(kd_sq),
            e_open_surface: int(e),
            kd_dot_c: int(t),
            c_sq: int(c_sq),
            e_open_curve: int(ec),
            d_dot_c: int(d_dot_c),
            genus,
            centers,
        }
    }

    fn trusted() -> Assertions {
        Assertions { kappa_nonneg: true, nef: true, big: true }
    }

    fn sqrt2(bits: u32) -> RationalInterval {
        sqrt_interval(&int(2), bits).unwrap()
    }

    #[test]
    fn sextics_constants() {
        let (a, b) = a_b_constants(&int(81), &int(75), 64).unwrap().unwrap();
        let a_ref = sqrt2(80).scale(&int(18)).add_exact(&int(27));
        let b_ref = sqrt2(80).scale(&int(1350)).add_exact(&int(972));
        assert!(a.lo() <= a_ref.hi() && a_ref.lo() <= a.hi());
        assert!(b.lo() <= b_ref.hi() && b_ref.lo() <= b.hi());
        assert!(a.lo() > &rat(5245, 100) && a.hi() < &rat(5246, 100));
        assert!(a.width() < rat(1, 10_000_000_000));
    }

    #[test]
    fn normalized_sextics_line() {
        // line against two transverse sextics: e(C - D) = 2 - 12
        let ni = normalized_invariants(&inv(81, 75, 9, 1, -10, 12, 0, 0)).unwrap();
        assert_eq!(ni.sigma, rat(25, 27));
        assert_eq!(ni.x, rat(1, 9));
        assert_eq!(ni.gamma, rat(5, 81));
        let ni = normalized_invariants(&inv(4, 3, 4, 4, 0, 0, 0, 1)).unwrap();
        assert_eq!((ni.x, ni.y_sq), (int(1), int(0)));
        assert!(matches!(normalized_invariants(&inv(0, 3, 1, 1, 0, 0, 0, 0)), Err(BoundsError::NotBig(_))));
        assert!(matches!(normalized_invariants(&inv(1, 3, 0, 1, 0, 0, 0, 0)), Err(BoundsError::HodgeIndex(_))));
    }

    #[test]
    fn general_sextics_line_holds() {
        let r = general_from_invariants(&inv(81, 75, 9, 1, -10, 12, 0, 0), &trusted(), 64).unwrap();
        assert!(r.hypotheses_met());
        for v in &r.verdicts {
            assert_eq!(v.verdict, Verdict::Holds, "{v:?}");
        }
        assert_eq!(r.verdict("x <= R+"), Some(Verdict::Holds));
    }

    #[test]
    fn r_plus_boundary() {
        assert_eq!(r_plus(&rat(1, 3), &int(0), 64).unwrap(), Some(RationalInterval::point(int(0))));
        assert_eq!(r_plus(&int(1), &int(0), 64).unwrap(), None);
    }

    #[test]
    fn smooth_examples() {
        let r = smooth_from_invariants(&inv(1, 7, 1, 1, -2, 4, 0, 0), &trusted(), 64).unwrap();
        let Some(Quantity::Interval(b)) = &r.bound else { panic!("no bound") };
        assert!(b.lo() > &rat(239, 10) && b.hi() < &int(24));
        assert_eq!(r.verdict("(K+D).C <= smooth bound"), Some(Verdict::Holds));
        assert_eq!(r.quantity("q(t)"), Some(&Quantity::Exact(int(48))));
        let q = r.verdicts.iter().find(|v| v.name == "q((K+D).C) <= 0").unwrap();
        assert!(q.note.is_some());

        let r = smooth_from_invariants(&inv(3, 1, 0, 0, 0, 0, 1, 0), &trusted(), 64).unwrap();
        assert_eq!(r.bound, Some(Quantity::Interval(RationalInterval::point(int(0)))));
    }

    #[test]
    fn ceiling_identity_examples() {
        for (t, want) in [(0, 3), (7, 10)] {
            let v = meeting_branch(&int(t)).unwrap();
            assert_eq!(ceil(&v), BigInt::from(want));
            assert!(ceiling_identity(&BigInt::from(t)));
        }
        assert_eq!(disjoint_branch(&int(2)), Some(rat(25, 4)));
    }

    #[test]
    fn d_rational_branch() {
        // (-4)-curve disjoint from D on a surface with 3e - (K+D)^2 = 20
        let i = inv(1, 7, 2, -4, 2, 0, 0, 0);
        let r = d_rational(&i, &trusted());
        assert!(r.hypotheses_met());
        assert_eq!(r.bound, Some(Quantity::Exact(int(17))));
        assert_eq!(r.verdict("(t^2-3)/(t+2) + 6 >= t + 3"), Some(Verdict::Holds));
        assert_eq!(r.verdict("(K+D).C <= 3e - (K+D)^2 - 3"), Some(Verdict::Holds));
        let r = d_rational(&inv(1, 7, 2, 4, 2, 0, 0, 0), &trusted());
        assert!(!r.hypotheses_met());
        assert!(r.bound.is_none());
    }

    #[test]
    fn p2_sextics() {
        let r = p2_corollary(6, 6, 100, 0, 1, &default_lambda0(), 64).unwrap();
        assert_eq!((r.e_open.clone(), r.kd_sq.clone()), (int(75), int(81)));
        assert_eq!(r.m_bound, Some(BigInt::from(300)));
        for v in &r.verdicts {
            assert_eq!(v.verdict, Verdict::Holds, "{v:?}");
        }
        assert!(matches!(p2_corollary(7, 6, 10, 0, 1, &default_lambda0(), 64), Err(BoundsError::DegreeOrder { .. })));
        assert!(matches!(p2_corollary(6, 6, 10, 0, 1, &rat(2, 3), 64), Err(BoundsError::Lambda0OutOfRange(_))));
    }
}
