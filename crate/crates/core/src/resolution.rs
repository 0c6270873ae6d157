//! Log-resolution bookkeeping for an irreducible curve `C` against the
//! boundary `D`: blow-up centers, discrepancies, the resolved lattice and
//! the Euler numbers of the open pieces.
//!
//! Centers come in four groups, always listed in this order:
//! `S1` (singular points of `C` off `D`), `S2` (points of `C ∩ D`),
//! `Late1` (infinitely near points over `S1`), `Late2` (over `S2`).
//! Total transforms of exceptional curves are named `Ebar{i}`; strict
//! transforms are `F{i}` for the first blow-up over each point and `G{j}`
//! for the late ones; the strict transform of `C` is `C~`.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::lattice::{Cycle, Divisor, LatticeError, SurfaceModel};
use crate::rational::{int, Rational};

pub const CURVE_TILDE: &str = "C~";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stage {
    S1,
    S2,
    Late1,
    Late2,
}

impl Stage {
    pub fn is_late(self) -> bool {
        matches!(self, Stage::Late1 | Stage::Late2)
    }

    /// Centers lying over `C ∩ D`.
    pub fn over_boundary(self) -> bool {
        matches!(self, Stage::S2 | Stage::Late2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ResolutionError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("center {index}: stage {stage:?} listed after a later stage")]
    StageOrder { index: usize, stage: Stage },
    #[error("center {index}: {reason}")]
    InvalidCenter { index: usize, reason: String },
    #[error("center {index}: epsilon is {epsilon} but the proximity set forces {expected}")]
    EpsilonMismatch { index: usize, epsilon: u32, expected: u32 },
    #[error("center {index}: discrepancy x = {x} is negative")]
    NegativeDiscrepancy { index: usize, x: i64 },
    #[error("count {name} is {given}, centers give {actual}")]
    CountMismatch { name: &'static str, given: usize, actual: usize },
    #[error("class name `{0}` is reserved for the resolution")]
    NameCollision(String),
}

/// One blow-up. `proximity` holds 1-based indices of earlier centers whose
/// exceptional curves (strict transforms) pass through this one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupCenter {
    pub stage: Stage,
    /// Multiplicity of the strict transform of `C` at the center.
    pub m: u32,
    /// Multiplicity of the strict transform of `D` at the center.
    pub delta: u32,
    /// Coefficient of `Ebar` removed by later blow-ups: `|proximity| − 1`
    /// for late centers, `0` otherwise.
    pub epsilon: u32,
    pub proximity: BTreeSet<usize>,
}

impl BlowupCenter {
    pub fn new(stage: Stage, m: u32, delta: u32, proximity: impl IntoIterator<Item = usize>) -> Self {
        let proximity: BTreeSet<usize> = proximity.into_iter().collect();
        let epsilon = if stage.is_late() { proximity.len().saturating_sub(1) as u32 } else { 0 };
        Self { stage, m, delta, epsilon, proximity }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionDatum {
    centers: Vec<BlowupCenter>,
    /// Geometric genus of `C`.
    genus: u32,
}

impl ResolutionDatum {
    pub fn new(centers: Vec<BlowupCenter>, genus: u32) -> Result<Self, ResolutionError> {
        let mut last = Stage::S1;
        for (k, c) in centers.iter().enumerate() {
            let index = k + 1;
            if c.stage < last {
                return Err(ResolutionError::StageOrder { index, stage: c.stage });
            }
            last = c.stage;
            let bad = |reason: &str| ResolutionError::InvalidCenter { index, reason: reason.to_string() };
            match c.stage {
                Stage::S1 => {
                    if c.m < 2 {
                        return Err(bad("S1 centers are singular points of C (m >= 2)"));
                    }
                    if c.delta != 0 {
                        return Err(bad("S1 centers lie off D (delta = 0)"));
                    }
                }
                Stage::S2 => {
                    if c.m < 1 {
                        return Err(bad("S2 centers lie on C (m >= 1)"));
                    }
                    if !(1..=2).contains(&c.delta) {
                        return Err(bad("S2 centers lie on a normal crossing D (delta in {1, 2})"));
                    }
                }
                Stage::Late1 => {
                    if c.delta != 0 {
                        return Err(bad("late centers over S1 lie off D (delta = 0)"));
                    }
                }
                Stage::Late2 => {
                    if c.delta > 1 {
                        return Err(bad("late centers meet the strict transform of D at most simply"));
                    }
                }
            }
            if c.stage.is_late() {
                if c.proximity.is_empty() || c.proximity.len() > 2 {
                    return Err(bad("late centers lie on one or two earlier exceptional curves"));
                }
                for &p in &c.proximity {
                    if p == 0 || p >= index {
                        return Err(bad("proximity must reference earlier centers"));
                    }
                    if centers[p - 1].stage.over_boundary() != c.stage.over_boundary() {
                        return Err(bad("proximity crosses from points over C ∩ D to points off D"));
                    }
                }
                let expected = c.proximity.len() as u32 - 1;
                if c.epsilon != expected {
                    return Err(ResolutionError::EpsilonMismatch { index, epsilon: c.epsilon, expected });
                }
            } else {
                if !c.proximity.is_empty() {
                    return Err(bad("first blow-ups over a point have no proximity"));
                }
                if c.epsilon != 0 {
                    return Err(ResolutionError::EpsilonMismatch { index, epsilon: c.epsilon, expected: 0 });
                }
            }
        }
        Ok(Self { centers, genus })
    }

    /// Like [`ResolutionDatum::new`], also checking the stated group sizes
    /// `(s′, s, r′, r)`.
    pub fn with_counts(
        centers: Vec<BlowupCenter>,
        genus: u32,
        counts: (usize, usize, usize, usize),
    ) -> Result<Self, ResolutionError> {
        let datum = Self::new(centers, genus)?;
        let actual = (datum.s_prime(), datum.s(), datum.r_prime(), datum.r());
        for (name, given, actual) in [
            ("s'", counts.0, actual.0),
            ("s", counts.1, actual.1),
            ("r'", counts.2, actual.2),
            ("r", counts.3, actual.3),
        ] {
            if given != actual {
                return Err(ResolutionError::CountMismatch { name, given, actual });
            }
        }
        Ok(datum)
    }

    pub fn centers(&self) -> &[BlowupCenter] {
        &self.centers
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    fn count(&self, stage: Stage) -> usize {
        self.centers.iter().filter(|c| c.stage == stage).count()
    }

    pub fn s_prime(&self) -> usize {
        self.count(Stage::S1)
    }

    pub fn s(&self) -> usize {
        self.count(Stage::S1) + self.count(Stage::S2)
    }

    pub fn r_prime(&self) -> usize {
        self.count(Stage::Late1)
    }

    pub fn r(&self) -> usize {
        self.count(Stage::Late1) + self.count(Stage::Late2)
    }

    /// 1-based indices of the centers in `stage`.
    pub fn indices(&self, stage: Stage) -> impl Iterator<Item = usize> + '_ {
        self.centers
            .iter()
            .enumerate()
            .filter(move |(_, c)| c.stage == stage)
            .map(|(i, _)| i + 1)
    }

    pub fn center(&self, index: usize) -> &BlowupCenter {
        &self.centers[index - 1]
    }
}

/// Log discrepancies `x_i`: the coefficient of `Ebar_i` in
/// `K + D̃ + E − π*(K + D)`.
pub fn derive_discrepancies(datum: &ResolutionDatum) -> Result<Vec<i64>, ResolutionError> {
    datum
        .centers()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let x = match c.stage {
                Stage::S1 => 2,
                Stage::S2 => 2 - c.delta as i64,
                Stage::Late1 | Stage::Late2 => 1 - c.epsilon as i64 - c.delta as i64,
            };
            if x < 0 {
                Err(ResolutionError::NegativeDiscrepancy { index: k + 1, x })
            } else {
                Ok(x)
            }
        })
        .collect()
}

pub fn ebar_name(index: usize) -> String {
    format!("Ebar{index}")
}

/// A blown-up surface together with the transforms of `C` and `D`.
#[derive(Debug, Clone)]
pub struct ResolvedSurface {
    base: SurfaceModel,
    datum: ResolutionDatum,
    x: Vec<i64>,
    curve: Divisor,
    /// Base classes (as pullbacks) and the `Ebar_i`.
    lattice: SurfaceModel,
    c_tilde: Divisor,
    d_tilde: Divisor,
    strict: Vec<Divisor>,
    /// Base classes, strict exceptional curves and `C~`.
    curves: SurfaceModel,
}

/// Euler number of `X ∖ D` for a simple normal crossing boundary.
pub fn euler_open_surface(model: &SurfaceModel) -> Result<Rational, LatticeError> {
    let mut e = int(model.euler_top());
    let b = model.boundary();
    for comp in b {
        e -= int(2 - 2 * comp.genus as i64);
    }
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            e += model.pairing(&b[i].class, &b[j].class)?;
        }
    }
    Ok(e)
}

pub fn build_resolved_lattice(
    model: &SurfaceModel,
    datum: &ResolutionDatum,
    curve: &Divisor,
) -> Result<ResolvedSurface, ResolutionError> {
    model.check_divisor(curve)?;
    let x = derive_discrepancies(datum)?;
    let n = datum.len();
    let s = datum.s();
    let strict_names: Vec<String> = (1..=n)
        .map(|i| if i <= s { format!("F{i}") } else { format!("G{}", i - s) })
        .collect();
    let ebar: Vec<String> = (1..=n).map(ebar_name).collect();
    for reserved in ebar.iter().chain(&strict_names).chain([&CURVE_TILDE.to_string()]) {
        if model.has_class(reserved) {
            return Err(ResolutionError::NameCollision(reserved.clone()));
        }
    }

    let b = model.classes().len();
    let mut classes: Vec<String> = model.classes().to_vec();
    classes.extend(ebar.iter().cloned());
    let mut matrix = vec![vec![Rational::zero(); b + n]; b + n];
    for i in 0..b {
        for j in 0..b {
            matrix[i][j] = model.matrix()[i][j].clone();
        }
    }
    for i in 0..n {
        matrix[b + i][b + i] = -Rational::one();
    }
    let all_ebar = Cycle::new(ebar.iter().cloned()).divisor();
    let lattice = SurfaceModel::new(
        classes,
        matrix,
        model.canonical() + &all_ebar,
        model.euler_top() + n as i64,
        vec![],
    )?;

    let mut c_tilde = curve.clone();
    let mut d_tilde = model.boundary_divisor();
    for (i, c) in datum.centers().iter().enumerate() {
        c_tilde.add_term(ebar[i].clone(), &-int(c.m as i64));
        d_tilde.add_term(ebar[i].clone(), &-int(c.delta as i64));
    }
    let mut strict: Vec<Divisor> = ebar.iter().map(|e| Divisor::from_class(e.clone())).collect();
    for (j, c) in datum.centers().iter().enumerate() {
        for &p in &c.proximity {
            strict[p - 1].add_term(ebar[j].clone(), &-Rational::one());
        }
    }

    // Curve model: same pairing, computed through the lattice vectors.
    let mut cnames: Vec<String> = model.classes().to_vec();
    cnames.extend(strict_names.iter().cloned());
    cnames.push(CURVE_TILDE.to_string());
    let vectors: Vec<Divisor> = model
        .classes()
        .iter()
        .map(|c| Divisor::from_class(c.clone()))
        .chain(strict.iter().cloned())
        .chain([c_tilde.clone()])
        .collect();
    let mut cm = vec![vec![Rational::zero(); vectors.len()]; vectors.len()];
    for i in 0..vectors.len() {
        for j in i..vectors.len() {
            let v = lattice.intersect(&vectors[i], &vectors[j])?;
            cm[i][j] = v.clone();
            cm[j][i] = v;
        }
    }
    let mut resolved = ResolvedSurface {
        base: model.clone(),
        datum: datum.clone(),
        x,
        curve: curve.clone(),
        lattice,
        c_tilde,
        d_tilde,
        strict,
        curves: model.clone(),
    };
    let mut k_curves = model.canonical().clone();
    for i in 1..=n {
        k_curves = &k_curves + &resolved.total_in_curves_named(i, &strict_names);
    }
    resolved.curves = SurfaceModel::new(cnames, cm, k_curves, model.euler_top() + n as i64, vec![])?;
    Ok(resolved)
}

impl ResolvedSurface {
    pub fn base(&self) -> &SurfaceModel {
        &self.base
    }

    pub fn datum(&self) -> &ResolutionDatum {
        &self.datum
    }

    pub fn discrepancies(&self) -> &[i64] {
        &self.x
    }

    /// The curve `C` as a base divisor.
    pub fn curve(&self) -> &Divisor {
        &self.curve
    }

    pub fn lattice(&self) -> &SurfaceModel {
        &self.lattice
    }

    pub fn curve_model(&self) -> &SurfaceModel {
        &self.curves
    }

    pub fn c_tilde(&self) -> &Divisor {
        &self.c_tilde
    }

    pub fn d_tilde(&self) -> &Divisor {
        &self.d_tilde
    }

    /// Strict transform of the `index`-th exceptional curve, in `Ebar`s.
    pub fn strict(&self, index: usize) -> &Divisor {
        &self.strict[index - 1]
    }

    pub fn strict_name(&self, index: usize) -> String {
        let s = self.datum.s();
        if index <= s { format!("F{index}") } else { format!("G{}", index - s) }
    }

    /// Index of a strict exceptional curve name, if it is one.
    pub fn strict_index(&self, name: &str) -> Option<usize> {
        (1..=self.datum.len()).find(|&i| self.strict_name(i) == name)
    }

    fn total_in_curves_named(&self, index: usize, names: &[String]) -> Divisor {
        let mut d = Divisor::from_class(names[index - 1].clone());
        for (j, c) in self.datum.centers().iter().enumerate() {
            if c.proximity.contains(&index) {
                d = &d + &self.total_in_curves_named(j + 1, names);
            }
        }
        d
    }

    /// `Ebar_index` as a nonnegative combination of strict curves.
    pub fn total_in_curves(&self, index: usize) -> Divisor {
        let names: Vec<String> = (1..=self.datum.len()).map(|i| self.strict_name(i)).collect();
        self.total_in_curves_named(index, &names)
    }

    /// Rewrite a curve-model divisor in the lattice basis.
    pub fn to_lattice(&self, d: &Divisor) -> Divisor {
        d.substitute(|name| {
            if name == CURVE_TILDE {
                self.c_tilde.clone()
            } else if let Some(i) = self.strict_index(name) {
                self.strict[i - 1].clone()
            } else {
                Divisor::from_class(name.to_string())
            }
        })
    }

    /// Coefficient of `Ebar_index` in a lattice divisor.
    pub fn ebar_coeff(&self, d: &Divisor, index: usize) -> Rational {
        d.coeff(&ebar_name(index))
    }

    /// Strict curves of the centers in the given stages.
    pub fn cycle(&self, stages: &[Stage]) -> Cycle {
        Cycle::new(
            self.datum
                .centers()
                .iter()
                .enumerate()
                .filter(|(_, c)| stages.contains(&c.stage))
                .map(|(i, _)| self.strict_name(i + 1)),
        )
    }

    /// `F = F′ + F″`: first blow-ups over each point.
    pub fn f_cycle(&self) -> Cycle {
        self.cycle(&[Stage::S1, Stage::S2])
    }

    /// `G = G′ + G″`: late blow-ups.
    pub fn g_cycle(&self) -> Cycle {
        self.cycle(&[Stage::Late1, Stage::Late2])
    }

    /// `G + F″`: everything except the first blow-ups at singular points
    /// of `C` off `D`.
    pub fn g_plus_f_second(&self) -> Cycle {
        self.cycle(&[Stage::S2, Stage::Late1, Stage::Late2])
    }

    /// Lattice divisor `π*(base)`.
    pub fn pullback(&self, d: &Divisor) -> Divisor {
        d.clone()
    }

    /// `E = Σ` strict exceptional curves, in `Ebar`s.
    pub fn exceptional(&self) -> Divisor {
        self.strict.iter().fold(Divisor::zero(), |acc, s| &acc + s)
    }

    /// `E″`: strict curves over `C ∩ D`.
    pub fn exceptional_over_boundary(&self) -> Divisor {
        self.strict
            .iter()
            .zip(self.datum.centers())
            .filter(|(_, c)| c.stage.over_boundary())
            .fold(Divisor::zero(), |acc, (s, _)| &acc + s)
    }

    /// `E′`: strict curves over singular points of `C` off `D`.
    pub fn exceptional_off_boundary(&self) -> Divisor {
        self.strict
            .iter()
            .zip(self.datum.centers())
            .filter(|(_, c)| !c.stage.over_boundary())
            .fold(Divisor::zero(), |acc, (s, _)| &acc + s)
    }
}

/// Euler number of `C ∖ D`, from the strict transform.
pub fn euler_open_curve(resolved: &ResolvedSurface) -> Result<Rational, LatticeError> {
    let meet = &resolved.exceptional_over_boundary() + resolved.d_tilde();
    let g = resolved.datum().genus() as i64;
    Ok(int(2 - 2 * g) - resolved.lattice().intersect(&meet, resolved.c_tilde())?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjunctionReport {
    /// `(K + D)·C + C²` on the base.
    pub lhs: Rational,
    pub rhs: Rational,
    pub e_open_curve: Rational,
    /// `2g − 2 = (K + C̃)·C̃` on the resolution.
    pub genus_consistent: bool,
}

impl AdjunctionReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Both sides of the adjunction identity relating `C` on the base to its
/// resolution data.
pub fn check_adjunction(resolved: &ResolvedSurface) -> Result<AdjunctionReport, ResolutionError> {
    let base = resolved.base();
    let c = resolved.curve();
    let kd = base.log_canonical();
    let lhs = base.intersect(&kd, c)? + base.self_intersection(c)?;
    let e_open_curve = euler_open_curve(resolved)?;
    let mut rhs = -e_open_curve.clone();
    for (c, &x) in resolved.datum().centers().iter().zip(resolved.discrepancies()) {
        let m = c.m as i64;
        rhs += int(match c.stage {
            Stage::S1 => m * (m - x + 1),
            Stage::S2 => m * (m - x),
            Stage::Late1 => m * (m - 1),
            Stage::Late2 => m * (m - 1) + m * (c.epsilon as i64 + c.delta as i64),
        });
    }
    let lat = resolved.lattice();
    let ct = resolved.c_tilde();
    let g = resolved.datum().genus() as i64;
    let genus_consistent =
        int(2 * g - 2) == lat.intersect(&(lat.canonical() + ct), ct)?;
    Ok(AdjunctionReport { lhs, rhs, e_open_curve, genus_consistent })
}
