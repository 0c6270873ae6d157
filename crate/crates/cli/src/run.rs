//! Command evaluation: scenario file in, [`Report`] out.

use std::path::{Path, PathBuf};

use logsurf_core::bmy::{
    chain_validators, chern_data, discriminant_inequality, main_quadratic, main_quadratic_coefficients, reduction_data,
    BmyError,
};
use logsurf_core::bounds::{self, auto_branches, default_lambda0, p2_corollary, Branch, BoundReport, BoundsError};
use logsurf_core::resolution::check_adjunction;
use logsurf_core::zariski::Certificate;
use logsurf_core::{
    rat, zariski_absolute, zariski_support, Decomposition, Hypothesis, HypothesisStatus, Rational, Scenario, Verdict,
    ZariskiError,
};
use rayon::prelude::*;

use crate::report::{BatchReport, HypothesisEntry, Report, Section, Status, Value, VerdictEntry};
use crate::schema::{parse_field, InputError, ScenarioFile};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Zariski,
    Adjunction,
    Bmy,
    Bound,
    P2,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Zariski => "zariski",
            Command::Adjunction => "adjunction",
            Command::Bmy => "bmy",
            Command::Bound => "bound",
            Command::P2 => "p2",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "zariski" => Command::Zariski,
            "adjunction" => Command::Adjunction,
            "bmy" => Command::Bmy,
            "bound" => Command::Bound,
            "p2" => Command::P2,
            _ => return None,
        })
    }

    /// Command a file asks for, or the one its contents suggest.
    pub fn infer(file: &ScenarioFile) -> Result<Self, String> {
        if let Some(c) = &file.command {
            return Self::parse(c).ok_or_else(|| format!("unknown command `{c}` in scenario"));
        }
        Ok(if file.divisor.is_some() {
            Command::Zariski
        } else if file.p2.is_some() {
            Command::P2
        } else {
            Command::Bound
        })
    }
}

#[derive(Debug, Clone)]
pub struct Options {
    pub bits: u32,
    pub support: Option<Vec<String>>,
    pub alpha: Option<Rational>,
    pub alpha_grid: Option<u32>,
    pub branch: Option<Branch>,
}

impl Default for Options {
    fn default() -> Self {
        Self { bits: logsurf_core::interval::DEFAULT_BITS, support: None, alpha: None, alpha_grid: None, branch: None }
    }
}

/// A failure that ends the run with a single status.
struct Abort(Status, String);

impl From<InputError> for Abort {
    fn from(e: InputError) -> Self {
        Abort(Status::InvalidInput, e.to_string())
    }
}

impl From<ZariskiError> for Abort {
    fn from(e: ZariskiError) -> Self {
        let status = match e {
            ZariskiError::CertificateFailed(_) => Status::Fails,
            _ => Status::InvalidInput,
        };
        Abort(status, e.to_string())
    }
}

impl From<BmyError> for Abort {
    fn from(e: BmyError) -> Self {
        let status = match e {
            BmyError::HypothesisUnmet(_) => Status::HypothesisUnmet,
            _ => Status::InvalidInput,
        };
        Abort(status, e.to_string())
    }
}

impl From<BoundsError> for Abort {
    fn from(e: BoundsError) -> Self {
        let status = match e {
            BoundsError::NotBig(_) => Status::HypothesisUnmet,
            BoundsError::Interval(_) => Status::Unknown,
            _ => Status::InvalidInput,
        };
        Abort(status, e.to_string())
    }
}

pub fn run_file(cmd: Command, path: &Path, opts: &Options) -> Report {
    let label = Some(path.display().to_string());
    match ScenarioFile::load(path) {
        Ok(file) => run_scenario(cmd, &file, label, opts),
        Err(e) => Report::failed(cmd.name(), label, opts.bits, Status::InvalidInput, e.to_string()),
    }
}

pub fn run_scenario(cmd: Command, file: &ScenarioFile, label: Option<String>, opts: &Options) -> Report {
    let label = file.name.clone().or(label);
    let out = match cmd {
        Command::Zariski => zariski(file, opts),
        Command::Adjunction => adjunction(file),
        Command::Bmy => bmy(file, opts),
        Command::Bound => bound(file, opts),
        Command::P2 => p2(file, opts),
    };
    match out {
        Ok(sections) => Report::new(cmd.name(), label, opts.bits, sections),
        Err(Abort(status, msg)) => Report::failed(cmd.name(), label, opts.bits, status, msg),
    }
}

/// `*.json` files of `dir`, sorted by name.
pub fn scenario_files(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let path = entry?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "json") {
            out.push(path);
        }
    }
    out.sort();
    Ok(out)
}

/// Evaluates every file concurrently; reports keep the order of `paths`.
pub fn run_batch(paths: &[PathBuf], cmd: Option<Command>, opts: &Options) -> BatchReport {
    let reports = paths
        .par_iter()
        .map(|path| {
            let label = Some(path.display().to_string());
            let file = match ScenarioFile::load(path) {
                Ok(f) => f,
                Err(e) => {
                    let name = cmd.map_or("batch", Command::name);
                    return Report::failed(name, label, opts.bits, Status::InvalidInput, e.to_string());
                }
            };
            match cmd.map_or_else(|| Command::infer(&file), Ok) {
                Ok(c) => run_scenario(c, &file, label, opts),
                Err(msg) => Report::failed("batch", label, opts.bits, Status::InvalidInput, msg),
            }
        })
        .collect();
    BatchReport::new(reports)
}

fn certificate_verdicts(c: &Certificate) -> Vec<VerdictEntry> {
    [
        ("P + N = D", c.sums_to_divisor),
        ("P effective", c.positive_effective),
        ("N effective", c.negative_effective),
        ("supp N in E", c.negative_supported_on_cycle),
        ("supp N negative definite", c.negative_support_definite),
        ("P nef on E", c.positive_nef_on_cycle),
        ("P.N_i = 0", c.positive_trivial_on_negative),
        ("P.N = 0", c.orthogonal),
        ("D^2 = P^2 + N^2", c.squares_add),
    ]
    .into_iter()
    .map(|(name, ok)| VerdictEntry { name: name.to_string(), outcome: Verdict::from(ok).into(), detail: None })
    .collect()
}

fn zariski(file: &ScenarioFile, opts: &Options) -> Result<Vec<Section>, Abort> {
    let (model, d) = file.zariski_input()?;
    let support = opts
        .support
        .as_ref()
        .map(|s| logsurf_core::Cycle::new(s.iter().cloned()))
        .or_else(|| file.support_cycle());
    let (title, dec): (_, Decomposition) = match &support {
        Some(e) => (format!("supported on {e}"), zariski_support(&d, e, &model)?),
        None => ("absolute".to_string(), zariski_absolute(&d, &model)?),
    };
    let lattice = |r: Result<Rational, _>| r.map_err(|e: logsurf_core::LatticeError| Abort(Status::InvalidInput, e.to_string()));
    let mut s = Section::new(format!("zariski decomposition, {title}"));
    s.value("D", Value::text(d.to_string()));
    s.value("P", Value::text(dec.positive.to_string()));
    s.value("N", Value::text(dec.negative.to_string()));
    s.value("supp N", Value::text(dec.support.to_string()));
    s.value("D^2", Value::exact(&lattice(model.self_intersection(&d))?));
    s.value("P^2", Value::exact(&lattice(dec.positive_sq(&model))?));
    s.value("N^2", Value::exact(&lattice(dec.negative_sq(&model))?));
    s.verdicts = certificate_verdicts(&dec.certificate);
    Ok(vec![s])
}

fn load_scenario(file: &ScenarioFile) -> Result<Scenario, Abort> {
    Ok(file.scenario()?)
}

fn invariants_section(sc: &Scenario) -> Section {
    let inv = sc.invariants();
    let mut s = Section::new("invariants");
    s.value("(K+D)^2", Value::exact(&inv.kd_sq));
    s.value("e(X-D)", Value::exact(&inv.e_open_surface));
    s.value("(K+D).C", Value::exact(&inv.kd_dot_c));
    s.value("C^2", Value::exact(&inv.c_sq));
    s.value("e(C-D)", Value::exact(&inv.e_open_curve));
    s.value("D.C", Value::exact(&inv.d_dot_c));
    s.value("genus", Value::text(inv.genus.to_string()));
    let x: Vec<String> = sc.resolved().discrepancies().iter().map(i64::to_string).collect();
    s.value("discrepancies", Value::text(format!("[{}]", x.join(", "))));
    s
}

fn adjunction(file: &ScenarioFile) -> Result<Vec<Section>, Abort> {
    let sc = load_scenario(file)?;
    let adj = check_adjunction(sc.resolved()).map_err(|e| Abort(Status::InvalidInput, e.to_string()))?;
    let mut s = Section::new("adjunction");
    s.value("lhs", Value::exact(&adj.lhs));
    s.value("rhs", Value::exact(&adj.rhs));
    s.value("e(C-D)", Value::exact(&adj.e_open_curve));
    s.verdicts.push(VerdictEntry {
        name: "lhs = rhs".into(),
        outcome: Verdict::from(adj.lhs == adj.rhs).into(),
        detail: Some(format!("{} = {}", adj.lhs, adj.rhs)),
    });
    s.verdicts.push(VerdictEntry {
        name: "genus agrees with arithmetic genus minus delta".into(),
        outcome: Verdict::from(adj.genus_consistent).into(),
        detail: None,
    });
    Ok(vec![invariants_section(&sc), s])
}

fn alphas(file: &ScenarioFile, opts: &Options) -> Result<Vec<Rational>, Abort> {
    if let Some(a) = &opts.alpha {
        return Ok(vec![a.clone()]);
    }
    if let Some(k) = opts.alpha_grid {
        return Ok(grid(k));
    }
    if let Some(a) = &file.alpha {
        return Ok(vec![parse_field("alpha", a)?]);
    }
    Ok(grid(10))
}

fn grid(k: u32) -> Vec<Rational> {
    let k = k.max(1) as i64;
    (0..=k).map(|i| rat(i, k)).collect()
}

fn bmy(file: &ScenarioFile, opts: &Options) -> Result<Vec<Section>, Abort> {
    let sc = load_scenario(file)?;
    let inv = sc.invariants();
    let kappa = sc.assertions().kappa_nonneg;
    let alphas = alphas(file, opts)?;
    let mut sections = vec![invariants_section(&sc)];

    let disc = discriminant_inequality(inv, kappa);
    let mut s = Section::new("discriminant inequality");
    s.value("value", Value::exact(&disc.value));
    if let Some(a0) = &disc.alpha0 {
        s.value("alpha0", Value::exact(a0));
    }
    s.hypotheses = disc.hypotheses.iter().map(HypothesisEntry::from).collect();
    s.verdicts.push(VerdictEntry { name: "value <= 0".into(), outcome: disc.verdict.into(), detail: None });
    if !disc.literal_hypothesis {
        s.notes.push("(K+D).C >= -3/2 e(X-D) is also false".into());
    }
    sections.push(s);

    let [a0, a1, a2] = main_quadratic_coefficients(inv);
    let mut s = Section::new("main inequality");
    s.value("quadratic", Value::text(format!("{a0} + ({a1}) a + ({a2}) a^2")));
    s.hypotheses.push(HypothesisEntry::from(&Hypothesis::new("kappa(K+D) >= 0", HypothesisStatus::asserted(kappa))));
    for alpha in &alphas {
        let q = main_quadratic(inv, alpha);
        s.verdicts.push(VerdictEntry {
            name: format!("Q({alpha}) >= 0"),
            outcome: Verdict::from(q >= Rational::from_integer(0.into())).into(),
            detail: Some(q.to_string()),
        });
    }
    sections.push(s);

    for alpha in &alphas {
        let ch = chern_data(&sc, alpha)?;
        let red = reduction_data(&sc, &ch)?;
        let chain = chain_validators(&sc, &ch, &red);
        let mut s = Section::new(format!("chain at alpha = {alpha}"));
        s.value("c2/d", Value::exact(&ch.c2_norm));
        s.value("c1^2/d", Value::exact(&ch.c1sq_norm));
        s.value("representative", Value::text(format!("{:?}", red.representative)));
        s.value("N^2", Value::exact(&red.n_alpha_sq));
        s.value("N_hat^2", Value::exact(&red.n_hat_sq));
        if let Some(b) = &red.n_bar_sq {
            s.value("N_bar^2", Value::exact(b));
        }
        match &chain.principal_lhs {
            Some(p) => s.value("principal", Value::exact(p)),
            None => s.notes.push("no effective representative of K + D: absolute decomposition skipped".into()),
        }
        s.value("Q(alpha)", Value::exact(&chain.main_quadratic));
        s.verdicts = chain.checks.iter().map(VerdictEntry::from).collect();
        sections.push(s);
    }
    Ok(sections)
}

fn bound_section(r: &BoundReport) -> Section {
    let mut s = Section::new(format!("degree bound, {} branch", r.branch.name()));
    s.value("bits", Value::text(r.bits.to_string()));
    for (name, q) in [("A", &r.a), ("B", &r.b), ("R+", &r.r_plus)] {
        if let Some(i) = q {
            s.value(name, Value::interval(i));
        }
    }
    for (name, q) in &r.quantities {
        s.value(name.clone(), q.into());
    }
    if let Some(b) = &r.bound {
        s.value("bound on (K+D).C", b.into());
    }
    s.hypotheses = r.hypotheses.iter().map(HypothesisEntry::from).collect();
    s.verdicts = r.verdicts.iter().map(VerdictEntry::from).collect();
    s.notes = r.notes.clone();
    s
}

fn bound(file: &ScenarioFile, opts: &Options) -> Result<Vec<Section>, Abort> {
    let sc = load_scenario(file)?;
    let branches = match opts.branch {
        Some(b) => vec![b],
        None => auto_branches(sc.invariants()),
    };
    let mut sections = vec![invariants_section(&sc)];
    for branch in branches {
        match bounds::degree_bound(&sc, branch, opts.bits) {
            Ok(r) => sections.push(bound_section(&r)),
            Err(BoundsError::NotBig(k)) => {
                let mut s = Section::new(format!("degree bound, {} branch", branch.name()));
                s.value("(K+D)^2", Value::exact(&k));
                s.hypotheses.push(HypothesisEntry::from(&Hypothesis::new("(K+D)^2 > 0", HypothesisStatus::Unmet)));
                sections.push(s);
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(sections)
}

fn p2(file: &ScenarioFile, opts: &Options) -> Result<Vec<Section>, Abort> {
    let spec = file.p2.as_ref().ok_or(Abort(Status::InvalidInput, InputError::Missing("p2").to_string()))?;
    let lambda0 = match &spec.lambda0 {
        Some(l) => parse_field("p2.lambda0", l)?,
        None => default_lambda0(),
    };
    let r = p2_corollary(spec.d1, spec.d2, spec.d, spec.g, spec.m, &lambda0, opts.bits)?;
    let mut s = Section::new(format!("plane curve of degree {} and genus {} against degrees ({}, {})", r.d, r.g, r.d1, r.d2));
    s.value("bits", Value::text(r.bits.to_string()));
    for (name, v) in [
        ("lambda", &r.lambda),
        ("nu", &r.nu),
        ("lambda0", &r.lambda0),
        ("e(P2-D)", &r.e_open),
        ("(K+D)^2", &r.kd_sq),
        ("(K+D).C", &r.kd_dot_c),
        ("threshold", &r.threshold),
    ] {
        s.value(name, Value::exact(v));
    }
    for (name, q) in [("a(lambda)", &r.a_lambda), ("b(lambda)", &r.b_lambda), ("A", &r.a), ("B", &r.b)] {
        if let Some(i) = q {
            s.value(name, Value::interval(i));
        }
    }
    if let Some(m) = &r.m_bound {
        s.value("m-bound", Value::text(m.to_string()));
    }
    s.hypotheses = r.hypotheses.iter().map(HypothesisEntry::from).collect();
    s.verdicts = r.verdicts.iter().map(VerdictEntry::from).collect();
    Ok(vec![s])
}
