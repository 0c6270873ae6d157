//! JSON scenario files. Rationals are strings (`"p/q"` or `"p"`); JSON
//! numbers are only accepted for counts, genera and degrees.

use std::collections::BTreeMap;
use std::path::Path;

use logsurf_core::rational::{parse_rational, ParseRationalError};
use logsurf_core::{
    Assertions, BlowupCenter, BoundaryComponent, Cycle, Divisor, LatticeError, Rational, ResolutionDatum,
    ResolutionError, Scenario, ScenarioError, Stage, SurfaceModel,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed scenario: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{field}: {source}")]
    Rational { field: String, source: ParseRationalError },
    #[error("scenario has no `{0}` section")]
    Missing(&'static str),
    #[error("unknown stage `{0}` (expected S1, S2, LATE1 or LATE2)")]
    Stage(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
}

/// A divisor written as `{"class": "coefficient"}`.
pub type DivisorSpec = BTreeMap<String, String>;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Command used by `batch` when none is given on the command line.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface: Option<SurfaceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolution: Option<ResolutionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    #[serde(default)]
    pub assertions: AssertionSpec,
    /// Effective divisor numerically equivalent to `K + D`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kd_representative: Option<DivisorSpec>,
    /// Input of `zariski`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divisor: Option<DivisorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p2: Option<P2Spec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    pub classes: Vec<String>,
    pub intersection: Vec<Vec<String>>,
    #[serde(default)]
    pub canonical: DivisorSpec,
    #[serde(default)]
    pub euler_top: i64,
    #[serde(default)]
    pub boundary: Vec<BoundarySpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundarySpec {
    pub class: String,
    pub genus: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub class: DivisorSpec,
    /// Geometric genus.
    pub genus: u32,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolutionSpec {
    #[serde(default)]
    pub centers: Vec<CenterSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<CountsSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CenterSpec {
    pub stage: String,
    pub m: u32,
    #[serde(default)]
    pub delta: u32,
    /// Checked against the proximity set when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<u32>,
    #[serde(default)]
    pub proximity: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CountsSpec {
    pub s_prime: usize,
    pub s: usize,
    pub r_prime: usize,
    pub r: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssertionSpec {
    #[serde(default)]
    pub kappa_nonneg: bool,
    #[serde(default)]
    pub nef: bool,
    #[serde(default)]
    pub big: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct P2Spec {
    pub d1: u64,
    pub d2: u64,
    pub d: u64,
    pub g: u64,
    pub m: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda0: Option<String>,
}

pub fn parse_field(field: &str, s: &str) -> Result<Rational, InputError> {
    parse_rational(s).map_err(|source| InputError::Rational { field: field.to_string(), source })
}

pub fn divisor(field: &str, spec: &DivisorSpec) -> Result<Divisor, InputError> {
    let mut d = Divisor::zero();
    for (class, c) in spec {
        d.add_term(class.clone(), &parse_field(&format!("{field}.{class}"), c)?);
    }
    Ok(d)
}

fn stage(s: &str) -> Result<Stage, InputError> {
    match s.to_ascii_uppercase().as_str() {
        "S1" => Ok(Stage::S1),
        "S2" => Ok(Stage::S2),
        "LATE1" => Ok(Stage::Late1),
        "LATE2" => Ok(Stage::Late2),
        _ => Err(InputError::Stage(s.to_string())),
    }
}

impl ScenarioFile {
    pub fn load(path: &Path) -> Result<Self, InputError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| InputError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, InputError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn surface_model(&self) -> Result<SurfaceModel, InputError> {
        let s = self.surface.as_ref().ok_or(InputError::Missing("surface"))?;
        let mut matrix = Vec::with_capacity(s.intersection.len());
        for (i, row) in s.intersection.iter().enumerate() {
            let row = row
                .iter()
                .enumerate()
                .map(|(j, v)| parse_field(&format!("surface.intersection[{i}][{j}]"), v))
                .collect::<Result<Vec<_>, _>>()?;
            matrix.push(row);
        }
        let boundary = s.boundary.iter().map(|b| BoundaryComponent { class: b.class.clone(), genus: b.genus }).collect();
        Ok(SurfaceModel::new(
            s.classes.clone(),
            matrix,
            divisor("surface.canonical", &s.canonical)?,
            s.euler_top,
            boundary,
        )?)
    }

    pub fn datum(&self, genus: u32) -> Result<ResolutionDatum, InputError> {
        let spec = self.resolution.clone().unwrap_or_default();
        let mut centers = Vec::with_capacity(spec.centers.len());
        for c in &spec.centers {
            let mut center = BlowupCenter::new(stage(&c.stage)?, c.m, c.delta, c.proximity.iter().copied());
            if let Some(eps) = c.epsilon {
                center.epsilon = eps;
            }
            centers.push(center);
        }
        Ok(match spec.counts {
            Some(k) => ResolutionDatum::with_counts(centers, genus, (k.s_prime, k.s, k.r_prime, k.r))?,
            None => ResolutionDatum::new(centers, genus)?,
        })
    }

    pub fn scenario(&self) -> Result<Scenario, InputError> {
        let model = self.surface_model()?;
        let curve = self.curve.as_ref().ok_or(InputError::Missing("curve"))?;
        let datum = self.datum(curve.genus)?;
        let a = self.assertions;
        let rep = self.kd_representative.as_ref().map(|r| divisor("kd_representative", r)).transpose()?;
        Ok(Scenario::new(
            model,
            divisor("curve.class", &curve.class)?,
            datum,
            Assertions { kappa_nonneg: a.kappa_nonneg, nef: a.nef, big: a.big },
            rep,
        )?)
    }

    pub fn zariski_input(&self) -> Result<(SurfaceModel, Divisor), InputError> {
        let model = self.surface_model()?;
        let d = divisor("divisor", self.divisor.as_ref().ok_or(InputError::Missing("divisor"))?)?;
        Ok((model, d))
    }

    pub fn support_cycle(&self) -> Option<Cycle> {
        self.support.as_ref().map(|s| Cycle::new(s.iter().cloned()))
    }
}
