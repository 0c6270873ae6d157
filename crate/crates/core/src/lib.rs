//! Exact toolkit for log surfaces `(X, D)` carrying a curve `C`: intersection
//! lattices, Zariski decompositions, resolution bookkeeping, orbifold
//! Chern-number evaluators and certified degree bounds.

pub mod bmy;
pub mod bounds;
pub mod interval;
pub mod lattice;
pub mod linalg;
pub mod rational;
pub mod resolution;
pub mod scenario;
pub mod verdict;
pub mod zariski;

pub use interval::{sqrt_interval, IntervalError, RationalInterval};
pub use lattice::{BoundaryComponent, Cycle, Divisor, LatticeError, SurfaceModel};
pub use rational::{int, parse_rational, rat, Rational};
pub use resolution::{BlowupCenter, ResolutionDatum, ResolutionError, ResolvedSurface, Stage};
pub use zariski::{zariski_absolute, zariski_oracle, zariski_support, Decomposition, ZariskiError};
pub use scenario::{Assertions, Invariants, Scenario, ScenarioError};
pub use verdict::{ExactCheck, Hypothesis, HypothesisStatus, NamedVerdict, Relation, Verdict};
