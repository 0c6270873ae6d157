//! Intersection lattices: named classes with a symmetric rational pairing.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::linalg;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("unknown class `{0}`")]
    UnknownClass(String),
    #[error("class `{0}` is listed twice")]
    DuplicateClass(String),
    #[error("intersection matrix must be {n}x{n}")]
    NotSquare { n: usize },
    #[error("intersection matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(String, String),
    #[error("boundary component `{0}` appears twice")]
    DuplicateBoundary(String),
}

/// A formal ℚ-combination of named classes. Zero coefficients are never
/// stored, so equality is structural.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Divisor {
    coeffs: BTreeMap<String, Rational>,
}

impl Divisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_class(name: impl Into<String>) -> Self {
        Self::from_terms([(name.into(), Rational::from_integer(1.into()))])
    }

    pub fn from_terms<S: Into<String>>(terms: impl IntoIterator<Item = (S, Rational)>) -> Self {
        let mut d = Self::zero();
        for (name, c) in terms {
            d.add_term(name, &c);
        }
        d
    }

    pub fn add_term(&mut self, name: impl Into<String>, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let name = name.into();
        let entry = self.coeffs.entry(name.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&name);
        }
    }

    pub fn coeff(&self, name: &str) -> Rational {
        self.coeffs.get(name).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&String, &Rational)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> Cycle {
        Cycle::new(self.coeffs.keys().cloned())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// All coefficients are `>= 0`.
    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// `self ≼ other`: `other − self` is effective.
    pub fn leq(&self, other: &Divisor) -> bool {
        (other - self).is_effective()
    }

    pub fn scale(&self, c: &Rational) -> Divisor {
        Divisor::from_terms(self.coeffs.iter().map(|(k, v)| (k.clone(), v * c)))
    }

    /// Keep only the terms whose class lies in `cycle`.
    pub fn restrict(&self, cycle: &Cycle) -> Divisor {
        Divisor::from_terms(
            self.coeffs
                .iter()
                .filter(|(k, _)| cycle.contains(k))
                .map(|(k, v)| (k.clone(), v.clone())),
        )
    }

    /// Replace every class by a divisor, e.g. to change bases.
    pub fn substitute(&self, f: impl Fn(&str) -> Divisor) -> Divisor {
        let mut out = Divisor::zero();
        for (k, v) in &self.coeffs {
            out = &out + &f(k).scale(v);
        }
        out
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, v)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({v}){k}")?;
        }
        Ok(())
    }
}

impl Add for &Divisor {
    type Output = Divisor;
    fn add(self, rhs: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (k, v) in &rhs.coeffs {
            out.add_term(k.clone(), v);
        }
        out
    }
}

impl Sub for &Divisor {
    type Output = Divisor;
    fn sub(self, rhs: &Divisor) -> Divisor {
        self + &(-rhs)
    }
}

impl Neg for &Divisor {
    type Output = Divisor;
    fn neg(self) -> Divisor {
        Divisor {
            coeffs: self.coeffs.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }
}

impl Mul<&Divisor> for &Rational {
    type Output = Divisor;
    fn mul(self, rhs: &Divisor) -> Divisor {
        rhs.scale(self)
    }
}

/// A finite set of classes, treated as curves.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    components: BTreeSet<String>,
}

impl Cycle {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Self {
            components: names.into_iter().map(Into::into).collect(),
        }
    }

    pub fn contains(&self, name: &str) -> bool {
        self.components.contains(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &String> {
        self.components.iter()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn intersection(&self, other: &Cycle) -> Cycle {
        Cycle {
            components: self.components.intersection(&other.components).cloned().collect(),
        }
    }

    pub fn union(&self, other: &Cycle) -> Cycle {
        Cycle {
            components: self.components.union(&other.components).cloned().collect(),
        }
    }

    pub fn is_subset(&self, other: &Cycle) -> bool {
        self.components.is_subset(&other.components)
    }

    /// Sum of the components with coefficient one.
    pub fn divisor(&self) -> Divisor {
        Divisor::from_terms(self.components.iter().map(|c| (c.clone(), Rational::from_integer(1.into()))))
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.components.iter().map(String::as_str).collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryComponent {
    pub class: String,
    pub genus: u32,
}

/// Numerical model of a smooth projective surface with a reduced boundary.
///
/// Classes need not be linearly independent: several names may stand for
/// numerically equivalent curves (e.g. a line and two sextics on ℙ²).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    classes: Vec<String>,
    index: HashMap<String, usize>,
    matrix: Vec<Vec<Rational>>,
    canonical: Divisor,
    euler_top: i64,
    boundary: Vec<BoundaryComponent>,
}

impl SurfaceModel {
    pub fn new(
        classes: Vec<String>,
        matrix: Vec<Vec<Rational>>,
        canonical: Divisor,
        euler_top: i64,
        boundary: Vec<BoundaryComponent>,
    ) -> Result<Self, LatticeError> {
        let n = classes.len();
        let mut index = HashMap::with_capacity(n);
        for (i, c) in classes.iter().enumerate() {
            if index.insert(c.clone(), i).is_some() {
                return Err(LatticeError::DuplicateClass(c.clone()));
            }
        }
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(LatticeError::NotSquare { n });
        }
        for i in 0..n {
            for j in i + 1..n {
                if matrix[i][j] != matrix[j][i] {
                    return Err(LatticeError::NotSymmetric(classes[i].clone(), classes[j].clone()));
                }
            }
        }
        let model = Self { classes, index, matrix, canonical, euler_top, boundary };
        model.check_divisor(&model.canonical)?;
        let mut seen = BTreeSet::new();
        for b in &model.boundary {
            model.class_index(&b.class)?;
            if !seen.insert(b.class.clone()) {
                return Err(LatticeError::DuplicateBoundary(b.class.clone()));
            }
        }
        Ok(model)
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn canonical(&self) -> &Divisor {
        &self.canonical
    }

    pub fn euler_top(&self) -> i64 {
        self.euler_top
    }

    pub fn boundary(&self) -> &[BoundaryComponent] {
        &self.boundary
    }

    /// `D = Σ Dᵢ` over the boundary components.
    pub fn boundary_divisor(&self) -> Divisor {
        Cycle::new(self.boundary.iter().map(|b| b.class.clone())).divisor()
    }

    /// Formal `K + D`.
    pub fn log_canonical(&self) -> Divisor {
        &self.canonical + &self.boundary_divisor()
    }

    pub fn class_index(&self, name: &str) -> Result<usize, LatticeError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| LatticeError::UnknownClass(name.to_string()))
    }

    pub fn has_class(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn check_divisor(&self, d: &Divisor) -> Result<(), LatticeError> {
        d.terms().try_for_each(|(k, _)| self.class_index(k).map(|_| ()))
    }

    pub fn pairing(&self, a: &str, b: &str) -> Result<Rational, LatticeError> {
        Ok(self.matrix[self.class_index(a)?][self.class_index(b)?].clone())
    }

    /// Bilinear intersection number.
    pub fn intersect(&self, a: &Divisor, b: &Divisor) -> Result<Rational, LatticeError> {
        let mut total = Rational::zero();
        for (ka, va) in a.terms() {
            let i = self.class_index(ka)?;
            for (kb, vb) in b.terms() {
                let j = self.class_index(kb)?;
                total += va * vb * &self.matrix[i][j];
            }
        }
        Ok(total)
    }

    pub fn self_intersection(&self, d: &Divisor) -> Result<Rational, LatticeError> {
        self.intersect(d, d)
    }

    /// Intersection matrix restricted to a cycle, in the cycle's order.
    pub fn gram(&self, cycle: &Cycle) -> Result<Vec<Vec<Rational>>, LatticeError> {
        let idx: Vec<usize> = cycle.iter().map(|c| self.class_index(c)).collect::<Result<_, _>>()?;
        Ok(idx
            .iter()
            .map(|&i| idx.iter().map(|&j| self.matrix[i][j].clone()).collect())
            .collect())
    }

    pub fn is_negative_definite(&self, cycle: &Cycle) -> Result<bool, LatticeError> {
        Ok(linalg::is_negative_definite(&self.gram(cycle)?))
    }

    /// Whether two divisors pair identically with every class.
    pub fn numerically_equivalent(&self, a: &Divisor, b: &Divisor) -> Result<bool, LatticeError> {
        let diff = a - b;
        for c in &self.classes {
            if !self.intersect(&diff, &Divisor::from_class(c.clone()))?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `a ≼ b` coefficientwise.
pub fn leq(a: &Divisor, b: &Divisor) -> bool {
    a.leq(b)
}

pub fn is_effective(d: &Divisor) -> bool {
    d.is_effective()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn a2() -> SurfaceModel {
        SurfaceModel::new(
            vec!["E1".into(), "E2".into()],
            vec![vec![int(-2), int(1)], vec![int(1), int(-2)]],
            Divisor::zero(),
            0,
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn intersections_on_a2() {
        let m = a2();
        let e1 = Divisor::from_class("E1");
        let e2 = Divisor::from_class("E2");
        assert_eq!(m.intersect(&e1, &e2).unwrap(), int(1));
        assert_eq!(m.self_intersection(&(&e1 + &e2)).unwrap(), int(-2));
        assert!(m.is_negative_definite(&Cycle::new(["E1", "E2"])).unwrap());
        assert!(m.is_negative_definite(&Cycle::default()).unwrap());
    }

    #[test]
    fn unknown_class_is_reported() {
        let m = a2();
        let err = m.intersect(&Divisor::from_class("H"), &Divisor::from_class("E1"));
        assert_eq!(err, Err(LatticeError::UnknownClass("H".into())));
    }

    #[test]
    fn rejects_asymmetric_matrices() {
        let err = SurfaceModel::new(
            vec!["A".into(), "B".into()],
            vec![vec![int(1), int(2)], vec![int(3), int(1)]],
            Divisor::zero(),
            0,
            vec![],
        );
        assert!(matches!(err, Err(LatticeError::NotSymmetric(..))));
    }

    #[test]
    fn ordering_and_effectivity() {
        let a = Divisor::from_terms([("A", rat(1, 2)), ("B", int(1))]);
        let b = Divisor::from_terms([("A", int(1)), ("B", int(1))]);
        assert!(leq(&a, &b));
        assert!(!leq(&b, &a));
        assert!(is_effective(&a));
        assert!(!is_effective(&(&a - &b)));
        assert!((&a - &a).is_zero());
    }
}
