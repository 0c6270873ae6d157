//! Fraction-free (Bareiss) elimination over the rationals.
//!
//! Rows are first cleared of denominators by a positive scale, so all
//! intermediate work happens in `BigInt` with exact divisions.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::{common_denominator, Rational};

/// Scale each row by the lcm of its denominators.
fn integer_rows(m: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|row| {
            let l = common_denominator(row);
            row.iter()
                .map(|v| (v * Rational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect()
}

/// Leading principal minors Δ₁..Δₙ of the row-scaled integer matrix,
/// stopping at the first zero minor (later ones are not defined without
/// pivoting). Row scaling multiplies Δₖ by a positive constant, so signs
/// agree with the original matrix.
pub fn leading_minor_signs(m: &[Vec<Rational>]) -> Vec<i8> {
    let n = m.len();
    let mut a = integer_rows(m);
    let mut prev = BigInt::one();
    let mut signs = Vec::with_capacity(n);
    for k in 0..n {
        let pivot = a[k][k].clone();
        signs.push(sign(&pivot));
        if pivot.is_zero() {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &pivot * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = pivot;
    }
    signs
}

fn sign(v: &BigInt) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// Sylvester's criterion: negative definite iff `(-1)^k Δₖ > 0` for all k.
/// The empty matrix counts as negative definite.
pub fn is_negative_definite(m: &[Vec<Rational>]) -> bool {
    let signs = leading_minor_signs(m);
    signs.len() == m.len()
        && signs
            .iter()
            .enumerate()
            .all(|(k, &s)| s == if k % 2 == 0 { -1 } else { 1 })
}

/// Solve `m · x = rhs` exactly. Returns `None` when `m` is singular.
pub fn solve(m: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = m.len();
    assert_eq!(rhs.len(), n, "right-hand side length mismatch");
    if n == 0 {
        return Some(Vec::new());
    }
    let augmented: Vec<Vec<Rational>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let mut a = integer_rows(&augmented);
    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n).find(|&r| !a[r][k].is_zero())?;
        a.swap(k, p);
        for i in k + 1..n {
            for j in k + 1..=n {
                let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(a[i][n].clone());
        for j in i + 1..n {
            acc -= Rational::from_integer(a[i][j].clone()) * &x[j];
        }
        x[i] = acc / Rational::from_integer(a[i][i].clone());
    }
    Some(x)
}

/// Exact determinant by fraction-free elimination with row pivoting.
pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    let scales: Vec<BigInt> = m.iter().map(|row| common_denominator(row)).collect();
    let mut a = integer_rows(m);
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let total: BigInt = scales.iter().product();
    let det = Rational::new(a[n - 1][n - 1].clone(), total);
    if negate { -det } else { det }
}

pub fn mat_vec(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}
