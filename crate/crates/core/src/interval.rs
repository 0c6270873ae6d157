//! Closed intervals with rational endpoints. Every operation returns an
//! interval containing all possible exact results, so a comparison that
//! separates two intervals certifies the comparison of the enclosed reals.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;
use crate::verdict::Verdict;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IntervalError {
    #[error("square root of negative value {0}")]
    NegativeSqrt(Rational),
    #[error("division by an interval containing zero")]
    DivisionByZero,
    #[error("empty interval [{0}, {1}]")]
    Empty(Rational, Rational),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    lo: Rational,
    hi: Rational,
}

impl RationalInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, IntervalError> {
        if lo > hi {
            return Err(IntervalError::Empty(lo, hi));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(v: Rational) -> Self {
        Self { lo: v.clone(), hi: v }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Rational::zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn neg(&self) -> Self {
        Self { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn add_exact(&self, v: &Rational) -> Self {
        Self { lo: &self.lo + v, hi: &self.hi + v }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if c.is_negative() { Self { lo: b, hi: a } } else { Self { lo: a, hi: b } }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = p.iter().min().expect("four products").clone();
        let hi = p.iter().max().expect("four products").clone();
        Self { lo, hi }
    }

    pub fn recip(&self) -> Result<Self, IntervalError> {
        if self.contains_zero() {
            return Err(IntervalError::DivisionByZero);
        }
        Ok(Self { lo: self.hi.recip(), hi: self.lo.recip() })
    }

    pub fn div(&self, o: &Self) -> Result<Self, IntervalError> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn div_exact(&self, c: &Rational) -> Result<Self, IntervalError> {
        if c.is_zero() {
            return Err(IntervalError::DivisionByZero);
        }
        Ok(self.scale(&c.recip()))
    }

    /// Certified `self <= other`.
    pub fn le(&self, other: &Self) -> Verdict {
        if self.hi <= other.lo {
            Verdict::Holds
        } else if self.lo > other.hi {
            Verdict::Fails
        } else {
            Verdict::Unknown
        }
    }

    pub fn ge(&self, other: &Self) -> Verdict {
        other.le(self)
    }

    /// Certified `self < other`.
    pub fn lt(&self, other: &Self) -> Verdict {
        if self.hi < other.lo {
            Verdict::Holds
        } else if self.lo >= other.hi {
            Verdict::Fails
        } else {
            Verdict::Unknown
        }
    }

    pub fn le_exact(&self, v: &Rational) -> Verdict {
        self.le(&Self::point(v.clone()))
    }

    pub fn ge_exact(&self, v: &Rational) -> Verdict {
        self.ge(&Self::point(v.clone()))
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// `Some(√r)` when `r` is the square of a rational.
pub fn exact_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rational::new(sn, sd))
}

/// Enclosure of `√v` of width `2^-bits`, or the exact point when `v` is a
/// rational square.
pub fn sqrt_interval(v: &Rational, bits: u32) -> Result<RationalInterval, IntervalError> {
    if v.is_negative() {
        return Err(IntervalError::NegativeSqrt(v.clone()));
    }
    if let Some(s) = exact_sqrt(v) {
        return Ok(RationalInterval::point(s));
    }
    let a = ((v.numer() << (2 * bits as usize)) / v.denom()).sqrt();
    Ok(RationalInterval { lo: dyadic(a.clone(), bits), hi: dyadic(a + 1u32, bits) })
}

/// `a / 2^bits` in lowest terms, without a general gcd.
fn dyadic(a: BigInt, bits: u32) -> Rational {
    let tz = a.trailing_zeros().map_or(bits as u64, |t| t.min(bits as u64));
    if a.is_zero() {
        return Rational::zero();
    }
    Rational::new_raw(a >> tz as usize, BigInt::one() << (bits as u64 - tz) as usize)
}

/// Default working precision in bits.
pub const DEFAULT_BITS: u32 = 64;

/// Number of precision doublings tried before a verdict is left unknown.
pub const RETRIES: u32 = 2;

/// Evaluate at `bits`, doubling up to [`RETRIES`] times while `unknown`
/// reports an undecided verdict. Returns the result and the precision used.
pub fn with_retries<T>(bits: u32, eval: impl Fn(u32) -> T, unknown: impl Fn(&T) -> bool) -> (T, u32) {
    let mut b = bits.max(1);
    let mut out = eval(b);
    for _ in 0..RETRIES {
        if !unknown(&out) {
            break;
        }
        b = b.saturating_mul(2);
        out = eval(b);
    }
    (out, b)
}
