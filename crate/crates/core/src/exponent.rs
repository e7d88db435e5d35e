//! Exact rational exponents of fractional powers of x, plus the truncation
//! and order bounds built from them.
//!
//! Exponents stay machine-sized: every quantity seen here is a ratio of two
//! small integers (heights b_i/b_0, slopes of Newton polygon edges, term
//! exponents on a 1/ram grid), so `Ratio<i64>` is plenty.

use num::rational::Ratio;
use num::{Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Exponent of a fractional power of x: an exact rational in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Exponent(Ratio<i64>);

impl Exponent {
    /// `num/den` in lowest terms. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        Exponent(Ratio::new(num, den))
    }

    pub fn from_int(n: i64) -> Self {
        Exponent(Ratio::from_integer(n))
    }

    pub fn from_ratio(r: Ratio<i64>) -> Self {
        Exponent(r)
    }

    pub fn zero() -> Self {
        Exponent(Ratio::zero())
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    /// Always positive.
    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn ratio(&self) -> Ratio<i64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// `self * m` when that is an integer, `None` otherwise.
    pub fn scaled(&self, m: i64) -> Option<i64> {
        let r = self.0 * Ratio::from_integer(m);
        if r.is_integer() {
            Some(r.to_integer())
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }
}

impl Add for Exponent {
    type Output = Exponent;
    fn add(self, rhs: Exponent) -> Exponent {
        Exponent(self.0 + rhs.0)
    }
}

impl Sub for Exponent {
    type Output = Exponent;
    fn sub(self, rhs: Exponent) -> Exponent {
        Exponent(self.0 - rhs.0)
    }
}

impl Mul<i64> for Exponent {
    type Output = Exponent;
    fn mul(self, rhs: i64) -> Exponent {
        Exponent(self.0 * Ratio::from_integer(rhs))
    }
}

impl Div<i64> for Exponent {
    type Output = Exponent;
    fn div(self, rhs: i64) -> Exponent {
        Exponent(self.0 / Ratio::from_integer(rhs))
    }
}

impl Neg for Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        Exponent(-self.0)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Truncation bound of a series: all terms below the bound are stored, and
/// nothing is claimed at or beyond it.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Trunc {
    At(Exponent),
    Infinite,
}

impl Trunc {
    /// Is exponent `e` strictly below the bound (i.e. storable)?
    pub fn admits(&self, e: Exponent) -> bool {
        match self {
            Trunc::At(t) => e < *t,
            Trunc::Infinite => true,
        }
    }

    /// Is every exponent `< e` below the bound (so the coefficient at any such
    /// exponent, including absence, is known)?  For reading the coefficient at
    /// `e` itself the bound must exceed `e` strictly.
    pub fn exceeds(&self, e: Exponent) -> bool {
        match self {
            Trunc::At(t) => *t > e,
            Trunc::Infinite => true,
        }
    }

    pub fn min(self, other: Trunc) -> Trunc {
        match (self, other) {
            (Trunc::Infinite, o) => o,
            (s, Trunc::Infinite) => s,
            (Trunc::At(a), Trunc::At(b)) => Trunc::At(a.min(b)),
        }
    }
}

impl PartialOrd for Trunc {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Trunc {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match (self, other) {
            (Trunc::Infinite, Trunc::Infinite) => Equal,
            (Trunc::Infinite, _) => Greater,
            (_, Trunc::Infinite) => Less,
            (Trunc::At(a), Trunc::At(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Trunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Trunc::At(e) => write!(f, "{e}"),
            Trunc::Infinite => write!(f, "inf"),
        }
    }
}

/// Order of a series (or of a difference of two series), which may be only
/// partially known when a truncation cuts in before any coefficient differs.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrderBound {
    /// Exactly this order: a nonzero coefficient sits at the exponent.
    Finite(Exponent),
    /// At least this much; the series is indistinguishable from zero below it.
    AtLeast(Exponent),
    /// Identically zero as far as the data can ever tell.
    Infinite,
}

impl OrderBound {
    /// `Some(true)`/`Some(false)` when the comparison `order >= e` is decided,
    /// `None` when the truncation cuts in first.
    pub fn known_at_least(&self, e: Exponent) -> Option<bool> {
        match self {
            OrderBound::Finite(v) => Some(*v >= e),
            OrderBound::AtLeast(t) => {
                if *t >= e {
                    Some(true)
                } else {
                    None
                }
            }
            OrderBound::Infinite => Some(true),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, OrderBound::Finite(_))
    }

    /// The exponent carried by the bound, if any.
    pub fn value(&self) -> Option<Exponent> {
        match self {
            OrderBound::Finite(e) | OrderBound::AtLeast(e) => Some(*e),
            OrderBound::Infinite => None,
        }
    }
}

impl fmt::Display for OrderBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderBound::Finite(e) => write!(f, "{e}"),
            OrderBound::AtLeast(e) => write!(f, ">= {e}"),
            OrderBound::Infinite => write!(f, "inf"),
        }
    }
}
