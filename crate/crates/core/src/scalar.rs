//! Coefficient scalars on two domains: exact rationals while the expansion
//! stays rational, complex doubles once an irrational root enters.
//!
//! A single series never mixes the two — [`crate::puiseux::PuiseuxSeries`]
//! carries a [`Mode`] and all its coefficients match it.  Arithmetic between
//! mismatched scalars is a programming error and panics.

use num::{BigRational, ToPrimitive, Zero};
use num_complex::Complex64;
use std::fmt;

/// Coefficient domain of a computation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    /// Exact rational arithmetic; errors out when an irrational value is needed.
    Exact,
    /// Complex double precision with a global relative tolerance.
    Numeric,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => write!(f, "exact"),
            Mode::Numeric => write!(f, "numeric"),
        }
    }
}

/// A coefficient: exact rational or complex double.
#[derive(Clone, PartialEq, Debug)]
pub enum Scalar {
    Exact(BigRational),
    Numeric(Complex64),
}

impl Scalar {
    pub fn zero(mode: Mode) -> Self {
        match mode {
            Mode::Exact => Scalar::Exact(BigRational::zero()),
            Mode::Numeric => Scalar::Numeric(Complex64::ZERO),
        }
    }

    pub fn one(mode: Mode) -> Self {
        match mode {
            Mode::Exact => Scalar::Exact(BigRational::from_integer(1.into())),
            Mode::Numeric => Scalar::Numeric(Complex64::ONE),
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::Exact(r)
    }

    pub fn from_complex(z: Complex64) -> Self {
        Scalar::Numeric(z)
    }

    pub fn from_i64(n: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(n.into()))
    }

    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Exact(_) => Mode::Exact,
            Scalar::Numeric(_) => Mode::Numeric,
        }
    }

    /// Exactly zero (no tolerance involved).
    pub fn is_exact_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Numeric(z) => z.re == 0.0 && z.im == 0.0,
        }
    }

    pub fn magnitude(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().map(f64::abs).unwrap_or(f64::INFINITY),
            Scalar::Numeric(z) => z.norm(),
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Exact(r) => Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0),
            Scalar::Numeric(z) => *z,
        }
    }

    /// Reinterpret in the given mode; exact values degrade to doubles, but a
    /// numeric value never silently becomes exact.
    pub fn into_mode(self, mode: Mode) -> Option<Scalar> {
        match (self, mode) {
            (s @ Scalar::Exact(_), Mode::Exact) => Some(s),
            (s @ Scalar::Numeric(_), Mode::Numeric) => Some(s),
            (Scalar::Exact(r), Mode::Numeric) => Some(Scalar::Numeric(Complex64::new(
                r.to_f64().unwrap_or(f64::NAN),
                0.0,
            ))),
            (Scalar::Numeric(_), Mode::Exact) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Numeric(_) => None,
        }
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a + b),
            (Scalar::Numeric(a), Scalar::Numeric(b)) => Scalar::Numeric(a + b),
            _ => panic!("scalar mode mismatch in add"),
        }
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a - b),
            (Scalar::Numeric(a), Scalar::Numeric(b)) => Scalar::Numeric(a - b),
            _ => panic!("scalar mode mismatch in sub"),
        }
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a * b),
            (Scalar::Numeric(a), Scalar::Numeric(b)) => Scalar::Numeric(a * b),
            _ => panic!("scalar mode mismatch in mul"),
        }
    }

    pub fn div(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a / b),
            (Scalar::Numeric(a), Scalar::Numeric(b)) => Scalar::Numeric(a / b),
            _ => panic!("scalar mode mismatch in div"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(-a),
            Scalar::Numeric(a) => Scalar::Numeric(-a),
        }
    }

    pub fn pow(&self, n: u32) -> Scalar {
        let mut acc = Scalar::one(self.mode());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r}"),
            Scalar::Numeric(z) => {
                if z.im == 0.0 {
                    write!(f, "{:.12e}", z.re)
                } else {
                    write!(f, "({:.12e}{:+.12e}i)", z.re, z.im)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_arithmetic_is_exact() {
        let a = Scalar::from_i64(1).div(&Scalar::from_i64(3));
        let b = a.mul(&Scalar::from_i64(3));
        assert_eq!(b, Scalar::from_i64(1));
    }

    #[test]
    fn mode_degradation_is_one_way() {
        let a = Scalar::from_i64(2).into_mode(Mode::Numeric).unwrap();
        assert_eq!(a.to_complex(), Complex64::new(2.0, 0.0));
        assert!(a.into_mode(Mode::Exact).is_none());
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let a = Scalar::from_i64(2).div(&Scalar::from_i64(5));
        let cube = a.pow(3);
        assert_eq!(cube, a.mul(&a).mul(&a));
    }
}
