//! Exact bivariate polynomials f(x, y) over the rationals.
//!
//! Curves enter the pipeline in this form.  The representation is a sparse
//! term map; arithmetic covers what curve construction and differentiation
//! need, nothing more.  `Display` produces a canonical form that the CLI
//! grammar parses back (explicit `*`, `^` only with integer exponents,
//! terms ordered by decreasing y-power then increasing x-power).

use crate::error::{Error, Result};
use num::{BigInt, BigRational, One, Signed, Zero};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Sparse polynomial in x and y with exact rational coefficients.
/// Keys are `(x_power, y_power)`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        BivariatePoly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        BivariatePoly::monomial(c, 0, 0)
    }

    pub fn monomial(c: BigRational, x_pow: u32, y_pow: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((x_pow, y_pow), c);
        }
        BivariatePoly { terms }
    }

    /// x^i with coefficient one.
    pub fn x_pow(i: u32) -> Self {
        BivariatePoly::monomial(BigRational::one(), i, 0)
    }

    /// y^j with coefficient one.
    pub fn y_pow(j: u32) -> Self {
        BivariatePoly::monomial(BigRational::one(), 0, j)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), BigRational)>) -> Self {
        let mut out = BivariatePoly::zero();
        for ((i, j), c) in terms {
            out.add_term(i, j, c);
        }
        out
    }

    fn add_term(&mut self, i: u32, j: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, x_pow: u32, y_pow: u32) -> BigRational {
        self.terms
            .get(&(x_pow, y_pow))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn support(&self) -> Vec<(u32, u32)> {
        self.terms.keys().copied().collect()
    }

    pub fn deg_x(&self) -> u32 {
        self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn deg_y(&self) -> u32 {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    /// Order of f(0, y) in y: the least j with an x-free term, `None` when
    /// f(0, y) is identically zero (i.e. x divides f).
    pub fn ord_y_at_x0(&self) -> Option<u32> {
        self.terms
            .keys()
            .filter(|&&(i, _)| i == 0)
            .map(|&(_, j)| j)
            .min()
    }

    pub fn divisible_by_x(&self) -> bool {
        !self.is_zero() && self.terms.keys().all(|&(i, _)| i >= 1)
    }

    /// k-fold partial derivative with respect to y, exactly.
    pub fn y_derivative(&self, k: u32) -> BivariatePoly {
        if k == 0 {
            return self.clone();
        }
        let mut out = BivariatePoly::zero();
        for (&(i, j), c) in &self.terms {
            if j < k {
                continue;
            }
            // falling factorial j (j-1) ... (j-k+1)
            let mut fac = BigInt::one();
            for t in 0..k {
                fac *= BigInt::from(j - t);
            }
            out.add_term(i, j - k, c * BigRational::from_integer(fac));
        }
        out
    }

    pub fn pow(&self, n: u32) -> BivariatePoly {
        let mut acc = BivariatePoly::constant(BigRational::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: Complex64, y: Complex64) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for (&(i, j), c) in &self.terms {
            let cf = Complex64::new(num::ToPrimitive::to_f64(c).unwrap_or(f64::NAN), 0.0);
            acc += cf * x.powu(i) * y.powu(j);
        }
        acc
    }

    /// Validate that f cuts out a curve germ the expansion can process.
    pub fn validate_as_curve(&self) -> Result<()> {
        if self.is_zero() {
            return Err(Error::ZeroCurve);
        }
        if self.terms.contains_key(&(0, 0)) {
            return Err(Error::NotThroughOrigin);
        }
        if self.divisible_by_x() {
            return Err(Error::DivisibleByX);
        }
        Ok(())
    }
}

impl Add for &BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c.clone());
        }
        out
    }
}

impl Mul for &BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term(i, j, -c.clone());
        }
        out
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Decreasing y-power, then increasing x-power.
        let mut keys: Vec<(u32, u32)> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        for (idx, &(i, j)) in keys.iter().enumerate() {
            let c = &self.terms[&(i, j)];
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !abs.is_one() || (i == 0 && j == 0) {
                parts.push(format!("{abs}"));
            }
            match i {
                0 => {}
                1 => parts.push("x".into()),
                _ => parts.push(format!("x^{i}")),
            }
            match j {
                0 => {}
                1 => parts.push("y".into()),
                _ => parts.push(format!("y^{j}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}
