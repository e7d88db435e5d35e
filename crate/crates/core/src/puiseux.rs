//! Fractional-power series in x, their contact order, unit rotations, and
//! pseudo-ball membership.
//!
//! A series is a finite sum of terms `c * x^e` with exponents on a `1/ram`
//! grid, plus a truncation bound: every term below the bound is stored, and
//! nothing is claimed at or beyond it.  Contact order of two series is the
//! order of their difference; since series are truncated, the answer can be
//! an exact exponent, a lower bound, or "equal for all we know".
//!
//! The unit rotation ("star") action multiplies the coefficient of `x^{i/m}`
//! by the i-th power of a fixed m-th root of unity; it permutes the roots of
//! any curve whose series live on the `1/m` grid, and preserves contact.

use crate::error::{Error, Result};
use crate::exponent::{Exponent, OrderBound, Trunc};
use crate::scalar::{Mode, Scalar};
use num::integer::lcm;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;

/// A truncated fractional-power series.
#[derive(Clone, PartialEq, Debug)]
pub struct PuiseuxSeries {
    mode: Mode,
    ram: i64,
    terms: BTreeMap<Exponent, Scalar>,
    trunc: Trunc,
}

impl PuiseuxSeries {
    /// Build a series from terms.  Exactly-zero coefficients are dropped;
    /// a term at or beyond the truncation bound is an error.
    pub fn new(
        mode: Mode,
        terms: impl IntoIterator<Item = (Exponent, Scalar)>,
        trunc: Trunc,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        let mut ram: i64 = 1;
        for (e, c) in terms {
            if c.is_exact_zero() {
                continue;
            }
            if c.mode() != mode {
                return Err(Error::InvalidSeries(format!(
                    "coefficient at x^{e} has mode {}, series is {}",
                    c.mode(),
                    mode
                )));
            }
            if !trunc.admits(e) {
                return Err(Error::InvalidSeries(format!(
                    "term at x^{e} lies at or beyond the truncation bound {trunc}"
                )));
            }
            ram = lcm(ram, e.denom());
            if map.insert(e, c).is_some() {
                return Err(Error::InvalidSeries(format!("duplicate term at x^{e}")));
            }
        }
        Ok(PuiseuxSeries {
            mode,
            ram,
            terms: map,
            trunc,
        })
    }

    /// The zero series, known to all orders.
    pub fn zero(mode: Mode) -> Self {
        PuiseuxSeries {
            mode,
            ram: 1,
            terms: BTreeMap::new(),
            trunc: Trunc::Infinite,
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Least common denominator of the visible exponents (the visible
    /// ramification index).
    pub fn ram(&self) -> i64 {
        self.ram
    }

    pub fn trunc(&self) -> Trunc {
        self.trunc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff_at(&self, e: Exponent) -> Option<&Scalar> {
        self.terms.get(&e)
    }

    /// Sorted exponents of the stored (nonzero) terms.
    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().copied().collect()
    }

    /// Largest coefficient magnitude; zero for the zero series.
    pub fn coeff_scale(&self) -> f64 {
        self.terms
            .values()
            .map(Scalar::magnitude)
            .fold(0.0, f64::max)
    }

    /// Order of the series: exponent of the first term, or a bound when no
    /// term is visible before the truncation cuts in.
    pub fn order(&self) -> OrderBound {
        match self.terms.keys().next() {
            Some(e) => OrderBound::Finite(*e),
            None => match self.trunc {
                Trunc::Infinite => OrderBound::Infinite,
                Trunc::At(t) => OrderBound::AtLeast(t),
            },
        }
    }

    /// Keep terms strictly below `r` and cap the truncation bound at `r`.
    pub fn truncate(&self, r: Trunc) -> PuiseuxSeries {
        let trunc = self.trunc.min(r);
        let terms: BTreeMap<Exponent, Scalar> = self
            .terms
            .iter()
            .filter(|(e, _)| trunc.admits(**e))
            .map(|(e, c)| (*e, c.clone()))
            .collect();
        let ram = terms.keys().fold(1i64, |acc, e| lcm(acc, e.denom()));
        PuiseuxSeries {
            mode: self.mode,
            ram,
            terms,
            trunc,
        }
    }

    /// Termwise sum on the common known range.
    pub fn add(&self, other: &PuiseuxSeries) -> Result<PuiseuxSeries> {
        self.combine(other, false)
    }

    /// Termwise difference on the common known range.
    pub fn sub(&self, other: &PuiseuxSeries) -> Result<PuiseuxSeries> {
        self.combine(other, true)
    }

    fn combine(&self, other: &PuiseuxSeries, negate: bool) -> Result<PuiseuxSeries> {
        if self.mode != other.mode {
            return Err(Error::InvalidSeries(
                "cannot combine series of different modes".into(),
            ));
        }
        let trunc = self.trunc.min(other.trunc);
        let mut map: BTreeMap<Exponent, Scalar> = BTreeMap::new();
        for (e, c) in &self.terms {
            if trunc.admits(*e) {
                map.insert(*e, c.clone());
            }
        }
        for (e, c) in &other.terms {
            if !trunc.admits(*e) {
                continue;
            }
            let v = match map.remove(e) {
                Some(prev) => {
                    if negate {
                        prev.sub(c)
                    } else {
                        prev.add(c)
                    }
                }
                None => {
                    if negate {
                        c.neg()
                    } else {
                        c.clone()
                    }
                }
            };
            if !v.is_exact_zero() {
                map.insert(*e, v);
            }
        }
        PuiseuxSeries::new(self.mode, map, trunc)
    }

    /// Contact order with another series: the order of the difference, read
    /// off the merged supports below the common truncation bound.  In numeric
    /// mode, coefficients within `tol` of each other (relative to the larger
    /// coefficient scale of the two series) count as equal.
    pub fn contact_order(&self, other: &PuiseuxSeries, tol: f64) -> Result<OrderBound> {
        if self.mode != other.mode {
            return Err(Error::InvalidSeries(
                "cannot compare series of different modes".into(),
            ));
        }
        let trunc = self.trunc.min(other.trunc);
        let scale = self.coeff_scale().max(other.coeff_scale());
        let mut exps: Vec<Exponent> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .copied()
            .filter(|e| trunc.admits(*e))
            .collect();
        exps.sort();
        exps.dedup();
        for e in exps {
            let a = self.terms.get(&e);
            let b = other.terms.get(&e);
            let differ = match (self.mode, a, b) {
                (_, None, None) => false,
                (Mode::Exact, a, b) => {
                    let zero = Scalar::zero(Mode::Exact);
                    a.unwrap_or(&zero) != b.unwrap_or(&zero)
                }
                (Mode::Numeric, a, b) => {
                    let av = a.map(Scalar::to_complex).unwrap_or(Complex64::ZERO);
                    let bv = b.map(Scalar::to_complex).unwrap_or(Complex64::ZERO);
                    (av - bv).norm() > tol * scale
                }
            };
            if differ {
                return Ok(OrderBound::Finite(e));
            }
        }
        Ok(match trunc {
            Trunc::Infinite => OrderBound::Infinite,
            Trunc::At(t) => OrderBound::AtLeast(t),
        })
    }

    /// Unit rotation: multiply the coefficient of `x^{i/m}` by `zeta^(j*i)`
    /// where `zeta = exp(2 pi I / m)`.  Requires `m` to be a multiple of the
    /// visible ramification index.  Preserves trunc and multiplicity-free
    /// structure; in exact mode only rotations with rational multipliers
    /// (i.e. +-1) are representable.
    pub fn star(&self, j: i64, m: i64) -> Result<PuiseuxSeries> {
        if m < 1 || m % self.ram != 0 {
            return Err(Error::IndexMismatch(format!(
                "star rotation needs m divisible by ram = {}, got m = {m}",
                self.ram
            )));
        }
        let mut terms: BTreeMap<Exponent, Scalar> = BTreeMap::new();
        for (e, c) in &self.terms {
            let i = e
                .scaled(m)
                .expect("ram divides m, so e*m is an integer");
            let t = (j.wrapping_mul(i)).rem_euclid(m);
            let rotated = match self.mode {
                Mode::Exact => {
                    if t == 0 {
                        c.clone()
                    } else if 2 * t == m {
                        c.neg()
                    } else {
                        return Err(Error::ExactUnavailable(format!(
                            "unit rotation by exp(2 pi i {t}/{m}) at x^{e}"
                        )));
                    }
                }
                Mode::Numeric => {
                    let theta = 2.0 * std::f64::consts::PI * (t as f64) / (m as f64);
                    c.mul(&Scalar::from_complex(Complex64::from_polar(1.0, theta)))
                }
            };
            terms.insert(*e, rotated);
        }
        Ok(PuiseuxSeries {
            mode: self.mode,
            ram: self.ram,
            terms,
            trunc: self.trunc,
        })
    }

    /// Evaluate the truncated series at a complex point, using principal
    /// branches for the fractional powers.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for (e, c) in &self.terms {
            acc += c.to_complex() * x.powc(Complex64::new(e.to_f64(), 0.0));
        }
        acc
    }

    /// Convert every coefficient to the numeric domain.
    pub fn to_numeric(&self) -> PuiseuxSeries {
        if self.mode == Mode::Numeric {
            return self.clone();
        }
        PuiseuxSeries {
            mode: Mode::Numeric,
            ram: self.ram,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, Scalar::from_complex(c.to_complex())))
                .collect(),
            trunc: self.trunc,
        }
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        } else {
            for (idx, (e, c)) in self.terms.iter().enumerate() {
                if idx > 0 {
                    write!(f, " + ")?;
                }
                if e.is_zero() {
                    write!(f, "{c}")?;
                } else if e.is_integer() {
                    write!(f, "{c}*x^{e}")?;
                } else {
                    write!(f, "{c}*x^({e})")?;
                }
            }
        }
        if let Trunc::At(t) = self.trunc {
            write!(f, " + O(x^({t}))")?;
        }
        Ok(())
    }
}

/// A pseudo-ball: the set of series sharing a given truncation ("center")
/// below a height.  Two pseudo-balls of the same height are equal or
/// disjoint; distinct heights nest.
#[derive(Clone, Debug)]
pub struct PseudoBall {
    center: PuiseuxSeries,
    height: Exponent,
}

impl PseudoBall {
    /// The center is canonicalized by truncating it at the height.
    pub fn new(center: &PuiseuxSeries, height: Exponent) -> Self {
        PseudoBall {
            center: center.truncate(Trunc::At(height)),
            height,
        }
    }

    pub fn center(&self) -> &PuiseuxSeries {
        &self.center
    }

    pub fn height(&self) -> Exponent {
        self.height
    }

    /// Membership of a series, when decidable at its truncation.
    pub fn contains(&self, s: &PuiseuxSeries, tol: f64) -> Result<bool> {
        let contact = self.center.contact_order(s, tol)?;
        contact.known_at_least(self.height).ok_or_else(|| {
            Error::DepthInsufficient(format!(
                "series truncated before ball height {}",
                self.height
            ))
        })
    }
}

/// Coefficient of `x^height` in a series known to lie in the ball: the
/// "leading coefficient relative to the ball".  Zero (in the series' own
/// mode) when the series has no term at the height.
pub fn leading_coeff_wrt(s: &PuiseuxSeries, ball: &PseudoBall, tol: f64) -> Result<Scalar> {
    if !ball.contains(s, tol)? {
        return Err(Error::BallMismatch(format!(
            "series does not lie in the ball of height {}",
            ball.height()
        )));
    }
    if !s.trunc().exceeds(ball.height()) {
        return Err(Error::DepthInsufficient(format!(
            "series truncated at {} cannot be read at height {}",
            s.trunc(),
            ball.height()
        )));
    }
    Ok(s.coeff_at(ball.height())
        .cloned()
        .unwrap_or_else(|| Scalar::zero(s.mode())))
}
