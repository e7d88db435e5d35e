//! Discrete invariants of a branch and closed-form decomposition predictions.
//!
//! The characteristic sequence (b_0; b_1, ..., b_h) of a branch drives
//! everything downstream:
//!
//! - `characteristic_of_series` reads the sequence off a root's support;
//!   `resolve_curve` does the same for a curve, expanding as deep as needed
//!   and certifying irreducibility along the way.
//! - `derivative_shape` gives the exact factorization shape z^a (z^n - c)^b
//!   (times d simple factors in z^n) of the k-th derivative of (z^n - c)^e;
//!   `derivative_shape_oracle` recomputes it by brute-force differentiation.
//! - `predicted_decomposition` turns the sequence into the full expected
//!   contact decomposition of the k-th polar: one bunch per contact value
//!   b_i/b_0 for i up to the threshold index i_k, with the degrees of both
//!   refinement parts, per-ball counts, and the structural corollary flags.

use crate::bivar::BivariatePoly;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::exponent::{Exponent, OrderBound, Trunc};
use crate::newton::{group_branches, puiseux_roots, RootSet};
use crate::puiseux::PuiseuxSeries;
use crate::unipoly::{
    rp_deg, rp_derivative, rp_div_rem, rp_eval, rp_gcd, rp_is_zero, rp_mul, RatPoly,
};
use num::integer::gcd;
use num::{BigRational, One, Zero};
use std::fmt;

// ---------------------------------------------------------------------------
// characteristic sequences
// ---------------------------------------------------------------------------

/// Characteristic sequence of a branch: the exponents b_0 < b_1 < ... < b_h
/// together with the gcd chain e_i = gcd(e_{i-1}, b_i) and the quotients
/// n_i = e_{i-1} / e_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicData {
    b: Vec<i64>,
    e: Vec<i64>,
    n_seq: Vec<i64>,
}

impl CharacteristicData {
    /// Validate and derive the gcd chain.  Requirements: b_0 >= 1; b_0 = 1
    /// only as the singleton sequence (a smooth branch); b strictly
    /// increasing; every b_{i+1} indivisible by e_i (so the chain strictly
    /// drops); e_h = 1.
    pub fn new(b: Vec<i64>) -> Result<Self> {
        if b.is_empty() {
            return Err(Error::InvalidCharacteristic("empty sequence".into()));
        }
        let b0 = b[0];
        if b0 < 1 {
            return Err(Error::InvalidCharacteristic(format!(
                "b_0 = {b0} must be positive"
            )));
        }
        if b0 == 1 && b.len() > 1 {
            return Err(Error::InvalidCharacteristic(
                "a smooth branch has no characteristic exponents beyond b_0".into(),
            ));
        }
        let mut e = vec![b0];
        let mut n_seq = Vec::new();
        for i in 1..b.len() {
            if b[i] <= b[i - 1] {
                return Err(Error::InvalidCharacteristic(format!(
                    "sequence must increase strictly, got {} after {}",
                    b[i],
                    b[i - 1]
                )));
            }
            let prev = e[i - 1];
            if b[i] % prev == 0 {
                return Err(Error::InvalidCharacteristic(format!(
                    "b_{i} = {} is divisible by e_{} = {prev}",
                    b[i],
                    i - 1
                )));
            }
            let next = gcd(prev, b[i]);
            n_seq.push(prev / next);
            e.push(next);
        }
        if *e.last().unwrap() != 1 {
            return Err(Error::InvalidCharacteristic(format!(
                "gcd chain ends at {} instead of 1",
                e.last().unwrap()
            )));
        }
        Ok(CharacteristicData { b, e, n_seq })
    }

    /// b_0, the multiplicity of the branch.
    pub fn b0(&self) -> i64 {
        self.b[0]
    }

    /// Number h of characteristic exponents beyond b_0.
    pub fn h(&self) -> usize {
        self.b.len() - 1
    }

    pub fn b(&self) -> &[i64] {
        &self.b
    }

    pub fn e(&self) -> &[i64] {
        &self.e
    }

    /// Quotients n_1, ..., n_h (all >= 2).
    pub fn n_seq(&self) -> &[i64] {
        &self.n_seq
    }

    /// The i-th characteristic contact value b_i / b_0 (1 <= i <= h).
    pub fn exponent(&self, i: usize) -> Exponent {
        assert!(i >= 1 && i <= self.h(), "exponent index {i} out of range");
        Exponent::new(self.b[i], self.b[0])
    }

    /// Characteristic sequence of the truncation at level i: the prefix
    /// (b_0, ..., b_i) rescaled by e_i.  This is the sequence of every
    /// threshold semi-root of index i.
    pub fn prefix(&self, i: usize) -> CharacteristicData {
        assert!(i <= self.h(), "prefix index {i} out of range");
        let ei = self.e[i];
        let b: Vec<i64> = self.b[..=i].iter().map(|&x| x / ei).collect();
        CharacteristicData::new(b).expect("prefix of a valid sequence is valid")
    }
}

impl fmt::Display for CharacteristicData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.b[0])?;
        for (pos, x) in self.b[1..].iter().enumerate() {
            if pos == 0 {
                write!(f, "; {x}")?;
            } else {
                write!(f, ", {x}")?;
            }
        }
        write!(f, ")")
    }
}

/// Read the characteristic sequence off a series, taking n as b_0.
///
/// Every support exponent must land on the 1/n grid.  The recursion walks the
/// support in increasing order, recording each exponent not divisible by the
/// running gcd.  A truncated series that exhausts its visible support before
/// the chain reaches 1 is reported as too shallow; a complete series in that
/// situation is not a primitive parameterization for index n at all.
pub fn characteristic_of_series(s: &PuiseuxSeries, n: i64) -> Result<CharacteristicData> {
    if n < 1 {
        return Err(Error::IndexMismatch(format!("index n = {n} must be positive")));
    }
    let mut scaled = Vec::new();
    for e in s.support() {
        match e.scaled(n) {
            Some(i) => scaled.push(i),
            None => {
                return Err(Error::IndexMismatch(format!(
                    "exponent {e} does not lie on the 1/{n} grid"
                )))
            }
        }
    }
    let mut b = vec![n];
    let mut e_cur = n;
    for i in scaled {
        if e_cur == 1 {
            break;
        }
        if i % e_cur != 0 {
            b.push(i);
            e_cur = gcd(e_cur, i);
        }
    }
    if e_cur != 1 {
        return match s.trunc() {
            Trunc::Infinite => Err(Error::IndexMismatch(format!(
                "complete series never reaches gcd 1 for index {n}; \
                 the parameterization is not primitive"
            ))),
            Trunc::At(t) => Err(Error::DepthInsufficient(format!(
                "gcd chain stuck at {e_cur} with support known only below {t}"
            ))),
        };
    }
    CharacteristicData::new(b)
}

/// A curve certified irreducible, with its roots and characteristic sequence.
#[derive(Clone, Debug)]
pub struct BranchResolution {
    pub roots: RootSet,
    pub chr: CharacteristicData,
}

/// Expand a curve until its branch structure is certain; error out unless it
/// is a single branch of multiplicity one, and read off its characteristic
/// sequence.
pub fn resolve_curve(f: &BivariatePoly, cfg: &Config) -> Result<BranchResolution> {
    let mut depth = Exponent::from_int(4);
    let mut last: Option<Error> = None;
    for _ in 0..12 {
        let rs = puiseux_roots(f, depth, cfg)?;
        let unresolved = rs
            .entries
            .iter()
            .any(|e| e.mult > 1 && e.series.trunc() != Trunc::Infinite);
        if unresolved {
            last = Some(Error::DepthInsufficient(format!(
                "multiple branches unresolved at depth {depth}"
            )));
            depth = depth * 2;
            continue;
        }
        match group_branches(&rs, cfg.tol) {
            Err(e @ Error::AmbiguousGrouping(_)) => {
                last = Some(e);
                depth = depth * 2;
                continue;
            }
            Err(e) => return Err(e),
            Ok(groups) => {
                if groups.orbits.len() != 1 || groups.orbits[0].degree != rs.total() {
                    return Err(Error::NotIrreducible(format!(
                        "found {} factors over {} roots",
                        groups.orbits.len(),
                        rs.total()
                    )));
                }
                let rep = &rs.entries[groups.orbits[0].members[0]].series;
                match characteristic_of_series(rep, rs.total() as i64) {
                    Ok(chr) => return Ok(BranchResolution { roots: rs, chr }),
                    Err(e @ Error::DepthInsufficient(_)) => {
                        last = Some(e);
                        depth = depth * 2;
                    }
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Err(last.unwrap_or_else(|| Error::DepthInsufficient("resolution did not stabilize".into())))
}

// ---------------------------------------------------------------------------
// derivative shape
// ---------------------------------------------------------------------------

/// Shape of the k-th derivative of (z^n - c)^e with c != 0 and 1 <= k < ne:
/// up to a constant it is z^a (z^n - c)^b times d distinct simple factors
/// (z^n - c_j) with c_j distinct from 0 and c.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DerivativeShape {
    pub a: i64,
    pub b: i64,
    pub d: i64,
}

/// Closed form: a = (-k) mod n, b = max(e - k, 0), d = min(e, k) - ceil(k/n).
pub fn derivative_shape(n: i64, e: i64, k: i64) -> Result<DerivativeShape> {
    if n < 1 || e < 1 {
        return Err(Error::InvalidShape(format!("need n, e >= 1, got n = {n}, e = {e}")));
    }
    if k < 1 || k >= n * e {
        return Err(Error::InvalidShape(format!(
            "need 1 <= k < ne = {}, got k = {k}",
            n * e
        )));
    }
    let a = (-k).rem_euclid(n);
    let b = (e - k).max(0);
    let d = e.min(k) - (k + n - 1) / n;
    debug_assert!(d >= 0);
    debug_assert_eq!(a + (b + d) * n, n * e - k, "degrees must balance");
    Ok(DerivativeShape { a, b, d })
}

/// Brute-force oracle: differentiate (z^n - c)^e exactly k times, then read
/// off the z-power, the (z^n - c)-power, and collapse the rest to a
/// polynomial in z^n — verifying on the way that the leftover is squarefree
/// and avoids both 0 and c.
pub fn derivative_shape_oracle(n: i64, e: i64, k: i64, c: &BigRational) -> Result<DerivativeShape> {
    if n < 1 || e < 1 || k < 1 || k >= n * e {
        return Err(Error::InvalidShape(format!("n = {n}, e = {e}, k = {k}")));
    }
    if c.is_zero() {
        return Err(Error::InvalidShape("c must be nonzero".into()));
    }
    let mut base: RatPoly = vec![BigRational::zero(); n as usize + 1];
    base[0] = -c.clone();
    base[n as usize] = BigRational::one();
    let mut poly: RatPoly = vec![BigRational::one()];
    for _ in 0..e {
        poly = rp_mul(&poly, &base);
    }
    for _ in 0..k {
        poly = rp_derivative(&poly);
    }
    debug_assert!(!rp_is_zero(&poly));
    let a = poly.iter().take_while(|c| c.is_zero()).count() as i64;
    let mut cur: RatPoly = poly[a as usize..].to_vec();
    let mut b = 0i64;
    loop {
        let (q, r) = rp_div_rem(&cur, &base);
        if rp_is_zero(&r) && !q.is_empty() {
            cur = q;
            b += 1;
        } else {
            break;
        }
    }
    // The cofactor must be a polynomial in w = z^n; collapse it.
    let mut h: RatPoly = Vec::new();
    for (idx, coeff) in cur.iter().enumerate() {
        if idx % n as usize == 0 {
            h.push(coeff.clone());
        } else if !coeff.is_zero() {
            return Err(Error::PropertyViolation(format!(
                "derivative cofactor has a z^{idx} term outside the z^{n} grid"
            )));
        }
    }
    let d = rp_deg(&h).unwrap_or(0) as i64;
    if rp_eval(&h, &BigRational::zero()).is_zero() {
        return Err(Error::PropertyViolation(
            "derivative cofactor vanishes at 0".into(),
        ));
    }
    if rp_eval(&h, c).is_zero() {
        return Err(Error::PropertyViolation(
            "derivative cofactor vanishes at c".into(),
        ));
    }
    if d > 0 {
        let g = rp_gcd(&h, &rp_derivative(&h));
        if rp_deg(&g).unwrap_or(0) > 0 {
            return Err(Error::PropertyViolation(
                "derivative cofactor is not squarefree".into(),
            ));
        }
    }
    Ok(DerivativeShape { a, b, d })
}

// ---------------------------------------------------------------------------
// predicted decomposition
// ---------------------------------------------------------------------------

/// Threshold index i_k: the unique i with e_i <= k < e_{i-1}.
pub fn index_ik(chr: &CharacteristicData, k: i64) -> Result<usize> {
    if k < 1 || k >= chr.b0() {
        return Err(Error::KOutOfRange {
            k: k.max(0) as u64,
            n: chr.b0() as u64,
        });
    }
    for i in 1..=chr.h() {
        if chr.e()[i] <= k {
            return Ok(i);
        }
    }
    unreachable!("e_h = 1 <= k")
}

/// Structural corollary flags attached to the threshold bunch (or, for the
/// semi-root flag, to any bunch whose quotient divides k + 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CorollaryFlag {
    /// k = e_{i_k - 1} - 1: the threshold bunch is a single semi-root (and
    /// when it is the only bunch, the whole polar is irreducible).
    IrreducibleCase1,
    /// k = e_{i_k - 1} - n_{i_k} >= 1: the threshold bunch is a single
    /// threshold semi-root.
    IrreducibleCase2,
    /// n_i divides k + 1: the lc-zero part of bunch i is a single semi-root
    /// of index i - 1.
    Gamma1SemiRoot,
}

impl fmt::Display for CorollaryFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CorollaryFlag::IrreducibleCase1 => "irreducible-case-1",
            CorollaryFlag::IrreducibleCase2 => "irreducible-case-2",
            CorollaryFlag::Gamma1SemiRoot => "gamma1-semi-root",
        };
        f.write_str(s)
    }
}

/// Everything the counting formulas say about one contact bunch of the k-th
/// polar.
#[derive(Clone, Debug)]
pub struct BunchPrediction {
    /// Bunch index i (contact value b_i / b_0).
    pub i: usize,
    pub contact: Exponent,
    /// Number of polar roots at this contact (the y-degree of the bunch).
    pub ord_total: i64,
    /// Degree of the part with leading coefficient zero in its ball.
    pub ord_gamma1: i64,
    /// Degree of the part with nonzero leading coefficient.
    pub ord_gamma2: i64,
    /// Per-ball derivative shape with (n, e) = (n_i, e_i).
    pub shape: DerivativeShape,
    /// Number of contact balls at this height: b_0 / e_{i-1}.
    pub ball_count: i64,
    /// Polar roots per ball with leading coefficient zero: a.
    pub per_ball_gamma1: i64,
    /// Polar roots per ball at this contact with nonzero lc: n_i * d.
    pub per_ball_gamma2: i64,
    /// Polar roots per ball lying strictly deeper (their contact exceeds
    /// b_i / b_0): n_i * b; in total each ball holds e_{i-1} - k roots.
    pub per_ball_deeper: i64,
    /// The nonzero-lc part splits into this many irreducible factors ...
    pub gamma2_factor_count: i64,
    /// ... each of degree b_0 / e_i ...
    pub gamma2_factor_degree: i64,
    /// ... and all with this characteristic sequence (threshold semi-roots
    /// of index i).
    pub gamma2_char: CharacteristicData,
    pub flags: Vec<CorollaryFlag>,
}

/// Full predicted decomposition of the k-th polar of a branch.
#[derive(Clone, Debug)]
pub struct PredictedDecomposition {
    pub k: i64,
    pub i_k: usize,
    pub bunches: Vec<BunchPrediction>,
}

impl PredictedDecomposition {
    /// Sum of bunch degrees; always b_0 - k.
    pub fn total_ord(&self) -> i64 {
        self.bunches.iter().map(|b| b.ord_total).sum()
    }
}

/// Evaluate the counting formulas for the k-th polar of a branch with the
/// given characteristic sequence.
pub fn predicted_decomposition(
    chr: &CharacteristicData,
    k: i64,
) -> Result<PredictedDecomposition> {
    let i_k = index_ik(chr, k)?;
    let b0 = chr.b0();
    let e = chr.e();
    let n_seq = chr.n_seq();
    let mut bunches = Vec::with_capacity(i_k);
    for i in 1..=i_k {
        let (e_prev, e_i, n_i) = (e[i - 1], e[i], n_seq[i - 1]);
        // i <= i_k guarantees k < e_{i-1} = n_i e_i, the shape's valid range.
        debug_assert!(k < e_prev, "bunch {i} needs k < e_{} = {e_prev}", i - 1);
        let shape = derivative_shape(n_i, e_i, k)?;
        let ball_count = b0 / e_prev;
        let ord_total = if i < i_k {
            (b0 / e_i - b0 / e_prev) * k
        } else {
            b0 - (b0 / e_prev) * k
        };
        let ord_gamma1 = ball_count * shape.a;
        let ord_gamma2 = (b0 / e_i) * shape.d;
        debug_assert_eq!(ord_gamma1 + ord_gamma2, ord_total, "refinement must split the bunch");
        let mut flags = Vec::new();
        if i == i_k && k == e_prev - 1 {
            flags.push(CorollaryFlag::IrreducibleCase1);
        }
        if i == i_k && k == e_prev - n_i && k >= 1 {
            flags.push(CorollaryFlag::IrreducibleCase2);
        }
        if (k + 1) % n_i == 0 {
            flags.push(CorollaryFlag::Gamma1SemiRoot);
        }
        bunches.push(BunchPrediction {
            i,
            contact: chr.exponent(i),
            ord_total,
            ord_gamma1,
            ord_gamma2,
            shape,
            ball_count,
            per_ball_gamma1: shape.a,
            per_ball_gamma2: n_i * shape.d,
            per_ball_deeper: n_i * shape.b,
            gamma2_factor_count: shape.d,
            gamma2_factor_degree: b0 / e_i,
            gamma2_char: chr.prefix(i),
            flags,
        });
    }
    let decomp = PredictedDecomposition { k, i_k, bunches };
    debug_assert_eq!(decomp.total_ord(), b0 - k, "bunch degrees must sum to b_0 - k");
    Ok(decomp)
}

/// Contact of a branch with its own conjugate under the grid rotation by
/// exp(2 pi i j / b_0): infinite for j = 0 mod b_0, otherwise b_kappa / b_0
/// where kappa is the least index with (b_0 / gcd(j, b_0)) not dividing
/// e_kappa.
pub fn conjugate_contact(chr: &CharacteristicData, j: i64) -> OrderBound {
    let n = chr.b0();
    let jj = j.rem_euclid(n);
    if jj == 0 {
        return OrderBound::Infinite;
    }
    let n_prime = n / gcd(jj, n);
    for (kappa, &ek) in chr.e().iter().enumerate().skip(1) {
        if ek % n_prime != 0 {
            return OrderBound::Finite(chr.exponent(kappa));
        }
    }
    unreachable!("e_h = 1 is never divisible by n' > 1")
}
