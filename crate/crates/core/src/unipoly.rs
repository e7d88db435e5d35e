//! Univariate polynomial arithmetic on both coefficient domains.
//!
//! Exact side (`RatPoly`, coefficients low degree first): division, gcd,
//! Yun's squarefree decomposition and rational-root extraction.  These keep
//! the expansion engine exact for as long as the data allows.
//!
//! Numeric side (`CPoly`): Horner evaluation, simultaneous Aberth-Ehrlich
//! root finding with Newton polishing, and single-linkage clustering of
//! near-coincident roots.  The root finder is deterministic: fixed starting
//! configuration, no randomness.

use crate::error::{Error, Result};
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use num_complex::Complex64;

/// Exact polynomial: coefficient of z^i at index i, no trailing zeros.
pub type RatPoly = Vec<BigRational>;

/// Numeric polynomial, same layout.
pub type CPoly = Vec<Complex64>;

// ---------------------------------------------------------------------------
// exact arithmetic
// ---------------------------------------------------------------------------

pub fn rp_trim(p: &mut RatPoly) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

/// Degree, or `None` for the zero polynomial.
pub fn rp_deg(p: &RatPoly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn rp_is_zero(p: &RatPoly) -> bool {
    p.is_empty()
}

pub fn rp_sub(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut out = a.clone();
    if out.len() < b.len() {
        out.resize(b.len(), BigRational::zero());
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    rp_trim(&mut out);
    out
}

pub fn rp_mul(a: &RatPoly, b: &RatPoly) -> RatPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    rp_trim(&mut out);
    out
}

pub fn rp_monic(p: &RatPoly) -> RatPoly {
    match p.last() {
        None => Vec::new(),
        Some(lead) => {
            let inv = BigRational::one() / lead;
            p.iter().map(|c| c * &inv).collect()
        }
    }
}

pub fn rp_derivative(p: &RatPoly) -> RatPoly {
    if p.len() <= 1 {
        return Vec::new();
    }
    let mut out: RatPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    rp_trim(&mut out);
    out
}

pub fn rp_eval(p: &RatPoly, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Long division; `b` must be nonzero.
pub fn rp_div_rem(a: &RatPoly, b: &RatPoly) -> (RatPoly, RatPoly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let db = b.len() - 1;
    let mut rem = a.clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    let lead = b[db].clone();
    for i in (db..rem.len()).rev() {
        let c = &rem[i] / &lead;
        if c.is_zero() {
            continue;
        }
        quot[i - db] = c.clone();
        for (j, bj) in b.iter().enumerate() {
            let t = &c * bj;
            rem[i - db + j] -= t;
        }
    }
    rp_trim(&mut rem);
    rp_trim(&mut quot);
    (quot, rem)
}

/// Exact division; panics when the remainder is nonzero (internal invariant).
pub fn rp_div_exact(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let (q, r) = rp_div_rem(a, b);
    assert!(r.is_empty(), "exact polynomial division left a remainder");
    q
}

/// Monic gcd over the rationals.
pub fn rp_gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut a = a.clone();
    let mut b = b.clone();
    rp_trim(&mut a);
    rp_trim(&mut b);
    while !b.is_empty() {
        let (_, r) = rp_div_rem(&a, &b);
        a = b;
        b = rp_monic(&r);
    }
    rp_monic(&a)
}

/// Yun's squarefree decomposition in characteristic zero: returns pairwise
/// coprime monic squarefree factors with their multiplicities, so that the
/// monic part of `p` equals the product of `factor^mult`.
pub fn yun_squarefree(p: &RatPoly) -> Vec<(RatPoly, u32)> {
    let p = rp_monic(p);
    if p.len() <= 1 {
        return Vec::new();
    }
    let dp = rp_derivative(&p);
    let u = rp_gcd(&p, &dp);
    if u.len() <= 1 {
        return vec![(p, 1)];
    }
    let mut out = Vec::new();
    let mut v = rp_div_exact(&p, &u);
    let mut w = rp_div_exact(&dp, &u);
    let mut i = 1u32;
    loop {
        let z = rp_sub(&w, &rp_derivative(&v));
        if z.is_empty() {
            if v.len() > 1 {
                out.push((rp_monic(&v), i));
            }
            break;
        }
        let g = rp_gcd(&v, &z);
        if g.len() > 1 {
            out.push((g.clone(), i));
        }
        v = rp_div_exact(&v, &g);
        w = rp_div_exact(&z, &g);
        i += 1;
        if v.len() <= 1 {
            break;
        }
    }
    out
}

fn bigint_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Exact square root of a nonnegative rational, when it exists.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = bigint_sqrt_exact(r.numer())?;
    let d = bigint_sqrt_exact(r.denom())?;
    Some(BigRational::new(n, d))
}

/// Exact q-th root of a nonzero rational, when it exists in the rationals.
pub fn rational_nth_root(w: &BigRational, q: u32) -> Option<BigRational> {
    assert!(q >= 1);
    if q == 1 {
        return Some(w.clone());
    }
    if w.is_zero() {
        return Some(BigRational::zero());
    }
    let negative = w.is_negative();
    if negative && q % 2 == 0 {
        return None;
    }
    let abs = w.abs();
    let rn = abs.numer().nth_root(q);
    if num::pow::pow(rn.clone(), q as usize) != *abs.numer() {
        return None;
    }
    let rd = abs.denom().nth_root(q);
    if num::pow::pow(rd.clone(), q as usize) != *abs.denom() {
        return None;
    }
    let mut root = BigRational::new(rn, rd);
    if negative {
        root = -root;
    }
    Some(root)
}

/// Reconstruct a rational with bounded denominator from a double via the
/// continued-fraction expansion, when one sits within `tol` of `x`.
fn approx_rational(x: f64, max_den: i64, tol: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (1i64, 0i64, x.floor() as i64, 1i64);
    let mut frac = x - x.floor();
    for _ in 0..64 {
        let approx = p1 as f64 / q1 as f64;
        if (approx - x).abs() <= tol * x.abs().max(1.0) {
            return Some(BigRational::new(BigInt::from(p1), BigInt::from(q1)));
        }
        if frac.abs() < 1e-18 {
            break;
        }
        let a = (1.0 / frac).floor();
        if !a.is_finite() || a >= max_den as f64 {
            break;
        }
        frac = 1.0 / frac - a;
        let a = a as i64;
        let p2 = a.checked_mul(p1)?.checked_add(p0)?;
        let q2 = a.checked_mul(q1)?.checked_add(q0)?;
        if q2 > max_den {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    None
}

pub fn rp_to_cpoly(p: &RatPoly) -> CPoly {
    p.iter()
        .map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0))
        .collect()
}

/// All rational roots of a squarefree polynomial, plus the deflated cofactor.
///
/// Candidates come from numeric roots reconstructed as bounded-denominator
/// rationals and verified by exact substitution, with closed forms for
/// degrees one and two; a rational root with an astronomically large
/// denominator would be missed and simply stays in the (numeric) cofactor.
pub fn rational_roots(p: &RatPoly) -> Result<(Vec<BigRational>, RatPoly)> {
    let deg = match rp_deg(p) {
        None | Some(0) => return Ok((Vec::new(), p.clone())),
        Some(d) => d,
    };
    let mut roots: Vec<BigRational> = Vec::new();
    if deg == 1 {
        roots.push(-&p[0] / &p[1]);
        return Ok((roots, vec![p[1].clone()]));
    }
    if deg == 2 {
        let disc = &p[1] * &p[1] - BigRational::from_integer(4.into()) * &p[2] * &p[0];
        if let Some(s) = rational_sqrt(&disc) {
            let two_a = BigRational::from_integer(2.into()) * &p[2];
            roots.push((-&p[1] + &s) / &two_a);
            roots.push((-&p[1] - &s) / &two_a);
            roots.sort();
            roots.dedup();
        }
    } else {
        let numeric = aberth_roots(&rp_to_cpoly(p))?;
        let mut candidates: Vec<BigRational> = Vec::new();
        for z in &numeric {
            if z.im.abs() > 1e-6 * (1.0 + z.norm()) {
                continue;
            }
            if let Some(r) = approx_rational(z.re, 1 << 20, 1e-9) {
                if rp_eval(p, &r).is_zero() {
                    candidates.push(r);
                }
            }
        }
        candidates.sort();
        candidates.dedup();
        roots = candidates;
    }
    let mut cof = p.clone();
    for r in &roots {
        let lin = vec![-r.clone(), BigRational::one()];
        cof = rp_div_exact(&cof, &lin);
    }
    Ok((roots, cof))
}

// ---------------------------------------------------------------------------
// numeric arithmetic
// ---------------------------------------------------------------------------

pub fn cp_trim(p: &mut CPoly) {
    while p.last().map_or(false, |c| c.re == 0.0 && c.im == 0.0) {
        p.pop();
    }
}

pub fn cp_deg(p: &CPoly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn cp_eval(p: &CPoly, z: Complex64) -> Complex64 {
    let mut acc = Complex64::ZERO;
    for c in p.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Value and derivative in one Horner pass.
pub fn cp_eval2(p: &CPoly, z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::ZERO;
    let mut d = Complex64::ZERO;
    for c in p.iter().rev() {
        d = d * z + v;
        v = v * z + c;
    }
    (v, d)
}

pub fn cp_derivative(p: &CPoly) -> CPoly {
    if p.len() <= 1 {
        return Vec::new();
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * i as f64)
        .collect()
}

pub fn cp_mul(a: &CPoly, b: &CPoly) -> CPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Complex64::ZERO; a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Long division with remainder; `b`'s leading coefficient must be well away
/// from zero relative to its own scale.
pub fn cp_div_rem(a: &CPoly, b: &CPoly) -> (CPoly, CPoly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let db = b.len() - 1;
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let mut rem = a.clone();
    let mut quot = vec![Complex64::ZERO; a.len() - db];
    let lead = b[db];
    for i in (db..rem.len()).rev() {
        let c = rem[i] / lead;
        quot[i - db] = c;
        for (j, bj) in b.iter().enumerate() {
            let t = c * bj;
            rem[i - db + j] -= t;
        }
    }
    (quot, rem)
}

/// Monic polynomial with the given roots.
pub fn cp_from_roots(roots: &[Complex64]) -> CPoly {
    let mut p = vec![Complex64::new(1.0, 0.0)];
    for r in roots {
        p = cp_mul(&p, &vec![-r, Complex64::new(1.0, 0.0)]);
    }
    p
}

/// Newton polishing from a starting point; returns the best iterate seen.
pub fn newton_polish(p: &CPoly, start: Complex64, iters: usize) -> Complex64 {
    let mut z = start;
    let mut best = start;
    let mut best_val = cp_eval(p, start).norm();
    for _ in 0..iters {
        let (v, d) = cp_eval2(p, z);
        if d.norm() == 0.0 {
            break;
        }
        let step = v / d;
        z -= step;
        let val = cp_eval(p, z).norm();
        if val < best_val {
            best_val = val;
            best = z;
        }
        if step.norm() <= 1e-16 * (1.0 + z.norm()) {
            break;
        }
    }
    best
}

/// All roots of `p` (with multiplicity, approximately for multiple roots) via
/// the Aberth-Ehrlich simultaneous iteration.  Exact zero coefficients at the
/// bottom are peeled off as zero roots first.
pub fn aberth_roots(p: &CPoly) -> Result<Vec<Complex64>> {
    let mut p = p.clone();
    cp_trim(&mut p);
    let deg = match cp_deg(&p) {
        None => return Err(Error::NumericFailure("root finding on zero polynomial".into())),
        Some(0) => return Ok(Vec::new()),
        Some(d) => d,
    };
    // Peel exact zero roots so the iteration never sees them.
    let mut zeros = 0usize;
    while zeros < deg && p[zeros].re == 0.0 && p[zeros].im == 0.0 {
        zeros += 1;
    }
    let mut roots = vec![Complex64::ZERO; zeros];
    let q: CPoly = p[zeros..].to_vec();
    let n = q.len() - 1;
    if n == 0 {
        return Ok(roots);
    }
    if n == 1 {
        roots.push(-q[0] / q[1]);
        return Ok(roots);
    }

    // Fujiwara upper bound on root magnitudes.
    let lead = q[n].norm();
    if lead == 0.0 {
        return Err(Error::NumericFailure("vanishing leading coefficient".into()));
    }
    let mut radius: f64 = 0.0;
    for (i, c) in q.iter().enumerate().take(n) {
        let bound = (c.norm() / lead).powf(1.0 / (n - i) as f64);
        radius = radius.max(bound);
    }
    radius = 2.0 * radius.max(1e-12);

    // Asymmetric starting angles break cycling on symmetric polynomials.
    let mut zs: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.41 / (n as f64) + 0.7;
            Complex64::from_polar(0.75 * radius, theta)
        })
        .collect();

    let mut converged = false;
    for _ in 0..600 {
        let mut max_step = 0.0f64;
        for k in 0..n {
            let zk = zs[k];
            let (v, d) = cp_eval2(&q, zk);
            if v.norm() == 0.0 {
                continue;
            }
            let newton = if d.norm() > 0.0 { v / d } else { Complex64::new(1e-8, 0.0) };
            let mut s = Complex64::ZERO;
            for (j, zj) in zs.iter().enumerate() {
                if j != k {
                    let diff = zk - zj;
                    if diff.norm() < 1e-300 {
                        continue;
                    }
                    s += Complex64::ONE / diff;
                }
            }
            let denom = Complex64::ONE - newton * s;
            let step = if denom.norm() > 1e-300 { newton / denom } else { newton };
            zs[k] = zk - step;
            max_step = max_step.max(step.norm() / (1.0 + zs[k].norm()));
        }
        if max_step < 1e-14 {
            converged = true;
            break;
        }
    }
    if !converged {
        // Multiple roots converge only linearly; accept the cluster and let
        // the caller merge it, but insist the residuals are plausible.
        let scale: f64 = q.iter().map(|c| c.norm()).fold(0.0, f64::max);
        for z in &zs {
            let v = cp_eval(&q, *z).norm();
            let zn = (1.0 + z.norm()).powi(n as i32);
            if !(v <= 1e-6 * scale * zn) {
                return Err(Error::NumericFailure(format!(
                    "Aberth iteration stalled with residual {v:.3e}"
                )));
            }
        }
    }
    for z in zs {
        roots.push(newton_polish(&q, z, 8));
    }
    Ok(roots)
}

/// Single-linkage clustering of points at threshold `delta`: returns cluster
/// means with their sizes, ordered deterministically by (re, im) of the mean.
pub fn cluster(points: &[Complex64], delta: f64) -> Vec<(Complex64, u32)> {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (points[i] - points[j]).norm() <= delta {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut out: Vec<(Complex64, u32)> = groups
        .values()
        .map(|idx| {
            let sum: Complex64 = idx.iter().map(|&i| points[i]).sum();
            (sum / idx.len() as f64, idx.len() as u32)
        })
        .collect();
    out.sort_by(|a, b| {
        (a.0.re, a.0.im)
            .partial_cmp(&(b.0.re, b.0.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    out
}

/// Refine a root of multiplicity `m`: Newton on the (m-1)-th derivative, where
/// the root is simple and converges quadratically to full precision.
pub fn refine_multiple(p: &CPoly, mean: Complex64, m: u32) -> Complex64 {
    if m <= 1 {
        return newton_polish(p, mean, 40);
    }
    let mut d = p.clone();
    for _ in 0..(m - 1) {
        d = cp_derivative(&d);
    }
    newton_polish(&d, mean, 40)
}
