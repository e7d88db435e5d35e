//! Newton polygon and the fractional-power root expansion engine.
//!
//! `puiseux_roots` computes all positive-order roots y(x) of a curve germ
//! f(x, y) = 0 to a requested depth.  The engine recurses on Newton polygon
//! edges: an edge of slope -p/q contributes roots of order p/q whose leading
//! coefficients are q-th roots of the roots of the edge polynomial; each such
//! choice is substituted back (with x re-scaled so powers stay integral) and
//! the tail expanded from the transformed polynomial.
//!
//! Two design points keep the numerics honest:
//!
//! - Arithmetic stays exact over the rationals for as long as the data
//!   allows.  Edge polynomials are split squarefree exactly (Yun) and their
//!   rational roots extracted exactly; only genuinely irrational roots push a
//!   subtree into complex doubles, and by then those roots are simple (the
//!   multiple-root structure has already been peeled off exactly).
//! - Only one leading coefficient is expanded per distinct edge-polynomial
//!   root; its q - 1 sibling branches are generated by twisting every
//!   coefficient with the matching root of unity.  The twist map is exact on
//!   the set of roots (it is the unit rotation of the series grid), so the
//!   engine never has to chase conjugate clusters through the root finder.

use crate::bivar::BivariatePoly;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::exponent::{Exponent, Trunc};
use crate::puiseux::PuiseuxSeries;
use crate::scalar::{Mode, Scalar};
use crate::unipoly::{
    aberth_roots, cluster, newton_polish, rational_nth_root, rational_roots, refine_multiple,
    rp_deg, rp_to_cpoly, yun_squarefree, CPoly, RatPoly,
};
use num::integer::{gcd, lcm};
use num::rational::Ratio;
use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use num_complex::Complex64;
use std::collections::BTreeMap;

/// Relative threshold for scrubbing cancellation noise out of numeric layer
/// polynomials; far below the user tolerance, far above double-precision dust.
const CLEAN_EPS: f64 = 1e-11;

/// Hard cap on expansion recursion (terms along one branch); generous for any
/// desk-scale input.
const MAX_LEVELS: u32 = 4096;

// ---------------------------------------------------------------------------
// Newton polygon (public, exact)
// ---------------------------------------------------------------------------

/// An edge of the Newton polygon with negative slope -mu, mu = p/q > 0.
#[derive(Clone, Debug, PartialEq)]
pub struct NewtonEdge {
    /// Left endpoint (y-power, x-order).
    pub j1: u32,
    pub v1: i64,
    /// Right endpoint.
    pub j2: u32,
    pub v2: i64,
    /// mu = (v1 - v2) / (j2 - j1) in lowest terms.
    pub mu: Exponent,
    /// Edge polynomial in the z-convention: coefficient s is the curve
    /// coefficient on the edge line at y-power j1 + s (zero off the lattice
    /// of the edge), so the degree is j2 - j1.
    pub edge_poly: RatPoly,
}

/// Lower convex hull of points sorted by increasing first coordinate;
/// collinear middle points are dropped.
fn lower_hull(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &p in points {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

/// Negative-slope edges of the Newton polygon of f, ordered by increasing mu.
pub fn newton_polygon(f: &BivariatePoly) -> Result<Vec<NewtonEdge>> {
    if f.is_zero() {
        return Err(Error::ZeroCurve);
    }
    let n = f.ord_y_at_x0().ok_or(Error::DivisibleByX)?;
    // Column minima v_j for j up to n.
    let mut v: BTreeMap<u32, i64> = BTreeMap::new();
    for (&(i, j), _) in f.terms() {
        if j <= n {
            let e = v.entry(j).or_insert(i as i64);
            *e = (*e).min(i as i64);
        }
    }
    let points: Vec<(i64, i64)> = v.iter().map(|(&j, &vi)| (j as i64, vi)).collect();
    let hull = lower_hull(&points);
    let mut edges = Vec::new();
    for w in hull.windows(2) {
        let (j1, v1) = w[0];
        let (j2, v2) = w[1];
        if v2 >= v1 {
            continue; // non-negative slope; cannot happen left of (n, 0)
        }
        let p = v1 - v2;
        let len = j2 - j1;
        let q = len / gcd(p, len);
        let mut poly: RatPoly = Vec::with_capacity(len as usize + 1);
        for s in 0..=len {
            // Lattice point on the edge line at y-power j1 + s, if any.
            let num = v1 * q - (p / gcd(p, len)) * s;
            let coeff = if num % q == 0 && num >= 0 {
                f.coeff((num / q) as u32, (j1 + s) as u32)
            } else {
                BigRational::zero()
            };
            poly.push(coeff);
        }
        edges.push(NewtonEdge {
            j1: j1 as u32,
            v1,
            j2: j2 as u32,
            v2,
            mu: Exponent::new(p, len),
            edge_poly: poly,
        });
    }
    edges.reverse(); // hull order has mu decreasing
    Ok(edges)
}

// ---------------------------------------------------------------------------
// internal layer polynomials
// ---------------------------------------------------------------------------

/// Polynomial in (x, y) with integer x-powers and scalar coefficients, as seen
/// by one recursion layer of the expansion.
#[derive(Clone, Debug)]
struct LayerPoly {
    mode: Mode,
    terms: BTreeMap<(i64, u32), Scalar>,
}

impl LayerPoly {
    fn from_bivar(f: &BivariatePoly) -> Self {
        LayerPoly {
            mode: Mode::Exact,
            terms: f
                .terms()
                .map(|(&(i, j), c)| ((i as i64, j), Scalar::from_rational(c.clone())))
                .collect(),
        }
    }

    fn to_numeric(&self) -> LayerPoly {
        if self.mode == Mode::Numeric {
            return self.clone();
        }
        LayerPoly {
            mode: Mode::Numeric,
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (k, Scalar::from_complex(c.to_complex())))
                .collect(),
        }
    }

    fn coeff_scale(&self) -> f64 {
        self.terms.values().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    /// Scrub numeric cancellation noise relative to the polynomial scale.
    fn cleanup(&mut self) {
        if self.mode == Mode::Exact {
            return;
        }
        let scale = self.coeff_scale();
        if scale == 0.0 {
            return;
        }
        self.terms.retain(|_, c| c.magnitude() > CLEAN_EPS * scale);
    }

    /// Column minima (y-power -> least x-power).
    fn v_profile(&self) -> BTreeMap<u32, i64> {
        let mut v = BTreeMap::new();
        for (&(i, j), _) in &self.terms {
            let e = v.entry(j).or_insert(i);
            *e = (*e).min(i);
        }
        v
    }

    /// Substitute y -> x^(p/q) (c + y'), x -> x^(1/q) (so new x-powers are the
    /// old ones times q) and divide by x^div.
    fn substitute(&self, q: i64, p: i64, c: &Scalar, div: i64) -> LayerPoly {
        let mode = if self.mode == Mode::Exact && c.mode() == Mode::Exact {
            Mode::Exact
        } else {
            Mode::Numeric
        };
        let src = if mode == self.mode {
            self.clone()
        } else {
            self.to_numeric()
        };
        let c = c.clone().into_mode(mode).expect("exact->numeric only");
        let dy = src.terms.keys().map(|&(_, j)| j).max().unwrap_or(0) as usize;
        // c^0 .. c^dy
        let mut c_pows: Vec<Scalar> = Vec::with_capacity(dy + 1);
        c_pows.push(Scalar::one(mode));
        for t in 1..=dy {
            c_pows.push(c_pows[t - 1].mul(&c));
        }
        // Pascal's triangle as scalars.
        let mut binom: Vec<Vec<Scalar>> = Vec::with_capacity(dy + 1);
        for j in 0..=dy {
            let mut row = Vec::with_capacity(j + 1);
            let mut acc = BigInt::one();
            for t in 0..=j {
                if t > 0 {
                    acc = acc * BigInt::from(j - t + 1) / BigInt::from(t);
                }
                let s = Scalar::from_rational(BigRational::from_integer(acc.clone()))
                    .into_mode(mode)
                    .expect("integer fits any mode");
                row.push(s);
            }
            binom.push(row);
        }
        let mut terms: BTreeMap<(i64, u32), Scalar> = BTreeMap::new();
        for (&(i, j), a) in &src.terms {
            let xp = q * i + p * (j as i64) - div;
            debug_assert!(xp >= 0, "support point below its own supporting line");
            let ju = j as usize;
            for t in 0..=ju {
                let contrib = a.mul(&binom[ju][t]).mul(&c_pows[ju - t]);
                let key = (xp, t as u32);
                let entry = terms.remove(&key);
                let val = match entry {
                    Some(prev) => prev.add(&contrib),
                    None => contrib,
                };
                if !val.is_exact_zero() {
                    terms.insert(key, val);
                }
            }
        }
        let mut out = LayerPoly { mode, terms };
        out.cleanup();
        out
    }
}

// ---------------------------------------------------------------------------
// expansion
// ---------------------------------------------------------------------------

/// Local truncation bound of a raw root (exponents relative to one layer).
#[derive(Clone, Copy, Debug)]
enum LocalBound {
    At(Ratio<i64>),
    Infinite,
}

/// A root as produced by the recursion: terms with layer-local exponents.
#[derive(Clone, Debug)]
struct RawRoot {
    terms: Vec<(Ratio<i64>, Scalar)>,
    mult: u32,
    known_to: LocalBound,
}

/// Multiply a coefficient by exp(2 pi i t e); exact when the multiplier is a
/// sign, numeric otherwise (an error in exact mode).
fn twist_scalar(c: &Scalar, t: i64, e: Ratio<i64>, cfg: &Config) -> Result<Scalar> {
    let r = Ratio::from_integer(t) * e;
    let frac = r - r.floor();
    if frac.is_zero() {
        return Ok(c.clone());
    }
    if frac == Ratio::new(1, 2) {
        return Ok(c.neg());
    }
    if cfg.mode == Mode::Exact {
        return Err(Error::ExactUnavailable(format!(
            "conjugate branch needs the unit exp(2 pi i {frac})"
        )));
    }
    let theta = 2.0 * std::f64::consts::PI * (*frac.numer() as f64) / (*frac.denom() as f64);
    let rotated = c
        .to_complex()
        * Complex64::from_polar(1.0, theta);
    Ok(Scalar::from_complex(rotated))
}

/// Distinct roots (with multiplicity) of a layer edge polynomial.
fn edge_poly_roots(
    exact: Option<&RatPoly>,
    numeric: &CPoly,
    cfg: &Config,
) -> Result<Vec<(Scalar, u32)>> {
    let mut out: Vec<(Scalar, u32)> = Vec::new();
    match exact {
        Some(ep) => {
            for (factor, m) in yun_squarefree(ep) {
                let (rational, cofactor) = rational_roots(&factor)?;
                for r in rational {
                    out.push((Scalar::from_rational(r), m));
                }
                if rp_deg(&cofactor).unwrap_or(0) >= 1 {
                    if cfg.mode == Mode::Exact {
                        return Err(Error::ExactUnavailable(
                            "irrational root of an edge polynomial".into(),
                        ));
                    }
                    let cp = rp_to_cpoly(&cofactor);
                    let mut roots = aberth_roots(&cp)?;
                    for z in &mut roots {
                        *z = newton_polish(&cp, *z, 40);
                    }
                    roots.sort_by(|a, b| {
                        (a.re, a.im)
                            .partial_cmp(&(b.re, b.im))
                            .unwrap_or(std::cmp::Ordering::Equal)
                    });
                    for z in roots {
                        out.push((Scalar::from_complex(z), m));
                    }
                }
            }
        }
        None => {
            let roots = aberth_roots(numeric)?;
            let scale = roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let merged = cluster(&roots, cfg.cluster_delta(scale));
            for (mean, count) in merged {
                let refined = refine_multiple(numeric, mean, count);
                out.push((Scalar::from_complex(refined), count));
            }
        }
    }
    Ok(out)
}

/// Expand all positive-order roots of a layer polynomial, delivering every
/// term with (local) exponent <= remaining.
fn expand_layer(
    poly: &LayerPoly,
    remaining: Ratio<i64>,
    cfg: &Config,
    level: u32,
) -> Result<Vec<RawRoot>> {
    if level > MAX_LEVELS {
        return Err(Error::NumericFailure(
            "expansion recursion exceeded its level cap".into(),
        ));
    }
    let v = poly.v_profile();
    let j_min = *v.keys().next().expect("nonzero polynomial");
    let n = match v.iter().filter(|(_, &vi)| vi == 0).map(|(&j, _)| j).min() {
        Some(n) => n,
        None => {
            return Err(Error::NumericFailure(
                "cancellation wiped out the x-free column of a layer polynomial".into(),
            ))
        }
    };
    let mut out: Vec<RawRoot> = Vec::new();
    if j_min > 0 {
        // y^j_min divides the layer polynomial: the zero series, exactly.
        out.push(RawRoot {
            terms: Vec::new(),
            mult: j_min,
            known_to: LocalBound::Infinite,
        });
    }
    if n == j_min {
        return Ok(out);
    }
    let points: Vec<(i64, i64)> = v
        .range(j_min..=n)
        .map(|(&j, &vi)| (j as i64, vi))
        .collect();
    let hull = lower_hull(&points);
    for w in hull.windows(2) {
        let (j1, v1) = w[0];
        let (j2, v2) = w[1];
        debug_assert!(v2 < v1);
        let rise = v1 - v2;
        let len = j2 - j1;
        let g = gcd(rise, len);
        let (p, q) = (rise / g, len / g);
        let mu = Ratio::new(p, q);
        if mu > remaining {
            // Everything on this edge first deviates beyond the requested
            // depth; report the branches as a block, honestly truncated.
            out.push(RawRoot {
                terms: Vec::new(),
                mult: len as u32,
                known_to: LocalBound::At(mu),
            });
            continue;
        }
        // Edge polynomial in w = c^q.
        let deg_w = (len / q) as usize;
        let exact_poly: Option<RatPoly> = if poly.mode == Mode::Exact {
            let mut ep: RatPoly = Vec::with_capacity(deg_w + 1);
            for t in 0..=deg_w as i64 {
                let key = (v1 - p * t, (j1 + q * t) as u32);
                let c = poly
                    .terms
                    .get(&key)
                    .map(|s| s.as_rational().expect("exact layer").clone())
                    .unwrap_or_else(BigRational::zero);
                ep.push(c);
            }
            Some(ep)
        } else {
            None
        };
        let numeric_poly: CPoly = (0..=deg_w as i64)
            .map(|t| {
                let key = (v1 - p * t, (j1 + q * t) as u32);
                poly.terms
                    .get(&key)
                    .map(Scalar::to_complex)
                    .unwrap_or_else(|| Complex64::new(0.0, 0.0))
            })
            .collect();
        let w_roots = edge_poly_roots(exact_poly.as_ref(), &numeric_poly, cfg)?;
        debug_assert_eq!(
            w_roots.iter().map(|&(_, m)| m as i64).sum::<i64>(),
            deg_w as i64,
            "edge polynomial roots must account for its degree"
        );
        let div = q * v1 + p * j1;
        for (w_star, mult_w) in w_roots {
            // One leading coefficient per distinct root of the edge
            // polynomial; sibling branches come from twists below.
            let c: Scalar = match &w_star {
                Scalar::Exact(r) => match rational_nth_root(r, q as u32) {
                    Some(root) => Scalar::from_rational(root),
                    None => {
                        if cfg.mode == Mode::Exact {
                            return Err(Error::ExactUnavailable(format!(
                                "rational {q}-th root of {r}"
                            )));
                        }
                        let z = Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0);
                        Scalar::from_complex(z.powf(1.0 / q as f64))
                    }
                },
                Scalar::Numeric(z) => Scalar::from_complex(z.powf(1.0 / q as f64)),
            };
            let sub = poly.substitute(q, p, &c, div);
            let sub_remaining = (remaining - mu) * Ratio::from_integer(q);
            let sub_roots = expand_layer(&sub, sub_remaining, cfg, level + 1)?;
            debug_assert_eq!(
                sub_roots.iter().map(|r| r.mult as i64).sum::<i64>(),
                mult_w as i64
            );
            for sr in sub_roots {
                // Lift to this layer's exponent grid.
                let mut terms: Vec<(Ratio<i64>, Scalar)> =
                    Vec::with_capacity(sr.terms.len() + 1);
                terms.push((mu, c.clone()));
                for (e, a) in &sr.terms {
                    terms.push((mu + e / Ratio::from_integer(q), a.clone()));
                }
                let known_to = match sr.known_to {
                    LocalBound::Infinite => LocalBound::Infinite,
                    LocalBound::At(e) => LocalBound::At(mu + e / Ratio::from_integer(q)),
                };
                for t in 0..q {
                    let twisted: Result<Vec<(Ratio<i64>, Scalar)>> = terms
                        .iter()
                        .map(|(e, a)| Ok((*e, twist_scalar(a, t, *e, cfg)?)))
                        .collect();
                    out.push(RawRoot {
                        terms: twisted?,
                        mult: sr.mult,
                        known_to,
                    });
                }
            }
        }
    }
    debug_assert_eq!(
        out.iter().map(|r| r.mult as i64).sum::<i64>(),
        n as i64,
        "roots (with multiplicity) must account for ord f(0, y)"
    );
    Ok(out)
}

// ---------------------------------------------------------------------------
// root sets
// ---------------------------------------------------------------------------

/// One expanded root with its multiplicity.
#[derive(Clone, Debug)]
pub struct RootEntry {
    pub series: PuiseuxSeries,
    pub mult: u32,
}

/// All positive-order roots of a curve germ, expanded to a common depth.
#[derive(Clone, Debug)]
pub struct RootSet {
    pub entries: Vec<RootEntry>,
    /// Least common denominator of all visible exponents.
    pub ram: i64,
    /// Requested depth: every root term with exponent <= depth is present.
    pub depth: Exponent,
}

impl RootSet {
    /// Total number of roots counted with multiplicity.
    pub fn total(&self) -> u32 {
        self.entries.iter().map(|e| e.mult).sum()
    }
}

/// Expand the positive-order roots of f to the given depth.
///
/// Every term with exponent <= depth is delivered; each root's truncation
/// bound is an honest bound strictly beyond the depth (infinite when the
/// series is structurally complete).  In numeric mode all coefficients are
/// complex doubles; exact mode errors out if any branch needs an irrational
/// value.
pub fn puiseux_roots(f: &BivariatePoly, depth: Exponent, cfg: &Config) -> Result<RootSet> {
    f.validate_as_curve()?;
    if depth.ratio() < Ratio::zero() {
        return Err(Error::DepthInsufficient("depth must be nonnegative".into()));
    }
    let layer = LayerPoly::from_bivar(f);
    let raw = expand_layer(&layer, depth.ratio(), cfg, 0)?;
    let mut entries = Vec::with_capacity(raw.len());
    let mut ram: i64 = 1;
    for rr in raw {
        let trunc = match rr.known_to {
            LocalBound::Infinite => Trunc::Infinite,
            LocalBound::At(e) => Trunc::At(Exponent::from_ratio(e)),
        };
        let mut terms: Vec<(Exponent, Scalar)> = Vec::with_capacity(rr.terms.len());
        for (e, c) in rr.terms {
            let c = match cfg.mode {
                Mode::Exact => {
                    if c.mode() != Mode::Exact {
                        return Err(Error::ExactUnavailable(
                            "numeric coefficient in exact mode".into(),
                        ));
                    }
                    c
                }
                Mode::Numeric => c.into_mode(Mode::Numeric).expect("degrade is total"),
            };
            terms.push((Exponent::from_ratio(e), c));
        }
        // Scrub stray dust against the root's own coefficient scale.
        if cfg.mode == Mode::Numeric {
            let scale = terms
                .iter()
                .map(|(_, c)| c.magnitude())
                .fold(1.0f64, f64::max);
            terms.retain(|(_, c)| c.magnitude() > cfg.tol * scale);
        }
        let series = PuiseuxSeries::new(cfg.mode, terms, trunc)?;
        ram = lcm(ram, series.ram());
        entries.push(RootEntry {
            series,
            mult: rr.mult,
        });
    }
    Ok(RootSet { entries, ram, depth })
}

// ---------------------------------------------------------------------------
// branch grouping
// ---------------------------------------------------------------------------

/// Whether two series are indistinguishable on their common known range.
pub fn visibly_equal(a: &PuiseuxSeries, b: &PuiseuxSeries, tol: f64) -> bool {
    match a.contact_order(b, tol) {
        Ok(o) => !o.is_finite(),
        Err(_) => false,
    }
}

/// One irreducible factor recovered from the root set: the entry indices whose
/// roots constitute it, and its degree (= number of distinct conjugate
/// truncations = visible ramification index).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchOrbit {
    pub members: Vec<usize>,
    pub degree: u32,
}

/// Conjugacy grouping of a root set.  A factor of multiplicity m in the curve
/// appears as m identical orbit records.
#[derive(Clone, Debug)]
pub struct BranchGroups {
    pub orbits: Vec<BranchOrbit>,
}

impl BranchGroups {
    pub fn factor_count(&self) -> usize {
        self.orbits.len()
    }
}

/// Group the roots of a curve into conjugacy orbits under the unit rotations
/// of the common exponent grid; each orbit corresponds to one irreducible
/// factor (of the visible truncation) whose degree is the orbit size.
///
/// Errors with `AmbiguousGrouping` when the data cannot be a clean orbit
/// structure at this depth/tolerance: unequal multiplicities inside an orbit,
/// or an orbit size that disagrees with the visible ramification index.
pub fn group_branches(rs: &RootSet, tol: f64) -> Result<BranchGroups> {
    let n = rs.entries.len();
    if n == 0 {
        return Ok(BranchGroups { orbits: Vec::new() });
    }
    // Distinct-truncation classes.
    let mut class_of: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            if class_of[j] != j {
                continue;
            }
            if class_of[i] == class_of[j] {
                continue;
            }
            if visibly_equal(&rs.entries[i].series, &rs.entries[j].series, tol) {
                class_of[j] = class_of[i];
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &c) in class_of.iter().enumerate() {
        classes.entry(c).or_default().push(i);
    }
    let reps: Vec<usize> = classes.keys().copied().collect();
    let class_mult: Vec<u32> = reps
        .iter()
        .map(|r| classes[r].iter().map(|&i| rs.entries[i].mult).sum())
        .collect();

    // Star-orbit closure over class representatives.
    let m = rs.ram;
    let k = reps.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for a in 0..k {
        let sa = &rs.entries[reps[a]].series;
        for j in 0..m {
            let image = match sa.star(j, m) {
                Ok(s) => s,
                // Exact mode cannot represent this rotation; it then cannot
                // link these classes either.
                Err(Error::ExactUnavailable(_)) => continue,
                Err(e) => return Err(e),
            };
            for b in 0..k {
                if visibly_equal(&image, &rs.entries[reps[b]].series, tol) {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    if ra != rb {
                        parent[ra] = rb;
                    }
                }
            }
        }
    }
    let mut orbit_classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for a in 0..k {
        let r = find(&mut parent, a);
        orbit_classes.entry(r).or_default().push(a);
    }

    let mut orbits: Vec<BranchOrbit> = Vec::new();
    for class_ids in orbit_classes.values() {
        let mult = class_mult[class_ids[0]];
        if class_ids.iter().any(|&c| class_mult[c] != mult) {
            return Err(Error::AmbiguousGrouping(
                "conjugate truncation classes carry unequal multiplicities".into(),
            ));
        }
        let size = class_ids.len() as u32;
        let mut members: Vec<usize> = class_ids
            .iter()
            .flat_map(|&c| classes[&reps[c]].iter().copied())
            .collect();
        members.sort_unstable();
        // The orbit size must equal the visible ramification index of its
        // members, otherwise conjugates are still merged at this depth.
        let vis: i64 = members
            .iter()
            .fold(1i64, |acc, &i| lcm(acc, rs.entries[i].series.ram()));
        if size as i64 != vis {
            return Err(Error::AmbiguousGrouping(format!(
                "orbit of size {size} has visible ramification index {vis}"
            )));
        }
        for _ in 0..mult {
            orbits.push(BranchOrbit {
                members: members.clone(),
                degree: size,
            });
        }
    }
    orbits.sort_by_key(|o| o.members.first().copied().unwrap_or(usize::MAX));
    // Every root, with multiplicity, is accounted for exactly once.
    debug_assert_eq!(
        orbits.iter().map(|o| o.degree).sum::<u32>(),
        rs.total(),
        "orbit degrees must sum to the root count"
    );
    Ok(BranchGroups { orbits })
}

/// Whether the germ of f at the origin is a single branch (one conjugacy
/// orbit, multiplicity one), deciding by expanding as deep as needed.
pub fn is_irreducible(f: &BivariatePoly, cfg: &Config) -> Result<bool> {
    let (rs, groups) = expand_adaptive(f, cfg)?;
    Ok(groups.orbits.len() == 1 && groups.orbits[0].degree == rs.total())
}

/// Expand with doubling depth until branches separate and group cleanly.
pub(crate) fn expand_adaptive(f: &BivariatePoly, cfg: &Config) -> Result<(RootSet, BranchGroups)> {
    let mut depth = Exponent::from_int(4);
    let attempts = 10;
    let mut last_err: Option<Error> = None;
    for _ in 0..attempts {
        let rs = puiseux_roots(f, depth, cfg)?;
        let unresolved = rs
            .entries
            .iter()
            .any(|e| e.mult > 1 && e.series.trunc() != Trunc::Infinite);
        if !unresolved {
            match group_branches(&rs, cfg.tol) {
                Ok(g) => return Ok((rs, g)),
                Err(e @ Error::AmbiguousGrouping(_)) => last_err = Some(e),
                Err(e) => return Err(e),
            }
        } else {
            last_err = Some(Error::DepthInsufficient(format!(
                "branches of multiplicity > 1 unresolved at depth {depth}"
            )));
        }
        depth = depth * 2;
    }
    Err(last_err.unwrap_or_else(|| {
        Error::DepthInsufficient("branch separation did not stabilize".into())
    }))
}
