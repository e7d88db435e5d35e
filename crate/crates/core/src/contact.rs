//! Contact stratification and the observed polar decomposition.
//!
//! This module does the measuring side of the story.  Given an irreducible
//! branch f:
//!
//! - `prepare_branch` expands its roots to a canonical depth, reads its
//!   characteristic sequence and partitions the roots into the pseudo-ball
//!   strata T_1, ..., T_h (one stratum per characteristic contact value).
//! - `decompose_polar` expands the roots of the k-th y-derivative, assigns
//!   each to a contact bunch and a ball, splits every bunch by the
//!   leading-coefficient criterion, groups roots into irreducible factors,
//!   classifies each factor against the semi-root hierarchy, and compares
//!   everything to the closed-form prediction, verdict by verdict.
//! - `ball_derivative_identity` checks the per-ball derivative identity: the
//!   leading coefficients of the polar roots inside a ball B are exactly the
//!   roots of d^k F_B / dz^k, where F_B is the monic polynomial whose roots
//!   are the leading coefficients of the curve roots in B.
//!
//! Numbers that must vanish structurally are tested against 1e-6 times the
//! local scale; that threshold sits far above accumulated double-precision
//! error and far below any genuine quantity in desk-scale examples.

use crate::bivar::BivariatePoly;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::exponent::{Exponent, OrderBound};
use crate::invariants::{
    characteristic_of_series, derivative_shape, predicted_decomposition, resolve_curve,
    BunchPrediction, CharacteristicData, CorollaryFlag, PredictedDecomposition,
};
use crate::newton::{group_branches, puiseux_roots, RootSet};
use crate::puiseux::{leading_coeff_wrt, PseudoBall, PuiseuxSeries};
use crate::scalar::Mode;
use crate::unipoly::{aberth_roots, cp_derivative, cp_div_rem, cp_from_roots, cp_mul, CPoly};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;

/// Relative tolerance for structural fits (ball polynomials, deflation
/// residuals, root matching).
const FIT_TOL: f64 = 1e-6;

// ---------------------------------------------------------------------------
// strata of pseudo-balls
// ---------------------------------------------------------------------------

/// One pseudo-ball of a stratum: its center, the curve roots it holds, and
/// the fitted model (z^n_i - c_b)^{e_i} of its ball polynomial.
#[derive(Clone, Debug)]
pub struct StratumBall {
    pub ball: PseudoBall,
    /// Indices into the curve root set.
    pub members: Vec<usize>,
    /// Leading coefficients of the member roots with respect to the ball.
    pub lcs: Vec<Complex64>,
    /// Fitted constant of the model (z^{n_i} - c_b)^{e_i}.
    pub c_b: Complex64,
    /// Largest relative deviation between the exact ball polynomial and the
    /// fitted model.
    pub fit_err: f64,
    pub n_i: i64,
    pub e_i: i64,
    /// e_{i-1} = n_i e_i, the number of roots in the ball.
    pub e_prev: i64,
}

impl StratumBall {
    /// Monic polynomial whose roots are the member leading coefficients.
    pub fn honest_poly(&self) -> CPoly {
        cp_from_roots(&self.lcs)
    }

    /// The model (z^{n_i} - c_b)^{e_i}, expanded.
    pub fn model_poly(&self) -> CPoly {
        let mut base = vec![Complex64::new(0.0, 0.0); self.n_i as usize + 1];
        base[0] = -self.c_b;
        base[self.n_i as usize] = Complex64::new(1.0, 0.0);
        let mut out = vec![Complex64::new(1.0, 0.0)];
        for _ in 0..self.e_i {
            out = cp_mul(&out, &base);
        }
        out
    }
}

/// All pseudo-balls of one characteristic height b_i / b_0.
#[derive(Clone, Debug)]
pub struct Stratum {
    pub i: usize,
    pub height: Exponent,
    pub balls: Vec<StratumBall>,
}

/// Partition the roots of a branch into pseudo-balls at every characteristic
/// height and fit each ball polynomial.
///
/// The counting is rigid and checked: the stratum at height b_i / b_0 has
/// b_0 / e_{i-1} balls of e_{i-1} roots each, and every ball polynomial is
/// (z^{n_i} - c)^{e_i} for a nonzero c.
pub fn strata(rs: &RootSet, chr: &CharacteristicData, tol: f64) -> Result<Vec<Stratum>> {
    let n = rs.entries.len();
    if rs.entries.iter().any(|e| e.mult != 1) || (rs.total() as i64) != chr.b0() {
        return Err(Error::StratumMismatch(format!(
            "root set ({} roots) does not look like a reduced branch of multiplicity {}",
            rs.total(),
            chr.b0()
        )));
    }
    let mut out = Vec::with_capacity(chr.h());
    for i in 1..=chr.h() {
        let height = chr.exponent(i);
        let e_prev = chr.e()[i - 1];
        let e_i = chr.e()[i];
        let n_i = chr.n_seq()[i - 1];
        // Group roots by contact >= height.
        let mut group_of: Vec<usize> = (0..n).collect();
        for u in 0..n {
            for v in (u + 1)..n {
                if group_of[v] != v || group_of[u] == group_of[v] {
                    continue;
                }
                let c = rs.entries[u]
                    .series
                    .contact_order(&rs.entries[v].series, tol)?;
                match c.known_at_least(height) {
                    Some(true) => group_of[v] = group_of[u],
                    Some(false) => {}
                    None => {
                        return Err(Error::DepthInsufficient(format!(
                            "contact of roots {u} and {v} undecided at height {height}"
                        )))
                    }
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (idx, &g) in group_of.iter().enumerate() {
            groups.entry(g).or_default().push(idx);
        }
        let expected_balls = (chr.b0() / e_prev) as usize;
        if groups.len() != expected_balls {
            return Err(Error::StratumMismatch(format!(
                "height {height}: found {} balls, expected {expected_balls}",
                groups.len()
            )));
        }
        let mut balls = Vec::with_capacity(groups.len());
        for members in groups.values() {
            if members.len() as i64 != e_prev {
                return Err(Error::StratumMismatch(format!(
                    "height {height}: ball with {} roots, expected {e_prev}",
                    members.len()
                )));
            }
            let ball = PseudoBall::new(&rs.entries[members[0]].series, height);
            let mut lcs = Vec::with_capacity(members.len());
            for &m in members {
                let lc = leading_coeff_wrt(&rs.entries[m].series, &ball, tol)?;
                lcs.push(lc.to_complex());
            }
            // Fit (z^{n_i} - c)^{e_i}: c as the mean of lc^{n_i}.
            let mut c_b = Complex64::new(0.0, 0.0);
            for lc in &lcs {
                c_b += lc.powi(n_i as i32);
            }
            c_b /= lcs.len() as f64;
            let mut sb = StratumBall {
                ball,
                members: members.clone(),
                lcs,
                c_b,
                fit_err: 0.0,
                n_i,
                e_i,
                e_prev,
            };
            let honest = sb.honest_poly();
            let model = sb.model_poly();
            let scale = honest.iter().map(|c| c.norm()).fold(1e-300, f64::max);
            let mut err = 0.0f64;
            for (a, b) in honest.iter().zip(model.iter()) {
                err = err.max((a - b).norm() / scale);
            }
            sb.fit_err = err;
            if err > FIT_TOL {
                return Err(Error::FitFailure(format!(
                    "height {height}: ball polynomial deviates from (z^{n_i} - c)^{e_i} \
                     by {err:.3e} relative"
                )));
            }
            if c_b.norm() <= FIT_TOL * scale.powf(1.0 / e_i as f64) {
                return Err(Error::FitFailure(format!(
                    "height {height}: fitted ball constant is numerically zero"
                )));
            }
            balls.push(sb);
        }
        out.push(Stratum { i, height, balls });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// contact with a curve
// ---------------------------------------------------------------------------

fn combine_max(acc: OrderBound, x: OrderBound) -> OrderBound {
    use OrderBound::*;
    match (acc, x) {
        (Infinite, _) | (_, Infinite) => Infinite,
        (Finite(a), Finite(b)) => Finite(a.max(b)),
        (AtLeast(a), AtLeast(b)) => AtLeast(a.max(b)),
        (Finite(a), AtLeast(t)) | (AtLeast(t), Finite(a)) => AtLeast(a.max(t)),
    }
}

/// Contact of a series with a curve: the maximum contact order against any
/// of the curve's roots.  The result is only `Finite` when every contributing
/// comparison is decided.
pub fn cont(curve_roots: &RootSet, gamma: &PuiseuxSeries, tol: f64) -> Result<OrderBound> {
    let mut acc: Option<OrderBound> = None;
    for e in &curve_roots.entries {
        let c = gamma.contact_order(&e.series, tol)?;
        acc = Some(match acc {
            None => c,
            Some(prev) => combine_max(prev, c),
        });
    }
    acc.ok_or_else(|| Error::InvalidSeries("curve has no roots to compare against".into()))
}

/// Contact of two curves: the maximum pairwise root contact.
pub fn cont_curves(a: &RootSet, b: &RootSet, tol: f64) -> Result<OrderBound> {
    let mut acc: Option<OrderBound> = None;
    for ea in &a.entries {
        let c = cont(b, &ea.series, tol)?;
        acc = Some(match acc {
            None => c,
            Some(prev) => combine_max(prev, c),
        });
    }
    acc.ok_or_else(|| Error::InvalidSeries("curve has no roots to compare against".into()))
}

// ---------------------------------------------------------------------------
// semi-root classification
// ---------------------------------------------------------------------------

/// Where a factor of a polar sits in the semi-root hierarchy of the branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SemiRootClass {
    /// Characteristic sequence of the level-(i) truncation, contact
    /// b_{i+1} / b_0: an ordinary semi-root.
    SemiRoot(usize),
    /// Characteristic sequence of the level-(i) truncation, contact
    /// b_i / b_0: maximal contact for that sequence.
    ThresholdSemiRoot(usize),
    Other,
}

impl fmt::Display for SemiRootClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemiRootClass::SemiRoot(i) => write!(f, "semi-root({i})"),
            SemiRootClass::ThresholdSemiRoot(i) => write!(f, "threshold-semi-root({i})"),
            SemiRootClass::Other => f.write_str("other"),
        }
    }
}

/// Classify a curve (typically one factor of a polar) against the semi-root
/// hierarchy of a branch, given its contact with the branch and its own
/// characteristic sequence.
pub fn classify_factor(
    chr: &CharacteristicData,
    contact: Exponent,
    factor_chr: &CharacteristicData,
) -> SemiRootClass {
    for i in 1..=chr.h() {
        if chr.exponent(i) == contact {
            if *factor_chr == chr.prefix(i) {
                return SemiRootClass::ThresholdSemiRoot(i);
            }
            if *factor_chr == chr.prefix(i - 1) {
                return SemiRootClass::SemiRoot(i - 1);
            }
            return SemiRootClass::Other;
        }
    }
    SemiRootClass::Other
}

// ---------------------------------------------------------------------------
// branch data
// ---------------------------------------------------------------------------

/// A branch prepared for polar decomposition: certified irreducible, roots
/// expanded to a canonical depth, strata in place.
#[derive(Clone, Debug)]
pub struct BranchData {
    pub curve: BivariatePoly,
    pub chr: CharacteristicData,
    pub roots: RootSet,
    pub strata: Vec<Stratum>,
    pub depth: Exponent,
    pub cfg: Config,
}

/// Canonical expansion depth for a branch: (b_h + 1) / b_0, just beyond the
/// deepest characteristic exponent.
pub fn default_depth(chr: &CharacteristicData) -> Exponent {
    Exponent::new(chr.b()[chr.h()] + 1, chr.b0())
}

/// Resolve a curve as a branch and set up everything `decompose_polar` needs.
pub fn prepare_branch(
    f: &BivariatePoly,
    cfg: &Config,
    depth_override: Option<Exponent>,
) -> Result<BranchData> {
    let resolution = resolve_curve(f, cfg)?;
    let depth = depth_override.unwrap_or_else(|| default_depth(&resolution.chr));
    if depth < default_depth(&resolution.chr) {
        return Err(Error::DepthInsufficient(format!(
            "depth {depth} does not reach past the last characteristic exponent; \
             need at least {}",
            default_depth(&resolution.chr)
        )));
    }
    let roots = puiseux_roots(f, depth, cfg)?;
    let strata = strata(&roots, &resolution.chr, cfg.tol)?;
    Ok(BranchData {
        curve: f.clone(),
        chr: resolution.chr,
        roots,
        strata,
        depth,
        cfg: cfg.clone(),
    })
}

// ---------------------------------------------------------------------------
// per-ball derivative identity
// ---------------------------------------------------------------------------

/// Check the derivative identity on one ball: the polar roots inside B,
/// counted with multiplicity, have exactly the leading coefficients that the
/// k-th derivative of the ball polynomial F_B prescribes.  Returns the
/// largest relative mismatch between the observed and derived coefficient
/// multisets.
///
/// The derivative is deflated structurally — a z^a factor, then b exact
/// divisions by (z^{n_i} - c_b), then a collapse to a polynomial in z^{n_i} —
/// with every residual checked against FIT_TOL, so multiple roots are never
/// chased numerically.
pub fn ball_derivative_identity(
    ball: &StratumBall,
    polar: &RootSet,
    k: i64,
    tol: f64,
) -> Result<f64> {
    if k < 1 || k >= ball.e_prev {
        return Err(Error::InvalidShape(format!(
            "derivative order {k} outside 1..{} for this ball",
            ball.e_prev
        )));
    }
    // Observed leading coefficients of polar roots inside the ball.
    let mut observed: Vec<Complex64> = Vec::new();
    for entry in &polar.entries {
        if ball.ball.contains(&entry.series, tol)? {
            let lc = leading_coeff_wrt(&entry.series, &ball.ball, tol)?;
            for _ in 0..entry.mult {
                observed.push(lc.to_complex());
            }
        }
    }
    if observed.len() as i64 != ball.e_prev - k {
        return Err(Error::BallMismatch(format!(
            "ball holds {} polar roots, the identity requires {}",
            observed.len(),
            ball.e_prev - k
        )));
    }
    // k-th derivative of the honest ball polynomial.
    let mut der = ball.honest_poly();
    for _ in 0..k {
        der = cp_derivative(&der);
    }
    let scale = der.iter().map(|c| c.norm()).fold(1e-300, f64::max);
    let shape = derivative_shape(ball.n_i, ball.e_i, k)?;
    for t in 0..shape.a as usize {
        if der[t].norm() > FIT_TOL * scale {
            return Err(Error::PropertyViolation(format!(
                "derivative coefficient of z^{t} should vanish, is {:.3e} of scale",
                der[t].norm() / scale
            )));
        }
    }
    let mut cur: CPoly = der[shape.a as usize..].to_vec();
    let n = ball.n_i as usize;
    let mut base = vec![Complex64::new(0.0, 0.0); n + 1];
    base[0] = -ball.c_b;
    base[n] = Complex64::new(1.0, 0.0);
    for _ in 0..shape.b {
        let cscale = cur.iter().map(|c| c.norm()).fold(1e-300, f64::max);
        let (q, r) = cp_div_rem(&cur, &base);
        let rmax = r.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if rmax > FIT_TOL * cscale {
            return Err(Error::PropertyViolation(format!(
                "division by (z^{n} - c) leaves a residual of {:.3e} relative",
                rmax / cscale
            )));
        }
        cur = q;
    }
    // Collapse the remainder to a polynomial in w = z^n.
    let cscale = cur.iter().map(|c| c.norm()).fold(1e-300, f64::max);
    let mut h: CPoly = Vec::new();
    for (idx, c) in cur.iter().enumerate() {
        if idx % n == 0 {
            h.push(*c);
        } else if c.norm() > FIT_TOL * cscale {
            return Err(Error::PropertyViolation(format!(
                "derivative cofactor has a z^{idx} term ({:.3e} relative) off the z^{n} grid",
                c.norm() / cscale
            )));
        }
    }
    while h.len() > 1 && h.last().unwrap().norm() <= FIT_TOL * cscale {
        h.pop();
    }
    if h.len() as i64 - 1 != shape.d {
        return Err(Error::PropertyViolation(format!(
            "derivative cofactor has degree {} in z^{n}, shape says {}",
            h.len() - 1,
            shape.d
        )));
    }
    let extra = if shape.d > 0 { aberth_roots(&h)? } else { Vec::new() };
    // Predicted multiset of polar leading coefficients in this ball.
    let mut predicted: Vec<Complex64> = Vec::new();
    for _ in 0..shape.a {
        predicted.push(Complex64::new(0.0, 0.0));
    }
    let push_nth_roots = |list: &mut Vec<Complex64>, w: Complex64, copies: i64| {
        let principal = w.powf(1.0 / ball.n_i as f64);
        for s in 0..ball.n_i {
            let root = principal
                * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * s as f64 / ball.n_i as f64);
            for _ in 0..copies {
                list.push(root);
            }
        }
    };
    if shape.b > 0 {
        push_nth_roots(&mut predicted, ball.c_b, shape.b);
    }
    for w in extra {
        push_nth_roots(&mut predicted, w, 1);
    }
    debug_assert_eq!(predicted.len(), observed.len());
    // Greedy nearest-neighbor matching of the two multisets.
    let lscale = predicted
        .iter()
        .chain(observed.iter())
        .map(|c| c.norm())
        .fold(1e-300, f64::max);
    let mut used = vec![false; predicted.len()];
    let mut worst = 0.0f64;
    for o in &observed {
        let mut best: Option<(usize, f64)> = None;
        for (pi, p) in predicted.iter().enumerate() {
            if used[pi] {
                continue;
            }
            let d = (o - p).norm();
            if best.map_or(true, |(_, bd)| d < bd) {
                best = Some((pi, d));
            }
        }
        let (pi, d) = best.expect("multisets have equal size");
        used[pi] = true;
        worst = worst.max(d / lscale);
    }
    Ok(worst)
}

// ---------------------------------------------------------------------------
// observed decomposition
// ---------------------------------------------------------------------------

/// Which side of the leading-coefficient split a root or factor is on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RefinementSide {
    /// Leading coefficient zero in its ball.
    Gamma1,
    /// Leading coefficient nonzero.
    Gamma2,
}

impl fmt::Display for RefinementSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RefinementSide::Gamma1 => f.write_str("gamma1"),
            RefinementSide::Gamma2 => f.write_str("gamma2"),
        }
    }
}

/// One irreducible factor of the polar, as observed.
#[derive(Clone, Debug)]
pub struct FactorObservation {
    pub bunch: usize,
    pub side: RefinementSide,
    pub degree: u32,
    /// Indices into the polar root set (one per distinct truncation class).
    pub root_indices: Vec<usize>,
    pub chr: CharacteristicData,
    pub class: SemiRootClass,
}

/// Per-ball split of polar roots at one stratum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BallCount {
    pub gamma1: i64,
    pub gamma2: i64,
    /// Roots whose contact exceeds this stratum's height.
    pub deeper: i64,
}

/// Everything observed about one contact bunch.
#[derive(Clone, Debug)]
pub struct BunchObservation {
    pub i: usize,
    pub contact: Exponent,
    pub ord_total: i64,
    pub ord_gamma1: i64,
    pub ord_gamma2: i64,
    pub factors: Vec<FactorObservation>,
    /// One entry per ball of the stratum, in stratum order.
    pub per_ball: Vec<BallCount>,
    /// Largest derivative-identity mismatch over the stratum's balls.
    pub ball_identity_err: f64,
}

/// Outcome of one predicted-vs-observed comparison.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    fn ok(detail: impl Into<String>) -> Self {
        Verdict { pass: true, detail: detail.into() }
    }

    fn fail(detail: impl Into<String>) -> Self {
        Verdict { pass: false, detail: detail.into() }
    }

    fn check(pass: bool, detail: impl Into<String>) -> Self {
        Verdict { pass, detail: detail.into() }
    }
}

/// Observed decomposition of one polar, with the prediction it was checked
/// against and the per-property verdicts.
#[derive(Clone, Debug)]
pub struct PolarDecomposition {
    pub k: i64,
    pub i_k: usize,
    pub polar: BivariatePoly,
    pub predicted: PredictedDecomposition,
    pub bunches: Vec<BunchObservation>,
    pub verdicts: BTreeMap<String, Verdict>,
    pub depth_used: Exponent,
    pub all_pass: bool,
}

/// Decompose the k-th polar of a prepared branch and verify it against the
/// counting predictions.  Retries once at doubled depth if a contact or
/// grouping decision comes out undecided.
pub fn decompose_polar(bd: &BranchData, k: i64) -> Result<PolarDecomposition> {
    let predicted = predicted_decomposition(&bd.chr, k)?;
    let polar = bd.curve.y_derivative(k as u32);
    match decompose_at_depth(bd, &polar, &predicted, k, bd.depth, &bd.roots, &bd.strata) {
        Ok(d) => Ok(d),
        Err(Error::ContactUndecided(_))
        | Err(Error::DepthInsufficient(_))
        | Err(Error::AmbiguousGrouping(_)) => {
            let depth = bd.depth * 2;
            let roots = puiseux_roots(&bd.curve, depth, &bd.cfg)?;
            let deep_strata = strata(&roots, &bd.chr, bd.cfg.tol)?;
            decompose_at_depth(bd, &polar, &predicted, k, depth, &roots, &deep_strata)
        }
        Err(e) => Err(e),
    }
}

#[allow(clippy::too_many_arguments)]
fn decompose_at_depth(
    bd: &BranchData,
    polar: &BivariatePoly,
    predicted: &PredictedDecomposition,
    k: i64,
    depth: Exponent,
    f_roots: &RootSet,
    f_strata: &[Stratum],
) -> Result<PolarDecomposition> {
    let tol = bd.cfg.tol;
    let chr = &bd.chr;
    let i_k = predicted.i_k;
    let polar_rs = puiseux_roots(polar, depth, &bd.cfg)?;

    // Assign every polar root to a bunch, a chain of balls, and a side.
    struct Assigned {
        bunch: usize,
        /// ball index in stratum i', for i' = 1..=bunch (0-based by stratum).
        chain: Vec<usize>,
        side: RefinementSide,
    }
    let mut assigned: Vec<Assigned> = Vec::with_capacity(polar_rs.entries.len());
    for (ei, entry) in polar_rs.entries.iter().enumerate() {
        let c = cont(f_roots, &entry.series, tol)?;
        let v = match c {
            OrderBound::Finite(v) => v,
            other => {
                return Err(Error::ContactUndecided(format!(
                    "polar root {ei} has contact {other} with the branch"
                )))
            }
        };
        let i = match (1..=chr.h()).find(|&i| chr.exponent(i) == v) {
            Some(i) => i,
            None => {
                return Err(Error::ContactUnexpected(format!(
                    "polar root {ei} has contact {v}, not a characteristic value"
                )))
            }
        };
        if i > i_k {
            return Err(Error::ContactUnexpected(format!(
                "polar root {ei} has contact {v} beyond the threshold bunch {i_k}"
            )));
        }
        let mut chain = Vec::with_capacity(i);
        for depth_i in 1..=i {
            let stratum = &f_strata[depth_i - 1];
            let mut found = None;
            for (bi, sb) in stratum.balls.iter().enumerate() {
                if sb.ball.contains(&entry.series, tol)? {
                    if found.is_some() {
                        return Err(Error::BallMismatch(format!(
                            "polar root {ei} lies in two balls at height {}",
                            stratum.height
                        )));
                    }
                    found = Some(bi);
                }
            }
            match found {
                Some(bi) => chain.push(bi),
                None => {
                    return Err(Error::BallMismatch(format!(
                        "polar root {ei} with contact {v} lies in no ball at height {}",
                        stratum.height
                    )))
                }
            }
        }
        let own_ball = &f_strata[i - 1].balls[chain[i - 1]];
        let lc = leading_coeff_wrt(&entry.series, &own_ball.ball, tol)?;
        let side = match bd.cfg.mode {
            Mode::Exact => {
                if lc.is_exact_zero() {
                    RefinementSide::Gamma1
                } else {
                    RefinementSide::Gamma2
                }
            }
            Mode::Numeric => {
                let scale = entry.series.coeff_scale().max(1.0);
                if lc.magnitude() > tol * scale {
                    RefinementSide::Gamma2
                } else {
                    RefinementSide::Gamma1
                }
            }
        };
        assigned.push(Assigned { bunch: i, chain, side });
    }

    // Group polar roots into irreducible factors and classify each.
    let groups = group_branches(&polar_rs, tol)?;
    let mut factors_by_bunch: BTreeMap<usize, Vec<FactorObservation>> = BTreeMap::new();
    for orbit in &groups.orbits {
        let bunch = assigned[orbit.members[0]].bunch;
        let side = assigned[orbit.members[0]].side;
        for &m in &orbit.members {
            if assigned[m].bunch != bunch || assigned[m].side != side {
                return Err(Error::PropertyViolation(format!(
                    "conjugate roots of one factor disagree on bunch or side \
                     (roots {:?})",
                    orbit.members
                )));
            }
        }
        let rep = &polar_rs.entries[orbit.members[0]].series;
        let factor_chr = characteristic_of_series(rep, orbit.degree as i64)?;
        let class = classify_factor(chr, chr.exponent(bunch), &factor_chr);
        factors_by_bunch.entry(bunch).or_default().push(FactorObservation {
            bunch,
            side,
            degree: orbit.degree,
            root_indices: orbit.members.clone(),
            chr: factor_chr,
            class,
        });
    }

    // Per-bunch observations.
    let mut bunches = Vec::with_capacity(i_k);
    let mut verdicts: BTreeMap<String, Verdict> = BTreeMap::new();
    for bp in &predicted.bunches {
        let i = bp.i;
        let stratum = &f_strata[i - 1];
        let in_bunch = |a: &Assigned| a.bunch == i;
        let ord = |filter: &dyn Fn(&Assigned) -> bool| -> i64 {
            assigned
                .iter()
                .zip(&polar_rs.entries)
                .filter(|(a, _)| filter(a))
                .map(|(_, e)| e.mult as i64)
                .sum()
        };
        let ord_total = ord(&in_bunch);
        let ord_gamma1 = ord(&|a| in_bunch(a) && a.side == RefinementSide::Gamma1);
        let ord_gamma2 = ord(&|a| in_bunch(a) && a.side == RefinementSide::Gamma2);
        // Per-ball counts: at-contact split plus deeper passers-by.
        let mut per_ball = vec![BallCount { gamma1: 0, gamma2: 0, deeper: 0 }; stratum.balls.len()];
        for (a, e) in assigned.iter().zip(&polar_rs.entries) {
            if a.bunch < i {
                continue;
            }
            let bi = a.chain[i - 1];
            let m = e.mult as i64;
            if a.bunch == i {
                match a.side {
                    RefinementSide::Gamma1 => per_ball[bi].gamma1 += m,
                    RefinementSide::Gamma2 => per_ball[bi].gamma2 += m,
                }
            } else {
                per_ball[bi].deeper += m;
            }
        }
        // Derivative identity on every ball of the stratum.
        let mut ball_identity_err = 0.0f64;
        let mut identity_fail: Option<String> = None;
        for (bi, sb) in stratum.balls.iter().enumerate() {
            match ball_derivative_identity(sb, &polar_rs, k, tol) {
                Ok(err) => ball_identity_err = ball_identity_err.max(err),
                Err(e) => {
                    identity_fail = Some(format!("ball {bi}: {e}"));
                    break;
                }
            }
        }
        let factors = factors_by_bunch.remove(&i).unwrap_or_default();

        // Verdicts for this bunch.
        verdicts.insert(
            format!("bunch{i}/ord-total"),
            Verdict::check(
                ord_total == bp.ord_total,
                format!("predicted {}, observed {ord_total}", bp.ord_total),
            ),
        );
        verdicts.insert(
            format!("bunch{i}/gamma1"),
            Verdict::check(
                ord_gamma1 == bp.ord_gamma1,
                format!("predicted {}, observed {ord_gamma1}", bp.ord_gamma1),
            ),
        );
        verdicts.insert(
            format!("bunch{i}/gamma2"),
            Verdict::check(
                ord_gamma2 == bp.ord_gamma2,
                format!("predicted {}, observed {ord_gamma2}", bp.ord_gamma2),
            ),
        );
        let g2: Vec<&FactorObservation> = factors
            .iter()
            .filter(|f| f.side == RefinementSide::Gamma2)
            .collect();
        let g2_ok = g2.len() as i64 == bp.gamma2_factor_count
            && g2.iter().all(|f| {
                f.degree as i64 == bp.gamma2_factor_degree
                    && f.chr == bp.gamma2_char
                    && f.class == SemiRootClass::ThresholdSemiRoot(i)
            });
        verdicts.insert(
            format!("bunch{i}/gamma2-factors"),
            Verdict::check(
                g2_ok,
                format!(
                    "predicted {} threshold semi-roots of degree {} with sequence {}; observed [{}]",
                    bp.gamma2_factor_count,
                    bp.gamma2_factor_degree,
                    bp.gamma2_char,
                    g2.iter()
                        .map(|f| format!("deg {} {} {}", f.degree, f.chr, f.class))
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            ),
        );
        let per_ball_ok = per_ball.iter().all(|c| {
            c.gamma1 == bp.per_ball_gamma1
                && c.gamma2 == bp.per_ball_gamma2
                && c.deeper == bp.per_ball_deeper
        });
        verdicts.insert(
            format!("bunch{i}/per-ball"),
            Verdict::check(
                per_ball_ok,
                format!(
                    "predicted (lc0, lc!=0, deeper) = ({}, {}, {}) in each of {} balls; observed {:?}",
                    bp.per_ball_gamma1,
                    bp.per_ball_gamma2,
                    bp.per_ball_deeper,
                    stratum.balls.len(),
                    per_ball
                        .iter()
                        .map(|c| (c.gamma1, c.gamma2, c.deeper))
                        .collect::<Vec<_>>()
                ),
            ),
        );
        verdicts.insert(
            format!("bunch{i}/ball-identity"),
            match &identity_fail {
                Some(msg) => Verdict::fail(format!("derivative identity broke: {msg}")),
                None => Verdict::check(
                    ball_identity_err <= FIT_TOL,
                    format!("max lc mismatch {ball_identity_err:.3e} over {} balls", stratum.balls.len()),
                ),
            },
        );
        verdicts.insert(format!("bunch{i}/flags"), flags_verdict(bp, &factors));

        bunches.push(BunchObservation {
            i,
            contact: bp.contact,
            ord_total,
            ord_gamma1,
            ord_gamma2,
            factors,
            per_ball,
            ball_identity_err,
        });
    }

    // Analysis-level verdicts.
    let total: i64 = bunches.iter().map(|b| b.ord_total).sum();
    verdicts.insert(
        "conservation".into(),
        Verdict::check(
            total == chr.b0() - k && total == polar_rs.total() as i64,
            format!(
                "bunch degrees sum to {total}, polar has {} roots, b_0 - k = {}",
                polar_rs.total(),
                chr.b0() - k
            ),
        ),
    );
    let stray = factors_by_bunch.keys().collect::<Vec<_>>();
    verdicts.insert(
        "bunch-count".into(),
        Verdict::check(
            bunches.iter().all(|b| b.ord_total > 0) && stray.is_empty(),
            format!(
                "every contact value b_i/b_0 for i = 1..{i_k} is populated{}",
                if stray.is_empty() {
                    String::new()
                } else {
                    format!("; stray bunches at {stray:?}")
                }
            ),
        ),
    );

    let all_pass = verdicts.values().all(|v| v.pass);
    Ok(PolarDecomposition {
        k,
        i_k,
        polar: polar.clone(),
        predicted: predicted.clone(),
        bunches,
        verdicts,
        depth_used: depth,
        all_pass,
    })
}

/// Check the structural corollary flags of one bunch against its factors.
fn flags_verdict(bp: &BunchPrediction, factors: &[FactorObservation]) -> Verdict {
    let mut notes = Vec::new();
    let mut pass = true;
    for flag in &bp.flags {
        match flag {
            CorollaryFlag::Gamma1SemiRoot => {
                let g1: Vec<&FactorObservation> = factors
                    .iter()
                    .filter(|f| f.side == RefinementSide::Gamma1)
                    .collect();
                let ok = g1.len() == 1 && g1[0].class == SemiRootClass::SemiRoot(bp.i - 1);
                pass &= ok;
                notes.push(format!(
                    "{flag}: lc-zero part is a single semi-root({}) — {}",
                    bp.i - 1,
                    if ok { "confirmed" } else { "violated" }
                ));
            }
            CorollaryFlag::IrreducibleCase1 => {
                let ok = factors.len() == 1
                    && factors[0].side == RefinementSide::Gamma1
                    && factors[0].class == SemiRootClass::SemiRoot(bp.i - 1);
                pass &= ok;
                notes.push(format!(
                    "{flag}: bunch is one irreducible semi-root({}) — {}",
                    bp.i - 1,
                    if ok { "confirmed" } else { "violated" }
                ));
            }
            CorollaryFlag::IrreducibleCase2 => {
                let ok = factors.len() == 1
                    && factors[0].side == RefinementSide::Gamma2
                    && factors[0].class == SemiRootClass::ThresholdSemiRoot(bp.i);
                pass &= ok;
                notes.push(format!(
                    "{flag}: bunch is one irreducible threshold-semi-root({}) — {}",
                    bp.i,
                    if ok { "confirmed" } else { "violated" }
                ));
            }
        }
    }
    if notes.is_empty() {
        Verdict::ok("no flags predicted")
    } else {
        Verdict::check(pass, notes.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::Trunc;
    use crate::scalar::Scalar;

    fn double_cusp() -> BivariatePoly {
        &(&BivariatePoly::y_pow(3) - &BivariatePoly::x_pow(4)).pow(2) - &BivariatePoly::x_pow(9)
    }

    fn branch() -> BranchData {
        prepare_branch(&double_cusp(), &Config::numeric(), None).unwrap()
    }

    #[test]
    fn strata_of_double_cusp() {
        let bd = branch();
        assert_eq!(bd.chr.b(), &[6, 8, 11]);
        assert_eq!(bd.strata.len(), 2);
        let t1 = &bd.strata[0];
        assert_eq!(t1.height, Exponent::new(4, 3));
        assert_eq!(t1.balls.len(), 1);
        assert_eq!(t1.balls[0].members.len(), 6);
        assert!(t1.balls[0].fit_err <= FIT_TOL);
        // T_1 ball polynomial is (z^3 - c)^2 with c the cube of the unit lcs.
        assert!((t1.balls[0].c_b - Complex64::new(1.0, 0.0)).norm() < 1e-9);
        let t2 = &bd.strata[1];
        assert_eq!(t2.height, Exponent::new(11, 6));
        assert_eq!(t2.balls.len(), 3);
        for b in &t2.balls {
            assert_eq!(b.members.len(), 2);
            assert_eq!((b.n_i, b.e_i, b.e_prev), (2, 1, 2));
            assert!(b.fit_err <= FIT_TOL);
            // lcs are +-zeta/3, so c_b = zeta^2 / 9.
            assert!((b.c_b.norm() - 1.0 / 9.0).abs() < 1e-9);
        }
    }

    #[test]
    fn contact_with_curve() {
        let bd = branch();
        let cfg = Config::numeric();
        // The zero series meets the branch at the first characteristic value.
        let zero = PuiseuxSeries::zero(Mode::Numeric);
        assert_eq!(
            cont(&bd.roots, &zero, cfg.tol).unwrap(),
            OrderBound::Finite(Exponent::new(4, 3))
        );
        // A root of y^3 - x^4 meets it at the second.
        let g = &BivariatePoly::y_pow(3) - &BivariatePoly::x_pow(4);
        let g_roots = puiseux_roots(&g, Exponent::from_int(3), &cfg).unwrap();
        for e in &g_roots.entries {
            assert_eq!(
                cont(&bd.roots, &e.series, cfg.tol).unwrap(),
                OrderBound::Finite(Exponent::new(11, 6))
            );
        }
        assert_eq!(
            cont_curves(&bd.roots, &g_roots, cfg.tol).unwrap(),
            OrderBound::Finite(Exponent::new(11, 6))
        );
        // A transverse smooth curve: y - x has contact 1 with every root.
        let line = PuiseuxSeries::new(
            Mode::Numeric,
            [(Exponent::from_int(1), Scalar::from_complex(Complex64::new(1.0, 0.0)))],
            Trunc::Infinite,
        )
        .unwrap();
        assert_eq!(
            cont(&bd.roots, &line, cfg.tol).unwrap(),
            OrderBound::Finite(Exponent::from_int(1))
        );
    }

    #[test]
    fn classification_table() {
        let chr = CharacteristicData::new(vec![6, 8, 11]).unwrap();
        let cusp_chr = CharacteristicData::new(vec![3, 4]).unwrap();
        let smooth = CharacteristicData::new(vec![1]).unwrap();
        let other = CharacteristicData::new(vec![2, 3]).unwrap();
        assert_eq!(
            classify_factor(&chr, Exponent::new(4, 3), &cusp_chr),
            SemiRootClass::ThresholdSemiRoot(1)
        );
        assert_eq!(
            classify_factor(&chr, Exponent::new(11, 6), &cusp_chr),
            SemiRootClass::SemiRoot(1)
        );
        assert_eq!(
            classify_factor(&chr, Exponent::new(4, 3), &smooth),
            SemiRootClass::SemiRoot(0)
        );
        assert_eq!(
            classify_factor(&chr, Exponent::new(4, 3), &other),
            SemiRootClass::Other
        );
        assert_eq!(
            classify_factor(&chr, Exponent::new(3, 2), &smooth),
            SemiRootClass::Other
        );
        assert_eq!(SemiRootClass::ThresholdSemiRoot(1).to_string(), "threshold-semi-root(1)");
    }

    #[test]
    fn decompose_first_polar() {
        let bd = branch();
        let d = decompose_polar(&bd, 1).unwrap();
        assert!(d.all_pass, "failed verdicts: {:?}", failing(&d));
        assert_eq!(d.i_k, 2);
        let rows: Vec<(i64, i64, i64)> = d
            .bunches
            .iter()
            .map(|b| (b.ord_total, b.ord_gamma1, b.ord_gamma2))
            .collect();
        assert_eq!(rows, vec![(2, 2, 0), (3, 3, 0)]);
        // Bunch 1: the double zero root gives two smooth semi-root factors.
        let f1 = &d.bunches[0].factors;
        assert_eq!(f1.len(), 2);
        for f in f1 {
            assert_eq!(f.degree, 1);
            assert_eq!(f.class, SemiRootClass::SemiRoot(0));
        }
        // Bunch 2: one factor of degree 3, the first semi-root.
        let f2 = &d.bunches[1].factors;
        assert_eq!(f2.len(), 1);
        assert_eq!(f2[0].degree, 3);
        assert_eq!(f2[0].class, SemiRootClass::SemiRoot(1));
        assert_eq!(f2[0].side, RefinementSide::Gamma1);
    }

    #[test]
    fn decompose_remaining_polars() {
        let bd = branch();
        let expect: [(i64, Vec<(i64, i64, i64)>); 4] = [
            (2, vec![(4, 1, 3)]),
            (3, vec![(3, 0, 3)]),
            (4, vec![(2, 2, 0)]),
            (5, vec![(1, 1, 0)]),
        ];
        for (k, rows) in expect {
            let d = decompose_polar(&bd, k).unwrap();
            assert!(d.all_pass, "k = {k}: failed verdicts: {:?}", failing(&d));
            let got: Vec<(i64, i64, i64)> = d
                .bunches
                .iter()
                .map(|b| (b.ord_total, b.ord_gamma1, b.ord_gamma2))
                .collect();
            assert_eq!(got, rows, "k = {k}");
        }
        // k = 2: the nonzero-lc part is a single threshold semi-root.
        let d = decompose_polar(&bd, 2).unwrap();
        let g2: Vec<_> = d.bunches[0]
            .factors
            .iter()
            .filter(|f| f.side == RefinementSide::Gamma2)
            .collect();
        assert_eq!(g2.len(), 1);
        assert_eq!(g2[0].degree, 3);
        assert_eq!(g2[0].class, SemiRootClass::ThresholdSemiRoot(1));
        assert_eq!(g2[0].chr.b(), &[3, 4]);
        // k = 3: the whole polar is one threshold semi-root (case 2).
        let d = decompose_polar(&bd, 3).unwrap();
        assert_eq!(d.bunches[0].factors.len(), 1);
        assert!(d.verdicts["bunch1/flags"].pass);
        // k = 5: irreducible tail (case 1).
        let d = decompose_polar(&bd, 5).unwrap();
        assert!(d.verdicts["bunch1/flags"].detail.contains("irreducible-case-1"));
        assert!(matches!(decompose_polar(&bd, 0), Err(Error::KOutOfRange { .. })));
        assert!(matches!(decompose_polar(&bd, 6), Err(Error::KOutOfRange { .. })));
    }

    fn failing(d: &PolarDecomposition) -> Vec<(String, String)> {
        d.verdicts
            .iter()
            .filter(|(_, v)| !v.pass)
            .map(|(k, v)| (k.clone(), v.detail.clone()))
            .collect()
    }

    #[test]
    fn ball_identity_over_all_orders() {
        let bd = branch();
        let cfg = Config::numeric();
        for k in 1..6 {
            let polar = bd.curve.y_derivative(k as u32);
            let polar_rs = puiseux_roots(&polar, bd.depth, &cfg).unwrap();
            // T_1 ball: identity valid for k < 6.
            let err = ball_derivative_identity(&bd.strata[0].balls[0], &polar_rs, k, cfg.tol).unwrap();
            assert!(err <= FIT_TOL, "k = {k}: mismatch {err:.3e}");
            // T_2 balls: only k = 1 is in range (e_prev = 2).
            if k < 2 {
                for sb in &bd.strata[1].balls {
                    let err = ball_derivative_identity(sb, &polar_rs, k, cfg.tol).unwrap();
                    assert!(err <= FIT_TOL, "T_2, k = {k}: mismatch {err:.3e}");
                }
            }
        }
        let polar_rs = puiseux_roots(&bd.curve.y_derivative(1), bd.depth, &cfg).unwrap();
        assert!(ball_derivative_identity(&bd.strata[1].balls[0], &polar_rs, 2, cfg.tol).is_err());
    }

    #[test]
    fn prepare_rejects_reducible() {
        let cfg = Config::numeric();
        let doubled = (&BivariatePoly::y_pow(2) - &BivariatePoly::x_pow(3)).pow(2);
        assert!(matches!(
            prepare_branch(&doubled, &cfg, None),
            Err(Error::NotIrreducible(_))
        ));
    }
}
