//! Serializable report schema and the text renderer.
//!
//! The JSON layout is versioned through the `schema` field ("polar-report/1")
//! and built only from deterministic data, so identical invocations produce
//! byte-identical output.  All map-like sections use sorted keys.

use polar_branches::{BranchData, CharacteristicData, PolarDecomposition};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;

pub const SCHEMA: &str = "polar-report/1";

#[derive(Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub curve: String,
    pub mode: String,
    pub tol: f64,
    pub characteristic: CharacteristicOut,
    pub depth: String,
    pub strata: Vec<StratumOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub characteristic_check: Option<CheckOut>,
    pub polars: Vec<PolarOut>,
    pub all_pass: bool,
}

#[derive(Serialize)]
pub struct CharacteristicOut {
    pub b: Vec<i64>,
    pub e: Vec<i64>,
    pub n: Vec<i64>,
    pub display: String,
}

#[derive(Serialize)]
pub struct CheckOut {
    pub pass: bool,
    pub detail: String,
}

#[derive(Serialize)]
pub struct StratumOut {
    pub i: usize,
    pub height: String,
    pub balls: Vec<BallOut>,
}

#[derive(Serialize)]
pub struct BallOut {
    pub members: Vec<usize>,
    pub fit_err: f64,
    pub n_i: i64,
    pub e_i: i64,
}

#[derive(Serialize)]
pub struct PolarOut {
    pub k: i64,
    pub i_k: usize,
    pub depth_used: String,
    pub all_pass: bool,
    pub bunches: Vec<BunchOut>,
    pub verdicts: BTreeMap<String, VerdictOut>,
}

#[derive(Serialize)]
pub struct BunchOut {
    pub i: usize,
    pub contact: String,
    pub predicted: PredictedOut,
    pub observed: ObservedOut,
}

#[derive(Serialize)]
pub struct PredictedOut {
    pub ord_total: i64,
    pub ord_gamma1: i64,
    pub ord_gamma2: i64,
    pub ball_count: i64,
    pub per_ball: [i64; 3],
    pub gamma2_factor_count: i64,
    pub gamma2_factor_degree: i64,
    #[serde(rename = "gamma2_factor_char")]
    pub gamma2_factor_chr: Vec<i64>,
    pub flags: Vec<String>,
}

#[derive(Serialize)]
pub struct ObservedOut {
    pub ord_total: i64,
    pub ord_gamma1: i64,
    pub ord_gamma2: i64,
    pub per_ball: Vec<[i64; 3]>,
    pub ball_identity_err: f64,
    pub factors: Vec<FactorOut>,
}

#[derive(Serialize)]
pub struct FactorOut {
    pub degree: u32,
    pub side: String,
    #[serde(rename = "char")]
    pub chr: Vec<i64>,
    pub class: String,
    pub roots: Vec<usize>,
}

#[derive(Serialize)]
pub struct VerdictOut {
    pub pass: bool,
    pub detail: String,
}

fn chr_out(c: &CharacteristicData) -> CharacteristicOut {
    CharacteristicOut {
        b: c.b().to_vec(),
        e: c.e().to_vec(),
        n: c.n_seq().to_vec(),
        display: c.to_string(),
    }
}

/// Assemble the report from the branch data and its analyzed polars.
pub fn build(
    curve_src: &str,
    bd: &BranchData,
    polars: &[PolarDecomposition],
    characteristic_check: Option<CheckOut>,
) -> Report {
    let strata = bd
        .strata
        .iter()
        .map(|s| StratumOut {
            i: s.i,
            height: s.height.to_string(),
            balls: s
                .balls
                .iter()
                .map(|b| BallOut {
                    members: b.members.clone(),
                    fit_err: b.fit_err,
                    n_i: b.n_i,
                    e_i: b.e_i,
                })
                .collect(),
        })
        .collect();
    let polars_out: Vec<PolarOut> = polars
        .iter()
        .map(|d| PolarOut {
            k: d.k,
            i_k: d.i_k,
            depth_used: d.depth_used.to_string(),
            all_pass: d.all_pass,
            bunches: d
                .bunches
                .iter()
                .zip(&d.predicted.bunches)
                .map(|(obs, pre)| BunchOut {
                    i: obs.i,
                    contact: obs.contact.to_string(),
                    predicted: PredictedOut {
                        ord_total: pre.ord_total,
                        ord_gamma1: pre.ord_gamma1,
                        ord_gamma2: pre.ord_gamma2,
                        ball_count: pre.ball_count,
                        per_ball: [pre.per_ball_gamma1, pre.per_ball_gamma2, pre.per_ball_deeper],
                        gamma2_factor_count: pre.gamma2_factor_count,
                        gamma2_factor_degree: pre.gamma2_factor_degree,
                        gamma2_factor_chr: pre.gamma2_char.b().to_vec(),
                        flags: pre.flags.iter().map(|f| f.to_string()).collect(),
                    },
                    observed: ObservedOut {
                        ord_total: obs.ord_total,
                        ord_gamma1: obs.ord_gamma1,
                        ord_gamma2: obs.ord_gamma2,
                        per_ball: obs
                            .per_ball
                            .iter()
                            .map(|c| [c.gamma1, c.gamma2, c.deeper])
                            .collect(),
                        ball_identity_err: obs.ball_identity_err,
                        factors: obs
                            .factors
                            .iter()
                            .map(|f| FactorOut {
                                degree: f.degree,
                                side: f.side.to_string(),
                                chr: f.chr.b().to_vec(),
                                class: f.class.to_string(),
                                roots: f.root_indices.clone(),
                            })
                            .collect(),
                    },
                })
                .collect(),
            verdicts: d
                .verdicts
                .iter()
                .map(|(k, v)| {
                    (k.clone(), VerdictOut { pass: v.pass, detail: v.detail.clone() })
                })
                .collect(),
        })
        .collect();
    let all_pass = polars_out.iter().all(|p| p.all_pass)
        && characteristic_check.as_ref().map_or(true, |c| c.pass);
    Report {
        schema: SCHEMA,
        curve: curve_src.to_string(),
        mode: bd.cfg.mode.to_string(),
        tol: bd.cfg.tol,
        characteristic: chr_out(&bd.chr),
        depth: bd.depth.to_string(),
        strata,
        characteristic_check,
        polars: polars_out,
        all_pass,
    }
}

/// Human-oriented rendering of a report.
pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "curve: {}", r.curve);
    let _ = writeln!(out, "mode: {}, tol = {:e}", r.mode, r.tol);
    let _ = writeln!(
        out,
        "characteristic: {}   e = ({})   n = ({})",
        r.characteristic.display,
        join(&r.characteristic.e),
        join(&r.characteristic.n),
    );
    let _ = writeln!(out, "expansion depth: {}", r.depth);
    for s in &r.strata {
        let sizes: Vec<String> = s.balls.iter().map(|b| b.members.len().to_string()).collect();
        let fit = s.balls.iter().map(|b| b.fit_err).fold(0.0, f64::max);
        let _ = writeln!(
            out,
            "T_{}: {} ball{} at height {} holding ({}) roots, model fit {fit:.2e}",
            s.i,
            s.balls.len(),
            if s.balls.len() == 1 { "" } else { "s" },
            s.height,
            sizes.join(", "),
        );
    }
    if let Some(c) = &r.characteristic_check {
        let _ = writeln!(
            out,
            "characteristic check: {} [{}]",
            c.detail,
            if c.pass { "PASS" } else { "FAIL" }
        );
    }
    for p in &r.polars {
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "polar k = {}   threshold bunch {}   [{}]",
            p.k,
            p.i_k,
            if p.all_pass { "PASS" } else { "FAIL" }
        );
        for b in &p.bunches {
            let flags = if b.predicted.flags.is_empty() {
                String::new()
            } else {
                format!("   flags: {}", b.predicted.flags.join(", "))
            };
            let _ = writeln!(
                out,
                "  bunch {}  contact {:<6} ord {} = {} lc-zero + {} lc-nonzero{flags}",
                b.i,
                b.contact,
                b.observed.ord_total,
                b.observed.ord_gamma1,
                b.observed.ord_gamma2,
            );
            for f in &b.observed.factors {
                let _ = writeln!(
                    out,
                    "    deg-{} factor, sequence ({}), {} [{}]",
                    f.degree,
                    join(&f.chr),
                    f.class,
                    f.side,
                );
            }
        }
        let failed: Vec<(&String, &VerdictOut)> =
            p.verdicts.iter().filter(|(_, v)| !v.pass).collect();
        if failed.is_empty() {
            let _ = writeln!(out, "  verdicts: {}/{} pass", p.verdicts.len(), p.verdicts.len());
        } else {
            for (key, v) in failed {
                let _ = writeln!(out, "  FAILED {key}: {}", v.detail);
            }
        }
    }
    let passed = r.polars.iter().filter(|p| p.all_pass).count();
    let chr_failed = r.characteristic_check.as_ref().is_some_and(|c| !c.pass);
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "polars verified: {passed}/{} pass{}",
        r.polars.len(),
        if r.all_pass {
            ""
        } else if chr_failed {
            " — VERIFICATION FAILED (characteristic check)"
        } else {
            " — VERIFICATION FAILED"
        }
    );
    out
}

fn join(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}
