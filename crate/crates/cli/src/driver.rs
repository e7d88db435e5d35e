//! Subcommand implementations.
//!
//! Exit codes: 0 — everything verified; 1 — the pipeline ran but at least
//! one verification verdict failed; 2 — usage, parse or computation errors.

use crate::parser::parse_curve;
use crate::report::{self, CheckOut};
use crate::tree;
use crate::{AnalyzeArgs, CurveArgs, Format, PredictArgs, ShapeArgs, TreeArgs};
use polar_branches::{
    decompose_polar, derivative_shape, predicted_decomposition, prepare_branch,
    BivariatePoly, CharacteristicData, Config, Exponent, Mode, PolarDecomposition,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

fn fail(msg: impl std::fmt::Display) -> i32 {
    eprintln!("error: {msg}");
    EXIT_ERROR
}

fn parse_or_exit(src: &str) -> Result<BivariatePoly, i32> {
    parse_curve(src).map_err(|e| fail(format_args!("cannot parse curve: {e}")))
}

fn parse_depth(s: &str) -> Result<Exponent, String> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: i64 = num.trim().parse().map_err(|_| format!("bad depth numerator in '{s}'"))?;
    let den: i64 = den.trim().parse().map_err(|_| format!("bad depth denominator in '{s}'"))?;
    if den <= 0 || num <= 0 {
        return Err(format!("depth must be a positive rational, got '{s}'"));
    }
    Ok(Exponent::new(num, den))
}

fn parse_char_list(s: &str) -> Result<CharacteristicData, String> {
    let b: Result<Vec<i64>, _> = s
        .split(',')
        .map(|p| p.trim().parse::<i64>())
        .collect();
    let b = b.map_err(|_| format!("cannot parse characteristic sequence '{s}'"))?;
    CharacteristicData::new(b).map_err(|e| e.to_string())
}

fn config_for(mode: Mode, tol: f64) -> Config {
    let base = match mode {
        Mode::Exact => Config::exact(),
        Mode::Numeric => Config::numeric(),
    };
    base.with_tol(tol)
}

fn polar_orders(chr: &CharacteristicData, ks: &[i64], all_k: bool) -> Result<Vec<i64>, String> {
    let b0 = chr.b0();
    if !ks.is_empty() {
        for &k in ks {
            if k < 1 || k >= b0 {
                return Err(format!("k = {k} outside the valid range 1..{b0}"));
            }
        }
        return Ok(ks.to_vec());
    }
    let _ = all_k;
    Ok((1..b0).collect())
}

pub fn run_analyze(args: &AnalyzeArgs) -> i32 {
    let curve = match parse_or_exit(&args.curve) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let cfg = config_for(args.mode.into(), args.tol);
    let depth = match args.depth.as_deref().map(parse_depth).transpose() {
        Ok(d) => d,
        Err(e) => return fail(e),
    };
    let bd = match prepare_branch(&curve, &cfg, depth) {
        Ok(bd) => bd,
        Err(e) => return fail(e),
    };
    let check = args.expect_char.as_deref().map(|want| {
        match parse_char_list(want) {
            Ok(expected) => CheckOut {
                pass: expected == bd.chr,
                detail: format!("expected {expected}, resolved {}", bd.chr),
            },
            Err(e) => CheckOut { pass: false, detail: e },
        }
    });
    let ks = match polar_orders(&bd.chr, &args.k, args.all_k) {
        Ok(ks) => ks,
        Err(e) => return fail(e),
    };
    let mut polars: Vec<PolarDecomposition> = Vec::with_capacity(ks.len());
    for k in ks {
        match decompose_polar(&bd, k) {
            Ok(d) => polars.push(d),
            Err(e) => return fail(format_args!("polar k = {k}: {e}")),
        }
    }
    let rep = report::build(&args.curve, &bd, &polars, check);
    match args.format {
        Format::Json => {
            let s = serde_json::to_string_pretty(&rep).expect("report serializes");
            println!("{s}");
        }
        Format::Text => print!("{}", report::render_text(&rep)),
    }
    if rep.all_pass {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    }
}

pub fn run_characteristic(args: &CurveArgs) -> i32 {
    let curve = match parse_or_exit(&args.curve) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let cfg = config_for(args.mode.into(), args.tol);
    let bd = match prepare_branch(&curve, &cfg, None) {
        Ok(bd) => bd,
        Err(e) => return fail(e),
    };
    println!("characteristic: {}", bd.chr);
    println!(
        "gcd ladder e = ({}), steps n = ({})",
        bd.chr.e().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "),
        bd.chr.n_seq().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "),
    );
    for s in &bd.strata {
        println!(
            "T_{}: {} ball(s) at height {}, {} roots each",
            s.i,
            s.balls.len(),
            s.height,
            s.balls[0].members.len()
        );
    }
    EXIT_OK
}

pub fn run_predict(args: &PredictArgs) -> i32 {
    let chr = match parse_char_list(&args.chr) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let ks = match polar_orders(&chr, &args.k, args.all_k) {
        Ok(ks) => ks,
        Err(e) => return fail(e),
    };
    println!("characteristic: {chr}");
    for k in ks {
        let p = match predicted_decomposition(&chr, k) {
            Ok(p) => p,
            Err(e) => return fail(e),
        };
        println!("k = {k} (threshold bunch {}):", p.i_k);
        for b in &p.bunches {
            let flags = if b.flags.is_empty() {
                String::new()
            } else {
                format!(
                    "   [{}]",
                    b.flags.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(", ")
                )
            };
            println!(
                "  bunch {}: contact {}, ord {} = {} lc-zero + {} lc-nonzero, \
                 {} ball(s) x ({} + {} + {} deeper){flags}",
                b.i,
                b.contact,
                b.ord_total,
                b.ord_gamma1,
                b.ord_gamma2,
                b.ball_count,
                b.per_ball_gamma1,
                b.per_ball_gamma2,
                b.per_ball_deeper,
            );
            if b.gamma2_factor_count > 0 {
                println!(
                    "           lc-nonzero part: {} factor(s) of degree {} with sequence {}",
                    b.gamma2_factor_count, b.gamma2_factor_degree, b.gamma2_char
                );
            }
        }
    }
    EXIT_OK
}

pub fn run_shape(args: &ShapeArgs) -> i32 {
    match derivative_shape(args.n, args.e, args.k) {
        Ok(s) => {
            println!(
                "d^{}/dz^{} (z^{} - c)^{} = C * z^{} * (z^{} - c)^{} * (product of {} \
                 distinct off-grid factors in z^{})",
                args.k, args.k, args.n, args.e, s.a, args.n, s.b, s.d, args.n
            );
            println!("a = {}, b = {}, d = {}", s.a, s.b, s.d);
            EXIT_OK
        }
        Err(e) => fail(e),
    }
}

pub fn run_tree(args: &TreeArgs) -> i32 {
    let curve = match parse_or_exit(&args.curve) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let cfg = config_for(args.mode.into(), args.tol);
    let bd = match prepare_branch(&curve, &cfg, None) {
        Ok(bd) => bd,
        Err(e) => return fail(e),
    };
    let rendered = if args.dot.is_some() || args.dot_stdout {
        tree::render_dot(&bd)
    } else {
        tree::render_text(&bd)
    };
    let rendered = match rendered {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    match &args.dot {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &rendered) {
                return fail(format_args!("cannot write {}: {e}", path.display()));
            }
            println!("wrote {}", path.display());
        }
        None => print!("{rendered}"),
    }
    EXIT_OK
}
