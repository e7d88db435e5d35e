//! Command-line front end: analyze polars of a plane branch, print its
//! characteristic data and pseudo-ball tree, or query the counting laws
//! directly.
//!
//! Exit codes: 0 verified, 1 verification failure, 2 usage or computation
//! error.

mod driver;
mod parser;
mod report;
mod tree;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polar_branches::Mode;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "polar-branches",
    version,
    about = "Contact decomposition of polar curves of irreducible plane branches"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a branch, decompose its polars and verify the counting laws.
    Analyze(AnalyzeArgs),
    /// Print the characteristic sequence and stratum summary of a branch.
    Characteristic(CurveArgs),
    /// Evaluate the predicted decomposition for a characteristic sequence.
    Predict(PredictArgs),
    /// Print the derivative shape exponents (a, b, d) for one ball.
    Shape(ShapeArgs),
    /// Print the pseudo-ball tree of a branch (text, or DOT with --dot).
    Tree(TreeArgs),
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ModeArg {
    /// Exact rational arithmetic; fails where the expansion needs
    /// irrational numbers.
    Exact,
    /// Complex floating point with tolerance-based decisions.
    Numeric,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Numeric => Mode::Numeric,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args)]
pub struct AnalyzeArgs {
    /// Curve polynomial, e.g. "(y^3 - x^4)^2 - x^9".
    pub curve: String,
    /// Polar order(s) to analyze; repeatable.  Default: all 1 <= k < b_0.
    #[arg(short, long)]
    pub k: Vec<i64>,
    /// Analyze every valid polar order (the default when --k is absent).
    #[arg(long, conflicts_with = "k")]
    pub all_k: bool,
    /// Expansion depth as a rational p/q; default (b_h + 1) / b_0.
    #[arg(long)]
    pub depth: Option<String>,
    /// Tolerance for numeric equality decisions.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Arithmetic mode.
    #[arg(long, value_enum, default_value_t = ModeArg::Numeric)]
    pub mode: ModeArg,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Fail (exit 1) unless the resolved characteristic sequence matches,
    /// e.g. --expect-char "6,8,11".
    #[arg(long)]
    pub expect_char: Option<String>,
}

#[derive(Args)]
pub struct CurveArgs {
    /// Curve polynomial.
    pub curve: String,
    /// Tolerance for numeric equality decisions.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Arithmetic mode.
    #[arg(long, value_enum, default_value_t = ModeArg::Numeric)]
    pub mode: ModeArg,
}

#[derive(Args)]
pub struct PredictArgs {
    /// Characteristic sequence, e.g. --char "6,8,11".
    #[arg(long = "char")]
    pub chr: String,
    /// Polar order(s); repeatable.  Default: all 1 <= k < b_0.
    #[arg(short, long)]
    pub k: Vec<i64>,
    /// Predict every valid polar order (the default when --k is absent).
    #[arg(long, conflicts_with = "k")]
    pub all_k: bool,
}

#[derive(Args)]
pub struct ShapeArgs {
    /// Ball polynomial is (z^n - c)^e: the root count n of the inner binomial.
    #[arg(long)]
    pub n: i64,
    /// Ball polynomial is (z^n - c)^e: the outer multiplicity e.
    #[arg(long)]
    pub e: i64,
    /// Derivative order, 1 <= k < n*e.
    #[arg(short, long)]
    pub k: i64,
}

#[derive(Args)]
pub struct TreeArgs {
    /// Curve polynomial.
    pub curve: String,
    /// Write the tree as a DOT digraph to this path.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Print the DOT digraph to stdout instead of the text tree.
    #[arg(long)]
    pub dot_stdout: bool,
    /// Tolerance for numeric equality decisions.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Arithmetic mode.
    #[arg(long, value_enum, default_value_t = ModeArg::Numeric)]
    pub mode: ModeArg,
}

fn main() {
    let cli = Cli::parse();
    let code = match &cli.cmd {
        Command::Analyze(a) => driver::run_analyze(a),
        Command::Characteristic(a) => driver::run_characteristic(a),
        Command::Predict(a) => driver::run_predict(a),
        Command::Shape(a) => driver::run_shape(a),
        Command::Tree(a) => driver::run_tree(a),
    };
    std::process::exit(code);
}
