use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use aperylift_core::apery::Variant;
use aperylift_core::pairs::PairName;
use aperylift_core::{CoeffExpr, Rational};

#[derive(Debug, Parser)]
#[command(name = "aperylift", version, about = "Exact recurrence, lift and series computations")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub emit: Format,

    /// Directory for cached sequences.
    #[arg(long, global = true, env = "APERYLIFT_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    /// Recompute every sequence; read and write no cache files.
    #[arg(long, global = true)]
    pub no_cache: bool,

    /// Decimal places when rendering values.
    #[arg(long, global = true, default_value_t = 30)]
    pub digits: u32,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate A_n, B_n for an Apéry-type pair.
    Apery(AperyArgs),
    /// Propagate a solution of a self-adjoint three-term recurrence.
    Propagate(PropagateArgs),
    /// Coefficients of the recurrence satisfied by symmetric products.
    Lift(LiftArgs),
    /// Degree test for the limit of B_n/A_n.
    Degree(DegreeArgs),
    /// Condition-by-condition irrationality criterion report.
    Criterion(CriterionArgs),
    /// Evaluate a series with a certified tail bound.
    Series(SeriesArgs),
    /// Run every exactness check and numerical claim.
    VerifyAll(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct AperyArgs {
    #[arg(long, default_value = "zeta3")]
    pub variant: Variant,
    /// Last index.
    #[arg(long, default_value_t = 20)]
    pub n: u64,
    /// Also evaluate the closed forms and compare them with the recurrence.
    #[arg(long)]
    pub verify: bool,
}

/// A recurrence given by name or by explicit `c_n`, `b_n`.
#[derive(Debug, Args)]
pub struct RecurrenceArgs {
    /// Built-in pair: apery3, apery2, fib, pell, borderline.
    #[arg(long, conflicts_with_all = ["c", "b"])]
    pub pair: Option<PairName>,
    /// c_n, e.g. "(n+1)^3" or "(-1)^n*(n+1)^2".
    #[arg(long, requires = "b")]
    pub c: Option<CoeffExpr>,
    /// b_n in c_n y_{n+1} + c_{n-1} y_{n-1} = b_n y_n.
    #[arg(long, requires = "c")]
    pub b: Option<CoeffExpr>,
}

#[derive(Debug, Args)]
pub struct PropagateArgs {
    #[command(flatten)]
    pub recurrence: RecurrenceArgs,
    /// Values at n = 0 and n = 1, e.g. "1,5" or "0,1/2"; defaults to the
    /// pair's A.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub init: Option<Vec<Rational>>,
    /// Last index.
    #[arg(long, default_value_t = 20)]
    pub n: i64,
}

#[derive(Debug, Args)]
pub struct LiftArgs {
    /// Built-in base pair.
    #[arg(long, default_value = "apery3")]
    pub base: PairName,
    /// Number of factors in each product.
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    /// Relation indices `lo:hi`.
    #[arg(long, default_value = "1:20", value_parser = parse_range)]
    pub n_range: (i64, i64),
    /// Check every component against the tabulated relation.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args)]
pub struct DegreeArgs {
    #[arg(long, default_value = "apery3")]
    pub pair: PairName,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    /// Scan every primitive candidate with entries in [-height, height].
    #[arg(long, conflicts_with = "candidate")]
    pub height: Option<i64>,
    /// One candidate: entry i multiplies the component with i factors of A.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub candidate: Option<Vec<Rational>>,
    #[arg(long, default_value_t = 60)]
    pub n_max: i64,
}

#[derive(Debug, Args)]
pub struct CriterionArgs {
    #[arg(long, default_value = "apery3")]
    pub pair: PairName,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// Required when k > 1.
    #[arg(long, default_value = "0")]
    pub delta: Rational,
    /// ε_n.
    #[arg(long, default_value = "1/n")]
    pub eps: CoeffExpr,
    /// d_m: "unit" or "factor:exponent" for factor·lcm(1..m)^exponent.
    #[arg(long, default_value = "unit", value_parser = parse_clearing)]
    pub d: ClearingArg,
    /// e_m, same syntax as --d.
    #[arg(long, default_value = "2:3", value_parser = parse_clearing)]
    pub e: ClearingArg,
    #[arg(long, default_value_t = 100)]
    pub n_max: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClearingArg {
    Unit,
    LcmPower(i64, u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeriesName {
    /// Σ 6/(n^3 A_n A_{n-1}).
    Zeta3Accel,
    /// Σ (-1)^{n-1} 5/(2 n^3 C(2n,n)).
    Zeta3Apery,
    /// Product series for ζ(3)^m, 2 ≤ m ≤ 5.
    Zeta3Pow,
    /// Product series for ζ(2)^m, 2 ≤ m ≤ 3.
    Zeta2Pow,
    /// lim B_n/A_n of a built-in pair as a telescoped series.
    Limit,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[arg(long, value_enum)]
    pub name: SeriesName,
    #[arg(long, default_value_t = 25)]
    pub terms: usize,
    /// Power for the product series.
    #[arg(long, default_value_t = 2)]
    pub m: u32,
    /// Pair for `--name limit`.
    #[arg(long, default_value = "apery3")]
    pub pair: PairName,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 300)]
    pub n_max: i64,
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected lo:hi")?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad lower bound {lo:?}"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad upper bound {hi:?}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}:{hi}"));
    }
    Ok((lo, hi))
}

fn parse_clearing(s: &str) -> Result<ClearingArg, String> {
    if s.eq_ignore_ascii_case("unit") || s == "1" {
        return Ok(ClearingArg::Unit);
    }
    let (f, e) = s.split_once(':').ok_or("expected \"unit\" or factor:exponent")?;
    let f: i64 = f.trim().parse().map_err(|_| format!("bad factor {f:?}"))?;
    let e: u32 = e.trim().parse().map_err(|_| format!("bad exponent {e:?}"))?;
    if f <= 0 {
        return Err("factor must be positive".into());
    }
    Ok(ClearingArg::LcmPower(f, e))
}
