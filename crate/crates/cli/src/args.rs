use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "monogen", version, about = "Monogenicity of composed polynomial families")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    pub output: Output,
    /// How primes of the discriminant are settled.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Both)]
    pub mode: ModeArg,
    /// Trial division bound for integer factoring.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub trial_bound: u64,
    /// Total Pollard-rho iterations per factorization.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub rho_budget: u64,
    /// Recorded for reproducibility; every algorithm is deterministic.
    #[arg(long, global = true, env = "MONOGEN_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Output {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Fast,
    Oracle,
    Both,
}

impl From<ModeArg> for monogen::families::Mode {
    fn from(m: ModeArg) -> Self {
        use monogen::families::Mode;
        match m {
            ModeArg::Fast => Mode::FastOnly,
            ModeArg::Oracle => Mode::OracleOnly,
            ModeArg::Both => Mode::FastWithOracleFallback,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyArg {
    F1,
    F2,
}

impl From<FamilyArg> for monogen::families::Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::F1 => monogen::families::Family::F1,
            FamilyArg::F2 => monogen::families::Family::F2,
        }
    }
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Instance {
    #[arg(long, value_enum, default_value_t = FamilyArg::F1)]
    pub family: FamilyArg,
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long, allow_negative_numbers = true)]
    pub a: i64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0)]
    pub b: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub c: i64,
    /// Allow n = 2.
    #[arg(long)]
    pub relaxed: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide monogenicity of one family member.
    Check(Instance),
    /// Discriminant by closed form, resultant and composition formula.
    Disc(Instance),
    /// Dedekind criterion traces for a polynomial or family member.
    Dedekind(DedekindArgs),
    /// Evaluate the squarefree sufficient criterion (family f1).
    Corollary(CorollaryArgs),
    /// Check every instance of a parameter box.
    Sweep(SweepArgs),
    /// Count monogenic pairs on a (b, c) grid and evaluate the lower bound.
    Census(CensusArgs),
    /// Run the built-in worked examples.
    Selftest,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct DedekindArgs {
    /// Polynomial such as "x^2 - 5"; overrides the family flags.
    #[arg(long)]
    pub poly: Option<String>,
    #[arg(long, value_enum, default_value_t = FamilyArg::F1)]
    pub family: FamilyArg,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<i64>,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0)]
    pub b: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub c: Option<i64>,
    #[arg(long)]
    pub relaxed: bool,
    /// Primes to test; default is every prime whose square divides the discriminant.
    #[arg(long = "prime", value_delimiter = ',')]
    pub primes: Vec<u64>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CorollaryArgs {
    #[command(flatten)]
    pub instance: Instance,
    /// Preferred prime dividing gcd(b, c).
    #[arg(long)]
    pub ell: Option<u64>,
}

/// An inclusive integer range written `lo..hi` or a single value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span(pub RangeInclusive<i64>);

impl FromStr for Span {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|_| format!("bad range `{s}`"));
        match s.split_once("..") {
            Some((lo, hi)) => Ok(Span(parse(lo)?..=parse(hi.trim_start_matches('='))?)),
            None => {
                let v = parse(s)?;
                Ok(Span(v..=v))
            }
        }
    }
}

impl Serialize for Span {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (self.0.start(), self.0.end()).serialize(s)
    }
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SweepArgs {
    #[arg(long, value_enum, default_value_t = FamilyArg::F1)]
    pub family: FamilyArg,
    #[arg(long, allow_hyphen_values = true)]
    pub n: Span,
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    pub k: Span,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Span,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub b: Span,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Span,
    #[arg(long)]
    pub relaxed: bool,
    /// Checkpoint file; completed instances recorded there are skipped.
    #[arg(long)]
    pub resume: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CensusArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long, allow_negative_numbers = true)]
    pub a: i64,
    /// Prime dividing both b and c.
    #[arg(long)]
    pub ell: u64,
    #[arg(long)]
    pub b_max: u64,
    #[arg(long)]
    pub c_max: u64,
    /// Truncation point of the infinite product.
    #[arg(long, default_value_t = 10_000)]
    pub prime_cut: u64,
    /// Pairs evaluated before the census is truncated.
    #[arg(long, default_value_t = 100_000)]
    pub max_pairs: u64,
    /// Drop the rad(n+1) | a hypothesis.
    #[arg(long)]
    pub relaxed: bool,
    /// Also write the witness rows as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}
