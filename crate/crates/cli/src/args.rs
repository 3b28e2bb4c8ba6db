use std::fmt;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use modalt_core::closed::DEFAULT_BRUTE_BUDGET;

#[derive(Debug, Parser)]
#[command(
    name = "modalt",
    version,
    about = "Excedance enumerators over mod-k-alternating permutations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the members of a family, one per line, in lexicographic order.
    Enumerate(EnumerateArgs),
    /// Print an excedance or descent polynomial, optionally cross-checked.
    Poly(PolyArgs),
    /// Build a structured matrix and print it, its determinant or its permanent.
    Matrix(MatrixArgs),
    /// Palindromicity and gamma vector of a polynomial, or certify the
    /// gamma-positivity theorem for (n, k).
    Gamma(GammaArgs),
    /// Compare oracles over a grid of (n, k, r) and report PASS/FAIL/SKIP rows.
    Verify(VerifyArgs),
    /// Emit a table of counts, enumerators and gamma vectors over a grid.
    Table(TableArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

/// An inclusive range written `a..b`, or a single value `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntRange(pub RangeInclusive<usize>);

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("`{t}` is not a non-negative integer"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = num(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("range `{s}` is empty"));
        }
        Ok(IntRange(lo..=hi))
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = (self.0.start(), self.0.end());
        if a == b {
            write!(f, "{a}")
        } else {
            write!(f, "{a}..{b}")
        }
    }
}

fn positive_budget(s: &str) -> Result<u128, String> {
    match s.parse::<u128>() {
        Ok(0) => Err("budget must be at least 1".into()),
        Ok(b) => Ok(b),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 1)]
    pub r: usize,
    /// Restrict to fixed-point-free members.
    #[arg(long)]
    pub derangement: bool,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Largest family size to enumerate.
    #[arg(long, default_value_t = DEFAULT_BRUTE_BUDGET)]
    pub budget: u128,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    /// Signed excedance enumerator.
    Sgnmpe,
    /// Excedance enumerator.
    Mpe,
    /// Signed excedance enumerator over derangements.
    Sgnmpde,
    /// Excedance enumerator over derangements.
    Mpde,
    /// Eulerian polynomial A_n (descents over S_n).
    Eulerian,
    /// Signed descent enumerator over S_n.
    Sgndes,
}

impl Which {
    pub fn name(self) -> &'static str {
        match self {
            Which::Sgnmpe => "sgnmpe",
            Which::Mpe => "mpe",
            Which::Sgnmpde => "sgnmpde",
            Which::Mpde => "mpde",
            Which::Eulerian => "eulerian",
            Which::Sgndes => "sgndes",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum)]
pub enum Oracle {
    Brute,
    Matrix,
    Closed,
}

impl Oracle {
    pub const ALL: [Oracle; 3] = [Oracle::Brute, Oracle::Matrix, Oracle::Closed];

    pub fn name(self) -> &'static str {
        match self {
            Oracle::Brute => "brute",
            Oracle::Matrix => "matrix",
            Oracle::Closed => "closed",
        }
    }
}

#[derive(Debug, Args)]
pub struct PolyArgs {
    #[arg(long, value_enum)]
    pub which: Which,
    #[arg(long)]
    pub n: usize,
    /// Required for the family enumerators.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub r: usize,
    /// Compute every available oracle and report whether they agree.
    #[arg(long)]
    pub verify: bool,
    #[arg(long, default_value_t = DEFAULT_BRUTE_BUDGET)]
    pub budget: u128,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixKind {
    /// M(n, k, r), the congruence matrix of the family.
    M,
    /// D(n, k), the derangement matrix (r = 1).
    D,
    /// A_n: 1 on and below the diagonal, t above.
    A,
    /// B_n: t on and above the diagonal, 1 below.
    B,
    /// A_n with the diagonal cleared.
    ADerangement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixOp {
    Show,
    Det,
    Permanent,
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    #[arg(long, value_enum)]
    pub kind: MatrixKind,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub r: usize,
    #[arg(long, value_enum, default_value_t = MatrixOp::Show)]
    pub op: MatrixOp,
    /// Conjugate by the residue-class relabeling first (kinds m and d).
    #[arg(long)]
    pub relabel: bool,
    /// Defaults to text for `show` and json for `det` and `permanent`.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Even,
    Odd,
}

#[derive(Debug, Args)]
pub struct GammaArgs {
    /// Ascending coefficient list, e.g. `1,4,1`.
    #[arg(long, conflicts_with_all = ["n", "k", "certify"], allow_hyphen_values = true)]
    pub coeffs: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub r: usize,
    /// Analyze the even or odd half of the family instead of the whole.
    #[arg(long, value_enum)]
    pub parity: Option<ParityArg>,
    /// Certify both halves for every r at (n, k).
    #[arg(long)]
    pub certify: bool,
    /// Certify even outside the theorem's hypothesis.
    #[arg(long, requires = "certify")]
    pub force: bool,
    /// Brute-force cross-check budget for --certify (0 disables it).
    #[arg(long, default_value_t = DEFAULT_BRUTE_BUDGET)]
    pub budget: u128,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyWhich {
    Sgnmpe,
    Mpe,
    Sgnmpde,
    Mpde,
    /// Even/odd halves: brute-force agreement, palindromicity, gamma-positivity.
    Gamma,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, default_value = "1..8")]
    pub n: IntRange,
    #[arg(long, default_value = "1..4")]
    pub k: IntRange,
    /// Fix r instead of taking every 1 <= r <= k.
    #[arg(long)]
    pub r: Option<usize>,
    /// Worker threads (0 means one per core).
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, value_enum)]
    pub which: VerifyWhich,
    /// Oracles to compare; at least two.
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "brute,matrix,closed"
    )]
    pub oracles: Vec<Oracle>,
    /// Largest family size to enumerate per grid point.
    #[arg(long, default_value_t = DEFAULT_BRUTE_BUDGET, value_parser = positive_budget)]
    pub budget: u128,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Prepend a header naming the tool version and grid.
    #[arg(long)]
    pub meta: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!("1..8".parse::<IntRange>().unwrap(), IntRange(1..=8));
        assert_eq!("1..=8".parse::<IntRange>().unwrap(), IntRange(1..=8));
        assert_eq!("5".parse::<IntRange>().unwrap(), IntRange(5..=5));
        assert!("8..1".parse::<IntRange>().is_err());
        assert!("a..3".parse::<IntRange>().is_err());
        assert_eq!(IntRange(3..=6).to_string(), "3..6");
    }

    #[test]
    fn cli_is_well_formed() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
