use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

const GRAMMAR: &str = "\
Literals:
  Field elements and series share one grammar:

    sum     := ['+'|'-'] term (('+'|'-') term)*
    term    := factor ('*' factor)* | 'O(' 't' ['^' exp] ')'
    factor  := INT | 'g' ['^' INT] | 't' ['^' exp]
    exp     := INT | '(' ['-'] INT ['/' INT] ')'

  g is the class of x in F_p[x]/(modulus). Exponent denominators must be
  powers of p, at most p^cap. O(t^e) fixes the precision of a series; without
  it --prec applies, and when --prec is absent the command retries at
  precision 32, 64, ..., 512. A tuple is a comma-separated list, e.g.
  --a 't,t^3' or --a '1,g'. Any entry with t makes the whole tuple a series
  tuple.

  Examples:
    ndep valo alpha --p 2 --a t,t^3
    ndep valo preimage --p 2 --a t,t^3 --y t^5
    ndep iso --p 2 --k 2 --a 1,g
    ndep shatter ramsey --l 2 --m 2 --n 1
    ndep chaincond redundant --k 3 --params 'g,g^2,g^3,g^4'
    ndep suite --seed 20240917

Exit status: 0 when every check passes, 1 on a failed check or a computation
error, 2 on a usage error. Reports are JSON on stdout; errors carry a typed
\"error\" payload.";

#[derive(Debug, Parser)]
#[command(name = "ndep", version, about = "Reports for Moore-matrix isomorphisms, valuations and finite n-dependence", after_long_help = GRAMMAR)]
pub struct Cli {
    /// Print a table instead of JSON
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    /// Characteristic
    #[arg(long, default_value_t = 2)]
    pub p: u64,
    /// Extension degree of the coefficient field
    #[arg(long, default_value_t = 1)]
    pub k: usize,
}

#[derive(Debug, Clone, Args)]
pub struct SeriesArgs {
    /// Exponent denominators up to p^cap
    #[arg(long)]
    pub cap: Option<u32>,
    /// Absolute precision for series literals without O(t^e)
    #[arg(long)]
    pub prec: Option<i64>,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Field tables: generator, Frobenius, trace and Artin-Schreier roots
    Field {
        #[command(flatten)]
        field: FieldArgs,
        /// Elements to tabulate, comma-separated
        #[arg(long)]
        elems: Option<String>,
    },
    /// Moore matrix and F_p-independence of a tuple
    Moore {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long)]
        c: String,
    },
    /// Explicit isomorphism G_a(K) -> (K, +)
    Iso {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long)]
        a: String,
    },
    #[command(subcommand)]
    Valo(ValoCmd),
    #[command(subcommand)]
    Shatter(ShatterCmd),
    #[command(subcommand)]
    Opg(OpgCmd),
    #[command(subcommand)]
    Chaincond(ChainCmd),
    /// Run the acceptance battery
    Suite {
        #[arg(long)]
        seed: u64,
        /// Run only these criteria
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
        /// Include wall-clock times (makes the report machine dependent)
        #[arg(long)]
        timings: bool,
    },
}

/// Valuation reports over series fields
#[derive(Debug, Subcommand)]
pub enum ValoCmd {
    /// val(alpha): direct computation against the closed form
    Alpha {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long)]
        a: String,
    },
    /// Valuations of f_a^{-1}(y)
    Preimage {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        y: String,
    },
    /// Fit rho' = c(t^p - t) and check it pointwise
    Rho {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long)]
        a: String,
    },
    /// Small-valuation preimage and Artin-Schreier root in the maximal ideal
    Pipeline {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        u: String,
    },
    /// Grid of b_{j,l} and the reversed-lex law for their products
    Bgrid {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        y: String,
        /// Spacing exponent; defaults to the least g with n < p^g
        #[arg(long)]
        gap: Option<u32>,
        #[arg(long, value_enum, default_value_t = ScheduleArg::RowMajor)]
        schedule: ScheduleArg,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ScheduleArg {
    RowMajor,
    Interleaved,
}

/// Finite shattering, Ramsey numbers and the bilinear encoder
#[derive(Debug, Subcommand)]
pub enum ShatterCmd {
    /// Does the relation shatter a grid?
    Decide {
        /// Relation as JSON or as the plain-text grid format
        #[arg(long)]
        input: PathBuf,
        /// Grid, one comma list per part separated by ';', e.g. '0,1;2,3'
        #[arg(long)]
        grid: String,
    },
    /// Largest shattered d x ... x d grid
    Max {
        #[arg(long)]
        input: PathBuf,
        /// Per-part cap on d, comma-separated
        #[arg(long)]
        caps: String,
    },
    /// Relation R(f_1(y_s, y_t), ...) over Z/m with y_1 as witness
    Compose {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum)]
        base: BaseArg,
        /// Inner functions, e.g. 'add@1:2,mul@2:3'
        #[arg(long)]
        funcs: String,
        /// Cap for the max-grid search
        #[arg(long, default_value_t = 3)]
        cap: usize,
    },
    /// Encode a random d x d matrix as values of a bilinear form
    Bilinear {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum)]
        form: FormArg,
        /// Dimension m for identity, h for symplectic (m = 2h)
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        seed: u64,
        /// Also run the shattering demo when d^2 <= q
        #[arg(long)]
        demo: bool,
    },
    /// Partite Ramsey number R(l, m, n)
    Ramsey {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Search-node budget
        #[arg(long, default_value_t = 1 << 24)]
        budget: u64,
    },
    /// Edge and non-edge with equal binary type
    Blindpair {
        /// 3-partite hypergraph JSON
        #[arg(long)]
        input: PathBuf,
        /// JSON list of {"size", "pairs"} relations
        #[arg(long)]
        relations: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BaseArg {
    Eq,
    Ne,
    Le,
    Lt,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormArg {
    Identity,
    Symplectic,
}

/// Ordered partite hypergraphs
#[derive(Debug, Subcommand)]
pub enum OpgCmd {
    /// Random hypergraph with the given part sizes
    Gen {
        #[arg(long)]
        sizes: String,
        /// Edge density as a fraction
        #[arg(long, default_value = "1/2")]
        density: String,
        #[arg(long)]
        seed: u64,
    },
    /// Extension axioms up to k demanded links
    Check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Least induced copy of a pattern
    Copy {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
        /// Half-open ranges per part, e.g. '0-4,2-8,0-3'; default whole parts
        #[arg(long)]
        boxes: Option<String>,
    },
    /// Free amalgam of {"a", "b", "c", "into_a", "into_b"}
    Amalgamate {
        #[arg(long)]
        input: PathBuf,
    },
}

/// Chain conditions for families of subgroups
#[derive(Debug, Subcommand)]
pub enum ChainCmd {
    /// Least redundant index of a parameter array
    Redundant {
        #[command(flatten)]
        field: FieldArgs,
        /// Rows of parameters separated by ';', entries by ','
        #[arg(long)]
        params: String,
        /// 'wp', 'wp^e' or 'fixed:x|y|...'; repeatable
        #[arg(long = "family", default_value = "wp")]
        families: Vec<String>,
    },
    /// Least width at which sampled arrays always have a redundant index
    Threshold {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        max_d: usize,
        #[arg(long = "family", default_value = "wp")]
        families: Vec<String>,
    },
}
