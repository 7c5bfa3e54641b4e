//! `princ-lab`: decide, certify and recheck idempotent pairs, comaximal
//! factorizations and principality across the ring families of `princ-core`.

pub mod commands;
pub mod expr;
pub mod recheck;
pub mod report;
pub mod rings;

use clap::{Args, Parser, Subcommand};

pub use commands::{CliError, CliResult};
use report::Report;
use rings::RingSpec;

#[derive(Debug, Parser)]
#[command(name = "princ-lab", version, about = "Idempotent pairs, comaximal factorizations and principal ideals")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Ring descriptor: Z, Z[sqrt(d)], Q (= Q[X]), D[X;S], pullback:Z, pullback:Z[sqrt(d)], limitring:Q, limitring:Z, B2.
    #[arg(long, global = true)]
    pub ring: Option<String>,
    /// Exponent monoid for Q[X;S]: p-div:P or mult:{a,b,...}.
    #[arg(long, global = true)]
    pub monoid: Option<String>,
    /// Use the group generated by the monoid.
    #[arg(long, global = true)]
    pub group: bool,
    /// Re-verify the emitted report with independent arithmetic.
    #[arg(long, global = true)]
    pub recheck: bool,
    /// Worker threads for batch commands.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Single-line JSON.
    #[arg(long, global = true)]
    pub compact: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Idempotent pairs (a, b) with a(1-a) in bR or b(1-b) in aR.
    #[command(subcommand)]
    Idem(IdemCmd),
    /// Ideals of quadratic orders.
    #[command(subcommand)]
    Ideal(IdealCmd),
    /// Complete comaximal factorizations.
    #[command(subcommand)]
    Comax(ComaxCmd),
    /// The pullback Z + YQ[Y]_(Y) and its quadratic analogues.
    #[command(subcommand)]
    Pullback(PullbackCmd),
    /// Monoid rings D[X;S] with S inside Q>=0.
    #[command(subcommand)]
    Mring(MringCmd),
    /// The direct limit of Q[x_n] with x_n = x_{n+1}^2 - x_{n+1}.
    #[command(subcommand)]
    Limitring(LimitCmd),
    /// Polynomial rings D[X] over seminormal-failing subrings of K[y].
    #[command(subcommand)]
    Polyext(PolyextCmd),
    /// The real 2-sphere coordinate ring Q[X0,X1,X2]/(X0^2+X1^2+X2^2-1).
    #[command(subcommand)]
    Sphere(SphereCmd),
    /// Recheck a saved report ('-' reads stdin).
    Recheck { file: String },
}

#[derive(Debug, Subcommand)]
pub enum IdemCmd {
    /// Decide whether (a, b) is an idempotent pair and certify it.
    Check {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Build an idempotent pair from a two-generated ideal.
    FromIdeal {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// The 2x2 idempotent matrix of a pair.
    Matrix {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum IdealCmd {
    /// Decide principality with a generator or a norm-search refutation.
    Principal {
        #[arg(required = true, allow_negative_numbers = true)]
        generators: Vec<String>,
    },
    /// Decide invertibility via I * conj(I) = (N(I)).
    Invertible {
        #[arg(required = true, allow_negative_numbers = true)]
        generators: Vec<String>,
    },
    /// Prime ideal factorization of a principal ideal.
    Factor {
        #[arg(allow_hyphen_values = true)]
        element: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum ComaxCmd {
    /// Enumerate complete comaximal factorizations.
    Factor {
        #[arg(required = true, allow_negative_numbers = true)]
        elements: Vec<String>,
    },
    /// Decide uniqueness of the complete comaximal factorization.
    Unique {
        #[arg(required = true, allow_negative_numbers = true)]
        elements: Vec<String>,
    },
    /// Search for an element with several complete comaximal factorizations.
    Hunt {
        #[arg(long, default_value = "100")]
        bound: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum PullbackCmd {
    /// Reduce an idempotent pair to a principal generator.
    Reduce {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// A divisibility chain z = d^k * c_k showing the ring is not a UFD.
    Nonufd {
        #[arg(long, default_value = "Y", allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value = "2", allow_hyphen_values = true)]
        d: String,
        #[arg(long, default_value_t = 5)]
        n: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum MringCmd {
    /// Split 1 - X^s into two comaximal non-units.
    Split {
        #[arg(long)]
        s: String,
        #[arg(long)]
        n: Option<String>,
    },
    /// Split 1 - X^s into m pairwise comaximal non-units.
    Chain {
        #[arg(long)]
        s: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: Option<String>,
    },
    /// Split X^t - b in a group ring over a field, given beta^p = b.
    Juett {
        #[arg(long)]
        t: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        p: String,
        #[arg(long)]
        beta: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum LimitCmd {
    /// m pairwise comaximal factors of x_0 with Bezout certificates.
    Chain {
        #[arg(long)]
        m: u32,
    },
    /// Lift an element to level n and optionally evaluate it.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        level: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum PolyextCmd {
    /// Check alpha, alpha^2, alpha^3 membership against the subring D.
    Witness {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// Excluded monomial degrees (default: the cusp, degree 1).
        #[arg(long, value_delimiter = ',')]
        exclude: Vec<usize>,
    },
    /// A non-principal idempotent pair in D[X].
    Counterexample {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, value_delimiter = ',')]
        exclude: Vec<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum SphereCmd {
    /// The tangent projector I - x x^T and its idempotence checks.
    Projector,
    /// Normal form of an element.
    Reduce {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
}

fn spec(g: &Global, default: &str) -> CliResult<RingSpec> {
    RingSpec::parse(g.ring.as_deref().unwrap_or(default), g.monoid.as_deref(), g.group).map_err(CliError::Input)
}

/// Run a command line; with `--recheck`, also re-verify the report after a
/// JSON round trip.
pub fn execute(cli: &Cli) -> CliResult<Report> {
    let report = run(cli)?;
    if cli.global.recheck && !matches!(cli.command, Command::Recheck { .. }) {
        let text = report.to_json(true);
        let parsed: Report = serde_json::from_str(&text).map_err(|e| CliError::Recheck(e.to_string()))?;
        recheck::recheck(&parsed)?;
    }
    Ok(report)
}

/// Execute a parsed command line.
pub fn run(cli: &Cli) -> CliResult<Report> {
    use commands as c;
    let g = &cli.global;
    match &cli.command {
        Command::Idem(cmd) => match cmd {
            IdemCmd::Check { a, b } => c::idem_dispatch(&spec(g, "Z")?, "check", a, b),
            IdemCmd::Matrix { a, b } => c::idem_dispatch(&spec(g, "Z")?, "matrix", a, b),
            IdemCmd::FromIdeal { a, b } => c::idem_from_ideal(&spec(g, "Z")?, a, b),
        },
        Command::Ideal(cmd) => {
            let s = spec(g, "Z[sqrt(-5)]")?;
            match cmd {
                IdealCmd::Principal { generators } => c::ideal_principal(&s, generators),
                IdealCmd::Invertible { generators } => c::ideal_invertible(&s, generators),
                IdealCmd::Factor { element } => c::ideal_factor(&s, element),
            }
        }
        Command::Comax(cmd) => {
            let s = spec(g, "Z[sqrt(-5)]")?;
            match cmd {
                ComaxCmd::Factor { elements } => c::comax_enumerate(&s, elements, g.jobs, false),
                ComaxCmd::Unique { elements } => c::comax_enumerate(&s, elements, g.jobs, true),
                ComaxCmd::Hunt { bound } => c::comax_hunt(&s, bound),
            }
        }
        Command::Pullback(cmd) => {
            let s = spec(g, "pullback:Z")?;
            match cmd {
                PullbackCmd::Reduce { a, b } => c::pullback_reduce(&s, a, b),
                PullbackCmd::Nonufd { z, d, n } => c::pullback_nonufd(&s, z, d, *n),
            }
        }
        Command::Mring(cmd) => {
            let monoid = g.monoid.as_deref().or(Some("p-div:2"));
            let s = RingSpec::parse(g.ring.as_deref().unwrap_or("Q[X;S]"), monoid, g.group).map_err(CliError::Input)?;
            match cmd {
                MringCmd::Split { s: e, n } => c::mring_split(&s, e, n.as_deref()),
                MringCmd::Chain { s: e, m, n } => c::mring_chain(&s, e, *m, n.as_deref()),
                MringCmd::Juett { t, b, p, beta } => c::mring_juett(&s, t, b, p, beta),
            }
        }
        Command::Limitring(cmd) => {
            let s = spec(g, "limitring:Q")?;
            match cmd {
                LimitCmd::Chain { m } => c::limitring_chain(&s, *m),
                LimitCmd::Eval { expr, level, at } => c::limitring_eval(&s, expr, *level, at.as_deref()),
            }
        }
        Command::Polyext(cmd) => match cmd {
            PolyextCmd::Witness { alpha, exclude } => c::polyext_witness(alpha, exclude),
            PolyextCmd::Counterexample { alpha, exclude } => c::polyext_counterexample(alpha, exclude),
        },
        Command::Sphere(cmd) => match cmd {
            SphereCmd::Projector => c::sphere_projector(),
            SphereCmd::Reduce { expr } => c::sphere_reduce(expr),
        },
        Command::Recheck { file } => {
            let text = if file == "-" {
                std::io::read_to_string(std::io::stdin())
            } else {
                std::fs::read_to_string(file)
            }
            .map_err(|e| CliError::Input(format!("{file}: {e}")))?;
            let r: Report = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{file}: {e}")))?;
            recheck::recheck(&r)?;
            let result = serde_json::json!({
                "command": r.command,
                "verdict": r.verdict,
                "negative": r.negative,
            });
            Ok(Report::new(&["recheck"], r.ring.clone(), "rechecked", false, result))
        }
    }
}
