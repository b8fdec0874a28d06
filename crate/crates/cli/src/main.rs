use std::path::PathBuf;
use std::process::ExitCode;

use branchforge_cli::{execute, exit, Command, Format, Oracle, RunConfig};
use branchforge_core::{Budget, SemigroupInput};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "branchforge",
    version,
    about = "Plane-branch semigroups, deformations and point counts"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Number of worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest admissible field size.
    #[arg(long, global = true)]
    max_q: Option<u32>,
    /// Largest admissible conductor.
    #[arg(long, global = true)]
    max_conductor: Option<u32>,
    /// Largest admissible delta for point counts.
    #[arg(long, global = true)]
    max_delta: Option<usize>,
}

#[derive(Args)]
struct SemigroupArg {
    /// Generators "4,6,13", a Puiseux tuple "(4; 6, 7)" or a JSON object.
    #[arg(long, value_name = "LITERAL")]
    semigroup: SemigroupInput,
}

#[derive(Subcommand)]
enum Sub {
    /// Gaps, conductor, gcd ladder and plane-branch validation.
    Semigroup {
        /// Comma-separated generators.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["puiseux", "semigroup"], required_unless_present_any = ["puiseux", "semigroup"])]
        gens: Option<Vec<i64>>,
        /// Puiseux characteristic "(β0; β1, …)".
        #[arg(long, conflicts_with = "semigroup")]
        puiseux: Option<String>,
        /// Any semigroup literal.
        #[arg(long, value_name = "LITERAL")]
        semigroup: Option<SemigroupInput>,
    },
    /// Monomial curve equations, projective closure and the point at infinity.
    Curve(SemigroupArg),
    /// Graded T1 basis and the equivariant miniversal family.
    Deform {
        #[command(flatten)]
        input: SemigroupArg,
        /// Also homogenize the family in the weighted projective closure.
        #[arg(long)]
        projective: bool,
    },
    /// Point counts of the Springer fiber over finite fields.
    Count {
        #[command(flatten)]
        input: SemigroupArg,
        /// Field sizes, e.g. 2,3,5,7.
        #[arg(long = "q", value_delimiter = ',', required = true)]
        qs: Vec<u32>,
        /// Include per-stratum counts.
        #[arg(long)]
        stratify: bool,
        /// Enumerator used for the counts.
        #[arg(long, value_enum, default_value_t = OracleArg::Bfs)]
        oracle: OracleArg,
    },
    /// Runs every check on the built-in corpus.
    Verify,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleArg {
    Bfs,
    Naive,
}

fn semigroup_input(
    gens: Option<Vec<i64>>,
    puiseux: Option<String>,
    literal: Option<SemigroupInput>,
) -> Result<SemigroupInput, String> {
    match (gens, puiseux, literal) {
        (Some(g), None, None) => Ok(SemigroupInput::Generators(g)),
        (None, Some(p), None) => {
            let text = p.trim();
            let wrapped = if text.starts_with('(') {
                text.to_string()
            } else {
                format!("({text})")
            };
            wrapped.parse::<SemigroupInput>().map_err(|e| e.to_string())
        }
        (None, None, Some(l)) => Ok(l),
        _ => Err("give exactly one of --gens, --puiseux, --semigroup".into()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let usage = |msg: String| {
        eprintln!("error[E_USAGE]: {msg}");
        ExitCode::from(exit::USAGE as u8)
    };

    let mut budget = match Budget::from_env() {
        Ok(b) => b,
        Err(e) => return usage(e.to_string()),
    };
    if let Some(q) = cli.max_q {
        budget.max_q = q;
    }
    if let Some(c) = cli.max_conductor {
        budget.max_conductor = c;
    }
    if let Some(d) = cli.max_delta {
        budget.max_delta = d;
    }

    let command = match cli.command {
        Sub::Semigroup {
            gens,
            puiseux,
            semigroup,
        } => match semigroup_input(gens, puiseux, semigroup) {
            Ok(input) => Command::Semigroup { input },
            Err(m) => return usage(m),
        },
        Sub::Curve(a) => Command::Curve { input: a.semigroup },
        Sub::Deform { input, projective } => Command::Deform {
            input: input.semigroup,
            projective,
        },
        Sub::Count {
            input,
            qs,
            stratify,
            oracle,
        } => Command::Count {
            input: input.semigroup,
            qs,
            stratify,
            oracle: match oracle {
                OracleArg::Bfs => Oracle::Bfs,
                OracleArg::Naive => Oracle::Naive,
            },
        },
        Sub::Verify => Command::Verify,
    };

    let config = RunConfig {
        command,
        budget,
        format: if cli.json { Format::Json } else { Format::Text },
        threads: cli.threads,
        out: cli.out,
    };
    ExitCode::from(execute(&config) as u8)
}
