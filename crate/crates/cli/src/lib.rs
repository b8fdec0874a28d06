//! Command-line pipeline over `branchforge-core`: each subcommand produces a
//! [`Report`] that renders as text or JSON.

pub mod commands;
pub mod report;
pub mod verify;

use std::path::PathBuf;
use std::time::Instant;

use branchforge_core::{Budget, Error, SemigroupInput};
use serde_json::{json, Value};

pub use report::{Report, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Oracle {
    /// Submodule search.
    Bfs,
    /// Exhaustive filter over all subspaces.
    Naive,
}

impl Oracle {
    pub fn name(self) -> &'static str {
        match self {
            Oracle::Bfs => "bfs",
            Oracle::Naive => "naive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Semigroup {
        input: SemigroupInput,
    },
    Curve {
        input: SemigroupInput,
    },
    Deform {
        input: SemigroupInput,
        projective: bool,
    },
    Count {
        input: SemigroupInput,
        qs: Vec<u32>,
        stratify: bool,
        oracle: Oracle,
    },
    Verify,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub budget: Budget,
    pub format: Format,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            budget: Budget::default(),
            format: Format::Text,
            threads: None,
            out: None,
        }
    }
}

pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFICATION: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const BUDGET: i32 = 3;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunError {
    Usage(String),
    Module(Error),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Module(e)
    }
}

impl RunError {
    pub fn code(&self) -> &'static str {
        match self {
            RunError::Usage(_) => "E_USAGE",
            RunError::Module(e) => e.code(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Usage(_) => exit::USAGE,
            RunError::Module(e) => match e {
                Error::BudgetExceeded { .. } => exit::BUDGET,
                Error::EmptyGenerators
                | Error::NonPositiveGenerator(_)
                | Error::NonCoprimeGenerators { .. }
                | Error::InvalidPuiseux(_)
                | Error::UnsupportedField(_)
                | Error::InsufficientFields { .. }
                | Error::Parse(_) => exit::USAGE,
                _ => exit::VERIFICATION,
            },
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"error": {"code": self.code(), "message": self.to_string()}})
    }
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Usage(m) => write!(f, "usage: {m}"),
            RunError::Module(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for RunError {}

fn budget_json(b: &Budget) -> Value {
    json!({
        "max_q": b.max_q,
        "max_conductor": b.max_conductor,
        "max_delta": b.max_delta,
        "max_semimodule_delta": b.max_semimodule_delta,
    })
}

fn input_json(input: &SemigroupInput) -> Value {
    serde_json::to_value(input).unwrap()
}

fn dispatch(config: &RunConfig) -> Result<Report, RunError> {
    let budget = &config.budget;
    let (mut report, input) = match &config.command {
        Command::Semigroup { input } => {
            let s = input.build()?;
            (
                commands::semigroup_report(&s),
                json!({"semigroup": input_json(input)}),
            )
        }
        Command::Curve { input } => {
            let s = input.build()?;
            (
                commands::curve_report(&s)?,
                json!({"semigroup": input_json(input)}),
            )
        }
        Command::Deform { input, projective } => {
            let s = input.build()?;
            (
                commands::deform_report(&s, *projective)?,
                json!({"semigroup": input_json(input), "projective": projective}),
            )
        }
        Command::Count {
            input,
            qs,
            stratify,
            oracle,
        } => {
            let mut sorted = qs.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != qs.len() {
                return Err(RunError::Usage("field sizes must be pairwise distinct".into()));
            }
            if qs.is_empty() {
                return Err(RunError::Usage("at least one field size is required".into()));
            }
            let s = input.build()?;
            (
                commands::count_report(&s, &sorted, *stratify, *oracle, budget)?,
                json!({
                    "semigroup": input_json(input),
                    "q": sorted,
                    "stratify": stratify,
                    "oracle": oracle.name(),
                    "budget": budget_json(budget),
                }),
            )
        }
        Command::Verify => (
            verify::verify_report(budget)?,
            json!({
                "corpus": verify::CORPUS.iter().map(|e| e.generators).collect::<Vec<_>>(),
                "budget": budget_json(budget),
            }),
        ),
    };
    report.input = input;
    Ok(report)
}

/// Runs one command, on a dedicated pool when a thread count is given.
pub fn run(config: &RunConfig) -> Result<Report, RunError> {
    let t0 = Instant::now();
    let mut report = match config.threads {
        Some(0) => return Err(RunError::Usage("thread count must be positive".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| RunError::Usage(e.to_string()))?
            .install(|| dispatch(config))?,
        None => dispatch(config)?,
    };
    report.timing.insert("total_ms".into(), commands::elapsed_ms(t0));
    Ok(report)
}

/// Runs, writes the rendered report to stdout or `out`, and returns the
/// process exit code.
pub fn execute(config: &RunConfig) -> i32 {
    let (rendered, code) = match run(config) {
        Ok(report) => {
            let code = if report.passed() {
                exit::OK
            } else {
                exit::VERIFICATION
            };
            let text = match config.format {
                Format::Json => report.render_json() + "\n",
                Format::Text => report.render_text(),
            };
            (text, code)
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            match config.format {
                Format::Json => (
                    serde_json::to_string_pretty(&e.to_json()).unwrap() + "\n",
                    e.exit_code(),
                ),
                Format::Text => return e.exit_code(),
            }
        }
    };
    match &config.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("error[E_IO]: cannot write {}: {e}", path.display());
                return exit::USAGE;
            }
        }
        None => print!("{rendered}"),
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(g: &[i64]) -> SemigroupInput {
        SemigroupInput::Generators(g.to_vec())
    }

    #[test]
    fn semigroup_command() {
        let r = run(&RunConfig::new(Command::Semigroup {
            input: gens(&[4, 6, 13]),
        }))
        .unwrap();
        assert_eq!(r.results["delta"], json!(8));
        assert_eq!(r.results["conductor"], json!(16));
        assert_eq!(r.results["gaps"].as_array().unwrap().len(), 8);
        assert!(r.passed());
    }

    #[test]
    fn deform_cusp_weights() {
        let r = run(&RunConfig::new(Command::Deform {
            input: gens(&[2, 3]),
            projective: false,
        }))
        .unwrap();
        let w: Vec<i64> = r.results["parameters"]
            .as_array()
            .unwrap()
            .iter()
            .map(|p| p["weight"].as_i64().unwrap())
            .collect();
        assert_eq!(w, vec![6, 4]);
    }

    #[test]
    fn count_exit_codes() {
        let count = |qs: Vec<u32>, budget: Budget| {
            let mut c = RunConfig::new(Command::Count {
                input: gens(&[2, 3]),
                qs,
                stratify: false,
                oracle: Oracle::Bfs,
            });
            c.budget = budget;
            run(&c)
        };
        assert_eq!(
            count(vec![2, 2], Budget::default()).unwrap_err().exit_code(),
            exit::USAGE
        );
        let small = Budget {
            max_q: 3,
            ..Budget::default()
        };
        assert_eq!(count(vec![2, 5], small).unwrap_err().exit_code(), exit::BUDGET);
        let r = count(vec![2, 3, 5], Budget::default()).unwrap();
        assert!(r.passed());
        assert_eq!(r.results["polynomial"], json!([1, 1]));
    }

    #[test]
    fn too_few_fields_skips_the_fit() {
        let r = run(&RunConfig::new(Command::Count {
            input: gens(&[3, 4]),
            qs: vec![2, 3],
            stratify: true,
            oracle: Oracle::Bfs,
        }))
        .unwrap();
        assert_eq!(r.verdicts["monic_of_degree_delta"], Verdict::Skipped);
        assert_eq!(r.verdicts["strata_are_powers_of_q"], Verdict::Pass);
        assert!(r.passed());
    }

    #[test]
    fn non_plane_branch_fails_validation() {
        let r = run(&RunConfig::new(Command::Semigroup {
            input: gens(&[3, 5, 7]),
        }))
        .unwrap();
        assert!(!r.passed());
        let e = run(&RunConfig::new(Command::Curve {
            input: gens(&[3, 5, 7]),
        }))
        .unwrap_err();
        assert_eq!(e.exit_code(), exit::VERIFICATION);
    }
}
