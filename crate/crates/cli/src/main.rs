//! `elemop`: command-line front end over the shared JSON formats.
//!
//! Exit status: 0 on success, 1 when a checked property fails (sweep
//! violation, inconsistent criterion, failed example fact), 2 on usage or
//! parse errors. Diagnostics go to standard error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;

use elemop::elemop::{
    fong_sourour_check, thm21_criterion, thm22_check_operator, thm23_check, ElementaryOperator,
    Theorem,
};
use elemop::lab::{
    example_3_1, example_3_2, search_converse_failures, sweep_fong_sourour_exhaustive, sweep_thm,
    sweep_thm21_exhaustive, Example32Params, GeneratorConfig, SearchTarget,
};
use elemop::linalg::{is_nilpotent, Matrix};
use elemop::Error;

#[derive(Parser)]
#[command(name = "elemop", version, about = "Exact nilpotency analysis of elementary operators")]
struct Cli {
    /// Write the JSON result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoremArg {
    #[value(name = "1.1")]
    FongSourour,
    #[value(name = "2.1")]
    Multiplication,
    #[value(name = "2.2")]
    CommutingFamilies,
    #[value(name = "2.3")]
    ScalarShifts,
}

impl From<TheoremArg> for Theorem {
    fn from(t: TheoremArg) -> Self {
        match t {
            TheoremArg::FongSourour => Theorem::FongSourour,
            TheoremArg::Multiplication => Theorem::Multiplication,
            TheoremArg::CommutingFamilies => Theorem::CommutingFamilies,
            TheoremArg::ScalarShifts => Theorem::ScalarShifts,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    #[value(name = "2.1-ext")]
    MultiplicationExtension,
    #[value(name = "2.2")]
    CommutingFamilies,
    #[value(name = "2.3")]
    ScalarShifts,
}

impl From<TargetArg> for SearchTarget {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::MultiplicationExtension => SearchTarget::MultiplicationExtension,
            TargetArg::CommutingFamilies => SearchTarget::CommutingFamilies,
            TargetArg::ScalarShifts => SearchTarget::ScalarShifts,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ExampleArg {
    #[value(name = "3.1")]
    NonCommuting,
    #[value(name = "3.2")]
    Parametric,
}

/// Inputs are file paths, or inline JSON when the argument starts with `{`.
#[derive(Subcommand)]
enum Command {
    /// Apply an operator to a matrix.
    Apply {
        #[arg(long)]
        op: String,
        #[arg(long)]
        x: String,
    },
    /// Print the superoperator matrix of an operator.
    Superop {
        #[arg(long)]
        op: String,
    },
    /// Nilpotency report for a matrix or an operator.
    Nilpotent {
        #[arg(long, conflicts_with = "op", required_unless_present = "op")]
        matrix: Option<String>,
        #[arg(long)]
        op: Option<String>,
    },
    /// Evaluate a nilpotency criterion. 2.2 takes --op; the others take --a and --b
    /// (S and T for 1.1).
    Check {
        #[arg(long, value_enum)]
        theorem: TheoremArg,
        #[arg(long, alias = "s")]
        a: Option<String>,
        #[arg(long, alias = "t")]
        b: Option<String>,
        #[arg(long)]
        op: Option<String>,
    },
    /// Reproduce a worked example.
    Examples {
        #[arg(long, value_enum)]
        which: ExampleArg,
        /// Comma-separated exact scalars a,b,c,d,k (3.2 only).
        #[arg(long)]
        params: Option<String>,
    },
    /// Criterion sweep. 2.1 and 1.1 at dim 2 without --trials enumerate all
    /// pairs with entries in {-1, 0, 1}.
    Sweep {
        #[arg(long, value_enum)]
        theorem: TheoremArg,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        bound: u32,
        #[arg(long)]
        gaussian: bool,
    },
    /// Search for converse failures of a criterion.
    Search {
        #[arg(long, value_enum)]
        target: TargetArg,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        bound: u32,
        #[arg(long)]
        gaussian: bool,
    },
}

const DEFAULT_TRIALS: u64 = 200;

enum Failure {
    /// A checked property failed.
    Check(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Integrity(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

struct Output {
    json: String,
    /// Property failure to report after the document is written.
    failed: Option<String>,
}

fn output<T: Serialize>(value: &T, failed: Option<String>) -> Result<Output, Failure> {
    let json = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::Usage(format!("serialization failed: {e}")))?;
    Ok(Output { json, failed })
}

fn load<T: DeserializeOwned>(arg: &str, what: &str) -> Result<T, Failure> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Failure::Usage(format!("cannot read {what} {arg:?}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("invalid {what} JSON: {e}")))
}

fn required<'a>(arg: &'a Option<String>, flag: &str, theorem: &str) -> Result<&'a str, Failure> {
    arg.as_deref()
        .ok_or_else(|| Failure::Usage(format!("check --theorem {theorem} requires {flag}")))
}

fn generator_config(dim: usize, seed: u64, bound: u32, gaussian: bool) -> GeneratorConfig {
    GeneratorConfig {
        dim,
        entry_bound: bound,
        seed,
        gaussian,
    }
}

fn run(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Apply { op, x } => {
            let op: ElementaryOperator = load(&op, "operator")?;
            let x: Matrix = load(&x, "matrix")?;
            output(&op.apply(&x)?, None)
        }
        Command::Superop { op } => {
            let op: ElementaryOperator = load(&op, "operator")?;
            output(&op.superoperator(), None)
        }
        Command::Nilpotent { matrix, op } => {
            let report = match (matrix, op) {
                (Some(m), _) => is_nilpotent(&load::<Matrix>(&m, "matrix")?)?,
                (None, Some(op)) => load::<ElementaryOperator>(&op, "operator")?.is_nilpotent()?,
                (None, None) => return Err(Failure::Usage("--matrix or --op is required".into())),
            };
            output(&report, None)
        }
        Command::Check { theorem, a, b, op } => {
            let theorem = Theorem::from(theorem);
            let label = theorem.label();
            let inconsistent = |ok: bool| {
                (!ok).then(|| format!("criterion {label}: hypotheses hold but the operator is not nilpotent"))
            };
            if theorem == Theorem::CommutingFamilies {
                let op: ElementaryOperator = load(required(&op, "--op", label)?, "operator")?;
                let r = thm22_check_operator(&op)?;
                return output(&r, inconsistent(r.consistent));
            }
            let a: Matrix = load(required(&a, "--a", label)?, "matrix")?;
            let b: Matrix = load(required(&b, "--b", label)?, "matrix")?;
            match theorem {
                Theorem::Multiplication => {
                    let r = thm21_criterion(&a, &b)?;
                    output(&r, inconsistent(r.consistent))
                }
                Theorem::ScalarShifts => {
                    let r = thm23_check(&a, &b)?;
                    output(&r, inconsistent(r.result.consistent))
                }
                Theorem::FongSourour => {
                    let r = fong_sourour_check(&a, &b)?;
                    output(&r, inconsistent(r.result.consistent))
                }
                Theorem::CommutingFamilies => unreachable!("handled above"),
            }
        }
        Command::Examples { which, params } => match which {
            ExampleArg::NonCommuting => {
                if params.is_some() {
                    return Err(Failure::Usage("--params only applies to example 3.2".into()));
                }
                output(&example_3_1()?, None)
            }
            ExampleArg::Parametric => {
                let params = match params {
                    Some(p) => p.parse::<Example32Params>()?,
                    None => Example32Params::default(),
                };
                output(&example_3_2(&params)?, None)
            }
        },
        Command::Sweep {
            theorem,
            dim,
            trials,
            seed,
            bound,
            gaussian,
        } => {
            let theorem = Theorem::from(theorem);
            let exhaustive = dim == 2
                && trials.is_none()
                && matches!(theorem, Theorem::Multiplication | Theorem::FongSourour);
            let report = if exhaustive {
                match theorem {
                    Theorem::Multiplication => sweep_thm21_exhaustive()?,
                    _ => sweep_fong_sourour_exhaustive()?,
                }
            } else {
                let config = generator_config(dim, seed, bound, gaussian);
                sweep_thm(theorem, &config, trials.unwrap_or(DEFAULT_TRIALS))?
            };
            let failed = (!report.passed())
                .then(|| format!("{} violation(s) in sweep of {}", report.violations.len(), theorem));
            output(&report, failed)
        }
        Command::Search {
            target,
            dim,
            trials,
            seed,
            bound,
            gaussian,
        } => {
            let config = generator_config(dim, seed, bound, gaussian);
            let report = search_converse_failures(target.into(), &config, trials)?;
            let failed = (!report.passed())
                .then(|| format!("{} violation(s) during search", report.violations.len()));
            output(&report, failed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out;
    match run(cli.command) {
        Ok(Output { json, failed }) => {
            let written = match &out {
                Some(path) => fs::write(path, format!("{json}\n")),
                None => {
                    println!("{json}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            match failed {
                Some(msg) => {
                    eprintln!("check failed: {msg}");
                    ExitCode::from(1)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
