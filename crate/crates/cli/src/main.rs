//! `pcpcheck`: consistency checks for polycyclic group presentations and
//! nilpotent algebra presentations.
//!
//! Exit codes: 0 success or consistent, 1 inconsistent, 2 input error,
//! 3 budget or cap exceeded.

mod render;

use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pcp_core::algebra::{check_algebra_consistency, AlgebraCheckOptions, AlgebraError};
use pcp_core::collector::{CollectError, Collector};
use pcp_core::group_consistency::{check_consistency, CheckOptions, ConsistencyError};
use pcp_core::oracle::{
    verify_algebra_axioms, verify_group_axioms, OracleError, DEFAULT_ALGEBRA_CAP, DEFAULT_GROUP_CAP,
};
use pcp_core::presentation::GroupPresentation;
use pcp_core::syntax::{self, DocumentKind};
use pcp_core::{AlgebraPresentation, Error, Mode, DEFAULT_BUDGET};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "pcpcheck",
    version,
    about = "Check polycyclic and nilpotent algebra presentations"
)]
struct Cli {
    /// Presentation file; standard input when omitted.
    #[arg(long = "in", global = true, value_name = "FILE")]
    input: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Full)]
    mode: ModeArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Maximum number of primitive rewriting steps per collection.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Stop at the first failing test equation.
    #[arg(long, global = true)]
    fail_fast: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the consistency test equations.
    Check,
    /// Collect a word such as g3*g2^-1*g1 to its normal form.
    Collect { word: String },
    /// Print the derived relations for inverses of generators.
    Derive,
    /// Print the least weight function.
    Weights,
    /// Brute-force check of the group or algebra axioms.
    Oracle,
    /// Normalize an algebra element such as 2*a1*a2 + a3.
    Normalize { expr: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Full,
    Nilpotent,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

const EXIT_INCONSISTENT: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_LIMIT: u8 = 3;

enum Loaded {
    Group(GroupPresentation),
    Algebra(AlgebraPresentation),
}

struct Outcome {
    text: String,
    json: Value,
    ok: bool,
}

fn exit_code(e: &Error) -> u8 {
    let limit = |c: &CollectError| matches!(c, CollectError::BudgetExceeded { .. });
    match e {
        Error::Collect(c) => {
            if limit(c) {
                EXIT_LIMIT
            } else {
                EXIT_INPUT
            }
        }
        Error::Consistency(ConsistencyError::Collect(c)) if limit(c) => EXIT_LIMIT,
        Error::Oracle(OracleError::CapExceeded { .. }) => EXIT_LIMIT,
        Error::Oracle(OracleError::Collect(c)) if limit(c) => EXIT_LIMIT,
        _ => EXIT_INPUT,
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, String> {
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| format!("stdin: {e}"))?;
            Ok(s)
        }
    }
}

fn load(text: &str, budget: u64) -> Result<Loaded, Error> {
    let doc = syntax::parse(text)?;
    Ok(match doc.kind {
        DocumentKind::Group => {
            let p = GroupPresentation::validate(doc.to_raw_group()?)?;
            let derived = p.derive_inverse_relations(budget)?;
            Loaded::Group(p.with_derived(derived))
        }
        DocumentKind::Algebra => {
            Loaded::Algebra(AlgebraPresentation::validate(doc.to_raw_algebra()?)?)
        }
    })
}

fn wrong_kind(what: &str) -> Error {
    Error::Syntax(syntax::SyntaxError::Syntax {
        line: 1,
        column: 1,
        message: what.to_string(),
    })
}

fn run(cli: &Cli, loaded: Loaded) -> Result<Outcome, Error> {
    let mode = match cli.mode {
        ModeArg::Full => Mode::Full,
        ModeArg::Nilpotent => Mode::NilpotentFiltered,
    };
    match (&cli.command, loaded) {
        (Command::Check, Loaded::Group(p)) => {
            let options = CheckOptions {
                mode,
                budget: cli.budget,
                fail_fast: cli.fail_fast,
                excluded: Vec::new(),
            };
            let report = check_consistency(&p, &options)?;
            Ok(Outcome {
                text: render::group_report_text(&report),
                json: render::group_report_json(&report),
                ok: report.is_consistent(),
            })
        }
        (Command::Check, Loaded::Algebra(p)) => {
            let options = AlgebraCheckOptions {
                fail_fast: cli.fail_fast,
                excluded: Vec::new(),
            };
            let report = check_algebra_consistency(&p, &options)?;
            Ok(Outcome {
                text: render::algebra_report_text(&report),
                json: render::algebra_report_json(&report),
                ok: report.is_consistent(),
            })
        }
        (Command::Collect { word }, Loaded::Group(p)) => {
            let w = syntax::parse_word(word, p.generator_count())?;
            let collector = Collector::new(&p)?;
            let (nf, trace) = collector.collect_traced(&w, cli.budget)?;
            Ok(Outcome {
                text: format!("{nf}\n"),
                json: json!({
                    "schema": render::SCHEMA,
                    "word": w.to_string(),
                    "normal_form": nf.to_string(),
                    "exponents": nf.exponents().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "steps": trace.primitive_steps().to_string(),
                }),
                ok: true,
            })
        }
        (Command::Derive, Loaded::Group(p)) => {
            let lines = render::derived_lines(&p);
            let mut text = lines.join("\n");
            if !text.is_empty() {
                text.push('\n');
            }
            Ok(Outcome {
                text,
                json: json!({ "schema": render::SCHEMA, "relations": lines }),
                ok: true,
            })
        }
        (Command::Weights, Loaded::Group(p)) => {
            let w = p.compute_weights()?;
            Ok(Outcome {
                text: render::weights_text(&w),
                json: render::weights_json(&w),
                ok: true,
            })
        }
        (Command::Weights, Loaded::Algebra(p)) => {
            let w = p.compute_weights()?;
            Ok(Outcome {
                text: render::weights_text(&w),
                json: render::weights_json(&w),
                ok: true,
            })
        }
        (Command::Oracle, Loaded::Group(p)) => {
            let r = verify_group_axioms(&p, DEFAULT_GROUP_CAP, cli.budget)?;
            Ok(Outcome {
                text: render::group_oracle_text(&r),
                json: render::group_oracle_json(&r),
                ok: r.verdict,
            })
        }
        (Command::Oracle, Loaded::Algebra(p)) => {
            let r = verify_algebra_axioms(&p, DEFAULT_ALGEBRA_CAP)?;
            Ok(Outcome {
                text: render::algebra_oracle_text(&r),
                json: render::algebra_oracle_json(&r),
                ok: r.verdict,
            })
        }
        (Command::Normalize { expr }, Loaded::Algebra(p)) => {
            let e = syntax::parse_element(expr, p.generator_count(), p.ring())?;
            let v = p.normalize(&e).map_err(AlgebraError::from)?;
            Ok(Outcome {
                text: format!("{v}\n"),
                json: json!({
                    "schema": render::SCHEMA,
                    "expression": e.to_string(),
                    "normal_form": v.to_string(),
                    "coefficients": v.coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                }),
                ok: true,
            })
        }
        (Command::Collect { .. } | Command::Derive, Loaded::Algebra(_)) => {
            Err(wrong_kind("this command needs a group presentation"))
        }
        (Command::Normalize { .. }, Loaded::Group(_)) => {
            Err(wrong_kind("normalize needs an algebra presentation"))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let text = match read_input(&cli.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    let result = load(&text, cli.budget).and_then(|loaded| run(&cli, loaded));
    match result {
        Ok(outcome) => {
            match cli.format {
                Format::Text => print!("{}", outcome.text),
                Format::Json => println!("{}", outcome.json),
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_INCONSISTENT)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
