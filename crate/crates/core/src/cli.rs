//! Command-line front end. Every command prints one JSON document.

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::scalar::parse_rational;
use crate::algebra::{taylor_matrix_rank, Gaussian, HermitianSeries, Rational, TruncatedGerm};
use crate::decider::{decide_relatives, parse_form, SpaceForm};
use crate::error::{Error, Result};
use crate::expansion::{embedding_dimension, expand_fubini_power};
use crate::search::{
    search_isometry, verify_witness_exact, Candidate, SearchOptions, SearchProblem,
};
use crate::signature::signature_reduce;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "relatives",
    version,
    about = "Decide whether two complex space forms are relatives"
)]
struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide a pair of space forms, e.g. `--form1 "FS(2, 1)" --form2 "CE(3, 0)"`.
    Decide {
        #[arg(long, value_parser = parse_form_arg)]
        form1: SpaceForm,
        #[arg(long, value_parser = parse_form_arg)]
        form2: SpaceForm,
    },
    /// Expand (1 + b |z|^2)^r - 1 in n variables.
    Expand {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_rational_arg)]
        b: Rational,
        #[arg(long)]
        r: u32,
    },
    /// Signed sum-of-squares reduction of a Hermitian series read from JSON.
    Reduce {
        #[arg(long)]
        input: PathBuf,
    },
    /// Taylor rank of a family of germs read from JSON.
    Rank {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        degree: u32,
    },
    /// Numeric least-squares search for a common curve.
    Search {
        #[arg(long, value_parser = parse_form_arg)]
        form1: SpaceForm,
        #[arg(long, value_parser = parse_form_arg)]
        form2: SpaceForm,
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        cap: Option<u32>,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long, default_value_t = 200)]
        max_iters: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Exact verification of a candidate curve pair read from JSON.
    Verify {
        #[arg(long, value_parser = parse_form_arg)]
        form1: SpaceForm,
        #[arg(long, value_parser = parse_form_arg)]
        form2: SpaceForm,
        #[arg(long)]
        witness: PathBuf,
        #[arg(long)]
        degree: Option<u32>,
    },
}

fn parse_form_arg(s: &str) -> std::result::Result<SpaceForm, String> {
    parse_form(s).map_err(|e| e.to_string())
}

fn parse_rational_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Exit code, standard output and standard error of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn render<T: Serialize>(value: &T, pretty: bool) -> String {
    let text = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    };
    text.expect("serializable") + "\n"
}

fn read_json(path: &PathBuf) -> Result<Value> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Consistency(_) => EXIT_INTERNAL,
        _ => EXIT_VALIDATION,
    }
}

/// Germs as a bare array or under a `germs` key.
fn germ_list(v: Value) -> Result<Vec<TruncatedGerm<Gaussian>>> {
    let list = match v {
        Value::Object(mut map) if map.contains_key("germs") => map.remove("germs").unwrap(),
        other => other,
    };
    Ok(serde_json::from_value(list)?)
}

fn execute(cmd: Command) -> Result<Value> {
    Ok(match cmd {
        Command::Decide { form1, form2 } => {
            serde_json::to_value(decide_relatives(&form1, &form2)?)?
        }
        Command::Expand { n, b, r } => {
            let exp = expand_fubini_power(n, &b, r)?;
            let mut v = serde_json::to_value(&exp)?;
            v["dimension"] = json!(embedding_dimension(n as u64, r.into()).to_string());
            v
        }
        Command::Reduce { input } => {
            let h: HermitianSeries<Gaussian> = serde_json::from_value(read_json(&input)?)?;
            serde_json::to_value(signature_reduce(&h)?)?
        }
        Command::Rank { input, degree } => {
            let germs = germ_list(read_json(&input)?)?;
            serde_json::to_value(taylor_matrix_rank(&germs, degree)?)?
        }
        Command::Search {
            form1,
            form2,
            degree,
            cap,
            restarts,
            max_iters,
            seed,
            tol,
        } => {
            if restarts == 0 || max_iters == 0 || tol.is_nan() || tol <= 0.0 {
                return Err(Error::Domain(
                    "restarts, max-iters and tol must be positive".into(),
                ));
            }
            let mut p = SearchProblem::new(form1, form2, degree)?;
            if let Some(c) = cap {
                p = p.with_cap(c)?;
            }
            let opts = SearchOptions {
                restarts,
                max_iters,
                seed,
                tol,
            };
            serde_json::to_value(search_isometry(&p, &opts)?)?
        }
        Command::Verify {
            form1,
            form2,
            witness,
            degree,
        } => {
            let raw = read_json(&witness)?;
            let c = Candidate::<Gaussian>::from_json_exact(&raw)?;
            let d = match degree {
                Some(d) => d,
                None => {
                    c.h.germs
                        .iter()
                        .chain(&c.k.germs)
                        .map(|g| g.max_degree())
                        .max()
                        .ok_or_else(|| Error::Domain("witness has no curves".into()))?
                }
            };
            let p = SearchProblem::new(form1, form2, d)?;
            let check = verify_witness_exact(&c, &p)?;
            let mut v = serde_json::to_value(&check)?;
            v["problem"] = serde_json::to_value(&p)?;
            v["evidence_only"] = json!(false);
            v
        }
    })
}

/// Runs one invocation; `argv` excludes the program name.
pub fn run<I, S>(argv: I) -> CliOutput
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args = std::iter::once("relatives".into()).chain(argv.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return CliOutput {
                    code: EXIT_OK,
                    stdout: e.to_string(),
                    stderr: String::new(),
                };
            }
            return CliOutput {
                code: EXIT_VALIDATION,
                stdout: String::new(),
                stderr: render(&json!({ "error": e.to_string().trim_end() }), false),
            };
        }
    };
    match execute(cli.command) {
        Ok(v) => CliOutput {
            code: EXIT_OK,
            stdout: render(&v, cli.pretty),
            stderr: String::new(),
        },
        Err(e) => CliOutput {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: render(&json!({ "error": e.to_string() }), false),
        },
    }
}
