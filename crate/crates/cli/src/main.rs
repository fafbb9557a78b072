//! `mfcat`: exact computations with matrix factorizations from JSON problem files.
//!
//! Exit status: 0 on success, 1 when a mathematical check fails, 2 on bad
//! input, 3 when the Groebner budget runs out.

mod commands;
mod problem;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use log::{debug, LevelFilter};
use mfcat::Budget;
use serde_json::{json, Value};

use commands::{Failure, Outcome};
use problem::{InputError, Problem};

#[derive(Parser, Debug)]
#[command(name = "mfcat", version, about = "Matrix factorizations, Ext and Hochschild invariants over Q")]
struct Cli {
    /// Maximum number of S-pairs per Groebner basis computation.
    #[arg(long, global = true, default_value_t = 200_000)]
    budget: u64,

    /// Also write a machine-readable report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,

    /// Log progress to standard error; repeat for more detail.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
enum Command {
    /// Check both curvature identities of every object.
    Verify(Input),
    /// Build a factorization from a module on the zero fibre and its resolution.
    Stabilize(Input),
    /// Ext between two objects on the affine space.
    Ext(Input),
    /// Ext computed over the cover of the problem file.
    CechExt(Input),
    /// Q-dimension of coker(p1), globally and at the origin.
    Coker(Input),
    /// The dual factorization.
    Dual(Input),
    /// External tensor product with the object described in task_args.right.
    Tensor(Input),
    /// Hochschild cohomology through polyvector fields.
    Hh(Input),
    /// Hochschild homology through differential forms.
    HhHomology(Input),
    /// Hochschild cohomology as self-Ext of the stabilized diagonal.
    HhDiagonal(Input),
    /// Compare the polyvector and diagonal routes.
    HhCompare(Input),
    /// Dimension-level Calabi-Yau symmetry of Ext.
    CyCheck(Input),
}

#[derive(clap::Args, Debug, Clone, PartialEq, Eq)]
struct Input {
    /// Problem file.
    #[arg(value_name = "PROBLEM")]
    problem: PathBuf,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Verify(_) => "verify",
            Command::Stabilize(_) => "stabilize",
            Command::Ext(_) => "ext",
            Command::CechExt(_) => "cech-ext",
            Command::Coker(_) => "coker",
            Command::Dual(_) => "dual",
            Command::Tensor(_) => "tensor",
            Command::Hh(_) => "hh",
            Command::HhHomology(_) => "hh-homology",
            Command::HhDiagonal(_) => "hh-diagonal",
            Command::HhCompare(_) => "hh-compare",
            Command::CyCheck(_) => "cy-check",
        }
    }

    fn problem(&self) -> &Path {
        match self {
            Command::Verify(i)
            | Command::Stabilize(i)
            | Command::Ext(i)
            | Command::CechExt(i)
            | Command::Coker(i)
            | Command::Dual(i)
            | Command::Tensor(i)
            | Command::Hh(i)
            | Command::HhHomology(i)
            | Command::HhDiagonal(i)
            | Command::HhCompare(i)
            | Command::CyCheck(i) => &i.problem,
        }
    }

    fn run(&self, p: &Problem, budget: &Budget) -> Outcome {
        match self {
            Command::Verify(_) => commands::verify(p, budget),
            Command::Stabilize(_) => commands::stabilize_cmd(p, budget),
            Command::Ext(_) => commands::ext_cmd(p, budget),
            Command::CechExt(_) => commands::cech_ext_cmd(p, budget),
            Command::Coker(_) => commands::coker_cmd(p, budget),
            Command::Dual(_) => commands::dual_cmd(p, budget),
            Command::Tensor(_) => commands::tensor_cmd(p, budget),
            Command::Hh(_) => commands::hh_cmd(p, budget),
            Command::HhHomology(_) => commands::hh_homology_cmd(p, budget),
            Command::HhDiagonal(_) => commands::hh_diagonal_cmd(p, budget),
            Command::HhCompare(_) => commands::hh_compare_cmd(p, budget),
            Command::CyCheck(_) => commands::cy_check_cmd(p, budget),
        }
    }
}

fn load(path: &Path) -> Result<Problem, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError { path: "$".into(), msg: format!("cannot read {}: {e}", path.display()) })?;
    Ok(Problem::parse(&text)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => LevelFilter::Warn,
        1 => LevelFilter::Info,
        2 => LevelFilter::Debug,
        _ => LevelFilter::Trace,
    };
    env_logger::Builder::new().filter_level(level).format_timestamp(None).init();

    let path = cli.command.problem();
    debug!("running {} on {}", cli.command.name(), path.display());

    let budget = Budget::new(cli.budget);
    let outcome = load(path).and_then(|p| cli.command.run(&p, &budget));
    let (code, doc) = match &outcome {
        Ok(r) => {
            print!("{}", r.text);
            let code = if r.pass { 0 } else { 1 };
            let status = if r.pass { "pass" } else { "fail" };
            (
                code,
                json!({ "command": cli.command.name(), "status": status, "exit_code": code, "result": Value::Object(r.payload.clone()) }),
            )
        }
        Err(f) => {
            eprintln!("error: {f}");
            let mut error = json!({ "kind": f.kind(), "message": f.to_string() });
            if let Failure::Input(e) = f {
                error["path"] = json!(e.path);
            }
            (
                f.exit_code(),
                json!({ "command": cli.command.name(), "status": "error", "exit_code": f.exit_code(), "error": error }),
            )
        }
    };
    if let Some(out) = &cli.json {
        let mut text = serde_json::to_string_pretty(&doc).expect("reports serialize");
        text.push('\n');
        if let Err(e) = std::fs::write(out, text) {
            eprintln!("error: cannot write {}: {e}", out.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code)
}
