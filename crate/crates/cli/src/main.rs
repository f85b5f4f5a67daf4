//! Command-line front end.
//!
//! Exit codes: 0 = success / all checked properties hold, 2 = a
//! checked property is violated (the counterexample is in the emitted
//! JSON), 3 = a resource cap or an unsupported configuration stopped
//! the run, 4 = invalid input.

mod report;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use report::*;
use serde::Serialize;
use std::path::PathBuf;
use std::sync::Arc;
use tauseq_core::algebra::build_path_algebra;
use tauseq_core::ar::{g_vector, is_tau_rigid};
use tauseq_core::config::Caps;
use tauseq_core::error::{Error, Result};
use tauseq_core::quiver::parse_quiver_json;
use tauseq_core::sequences::{enumerate_complete, Flavor};
use tauseq_core::universe::{build_universe, BuiltUniverse};
use tauseq_core::verify::{verify_all, verify_statement, StatementName, StatementStatus, VerifyOptions};

#[derive(Parser)]
#[command(
    name = "tauseq",
    version,
    about = "Exact computations in tau-tilting theory over quivers with relations"
)]
struct Cli {
    /// Quiver-with-relations JSON file.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Per-vertex dimension bound override, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    dim_bound: Option<Vec<usize>>,
    /// Cap on enumerated submodule subspaces.
    #[arg(long, global = true)]
    max_subspaces: Option<usize>,
    /// Cap on hom-space walks inside combinatorial searches.
    #[arg(long, global = true)]
    hom_budget: Option<usize>,
    /// Negate every stability weight before the semistable test.
    #[arg(long, global = true)]
    negate_theta: bool,
    /// Worker threads for indecomposable enumeration.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Seed for randomized splitting attempts.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the algebra and run its structural invariant checks.
    Validate,
    /// Enumerate the indecomposable-module universe.
    Indecs,
    /// List the tau-rigid indecomposables with their g-vectors.
    TauRigids,
    /// Enumerate all complete sequences of one flavor.
    Sequences {
        /// One of: plain, signed, brick.
        #[arg(long)]
        flavor: String,
    },
    /// Check one named statement, or all of them.
    Verify {
        /// One of: nohom, interp, equiv, linindep, main, cor-main,
        /// cor-wide, all.
        #[arg(long, default_value = "all")]
        statement: String,
    },
    /// Consolidated report over every statement and flavor.
    Report,
}

#[derive(Serialize)]
struct ValidateJson {
    algebra: String,
    field: tauseq_core::field::FieldSpec,
    dimension: usize,
    simples: usize,
    status: String,
}

#[derive(Serialize)]
struct IndecsJson {
    algebra: String,
    universe: UniverseJson,
    modules: Vec<ModuleJson>,
}

#[derive(Serialize)]
struct RigidEntryJson {
    g_vector: Vec<i64>,
    module: ModuleJson,
}

#[derive(Serialize)]
struct TauRigidsJson {
    algebra: String,
    universe: UniverseJson,
    modules: Vec<RigidEntryJson>,
}

#[derive(Serialize)]
struct SequencesJson {
    algebra: String,
    flavor: String,
    count: usize,
    sequences: Vec<Vec<ModuleJson>>,
}

#[derive(Serialize)]
struct VerifyJson {
    algebra: String,
    universe: UniverseJson,
    statements: Vec<StatementDetailJson>,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 4,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_) | Error::Io(_) | Error::Json(_) => 4,
        Error::CapExceeded { .. } | Error::Unsupported(_) => 3,
        Error::InvariantViolation(_) => 2,
    }
}

fn emit(out: &Option<PathBuf>, value: &impl Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<i32> {
    let input = cli
        .input
        .as_ref()
        .ok_or_else(|| Error::invalid("--input is required"))?;
    let text = std::fs::read_to_string(input)?;
    let resolved = parse_quiver_json(&text)?.resolve()?;
    let algebra = Arc::new(build_path_algebra(&resolved)?);

    let mut caps = Caps::default();
    if let Some(v) = cli.max_subspaces {
        caps.max_subspaces = v;
    }
    if let Some(v) = cli.hom_budget {
        caps.hom_budget = v;
    }
    if let Some(v) = cli.seed {
        caps.seed = v;
    }
    let opts = VerifyOptions {
        negate_theta: cli.negate_theta,
    };

    let universe_of = || -> Result<BuiltUniverse> {
        build_universe(&algebra, cli.dim_bound.as_deref(), &caps, cli.jobs)
    };

    match &cli.cmd {
        Cmd::Validate => {
            emit(
                &cli.out,
                &ValidateJson {
                    algebra: algebra.name.clone(),
                    field: algebra.field,
                    dimension: algebra.dim,
                    simples: algebra.n(),
                    status: "ok".into(),
                },
            )?;
            Ok(0)
        }
        Cmd::Indecs => {
            let built = universe_of()?;
            emit(
                &cli.out,
                &IndecsJson {
                    algebra: algebra.name.clone(),
                    universe: UniverseJson::from_built(&built),
                    modules: built
                        .level
                        .universe
                        .iter()
                        .map(ModuleJson::from_module)
                        .collect(),
                },
            )?;
            Ok(0)
        }
        Cmd::TauRigids => {
            let built = universe_of()?;
            let mut modules = Vec::new();
            for m in &built.level.universe {
                if is_tau_rigid(m)? {
                    modules.push(RigidEntryJson {
                        g_vector: g_vector(m)?,
                        module: ModuleJson::from_module(m),
                    });
                }
            }
            emit(
                &cli.out,
                &TauRigidsJson {
                    algebra: algebra.name.clone(),
                    universe: UniverseJson::from_built(&built),
                    modules,
                },
            )?;
            Ok(0)
        }
        Cmd::Sequences { flavor } => {
            let flavor = Flavor::parse(flavor)?;
            let built = universe_of()?;
            let seqs = enumerate_complete(&built.level, flavor, &caps)?;
            emit(
                &cli.out,
                &SequencesJson {
                    algebra: algebra.name.clone(),
                    flavor: flavor.name().into(),
                    count: seqs.len(),
                    sequences: seqs.iter().map(|s| sequence_json(s)).collect(),
                },
            )?;
            Ok(0)
        }
        Cmd::Verify { statement } => {
            let built = universe_of()?;
            let outcomes = if statement == "all" {
                verify_all(&built.level, &opts, &caps)?
            } else {
                let name = StatementName::parse(statement)?;
                vec![verify_statement(&built.level, name, &opts, &caps)?]
            };
            let violated = outcomes
                .iter()
                .any(|o| o.status == StatementStatus::Fail);
            emit(
                &cli.out,
                &VerifyJson {
                    algebra: algebra.name.clone(),
                    universe: UniverseJson::from_built(&built),
                    statements: outcomes.iter().map(statement_detail_json).collect(),
                },
            )?;
            Ok(if violated { 2 } else { 0 })
        }
        Cmd::Report => {
            let built = universe_of()?;
            let outcomes = verify_all(&built.level, &opts, &caps)?;
            let violated = outcomes
                .iter()
                .any(|o| o.status == StatementStatus::Fail);
            let report =
                build_report(&algebra.name, algebra.field, &built, &outcomes, &caps)?;
            emit(&cli.out, &report)?;
            Ok(if violated { 2 } else { 0 })
        }
    }
}
