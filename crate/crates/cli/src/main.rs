//! `fusionkit`: command-line front end writing JSON reports.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 bad input.

mod commands;
mod config;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use config::{Flags, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Library(#[from] fusionkit::Error),
}

#[derive(Parser, Debug)]
#[command(name = "fusionkit", version, about = "Fusion systems, linking systems, Burnside idempotents and invariant rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// The fusion system F_S(G); S is --subgroup or a Sylow subgroup.
    Fusion,
    /// Saturation axioms I and II for F_S(G).
    Saturate,
    /// F-centric subgroups of F_S(G).
    Centrics,
    /// The centric linking system of G at a Sylow subgroup, with axioms A, B, C.
    Linking,
    /// Saturation plus linking axioms for G at p.
    VerifyPlfg,
    /// All saturated fusion systems over the abelian group in --group.
    ClassifyAbelian,
    /// H^k(W; S) for k = 0..3, W generated by the automorphisms in --W.
    Cohomology,
    /// The characteristic idempotent of F_S(G), or of F_S(W ⋉ S) with --W.
    Idempotent,
    /// Frobenius relations for transfers, diagonals and the idempotent.
    FrobeniusCheck,
    /// Invariants of the matrix group in --W on H*(BV; F_p).
    Invariants,
    /// Splitting properties of the averaging operator.
    CohCheck,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Fusion => "fusion",
            Command::Saturate => "saturate",
            Command::Centrics => "centrics",
            Command::Linking => "linking",
            Command::VerifyPlfg => "verify-plfg",
            Command::ClassifyAbelian => "classify-abelian",
            Command::Cohomology => "cohomology",
            Command::Idempotent => "idempotent",
            Command::FrobeniusCheck => "frobenius-check",
            Command::Invariants => "invariants",
            Command::CohCheck => "coh-check",
        }
    }
}

/// A finished computation: the report and whether every check passed.
pub struct Outcome {
    pub report: Value,
    pub ok: bool,
}

fn run(command: Command, cfg: &RunConfig) -> Result<Outcome, CliError> {
    match command {
        Command::Fusion => commands::fusion(cfg),
        Command::Saturate => commands::saturate(cfg),
        Command::Centrics => commands::centrics(cfg),
        Command::Linking => commands::linking(cfg),
        Command::VerifyPlfg => commands::verify_plfg(cfg),
        Command::ClassifyAbelian => commands::classify_abelian(cfg),
        Command::Cohomology => commands::cohomology(cfg),
        Command::Idempotent => commands::idempotent(cfg),
        Command::FrobeniusCheck => commands::frobenius_check(cfg),
        Command::Invariants => commands::invariants(cfg),
        Command::CohCheck => commands::coh_check(cfg),
    }
}

fn emit(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| CliError::Input(e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    let result = RunConfig::resolve(&cli.flags).and_then(|cfg| {
        if cfg.sequential {
            fusionkit::exec::set_parallel(false);
        }
        let outcome = run(cli.command, &cfg)?;
        let doc = json!({ "schema": 1, "command": name, "ok": outcome.ok, "report": outcome.report });
        let text = serde_json::to_string_pretty(&doc).expect("JSON values serialize") + "\n";
        emit(&cfg, &text)?;
        Ok(outcome.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let doc = json!({ "schema": 1, "command": name, "error": e.to_string() });
            eprintln!("{}", serde_json::to_string_pretty(&doc).expect("JSON values serialize"));
            ExitCode::from(2)
        }
    }
}
