//! `pwedge`: reproducible experiments on the penetrable-wedge Wiener-Hopf system.
//!
//! Every command prints a JSON report (embedding the resolved configuration) and,
//! with `--out`, writes it and any artifacts there. Exit codes: 0 pass, 2 usage,
//! 3 numerical failure or a threshold not met.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use config::Overrides;

#[derive(Parser, Debug)]
#[command(name = "pwedge", version, about = "Penetrable-wedge Wiener-Hopf experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory for reports and artifacts.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Pass/fail tolerance for the command's headline quantity.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Number of probe points (grid side for `factor`).
    #[arg(long, global = true)]
    probes: Option<usize>,
    /// Seed for randomised probes.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Check K = K++ K+- K-- K-+ on a probe grid.
    Factor,
    /// Sum-split the family 1/(z^2 + c^2) and compare with partial fractions.
    Split,
    /// Evaluate Radlow's ansatz (and the candidate's correction) and its decay.
    Ansatz,
    /// Compatibility residual of the configured candidate over the probe set.
    Residual,
    /// Reconstruct physical fields and run the continuity, Helmholtz and tip checks.
    Field,
    /// Render a phase portrait.
    Portrait,
    /// Run the acceptance suite.
    Verify,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Factor => "factor",
            Command::Split => "split",
            Command::Ansatz => "ansatz",
            Command::Residual => "residual",
            Command::Field => "field",
            Command::Portrait => "portrait",
            Command::Verify => "verify",
        }
    }
}

/// Why a command did not succeed, and what it had computed so far.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
    pub partial: Option<Value>,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
            partial: None,
        }
    }

    pub fn numerical(message: impl Into<String>, partial: Option<Value>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
            partial,
        }
    }
}

impl From<pwedge::Error> for Failure {
    fn from(e: pwedge::Error) -> Self {
        if e.is_numerical() {
            Failure::numerical(e.to_string(), None)
        } else {
            Failure::usage(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let overrides = Overrides {
        out: cli.out.clone(),
        tolerance: cli.tolerance,
        probes: cli.probes,
        seed: cli.seed,
    };
    let name = cli.command.name();
    let config = match config::load(cli.config.as_deref(), &overrides) {
        Ok(c) => c,
        Err(f) => return finish(name, None, Err(f)),
    };
    let outcome = match cli.command {
        Command::Factor => commands::factor(&config),
        Command::Split => commands::split(&config),
        Command::Ansatz => commands::ansatz(&config),
        Command::Residual => commands::residual(&config),
        Command::Field => commands::field(&config),
        Command::Portrait => commands::portrait(&config),
        Command::Verify => commands::verify(&config),
    };
    finish(name, Some(&config), outcome)
}

fn finish(name: &str, config: Option<&config::RunConfig>, outcome: Result<Value, Failure>) -> ExitCode {
    let (code, report) = match outcome {
        Ok(results) => (0, serde_json::json!({"command": name, "status": "pass", "config": config, "results": results})),
        Err(f) => {
            let status = if f.code == 2 { "usage_error" } else { "fail" };
            (
                f.code,
                serde_json::json!({
                    "command": name,
                    "status": status,
                    "error": f.message,
                    "config": config,
                    "results": f.partial,
                }),
            )
        }
    };
    let text = serde_json::to_string_pretty(&report).expect("reports serialise");
    println!("{text}");
    if code != 0 {
        eprintln!("pwedge {name}: {}", report["error"].as_str().unwrap_or("failed"));
    }
    if let Some(dir) = config.and_then(|c| c.out.as_ref()) {
        let path = dir.join(format!("{name}.json"));
        if let Err(e) = std::fs::create_dir_all(dir).and_then(|_| std::fs::write(&path, &text)) {
            eprintln!("pwedge {name}: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code)
}
