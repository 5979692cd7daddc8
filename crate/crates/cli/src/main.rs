mod args;
mod commands;
mod input;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use ndep_core::report::{RunReport, SCHEMA};
use serde_json::{json, Value};

use args::Cli;

pub enum CliError {
    /// Bad flags or input; exit 2.
    Usage(Value),
    /// The computation itself failed; exit 1.
    Core(ndep_core::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> CliError {
        CliError::Usage(json!({ "kind": "usage", "detail": msg.into() }))
    }
}

impl From<ndep_core::Error> for CliError {
    fn from(e: ndep_core::Error) -> CliError {
        use ndep_core::algebra::AlgebraError;
        match e {
            ndep_core::Error::Algebra(AlgebraError::Parse { .. }) => CliError::Usage(json!(e)),
            e => CliError::Core(e),
        }
    }
}

impl From<ndep_core::algebra::AlgebraError> for CliError {
    fn from(e: ndep_core::algebra::AlgebraError) -> CliError {
        ndep_core::Error::from(e).into()
    }
}

fn error_report(argv: &[String], error: Value) -> Value {
    json!({
        "schema": SCHEMA,
        "command": argv,
        "version": env!("CARGO_PKG_VERSION"),
        "error": error,
        "pass": false,
    })
}

fn print_pretty(r: &RunReport) {
    println!("command: ndep {}", r.command.join(" "));
    println!("substrate: {}", r.substrate);
    if let Some(seed) = r.seed {
        println!("seed: {seed}");
    }
    let w = r.checks.iter().map(|c| c.claim.chars().count()).max().unwrap_or(5).max(5);
    let we = r.checks.iter().map(|c| c.expected.chars().count()).max().unwrap_or(8).clamp(8, 40);
    println!("{:<w$}  {:<we$}  {:<8}  computed", "claim", "expected", "pass");
    for c in &r.checks {
        let mark = if c.pass { "ok" } else { "FAIL" };
        println!("{:<w$}  {:<we$}  {:<8}  {}", c.claim, c.expected, mark, c.computed);
    }
    println!("result: {}", serde_json::to_string_pretty(&r.result).unwrap_or_default());
    println!("{}", if r.pass { "PASS" } else { "FAIL" });
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(
                e.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            ) {
                e.exit();
            }
            let _ = e.print();
            let msg = e.render().to_string();
            println!("{}", error_report(&argv, json!({ "kind": "usage", "detail": msg.trim_end() })));
            return ExitCode::from(2);
        }
    };
    match commands::run(&cli.cmd, &argv) {
        Ok(report) => {
            if cli.pretty {
                print_pretty(&report);
            } else {
                println!("{}", serde_json::to_string(&report).expect("report serializes"));
            }
            if report.pass { ExitCode::SUCCESS } else { ExitCode::from(1) }
        }
        Err(err) => {
            let (payload, code) = match err {
                CliError::Usage(v) => (v, 2),
                CliError::Core(e) => (json!(e), 1),
            };
            let out = error_report(&argv, payload);
            if cli.pretty {
                eprintln!("error: {}", out["error"]);
            }
            println!("{out}");
            ExitCode::from(code)
        }
    }
}
