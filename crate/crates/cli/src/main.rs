// Copyright 2026 The bellbasis Contributors
// SPDX-License-Identifier: Apache-2.0

//! `bellbasis` command-line tool.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on bad input.

mod args;
mod commands;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::{Failure, Outcome};

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let common = &cli.common;
    match &cli.command {
        Command::CheckBasis(a) => commands::check_basis(a, common),
        Command::Teleport(a) => commands::teleport(a, common),
        Command::FidelitySweep(a) => commands::fidelity_sweep(a, common),
        Command::Observable(a) => commands::observable(a, common),
        Command::CvCheck(a) => commands::cv_check(a, common),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            return ExitCode::from(1);
        }
    };
    let verdict = if outcome.pass { "PASS" } else { "FAIL" };
    match &cli.common.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &outcome.body) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
            println!("{verdict} {}", outcome.summary);
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.body.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            eprintln!("{verdict} {}", outcome.summary);
        }
    }
    if outcome.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
