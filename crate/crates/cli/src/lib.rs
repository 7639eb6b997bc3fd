//! Command-line front end for `eof-core`.
//!
//! Exit codes: 0 success, 2 validation error, 3 failed check, 4 scale-guard refusal.

pub mod args;
pub mod commands;
pub mod error;
pub mod family;
pub mod report;
pub mod statefile;

use std::time::Instant;

use args::{Cli, Command, GapKind, OdCommand};
use report::RunReport;

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: &Cli, argv: Vec<String>) -> i32 {
    let start = Instant::now();
    let mut report = RunReport::new(argv);
    let outcome = match &cli.command {
        Command::Eof(a) => commands::cmd_eof(a, &mut report),
        Command::Od { command: OdCommand::Verify(a) } => commands::cmd_od_verify(a, &mut report),
        Command::GapScan { kind: GapKind::Lemma3(a) } => commands::cmd_gap_lemma3(a, &mut report),
        Command::GapScan { kind: GapKind::TensorMc(a) } => commands::cmd_gap_tensor_mc(a, &mut report),
        Command::Oracle(a) => commands::cmd_oracle(a, &mut report),
        Command::Compose(a) => commands::cmd_compose(a, &mut report),
        Command::State(a) => commands::cmd_state(a, &mut report),
    };
    match outcome {
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
        Ok(payload) => {
            report.wall_time_s = start.elapsed().as_secs_f64();
            let rendered = if cli.command.json() { report.to_json() + "\n" } else { report.render_text() };
            match payload {
                Some(p) => {
                    print!("{p}");
                    eprint!("{rendered}");
                }
                None => print!("{rendered}"),
            }
            if report.passed() {
                0
            } else {
                3
            }
        }
    }
}
