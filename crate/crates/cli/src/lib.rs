//! Command-line front end for `hypermatch`: argument definitions, instance
//! loading, the CSV report and the subcommands themselves. The binary in
//! `main.rs` only parses arguments and maps results to exit codes.

pub mod args;
pub mod commands;
pub mod instance;
pub mod report;

use std::io::Write;

use anyhow::Result;

use args::Command;

/// `Ok(false)` means the command ran but found a failure (an invalid
/// matching, a failed benchmark row).
pub fn dispatch(command: &Command, out: &mut dyn Write) -> Result<bool> {
    match command {
        Command::Run(a) => commands::cmd_run(a, out),
        Command::Bench(a) => commands::cmd_bench(a, out),
        Command::Generate(a) => commands::cmd_generate(a, out),
        Command::Verify(a) => commands::cmd_verify(a, out),
        Command::Oracle(a) => commands::cmd_oracle(a, out),
    }
}
