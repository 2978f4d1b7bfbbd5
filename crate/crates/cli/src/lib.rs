//! Command-line front end for `qudiscord`.
//!
//! Results go to standard output and logs to standard error. Exit codes:
//! 0 on success, 2 for input or validation errors, 3 when the optimizer did
//! not converge (results are still printed).

pub mod args;
pub mod commands;
pub mod density_file;
pub mod error;

use std::io::Write;

pub use args::Cli;
pub use commands::Status;
pub use density_file::DensityFile;
pub use error::{CliError, CliResult};

use args::Command;

pub fn run(command: &Command, out: &mut dyn Write) -> CliResult<Status> {
    match command {
        Command::Compute(a) => commands::compute(a, out),
        Command::Sweep(a) => commands::sweep(a, out),
        Command::Gen(a) => commands::gen(a, out),
        Command::Count(a) => commands::count(a, out),
        Command::Validate(a) => commands::validate(a, out),
    }
}
