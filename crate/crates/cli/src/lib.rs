//! Command-line front end of `susy-trm`: sampled potentials, eigenfunctions
//! and verification reports as CSV and JSON.
//!
//! Exit codes: 0 success, 2 invalid configuration, 3 singular transformation
//! or invalid seed combination, 4 verification mismatch, 5 numerical failure.

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod format;

pub use config::JobConfig;
pub use error::CliError;

use args::Cli;
use error::ErrorDocument;

/// Parse `args` (program name first), run the job and return the exit code.
/// Errors are reported on `stderr` as a JSON document.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{}", e.render());
                return 0;
            }
            return report(&CliError::config(e.render().to_string().trim_end()), stderr);
        }
    };
    let outcome = (|| {
        let flags = cli.command.to_config();
        let config = match cli.command.config_path() {
            Some(path) => flags.overlay(JobConfig::load(path)?),
            None => flags,
        };
        commands::run(cli.command.name(), config, stdout)
    })();
    let _ = stdout.flush();
    match outcome {
        Ok(()) => 0,
        Err(e) => report(&e, stderr),
    }
}

/// [`run_with`] on the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

fn report(e: &CliError, stderr: &mut dyn Write) -> i32 {
    let _ = stderr.write_all(format::to_json(&ErrorDocument::from(e)).as_bytes());
    e.exit_code()
}
