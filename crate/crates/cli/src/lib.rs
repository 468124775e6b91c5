//! Command-line front end: argument parsing, dispatch and report output.

pub mod commands;
pub mod config;
pub mod report;

use std::ffi::OsString;
use std::time::Instant;

use clap::Parser;

use crate::commands::Command;
use crate::config::{CommonArgs, RunConfig};
use crate::report::{Outcome, Report};

#[derive(Debug, Parser)]
#[command(name = "depthlab", version, about = "Depth of powers of monomial ideals")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Parses `args` (including the program name), runs the command, prints the
/// report and returns the process exit status.
pub fn run(args: Vec<OsString>) -> i32 {
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let cfg = RunConfig::from_args(&cli.common);
    // program name excluded so the echo does not depend on the install path
    let echo = std::iter::once("depthlab".to_string())
        .chain(args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()))
        .collect::<Vec<_>>()
        .join(" ");
    let start = Instant::now();
    let mut outcome = Outcome::default();
    let error = commands::execute(&cli.command, &cfg, &mut outcome).err();
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let report = Report::new(echo, cfg, outcome, error, elapsed_ms);
    let rendered = report.render();
    print!("{rendered}");
    if let Some(err) = &report.error {
        eprintln!("error: {err}");
    }
    if let Some(path) = &cli.common.report {
        if let Err(e) = std::fs::write(path, &rendered) {
            eprintln!("error: {}: {e}", path.display());
            return 2;
        }
    }
    report.exit_code()
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn flags_override_defaults() {
        let cli = Cli::try_parse_from(["depthlab", "depth", "f.txt", "--kmax", "5", "--cap-lattice", "7"]).unwrap();
        let cfg = RunConfig::from_args(&cli.common);
        assert_eq!(cfg.kmax, 5);
        assert_eq!(cfg.caps.lattice, 7);
    }

    #[test]
    fn zero_caps_are_rejected() {
        assert!(Cli::try_parse_from(["depthlab", "depth", "f.txt", "--cap-search", "0"]).is_err());
        assert!(Cli::try_parse_from(["depthlab", "depth", "f.txt", "--field", "p:9"]).is_err());
    }
}
