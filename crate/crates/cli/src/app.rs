//! Argument parsing and dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::commands::{self, Kind, VerifyArgs};
use crate::error::{CliError, Status};
use crate::scene::Scene;

#[derive(Debug, Parser)]
#[command(name = "hedgehog", version, about = "Hedgehog envelopes, sections and slabs of convex polygons")]
pub struct Cli {
    /// Scene JSON file, or `figure1` for the built-in scene (the default).
    #[arg(long, global = true)]
    pub scene: Option<String>,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the envelope of a support function as SVG.
    Envelope {
        #[arg(long)]
        h: String,
        #[arg(long)]
        samples: Option<usize>,
        /// Supporting line to overlay, as an angle in radians; repeatable.
        #[arg(long = "line", allow_negative_numbers = true)]
        lines: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep |vol(P ∩ ·) − vol(Q ∩ ·)| over directions.
    Verify {
        #[arg(long, default_value = "P")]
        p: String,
        #[arg(long, default_value = "Q")]
        q: String,
        #[arg(long, default_value = "M")]
        h: String,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        samples: Option<usize>,
        /// Pass threshold for the sup of the profile.
        #[arg(long)]
        tol: Option<f64>,
        /// Require origin-symmetric polygons and a centrally symmetric h.
        #[arg(long)]
        strict: bool,
        /// CSV destination for the profile.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Envelope residuals, finite-difference derivatives and Taylor checks.
    Checks {
        #[arg(long)]
        h: String,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Print the scene as JSON.
    DumpScene {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<Status, CliError> {
    let scene = Scene::resolve(cli.scene.as_deref())?;
    let mut emit = |text: &str| stdout.write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e));
    match cli.command {
        Command::Envelope { h, samples, lines, out } => {
            let svg = commands::envelope(&scene, &h, samples, &lines)?;
            match out {
                Some(path) => write_file(&path, &svg)?,
                None => emit(&svg)?,
            }
            Ok(Status::Pass)
        }
        Command::Verify { p, q, h, kind, samples, tol, strict, out } => {
            let args = VerifyArgs { p, q, h, kind, samples, tol, strict };
            let outcome = commands::verify(&scene, &args)?;
            if let Some(path) = out {
                write_file(&path, &outcome.profile.to_csv())?;
            }
            emit(&outcome.summary())?;
            Ok(outcome.status())
        }
        Command::Checks { h, samples } => {
            let report = commands::checks(&scene, &h, cli.seed, samples)?;
            emit(&report.text)?;
            Ok(report.status())
        }
        Command::DumpScene { out } => {
            let json = scene.to_json() + "\n";
            match out {
                Some(path) => write_file(&path, &json)?,
                None => emit(&json)?,
            }
            Ok(Status::Pass)
        }
    }
}

/// Parses `args`, runs the command and returns the exit code. Errors become
/// one diagnostic line on `stderr` and exit code 2.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { Status::Error.code() } else { 0 };
        }
    };
    match execute(cli, stdout) {
        Ok(status) => status.code(),
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            Status::Error.code()
        }
    }
}
