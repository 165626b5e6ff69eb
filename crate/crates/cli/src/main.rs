//! `pancharatnam`: reproducible experiments with wave-plate SU(2) gates.

mod config;
mod decompose;
mod fringe;
mod interf;
mod output;
mod polarimetry;
mod visibility;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use config::Resolver;

#[derive(Parser, Debug)]
#[command(name = "pancharatnam", version, about = "Wave-plate SU(2) gates and Pancharatnam phase experiments")]
struct Cli {
    /// `key=value` file supplying defaults for any flag (flags win).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory [env: PANCHARATNAM_OUT, default: ./out].
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Read angle flags in degrees instead of radians.
    #[arg(long, global = true)]
    degrees: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compile (ξ, η, ζ) into a plate array and verify it.
    Decompose(decompose::Args),
    /// Split-beam interferometer sweep and cos²Φ_P surface.
    Interf(interf::Args),
    /// Rotating five-plate (or reduced) polarimetric measurement.
    Polarimetry(polarimetry::Args),
    /// Synthetic dual-half interferograms.
    #[command(subcommand)]
    Fringe(fringe::Command),
    /// Fringe visibility of QHQ arrays over plate angles.
    Visibility(visibility::Args),
}

/// Execution context shared by all commands.
pub struct Ctx {
    pub resolver: Resolver,
    pub out: PathBuf,
}

impl Ctx {
    pub fn path(&self, name: &str) -> PathBuf {
        self.out.join(name)
    }

    pub fn finish(&self, command: &str) -> Result<()> {
        for key in self.resolver.unused() {
            warn("UnusedConfigKey", &format!("config key {key} was not used"));
        }
        self.resolver.write(&self.out, command)
    }
}

/// Error carrying a machine-readable kind.
#[derive(Debug)]
pub struct Kinded {
    pub kind: &'static str,
    pub message: String,
}

impl fmt::Display for Kinded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Kinded {}

pub fn fail(kind: &'static str, message: impl Into<String>) -> anyhow::Error {
    Kinded { kind, message: message.into() }.into()
}

fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

pub fn warn(kind: &str, message: &str) {
    eprintln!("warning\tkind={kind}\tmessage={}", one_line(message));
}

fn error_kind(e: &anyhow::Error) -> &'static str {
    for cause in e.chain() {
        if let Some(k) = cause.downcast_ref::<Kinded>() {
            return k.kind;
        }
        if let Some(k) = cause.downcast_ref::<pancharatnam::Error>() {
            return k.kind();
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return "Io";
        }
    }
    "Error"
}

fn run(cli: Cli) -> Result<()> {
    let out = output::out_dir(cli.out.as_deref())?;
    let resolver = Resolver::new(cli.config.as_deref(), cli.degrees).map_err(|e| fail("Config", format!("{e:#}")))?;
    let mut ctx = Ctx { resolver, out };
    let (name, outcome) = match &cli.command {
        Command::Decompose(a) => ("decompose", decompose::run(a, &mut ctx)),
        Command::Interf(a) => ("interf", interf::run(a, &mut ctx)),
        Command::Polarimetry(a) => ("polarimetry", polarimetry::run(a, &mut ctx)),
        Command::Fringe(c) => (c.name(), fringe::run(c, &mut ctx)),
        Command::Visibility(a) => ("visibility", visibility::run(a, &mut ctx)),
    };
    // The resolved config is written even when the command fails.
    let finished = ctx.finish(name);
    outcome.and(finished)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("");
            eprintln!("error\tkind=Usage\tmessage={}", one_line(first.trim_start_matches("error:")));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error\tkind={}\tmessage={}", error_kind(&e), one_line(&format!("{e:#}")));
            ExitCode::FAILURE
        }
    }
}

/// Reads a file, mapping failures to an `Io` error naming the path.
pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| fail("Io", format!("reading {}: {e}", path.display())))
}

/// Parses a string choice resolved from flags or config.
pub fn choice<'a>(key: &str, value: &str, allowed: &[&'a str]) -> Result<&'a str> {
    allowed
        .iter()
        .find(|a| **a == value)
        .copied()
        .ok_or_else(|| fail("Config", format!("{key} must be one of {}, got {value:?}", allowed.join("|"))))
}
