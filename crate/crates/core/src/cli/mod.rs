//! Command-line front end.

mod commands;
pub mod output;
mod plot;

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::error::Error;

#[derive(Debug, Parser)]
#[command(name = "entbroadcast", version, about = "Entanglement broadcasting with optimal universal cloners")]
pub struct Cli {
    /// TOML file supplying default flag values; command-line flags win.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bloch components, purity, PPT verdict, TF and DC of one state.
    State(Flags),
    /// Broadcasting range of one family slice, closed-form and numeric.
    Range(Flags),
    /// Clone one state and report the broadcast verdict and sums.
    Report(Flags),
    /// Regenerate the published tables (1..6, A1..A6 or all).
    Tables(Flags),
    /// Complementarity sums of random states against purity.
    Scatter(Flags),
    /// Complementarity sums over the Werner-like (alpha^2, p) square.
    Surface(Flags),
    /// Score the published sum columns against every DC/FB convention.
    Calibrate(Flags),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyArg {
    Werner,
    Belldiag,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClonerArg {
    Local,
    Nonlocal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DcArg {
    Clamped,
    Unclamped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FbArg {
    Root,
    Squared,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplerArg {
    Hs,
    Bloch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepArg {
    P,
    Alpha2,
    C1,
    C2,
    C3,
}

/// Flags shared by every subcommand; each command reads the ones it needs.
#[derive(Clone, Debug, Default, Args, Deserialize)]
#[serde(default, rename_all = "kebab-case", deny_unknown_fields)]
pub struct Flags {
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    /// Classical mixing parameter of the Werner-like family.
    #[arg(long)]
    pub p: Option<f64>,
    /// Weight alpha^2 of the Werner-like pure component.
    #[arg(long)]
    pub alpha2: Option<f64>,
    /// Bell-diagonal correlations `c1,c2,c3`.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, value_name = "C1,C2,C3")]
    pub c: Option<Vec<f64>>,
    #[arg(long, value_enum)]
    pub cloner: Option<ClonerArg>,
    /// Number of output copies N.
    #[arg(long)]
    pub copies: Option<usize>,
    /// Sweep resolution (points per axis for `surface`).
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long, value_enum)]
    pub dc_formula: Option<DcArg>,
    /// Broadcasting fidelity as the root fidelity or its square.
    #[arg(long, value_enum)]
    pub fb: Option<FbArg>,
    #[arg(long, value_enum)]
    pub sampler: Option<SamplerArg>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of random states for `scatter`.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Swept variable for `range`.
    #[arg(long, value_enum)]
    pub sweep: Option<SweepArg>,
    /// Table selection for `tables`: 1..6, A1..A6 or all.
    #[arg(long)]
    pub which: Option<String>,
    /// Output file (directory for `tables` and `calibrate`).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    /// Also write a gnuplot script next to the data file.
    #[arg(long)]
    pub emit_plot: bool,
}

impl Flags {
    /// Fills unset flags from `file`.
    pub fn merged_with(self, file: Flags) -> Flags {
        Flags {
            family: self.family.or(file.family),
            p: self.p.or(file.p),
            alpha2: self.alpha2.or(file.alpha2),
            c: self.c.or(file.c),
            cloner: self.cloner.or(file.cloner),
            copies: self.copies.or(file.copies),
            grid: self.grid.or(file.grid),
            dc_formula: self.dc_formula.or(file.dc_formula),
            fb: self.fb.or(file.fb),
            sampler: self.sampler.or(file.sampler),
            seed: self.seed.or(file.seed),
            samples: self.samples.or(file.samples),
            sweep: self.sweep.or(file.sweep),
            which: self.which.or(file.which),
            out: self.out.or(file.out),
            format: self.format.or(file.format),
            emit_plot: self.emit_plot || file.emit_plot,
        }
    }
}

/// Failure of a CLI run, split by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad or missing flags, out-of-range parameters: exit code 2.
    Usage(String),
    /// Computation or I/O failure: exit code 1.
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Runtime(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::ParameterOutOfRange(_) | Error::InvalidState(_) | Error::Unsupported(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(format!("i/o error: {e}"))
    }
}

fn load_config(path: &PathBuf) -> Result<Flags, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| {
        let msg = e.message().replace('\n', " ");
        CliError::Usage(format!("invalid config {}: {msg}", path.display()))
    })
}

/// Parses `args` (including the program name), runs the command and
/// returns its standard output.
pub fn run_to_string<I, T>(args: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
            CliError::Runtime(e.to_string())
        }
        _ => CliError::Usage(e.to_string()),
    })?;
    let file = match &cli.config {
        Some(path) => load_config(path)?,
        None => Flags::default(),
    };
    commands::dispatch(cli.command, file)
}

/// Binary entry point.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let result = cli
        .config
        .as_ref()
        .map_or(Ok(Flags::default()), load_config)
        .and_then(|file| commands::dispatch(cli.command, file));
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.to_string().lines().next().unwrap_or_default());
            ExitCode::from(e.exit_code())
        }
    }
}
