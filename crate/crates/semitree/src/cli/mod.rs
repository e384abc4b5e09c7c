//! Command-line front end: every command is a pure function of [`RunArgs`]
//! and renders a [`Table`] as CSV or JSON.

mod commands;
pub mod output;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::oracle::DEFAULT_CAP;
use crate::spectra::Exponent;
use crate::{Error, TreeParams};
pub use output::{Cell, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

const MAX_DEPTH: usize = 10_000;

#[derive(Parser, Debug)]
#[command(name = "semitree", version, about = "Spectra, kernels and spherical functions on semi-homogeneous trees")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Boundary polyline of the ℓ^p spectrum (γ² plane and both γ sheets).
    Spectrum,
    /// Spectral radius ρ_p over a grid uniform in 1/p.
    RadiusCurve,
    /// Spherical function by the three evaluators, with their max deviation.
    Spherical,
    /// F± in closed form, as a power series and by Monte Carlo.
    Hitting,
    /// Harmonic, generalized and alternative Poisson kernels up to --depth.
    Poisson,
    /// Eigenvalue map γ ↦ z and its inverse.
    Zmap,
    /// ℓ^p spectrum membership and ℓ^p range of the spherical function.
    Classify,
    /// Invariant suite; exit code 2 on any failure.
    Verify,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Degree of the root class (≥ 2; verify defaults to the grid {2,3,5}²)
    #[arg(long, global = true)]
    pub q_plus: Option<u32>,
    /// Degree of the other class (≥ 2)
    #[arg(long, global = true)]
    pub q_minus: Option<u32>,
    /// Exponent in [1, inf]; "inf" for ℓ^∞.
    #[arg(long, global = true, default_value = "2", value_parser = parse_exponent)]
    pub p: Exponent,
    /// Eigenvalue as RE,IM (or RE).
    #[arg(long, global = true, default_value = "1,0", value_parser = parse_gamma, allow_hyphen_values = true)]
    pub gamma: Complex64,
    /// Largest distance (spherical, poisson: 12) or tree depth (verify: 8).
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Points on curves and grids (≥ 8)
    #[arg(long, global = true, default_value_t = 256)]
    pub samples: usize,
    /// Monte Carlo walks
    #[arg(long, global = true, default_value_t = 100_000)]
    pub walks: u64,
    /// Step cap per Monte Carlo walk
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: u64,
    /// Power-series terms.
    #[arg(long, global = true, default_value_t = 200)]
    pub terms: usize,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Overrides the tolerance of every deterministic check in `verify`.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Relative perturbation injected into B by `verify` (sensitivity self-test).
    #[arg(long, global = true, default_value_t = 0.0)]
    pub perturb: f64,
}

fn parse_exponent(s: &str) -> std::result::Result<Exponent, String> {
    let p: f64 = s.trim().parse().map_err(|_| format!("not a number or \"inf\": {s}"))?;
    Exponent::new(p).map_err(|e| e.to_string())
}

fn parse_gamma(s: &str) -> std::result::Result<Complex64, String> {
    let mut it = s.split(',');
    let mut next = |name| -> std::result::Result<f64, String> {
        match it.next() {
            None => Ok(0.0),
            Some(t) => t.trim().parse().map_err(|_| format!("bad {name} part in {s:?}")),
        }
    };
    let z = Complex64::new(next("real")?, next("imaginary")?);
    if it.next().is_some() || !z.re.is_finite() || !z.im.is_finite() {
        return Err(format!("expected RE,IM, got {s:?}"));
    }
    Ok(z)
}

/// Failure with its process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Capacity { .. }) { EXIT_CAPACITY } else { EXIT_USAGE };
        CliError { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError { code: EXIT_USAGE, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError { code: EXIT_USAGE, message: message.into() }
}

impl RunArgs {
    pub fn params(&self) -> Result<TreeParams, CliError> {
        match (self.q_plus, self.q_minus) {
            (Some(a), Some(b)) => Ok(TreeParams::new(a, b)?),
            _ => Err(usage("--q-plus and --q-minus are required")),
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.samples < 8 {
            return Err(usage(format!("--samples must be at least 8, got {}", self.samples)));
        }
        if self.depth.is_some_and(|d| d > MAX_DEPTH) {
            return Err(usage(format!("--depth must be at most {MAX_DEPTH}")));
        }
        if self.walks == 0 || self.cap == 0 || self.terms == 0 {
            return Err(usage("--walks, --cap and --terms must be positive"));
        }
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(usage("--tol must be positive"));
            }
        }
        if !self.perturb.is_finite() {
            return Err(usage("--perturb must be finite"));
        }
        Ok(())
    }
}

/// Runs one command; returns the table and whether every check passed.
pub fn execute(command: Command, run: &RunArgs) -> Result<(Table, bool), CliError> {
    run.validate()?;
    let table = match command {
        Command::Spectrum => commands::spectrum(run)?,
        Command::RadiusCurve => commands::radius_curve(run)?,
        Command::Spherical => commands::spherical(run)?,
        Command::Hitting => commands::hitting(run)?,
        Command::Poisson => commands::poisson(run)?,
        Command::Zmap => commands::zmap(run)?,
        Command::Classify => commands::classify(run)?,
        Command::Verify => {
            let report = verify::run_suite(run)?;
            let ok = report.passed();
            return Ok((report.table(), ok));
        }
    };
    Ok((table, true))
}

pub fn render(table: &Table, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Csv => table.write_csv(out),
        Format::Json => table.write_json(out),
    }
}

/// Full process behaviour: parse, execute, write to `--out` or `stdout`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = execute(cli.command, &cli.run).and_then(|(table, ok)| {
        match &cli.run.out {
            Some(path) => {
                let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
                render(&table, cli.run.format, &mut f)?;
                f.flush()?;
            }
            None => render(&table, cli.run.format, stdout)?,
        }
        Ok(ok)
    });
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => {
            let _ = writeln!(stderr, "semitree: verification failed");
            EXIT_VERIFY
        }
        Err(e) => {
            let _ = writeln!(stderr, "semitree: {}", e.message);
            e.code
        }
    }
}
