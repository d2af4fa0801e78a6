//! Command-line front end. `run` parses arguments, dispatches and returns the
//! process exit code; all output goes through the supplied writers.
//!
//! Exit codes: 0 success, 1 audit failure or I/O error, 2 invalid
//! configuration, 3 singular recursion denominator.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::audit::audit_report_with_grid;
use crate::dunkl::ParitySector;
use crate::error::QesError;
use crate::grid::GridSpec;
use crate::model::{assemble_wavefunction, spectrum, wavefunction, DegeneratePolicy, PdmModel};
use crate::scalar::{format_rational, parse_rational, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_SINGULAR: i32 = 3;

/// Reserved: the tool draws no random numbers, so a seed can't be configured.
pub const SEED_ENV: &str = "QES_SEED_NONE";

#[derive(Debug, Parser)]
#[command(name = "qes", version, about = "Spectra, wavefunctions and consistency audits for the Dunkl PDM QES model")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy levels E_0..E_nmax with their solvability status
    Spectrum(SpectrumArgs),
    /// Samples of the level-n polynomial eigenfunction
    Wavefunction(WavefunctionArgs),
    /// Full consistency report as JSON
    Audit(AuditArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SectorArg {
    Even,
    Odd,
}

impl From<SectorArg> for ParitySector {
    fn from(s: SectorArg) -> Self {
        match s {
            SectorArg::Even => ParitySector::Even,
            SectorArg::Odd => ParitySector::Odd,
        }
    }
}

fn rational_arg(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Dunkl parameter, mu > -1/2 ("p/q" or decimal)
    #[arg(long, default_value = "0", value_parser = rational_arg, allow_hyphen_values = true)]
    pub mu: Rational,
    /// Length scale a > 0
    #[arg(long, default_value = "1", value_parser = rational_arg, allow_hyphen_values = true)]
    pub a: Rational,
    /// Mass scale m0 > 0
    #[arg(long, default_value = "1", value_parser = rational_arg, allow_hyphen_values = true)]
    pub m0: Rational,
}

impl ModelArgs {
    fn model(&self) -> crate::Result<PdmModel> {
        PdmModel::new(self.mu.clone(), self.a.clone(), self.m0.clone())
    }

    fn describe(&self) -> String {
        format!(
            "mu={} a={} m0={}",
            format_rational(&self.mu),
            format_rational(&self.a),
            format_rational(&self.m0)
        )
    }
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 2)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value = "even")]
    pub sector: SectorArg,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write to this file instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "even")]
    pub sector: SectorArg,
    /// Time at which psi(x, t) is evaluated
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub t: f64,
    #[arg(long, default_value_t = -2.0, allow_hyphen_values = true)]
    pub x_min: f64,
    #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
    pub x_max: f64,
    #[arg(long, default_value_t = 41)]
    pub samples: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 2)]
    pub n_max: usize,
    /// Half-width of the box used by the grid checks
    #[arg(long = "grid-L", default_value_t = 4.0)]
    pub grid_l: f64,
    /// Number of half-grid nodes used by the grid checks
    #[arg(long = "grid-N", default_value_t = 400)]
    pub grid_n: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Error carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<QesError> for Failure {
    fn from(e: QesError) -> Self {
        let code = match e {
            QesError::SingularDenominator { .. } => EXIT_SINGULAR,
            QesError::InvalidParameter(_) | QesError::InvalidGrid(_) | QesError::Parse(_) => EXIT_CONFIG,
            _ => EXIT_FAILURE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn config_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_CONFIG,
        message: message.into(),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let rendered = e.to_string();
                    let line = rendered.lines().next().unwrap_or("invalid arguments");
                    let _ = writeln!(stderr, "{line}");
                    EXIT_CONFIG
                }
            };
        }
    };
    match execute(&cli, stdout) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<i32, Failure> {
    if std::env::var_os(SEED_ENV).is_some() {
        return Err(config_error(format!(
            "{SEED_ENV} is reserved and must not be set: every computation is deterministic"
        )));
    }
    let (text, out, code) = match &cli.command {
        Command::Spectrum(a) => (cmd_spectrum(a)?, &a.out, EXIT_OK),
        Command::Wavefunction(a) => (cmd_wavefunction(a)?, &a.out, EXIT_OK),
        Command::Audit(a) => {
            let (text, failed) = cmd_audit(a)?;
            (text, &a.out, if failed { EXIT_FAILURE } else { EXIT_OK })
        }
    };
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure {
            code: EXIT_FAILURE,
            message: format!("cannot write {}: {e}", path.display()),
        })?,
        None => stdout.write_all(text.as_bytes()).map_err(|e| Failure {
            code: EXIT_FAILURE,
            message: e.to_string(),
        })?,
    }
    Ok(code)
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON value serializes");
    s.push('\n');
    s
}

/// Removes the sign of negative zero so output is stable.
fn clean(x: f64) -> f64 {
    x + 0.0
}

fn cmd_spectrum(args: &SpectrumArgs) -> Result<String, Failure> {
    let model = args.model.model()?;
    let sector: ParitySector = args.sector.into();
    let result = spectrum(&model, args.n_max, sector);
    Ok(match args.format {
        Format::Csv => {
            let mut s = format!("# spectrum {} sector={sector} hbar=1\n", args.model.describe());
            s.push_str("n,energy,sector,solvable,residual\n");
            for l in &result.levels {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    l.n,
                    format_rational(&l.energy),
                    l.sector,
                    l.solvable,
                    format_rational(&l.solvability_residual)
                ));
            }
            s
        }
        Format::Json => json_text(&Value::Array(
            result
                .levels
                .iter()
                .map(|l| {
                    json!({
                        "n": l.n,
                        "energy": format_rational(&l.energy),
                        "sector": l.sector.name(),
                        "solvable": l.solvable,
                        "residual": format_rational(&l.solvability_residual),
                    })
                })
                .collect(),
        )),
    })
}

fn cmd_wavefunction(args: &WavefunctionArgs) -> Result<String, Failure> {
    let model = args.model.model()?;
    if args.samples == 0 {
        return Err(config_error("--samples must be at least 1"));
    }
    if !(args.x_min.is_finite() && args.x_max.is_finite() && args.t.is_finite()) {
        return Err(config_error("--x-min, --x-max and --t must be finite"));
    }
    if args.x_max < args.x_min || (args.samples > 1 && args.x_max == args.x_min) {
        return Err(config_error("--x-max must exceed --x-min"));
    }
    let sector: ParitySector = args.sector.into();
    let w = wavefunction(&model, args.n, sector, DegeneratePolicy::Abort)?;
    let step = if args.samples > 1 {
        (args.x_max - args.x_min) / (args.samples - 1) as f64
    } else {
        0.0
    };
    let rows: Vec<(f64, f64, f64)> = (0..args.samples)
        .map(|i| {
            let x = if i + 1 == args.samples && args.samples > 1 {
                args.x_max
            } else {
                args.x_min + i as f64 * step
            };
            let psi = assemble_wavefunction(&w, x, args.t);
            (clean(x), clean(psi.re), clean(psi.im))
        })
        .collect();
    let b: Vec<String> = w.b().iter().map(format_rational).collect();
    Ok(match args.format {
        Format::Csv => {
            let mut s = format!(
                "# wavefunction n={} sector={sector} {} t={}\n",
                args.n,
                args.model.describe(),
                clean(args.t)
            );
            s.push_str(&format!("# energy = {}\n", format_rational(&w.energy)));
            s.push_str(&format!("# b = {}\n", b.join(", ")));
            s.push_str(&format!(
                "# row0_residual = {}\n",
                format_rational(&w.recursion.row0_residual)
            ));
            s.push_str("x,re_psi,im_psi\n");
            for (x, re, im) in rows {
                s.push_str(&format!("{x},{re},{im}\n"));
            }
            s
        }
        Format::Json => json_text(&json!({
            "n": args.n,
            "sector": sector.name(),
            "energy": format_rational(&w.energy),
            "b": b,
            "row0_residual": format_rational(&w.recursion.row0_residual),
            "t": clean(args.t),
            "samples": rows
                .iter()
                .map(|(x, re, im)| json!({"x": x, "re_psi": re, "im_psi": im}))
                .collect::<Vec<_>>(),
        })),
    })
}

/// The serialized report and whether any known-good check failed.
fn cmd_audit(args: &AuditArgs) -> Result<(String, bool), Failure> {
    let model = args.model.model()?;
    let grid = GridSpec::new(args.grid_l, args.grid_n)?;
    let report = audit_report_with_grid(&model, args.n_max, grid)?;
    Ok((report.to_json_string(), report.has_failures()))
}
