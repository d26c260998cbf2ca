use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use djc_core::BellFamily;

use crate::error::CliError;

/// Environment variable naming the default output directory for `figure`.
pub const OUT_DIR_ENV: &str = "DJC_OUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "djc",
    version,
    about = "Atom-atom entanglement of two independent Jaynes-Cummings systems",
    long_about = "Atom-atom entanglement of two independent Jaynes-Cummings systems sharing one excitation.\n\n\
        Angles are in radians; literals such as pi/4 or 2pi/3 are accepted. \
        Any subcommand takes --config FILE with flat key=value lines mirroring the flags; \
        flags given on the command line take precedence."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample the atom-atom concurrence on a uniform time grid and write CSV.
    Scan(ScanArgs),
    /// Report the coupling-ratio class, revival period and concurrence zeros as JSON.
    Period(PeriodArgs),
    /// Run a verification suite; exits 3 if any check fails.
    Verify(VerifyArgs),
    /// Write the CSV curves of a reference figure (fig2, fig3, fig4, fig5).
    Figure(FigureArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CouplingArgs {
    /// Coupling of atom A to cavity a.
    #[arg(long, default_value_t = 1.0)]
    pub ga: f64,
    /// Coupling of atom B to cavity b; also the reference g of the g·t axis.
    #[arg(long, default_value_t = 1.0)]
    pub gb: f64,
    /// Atomic transition frequency.
    #[arg(long, default_value_t = 1.0)]
    pub omega_atom: f64,
    /// Cavity mode frequency.
    #[arg(long, default_value_t = 1.0)]
    pub omega_cavity: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Analytic envelope.
    Closed,
    /// Full truncated-Fock-space integration.
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Axis {
    /// --tmax is in absolute time units.
    Absolute,
    /// --tmax is given as g_b·t.
    Dimensionless,
}

#[derive(Debug, Clone, Args)]
#[command(args_override_self = true, allow_negative_numbers = true)]
pub struct ScanArgs {
    #[arg(long, default_value = "AB", value_parser = parse_family)]
    pub family: BellFamily,
    /// Mixing angle θ of the initial partial Bell state.
    #[arg(long, default_value = "pi/4", value_parser = parse_angle)]
    pub theta: f64,
    #[command(flatten)]
    pub coupling: CouplingArgs,
    /// End of the time grid (see --axis).
    #[arg(long, value_parser = parse_angle)]
    pub tmax: f64,
    /// Number of grid points, both ends included.
    #[arg(long, default_value_t = 1001)]
    pub points: usize,
    #[arg(long, value_enum, default_value_t = Mode::Closed)]
    pub mode: Mode,
    #[arg(long, value_enum, default_value_t = Axis::Absolute)]
    pub axis: Axis,
    /// Photon cutoff for --mode oracle.
    #[arg(long, default_value_t = 2)]
    pub cutoff: usize,
    /// Integration step for --mode oracle [default: 1e-3/max(ga, gb)].
    #[arg(long)]
    pub dt: Option<f64>,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
#[command(args_override_self = true, allow_negative_numbers = true)]
pub struct PeriodArgs {
    #[arg(long, default_value = "AB", value_parser = parse_family)]
    pub family: BellFamily,
    #[command(flatten)]
    pub coupling: CouplingArgs,
    /// Relative tolerance for accepting a rational approximation of ga/gb.
    #[arg(long, default_value_t = djc_core::DEFAULT_RATIO_TOL)]
    pub tol: f64,
    /// Largest denominator tried.
    #[arg(long, default_value_t = djc_core::DEFAULT_MAX_DEN)]
    pub max_den: u64,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Closed form against the subspace and full-space integrators.
    Oracle,
    /// Half-period shift identities for an integer coupling ratio.
    Shift,
    /// Excitation-number conservation in the full truncated space.
    Conservation,
    All,
}

#[derive(Debug, Clone, Args)]
#[command(args_override_self = true, allow_negative_numbers = true)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    #[command(flatten)]
    pub coupling: CouplingArgs,
    /// Integer ratio ga/gb for the shift suite (sets ga = ratio·gb).
    #[arg(long)]
    pub ratio: Option<u32>,
    #[arg(long, default_value = "pi/6", value_parser = parse_angle)]
    pub theta: f64,
    #[arg(long, default_value_t = djc_core::oracle::DEFAULT_CUTOFF)]
    pub cutoff: usize,
    /// Integration step [default: 1e-3/max(ga, gb)].
    #[arg(long)]
    pub dt: Option<f64>,
    /// Integration span [default: 20π/min(ga, gb)].
    #[arg(long, value_parser = parse_angle)]
    pub tmax: Option<f64>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
#[command(args_override_self = true, allow_negative_numbers = true)]
pub struct FigureArgs {
    /// fig2, fig3, fig4 or fig5.
    pub name: String,
    /// Output directory [default: $DJC_OUT_DIR, else the current directory].
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Grid points per curve over g·t ∈ [0, --gt-max].
    #[arg(long, default_value_t = 2001)]
    pub points: usize,
    #[arg(long, default_value = "4pi", value_parser = parse_angle)]
    pub gt_max: f64,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

fn parse_family(s: &str) -> Result<BellFamily, String> {
    s.parse().map_err(|e: djc_core::Error| e.to_string())
}

/// Parses a real number or a multiple of π such as `pi/4`, `-2pi/3`,
/// `3*pi`, `0.5pi`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let s = s.trim();
    if let Ok(v) = s.parse::<f64>() {
        return if v.is_finite() { Ok(v) } else { Err(format!("{s:?} is not finite")) };
    }
    let lower = s.to_ascii_lowercase();
    let bad = || format!("cannot parse {s:?} as a number or multiple of pi");
    let (num, den) = match lower.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (lower.as_str(), None),
    };
    let coeff = num.strip_suffix("pi").ok_or_else(bad)?.trim_end_matches('*').trim();
    let coeff = match coeff {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    let den = match den {
        Some(d) => d.parse::<f64>().map_err(|_| bad())?,
        None => 1.0,
    };
    let v = coeff * std::f64::consts::PI / den;
    if v.is_finite() && den != 0.0 {
        Ok(v)
    } else {
        Err(bad())
    }
}

/// Splices `--config FILE` contents in front of the explicit flags so that
/// the command line wins (each flag overrides earlier occurrences).
pub fn expand_config(args: Vec<String>) -> Result<Vec<String>, CliError> {
    let mut rest = Vec::with_capacity(args.len());
    let mut config: Option<String> = None;
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            let path = it
                .next()
                .ok_or_else(|| CliError::Usage("--config requires a file path".into()))?;
            config = Some(path);
        } else if let Some(path) = a.strip_prefix("--config=") {
            config = Some(path.to_string());
        } else {
            rest.push(a);
        }
    }
    let Some(path) = config else {
        return Ok(rest);
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| CliError::Io(format!("cannot read config {path}: {e}")))?;
    let mut from_file = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("{path}:{}: expected key=value, got {line:?}", lineno + 1))
        })?;
        let key = k.trim().replace('_', "-");
        if key.is_empty() {
            return Err(CliError::Usage(format!("{path}:{}: empty key", lineno + 1)));
        }
        from_file.push(format!("--{key}"));
        from_file.push(v.trim().to_string());
    }
    // program name and subcommand stay in front
    let split = rest.len().min(2);
    let mut out: Vec<String> = rest[..split].to_vec();
    out.extend(from_file);
    out.extend_from_slice(&rest[split..]);
    Ok(out)
}
