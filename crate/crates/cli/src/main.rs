mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "spdc", version, about = "Spatial correlations of SPDC photon pairs from a partially coherent pump")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Common {
    /// Parameter file of `key = value` lines.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ModelArg {
    Sinc,
    Gauss,
    Profile,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum SpaceArg {
    Position,
    Momentum,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum CoordsArg {
    Lab,
    Rotated,
}

#[derive(Subcommand)]
enum Command {
    /// Print the four per-component variances, both witnesses and the classification.
    Variances {
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate a joint position or momentum density on a grid.
    Joint {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "momentum")]
        space: SpaceArg,
        #[arg(long, value_enum, default_value = "lab")]
        coords: CoordsArg,
        /// Cells per axis.
        #[arg(long, default_value_t = 256)]
        grid: usize,
        #[arg(long, value_enum, default_value = "gauss")]
        model: ModelArg,
        /// CSV of z_start,z_end,chi2 rows (required for --model profile).
        #[arg(long)]
        profile: Option<PathBuf>,
        /// First axis range `min,max`; defaults to ±5 widths.
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        axis0: Option<(f64, f64)>,
        /// Second axis range `min,max`.
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        axis1: Option<(f64, f64)>,
    },
    /// Sweep the (w/l_c, sqrt(L/(k_p w^2))) plane and classify each cell.
    PhaseDiagram {
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long, default_value_t = 3.0)]
        x_max: f64,
        #[arg(long, default_value_t = 4.0)]
        y_max: f64,
        #[arg(long, default_value_t = 301)]
        nx: usize,
        #[arg(long, default_value_t = 400)]
        ny: usize,
        #[arg(long, default_value_t = spdc_core::params::DEFAULT_ALPHA)]
        alpha: f64,
    },
    /// Tabulate the phase-matching function over the mismatch.
    Phasematch {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "sinc")]
        model: ModelArg,
        #[arg(long)]
        profile: Option<PathBuf>,
        /// Largest mismatch in rad/µm; defaults to 12π/L.
        #[arg(long)]
        dk_max: Option<f64>,
        #[arg(long, default_value_t = 1001)]
        n: usize,
    },
    /// Run every oracle cross-check; exit 1 if any fails.
    Validate {
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or("expected `min,max`")?;
    let a: f64 = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b: f64 = b.trim().parse().map_err(|e| format!("{e}"))?;
    Ok((a, b))
}

fn init_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("SPDC_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| format!("SPDC_THREADS must be a positive integer, got {v:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let result = match cli.command {
        Command::Variances { common } => commands::variances(&common),
        Command::Joint {
            common,
            space,
            coords,
            grid,
            model,
            profile,
            axis0,
            axis1,
        } => commands::joint(&common, space, coords, grid, model, profile.as_deref(), [axis0, axis1]),
        Command::PhaseDiagram {
            out,
            x_max,
            y_max,
            nx,
            ny,
            alpha,
        } => commands::phase_diagram(&out, x_max, y_max, nx, ny, alpha),
        Command::Phasematch {
            common,
            model,
            profile,
            dk_max,
            n,
        } => commands::phasematch(&common, model, profile.as_deref(), dk_max, n),
        Command::Validate { out } => commands::validate(&out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
