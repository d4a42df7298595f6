pub mod commands;
pub mod formats;

use std::path::PathBuf;

use bary_core::{PolarGrid, SolverConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::execute;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] bary_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("{path}: {source}")]
    File { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 3 for solver non-convergence, 2 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_solver_failure() => 3,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "bary",
    version,
    about = "Barycentric extensions, dilatations and Carleson diagnostics"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Quadrature points on the circle
    #[arg(long, global = true, default_value_t = 4096)]
    pub quad_points: usize,
    /// Newton residual tolerance
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub newton_tol: f64,
    /// Seed for randomized Möbius maps
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output path (stdout when absent)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl Global {
    pub fn solver(&self) -> SolverConfig {
        SolverConfig {
            quad_points: self.quad_points,
            newton_tol: self.newton_tol,
            ..SolverConfig::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Direct,
    Fourier,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureKind {
    /// Lebesgue area on the grid
    Area,
    /// |de(b)|² / (1 − |z|²)
    FeffermanStein,
    /// |μ|² / (1 − |z|²) for the flow of b at time t
    Dilatation,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Barycentric extension of a circle homeomorphism on a polar grid
    Extend {
        /// Homeomorphism: JSON description or `u,phi` CSV
        #[arg(long)]
        homeo: PathBuf,
        /// r_max,nr,ntheta
        #[arg(long, value_parser = parse_grid, default_value = "0.95,32,64")]
        grid: PolarGrid,
    },
    /// Export a homeomorphism as `u,phi` CSV on the quadrature grid
    Homeo {
        #[arg(long)]
        homeo: PathBuf,
    },
    /// Dilatation field of the flow of b at time t
    Dilatation {
        #[arg(long)]
        b: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, value_parser = parse_grid, default_value = "0.95,32,64")]
        grid: PolarGrid,
    },
    /// Gateaux differential de(b) on a polar grid
    Gateaux {
        #[arg(long)]
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = Route::Direct)]
        route: Route,
        #[arg(long, value_parser = parse_grid, default_value = "0.95,32,64")]
        grid: PolarGrid,
    },
    /// Finite-difference check of the Gateaux differential at one point
    GateauxCheck {
        #[arg(long)]
        b: PathBuf,
        /// re,im
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: [f64; 2],
        /// Strictly decreasing list, e.g. 1e-2,1e-3
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        t: Vec<f64>,
    },
    /// Sample a measure on a polar grid as CSV
    Measure {
        #[arg(long, value_enum)]
        kind: MeasureKind,
        #[arg(long)]
        b: Option<PathBuf>,
        #[arg(long, allow_negative_numbers = true)]
        t: Option<f64>,
        #[arg(long, value_parser = parse_grid, default_value = "1,200,256")]
        grid: PolarGrid,
    },
    /// Carleson norm and vanishing profile of a measure CSV
    Carleson {
        #[arg(long)]
        measure: PathBuf,
        /// Boundary centers
        #[arg(long, default_value_t = 256)]
        centers: usize,
        /// Ratio of the geometric radius ladder
        #[arg(long, default_value_t = std::f64::consts::SQRT_2)]
        ratio: f64,
        /// Smallest ladder radius (default: 2(1 − outermost node radius))
        #[arg(long)]
        r_min: Option<f64>,
    },
    /// Dyadic BMO norm of `u,f` samples on a uniform circle grid
    Bmo {
        #[arg(long)]
        f: PathBuf,
    },
    /// Schwarzian derivative of a series at a point
    Schwarzian {
        #[arg(long)]
        series: PathBuf,
        /// re,im
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: [f64; 2],
        /// Also report the norms of the series read as a quadratic differential
        #[arg(long)]
        norms: bool,
        #[arg(long, value_parser = parse_grid, default_value = "1,128,256")]
        grid: PolarGrid,
    },
}

fn parse_numbers<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(format!("expected {N} comma-separated values, got {}", parts.len()));
    }
    let mut out = [0.0; N];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = p.parse().map_err(|e| format!("'{p}': {e}"))?;
    }
    Ok(out)
}

fn parse_complex(s: &str) -> Result<[f64; 2], String> {
    parse_numbers::<2>(s)
}

fn parse_grid(s: &str) -> Result<PolarGrid, String> {
    let [r_max, nr, ntheta] = parse_numbers::<3>(s)?;
    let count = |v: f64| {
        if v >= 1.0 && v.fract() == 0.0 {
            Ok(v as usize)
        } else {
            Err(format!("grid sizes must be positive integers, got {v}"))
        }
    };
    PolarGrid::new(r_max, count(nr)?, count(ntheta)?).map_err(|e| e.to_string())
}
