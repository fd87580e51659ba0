use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cylinder_compounds::PairKind;

#[derive(Debug, Parser)]
#[command(
    name = "cylcomp",
    version,
    about = "Symmetric compounds of cylinders touching the unit sphere"
)]
pub struct Cli {
    /// Print angles in degrees instead of radians.
    #[arg(long, global = true)]
    pub degrees: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the known constants of the three families.
    Verify,
    /// Sample every orbit branch and the minimum curve as CSV.
    Curve {
        #[arg(long)]
        pair: PairArg,
        #[arg(long, default_value_t = 181)]
        samples: usize,
        /// Output file; stdout if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List maxima, corners and zeros of the minimum curve.
    Critical {
        #[arg(long)]
        pair: PairArg,
    },
    /// List the orbits of edge pairs under the rotation group.
    Orbits {
        #[arg(long)]
        pair: PairArg,
    },
    /// Export a cylinder configuration.
    Compound(CompoundArgs),
    /// Describe the figure formed by intersecting lines at a zero of the
    /// minimum curve.
    Minima {
        #[arg(long)]
        pair: PairArg,
        /// 1-based index of the zero in increasing δ.
        #[arg(long, default_value_t = 1)]
        which: usize,
    },
}

#[derive(Debug, Args)]
pub struct CompoundArgs {
    #[arg(long)]
    pub pair: PairArg,
    /// Angle in radians, or one of delta-max, min-1, min-2, min-3, o6.
    #[arg(long, default_value = "delta-max")]
    pub delta: DeltaSpec,
    /// Cylinder radius, or `auto` for the touching radius.
    #[arg(long, default_value = "auto")]
    pub radius: RadiusSpec,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Half-length of the exported cylinders (OBJ only).
    #[arg(long, default_value_t = 10.0)]
    pub length: f64,
    /// Also export the unit sphere (OBJ only).
    #[arg(long)]
    pub sphere: bool,
    /// Allow radii at which cylinders overlap.
    #[arg(long)]
    pub force: bool,
    /// Output file; stdout if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Obj,
    Csv,
}

/// Pair names accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairArg(pub PairKind);

impl FromStr for PairArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.parse::<PairKind>()
            .map(PairArg)
            .map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeltaSpec {
    Value(f64),
    DeltaMax,
    Min(usize),
    O6,
}

impl FromStr for DeltaSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "delta-max" => Ok(DeltaSpec::DeltaMax),
            "o6" => Ok(DeltaSpec::O6),
            "min-1" => Ok(DeltaSpec::Min(1)),
            "min-2" => Ok(DeltaSpec::Min(2)),
            "min-3" => Ok(DeltaSpec::Min(3)),
            _ => s
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .map(DeltaSpec::Value)
                .ok_or_else(|| {
                    format!("'{s}' is not an angle or one of delta-max, min-1, min-2, min-3, o6")
                }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadiusSpec {
    Value(f64),
    Auto,
}

impl FromStr for RadiusSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "auto" {
            return Ok(RadiusSpec::Auto);
        }
        match s.parse::<f64>() {
            Ok(r) if r.is_finite() && r >= 0.0 => Ok(RadiusSpec::Value(r)),
            _ => Err(format!("'{s}' is not a non-negative radius or 'auto'")),
        }
    }
}
