use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "stairflow", version, about = "Periodic directions on odd-polygon staircase surfaces")]
pub struct Cli {
    #[command(flatten)]
    pub run: RunArgs,

    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Significant digits for decimal output.
    #[arg(long, global = true, env = "STAIRCASE_PRECISION", default_value_t = 50)]
    pub precision: u32,

    /// Seed for sampled start points.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads for tree enumeration.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Slopes reached by words of sigma matrices up to a depth.
    Slopes {
        #[arg(long, default_value_t = 5)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        depth: u32,
    },
    /// Sector and renormalisation word of a slope.
    Classify {
        #[arg(long, default_value_t = 5)]
        n: u32,
        #[arg(long)]
        slope: String,
        /// Renormalisation step limit.
        #[arg(long, default_value_t = stairflow::sectors::RENORMALIZE_CAP)]
        max_steps: usize,
        /// Run the floating-point classifier instead.
        #[arg(long)]
        numeric: bool,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Compare the sigma tree with the hyperbolic operator tree.
    Equiv {
        #[arg(long, default_value_t = 5)]
        n: u32,
        #[arg(long, default_value_t = 3)]
        depth: u32,
    },
    /// Staircase geometry, optionally drawn as SVG.
    Staircase {
        #[arg(long, default_value_t = 5)]
        n: u32,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Draw rectangle diagonals with slope labels.
        #[arg(long)]
        diagonals: bool,
    },
    /// Straight-line flow from a start point.
    Trace {
        #[arg(long, default_value_t = 5)]
        n: u32,
        #[arg(long)]
        slope: String,
        /// Start point as `x,y` with field-element coordinates.
        #[arg(long)]
        start: Option<String>,
        #[arg(long, default_value_t = stairflow::flow::VERIFY_MAX_CROSSINGS)]
        max_crossings: usize,
        #[arg(long)]
        numeric: bool,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Trace from this many seeded start points instead.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Minimal polynomial of `2 cos(pi/n)`.
    Minpoly {
        #[arg(long, default_value_t = 5)]
        n: u32,
        /// Report every odd n from 5 up to this value.
        #[arg(long)]
        max_n: Option<u32>,
    },
    /// Chebyshev-type polynomials and side lengths.
    Polys {
        #[arg(long, default_value_t = 5)]
        n: u32,
    },
    /// Boundary projection of the polygon vertices.
    Project {
        #[arg(long, default_value_t = 5)]
        n: u32,
    },
    /// Closure, symmetry and tangent identities.
    Identities {
        #[arg(long, default_value_t = 5)]
        n: u32,
        #[arg(long)]
        max_n: Option<u32>,
    },
    /// Diagonal slopes at least one, per n.
    Table1 {
        #[arg(long, default_value_t = 15)]
        max_n: u32,
        /// Fractional digits for the table.
        #[arg(long, default_value_t = 4)]
        places: u32,
    },
}
