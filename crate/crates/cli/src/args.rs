use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::SampleArc;

#[derive(Debug, Parser)]
#[command(name = "knot-slope", version, about = "Slopes of knot group representations and A-polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: GlobalOpts,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Relator tolerance for `slope` and `scan`, deviation bound for `verify`.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Relative rank cutoff for singular values.
    #[arg(long, global = true)]
    pub rank_tol: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 25)]
    pub samples: usize,
    /// Sampling box `r0,r1,t0,t1` for `M = r e^{i theta}`.
    #[arg(long, global = true, default_value = "1.1,2,0.1,1.0", value_parser = crate::config::parse_arc)]
    pub arc: SampleArc,
    /// Append the abelian factor `L - 1` to computed A-polynomials.
    #[arg(long, global = true)]
    pub with_reducible: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Slope of every Riley representation at one meridian eigenvalue.
    Slope {
        /// Presentation file or bundled name (`trefoil`, `figure-eight`).
        file: String,
        /// Meridian eigenvalue, e.g. `2`, `1+0.5i` or `1.3,0.2`.
        #[arg(short = 'm', long = "m", allow_hyphen_values = true)]
        m: String,
    },
    /// Slopes over seeded samples of `M`, with per-component statistics.
    Scan { file: String },
    /// A-polynomial, Newton polygon and ideal-point slopes.
    Apoly { file: String },
    /// Compare the Fox-calculus slope with the logarithmic Gauss map.
    Verify {
        file: String,
        /// Polynomial to check against (file or inline text) instead of the
        /// computed A-polynomial.
        #[arg(long)]
        poly: Option<String>,
    },
    /// Presentation utilities.
    Presentation {
        #[command(subcommand)]
        action: PresentationCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum PresentationCommand {
    /// Parse, validate and echo a presentation.
    Check { file: String },
}
