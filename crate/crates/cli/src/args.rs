use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mindyn::channels::ChannelFamily;
use mindyn::dynamics::MeasureKind;
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(
    name = "mindyn",
    version,
    about = "Entanglement and measurement-induced nonlocality of two-qubit states under local noise"
)]
pub struct Cli {
    /// JSON run configuration; flags override its values.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Write output here instead of stdout (replaced atomically).
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,

    /// Also evaluate MIN and F-MIN by direct optimization and report the
    /// largest deviation from the closed forms.
    #[arg(long, global = true)]
    pub variational_check: bool,

    /// Compute sweep rows on all cores.
    #[arg(long, global = true)]
    pub parallel: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate all measures for one correlation triple.
    #[command(allow_negative_numbers = true)]
    Measure {
        /// c1 c2 c3; defaults to the config's initial_c.
        #[arg(value_name = "C", num_args = 0..=3)]
        c: Vec<f64>,
    },
    /// Evolve the initial state along the grid and emit one row per point.
    Sweep(#[command(flatten)] RunOverrides),
    /// Locate sudden death, dark points and revivals.
    Critical {
        /// Restrict to one measure; all three by default.
        #[arg(long)]
        measure: Option<MeasureKind>,
        #[command(flatten)]
        overrides: RunOverrides,
    },
    /// Check a configuration without running it.
    Validate(#[command(flatten)] RunOverrides),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunOverrides {
    /// Initial correlation triple.
    #[arg(long, num_args = 3, value_names = ["C1", "C2", "C3"], allow_negative_numbers = true)]
    pub initial: Option<Vec<f64>>,

    #[arg(long)]
    pub family: Option<ChannelFamily>,

    /// Operating flip probability.
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    /// Phase-flip weight for hybrid, damping strength otherwise.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Decay rate; switches damping channels to a time axis.
    #[arg(long)]
    pub gamma_rate: Option<f64>,
    #[arg(long)]
    pub equilibrium_p: Option<f64>,

    #[arg(long, allow_negative_numbers = true)]
    pub start: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub stop: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
}
