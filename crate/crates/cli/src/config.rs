//! Run configuration: the JSON file layout, flag overrides and validation.

use std::fs;
use std::path::{Path, PathBuf};

use mindyn::channels::{ChannelFamily, ChannelSpec, SweepParam};
use mindyn::states::BellDiagonalCoeffs;
use mindyn::tolerances::DEFAULT_GRID_POINTS;
use serde::{Deserialize, Serialize};

use crate::args::{OutputFormat, RunOverrides};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridConfig {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    pub format: OutputFormat,
}

/// A fully resolved run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub initial_c: [f64; 3],
    pub channel: ChannelSpec,
    pub grid: GridConfig,
    pub output: OutputConfig,
    pub variational_check: bool,
}

/// What a config file may contain. Everything is optional so that flags can
/// fill the gaps.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub initial_c: Option<[f64; 3]>,
    pub channel: Option<ChannelSpec>,
    pub grid: Option<PartialGrid>,
    pub output: Option<PartialOutput>,
    pub variational_check: Option<bool>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialGrid {
    pub start: Option<f64>,
    pub stop: Option<f64>,
    pub points: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialOutput {
    pub path: Option<PathBuf>,
    pub format: Option<OutputFormat>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Validation(format!("bad config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

/// Flags that apply to every subcommand.
#[derive(Debug, Clone, Default)]
pub struct GlobalOverrides {
    pub output: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub variational_check: bool,
}

fn apply_channel_overrides(base: Option<ChannelSpec>, o: &RunOverrides) -> Result<ChannelSpec, CliError> {
    let mut spec = match (base, o.family) {
        (Some(mut s), Some(f)) => {
            s.family = f;
            s
        }
        (Some(s), None) => s,
        (None, Some(f)) => ChannelSpec::new(f),
        (None, None) => {
            return Err(CliError::Validation(
                "no channel given (config `channel` or --family)".into(),
            ))
        }
    };
    let fields = [
        (&mut spec.p, o.p),
        (&mut spec.alpha, o.alpha),
        (&mut spec.beta, o.beta),
        (&mut spec.gamma, o.gamma),
        (&mut spec.gamma_rate, o.gamma_rate),
        (&mut spec.equilibrium_p, o.equilibrium_p),
    ];
    for (slot, value) in fields {
        if value.is_some() {
            *slot = value;
        }
    }
    Ok(spec)
}

fn hybrid_like(family: ChannelFamily) -> bool {
    !matches!(family, ChannelFamily::Gad | ChannelFamily::Depolarizing)
}

/// Merges a config file with flag overrides and validates the result.
pub fn resolve(file: ConfigFile, o: &RunOverrides, g: &GlobalOverrides) -> Result<RunConfig, CliError> {
    let initial_c = match (&o.initial, file.initial_c) {
        (Some(v), _) => [v[0], v[1], v[2]],
        (None, Some(c)) => c,
        (None, None) => {
            return Err(CliError::Validation(
                "no initial state given (config `initial_c` or --initial)".into(),
            ))
        }
    };
    let channel = apply_channel_overrides(file.channel, o)?;
    channel.validate()?;
    channel.ensure_bell_preserving()?;

    let (lo, hi) = channel.natural_range();
    let pg = file.grid.unwrap_or_default();
    let grid = GridConfig {
        start: o.start.or(pg.start).unwrap_or(lo),
        stop: o.stop.or(pg.stop).unwrap_or(hi),
        points: o.points.or(pg.points).unwrap_or(DEFAULT_GRID_POINTS),
    };

    let po = file.output.unwrap_or_default();
    let output = OutputConfig {
        path: g.output.clone().or(po.path),
        format: g.format.or(po.format).unwrap_or(OutputFormat::Csv),
    };

    let config = RunConfig {
        initial_c,
        channel,
        grid,
        output,
        variational_check: g.variational_check || file.variational_check.unwrap_or(false),
    };
    config.validate()?;
    Ok(config)
}

impl RunConfig {
    pub fn initial(&self) -> BellDiagonalCoeffs {
        BellDiagonalCoeffs::from_array(self.initial_c)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.initial().ensure_physical()?;
        self.channel.validate()?;
        self.channel.ensure_bell_preserving()?;
        let g = self.grid;
        if g.points < 2 {
            return Err(CliError::Validation(format!(
                "grid needs at least 2 points, got {}",
                g.points
            )));
        }
        if !g.start.is_finite() || !g.stop.is_finite() || g.start >= g.stop {
            return Err(CliError::Validation(format!(
                "grid start {} must be below stop {}",
                g.start, g.stop
            )));
        }
        let param = self.channel.sweep_param();
        let upper = if param == SweepParam::T { f64::INFINITY } else { 1.0 };
        if g.start < 0.0 || g.stop > upper {
            return Err(CliError::Validation(format!(
                "grid [{}, {}] leaves the valid range of {param}",
                g.start, g.stop
            )));
        }
        if hybrid_like(self.channel.family) && self.channel.gamma_rate.is_some() {
            return Err(CliError::Validation(format!(
                "{} has no time axis",
                self.channel.family
            )));
        }
        Ok(())
    }

    pub fn grid_values(&self) -> Result<Vec<f64>, CliError> {
        Ok(mindyn::dynamics::uniform_grid(
            self.grid.start,
            self.grid.stop,
            self.grid.points,
        )?)
    }
}
