//! The four subcommands. Each validates its inputs completely before doing
//! any computation and returns a [`Report`] for [`crate::output::emit`].

use std::fmt::Write;

use mindyn::channels::ChannelFamily;
use mindyn::dynamics::{
    find_dark_points_on, hybrid_pc, sweep, CriticalKind, CriticalPoint, MeasureKind, SweepOptions, SweepResult,
};
use mindyn::format::{fmt_num, sweep_csv};
use mindyn::measures::{concurrence_bd, fmin_bd, fmin_variational, min_bd, min_variational};
use mindyn::optimize::OptimizerOptions;
use mindyn::states::{bell_eigenvalues, BellDiagonalCoeffs, DensityMatrix};
use serde::Serialize;

use crate::args::{Cli, Command, OutputFormat, RunOverrides};
use crate::config::{resolve, ConfigFile, GlobalOverrides, RunConfig};
use crate::output::Report;
use crate::CliError;

/// Flat CSV/JSON row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RowRecord {
    pub param: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub concurrence: f64,
    pub min: f64,
    pub fmin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunDocument {
    pub config: RunConfig,
    pub rows: Vec<RowRecord>,
    pub critical_points: Vec<CriticalPoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureRecord {
    pub c: [f64; 3],
    pub physical: bool,
    /// Bell-basis weights `[μ00, μ01, μ10, μ11]`.
    pub mu: [f64; 4],
    pub gamma_norm_sqr: f64,
    pub concurrence: f64,
    pub min: f64,
    pub fmin: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_variational: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fmin_variational: Option<f64>,
}

fn rows_of(result: &SweepResult) -> Vec<RowRecord> {
    result
        .rows
        .iter()
        .map(|r| RowRecord {
            param: r.param,
            c1: r.c.c1,
            c2: r.c.c2,
            c3: r.c.c3,
            concurrence: r.concurrence,
            min: r.min,
            fmin: r.fmin,
        })
        .collect()
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(format!("cannot encode JSON: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn load_file(cli: &Cli) -> Result<ConfigFile, CliError> {
    match &cli.config {
        Some(path) => ConfigFile::load(path),
        None => Ok(ConfigFile::default()),
    }
}

fn globals(cli: &Cli) -> GlobalOverrides {
    GlobalOverrides {
        output: cli.output.clone(),
        format: cli.format,
        variational_check: cli.variational_check,
    }
}

/// Format the user asked for, if any, from the flag or the config file.
fn requested_format(cli: &Cli, file: &ConfigFile) -> Option<OutputFormat> {
    cli.format.or(file.output.as_ref().and_then(|o| o.format))
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Measure { c } => cmd_measure(cli, c),
        Command::Sweep(o) => cmd_sweep(cli, o),
        Command::Critical { measure, overrides } => cmd_critical(cli, overrides, *measure),
        Command::Validate(o) => cmd_validate(cli, o),
    }
}

pub fn measure_record(c: BellDiagonalCoeffs, variational: bool) -> Result<MeasureRecord, CliError> {
    c.ensure_physical()?;
    let (min_v, fmin_v) = if variational {
        let rho = DensityMatrix::from_bell_coeffs(c);
        let opts = OptimizerOptions::default();
        (
            Some(min_variational(&rho, &opts)?.value),
            Some(fmin_variational(&rho, &opts)?.value),
        )
    } else {
        (None, None)
    };
    Ok(MeasureRecord {
        c: c.to_array(),
        physical: true,
        mu: bell_eigenvalues(c),
        gamma_norm_sqr: (1.0 + c.norm_sqr()) / 4.0,
        concurrence: concurrence_bd(c)?.value,
        min: min_bd(c)?.value,
        fmin: fmin_bd(c)?.value,
        min_variational: min_v,
        fmin_variational: fmin_v,
    })
}

fn cmd_measure(cli: &Cli, c: &[f64]) -> Result<Report, CliError> {
    let file = load_file(cli)?;
    let triple = match (c.len(), file.initial_c) {
        (3, _) => [c[0], c[1], c[2]],
        (0, Some(init)) => init,
        (0, None) => {
            return Err(CliError::Validation(
                "measure needs c1 c2 c3 (or a config with initial_c)".into(),
            ))
        }
        (n, _) => return Err(CliError::Validation(format!("measure takes 3 coefficients, got {n}"))),
    };
    let variational = cli.variational_check || file.variational_check.unwrap_or(false);
    let rec = measure_record(BellDiagonalCoeffs::from_array(triple), variational)?;
    let path = cli.output.clone().or(file.output.as_ref().and_then(|o| o.path.clone()));

    let body = match requested_format(cli, &file) {
        Some(OutputFormat::Json) => to_json(&rec)?,
        Some(OutputFormat::Csv) => {
            let vals = [rec.c[0], rec.c[1], rec.c[2], rec.concurrence, rec.min, rec.fmin];
            let line: Vec<String> = vals.iter().map(|&v| fmt_num(v)).collect();
            format!("c1,c2,c3,concurrence,min,fmin\n{}\n", line.join(","))
        }
        None => measure_text(&rec),
    };
    Ok(Report::new(body, path))
}

fn measure_text(rec: &MeasureRecord) -> String {
    let mut s = String::new();
    let list = |v: &[f64]| v.iter().map(|&x| fmt_num(x)).collect::<Vec<_>>().join(" ");
    writeln!(s, "c={}", list(&rec.c)).unwrap();
    writeln!(s, "physical={}", if rec.physical { "yes" } else { "no" }).unwrap();
    writeln!(s, "mu={}", list(&rec.mu)).unwrap();
    writeln!(s, "gamma_norm_sqr={}", fmt_num(rec.gamma_norm_sqr)).unwrap();
    writeln!(s, "concurrence={}", fmt_num(rec.concurrence)).unwrap();
    writeln!(s, "min={}", fmt_num(rec.min)).unwrap();
    writeln!(s, "fmin={}", fmt_num(rec.fmin)).unwrap();
    if let (Some(m), Some(f)) = (rec.min_variational, rec.fmin_variational) {
        writeln!(s, "min_variational={}", fmt_num(m)).unwrap();
        writeln!(s, "fmin_variational={}", fmt_num(f)).unwrap();
    }
    s
}

fn run_sweep(cli: &Cli, cfg: &RunConfig) -> Result<SweepResult, CliError> {
    let opts = SweepOptions {
        parallel: cli.parallel,
        variational_check: cfg.variational_check,
        ..SweepOptions::default()
    };
    Ok(sweep(&cfg.channel, cfg.initial(), &cfg.grid_values()?, &opts)?)
}

fn critical_points(cfg: &RunConfig, kinds: &[MeasureKind]) -> Result<Vec<CriticalPoint>, CliError> {
    let grid = cfg.grid_values()?;
    let mut all = Vec::new();
    for &kind in kinds {
        all.extend(find_dark_points_on(&cfg.channel, cfg.initial(), kind, &grid)?);
    }
    Ok(all)
}

fn variational_note(result: &SweepResult) -> Option<String> {
    result
        .variational_deviation
        .map(|d| format!("variational check: max |closed - variational| = {}", fmt_num(d)))
}

fn cmd_sweep(cli: &Cli, o: &RunOverrides) -> Result<Report, CliError> {
    let file = load_file(cli)?;
    let cfg = resolve(file, o, &globals(cli))?;
    let result = run_sweep(cli, &cfg)?;
    let body = match cfg.output.format {
        OutputFormat::Csv => sweep_csv(&result),
        OutputFormat::Json => to_json(&RunDocument {
            config: cfg.clone(),
            rows: rows_of(&result),
            critical_points: critical_points(&cfg, &MeasureKind::ALL)?,
        })?,
    };
    let mut report = Report::new(body, cfg.output.path.clone());
    report.notes.extend(variational_note(&result));
    Ok(report)
}

fn cmd_critical(cli: &Cli, o: &RunOverrides, measure: Option<MeasureKind>) -> Result<Report, CliError> {
    let file = load_file(cli)?;
    let format = requested_format(cli, &file);
    let cfg = resolve(file, o, &globals(cli))?;
    let kinds: Vec<MeasureKind> = match measure {
        Some(k) => vec![k],
        None => MeasureKind::ALL.to_vec(),
    };
    let points = critical_points(&cfg, &kinds)?;

    let body = match format {
        Some(OutputFormat::Json) => {
            let result = run_sweep(cli, &cfg)?;
            to_json(&RunDocument {
                config: cfg.clone(),
                rows: rows_of(&result),
                critical_points: points,
            })?
        }
        Some(OutputFormat::Csv) => {
            let mut s = String::from("measure,kind,location,bracket_lo,bracket_hi\n");
            for p in &points {
                writeln!(
                    s,
                    "{},{},{},{},{}",
                    p.measure,
                    p.kind,
                    fmt_num(p.location),
                    fmt_num(p.bracket.0),
                    fmt_num(p.bracket.1)
                )
                .unwrap();
            }
            s
        }
        None => critical_text(&cfg, &kinds, &points)?,
    };
    Ok(Report::new(body, cfg.output.path.clone()))
}

fn critical_text(cfg: &RunConfig, kinds: &[MeasureKind], points: &[CriticalPoint]) -> Result<String, CliError> {
    let mut s = String::new();
    let param = cfg.channel.sweep_param();
    for &kind in kinds {
        let mine: Vec<&CriticalPoint> = points.iter().filter(|p| p.measure == kind).collect();
        if mine.is_empty() {
            writeln!(s, "{kind}: no events").unwrap();
            continue;
        }
        for p in mine {
            let revival = if p.kind == CriticalKind::DarkPoint {
                " revival=yes"
            } else {
                ""
            };
            writeln!(
                s,
                "{kind}: {} {param}={} bracket=[{}, {}]{revival}",
                p.kind,
                fmt_num(p.location),
                fmt_num(p.bracket.0),
                fmt_num(p.bracket.1)
            )
            .unwrap();
        }
    }
    if cfg.channel.family == ChannelFamily::Hybrid {
        let w = cfg.channel.weights()?;
        let pc = hybrid_pc(cfg.initial(), w.alpha, w.beta, w.gamma)?;
        for (sign, b) in [("+", pc.plus), ("-", pc.minus)] {
            let range = if b.in_range { "in range" } else { "out of range" };
            writeln!(s, "hybrid_pc{sign}={} ({range})", fmt_num(b.value)).unwrap();
        }
    }
    Ok(s)
}

fn cmd_validate(cli: &Cli, o: &RunOverrides) -> Result<Report, CliError> {
    let cfg = resolve(load_file(cli)?, o, &globals(cli))?;
    let c = cfg.initial_c.map(fmt_num).join(" ");
    let body = format!(
        "ok: {} over {} in [{}, {}] with {} points, initial c = {c}\n",
        cfg.channel.family,
        cfg.channel.sweep_param(),
        fmt_num(cfg.grid.start),
        fmt_num(cfg.grid.stop),
        cfg.grid.points
    );
    Ok(Report::new(body, None))
}
