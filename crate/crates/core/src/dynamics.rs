//! Measure curves along a noise parameter and the events on them:
//! entanglement sudden death, dark points where a measure touches zero,
//! and the revival that follows.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channels::{ChannelSpec, HybridWeights, SweepParam};
use crate::error::{Error, Result};
use crate::measures::{self, concurrence_bd, fmin_bd, min_bd};
use crate::optimize::OptimizerOptions;
use crate::states::{BellDiagonalCoeffs, DensityMatrix};
use crate::tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureKind {
    Concurrence,
    Min,
    Fmin,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 3] = [MeasureKind::Concurrence, MeasureKind::Min, MeasureKind::Fmin];

    /// Closed-form value on a physical Bell-diagonal triple.
    pub fn evaluate_bd(self, c: BellDiagonalCoeffs) -> Result<f64> {
        let r = match self {
            MeasureKind::Concurrence => concurrence_bd(c)?,
            MeasureKind::Min => min_bd(c)?,
            MeasureKind::Fmin => fmin_bd(c)?,
        };
        Ok(r.value)
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MeasureKind::Concurrence => "concurrence",
            MeasureKind::Min => "min",
            MeasureKind::Fmin => "fmin",
        })
    }
}

impl std::str::FromStr for MeasureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "concurrence" => Ok(Self::Concurrence),
            "min" => Ok(Self::Min),
            "fmin" => Ok(Self::Fmin),
            other => Err(Error::BadSpec(format!("unknown measure `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub param: f64,
    pub c: BellDiagonalCoeffs,
    pub concurrence: f64,
    pub min: f64,
    pub fmin: f64,
}

impl SweepRow {
    pub fn measure(&self, kind: MeasureKind) -> f64 {
        match kind {
            MeasureKind::Concurrence => self.concurrence,
            MeasureKind::Min => self.min,
            MeasureKind::Fmin => self.fmin,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub param_name: SweepParam,
    pub rows: Vec<SweepRow>,
    /// Largest `|closed − variational|` over MIN and F-MIN, when checked.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variational_deviation: Option<f64>,
}

impl SweepResult {
    pub fn grid(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.param).collect()
    }

    pub fn column(&self, kind: MeasureKind) -> Vec<f64> {
        self.rows.iter().map(|r| r.measure(kind)).collect()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SweepOptions {
    pub parallel: bool,
    pub variational_check: bool,
    pub optimizer: OptimizerOptions,
}

/// `points` evenly spaced values from `start` to `stop`, both endpoints exact.
pub fn uniform_grid(start: f64, stop: f64, points: usize) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::BadGrid(format!("need at least 2 points, got {points}")));
    }
    if !start.is_finite() || !stop.is_finite() || start >= stop {
        return Err(Error::BadGrid(format!("need start < stop, got [{start}, {stop}]")));
    }
    let last = points - 1;
    Ok((0..points)
        .map(|i| {
            if i == last {
                stop
            } else {
                start + (stop - start) * (i as f64 / last as f64)
            }
        })
        .collect())
}

/// Default 1001-point grid over the channel's natural range.
pub fn default_grid(spec: &ChannelSpec) -> Vec<f64> {
    let (lo, hi) = spec.natural_range();
    uniform_grid(lo, hi, tolerances::DEFAULT_GRID_POINTS).expect("natural range is a valid interval")
}

fn check_grid(spec: &ChannelSpec, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::BadGrid("empty grid".into()));
    }
    if grid.windows(2).any(|w| w[0].is_nan() || w[0] >= w[1]) {
        return Err(Error::BadGrid("grid must be strictly ascending".into()));
    }
    let (lo, hi) = spec.natural_range();
    let upper = if spec.sweep_param() == SweepParam::T {
        f64::INFINITY
    } else {
        hi
    };
    if grid[0] < lo || grid[grid.len() - 1] > upper {
        return Err(Error::BadGrid(format!(
            "grid [{}, {}] leaves the {} range [{lo}, {upper}]",
            grid[0],
            grid[grid.len() - 1],
            spec.sweep_param()
        )));
    }
    Ok(())
}

fn evolved(spec: &ChannelSpec, c0: BellDiagonalCoeffs, value: f64) -> Result<BellDiagonalCoeffs> {
    spec.evolve_coeffs(c0, value)?.ensure_physical()
}

/// One measure at one swept value.
pub fn measure_at(spec: &ChannelSpec, c0: BellDiagonalCoeffs, value: f64, kind: MeasureKind) -> Result<f64> {
    kind.evaluate_bd(evolved(spec, c0, value)?)
}

fn sweep_row(spec: &ChannelSpec, c0: BellDiagonalCoeffs, value: f64) -> Result<SweepRow> {
    let c = evolved(spec, c0, value)?;
    Ok(SweepRow {
        param: value,
        c,
        concurrence: concurrence_bd(c)?.value,
        min: min_bd(c)?.value,
        fmin: fmin_bd(c)?.value,
    })
}

fn variational_deviation(row: &SweepRow, opts: &OptimizerOptions) -> Result<f64> {
    let rho = DensityMatrix::from_bell_coeffs(row.c);
    let min = measures::min_variational(&rho, opts)?.value;
    let fmin = measures::fmin_variational(&rho, opts)?.value;
    Ok((min - row.min).abs().max((fmin - row.fmin).abs()))
}

/// Evolves `c0` along `grid` and evaluates all three measures in closed
/// form. The parallel path produces exactly the same rows in grid order.
pub fn sweep(spec: &ChannelSpec, c0: BellDiagonalCoeffs, grid: &[f64], opts: &SweepOptions) -> Result<SweepResult> {
    spec.validate()?;
    spec.ensure_bell_preserving()?;
    c0.ensure_physical()?;
    check_grid(spec, grid)?;

    let rows: Vec<SweepRow> = if opts.parallel {
        grid.par_iter()
            .map(|&v| sweep_row(spec, c0, v))
            .collect::<Result<_>>()?
    } else {
        grid.iter().map(|&v| sweep_row(spec, c0, v)).collect::<Result<_>>()?
    };

    let variational = if opts.variational_check {
        let devs: Vec<f64> = if opts.parallel {
            rows.par_iter()
                .map(|r| variational_deviation(r, &opts.optimizer))
                .collect::<Result<_>>()?
        } else {
            rows.iter()
                .map(|r| variational_deviation(r, &opts.optimizer))
                .collect::<Result<_>>()?
        };
        Some(devs.into_iter().fold(0.0, f64::max))
    } else {
        None
    };

    Ok(SweepResult {
        param_name: spec.sweep_param(),
        rows,
        variational_deviation: variational,
    })
}

/// One branch of the hybrid-channel sudden-death formula.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PcBranch {
    /// `NaN` when the radicand is negative or the denominator vanishes.
    pub value: f64,
    /// Whether `value` lies in `[0, 1]`, i.e. the branch predicts sudden death.
    pub in_range: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HybridPc {
    pub plus: PcBranch,
    pub minus: PcBranch,
}

impl HybridPc {
    /// Earliest in-range branch.
    pub fn active(&self) -> Option<f64> {
        [self.plus, self.minus]
            .iter()
            .filter(|b| b.in_range)
            .map(|b| b.value)
            .min_by(f64::total_cmp)
    }
}

/// Critical flip probabilities of the hybrid channel,
/// `(p_c)_± = 1 − [(1 − α c_± ± γ c₃) / ((α+γ) c_± ∓ 2α c₃)]^{1/2}` with
/// `c_± = |c₁ ± c₂|`. The formula assumes `α = β`; `beta` is only used to
/// validate the weights.
pub fn hybrid_pc(c: BellDiagonalCoeffs, alpha: f64, beta: f64, gamma: f64) -> Result<HybridPc> {
    let w = HybridWeights::new(alpha, beta, gamma)?;
    c.ensure_physical()?;
    let branch = |sign: f64| {
        let c_pm = (c.c1 + sign * c.c2).abs();
        let num = 1.0 - w.alpha * c_pm + sign * c.c3 * w.gamma;
        let den = (w.alpha + w.gamma) * c_pm - sign * 2.0 * w.alpha * c.c3;
        let mut ratio = num / den;
        if (-tolerances::MEASURE_CLAMP..0.0).contains(&ratio) {
            ratio = 0.0;
        }
        let value = if den != 0.0 && ratio >= 0.0 {
            1.0 - ratio.sqrt()
        } else {
            f64::NAN
        };
        PcBranch {
            value,
            in_range: (0.0..=1.0).contains(&value),
        }
    };
    Ok(HybridPc {
        plus: branch(1.0),
        minus: branch(-1.0),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CriticalKind {
    Esd,
    DarkPoint,
    RevivalOnset,
}

impl fmt::Display for CriticalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CriticalKind::Esd => "esd",
            CriticalKind::DarkPoint => "dark_point",
            CriticalKind::RevivalOnset => "revival_onset",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub kind: CriticalKind,
    pub measure: MeasureKind,
    pub location: f64,
    pub bracket: (f64, f64),
}

/// Bisection on a predicate that holds at `lo` and fails at `hi`.
/// Returns the final `(lo, hi)`.
fn bisect<F>(mut lo: f64, mut hi: f64, holds: F) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<bool>,
{
    while hi - lo > tolerances::BISECTION {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if holds(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

/// Golden-section minimization on `[lo, hi]`.
fn golden_min<F>(mut lo: f64, mut hi: f64, f: F) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    for _ in 0..200 {
        if hi - lo <= 1e-13 {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 <= f2 { (x1, f1) } else { (x2, f2) })
}

fn vanished(v: f64) -> bool {
    v < tolerances::VANISHED
}

struct Curve<'a> {
    spec: &'a ChannelSpec,
    c0: BellDiagonalCoeffs,
    kind: MeasureKind,
    grid: &'a [f64],
    values: Vec<f64>,
}

impl<'a> Curve<'a> {
    fn new(spec: &'a ChannelSpec, c0: BellDiagonalCoeffs, grid: &'a [f64], kind: MeasureKind) -> Result<Self> {
        spec.validate()?;
        spec.ensure_bell_preserving()?;
        c0.ensure_physical()?;
        check_grid(spec, grid)?;
        let values = grid
            .iter()
            .map(|&v| measure_at(spec, c0, v, kind))
            .collect::<Result<_>>()?;
        Ok(Self {
            spec,
            c0,
            kind,
            grid,
            values,
        })
    }

    fn at(&self, v: f64) -> Result<f64> {
        measure_at(self.spec, self.c0, v, self.kind)
    }

    fn point(&self, kind: CriticalKind, location: f64, bracket: (f64, f64)) -> CriticalPoint {
        CriticalPoint {
            kind,
            measure: self.kind,
            location,
            bracket,
        }
    }

    /// Sudden death between grid points `i - 1` (alive) and `i` (vanished).
    fn death_between(&self, i: usize) -> Result<CriticalPoint> {
        // walk forward if the first vanished grid point still sits above the
        // bisection threshold
        let mut j = i;
        while j + 1 < self.grid.len() && self.values[j] > tolerances::MEASURE_CLAMP && vanished(self.values[j + 1]) {
            j += 1;
        }
        if self.values[j] > tolerances::MEASURE_CLAMP {
            return Ok(self.point(CriticalKind::Esd, self.grid[i], (self.grid[i - 1], self.grid[i])));
        }
        let (lo, hi) = bisect(self.grid[i - 1], self.grid[j], |v| {
            Ok(self.at(v)? > tolerances::MEASURE_CLAMP)
        })?;
        Ok(self.point(CriticalKind::Esd, hi, (lo, hi)))
    }

    /// Revival between `lo` (vanished) and `hi` (alive).
    fn revival_between(&self, lo: f64, hi: f64) -> Result<CriticalPoint> {
        let (lo, hi) = bisect(lo, hi, |v| Ok(vanished(self.at(v)?)))?;
        Ok(self.point(CriticalKind::RevivalOnset, lo, (lo, hi)))
    }

    fn dark_point(&self, lo: f64, hi: f64) -> Result<CriticalPoint> {
        let (x, _) = golden_min(lo, hi, |v| self.at(v))?;
        Ok(self.point(CriticalKind::DarkPoint, x, (lo, hi)))
    }
}

/// First sudden death of entanglement on `grid`: the earliest vanished grid
/// point that follows a positive one and stays vanished over the trailing
/// window (or to the end of the grid), refined by bisection.
pub fn find_esd_on(spec: &ChannelSpec, c0: BellDiagonalCoeffs, grid: &[f64]) -> Result<CriticalPoint> {
    let curve = Curve::new(spec, c0, grid, MeasureKind::Concurrence)?;
    let n = grid.len();
    if curve.values.iter().all(|&v| vanished(v)) {
        return Err(Error::NoEvent("concurrence is zero on the whole grid".into()));
    }
    for i in 1..n {
        if vanished(curve.values[i]) && !vanished(curve.values[i - 1]) {
            let end = (i + tolerances::TRAILING_WINDOW).min(n);
            if curve.values[i..end].iter().all(|&v| vanished(v)) {
                return curve.death_between(i);
            }
        }
    }
    Err(Error::NoEvent("concurrence never vanishes for good on the grid".into()))
}

/// [`find_esd_on`] over the default grid.
pub fn find_esd(spec: &ChannelSpec, c0: BellDiagonalCoeffs) -> Result<CriticalPoint> {
    find_esd_on(spec, c0, &default_grid(spec))
}

/// All places where `kind` vanishes on `grid`.
///
/// A zero stretch that reaches the end of the grid is reported as
/// [`CriticalKind::Esd`]. A stretch (or a grid local minimum that refines
/// to zero) with positive values on both sides yields a
/// [`CriticalKind::DarkPoint`] at the refined minimum followed by a
/// [`CriticalKind::RevivalOnset`].
pub fn find_dark_points_on(
    spec: &ChannelSpec,
    c0: BellDiagonalCoeffs,
    kind: MeasureKind,
    grid: &[f64],
) -> Result<Vec<CriticalPoint>> {
    let curve = Curve::new(spec, c0, grid, kind)?;
    let vals = &curve.values;
    let n = grid.len();
    let mut events = Vec::new();

    let mut i = 0;
    while i < n {
        if vanished(vals[i]) {
            let start = i;
            while i + 1 < n && vanished(vals[i + 1]) {
                i += 1;
            }
            let end = i;
            match (start == 0, end == n - 1) {
                (true, true) => {}
                (false, true) => events.push(curve.death_between(start)?),
                (true, false) => events.push(curve.revival_between(grid[end], grid[end + 1])?),
                (false, false) => {
                    let dark = curve.dark_point(grid[start - 1], grid[end + 1])?;
                    let onset_from = dark.location.max(grid[end]);
                    events.push(dark);
                    events.push(curve.revival_between(onset_from, grid[end + 1])?);
                }
            }
        } else if i > 0 && i + 1 < n && vals[i] < vals[i - 1] && vals[i] <= vals[i + 1] && !vanished(vals[i + 1]) {
            // minimum between grid points that the grid itself misses
            let (x, fx) = golden_min(grid[i - 1], grid[i + 1], |v| curve.at(v))?;
            if vanished(fx) {
                events.push(curve.point(CriticalKind::DarkPoint, x, (grid[i - 1], grid[i + 1])));
                events.push(curve.revival_between(x, grid[i + 1])?);
            }
        }
        i += 1;
    }
    Ok(events)
}

/// [`find_dark_points_on`] over the default grid.
pub fn find_dark_points(spec: &ChannelSpec, c0: BellDiagonalCoeffs, kind: MeasureKind) -> Result<Vec<CriticalPoint>> {
    find_dark_points_on(spec, c0, kind, &default_grid(spec))
}

#[cfg(test)]
mod tests {
    use super::*;

    const BELL: BellDiagonalCoeffs = BellDiagonalCoeffs::new(1.0, 1.0, -1.0);
    const PARTIAL: BellDiagonalCoeffs = BellDiagonalCoeffs::new(1.0, 0.5, -0.5);

    fn fig1() -> ChannelSpec {
        ChannelSpec::hybrid(0.4, 0.4, 0.2)
    }

    #[test]
    fn grid_construction() {
        let g = uniform_grid(0.0, 1.0, 1001).unwrap();
        assert_eq!(g.len(), 1001);
        assert_eq!(g[750], 0.75);
        assert_eq!(g[1000], 1.0);
        assert_eq!(uniform_grid(0.0, 1.0, 2).unwrap(), vec![0.0, 1.0]);
        assert!(uniform_grid(0.0, 1.0, 1).is_err());
        assert!(uniform_grid(1.0, 0.0, 5).is_err());
    }

    #[test]
    fn sweep_rejects_bad_input() {
        let grid = uniform_grid(0.0, 1.0, 11).unwrap();
        let err = sweep(
            &fig1(),
            BellDiagonalCoeffs::new(1.0, 1.0, 1.0),
            &grid,
            &SweepOptions::default(),
        );
        assert!(matches!(err, Err(Error::NotPhysical(_))));
        let err = sweep(&fig1(), BELL, &[0.0, 0.5, 0.4], &SweepOptions::default());
        assert!(matches!(err, Err(Error::BadGrid(_))));
        let err = sweep(&fig1(), BELL, &[0.0, 1.5], &SweepOptions::default());
        assert!(matches!(err, Err(Error::BadGrid(_))));
    }

    #[test]
    fn hybrid_bell_concurrence_vanishes_only_at_one() {
        let grid = default_grid(&fig1());
        let res = sweep(&fig1(), BELL, &grid, &SweepOptions::default()).unwrap();
        let conc = res.column(MeasureKind::Concurrence);
        assert!(conc[..1000].iter().all(|&v| v > 0.0));
        assert!(conc[1000].abs() < 1e-9);
    }

    #[test]
    fn hybrid_partial_min_never_vanishes() {
        let grid = default_grid(&fig1());
        let res = sweep(&fig1(), PARTIAL, &grid, &SweepOptions::default()).unwrap();
        assert!(res.rows.iter().all(|r| r.min > 1e-3 && r.fmin > 1e-3));
    }

    #[test]
    fn depolarizing_bell_min_at_full_noise() {
        let spec = ChannelSpec::depolarizing();
        let res = sweep(&spec, BELL, &[0.0, 1.0], &SweepOptions::default()).unwrap();
        assert!((res.rows[1].min - 0.5 / 81.0).abs() < 1e-15);
    }

    #[test]
    fn hybrid_pc_examples() {
        let pc = hybrid_pc(PARTIAL, 0.4, 0.4, 0.2).unwrap();
        let active = pc.active().unwrap();
        // 1 − √(0.3/1.3)
        assert!((active - (1.0 - (0.3f64 / 1.3).sqrt())).abs() < 1e-15);
        assert!(!pc.minus.in_range);

        let pc = hybrid_pc(BELL, 0.4, 0.4, 0.2).unwrap();
        assert_eq!(pc.active(), Some(1.0));
        assert!(hybrid_pc(BELL, 0.5, 0.5, 0.5).is_err());
    }

    #[test]
    fn hybrid_pc_matches_esd_root() {
        let pc = hybrid_pc(PARTIAL, 0.4, 0.4, 0.2).unwrap().active().unwrap();
        let esd = find_esd(&fig1(), PARTIAL).unwrap();
        assert!((esd.location - pc).abs() < 1e-6, "{} vs {pc}", esd.location);
    }

    #[test]
    fn gad_esd_values() {
        let spec = ChannelSpec::gad();
        let esd = find_esd(&spec, BELL).unwrap();
        assert!((esd.location - (2.0 - 2f64.sqrt())).abs() < 1e-6);
        let esd = find_esd(&spec, PARTIAL).unwrap();
        // root of 0.5u² + 1.5u − 1 with u = 1 − γ
        let u = -1.5 + (2.25f64 + 2.0).sqrt();
        assert!((esd.location - (1.0 - u)).abs() < 1e-6);
    }

    #[test]
    fn depolarizing_esd_value() {
        let esd = find_esd(&ChannelSpec::depolarizing(), BELL).unwrap();
        let expected = 0.75 * (1.0 - 1.0 / 3f64.sqrt());
        assert!((esd.location - expected).abs() < 1e-6);
        assert!(esd.bracket.1 - esd.bracket.0 <= 1e-9);
    }

    #[test]
    fn esd_no_event_cases() {
        let grid = uniform_grid(0.0, 0.5, 101).unwrap();
        assert!(matches!(find_esd_on(&fig1(), BELL, &grid), Err(Error::NoEvent(_))));
        let origin = BellDiagonalCoeffs::new(0.0, 0.0, 0.0);
        assert!(matches!(find_esd(&fig1(), origin), Err(Error::NoEvent(_))));
    }

    #[test]
    fn depolarizing_min_dark_point_and_revival() {
        let events = find_dark_points(&ChannelSpec::depolarizing(), BELL, MeasureKind::Min).unwrap();
        assert_eq!(events.len(), 2, "{events:?}");
        assert_eq!(events[0].kind, CriticalKind::DarkPoint);
        assert!((events[0].location - 0.75).abs() < 1e-9);
        assert_eq!(events[1].kind, CriticalKind::RevivalOnset);
        assert!(events[1].location > 0.75);
        assert!(events[1].location < 0.76);
    }

    #[test]
    fn depolarizing_concurrence_dies_without_revival() {
        let events = find_dark_points(&ChannelSpec::depolarizing(), BELL, MeasureKind::Concurrence).unwrap();
        assert_eq!(events.len(), 1, "{events:?}");
        assert_eq!(events[0].kind, CriticalKind::Esd);
        assert!((events[0].location - 0.316987).abs() < 1e-6);
    }

    #[test]
    fn hybrid_min_has_no_dark_points() {
        let events = find_dark_points(&fig1(), BELL, MeasureKind::Min).unwrap();
        assert!(events.is_empty());
    }

    #[test]
    fn dark_point_between_grid_nodes_is_found() {
        // 0.75 is not a node of this grid
        let grid = uniform_grid(0.0, 1.0, 98).unwrap();
        let events = find_dark_points_on(&ChannelSpec::depolarizing(), PARTIAL, MeasureKind::Fmin, &grid).unwrap();
        let dark: Vec<_> = events.iter().filter(|e| e.kind == CriticalKind::DarkPoint).collect();
        assert_eq!(dark.len(), 1, "{events:?}");
        assert!((dark[0].location - 0.75).abs() < 1e-6);
    }

    #[test]
    fn events_re_evaluate_to_zero() {
        let spec = ChannelSpec::depolarizing();
        for kind in MeasureKind::ALL {
            for e in find_dark_points(&spec, PARTIAL, kind).unwrap() {
                let v = measure_at(&spec, PARTIAL, e.location, kind).unwrap();
                assert!(v.abs() < 1e-9, "{e:?} -> {v}");
            }
        }
    }

    #[test]
    fn time_parameterized_sweep() {
        let rate = 0.5;
        let spec = ChannelSpec::gad().with_gamma_rate(rate);
        assert_eq!(spec.sweep_param(), SweepParam::T);
        let esd_t = find_esd(&spec, BELL).unwrap().location;
        let gamma0 = 2.0 - 2f64.sqrt();
        let t0 = -(1.0f64 - gamma0).ln() / rate;
        assert!((esd_t - t0).abs() < 1e-6);
    }

    #[test]
    fn parallel_sweep_is_identical() {
        let grid = default_grid(&ChannelSpec::depolarizing());
        let seq = sweep(&ChannelSpec::depolarizing(), PARTIAL, &grid, &SweepOptions::default()).unwrap();
        let par = sweep(
            &ChannelSpec::depolarizing(),
            PARTIAL,
            &grid,
            &SweepOptions {
                parallel: true,
                ..SweepOptions::default()
            },
        )
        .unwrap();
        assert_eq!(seq, par);
    }
}
