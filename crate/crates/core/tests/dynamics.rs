use mindyn::channels::{ChannelFamily, ChannelSpec};
use mindyn::dynamics::{
    default_grid, find_dark_points, find_esd, hybrid_pc, measure_at, sweep, CriticalKind, MeasureKind, SweepOptions,
};
use mindyn::states::BellDiagonalCoeffs;

const BELL: BellDiagonalCoeffs = BellDiagonalCoeffs::new(1.0, 1.0, -1.0);
const PARTIAL: BellDiagonalCoeffs = BellDiagonalCoeffs::new(1.0, 0.5, -0.5);

fn full_sweep(spec: &ChannelSpec, c0: BellDiagonalCoeffs) -> mindyn::dynamics::SweepResult {
    sweep(spec, c0, &default_grid(spec), &SweepOptions::default()).unwrap()
}

#[test]
fn min_and_fmin_decay_monotonically() {
    for spec in [ChannelSpec::gad(), ChannelSpec::hybrid(0.4, 0.4, 0.2)] {
        for c0 in [BELL, PARTIAL] {
            let s = full_sweep(&spec, c0);
            for kind in [MeasureKind::Min, MeasureKind::Fmin] {
                let col = s.column(kind);
                for w in col.windows(2) {
                    assert!(w[1] <= w[0] + 1e-12, "{kind} under {}", spec.family);
                }
            }
        }
    }
}

#[test]
fn depolarizing_min_scales_quartically() {
    let spec = ChannelSpec::depolarizing();
    for c0 in [BELL, PARTIAL, BellDiagonalCoeffs::new(0.2, -0.6, 0.1)] {
        let s = full_sweep(&spec, c0);
        let n0 = s.rows[0].min;
        for row in &s.rows {
            let k = 4.0 * row.param / 3.0 - 1.0;
            assert!((row.min - k.powi(4) * n0).abs() < 1e-12);
        }
    }
}

#[test]
fn hybrid_pc_matches_bisection_root() {
    let spec = ChannelSpec::hybrid(0.4, 0.4, 0.2);
    for c0 in [BELL, PARTIAL] {
        let pc = hybrid_pc(c0, 0.4, 0.4, 0.2).unwrap().active().unwrap();
        let esd = find_esd(&spec, c0).unwrap();
        assert!((pc - esd.location).abs() < 1e-6, "{pc} vs {}", esd.location);
    }
}

#[test]
fn critical_points_vanish_at_their_location() {
    let cases = [
        (ChannelSpec::depolarizing(), BELL, MeasureKind::Min),
        (ChannelSpec::depolarizing(), BELL, MeasureKind::Fmin),
        (ChannelSpec::depolarizing(), BELL, MeasureKind::Concurrence),
        (ChannelSpec::depolarizing(), PARTIAL, MeasureKind::Min),
        (ChannelSpec::gad(), BELL, MeasureKind::Concurrence),
        (ChannelSpec::gad(), PARTIAL, MeasureKind::Concurrence),
        (ChannelSpec::hybrid(0.4, 0.4, 0.2), PARTIAL, MeasureKind::Concurrence),
    ];
    for (spec, c0, kind) in cases {
        let points = find_dark_points(&spec, c0, kind).unwrap();
        assert!(!points.is_empty());
        for cp in points {
            let v = measure_at(&spec, c0, cp.location, kind).unwrap();
            assert!(v.abs() < 1e-9, "{} {kind} at {}: {v}", cp.kind, cp.location);
            assert!(cp.bracket.0 <= cp.location && cp.location <= cp.bracket.1);
        }
    }
}

#[test]
fn revival_onset_is_followed_by_positive_measure() {
    let spec = ChannelSpec::depolarizing();
    let step = 1.0 / 1000.0;
    for c0 in [BELL, PARTIAL] {
        let points = find_dark_points(&spec, c0, MeasureKind::Min).unwrap();
        let onset = points.iter().find(|p| p.kind == CriticalKind::RevivalOnset).unwrap();
        assert!(measure_at(&spec, c0, onset.location + step, MeasureKind::Min).unwrap() > 1e-9);
    }
}

#[test]
fn time_axis_agrees_with_damping_axis() {
    let rate = 2.0;
    let spec = ChannelSpec::new(ChannelFamily::Gad).with_gamma_rate(rate);
    let esd_t = find_esd(&spec, BELL).unwrap().location;
    let gamma = -(-rate * esd_t).exp_m1();
    assert!((gamma - (2.0 - 2f64.sqrt())).abs() < 1e-8);
}

#[test]
fn parallel_sweep_is_bit_identical() {
    for spec in [
        ChannelSpec::hybrid(0.4, 0.4, 0.2),
        ChannelSpec::gad(),
        ChannelSpec::depolarizing(),
    ] {
        let grid = default_grid(&spec);
        let seq = sweep(&spec, PARTIAL, &grid, &SweepOptions::default()).unwrap();
        let par = sweep(
            &spec,
            PARTIAL,
            &grid,
            &SweepOptions {
                parallel: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(seq, par);
    }
}
