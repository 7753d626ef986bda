//! Numeric thresholds shared across the crate.

/// Entrywise Hermiticity tolerance for flagged Hermitian matrices.
pub const HERMITIAN_ENTRY: f64 = 1e-12;

/// Frobenius-norm defect `‖M − M†‖` above which eigensolvers reject input.
pub const HERMITIAN_FROBENIUS: f64 = 1e-10;

/// Eigenvalues above `-NEG_EIG_CLAMP` are treated as rounding noise and set to zero.
pub const NEG_EIG_CLAMP: f64 = 1e-10;

/// Eigenvalues below `-NOT_PSD` make a square root fail.
pub const NOT_PSD: f64 = 1e-8;

/// Trace and Hermiticity tolerance for density matrices.
pub const DENSITY: f64 = 1e-10;

/// Slack on the smallest Bell-diagonal eigenvalue in the tetrahedron test.
pub const TETRAHEDRON: f64 = 1e-12;

/// Measure values in `[-MEASURE_CLAMP, 0)` are reported as zero.
pub const MEASURE_CLAMP: f64 = 1e-12;

/// Local Bloch vectors shorter than this select the degenerate-marginal branch.
pub const DEGENERATE_MARGINAL: f64 = 1e-9;

/// Denominator floor for the fidelity functional.
pub const FIDELITY_DEGENERATE: f64 = 1e-14;

/// Kraus completeness tolerance.
pub const COMPLETENESS: f64 = 1e-12;

/// Sum-to-one tolerance for hybrid weights.
pub const WEIGHTS: f64 = 1e-12;

/// A measure below this value counts as vanished.
pub const VANISHED: f64 = 1e-9;

/// Bisection stops once the bracket is narrower than this.
pub const BISECTION: f64 = 1e-9;

/// Consecutive vanished grid points required to call a zero terminal.
pub const TRAILING_WINDOW: usize = 5;

/// Default number of points on a sweep grid.
pub const DEFAULT_GRID_POINTS: usize = 1001;
