use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (‖M − M†‖_F = {defect:.3e})")]
    NotHermitian { defect: f64 },
    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:.3e})")]
    NotPsd { eigenvalue: f64 },
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("not a physical state: {0}")]
    NotPhysical(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("{name} = {value} is not a probability in [0, 1]")]
    BadProbability { name: &'static str, value: f64 },
    #[error("bad hybrid weights ({alpha}, {beta}, {gamma}): must be non-negative and sum to 1")]
    BadWeights { alpha: f64, beta: f64, gamma: f64 },
    #[error("{name} = {value} must be non-negative")]
    NegativeInput { name: &'static str, value: f64 },
    #[error("bad grid: {0}")]
    BadGrid(String),
    #[error("no event: {0}")]
    NoEvent(String),
    #[error("bad channel spec: {0}")]
    BadSpec(String),
}
