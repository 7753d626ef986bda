//! Correlation measures of two-qubit states and their dynamics under local
//! noise.
//!
//! The crate covers concurrence, Hilbert–Schmidt measurement-induced
//! nonlocality (MIN) and fidelity-based MIN (F-MIN), each available as a
//! closed form and as a variational search over projective measurements on
//! the first qubit. States are evolved through Kraus-operator channels
//! (flip family, hybrid mixtures, generalized amplitude damping and
//! depolarizing noise), and [`dynamics`] sweeps the measures along a noise
//! parameter to locate sudden death, dark points and revivals.
//!
//! ```
//! use mindyn::{measures, states::BellDiagonalCoeffs};
//!
//! let bell = BellDiagonalCoeffs::new(1.0, 1.0, -1.0);
//! assert!((measures::min_bd(bell).unwrap().value - 0.5).abs() < 1e-12);
//! ```

pub mod channels;
pub mod dynamics;
pub mod error;
pub mod format;
pub mod matcore;
pub mod measures;
pub mod optimize;
pub mod sampling;
pub mod states;
pub mod tolerances;

pub use error::{Error, Result};
