//! Random states for property tests and oracle comparisons.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::matcore::{pauli, ComplexMatrix};
use crate::states::{BellDiagonalCoeffs, DensityMatrix};

/// Uniform sample from the tetrahedron of physical Bell-diagonal states.
///
/// The four Bell-basis weights are drawn from a flat Dirichlet distribution
/// and mapped back to correlation coefficients, which is affine and so
/// preserves uniformity.
pub fn random_bell_coeffs<R: Rng + ?Sized>(rng: &mut R) -> BellDiagonalCoeffs {
    let mut mu = [0.0; 4];
    for m in &mut mu {
        *m = rng.sample(Exp1);
    }
    let total: f64 = mu.iter().sum();
    for m in &mut mu {
        *m /= total;
    }
    BellDiagonalCoeffs::from_eigenvalues(mu)
}

/// Ginibre-ensemble density matrix `G G† / Tr(G G†)`.
pub fn random_density_matrix<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    let data = (0..16)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let g = ComplexMatrix::from_vec(4, 4, data);
    let w = &g * &g.adjoint();
    let tr = w.trace().re;
    DensityMatrix::new_unchecked(w.scale_real(1.0 / tr).hermitian_part())
}

/// Single-qubit unitary `exp(i a·σ)` for a Gaussian random axis vector `a`.
pub fn random_unitary_2<R: Rng + ?Sized>(rng: &mut R) -> ComplexMatrix {
    let a: [f64; 3] = [
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
    ];
    let angle = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
    let mut u = ComplexMatrix::identity(2).scale_real(angle.cos());
    if angle > 0.0 {
        let s = Complex64::new(0.0, angle.sin() / angle);
        for (k, ak) in a.iter().enumerate() {
            u = &u + &pauli(k + 1).scale(s * ak);
        }
    }
    u
}
