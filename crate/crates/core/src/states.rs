//! Two-qubit states, the Bell-diagonal family and the Fano (Pauli-basis)
//! decomposition.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{herm_eigvals, kron, pauli, ComplexMatrix};
use crate::tolerances;

/// Two-qubit density matrix (4×4, Hermitian, unit trace, positive).
///
/// [`DensityMatrix::new`] validates; [`DensityMatrix::from_bell_coeffs`]
/// does not, so that unphysical coefficient triples can still be inspected.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let rho = Self { mat };
        rho.validate()?;
        Ok(rho)
    }

    /// Wraps a matrix without checking the density-matrix invariants.
    pub fn new_unchecked(mat: ComplexMatrix) -> Self {
        Self { mat }
    }

    pub fn maximally_mixed() -> Self {
        Self {
            mat: ComplexMatrix::identity(4).scale_real(0.25),
        }
    }

    /// Projector onto a (not necessarily normalized) pure state vector.
    pub fn pure(amplitudes: [Complex64; 4]) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if norm < tolerances::FIDELITY_DEGENERATE {
            return Err(Error::DegenerateInput("zero state vector".into()));
        }
        let psi = ComplexMatrix::from_vec(4, 1, amplitudes.to_vec()).scale_real(norm.sqrt().recip());
        Ok(Self {
            mat: &psi * &psi.adjoint(),
        })
    }

    /// Explicit Bell-diagonal matrix for the correlation triple `c`.
    ///
    /// Physicality is not checked; see [`BellDiagonalCoeffs::is_physical`].
    pub fn from_bell_coeffs(c: BellDiagonalCoeffs) -> Self {
        let [c1, c2, c3] = c.to_array();
        let d = |x: f64| Complex64::new(x / 4.0, 0.0);
        let mut m = ComplexMatrix::zeros(4, 4);
        m[(0, 0)] = d(1.0 + c3);
        m[(3, 3)] = d(1.0 + c3);
        m[(1, 1)] = d(1.0 - c3);
        m[(2, 2)] = d(1.0 - c3);
        m[(0, 3)] = d(c1 - c2);
        m[(3, 0)] = d(c1 - c2);
        m[(1, 2)] = d(c1 + c2);
        m[(2, 1)] = d(c1 + c2);
        Self { mat: m }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    /// Checks Hermiticity, unit trace and positivity.
    pub fn validate(&self) -> Result<()> {
        if self.mat.shape() != (4, 4) {
            return Err(Error::NotPhysical(format!(
                "expected a 4×4 matrix, got {:?}",
                self.mat.shape()
            )));
        }
        let defect = self.mat.hermitian_defect();
        if defect > tolerances::DENSITY {
            return Err(Error::NotPhysical(format!("not Hermitian (defect {defect:.3e})")));
        }
        let tr = self.mat.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > tolerances::DENSITY {
            return Err(Error::NotPhysical(format!("trace {tr} ≠ 1")));
        }
        let lowest = herm_eigvals(&self.mat)?[0];
        if lowest < -tolerances::NEG_EIG_CLAMP {
            return Err(Error::NotPhysical(format!("negative eigenvalue {lowest:.3e}")));
        }
        Ok(())
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.mat.entries().iter().map(|z| z.norm_sqr()).sum()
    }

    /// Reduced state of the first qubit.
    pub fn marginal_a(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                out[(i, j)] = (0..2).map(|k| self.mat[(2 * i + k, 2 * j + k)]).sum();
            }
        }
        out
    }

    /// Reduced state of the second qubit.
    pub fn marginal_b(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                out[(i, j)] = (0..2).map(|k| self.mat[(2 * k + i, 2 * k + j)]).sum();
            }
        }
        out
    }

    /// `(U⊗V) ρ (U⊗V)†`.
    pub fn local_unitary(&self, u: &ComplexMatrix, v: &ComplexMatrix) -> Self {
        Self {
            mat: self.mat.conjugate_by(&kron(u, v)),
        }
    }
}

/// Correlation triple `c = (⟨σ₁⊗σ₁⟩, ⟨σ₂⊗σ₂⟩, ⟨σ₃⊗σ₃⟩)` of a Bell-diagonal state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BellDiagonalCoeffs {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl BellDiagonalCoeffs {
    pub const fn new(c1: f64, c2: f64, c3: f64) -> Self {
        Self { c1, c2, c3 }
    }

    pub fn from_array([c1, c2, c3]: [f64; 3]) -> Self {
        Self { c1, c2, c3 }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.c1, self.c2, self.c3]
    }

    /// Inverse of [`bell_eigenvalues`]: the triple whose spectrum is
    /// `[μ₀₀, μ₀₁, μ₁₀, μ₁₁]`.
    pub fn from_eigenvalues(mu: [f64; 4]) -> Self {
        let [m00, m01, m10, m11] = mu;
        Self {
            c1: m00 + m01 - m10 - m11,
            c2: -(m00 - m01 - m10 + m11),
            c3: m00 - m01 + m10 - m11,
        }
    }

    pub fn norm_sqr(self) -> f64 {
        self.c1 * self.c1 + self.c2 * self.c2 + self.c3 * self.c3
    }

    /// Tetrahedron membership: all four Bell-basis weights non-negative.
    pub fn is_physical(self) -> bool {
        bell_eigenvalues(self).iter().all(|&mu| mu >= -tolerances::TETRAHEDRON)
    }

    pub fn ensure_physical(self) -> Result<Self> {
        if self.is_physical() {
            Ok(self)
        } else {
            Err(Error::NotPhysical(format!(
                "c = ({}, {}, {}) is not in tetrahedron",
                self.c1, self.c2, self.c3
            )))
        }
    }

    pub fn max_abs_diff(self, other: Self) -> f64 {
        (self.c1 - other.c1)
            .abs()
            .max((self.c2 - other.c2).abs())
            .max((self.c3 - other.c3).abs())
    }
}

/// Bell-basis weights `μ_{i,j}`, `i, j ∈ {0, 1}`, ordered `[μ₀₀, μ₀₁, μ₁₀, μ₁₁]`.
pub fn bell_eigenvalues(c: BellDiagonalCoeffs) -> [f64; 4] {
    let sign = |k: u32| if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut mu = [0.0; 4];
    for i in 0..2u32 {
        for j in 0..2u32 {
            mu[(2 * i + j) as usize] = 0.25 * (1.0 + sign(i) * c.c1 - sign(i + j) * c.c2 + sign(j) * c.c3);
        }
    }
    mu
}

/// Pauli-basis expansion of a two-qubit state.
///
/// `gamma[i][j] = Tr(ρ σ_i⊗σ_j)/2` are the coefficients on the orthonormal
/// operator basis `σ_i/√2 ⊗ σ_j/√2` (index 0 is the identity). The local
/// Bloch vectors `x_i = Tr[ρ(σ_i⊗𝟙)]/2`, `y_j = Tr[ρ(𝟙⊗σ_j)]/2` and the
/// correlation matrix `t_ij = Tr[ρ(σ_i⊗σ_j)]/2` use the same factor ½, so
/// they coincide with the first column, first row and lower-right block of
/// `gamma`; all four are stored so callers can use whichever view a formula
/// is written in.
#[derive(Debug, Clone, PartialEq)]
pub struct FanoDecomposition {
    pub gamma: [[f64; 4]; 4],
    pub x: [f64; 3],
    pub y: [f64; 3],
    pub t: [[f64; 3]; 3],
}

impl FanoDecomposition {
    /// `‖Γ‖²_F`, equal to `Tr ρ²`.
    pub fn gamma_norm_sqr(&self) -> f64 {
        self.gamma.iter().flatten().map(|g| g * g).sum()
    }

    pub fn x_norm(&self) -> f64 {
        self.x.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// `T Tᵗ`.
    pub fn t_tt(&self) -> [[f64; 3]; 3] {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..3).map(|k| self.t[i][k] * self.t[j][k]).sum();
            }
        }
        out
    }

    /// `Γ Γᵗ`.
    pub fn gamma_gt(&self) -> [[f64; 4]; 4] {
        let mut out = [[0.0; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..4).map(|k| self.gamma[i][k] * self.gamma[j][k]).sum();
            }
        }
        out
    }

    /// Largest entry of `T` off its diagonal, plus the local Bloch vectors.
    /// Zero (up to rounding) exactly for Bell-diagonal states.
    pub fn off_bell_diagonal(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            worst = worst.max(self.x[i].abs()).max(self.y[i].abs());
            for j in 0..3 {
                if i != j {
                    worst = worst.max(self.t[i][j].abs());
                }
            }
        }
        worst
    }

    /// Correlation triple read off the diagonal of `T` (`c_i = 2 t_ii`).
    pub fn bell_coeffs(&self) -> BellDiagonalCoeffs {
        BellDiagonalCoeffs::new(2.0 * self.t[0][0], 2.0 * self.t[1][1], 2.0 * self.t[2][2])
    }
}

pub fn fano_decompose(rho: &DensityMatrix) -> FanoDecomposition {
    let mut gamma = [[0.0; 4]; 4];
    for (i, row) in gamma.iter_mut().enumerate() {
        for (j, g) in row.iter_mut().enumerate() {
            let op = kron(&pauli(i), &pauli(j));
            // Tr(ρ P) for Hermitian P is real; the tiny imaginary part is rounding
            *g = (rho.matrix() * &op).trace().re / 2.0;
        }
    }
    let x = [gamma[1][0], gamma[2][0], gamma[3][0]];
    let y = [gamma[0][1], gamma[0][2], gamma[0][3]];
    let mut t = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            t[i][j] = gamma[i + 1][j + 1];
        }
    }
    FanoDecomposition { gamma, x, y, t }
}

/// `ρ = Σ_ij γ_ij (σ_i/√2)⊗(σ_j/√2)`; validated before returning.
pub fn fano_reconstruct(f: &FanoDecomposition) -> Result<DensityMatrix> {
    let mut m = ComplexMatrix::zeros(4, 4);
    for i in 0..4 {
        for j in 0..4 {
            let g = f.gamma[i][j];
            if g != 0.0 {
                m = &m + &kron(&pauli(i), &pauli(j)).scale_real(g / 2.0);
            }
        }
    }
    DensityMatrix::new(m)
}
