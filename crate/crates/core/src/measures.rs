//! Correlation quantifiers: concurrence, the Wang fidelity, Hilbert–Schmidt
//! MIN and fidelity-based MIN.
//!
//! Both MIN variants come in three flavours: a closed form on the Fano
//! decomposition (`*_closed`), a Bell-diagonal shortcut on the correlation
//! triple (`*_bd`), and a variational search that evaluates the defining
//! optimization over projective measurements on qubit `a` directly on
//! density matrices (`*_variational`). The variational routes share no code
//! with the closed forms beyond the matrix substrate, which is what makes
//! them usable as oracles.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{herm_eigen, herm_eigvals, herm_sqrt, hs_inner, kron, pauli, ComplexMatrix};
use crate::optimize::{maximize_on_sphere, OptimizerOptions};
use crate::states::{bell_eigenvalues, fano_decompose, BellDiagonalCoeffs, DensityMatrix, FanoDecomposition};
use crate::tolerances;

/// Projective measurement on qubit `a` along the Bloch direction `n`:
/// `Π_± = (𝟙 ± n·σ)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Measurement {
    n: [f64; 3],
}

impl Measurement {
    /// Normalizes `n`; fails on a (near-)zero vector.
    pub fn new(n: [f64; 3]) -> Result<Self> {
        let norm = norm3(n);
        if norm < 1e-300 || !norm.is_finite() {
            return Err(Error::DegenerateInput("measurement direction must be non-zero".into()));
        }
        Ok(Self {
            n: [n[0] / norm, n[1] / norm, n[2] / norm],
        })
    }

    pub fn axis(k: usize) -> Self {
        let mut n = [0.0; 3];
        n[k] = 1.0;
        Self { n }
    }

    pub fn direction(&self) -> [f64; 3] {
        self.n
    }

    /// `(Π₊, Π₋)` on a single qubit.
    pub fn projectors(&self) -> (ComplexMatrix, ComplexMatrix) {
        let mut n_sigma = ComplexMatrix::zeros(2, 2);
        for (k, &nk) in self.n.iter().enumerate() {
            n_sigma = &n_sigma + &pauli(k + 1).scale_real(nk);
        }
        let id = ComplexMatrix::identity(2);
        ((&id + &n_sigma).scale_real(0.5), (&id - &n_sigma).scale_real(0.5))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    Variational,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureResult {
    pub value: f64,
    /// Optimal measurement direction, when the measure involves one.
    pub direction: Option<Measurement>,
    pub method: Method,
}

impl MeasureResult {
    fn closed(value: f64, direction: Option<Measurement>) -> Self {
        Self {
            value: clamp_measure(value),
            direction,
            method: Method::ClosedForm,
        }
    }

    fn variational(value: f64, direction: Option<Measurement>) -> Self {
        Self {
            value: clamp_measure(value),
            direction,
            method: Method::Variational,
        }
    }
}

fn clamp_measure(v: f64) -> f64 {
    if (-tolerances::MEASURE_CLAMP..0.0).contains(&v) {
        0.0
    } else {
        v
    }
}

fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// `(σ_y⊗σ_y) ρ* (σ_y⊗σ_y)`.
pub fn spin_flip(rho: &DensityMatrix) -> ComplexMatrix {
    let yy = kron(&pauli(2), &pauli(2));
    &yy * &(&rho.matrix().conj() * &yy)
}

/// Wootters concurrence `max{0, λ₁ − λ₂ − λ₃ − λ₄}`.
///
/// The `λ_i` are the square roots of the spectrum of `ρ ρ̃`, obtained here
/// from the similar Hermitian matrix `√ρ ρ̃ √ρ`.
pub fn concurrence(rho: &DensityMatrix) -> Result<MeasureResult> {
    let root = herm_sqrt(rho.matrix()).map_err(|e| Error::NotPhysical(e.to_string()))?;
    let r = (&root * &(&spin_flip(rho) * &root)).hermitian_part();
    let mut lambdas: Vec<f64> = herm_eigvals(&r)?.into_iter().map(|l| l.max(0.0).sqrt()).collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    let value = (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0);
    Ok(MeasureResult::closed(value, None))
}

/// Concurrence of a Bell-diagonal state,
/// `½ max{0, |c₁−c₂| − (1−c₃), |c₁+c₂| − (1+c₃)}`.
pub fn concurrence_bd(c: BellDiagonalCoeffs) -> Result<MeasureResult> {
    let c = c.ensure_physical()?;
    let value = concurrence_bd_raw(c);
    Ok(MeasureResult::closed(value, None))
}

pub(crate) fn concurrence_bd_raw(c: BellDiagonalCoeffs) -> f64 {
    let a = (c.c1 - c.c2).abs() - (1.0 - c.c3);
    let b = (c.c1 + c.c2).abs() - (1.0 + c.c3);
    0.5 * a.max(b).max(0.0)
}

/// Wang fidelity `(Tr ρσ)² / (Tr ρ² · Tr σ²)`.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    fidelity_matrices(rho.matrix(), sigma.matrix())
}

fn fidelity_matrices(rho: &ComplexMatrix, sigma: &ComplexMatrix) -> Result<f64> {
    let p_rho = hs_inner(rho, rho)?.re;
    let p_sigma = hs_inner(sigma, sigma)?.re;
    if p_rho < tolerances::FIDELITY_DEGENERATE || p_sigma < tolerances::FIDELITY_DEGENERATE {
        return Err(Error::DegenerateInput("fidelity of a zero matrix".into()));
    }
    // both Hermitian, so Tr(ρσ) = Tr(ρ†σ)
    let overlap = hs_inner(rho, sigma)?.re;
    Ok(overlap * overlap / (p_rho * p_sigma))
}

/// Post-measurement state `Σ_± (Π_±⊗𝟙) ρ (Π_±⊗𝟙)`.
pub fn apply_measurement(rho: &DensityMatrix, m: &Measurement) -> DensityMatrix {
    DensityMatrix::new_unchecked(measure_matrix(rho.matrix(), m))
}

fn measure_matrix(rho: &ComplexMatrix, m: &Measurement) -> ComplexMatrix {
    let (plus, minus) = m.projectors();
    let id = ComplexMatrix::identity(2);
    let kp = kron(&plus, &id);
    let km = kron(&minus, &id);
    &rho.conjugate_by(&kp) + &rho.conjugate_by(&km)
}

/// Smallest eigenpair of a real symmetric matrix, with the eigenvector's
/// global phase removed.
fn symmetric_min_eigenpair<const N: usize>(m: &[[f64; N]; N]) -> Result<(f64, [f64; N])> {
    let flat: Vec<f64> = m.iter().flatten().copied().collect();
    let eig = herm_eigen(&ComplexMatrix::from_real(N, N, &flat))?;
    let v = eig.vector(0);
    let pivot = v
        .iter()
        .copied()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .unwrap_or(Complex64::new(1.0, 0.0));
    let phase = pivot.conj() / pivot.norm();
    let mut out = [0.0; N];
    for (o, z) in out.iter_mut().zip(&v) {
        *o = (z * phase).re;
    }
    Ok((eig.values[0], out))
}

fn quad3(m: &[[f64; 3]; 3], v: [f64; 3]) -> f64 {
    (0..3).map(|i| (0..3).map(|j| v[i] * m[i][j] * v[j]).sum::<f64>()).sum()
}

/// Hilbert–Schmidt MIN from the Fano decomposition:
/// `Tr(TTᵗ) − x̂ᵗTTᵗx̂` when the marginal of `a` is non-degenerate, and
/// `Tr(TTᵗ) − λ_min(TTᵗ)` otherwise.
pub fn min_closed(rho: &DensityMatrix) -> Result<MeasureResult> {
    let f = fano_decompose(rho);
    min_from_fano(&f)
}

fn min_from_fano(f: &FanoDecomposition) -> Result<MeasureResult> {
    let tt = f.t_tt();
    let trace: f64 = (0..3).map(|i| tt[i][i]).sum();
    let x_norm = f.x_norm();
    if x_norm >= tolerances::DEGENERATE_MARGINAL {
        let x_hat = [f.x[0] / x_norm, f.x[1] / x_norm, f.x[2] / x_norm];
        let value = trace - quad3(&tt, x_hat);
        Ok(MeasureResult::closed(value, Some(Measurement::new(x_hat)?)))
    } else {
        let (lambda_min, v) = symmetric_min_eigenpair(&tt)?;
        Ok(MeasureResult::closed(trace - lambda_min, Measurement::new(v).ok()))
    }
}

/// Index of the smallest `|c_i|`, first index on ties.
fn min_abs_axis(c: BellDiagonalCoeffs) -> usize {
    let a = c.to_array().map(f64::abs);
    let mut k = 0;
    for i in 1..3 {
        if a[i] < a[k] {
            k = i;
        }
    }
    k
}

/// MIN of a Bell-diagonal state, `¼(Σc_i² − c₀²)` with `c₀ = min|c_i|`.
pub fn min_bd(c: BellDiagonalCoeffs) -> Result<MeasureResult> {
    let c = c.ensure_physical()?;
    let k = min_abs_axis(c);
    let c0 = c.to_array()[k];
    let value = 0.25 * (c.norm_sqr() - c0 * c0);
    Ok(MeasureResult::closed(value, Some(Measurement::axis(k))))
}

/// Admissible measurement directions: `None` means every direction leaves
/// the marginal of `a` invariant, otherwise the single admissible axis.
fn admissible_axis(rho: &DensityMatrix) -> Option<[f64; 3]> {
    let marginal = rho.marginal_a();
    // x_i = Tr[ρ(σ_i⊗𝟙)]/2 = Tr(ρ_a σ_i)/2
    let x: [f64; 3] = std::array::from_fn(|k| (&marginal * &pauli(k + 1)).trace().re / 2.0);
    let norm = norm3(x);
    (norm >= tolerances::DEGENERATE_MARGINAL).then(|| [x[0] / norm, x[1] / norm, x[2] / norm])
}

fn variational_max<F>(rho: &DensityMatrix, opts: &OptimizerOptions, objective: F) -> Result<MeasureResult>
where
    F: Fn(&Measurement) -> f64,
{
    match admissible_axis(rho) {
        Some(axis) => {
            let m = Measurement::new(axis)?;
            Ok(MeasureResult::variational(objective(&m), Some(m)))
        }
        None => {
            let opt = maximize_on_sphere(
                |n| Measurement::new(n).map(|m| objective(&m)).unwrap_or(f64::NEG_INFINITY),
                opts,
            );
            Ok(MeasureResult::variational(
                opt.value,
                Measurement::new(opt.direction).ok(),
            ))
        }
    }
}

/// MIN as the defining maximum of `‖ρ − Π(ρ)‖²` over admissible
/// measurements on `a`.
pub fn min_variational(rho: &DensityMatrix, opts: &OptimizerOptions) -> Result<MeasureResult> {
    let m = rho.matrix();
    variational_max(rho, opts, |meas| {
        let diff = m - &measure_matrix(m, meas);
        diff.entries().iter().map(|z| z.norm_sqr()).sum()
    })
}

/// Fidelity-based MIN from the Fano decomposition.
///
/// Non-degenerate marginal: `(‖Γ‖² − ε)/‖Γ‖²` with `ε = Tr(AΓΓᵗAᵗ)` and
/// `A = (1/√2)[[1, x̂ᵗ], [1, −x̂ᵗ]]`. Degenerate marginal:
/// `1 − ((ΓΓᵗ)₀₀ + μ′)/‖Γ‖²`, where `μ′` is the least eigenvalue of the
/// lower-right 3×3 block of `ΓΓᵗ`.
pub fn fmin_closed(rho: &DensityMatrix) -> Result<MeasureResult> {
    let f = fano_decompose(rho);
    fmin_from_fano(&f)
}

fn fmin_from_fano(f: &FanoDecomposition) -> Result<MeasureResult> {
    let norm_sqr = f.gamma_norm_sqr();
    let ggt = f.gamma_gt();
    let x_norm = f.x_norm();
    if x_norm >= tolerances::DEGENERATE_MARGINAL {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let x_hat = [f.x[0] / x_norm, f.x[1] / x_norm, f.x[2] / x_norm];
        let a = [
            [s, s * x_hat[0], s * x_hat[1], s * x_hat[2]],
            [s, -s * x_hat[0], -s * x_hat[1], -s * x_hat[2]],
        ];
        // ε = Σ_k (A ΓΓᵗ Aᵗ)_kk
        let epsilon: f64 = a
            .iter()
            .map(|row| {
                (0..4)
                    .map(|i| (0..4).map(|j| row[i] * ggt[i][j] * row[j]).sum::<f64>())
                    .sum::<f64>()
            })
            .sum();
        let value = (norm_sqr - epsilon) / norm_sqr;
        Ok(MeasureResult::closed(value, Some(Measurement::new(x_hat)?)))
    } else {
        let block: [[f64; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| ggt[i + 1][j + 1]));
        let (mu, v) = symmetric_min_eigenpair(&block)?;
        let value = 1.0 - (ggt[0][0] + mu) / norm_sqr;
        Ok(MeasureResult::closed(value, Measurement::new(v).ok()))
    }
}

/// F-MIN of a Bell-diagonal state, `(Σc_i² − c₀²)/(1 + Σc_i²)`.
pub fn fmin_bd(c: BellDiagonalCoeffs) -> Result<MeasureResult> {
    let c = c.ensure_physical()?;
    let k = min_abs_axis(c);
    let c0 = c.to_array()[k];
    let sum = c.norm_sqr();
    let value = (sum - c0 * c0) / (1.0 + sum);
    Ok(MeasureResult::closed(value, Some(Measurement::axis(k))))
}

/// F-MIN as `1 − min F(ρ, Π(ρ))` over admissible measurements on `a`.
pub fn fmin_variational(rho: &DensityMatrix, opts: &OptimizerOptions) -> Result<MeasureResult> {
    let m = rho.matrix();
    fidelity_matrices(m, m)?;
    variational_max(rho, opts, |meas| {
        let post = measure_matrix(m, meas);
        1.0 - fidelity_matrices(m, &post).unwrap_or(1.0)
    })
}

/// Bell-basis weights sorted descending; handy for the spectral identity
/// `C = max{0, 2μ_max − 1}` on Bell-diagonal states.
pub fn bell_spectrum_descending(c: BellDiagonalCoeffs) -> [f64; 4] {
    let mut mu = bell_eigenvalues(c);
    mu.sort_by(|a, b| b.total_cmp(a));
    mu
}
