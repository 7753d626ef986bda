//! Kraus-operator channels acting identically on both qubits, and the
//! closed-form maps they induce on Bell-diagonal correlation triples.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{kron, pauli, ComplexMatrix};
use crate::states::{BellDiagonalCoeffs, DensityMatrix};
use crate::tolerances;

/// Single-qubit channel in operator-sum form.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    pub label: String,
    pub ops: Vec<ComplexMatrix>,
    pub params: BTreeMap<String, f64>,
}

impl KrausChannel {
    pub fn new(label: impl Into<String>, ops: Vec<ComplexMatrix>, params: &[(&str, f64)]) -> Self {
        Self {
            label: label.into(),
            ops,
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
        }
    }

    pub fn identity() -> Self {
        Self::new("identity", vec![ComplexMatrix::identity(2)], &[])
    }

    /// Largest entry of `Σ_k E_k† E_k − 𝟙`.
    pub fn completeness_defect(&self) -> f64 {
        completeness_defect(&self.ops)
    }

    /// Same check with the operator order `Σ_k E_k E_k†`.
    pub fn unitality_defect(&self) -> f64 {
        let n = self.ops.first().map_or(2, ComplexMatrix::rows);
        let sum = self
            .ops
            .iter()
            .fold(ComplexMatrix::zeros(n, n), |acc, e| &acc + &(e * &e.adjoint()));
        sum.max_abs_diff(&ComplexMatrix::identity(n))
    }

    pub fn is_complete(&self) -> bool {
        self.completeness_defect() <= tolerances::COMPLETENESS
    }

    /// `ρ ↦ Σ_k E_k ρ E_k†` on a single qubit.
    pub fn apply_single(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        self.ops
            .iter()
            .fold(ComplexMatrix::zeros(2, 2), |acc, e| &acc + &rho.conjugate_by(e))
    }

    /// Two-qubit Kraus set `{E_i ⊗ E_j}`.
    pub fn local_pair_ops(&self) -> Vec<ComplexMatrix> {
        self.ops
            .iter()
            .flat_map(|a| self.ops.iter().map(move |b| kron(a, b)))
            .collect()
    }
}

/// Largest entry of `Σ_k E_k† E_k − 𝟙` for an arbitrary Kraus set.
pub fn completeness_defect(ops: &[ComplexMatrix]) -> f64 {
    let n = ops.first().map_or(2, ComplexMatrix::rows);
    let sum = ops
        .iter()
        .fold(ComplexMatrix::zeros(n, n), |acc, e| &acc + &(&e.adjoint() * e));
    sum.max_abs_diff(&ComplexMatrix::identity(n))
}

/// `ρ ↦ Σ_k K_k ρ K_k†` for two-qubit operators `K_k`.
pub fn apply_kraus_set(ops: &[ComplexMatrix], rho: &DensityMatrix) -> DensityMatrix {
    let out = ops.iter().fold(ComplexMatrix::zeros(4, 4), |acc, k| {
        &acc + &rho.matrix().conjugate_by(k)
    });
    DensityMatrix::new_unchecked(out)
}

/// Both qubits sent through the same channel: `Σ_ij (E_i⊗E_j) ρ (E_i⊗E_j)†`.
pub fn apply_local(ch: &KrausChannel, rho: &DensityMatrix) -> DensityMatrix {
    apply_kraus_set(&ch.local_pair_ops(), rho)
}

fn check_probability(name: &'static str, value: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::BadProbability { name, value })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FlipKind {
    /// σ₁
    BitFlip,
    /// σ₃
    PhaseFlip,
    /// σ₂
    BitPhaseFlip,
}

impl FlipKind {
    fn pauli_index(self) -> usize {
        match self {
            FlipKind::BitFlip => 1,
            FlipKind::BitPhaseFlip => 2,
            FlipKind::PhaseFlip => 3,
        }
    }

    fn label(self) -> &'static str {
        match self {
            FlipKind::BitFlip => "bitflip",
            FlipKind::PhaseFlip => "phaseflip",
            FlipKind::BitPhaseFlip => "bitphaseflip",
        }
    }
}

/// `E₀ = √(1−p/2) 𝟙`, `E₁ = √(p/2) σ`.
pub fn make_flip_channel(kind: FlipKind, p: f64) -> Result<KrausChannel> {
    let p = check_probability("p", p)?;
    let e0 = ComplexMatrix::identity(2).scale_real((1.0 - p / 2.0).sqrt());
    let e1 = pauli(kind.pauli_index()).scale_real((p / 2.0).sqrt());
    Ok(KrausChannel::new(kind.label(), vec![e0, e1], &[("p", p)]))
}

/// Generalized amplitude damping with damping `gamma` and equilibrium
/// population parameter `p`.
pub fn make_gad_channel(gamma: f64, p: f64) -> Result<KrausChannel> {
    let gamma = check_probability("gamma", gamma)?;
    let p = check_probability("equilibrium_p", p)?;
    let r = |v: f64| Complex64::new(v, 0.0);
    let z = r(0.0);
    let sp = p.sqrt();
    let sq = (1.0 - p).sqrt();
    let sg = gamma.sqrt();
    let sd = (1.0 - gamma).sqrt();
    let ops = vec![
        ComplexMatrix::from_vec(2, 2, vec![r(sp), z, z, r(sp * sd)]),
        ComplexMatrix::from_vec(2, 2, vec![z, r(sp * sg), z, z]),
        ComplexMatrix::from_vec(2, 2, vec![r(sq * sd), z, z, r(sq)]),
        ComplexMatrix::from_vec(2, 2, vec![z, z, r(sq * sg), z]),
    ];
    Ok(KrausChannel::new("gad", ops, &[("gamma", gamma), ("equilibrium_p", p)]))
}

/// `E₀ = √(1−γ) 𝟙`, `E_k = √(γ/3) σ_k`.
pub fn make_depolarizing_channel(gamma: f64) -> Result<KrausChannel> {
    let gamma = check_probability("gamma", gamma)?;
    let mut ops = vec![ComplexMatrix::identity(2).scale_real((1.0 - gamma).sqrt())];
    for k in 1..=3 {
        ops.push(pauli(k).scale_real((gamma / 3.0).sqrt()));
    }
    Ok(KrausChannel::new("depolarizing", ops, &[("gamma", gamma)]))
}

/// Mixture weights of the hybrid channel: bit flip `alpha`, bit-phase flip
/// `beta`, phase flip `gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HybridWeights {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl HybridWeights {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let ok = [alpha, beta, gamma].iter().all(|w| w.is_finite() && *w >= 0.0)
            && (alpha + beta + gamma - 1.0).abs() <= tolerances::WEIGHTS;
        if ok {
            Ok(Self { alpha, beta, gamma })
        } else {
            Err(Error::BadWeights { alpha, beta, gamma })
        }
    }

    fn parts(self) -> [(FlipKind, f64); 3] {
        [
            (FlipKind::BitFlip, self.alpha),
            (FlipKind::BitPhaseFlip, self.beta),
            (FlipKind::PhaseFlip, self.gamma),
        ]
    }
}

/// `α E_BF(ρ) + β E_BPF(ρ) + γ E_PF(ρ)`, each flip channel applied to both qubits.
pub fn apply_hybrid(w: HybridWeights, p: f64, rho: &DensityMatrix) -> Result<DensityMatrix> {
    let mut out = ComplexMatrix::zeros(4, 4);
    for (kind, weight) in w.parts() {
        let ch = make_flip_channel(kind, p)?;
        out = &out + &apply_local(&ch, rho).matrix().scale_real(weight);
    }
    Ok(DensityMatrix::new_unchecked(out))
}

/// The hybrid mixture as a single two-qubit Kraus set
/// `{√w · E_i⊗E_j}` over the three flip families.
pub fn hybrid_kraus_set(w: HybridWeights, p: f64) -> Result<Vec<ComplexMatrix>> {
    let mut ops = Vec::new();
    for (kind, weight) in w.parts() {
        if weight == 0.0 {
            continue;
        }
        let ch = make_flip_channel(kind, p)?;
        ops.extend(ch.local_pair_ops().into_iter().map(|k| k.scale_real(weight.sqrt())));
    }
    Ok(ops)
}

/// `c'₁ = [α + (β+γ)(1−p)²] c₁`, `c'₂ = [β + (α+γ)(1−p)²] c₂`,
/// `c'₃ = [γ + (α+β)(1−p)²] c₃`.
pub fn hybrid_map(c: BellDiagonalCoeffs, w: HybridWeights, p: f64) -> Result<BellDiagonalCoeffs> {
    let p = check_probability("p", p)?;
    let q = (1.0 - p) * (1.0 - p);
    Ok(BellDiagonalCoeffs::new(
        (w.alpha + (w.beta + w.gamma) * q) * c.c1,
        (w.beta + (w.alpha + w.gamma) * q) * c.c2,
        (w.gamma + (w.alpha + w.beta) * q) * c.c3,
    ))
}

/// GAD at equilibrium parameter ½: `(1−γ)c₁, (1−γ)c₂, (1−γ)²c₃`.
pub fn gad_map(c: BellDiagonalCoeffs, gamma: f64) -> Result<BellDiagonalCoeffs> {
    let gamma = check_probability("gamma", gamma)?;
    let u = 1.0 - gamma;
    Ok(BellDiagonalCoeffs::new(u * c.c1, u * c.c2, u * u * c.c3))
}

/// Depolarizing contraction factor `(4γ/3 − 1)²`.
pub fn depolarizing_factor(gamma: f64) -> Result<f64> {
    let gamma = check_probability("gamma", gamma)?;
    let k = 4.0 * gamma / 3.0 - 1.0;
    Ok(k * k)
}

pub fn depolarizing_map(c: BellDiagonalCoeffs, gamma: f64) -> Result<BellDiagonalCoeffs> {
    let k = depolarizing_factor(gamma)?;
    Ok(BellDiagonalCoeffs::new(k * c.c1, k * c.c2, k * c.c3))
}

/// Damping after time `t` at decay rate `rate`: `1 − e^{−rate·t}`.
pub fn gamma_of_time(rate: f64, t: f64) -> Result<f64> {
    if rate.is_nan() || rate < 0.0 {
        return Err(Error::NegativeInput {
            name: "gamma_rate",
            value: rate,
        });
    }
    if t.is_nan() || t < 0.0 {
        return Err(Error::NegativeInput { name: "t", value: t });
    }
    Ok(-(-rate * t).exp_m1())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChannelFamily {
    Bitflip,
    Phaseflip,
    Bitphaseflip,
    Hybrid,
    Gad,
    Depolarizing,
}

impl fmt::Display for ChannelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ChannelFamily::Bitflip => "bitflip",
            ChannelFamily::Phaseflip => "phaseflip",
            ChannelFamily::Bitphaseflip => "bitphaseflip",
            ChannelFamily::Hybrid => "hybrid",
            ChannelFamily::Gad => "gad",
            ChannelFamily::Depolarizing => "depolarizing",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for ChannelFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bitflip" => Ok(Self::Bitflip),
            "phaseflip" => Ok(Self::Phaseflip),
            "bitphaseflip" => Ok(Self::Bitphaseflip),
            "hybrid" => Ok(Self::Hybrid),
            "gad" => Ok(Self::Gad),
            "depolarizing" => Ok(Self::Depolarizing),
            other => Err(Error::BadSpec(format!("unknown channel family `{other}`"))),
        }
    }
}

/// Name of the parameter a channel is swept along.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParam {
    P,
    Gamma,
    T,
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepParam::P => "p",
            SweepParam::Gamma => "gamma",
            SweepParam::T => "t",
        })
    }
}

pub const DEFAULT_EQUILIBRIUM_P: f64 = 0.5;

/// Flat channel description as read from configuration.
///
/// The swept parameter (`p` for the flip family and hybrid, `gamma` for GAD
/// and depolarizing, or time `t` when `gamma_rate` is set) comes from the
/// sweep grid; a `p` or `gamma` value stored here is only an operating
/// point for single-state evaluation. For `hybrid`, `alpha`/`beta`/`gamma`
/// are the mixture weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelSpec {
    pub family: ChannelFamily,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_rate: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equilibrium_p: Option<f64>,
}

impl ChannelSpec {
    pub fn new(family: ChannelFamily) -> Self {
        Self {
            family,
            p: None,
            alpha: None,
            beta: None,
            gamma: None,
            gamma_rate: None,
            equilibrium_p: None,
        }
    }

    pub fn hybrid(alpha: f64, beta: f64, gamma: f64) -> Self {
        Self {
            alpha: Some(alpha),
            beta: Some(beta),
            gamma: Some(gamma),
            ..Self::new(ChannelFamily::Hybrid)
        }
    }

    pub fn gad() -> Self {
        Self::new(ChannelFamily::Gad)
    }

    pub fn depolarizing() -> Self {
        Self::new(ChannelFamily::Depolarizing)
    }

    pub fn with_gamma_rate(mut self, rate: f64) -> Self {
        self.gamma_rate = Some(rate);
        self
    }

    pub fn weights(&self) -> Result<HybridWeights> {
        match self.family {
            ChannelFamily::Hybrid => {
                let get = |v: Option<f64>, name: &str| {
                    v.ok_or_else(|| Error::BadSpec(format!("hybrid channel needs `{name}`")))
                };
                HybridWeights::new(
                    get(self.alpha, "alpha")?,
                    get(self.beta, "beta")?,
                    get(self.gamma, "gamma")?,
                )
            }
            ChannelFamily::Bitflip => HybridWeights::new(1.0, 0.0, 0.0),
            ChannelFamily::Bitphaseflip => HybridWeights::new(0.0, 1.0, 0.0),
            ChannelFamily::Phaseflip => HybridWeights::new(0.0, 0.0, 1.0),
            _ => Err(Error::BadSpec(format!("{} has no flip weights", self.family))),
        }
    }

    pub fn equilibrium(&self) -> f64 {
        self.equilibrium_p.unwrap_or(DEFAULT_EQUILIBRIUM_P)
    }

    fn is_damping(&self) -> bool {
        matches!(self.family, ChannelFamily::Gad | ChannelFamily::Depolarizing)
    }

    pub fn sweep_param(&self) -> SweepParam {
        match (self.is_damping(), self.gamma_rate) {
            (false, _) => SweepParam::P,
            (true, None) => SweepParam::Gamma,
            (true, Some(_)) => SweepParam::T,
        }
    }

    /// Natural parameter range: `[0, 1]` for `p` and `gamma`, and for time
    /// `[0, 10/γ′]`, by which point the damping exceeds 0.9999.
    pub fn natural_range(&self) -> (f64, f64) {
        match (self.sweep_param(), self.gamma_rate) {
            (SweepParam::T, Some(rate)) if rate > 0.0 => (0.0, 10.0 / rate),
            _ => (0.0, 1.0),
        }
    }

    /// Checks everything that does not depend on the swept value.
    pub fn validate(&self) -> Result<()> {
        match self.family {
            ChannelFamily::Bitflip | ChannelFamily::Phaseflip | ChannelFamily::Bitphaseflip | ChannelFamily::Hybrid => {
                self.weights()?;
                if self.gamma_rate.is_some() || self.equilibrium_p.is_some() {
                    return Err(Error::BadSpec(format!(
                        "{} takes no gamma_rate or equilibrium_p",
                        self.family
                    )));
                }
                if let Some(p) = self.p {
                    check_probability("p", p)?;
                }
            }
            ChannelFamily::Gad | ChannelFamily::Depolarizing => {
                if self.alpha.is_some() || self.beta.is_some() || self.p.is_some() {
                    return Err(Error::BadSpec(format!(
                        "{} takes gamma, gamma_rate and equilibrium_p only",
                        self.family
                    )));
                }
                if let Some(g) = self.gamma {
                    check_probability("gamma", g)?;
                }
                if let Some(rate) = self.gamma_rate {
                    if !rate.is_finite() || rate <= 0.0 {
                        return Err(Error::BadSpec(format!("gamma_rate = {rate} must be positive")));
                    }
                }
                if let Some(ep) = self.equilibrium_p {
                    check_probability("equilibrium_p", ep)?;
                    if self.family == ChannelFamily::Depolarizing {
                        return Err(Error::BadSpec("depolarizing takes no equilibrium_p".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// Fails unless the channel maps Bell-diagonal states to Bell-diagonal
    /// states (GAD only does so at equilibrium parameter ½).
    pub fn ensure_bell_preserving(&self) -> Result<()> {
        if self.family == ChannelFamily::Gad && self.equilibrium() != DEFAULT_EQUILIBRIUM_P {
            return Err(Error::BadSpec(format!(
                "gad with equilibrium_p = {} does not preserve Bell-diagonal states; analytic sweeps need 0.5",
                self.equilibrium()
            )));
        }
        Ok(())
    }

    /// Converts a swept value into the channel's noise strength (`p` or `γ`).
    pub fn strength_at(&self, value: f64) -> Result<f64> {
        match (self.sweep_param(), self.gamma_rate) {
            (SweepParam::T, Some(rate)) => gamma_of_time(rate, value),
            (SweepParam::P, _) => check_probability("p", value),
            _ => check_probability("gamma", value),
        }
    }

    /// The fixed operating point stored in the spec, if any.
    pub fn operating_point(&self) -> Option<f64> {
        if self.is_damping() {
            self.gamma
        } else {
            self.p
        }
    }

    /// Analytic evolution of a correlation triple at swept value `value`.
    pub fn evolve_coeffs(&self, c: BellDiagonalCoeffs, value: f64) -> Result<BellDiagonalCoeffs> {
        self.ensure_bell_preserving()?;
        let s = self.strength_at(value)?;
        match self.family {
            ChannelFamily::Gad => gad_map(c, s),
            ChannelFamily::Depolarizing => depolarizing_map(c, s),
            _ => hybrid_map(c, self.weights()?, s),
        }
    }

    /// Operator-sum evolution of an arbitrary state at swept value `value`.
    pub fn evolve_state(&self, rho: &DensityMatrix, value: f64) -> Result<DensityMatrix> {
        let s = self.strength_at(value)?;
        match self.family {
            ChannelFamily::Gad => Ok(apply_local(&make_gad_channel(s, self.equilibrium())?, rho)),
            ChannelFamily::Depolarizing => Ok(apply_local(&make_depolarizing_channel(s)?, rho)),
            _ => apply_hybrid(self.weights()?, s, rho),
        }
    }

    /// Two-qubit Kraus set at swept value `value`.
    pub fn kraus_set(&self, value: f64) -> Result<Vec<ComplexMatrix>> {
        let s = self.strength_at(value)?;
        match self.family {
            ChannelFamily::Gad => Ok(make_gad_channel(s, self.equilibrium())?.local_pair_ops()),
            ChannelFamily::Depolarizing => Ok(make_depolarizing_channel(s)?.local_pair_ops()),
            _ => hybrid_kraus_set(self.weights()?, s),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::fano_decompose;

    const BELL: BellDiagonalCoeffs = BellDiagonalCoeffs::new(1.0, 1.0, -1.0);

    fn grid(n: usize) -> impl Iterator<Item = f64> {
        (0..n).map(move |i| i as f64 / (n - 1) as f64)
    }

    #[test]
    fn flip_channel_endpoints() {
        let ch = make_flip_channel(FlipKind::BitFlip, 0.0).unwrap();
        assert_eq!(ch.ops[0], ComplexMatrix::identity(2));
        assert_eq!(ch.ops[1], ComplexMatrix::zeros(2, 2));

        let ch = make_flip_channel(FlipKind::PhaseFlip, 1.0).unwrap();
        let h = 0.5f64.sqrt();
        assert!(ch.ops[0].max_abs_diff(&ComplexMatrix::identity(2).scale_real(h)) < 1e-16);
        assert!(ch.ops[1].max_abs_diff(&pauli(3).scale_real(h)) < 1e-16);
        // full dephasing kills coherences
        let plus = ComplexMatrix::from_real(2, 2, &[0.5, 0.5, 0.5, 0.5]);
        let out = ch.apply_single(&plus);
        assert!(out.max_abs_diff(&ComplexMatrix::identity(2).scale_real(0.5)) < 1e-15);
    }

    #[test]
    fn bad_probabilities_are_rejected() {
        assert!(matches!(
            make_flip_channel(FlipKind::BitFlip, 1.5),
            Err(Error::BadProbability { .. })
        ));
        assert!(make_gad_channel(-0.1, 0.5).is_err());
        assert!(make_gad_channel(0.5, 2.0).is_err());
        assert!(make_depolarizing_channel(f64::NAN).is_err());
        assert!(gad_map(BELL, 1.1).is_err());
        assert!(depolarizing_map(BELL, -0.5).is_err());
    }

    #[test]
    fn completeness_over_grids() {
        for p in grid(11) {
            for kind in [FlipKind::BitFlip, FlipKind::PhaseFlip, FlipKind::BitPhaseFlip] {
                let ch = make_flip_channel(kind, p).unwrap();
                assert!(ch.is_complete());
                assert!(ch.unitality_defect() < 1e-12);
            }
            assert!(make_depolarizing_channel(p).unwrap().is_complete());
            for q in grid(11) {
                assert!(make_gad_channel(p, q).unwrap().is_complete());
            }
        }
    }

    #[test]
    fn gad_zero_damping_is_identity() {
        let ch = make_gad_channel(0.0, 0.3).unwrap();
        let rho = ComplexMatrix::from_vec(
            2,
            2,
            vec![
                Complex64::new(0.7, 0.0),
                Complex64::new(0.1, 0.2),
                Complex64::new(0.1, -0.2),
                Complex64::new(0.3, 0.0),
            ],
        );
        assert!(ch.apply_single(&rho).max_abs_diff(&rho) < 1e-15);
    }

    #[test]
    fn gad_full_damping_at_half_is_maximally_mixing() {
        let ch = make_gad_channel(1.0, 0.5).unwrap();
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        for rho in [
            ComplexMatrix::diag_real(&[1.0, 0.0]),
            ComplexMatrix::diag_real(&[0.0, 1.0]),
            ComplexMatrix::from_real(2, 2, &[0.5, 0.5, 0.5, 0.5]),
        ] {
            assert!(ch.apply_single(&rho).max_abs_diff(&half) < 1e-15);
        }
    }

    #[test]
    fn depolarizing_three_quarters_contracts_to_centre() {
        let ch = make_depolarizing_channel(0.75).unwrap();
        let plus = ComplexMatrix::from_real(2, 2, &[0.5, 0.5, 0.5, 0.5]);
        let out = ch.apply_single(&plus);
        assert!(out.max_abs_diff(&ComplexMatrix::identity(2).scale_real(0.5)) < 1e-15);

        let rho = DensityMatrix::from_bell_coeffs(BELL);
        let out = apply_local(&ch, &rho);
        assert!(out.matrix().max_abs_diff(DensityMatrix::maximally_mixed().matrix()) < 1e-12);
    }

    #[test]
    fn identity_channel_leaves_state() {
        let rho = DensityMatrix::from_bell_coeffs(BellDiagonalCoeffs::new(0.2, -0.4, 0.1));
        let out = apply_local(&KrausChannel::identity(), &rho);
        assert_eq!(out.matrix(), rho.matrix());
    }

    #[test]
    fn hybrid_examples() {
        let w = HybridWeights::new(0.4, 0.4, 0.2).unwrap();
        let rho = DensityMatrix::from_bell_coeffs(BELL);
        let out = apply_hybrid(w, 0.0, &rho).unwrap();
        assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-15);

        let c = hybrid_map(BELL, w, 1.0).unwrap();
        assert!(c.max_abs_diff(BellDiagonalCoeffs::new(0.4, 0.4, -0.2)) < 1e-15);
        let c = hybrid_map(BELL, w, 0.5).unwrap();
        assert!(c.max_abs_diff(BellDiagonalCoeffs::new(0.55, 0.55, -0.4)) < 1e-15);
        assert_eq!(hybrid_map(BELL, w, 0.0).unwrap(), BELL);

        let bf = HybridWeights::new(1.0, 0.0, 0.0).unwrap();
        let pure_bf = apply_local(&make_flip_channel(FlipKind::BitFlip, 0.3).unwrap(), &rho);
        let mixed = apply_hybrid(bf, 0.3, &rho).unwrap();
        assert!(pure_bf.matrix().max_abs_diff(mixed.matrix()) < 1e-15);
    }

    #[test]
    fn bad_weights_are_rejected() {
        assert!(matches!(
            HybridWeights::new(0.5, 0.5, 0.5),
            Err(Error::BadWeights { .. })
        ));
        assert!(HybridWeights::new(1.2, -0.2, 0.0).is_err());
    }

    #[test]
    fn merged_hybrid_set_matches_mixture() {
        let w = HybridWeights::new(0.5, 0.3, 0.2).unwrap();
        let rho = DensityMatrix::from_bell_coeffs(BellDiagonalCoeffs::new(0.5, -0.3, 0.2));
        for p in grid(11) {
            let ops = hybrid_kraus_set(w, p).unwrap();
            assert!(completeness_defect(&ops) < 1e-12);
            let a = apply_kraus_set(&ops, &rho);
            let b = apply_hybrid(w, p, &rho).unwrap();
            assert!(a.matrix().max_abs_diff(b.matrix()) < 1e-14);
        }
    }

    #[test]
    fn single_flip_maps_match_operator_sum() {
        let c = BellDiagonalCoeffs::new(0.6, -0.3, 0.2);
        let rho = DensityMatrix::from_bell_coeffs(c);
        for (kind, w) in [
            (FlipKind::BitFlip, HybridWeights::new(1.0, 0.0, 0.0).unwrap()),
            (FlipKind::BitPhaseFlip, HybridWeights::new(0.0, 1.0, 0.0).unwrap()),
            (FlipKind::PhaseFlip, HybridWeights::new(0.0, 0.0, 1.0).unwrap()),
        ] {
            for p in grid(21) {
                let out = apply_local(&make_flip_channel(kind, p).unwrap(), &rho);
                let got = fano_decompose(&out).bell_coeffs();
                let want = hybrid_map(c, w, p).unwrap();
                assert!(got.max_abs_diff(want) < 1e-12, "{kind:?} p={p}");
            }
        }
    }

    #[test]
    fn gad_and_depolarizing_map_examples() {
        assert_eq!(gad_map(BELL, 0.0).unwrap(), BELL);
        assert_eq!(gad_map(BELL, 1.0).unwrap(), BellDiagonalCoeffs::new(0.0, 0.0, -0.0));
        assert_eq!(gad_map(BELL, 0.5).unwrap(), BellDiagonalCoeffs::new(0.5, 0.5, -0.25));

        assert_eq!(depolarizing_map(BELL, 0.0).unwrap(), BELL);
        assert!(
            depolarizing_map(BELL, 0.75)
                .unwrap()
                .max_abs_diff(BellDiagonalCoeffs::new(0.0, 0.0, 0.0))
                < 1e-15
        );
        let c = depolarizing_map(BELL, 1.0).unwrap();
        assert!(c.max_abs_diff(BellDiagonalCoeffs::new(1.0 / 9.0, 1.0 / 9.0, -1.0 / 9.0)) < 1e-15);
    }

    #[test]
    fn gamma_of_time_examples() {
        assert_eq!(gamma_of_time(0.7, 0.0).unwrap(), 0.0);
        assert!((gamma_of_time(1.0, std::f64::consts::LN_2).unwrap() - 0.5).abs() < 1e-15);
        assert!(gamma_of_time(2.0, 5.0).unwrap() > 0.9999);
        assert!(gamma_of_time(2.0, 5.0).unwrap() < 1.0);
        assert!(matches!(gamma_of_time(-1.0, 1.0), Err(Error::NegativeInput { .. })));
        assert!(matches!(gamma_of_time(1.0, -1.0), Err(Error::NegativeInput { .. })));
        let mut prev = -1.0;
        for i in 0..100 {
            let g = gamma_of_time(0.3, i as f64 * 0.5).unwrap();
            assert!(g > prev);
            prev = g;
        }
    }

    #[test]
    fn spec_validation() {
        assert!(ChannelSpec::hybrid(0.4, 0.4, 0.2).validate().is_ok());
        assert!(ChannelSpec::hybrid(0.4, 0.4, 0.4).validate().is_err());
        assert!(ChannelSpec::new(ChannelFamily::Hybrid).validate().is_err());
        assert!(ChannelSpec::gad().validate().is_ok());
        assert!(ChannelSpec::gad().with_gamma_rate(-1.0).validate().is_err());
        let mut s = ChannelSpec::depolarizing();
        s.alpha = Some(0.1);
        assert!(s.validate().is_err());
        let mut s = ChannelSpec::gad();
        s.equilibrium_p = Some(0.3);
        assert!(s.validate().is_ok());
        assert!(s.ensure_bell_preserving().is_err());
        assert!(s.evolve_coeffs(BELL, 0.1).is_err());
    }

    #[test]
    fn spec_sweep_params() {
        assert_eq!(ChannelSpec::hybrid(1.0, 0.0, 0.0).sweep_param(), SweepParam::P);
        assert_eq!(ChannelSpec::gad().sweep_param(), SweepParam::Gamma);
        let timed = ChannelSpec::depolarizing().with_gamma_rate(2.0);
        assert_eq!(timed.sweep_param(), SweepParam::T);
        assert_eq!(timed.natural_range(), (0.0, 5.0));
        let g = timed.strength_at(std::f64::consts::LN_2 / 2.0).unwrap();
        assert!((g - 0.5).abs() < 1e-15);
    }
}
