//! Genuine multipartite entanglement on three qubits.
//!
//! A single-qubit map Λ is lifted to
//!
//! ```text
//! Λ̃(ρ) = (Λ⊗𝕀⊗𝕀 + 𝕀⊗Λ⊗𝕀 + 𝕀⊗𝕀⊗Λ)(ρ) + c·tr(ρ)·𝕀₈
//! ```
//!
//! For Λ = Λ_γ with |γ| ≤ ½ every term is bounded below by −|γ| on
//! biseparable inputs, so any `c ≥ 2|γ|` keeps Λ̃ nonnegative there. The
//! detector fixes `c = 1` ([`DETECTION_C`]), the value required at the edge
//! of the positivity window, for all γ.
//!
//! With a rotation `r`, each lifted term becomes `r·Λ(·)·r†` on its own
//! party; this is what exposes GHZ-type coherences.

use num_complex::Complex64 as C64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{lambda_gamma, pauli_x};
use crate::linalg::{self, ComplexMatrix};
use crate::search;
use crate::states::{self, rng_from_seed, DensityMatrix};
use crate::superop::{haar_vector, SuperOp};
use crate::tol;

pub const QUBITS: [usize; 3] = [2, 2, 2];

/// Trace-term constant used by the detector, witness and boundary search.
pub const DETECTION_C: f64 = 1.0;

/// Smallest trace constant that keeps the Λ_γ lift nonnegative on
/// biseparable states: 2|γ|.
pub fn default_c(gamma: f64) -> f64 {
    2.0 * gamma.abs()
}

#[derive(Debug, Clone)]
pub struct LiftedMap {
    base: SuperOp,
    c: f64,
    rotation: Option<ComplexMatrix>,
    term: SuperOp,
}

/// Builds Λ̃ from a map on M₂.
pub fn lift(base: SuperOp, c: f64, rotation: Option<ComplexMatrix>) -> Result<LiftedMap> {
    if base.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: base.dim() });
    }
    let term = match &rotation {
        Some(r) => {
            if r.dim() != 2 {
                return Err(Error::DimensionMismatch { expected: 2, found: r.dim() });
            }
            SuperOp::conjugation(r).compose(&base)?
        }
        None => base.clone(),
    };
    Ok(LiftedMap { base, c, rotation, term })
}

impl LiftedMap {
    pub fn base(&self) -> &SuperOp {
        &self.base
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn rotation(&self) -> Option<&ComplexMatrix> {
        self.rotation.as_ref()
    }

    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        if rho.dim() != 8 {
            return Err(Error::DimensionMismatch { expected: 8, found: rho.dim() });
        }
        let mut out = ComplexMatrix::identity(8).scale(rho.trace() * self.c);
        for party in 0..3 {
            out = &out + &self.term.apply_local(rho, &QUBITS, party)?;
        }
        Ok(out)
    }

    pub fn min_output_eigenvalue(&self, rho: &ComplexMatrix) -> Result<f64> {
        linalg::min_eigenvalue(&self.apply(rho)?)
    }
}

/// Λ̃ for Λ_γ with the detector's trace constant.
pub fn lifted_lambda(gamma: f64, rotated: bool) -> LiftedMap {
    lift(lambda_gamma(gamma), DETECTION_C, rotated.then(pauli_x)).unwrap()
}

/// Lifted transposition 𝒯̃ (c = 1).
pub fn lifted_transposition() -> LiftedMap {
    lift(SuperOp::transposition(2), 1.0, None).unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "GME_DETECTED")]
    GmeDetected,
    #[serde(rename = "NOT_DETECTED")]
    NotDetected,
}

impl Verdict {
    pub fn from_value(value: f64, tol: f64) -> Self {
        if value < -tol {
            Verdict::GmeDetected
        } else {
            Verdict::NotDetected
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::GmeDetected => "GME_DETECTED",
            Verdict::NotDetected => "NOT_DETECTED",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetectionReport {
    pub gamma: f64,
    pub c: f64,
    pub rotated: bool,
    pub min_eigenvalue: f64,
    pub witness_value: Option<f64>,
    pub n_gme: Option<f64>,
    pub verdict: Verdict,
}

/// What [`Detector::run`] should compute besides the lifted spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Detector {
    pub gamma: f64,
    pub c: f64,
    pub rotated: bool,
    /// Base the verdict on the witness value instead of the spectrum.
    pub witness: bool,
    /// Normalization 𝒦 when 𝒩_GME is requested.
    pub ngme_k: Option<f64>,
    pub tol: f64,
}

impl Detector {
    pub fn new(gamma: f64) -> Self {
        Detector { gamma, c: DETECTION_C, rotated: false, witness: false, ngme_k: None, tol: tol::PSD_TOL }
    }

    pub fn run(&self, rho: &DensityMatrix) -> Result<DetectionReport> {
        check_three_qubit(rho)?;
        let rotation = self.rotated.then(pauli_x);
        let map = lift(lambda_gamma(self.gamma), self.c, rotation)?;
        let min_eigenvalue = map.min_output_eigenvalue(rho.matrix())?;
        let witness_value = if self.witness { Some(Witness::from_map(&map)?.value(rho)?) } else { None };
        let n_gme = self.ngme_k.map(|k| n_gme(rho, k)).transpose()?;
        let verdict = match witness_value {
            Some(w) => Verdict::from_value(w, self.tol),
            None => Verdict::from_value(min_eigenvalue, self.tol),
        };
        Ok(DetectionReport {
            gamma: self.gamma,
            c: self.c,
            rotated: self.rotated,
            min_eigenvalue,
            witness_value,
            n_gme,
            verdict,
        })
    }
}

pub fn detect_gme(rho: &DensityMatrix, gamma: f64, rotated: bool) -> Result<DetectionReport> {
    Detector { rotated, ..Detector::new(gamma) }.run(rho)
}

fn check_three_qubit(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() != 8 {
        return Err(Error::DimensionMismatch { expected: 8, found: rho.dim() });
    }
    Ok(())
}

/// 𝒲 = Λ̃(|W⟩⟨W|). Nonnegative on biseparable states; negative on states
/// overlapping its negative eigenspace.
#[derive(Debug, Clone)]
pub struct Witness {
    operator: ComplexMatrix,
}

impl Witness {
    pub fn from_map(map: &LiftedMap) -> Result<Self> {
        Ok(Witness { operator: map.apply(states::w_state().matrix())? })
    }

    pub fn for_gamma(gamma: f64) -> Self {
        Self::from_map(&lifted_lambda(gamma, false)).unwrap()
    }

    pub fn operator(&self) -> &ComplexMatrix {
        &self.operator
    }

    /// tr(𝒲ρ)
    pub fn value(&self, rho: &DensityMatrix) -> Result<f64> {
        check_three_qubit(rho)?;
        Ok((&self.operator * rho.matrix()).trace().re)
    }

    /// Eigenvector of 𝒲 with the smallest eigenvalue, i.e. the pure state
    /// the witness is most negative on.
    pub fn most_negative_state(&self) -> Result<DensityMatrix> {
        let spec = linalg::eig_hermitian(&self.operator)?;
        let v = &spec.eigenvectors.expect("requested")[0];
        DensityMatrix::from_pure(v, QUBITS.to_vec())
    }
}

/// The witness at γ = ½.
pub fn witness() -> Witness {
    Witness::for_gamma(0.5)
}

pub fn witness_value(rho: &DensityMatrix) -> Result<f64> {
    witness().value(rho)
}

/// tr 𝒯̃(ρ) for unit-trace ρ; the lifted terms contribute 3, the trace term 8.
pub fn ngme_normalization() -> f64 {
    let probe = states::maximally_mixed(QUBITS.to_vec());
    lifted_transposition().apply(probe.matrix()).unwrap().trace().re
}

/// 𝒩_GME(ρ) = (‖𝒯̃(ρ)/N‖₁ − 1)/𝒦, clamped to zero below [`tol::NGME_CLAMP`].
pub fn n_gme(rho: &DensityMatrix, k: f64) -> Result<f64> {
    if k.is_nan() || k <= 0.0 {
        return Err(Error::ParameterOutOfRange { name: "K", value: k });
    }
    check_three_qubit(rho)?;
    let n = ngme_normalization();
    let out = lifted_transposition().apply(rho.matrix())?.scale_real(1.0 / n);
    let value = (linalg::trace_norm(&out)? - 1.0) / k;
    Ok(if value < tol::NGME_CLAMP { 0.0 } else { value })
}

/// 𝒦 that makes 𝒩_GME of the pure W state equal to one.
pub fn k_normalizing_w() -> f64 {
    n_gme(&states::w_state(), 1.0).unwrap()
}

/// Smallest γ ∈ [0, ½] at which the lifted Λ_γ detects `rho`.
///
/// The minimum output eigenvalue is sampled on a 64-cell grid and the first
/// cell where it drops below −tol is bisected to 1e-10.
pub fn gamma_detection_boundary(rho: &DensityMatrix, rotated: bool) -> Result<f64> {
    check_three_qubit(rho)?;
    search::first_crossing(
        |g| Ok(lifted_lambda(g, rotated).min_output_eigenvalue(rho.matrix())? < -tol::PSD_TOL),
        0.0,
        0.5,
        64,
        1e-10,
    )
}

/// Smallest p at which `p·ρ + (1−p)𝕀/8` is detected by the lifted Λ_γ.
pub fn noise_threshold(rho: &DensityMatrix, gamma: f64, rotated: bool) -> Result<f64> {
    check_three_qubit(rho)?;
    let map = lifted_lambda(gamma, rotated);
    search::bisect(|p| Ok(map.min_output_eigenvalue(states::noisy_mix(rho, p)?.matrix())? < 0.0), 0.0, 1.0, 1e-12)
}

/// Noisy-W detection threshold at γ = ½.
pub fn noisy_w_threshold() -> f64 {
    noise_threshold(&states::w_state(), 0.5, false).expect("W is detected at γ = ½")
}

/// Outcome of [`locc_spot_check`].
#[derive(Debug, Clone, Serialize)]
pub struct LoccReport {
    pub trials: usize,
    pub violations: usize,
    /// Largest Σᵢ pᵢ·𝒩(ρᵢ′) − 𝒩(ρ) seen.
    pub worst_excess: f64,
}

/// Randomized check of Σᵢ pᵢ·𝒩_GME(ρᵢ′) ≤ 𝒩_GME(ρ) under two-outcome local
/// measurements on a random party. Reports violations rather than failing.
pub fn locc_spot_check(rho: &DensityMatrix, trials: usize, seed: u64) -> Result<LoccReport> {
    check_three_qubit(rho)?;
    let mut rng = rng_from_seed(seed);
    let before = n_gme(rho, 1.0)?;
    let mut violations = 0;
    let mut worst_excess = f64::NEG_INFINITY;
    for _ in 0..trials {
        let party = rng.random_range(0..3);
        let after: f64 = random_two_outcome_kraus(&mut rng)
            .iter()
            .map(|m| -> Result<f64> {
                let full = embed(m, party);
                let out = &(&full * rho.matrix()) * &full.adjoint();
                let p = out.trace().re;
                if p < 1e-14 {
                    return Ok(0.0);
                }
                let post = DensityMatrix::new_unchecked(out.scale_real(1.0 / p), QUBITS.to_vec())?;
                Ok(p * n_gme(&post, 1.0)?)
            })
            .sum::<Result<f64>>()?;
        let excess = after - before;
        worst_excess = worst_excess.max(excess);
        if excess > 1e-8 {
            violations += 1;
        }
    }
    Ok(LoccReport { trials, violations, worst_excess })
}

fn random_two_outcome_kraus<R: Rng + ?Sized>(rng: &mut R) -> [ComplexMatrix; 2] {
    let v = haar_vector(2, rng);
    let w = [-v[1].conj(), v[0].conj()];
    let u = ComplexMatrix::from_fn(2, |i, j| if j == 0 { v[i] } else { w[i] });
    let (e1, e2): (f64, f64) = (rng.random(), rng.random());
    let sqrt_diag = |a: f64, b: f64| ComplexMatrix::diag(&[C64::new(a.sqrt(), 0.0), C64::new(b.sqrt(), 0.0)]);
    let m1 = &(&u * &sqrt_diag(e1, e2)) * &u.adjoint();
    let m2 = &(&u * &sqrt_diag(1.0 - e1, 1.0 - e2)) * &u.adjoint();
    [m1, m2]
}

fn embed(m: &ComplexMatrix, party: usize) -> ComplexMatrix {
    let id = ComplexMatrix::identity(2);
    let factors: Vec<&ComplexMatrix> = (0..3).map(|k| if k == party { m } else { &id }).collect();
    factors[0].kron(factors[1]).kron(factors[2])
}
