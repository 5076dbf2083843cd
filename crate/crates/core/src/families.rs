//! The parameterized map families. Each family is built from a Lindblad
//! dissipator sum and, independently, from its explicit matrix action; the
//! two routes are checked against each other in the tests.
//!
//! | family         | parameter | positive        | completely positive |
//! |----------------|-----------|-----------------|---------------------|
//! | `lambda-gamma` | γ         | \|γ\| ≤ 1/2     | γ = 0               |
//! | `phi-alpha`    | α         | 0 ≤ α ≤ 1/2     | α = 0               |
//! | `phi2-alpha`   | α         | 0 ≤ α ≤ 1/4     | 0 ≤ α ≤ 3/16        |
//! | `choi-F`       | β         | 0 ≤ β ≤ 1       | 0 ≤ β ≤ 3/4         |
//!
//! `phiC-beta` is the traceless generator behind `choi-F`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, I, ONE, ZERO};
use crate::superop::{compose_affine, dissipator, DissipatorTerm, SuperOp};

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[vec![ZERO, ONE], vec![ONE, ZERO]]).unwrap()
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[vec![ZERO, -I], vec![I, ZERO]]).unwrap()
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::diag_real(&[1.0, -1.0])
}

/// The eight Gell-Mann matrices (trace(λᵢλⱼ) = 2δᵢⱼ) plus the identity.
#[derive(Debug, Clone)]
pub struct GellMannBasis {
    pub matrices: [ComplexMatrix; 8],
    pub identity: ComplexMatrix,
}

impl Default for GellMannBasis {
    fn default() -> Self {
        Self::new()
    }
}

impl GellMannBasis {
    pub fn new() -> Self {
        let sym = |a: usize, b: usize| {
            let mut m = ComplexMatrix::zeros(3);
            m[(a, b)] = ONE;
            m[(b, a)] = ONE;
            m
        };
        let asym = |a: usize, b: usize| {
            let mut m = ComplexMatrix::zeros(3);
            m[(a, b)] = -I;
            m[(b, a)] = I;
            m
        };
        let s3 = 1.0 / 3f64.sqrt();
        GellMannBasis {
            matrices: [
                sym(0, 1),
                asym(0, 1),
                ComplexMatrix::diag_real(&[1.0, -1.0, 0.0]),
                sym(0, 2),
                asym(0, 2),
                sym(1, 2),
                asym(1, 2),
                ComplexMatrix::diag_real(&[s3, s3, -2.0 * s3]),
            ],
            identity: ComplexMatrix::identity(3),
        }
    }

    /// Jump operator for the 1-based Lindblad index `i ∈ 2..=9` used by the
    /// qutrit families: `G_i = λ_{i−1}`, except that `G_9 = √3·λ_8 =
    /// diag(1, 1, −2)`.
    pub fn generator(&self, i: usize) -> ComplexMatrix {
        assert!((2..=9).contains(&i), "generator index {i} outside 2..=9");
        if i == 9 {
            self.matrices[7].scale_real(3f64.sqrt())
        } else {
            self.matrices[i - 2].clone()
        }
    }

    /// Generators for indices 2..=9 in order.
    pub fn generators(&self) -> Vec<ComplexMatrix> {
        (2..=9).map(|i| self.generator(i)).collect()
    }
}

/// Lindblad coefficients γ₂..γ₉ of Φ_α.
pub fn phi_alpha_coefficients(alpha: f64) -> [f64; 8] {
    let a = alpha;
    //  γ2  γ3  γ4  γ5  γ6  γ7  γ8  γ9
    [a, -a, a, a, -a, a, -a, a / 3.0]
}

/// Lindblad coefficients γ₂..γ₉ of Φ²_α.
pub fn phi2_alpha_coefficients(alpha: f64) -> [f64; 8] {
    let a = alpha;
    [a, a, a, a, a, a, a, a / 3.0]
}

fn lindblad_sum(coefficients: &[f64], jumps: &[ComplexMatrix]) -> SuperOp {
    let terms: Vec<DissipatorTerm> =
        coefficients.iter().zip(jumps).map(|(&g, j)| DissipatorTerm::new(g, j.clone())).collect();
    compose_affine(1.0, &terms, jumps[0].dim()).expect("jumps share one dimension")
}

// --- Λ_γ on M₂ -------------------------------------------------------------

/// X + γD[σ₁] − γD[σ₂] + ½D[σ₃]
pub fn lambda_gamma(gamma: f64) -> SuperOp {
    lindblad_sum(&[gamma, -gamma, 0.5], &[pauli_x(), pauli_y(), pauli_z()])
}

/// [[r₁₁, 2γr₂₁], [2γr₁₂, r₂₂]]
pub fn lambda_gamma_explicit(gamma: f64) -> SuperOp {
    SuperOp::from_fn(2, |x| {
        let mut out = ComplexMatrix::zeros(2);
        out[(0, 0)] = x[(0, 0)];
        out[(1, 1)] = x[(1, 1)];
        out[(0, 1)] = x[(1, 0)] * (2.0 * gamma);
        out[(1, 0)] = x[(0, 1)] * (2.0 * gamma);
        out
    })
}

/// Positivity of Λ_γ from the 2×2 output determinant.
///
/// For a pure input η the output is `[[|η₁|², 2γη₂η̄₁], [2γη₁η̄₂, |η₂|²]]`
/// with unit trace and determinant `|η₁|²|η₂|²(1 − 4γ²)`; the map is positive
/// iff that is nonnegative for every η.
pub fn lambda_gamma_positive_closed_form(gamma: f64, tol: f64) -> bool {
    lambda_gamma_min_determinant(gamma) >= -tol
}

/// min over pure inputs of det Λ_γ(ηη*), attained at |η₁|² = |η₂|² = ½.
pub fn lambda_gamma_min_determinant(gamma: f64) -> f64 {
    (0.25 * (1.0 - 4.0 * gamma * gamma)).min(0.0)
}

// --- Φ_α on M₃ -------------------------------------------------------------

pub fn phi_alpha(alpha: f64) -> SuperOp {
    lindblad_sum(&phi_alpha_coefficients(alpha), &GellMannBasis::new().generators())
}

/// (1−2α)·𝕀 + 2α·𝒯
pub fn phi_alpha_explicit(alpha: f64) -> SuperOp {
    SuperOp::identity(3).scale(1.0 - 2.0 * alpha).add(&SuperOp::transposition(3).scale(2.0 * alpha)).unwrap()
}

/// The 2×2 principal minor on indices (i, j) of Φ_α(|ψ⟩⟨ψ|):
/// `2α(2α−1)(ψᵢψ̄ⱼ − ψⱼψ̄ᵢ)²`, real and equal to `8α(1−2α)·Im(ψᵢψ̄ⱼ)²`.
pub fn phi_alpha_pair_minor(alpha: f64, psi: &[C64], i: usize, j: usize) -> f64 {
    let z = psi[i] * psi[j].conj() - psi[j] * psi[i].conj();
    (2.0 * alpha * (2.0 * alpha - 1.0) * z * z).re
}

/// Positivity of Φ_α from the pair minors: their sign is that of
/// `2α(1 − 2α)`, so the map is positive iff 0 ≤ α ≤ ½.
pub fn phi_alpha_positive_closed_form(alpha: f64, tol: f64) -> bool {
    2.0 * alpha * (1.0 - 2.0 * alpha) >= -tol
}

// --- Φ²_α on M₃ ------------------------------------------------------------

pub fn phi2_alpha(alpha: f64) -> SuperOp {
    lindblad_sum(&phi2_alpha_coefficients(alpha), &GellMannBasis::new().generators())
}

/// (1−6α)X + 2α·tr(X)·𝕀
pub fn phi2_alpha_explicit(alpha: f64) -> SuperOp {
    SuperOp::from_fn(3, |x| {
        let tr = x.trace();
        let mut out = x.scale_real(1.0 - 6.0 * alpha);
        for k in 0..3 {
            out[(k, k)] += tr * (2.0 * alpha);
        }
        out
    })
}

// --- Φ^C_β and the Choi map ------------------------------------------------

fn ket_bra(i: usize, j: usize) -> ComplexMatrix {
    ComplexMatrix::unit(3, i, j)
}

fn lindblad_block(jumps: &[ComplexMatrix]) -> SuperOp {
    jumps
        .iter()
        .map(|j| dissipator(&DissipatorTerm::new(1.0, j.clone())))
        .fold(SuperOp::zero(3), |acc, d| acc.add(&d).unwrap())
}

/// A₁ = |1⟩⟨2|, A₂ = |2⟩⟨3|, A₃ = |3⟩⟨1|
pub fn choi_a_jumps() -> [ComplexMatrix; 3] {
    [ket_bra(0, 1), ket_bra(1, 2), ket_bra(2, 0)]
}

/// Bⱼ = |j⟩⟨j|
pub fn choi_b_jumps() -> [ComplexMatrix; 3] {
    [ket_bra(0, 0), ket_bra(1, 1), ket_bra(2, 2)]
}

/// C₁ = |1⟩⟨1| − |2⟩⟨2|, cyclically
pub fn choi_c_jumps() -> [ComplexMatrix; 3] {
    let c = |a: usize, b: usize| &ket_bra(a, a) - &ket_bra(b, b);
    [c(0, 1), c(1, 2), c(2, 0)]
}

/// S₁ − β(S₂ − S₃), where Sₖ is the unit-rate dissipator sum over the A, B
/// and C jumps respectively. Output is always traceless.
#[allow(non_snake_case)]
pub fn phiC_beta(beta: f64) -> SuperOp {
    let s1 = lindblad_block(&choi_a_jumps());
    let s2 = lindblad_block(&choi_b_jumps());
    let s3 = lindblad_block(&choi_c_jumps());
    let diff = s2.add(&s3.scale(-1.0)).unwrap();
    s1.add(&diff.scale(-beta)).unwrap()
}

/// Explicit action of Φ^C_β: diagonal `ρ_{i+1,i+1} − ρ_ii` (cyclic),
/// off-diagonal `−(1+2β)ρ_ij`.
#[allow(non_snake_case)]
pub fn phiC_beta_explicit(beta: f64) -> SuperOp {
    SuperOp::from_fn(3, |x| {
        ComplexMatrix::from_fn(3, |i, j| {
            if i == j {
                x[((i + 1) % 3, (i + 1) % 3)] - x[(i, i)]
            } else {
                x[(i, j)] * -(1.0 + 2.0 * beta)
            }
        })
    })
}

/// 𝕀 + ½Φ^C_β (trace preserving).
#[allow(non_snake_case)]
pub fn choi_map_F(beta: f64) -> SuperOp {
    SuperOp::identity(3).add(&phiC_beta(beta).scale(0.5)).unwrap()
}

/// Explicit action of Φ_{F,β}: diagonal `½(ρ_ii + ρ_{i+1,i+1})`,
/// off-diagonal `(½ − β)ρ_ij`.
#[allow(non_snake_case)]
pub fn choi_map_F_explicit(beta: f64) -> SuperOp {
    SuperOp::from_fn(3, |x| {
        ComplexMatrix::from_fn(3, |i, j| {
            if i == j {
                (x[(i, i)] + x[((i + 1) % 3, (i + 1) % 3)]) * 0.5
            } else {
                x[(i, j)] * (0.5 - beta)
            }
        })
    })
}

/// The Choi map in its usual trace-two display:
/// `[[ρ₁₁+ρ₂₂, −ρ₁₂, −ρ₁₃], [−ρ₂₁, ρ₂₂+ρ₃₃, −ρ₂₃], [−ρ₃₁, −ρ₃₂, ρ₃₃+ρ₁₁]]`.
/// Equals `2·choi_map_F(1)`.
pub fn choi_map_printed() -> SuperOp {
    SuperOp::from_fn(3, |x| {
        ComplexMatrix::from_fn(3, |i, j| if i == j { x[(i, i)] + x[((i + 1) % 3, (i + 1) % 3)] } else { -x[(i, j)] })
    })
}

// --- Gell-Mann index assignment --------------------------------------------

/// Outcome of [`gellmann_assignment_oracle`].
#[derive(Debug, Clone)]
pub struct GellMannAssignment {
    /// `candidates[k]` is the jump used for index `k + 2`.
    pub candidates: Vec<ComplexMatrix>,
    /// Max entrywise deviation of the reconstructed Φ_{1/2} from 𝒯.
    pub max_error: f64,
    /// Number of coefficient placements (out of 280) that reproduce 𝒯.
    pub valid_placements: usize,
}

const ASSIGNMENT_TOL: f64 = 1e-10;

/// Checks that the jumps assigned to indices 2..=9 turn the Φ_{1/2}
/// coefficients into the transposition map on M₃. Returns the max error.
pub fn verify_assignment(jumps: &[ComplexMatrix]) -> Result<f64> {
    if jumps.len() != 8 {
        return Err(Error::DimensionMismatch { expected: 8, found: jumps.len() });
    }
    if jumps.iter().any(|j| j.dim() != 3) {
        return Err(Error::AssignmentNotFound);
    }
    let map = lindblad_sum(&phi_alpha_coefficients(0.5), jumps);
    let err = map.max_abs_diff(&SuperOp::transposition(3));
    if err <= ASSIGNMENT_TOL {
        Ok(err)
    } else {
        Err(Error::AssignmentNotFound)
    }
}

/// Resolves which basis matrix each Lindblad index 2..=9 refers to.
///
/// The Φ_{1/2} coefficients take three values (α ×4, −α ×3, α/3 ×1), so a
/// placement over the eight candidate generators is one of 8!/(4!·3!·1!) =
/// 280 coefficient vectors. All are tried; exactly one must reproduce 𝒯, and
/// it must be the shipped default `G_i = λ_{i−1}` (with `G_9 = √3·λ_8`).
pub fn gellmann_assignment_oracle() -> Result<GellMannAssignment> {
    let candidates = GellMannBasis::new().generators();
    let target = SuperOp::transposition(3);
    let units: Vec<SuperOp> = candidates.iter().map(|j| dissipator(&DissipatorTerm::new(1.0, j.clone()))).collect();

    let default = phi_alpha_coefficients(0.5);
    let mut values: Vec<f64> = default.to_vec();
    values.sort_by(f64::total_cmp);

    let mut valid = Vec::new();
    for_each_distinct_permutation(&mut values, &mut |coeffs| {
        let map = coeffs.iter().zip(&units).fold(SuperOp::identity(3), |acc, (&g, u)| acc.add(&u.scale(g)).unwrap());
        if map.max_abs_diff(&target) <= ASSIGNMENT_TOL {
            valid.push(coeffs.to_vec());
        }
    });

    if valid.len() != 1 || valid[0] != default {
        return Err(Error::AssignmentNotFound);
    }
    let max_error = verify_assignment(&candidates)?;
    Ok(GellMannAssignment { candidates, max_error, valid_placements: valid.len() })
}

/// Visits each distinct permutation of `v` (which must start sorted) once.
fn for_each_distinct_permutation(v: &mut [f64], f: &mut impl FnMut(&[f64])) {
    loop {
        f(v);
        // next lexicographic permutation
        let Some(i) = (0..v.len().saturating_sub(1)).rev().find(|&i| v[i] < v[i + 1]) else {
            return;
        };
        let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
        v.swap(i, j);
        v[i + 1..].reverse();
    }
}

// --- family registry -------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapFamily {
    LambdaGamma,
    PhiAlpha,
    Phi2Alpha,
    PhiCBeta,
    ChoiMapF,
    /// Parameter is the dimension d.
    Transposition,
}

/// Closed interval, inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

impl MapFamily {
    pub const ALL: [MapFamily; 6] = [
        MapFamily::LambdaGamma,
        MapFamily::PhiAlpha,
        MapFamily::Phi2Alpha,
        MapFamily::PhiCBeta,
        MapFamily::ChoiMapF,
        MapFamily::Transposition,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MapFamily::LambdaGamma => "lambda-gamma",
            MapFamily::PhiAlpha => "phi-alpha",
            MapFamily::Phi2Alpha => "phi2-alpha",
            MapFamily::PhiCBeta => "phiC-beta",
            MapFamily::ChoiMapF => "choi-F",
            MapFamily::Transposition => "transposition",
        }
    }

    pub fn parameter(self) -> &'static str {
        match self {
            MapFamily::LambdaGamma => "gamma",
            MapFamily::PhiAlpha | MapFamily::Phi2Alpha => "alpha",
            MapFamily::PhiCBeta | MapFamily::ChoiMapF => "beta",
            MapFamily::Transposition => "dim",
        }
    }

    pub fn dim(self, param: f64) -> usize {
        match self {
            MapFamily::LambdaGamma => 2,
            MapFamily::Transposition => param.round() as usize,
            _ => 3,
        }
    }

    /// Documented positivity window; `None` when the family is not a
    /// positive map for any parameter of interest.
    pub fn positive_range(self) -> Option<Interval> {
        match self {
            MapFamily::LambdaGamma => Some(Interval::new(-0.5, 0.5)),
            MapFamily::PhiAlpha => Some(Interval::new(0.0, 0.5)),
            MapFamily::Phi2Alpha => Some(Interval::new(0.0, 0.25)),
            MapFamily::ChoiMapF => Some(Interval::new(0.0, 1.0)),
            MapFamily::PhiCBeta => None,
            MapFamily::Transposition => Some(Interval::new(1.0, f64::INFINITY)),
        }
    }

    pub fn cp_range(self) -> Option<Interval> {
        match self {
            MapFamily::LambdaGamma => Some(Interval::new(0.0, 0.0)),
            MapFamily::PhiAlpha => Some(Interval::new(0.0, 0.0)),
            MapFamily::Phi2Alpha => Some(Interval::new(0.0, 3.0 / 16.0)),
            MapFamily::ChoiMapF => Some(Interval::new(0.0, 0.75)),
            MapFamily::PhiCBeta | MapFamily::Transposition => None,
        }
    }

    /// Dissipator-sum construction.
    pub fn build(self, param: f64) -> Result<SuperOp> {
        Ok(match self {
            MapFamily::LambdaGamma => lambda_gamma(param),
            MapFamily::PhiAlpha => phi_alpha(param),
            MapFamily::Phi2Alpha => phi2_alpha(param),
            MapFamily::PhiCBeta => phiC_beta(param),
            MapFamily::ChoiMapF => choi_map_F(param),
            MapFamily::Transposition => SuperOp::transposition(transposition_dim(param)?),
        })
    }

    /// Explicit matrix-action construction.
    pub fn build_explicit(self, param: f64) -> Result<SuperOp> {
        Ok(match self {
            MapFamily::LambdaGamma => lambda_gamma_explicit(param),
            MapFamily::PhiAlpha => phi_alpha_explicit(param),
            MapFamily::Phi2Alpha => phi2_alpha_explicit(param),
            MapFamily::PhiCBeta => phiC_beta_explicit(param),
            MapFamily::ChoiMapF => choi_map_F_explicit(param),
            MapFamily::Transposition => {
                let d = transposition_dim(param)?;
                SuperOp::from_fn(d, |x| ComplexMatrix::from_fn(d, |i, j| x[(j, i)]))
            }
        })
    }

    /// Exact positivity verdict where a closed form exists.
    pub fn positive_closed_form(self, param: f64, tol: f64) -> Option<bool> {
        match self {
            MapFamily::LambdaGamma => Some(lambda_gamma_positive_closed_form(param, tol)),
            MapFamily::PhiAlpha => Some(phi_alpha_positive_closed_form(param, tol)),
            _ => None,
        }
    }
}

fn transposition_dim(param: f64) -> Result<usize> {
    if (1.0..=16.0).contains(&param) && param.fract() == 0.0 {
        Ok(param as usize)
    } else {
        Err(Error::ParameterOutOfRange { name: "dim", value: param })
    }
}

impl fmt::Display for MapFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MapFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MapFamily::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superop::{choi_spectrum, is_completely_positive};

    fn sample_matrix(d: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(d, |i, j| C64::new(1.0 + i as f64 * 0.7 - j as f64, 0.3 * (i * j) as f64 - 0.2))
    }

    #[test]
    fn gellmann_orthonormality() {
        let b = GellMannBasis::new();
        for (i, li) in b.matrices.iter().enumerate() {
            assert!(li.is_hermitian());
            assert!(li.trace().norm() < 1e-15);
            for (j, lj) in b.matrices.iter().enumerate() {
                let t = (li * lj).trace();
                let want = if i == j { 2.0 } else { 0.0 };
                assert!((t - C64::new(want, 0.0)).norm() < 1e-14, "({i},{j}) -> {t}");
            }
        }
    }

    #[test]
    fn lambda_gamma_action() {
        let x = sample_matrix(2);
        for g in [-0.7, -0.5, 0.0, 0.25, 0.5, 1.3] {
            let out = lambda_gamma(g).apply(&x).unwrap();
            assert!(out.max_abs_diff(&lambda_gamma_explicit(g).apply(&x).unwrap()) < 1e-12);
            assert_eq!(out[(0, 0)], x[(0, 0)]);
            assert!((out[(0, 1)] - x[(1, 0)] * (2.0 * g)).norm() < 1e-14);
        }
    }

    #[test]
    fn lambda_gamma_zero_is_pinching() {
        let x = sample_matrix(2);
        let out = lambda_gamma(0.0).apply(&x).unwrap();
        let want = ComplexMatrix::diag(&[x[(0, 0)], x[(1, 1)]]);
        assert!(out.max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn lambda_gamma_choi_spectrum() {
        for g in [-0.4, 0.1, 0.3, 0.5] {
            let ev = choi_spectrum(&lambda_gamma(g)).unwrap();
            let mut want = vec![-g.abs(), g.abs(), 0.5, 0.5];
            want.sort_by(f64::total_cmp);
            for (a, b) in ev.iter().zip(&want) {
                assert!((a - b).abs() < 1e-12, "γ={g}: {ev:?}");
            }
        }
        assert!(!is_completely_positive(&lambda_gamma(0.3), 1e-9).unwrap());
        assert!(is_completely_positive(&lambda_gamma(0.0), 1e-9).unwrap());
    }

    #[test]
    fn lambda_gamma_closed_form_window() {
        assert!(lambda_gamma_positive_closed_form(0.5, 1e-9));
        assert!(lambda_gamma_positive_closed_form(-0.5, 1e-9));
        assert!(!lambda_gamma_positive_closed_form(0.6, 1e-9));
        assert!((lambda_gamma_min_determinant(0.6) - 0.25 * (1.0 - 1.44)).abs() < 1e-15);
    }

    #[test]
    fn phi_alpha_endpoints() {
        assert!(phi_alpha(0.0).max_abs_diff(&SuperOp::identity(3)) < 1e-15);
        assert!(phi_alpha(0.5).max_abs_diff(&SuperOp::transposition(3)) < 1e-12);
    }

    #[test]
    fn phi_alpha_offdiagonal_rule() {
        let x = sample_matrix(3);
        let a = 0.3;
        let out = phi_alpha(a).apply(&x).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { x[(i, i)] } else { x[(i, j)] * (1.0 - 2.0 * a) + x[(j, i)] * (2.0 * a) };
                assert!((out[(i, j)] - want).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn phi_alpha_pair_minor_matches_determinant() {
        let psi = [C64::new(0.3, 0.4), C64::new(-0.5, 0.2), C64::new(0.1, -0.67)];
        let n = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let psi: Vec<C64> = psi.iter().map(|z| z / n).collect();
        for a in [0.1, 0.25, 0.5, 0.7, -0.2] {
            let out = phi_alpha_explicit(a).apply(&ComplexMatrix::outer(&psi)).unwrap();
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                let det = out.principal_submatrix(&[i, j]).determinant().re;
                assert!((det - phi_alpha_pair_minor(a, &psi, i, j)).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn phi2_at_quarter_matches_display() {
        let rho = sample_matrix(3);
        let out = phi2_alpha(0.25).apply(&rho).unwrap();
        let r = |i: usize, j: usize| rho[(i, j)];
        let want = ComplexMatrix::from_rows(&[
            vec![(r(1, 1) + r(2, 2)) * 0.5, r(0, 1) * -0.5, r(0, 2) * -0.5],
            vec![r(1, 0) * -0.5, (r(0, 0) + r(2, 2)) * 0.5, r(1, 2) * -0.5],
            vec![r(2, 0) * -0.5, r(2, 1) * -0.5, (r(0, 0) + r(1, 1)) * 0.5],
        ])
        .unwrap();
        assert!(out.max_abs_diff(&want) < 1e-12);
        assert!(phi2_alpha(0.0).max_abs_diff(&SuperOp::identity(3)) < 1e-15);
    }

    #[test]
    fn phic_is_traceless_and_choi_f_trace_preserving() {
        let x = sample_matrix(3);
        for b in [0.0, 0.5, 1.0] {
            assert!(phiC_beta(b).apply(&x).unwrap().trace().norm() < 1e-13);
            let y = choi_map_F(b).apply(&x).unwrap();
            assert!((y.trace() - x.trace()).norm() < 1e-13);
        }
    }

    #[test]
    fn choi_f_at_one_is_half_printed() {
        let x = sample_matrix(3);
        let f = choi_map_F(1.0).apply(&x).unwrap();
        let p = choi_map_printed().apply(&x).unwrap();
        assert!(f.max_abs_diff(&p.scale_real(0.5)) < 1e-12);
    }

    #[test]
    fn choi_f_at_zero_is_cp() {
        assert!(is_completely_positive(&choi_map_F(0.0), 1e-9).unwrap());
    }

    #[test]
    fn explicit_and_dissipator_routes_agree() {
        for fam in MapFamily::ALL {
            let params: &[f64] = match fam {
                MapFamily::Transposition => &[2.0, 3.0],
                _ => &[-0.3, 0.0, 0.1, 0.25, 0.5, 0.9],
            };
            for &p in params {
                let a = fam.build(p).unwrap();
                let b = fam.build_explicit(p).unwrap();
                assert!(a.max_abs_diff(&b) < 1e-12, "{fam} at {p}");
            }
        }
    }

    #[test]
    fn assignment_oracle_accepts_default() {
        let found = gellmann_assignment_oracle().unwrap();
        assert!(found.max_error < 1e-12);
        assert_eq!(found.valid_placements, 1);
    }

    #[test]
    fn assignment_oracle_rejects_bad_placements() {
        let g = GellMannBasis::new().generators();
        let shifted: Vec<ComplexMatrix> = (0..8).map(|k| g[(k + 2) % 8].clone()).collect();
        assert_eq!(verify_assignment(&shifted), Err(Error::AssignmentNotFound));

        let ident = vec![ComplexMatrix::identity(3); 8];
        assert_eq!(verify_assignment(&ident), Err(Error::AssignmentNotFound));

        // trace-normalized λ₈ in the last slot does not reproduce 𝒯 either
        let mut normalized = g.clone();
        normalized[7] = GellMannBasis::new().matrices[7].clone();
        assert_eq!(verify_assignment(&normalized), Err(Error::AssignmentNotFound));
    }

    #[test]
    fn distinct_permutations_count() {
        let mut v = phi_alpha_coefficients(0.5).to_vec();
        v.sort_by(f64::total_cmp);
        let mut n = 0;
        for_each_distinct_permutation(&mut v, &mut |_| n += 1);
        assert_eq!(n, 280);
    }

    #[test]
    fn family_names_round_trip() {
        for fam in MapFamily::ALL {
            assert_eq!(fam.name().parse::<MapFamily>().unwrap(), fam);
        }
        assert!(matches!("nope".parse::<MapFamily>(), Err(Error::UnknownFamily(_))));
    }
}
