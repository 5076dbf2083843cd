//! Linear maps on d×d matrices stored as d²×d² transfer matrices acting on
//! column-stacked operators.
//!
//! Dissipators follow `γ(J X J† − ½{J J†, X})`. For Hermitian jumps this
//! equals `γ(J X J − ½(J J X + X J J))`.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, Layout, ZERO};

#[derive(Debug, Clone, PartialEq)]
pub struct SuperOp {
    dim: usize,
    transfer: ComplexMatrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DissipatorTerm {
    pub gamma: f64,
    pub jump: ComplexMatrix,
}

impl DissipatorTerm {
    pub fn new(gamma: f64, jump: ComplexMatrix) -> Self {
        DissipatorTerm { gamma, jump }
    }
}

impl SuperOp {
    pub fn from_transfer(transfer: ComplexMatrix) -> Result<Self> {
        let n = transfer.dim();
        let dim = (n as f64).sqrt().round() as usize;
        if dim * dim != n {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: n });
        }
        Ok(SuperOp { dim, transfer })
    }

    /// Builds the transfer matrix by applying `f` to every matrix unit.
    pub fn from_fn(dim: usize, f: impl Fn(&ComplexMatrix) -> ComplexMatrix) -> Self {
        let n = dim * dim;
        let mut transfer = ComplexMatrix::zeros(n);
        for col in 0..n {
            let (i, j) = (col % dim, col / dim);
            let out = f(&ComplexMatrix::unit(dim, i, j));
            assert_eq!(out.dim(), dim, "map changed the matrix dimension");
            for (row, z) in out.vec_columns().into_iter().enumerate() {
                transfer[(row, col)] = z;
            }
        }
        SuperOp { dim, transfer }
    }

    pub fn identity(dim: usize) -> Self {
        SuperOp { dim, transfer: ComplexMatrix::identity(dim * dim) }
    }

    pub fn zero(dim: usize) -> Self {
        SuperOp { dim, transfer: ComplexMatrix::zeros(dim * dim) }
    }

    pub fn transposition(dim: usize) -> Self {
        Self::from_fn(dim, |x| x.transpose())
    }

    /// X ↦ U X U†
    pub fn conjugation(u: &ComplexMatrix) -> Self {
        // vec(U X U†) = (conj(U) ⊗ U) vec(X)
        SuperOp { dim: u.dim(), transfer: u.conj().kron(u) }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn transfer(&self) -> &ComplexMatrix {
        &self.transfer
    }

    pub fn apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.dim() });
        }
        ComplexMatrix::unvec_columns(&self.transfer.matvec(&x.vec_columns()))
    }

    pub fn add(&self, other: &SuperOp) -> Result<SuperOp> {
        self.check_same(other)?;
        Ok(SuperOp { dim: self.dim, transfer: &self.transfer + &other.transfer })
    }

    pub fn scale(&self, s: f64) -> SuperOp {
        SuperOp { dim: self.dim, transfer: self.transfer.scale_real(s) }
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &SuperOp) -> Result<SuperOp> {
        self.check_same(inner)?;
        Ok(SuperOp { dim: self.dim, transfer: &self.transfer * &inner.transfer })
    }

    pub fn max_abs_diff(&self, other: &SuperOp) -> f64 {
        self.transfer.max_abs_diff(&other.transfer)
    }

    fn check_same(&self, other: &SuperOp) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim, found: other.dim })
        }
    }

    /// Applies the map to tensor factor `party` of `x`, identity elsewhere.
    pub fn apply_local(&self, x: &ComplexMatrix, dims: &[usize], party: usize) -> Result<ComplexMatrix> {
        let layout = Layout::new(dims, x.dim())?;
        layout.check_party(party)?;
        if dims[party] != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: dims[party] });
        }
        let d = self.dim;
        let n = x.dim();
        // rows/cols with the party digit set to zero enumerate the blocks
        let anchors: Vec<usize> = (0..n).filter(|&i| layout.digit(i, party) == 0).collect();
        let mut out = ComplexMatrix::zeros(n);
        let mut block = ComplexMatrix::zeros(d);
        for &r in &anchors {
            for &c in &anchors {
                for a in 0..d {
                    for b in 0..d {
                        block[(a, b)] = x[(layout.with_digit(r, party, a), layout.with_digit(c, party, b))];
                    }
                }
                let mapped = self.apply(&block)?;
                for a in 0..d {
                    for b in 0..d {
                        out[(layout.with_digit(r, party, a), layout.with_digit(c, party, b))] = mapped[(a, b)];
                    }
                }
            }
        }
        Ok(out)
    }
}

/// X ↦ γ(J X J† − ½{J J†, X})
pub fn dissipator(term: &DissipatorTerm) -> SuperOp {
    let j = &term.jump;
    let d = j.dim();
    let id = ComplexMatrix::identity(d);
    let jjd = j * &j.adjoint();
    // vec(AXB) = (Bᵀ ⊗ A) vec(X)
    let sandwich = j.conj().kron(j);
    let left = id.kron(&jjd);
    let right = jjd.transpose().kron(&id);
    let anti = (&left + &right).scale_real(0.5);
    SuperOp { dim: d, transfer: (&sandwich - &anti).scale_real(term.gamma) }
}

/// `identity_weight·𝕀 + Σ dissipator(termᵢ)`
pub fn compose_affine(identity_weight: f64, terms: &[DissipatorTerm], dim: usize) -> Result<SuperOp> {
    let mut acc = SuperOp::identity(dim).scale(identity_weight);
    for t in terms {
        if t.jump.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: t.jump.dim() });
        }
        acc = acc.add(&dissipator(t))?;
    }
    Ok(acc)
}

/// (𝕀 ⊗ S) applied to the trace-one maximally entangled projector.
pub fn choi(s: &SuperOp) -> ComplexMatrix {
    let d = s.dim();
    let mut out = ComplexMatrix::zeros(d * d);
    let norm = 1.0 / d as f64;
    for i in 0..d {
        for j in 0..d {
            let img = s.apply(&ComplexMatrix::unit(d, i, j)).expect("unit matrix has map dimension");
            for k in 0..d {
                for l in 0..d {
                    out[(i * d + k, j * d + l)] = img[(k, l)] * norm;
                }
            }
        }
    }
    out
}

pub fn choi_spectrum(s: &SuperOp) -> Result<Vec<f64>> {
    linalg::eigvals_hermitian(&choi(s))
}

pub fn is_completely_positive(s: &SuperOp, tol: f64) -> Result<bool> {
    linalg::is_psd(&choi(s), tol)
}

/// Settings for the pure-state positivity scan.
#[derive(Debug, Clone, Copy)]
pub struct PureScan {
    pub samples: usize,
    pub refine: bool,
    pub seed: u64,
}

pub const DEFAULT_SCAN_SAMPLES: usize = 20_000;
pub const DEFAULT_SEED: u64 = 0x5EED_1A3B;

impl Default for PureScan {
    fn default() -> Self {
        PureScan { samples: DEFAULT_SCAN_SAMPLES, refine: true, seed: DEFAULT_SEED }
    }
}

/// Minimum eigenvalue of S(|ψ⟩⟨ψ|) over Haar-sampled pure states, optionally
/// polished by coordinate descent around the best sample.
///
/// This can only falsify positivity; a nonnegative result is evidence, not
/// a certificate.
pub fn min_output_eigenvalue_over_pure(s: &SuperOp, scan: PureScan) -> Result<f64> {
    let d = s.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(scan.seed);
    let mut best = f64::INFINITY;
    let mut best_psi = vec![ZERO; d];
    for _ in 0..scan.samples.max(1) {
        let psi = haar_vector(d, &mut rng);
        let val = output_min(s, &psi)?;
        if val < best {
            best = val;
            best_psi = psi;
        }
    }
    if scan.refine {
        best = refine(s, best_psi, best)?;
    }
    Ok(best)
}

fn output_min(s: &SuperOp, psi: &[C64]) -> Result<f64> {
    linalg::min_eigenvalue(&s.apply(&ComplexMatrix::outer(psi))?)
}

pub(crate) fn haar_vector<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<C64> {
    let mut v: Vec<C64> = (0..d).map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))).collect();
    normalize(&mut v);
    v
}

fn normalize(v: &mut [C64]) {
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in v.iter_mut() {
        *z /= n;
    }
}

fn refine(s: &SuperOp, mut psi: Vec<C64>, mut best: f64) -> Result<f64> {
    let mut step = 0.1;
    while step > 1e-9 {
        let mut improved = false;
        for k in 0..psi.len() {
            for dir in [C64::new(step, 0.0), C64::new(-step, 0.0), C64::new(0.0, step), C64::new(0.0, -step)] {
                let mut trial = psi.clone();
                trial[k] += dir;
                normalize(&mut trial);
                let val = output_min(s, &trial)?;
                if val < best {
                    best = val;
                    psi = trial;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    Ok(best)
}

/// Every principal minor determinant is ≥ −tol (all 2^d − 1 index subsets).
pub fn principal_minors_positive(m: &ComplexMatrix, tol: f64) -> Result<bool> {
    m.ensure_hermitian()?;
    let d = m.dim();
    assert!(d <= 16, "principal minor enumeration limited to d ≤ 16");
    for mask in 1u32..(1 << d) {
        let idx: Vec<usize> = (0..d).filter(|&k| mask & (1 << k) != 0).collect();
        // determinants of Hermitian matrices are real
        if m.principal_submatrix(&idx).determinant().re < -tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Convenience for tests and reports: `S(X)` for every unit and a check that
/// the map sends `X†` to `S(X)†`.
pub fn hermiticity_preservation_error(s: &SuperOp, x: &ComplexMatrix) -> Result<f64> {
    let lhs = s.apply(&x.adjoint())?;
    let rhs = s.apply(x)?.adjoint();
    Ok(lhs.max_abs_diff(&rhs))
}
