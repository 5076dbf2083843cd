//! Reference states and seeded random state samplers.
//!
//! Samplers use ChaCha8 ([`PRNG_ALGORITHM`]) seeded from a `u64`, so a seed
//! reproduces the same state bit for bit on every platform.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, ONE, ZERO};
use crate::superop::haar_vector;
use crate::tol;

pub const PRNG_ALGORITHM: &str = "chacha8";

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: Vec<usize>,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        let rho = Self::new_unchecked(matrix, dims)?;
        rho.validate()?;
        Ok(rho)
    }

    /// Only checks that `dims` multiply to the matrix dimension.
    pub fn new_unchecked(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        let prod: usize = dims.iter().product();
        if dims.is_empty() || prod != matrix.dim() {
            return Err(Error::DimensionMismatch { expected: matrix.dim(), found: prod });
        }
        Ok(DensityMatrix { matrix, dims })
    }

    pub fn validate(&self) -> Result<()> {
        let dev = self.matrix.hermiticity_deviation();
        if dev > tol::HERM_TOL {
            return Err(Error::NotADensityMatrix(format!("not Hermitian (deviation {dev:e})")));
        }
        let tr = self.matrix.trace();
        if (tr - ONE).norm() > tol::TRACE_TOL {
            return Err(Error::NotADensityMatrix(format!("trace is {tr}, expected 1")));
        }
        let min = linalg::min_eigenvalue(&self.matrix)?;
        if min < -tol::PSD_TOL {
            return Err(Error::NotADensityMatrix(format!("negative eigenvalue {min:e}")));
        }
        Ok(())
    }

    pub fn from_pure(psi: &[C64], dims: Vec<usize>) -> Result<Self> {
        Self::new_unchecked(ComplexMatrix::outer(psi), dims)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    /// t·self + (1−t)·other
    pub fn mix(&self, other: &DensityMatrix, t: f64) -> Result<DensityMatrix> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        let m = &self.matrix.scale_real(t) + &other.matrix.scale_real(1.0 - t);
        Self::new_unchecked(m, self.dims.clone())
    }
}

fn basis_ket(n_qubits: usize, bits: &str) -> Vec<C64> {
    let mut v = vec![ZERO; 1 << n_qubits];
    v[usize::from_str_radix(bits, 2).expect("binary label")] = ONE;
    v
}

fn superpose(kets: &[Vec<C64>]) -> Vec<C64> {
    let w = 1.0 / (kets.len() as f64).sqrt();
    (0..kets[0].len()).map(|i| kets.iter().map(|k| k[i]).sum::<C64>() * w).collect()
}

/// (|001⟩ + |010⟩ + |100⟩)/√3
pub fn w_vector() -> Vec<C64> {
    superpose(&[basis_ket(3, "001"), basis_ket(3, "010"), basis_ket(3, "100")])
}

pub fn w_state() -> DensityMatrix {
    DensityMatrix::from_pure(&w_vector(), vec![2, 2, 2]).unwrap()
}

/// (|000⟩ + |111⟩)/√2
pub fn ghz_vector() -> Vec<C64> {
    superpose(&[basis_ket(3, "000"), basis_ket(3, "111")])
}

pub fn ghz_state() -> DensityMatrix {
    DensityMatrix::from_pure(&ghz_vector(), vec![2, 2, 2]).unwrap()
}

pub fn maximally_mixed(dims: Vec<usize>) -> DensityMatrix {
    let d: usize = dims.iter().product();
    let m = ComplexMatrix::identity(d).scale_real(1.0 / d as f64);
    DensityMatrix::new_unchecked(m, dims).unwrap()
}

/// p·ρ + (1−p)·𝕀/d
pub fn noisy_mix(rho: &DensityMatrix, p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ParameterOutOfRange { name: "p", value: p });
    }
    rho.mix(&maximally_mixed(rho.dims().to_vec()), p)
}

pub fn noisy_w(p: f64) -> Result<DensityMatrix> {
    noisy_mix(&w_state(), p)
}

/// c₁|00⟩ + c₂|11⟩
pub fn schmidt_state(c1: f64, c2: f64) -> Result<DensityMatrix> {
    let norm_sq = c1 * c1 + c2 * c2;
    if (norm_sq - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized { norm_sq });
    }
    let psi = [C64::new(c1, 0.0), ZERO, ZERO, C64::new(c2, 0.0)];
    DensityMatrix::from_pure(&psi, vec![2, 2])
}

/// Haar-random pure state of dimension `d`.
pub fn random_pure<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DensityMatrix {
    DensityMatrix::from_pure(&haar_vector(d, rng), vec![d]).unwrap()
}

pub fn random_pure_seeded(d: usize, seed: u64) -> DensityMatrix {
    random_pure(d, &mut rng_from_seed(seed))
}

/// Random mixed state from the induced measure: partial trace of a Haar
/// pure state on d⊗d.
pub fn random_mixed<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DensityMatrix {
    let psi = haar_vector(d * d, rng);
    let m = ComplexMatrix::outer(&psi).partial_trace(&[d, d], &[1]).unwrap();
    DensityMatrix::new_unchecked(m, vec![d]).unwrap()
}

/// Three-qubit bipartitions `X|YZ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bipartition {
    AvsBC,
    BvsAC,
    CvsAB,
}

impl Bipartition {
    pub const ALL: [Bipartition; 3] = [Bipartition::AvsBC, Bipartition::BvsAC, Bipartition::CvsAB];

    /// The single party split off.
    pub fn single(self) -> usize {
        match self {
            Bipartition::AvsBC => 0,
            Bipartition::BvsAC => 1,
            Bipartition::CvsAB => 2,
        }
    }

    pub fn from_index(i: usize) -> Result<Self> {
        Self::ALL.get(i).copied().ok_or_else(|| Error::InvalidPartition(format!("index {i}")))
    }
}

impl std::str::FromStr for Bipartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A|BC" => Ok(Bipartition::AvsBC),
            "B|AC" => Ok(Bipartition::BvsAC),
            "C|AB" => Ok(Bipartition::CvsAB),
            other => Err(Error::InvalidPartition(other.to_string())),
        }
    }
}

/// ρ_X ⊗ ρ_YZ across `partition`, each factor a random mixed state.
pub fn random_biseparable<R: Rng + ?Sized>(partition: Bipartition, rng: &mut R) -> DensityMatrix {
    let single = random_mixed(2, rng);
    let pair = random_mixed(4, rng);
    let product = single.matrix().kron(pair.matrix());
    // product is ordered (X, Y, Z) with Y < Z; move X back into place
    let perm: &[usize] = match partition {
        Bipartition::AvsBC => &[0, 1, 2],
        Bipartition::BvsAC => &[1, 0, 2],
        Bipartition::CvsAB => &[1, 2, 0],
    };
    let m = product.permute_subsystems(&[2, 2, 2], perm).unwrap();
    DensityMatrix::new_unchecked(m, vec![2, 2, 2]).unwrap()
}

pub fn random_biseparable_seeded(partition: Bipartition, seed: u64) -> DensityMatrix {
    random_biseparable(partition, &mut rng_from_seed(seed))
}

/// A convex mixture of biseparable components together with its recipe.
#[derive(Debug, Clone)]
pub struct BiseparableSample {
    pub state: DensityMatrix,
    pub components: Vec<(Bipartition, f64)>,
}

impl BiseparableSample {
    /// True when the recipe is a proper convex combination of biseparable
    /// terms, which makes the state biseparable.
    pub fn biseparable_by_construction(&self) -> bool {
        let total: f64 = self.components.iter().map(|(_, w)| w).sum();
        !self.components.is_empty() && self.components.iter().all(|(_, w)| *w >= 0.0) && (total - 1.0).abs() < 1e-12
    }
}

/// Mixture of `n` random biseparable states with Dirichlet(1,…,1) weights,
/// partitions drawn uniformly.
pub fn random_biseparable_mixture<R: Rng + ?Sized>(n: usize, rng: &mut R) -> BiseparableSample {
    assert!(n >= 1);
    let raw: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = raw.iter().sum();
    let mut components = Vec::with_capacity(n);
    let mut acc = ComplexMatrix::zeros(8);
    for w in raw {
        let w = w / total;
        let part = Bipartition::ALL[rng.random_range(0..3)];
        let s = random_biseparable(part, rng);
        acc = &acc + &s.matrix().scale_real(w);
        components.push((part, w));
    }
    let state = DensityMatrix::new_unchecked(acc, vec![2, 2, 2]).unwrap();
    BiseparableSample { state, components }
}

/// Cycles through the three pure-bipartition families and small mixtures;
/// the `k`-th draw of a given seed is always the same.
pub fn biseparable_suite(count: usize, seed: u64) -> Vec<DensityMatrix> {
    let mut rng = rng_from_seed(seed);
    (0..count)
        .map(|k| match k % 4 {
            3 => random_biseparable_mixture(2 + k % 3, &mut rng).state,
            i => random_biseparable(Bipartition::ALL[i], &mut rng),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn w_state_properties() {
        let w = w_state();
        assert!((w.matrix().trace() - ONE).norm() < 1e-15);
        assert!((w_vector()[1].re - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((w.purity() - 1.0).abs() < 1e-14);
        w.validate().unwrap();
    }

    #[test]
    fn ghz_state_properties() {
        let g = ghz_state();
        assert!((g.matrix().trace() - ONE).norm() < 1e-15);
        assert!((ghz_vector()[0].re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        let ev = linalg::eigvals_hermitian(g.matrix()).unwrap();
        assert_eq!(ev.iter().filter(|l| l.abs() > 1e-12).count(), 1);
    }

    #[test]
    fn noisy_mix_endpoints_and_spectrum() {
        let w = w_state();
        assert_eq!(noisy_mix(&w, 1.0).unwrap().matrix(), w.matrix());
        assert!(noisy_mix(&w, 0.0).unwrap().matrix().max_abs_diff(maximally_mixed(vec![2, 2, 2]).matrix()) < 1e-16);
        let p = 0.5;
        let ev = linalg::eigvals_hermitian(noisy_mix(&w, p).unwrap().matrix()).unwrap();
        for l in &ev[..7] {
            assert!((l - (1.0 - p) / 8.0).abs() < 1e-14);
        }
        assert!((ev[7] - (p + (1.0 - p) / 8.0)).abs() < 1e-14);
        assert!(matches!(noisy_mix(&w, 1.2), Err(Error::ParameterOutOfRange { .. })));
    }

    #[test]
    fn schmidt_examples() {
        let s = schmidt_state(1.0, 0.0).unwrap();
        assert_eq!(s.matrix(), &ComplexMatrix::unit(4, 0, 0));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let phi = schmidt_state(h, h).unwrap();
        assert!((phi.matrix()[(0, 3)].re - 0.5).abs() < 1e-15);
        assert!(matches!(schmidt_state(0.6, 0.6), Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn random_states_are_density_matrices() {
        let mut rng = rng_from_seed(7);
        for d in [2, 3, 8] {
            random_pure(d, &mut rng).validate().unwrap();
            random_mixed(d, &mut rng).validate().unwrap();
        }
        for p in Bipartition::ALL {
            random_biseparable(p, &mut rng).validate().unwrap();
        }
    }

    #[test]
    fn biseparable_is_ppt_across_the_cut() {
        let mut rng = rng_from_seed(11);
        for p in Bipartition::ALL {
            for _ in 0..20 {
                let s = random_biseparable(p, &mut rng);
                let pt = s.matrix().partial_transpose(&[2, 2, 2], p.single()).unwrap();
                assert!(linalg::min_eigenvalue(&pt).unwrap() >= -1e-9);
            }
        }
    }

    #[test]
    fn biseparable_factorizes_across_its_cut() {
        let s = random_biseparable_seeded(Bipartition::BvsAC, 3);
        let m = s.matrix();
        let rb = m.partial_trace(&[2, 2, 2], &[0, 2]).unwrap();
        let rac = m.partial_trace(&[2, 2, 2], &[1]).unwrap();
        let rebuilt = rb.kron(&rac).permute_subsystems(&[2, 2, 2], &[1, 0, 2]).unwrap();
        assert!(rebuilt.max_abs_diff(m) < 1e-14);
    }

    #[test]
    fn mixture_flag() {
        let s = random_biseparable_mixture(2, &mut rng_from_seed(5));
        assert!(s.biseparable_by_construction());
        s.state.validate().unwrap();
    }

    #[test]
    fn seeded_samplers_are_reproducible() {
        assert_eq!(random_pure_seeded(8, 42), random_pure_seeded(8, 42));
        assert_eq!(biseparable_suite(12, 9), biseparable_suite(12, 9));
        assert_ne!(random_pure_seeded(8, 42), random_pure_seeded(8, 43));
    }

    #[test]
    fn invalid_partition_label() {
        assert!("AB|C".parse::<Bipartition>().is_err());
        assert!(Bipartition::from_index(3).is_err());
    }
}
