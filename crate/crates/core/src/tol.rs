//! Numerical tolerances shared across the crate.
//!
//! `LINDMAP_TOL` in the environment overrides the PSD / verdict tolerance
//! through [`Tolerances::from_env`]; the library constants never change.

/// Hermiticity check: max |M_ij − conj(M_ji)|.
pub const HERM_TOL: f64 = 1e-9;

/// Eigen-reconstruction and orthonormality.
pub const EIG_TOL: f64 = 1e-10;

/// Default tolerance for "min eigenvalue ≥ −tol".
pub const PSD_TOL: f64 = 1e-9;

/// Trace of a density matrix must equal one to this accuracy.
pub const TRACE_TOL: f64 = 1e-12;

/// Jacobi stops once the off-diagonal Frobenius mass drops below this
/// (relative to max(1, ‖M‖_F)).
pub const JACOBI_OFF_TOL: f64 = 1e-14;

pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Values of 𝒩_GME below this are reported as zero.
pub const NGME_CLAMP: f64 = 1e-12;

pub const ENV_VAR: &str = "LINDMAP_TOL";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub psd: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { psd: PSD_TOL }
    }
}

impl Tolerances {
    pub fn from_env() -> Self {
        std::env::var(ENV_VAR)
            .ok()
            .and_then(|s| s.trim().parse::<f64>().ok())
            .filter(|t| t.is_finite() && *t >= 0.0)
            .map(|psd| Tolerances { psd })
            .unwrap_or_default()
    }
}
