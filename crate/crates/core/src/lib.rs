//! Positive but not completely positive maps assembled from Lindblad
//! dissipators, and their use as entanglement and GME detectors.
//!
//! ```
//! use lindmap::families::phi_alpha;
//! use lindmap::superop::choi_spectrum;
//!
//! let spectrum = choi_spectrum(&phi_alpha(0.25)).unwrap();
//! assert!((spectrum[0] + 1.0 / 6.0).abs() < 1e-12);
//! ```

pub mod cli;
pub mod error;
pub mod families;
pub mod gme;
pub mod linalg;
pub mod search;
pub mod states;
pub mod superop;
pub mod tol;

pub use error::{Error, Result};
pub use families::MapFamily;
pub use gme::{detect_gme, n_gme, witness_value, DetectionReport, Verdict};
pub use linalg::ComplexMatrix;
pub use states::DensityMatrix;
pub use superop::SuperOp;
