//! JSON state files.
//!
//! ```json
//! {"dim": 2, "dims": [2], "matrix": [[[0.5, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.5, 0.0]]]}
//! ```
//!
//! Each entry is an `[re, im]` pair; numbers are written in shortest
//! round-trip form, so emit → parse reproduces the matrix bit for bit.

use std::path::Path;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::states::DensityMatrix;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl StateFile {
    pub fn from_matrix(m: &ComplexMatrix, dims: Option<Vec<usize>>) -> Self {
        StateFile {
            dim: m.dim(),
            dims,
            matrix: m.rows().map(|row| row.iter().map(|z| [z.re, z.im]).collect()).collect(),
        }
    }

    pub fn from_state(rho: &DensityMatrix) -> Self {
        Self::from_matrix(rho.matrix(), Some(rho.dims().to_vec()))
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        if self.matrix.len() != self.dim {
            return Err(Error::Parse(format!("expected {} rows, found {}", self.dim, self.matrix.len())));
        }
        let rows: Vec<Vec<C64>> =
            self.matrix.iter().map(|r| r.iter().map(|&[re, im]| C64::new(re, im)).collect()).collect();
        ComplexMatrix::from_rows(&rows).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Parses into a validated density matrix, or skips validation when
    /// `raw` is set. Missing `dims` defaults to `[dim]`.
    pub fn to_state(&self, raw: bool) -> Result<DensityMatrix> {
        let m = self.to_matrix()?;
        let dims = self.dims.clone().unwrap_or_else(|| vec![self.dim]);
        if raw {
            DensityMatrix::new_unchecked(m, dims)
        } else {
            DensityMatrix::new(m, dims)
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("state file serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{noisy_w, w_state};

    #[test]
    fn round_trip_is_bit_exact() {
        for rho in [w_state(), noisy_w(0.8).unwrap()] {
            let text = StateFile::from_state(&rho).to_json();
            let back = StateFile::from_json(&text).unwrap().to_state(false).unwrap();
            assert_eq!(back, rho);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(StateFile::from_json("{"), Err(Error::Parse(_))));
        let f = StateFile { dim: 2, dims: None, matrix: vec![vec![[1.0, 0.0], [0.0, 0.0]]] };
        assert!(f.to_matrix().is_err());
        // trace 2
        let f =
            StateFile { dim: 2, dims: None, matrix: vec![vec![[1.0, 0.0], [0.0, 0.0]], vec![[0.0, 0.0], [1.0, 0.0]]] };
        assert!(matches!(f.to_state(false), Err(Error::NotADensityMatrix(_))));
        assert!(f.to_state(true).is_ok());
    }
}
