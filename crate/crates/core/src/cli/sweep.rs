//! Parameter sweeps written as CSV.
//!
//! Rows are `param,<columns…>` with every number in `{:.16e}` (17
//! significant digits), `,` separators and LF line endings, so the same
//! sweep is byte-identical across runs.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::families::MapFamily;
use crate::families::{lambda_gamma, pauli_x};
use crate::gme::{lift, n_gme, Witness, DETECTION_C};
use crate::linalg;
use crate::states::{self, DensityMatrix};
use crate::superop::choi;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    Gamma,
    Alpha,
    Beta,
    P,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::Gamma => "gamma",
            SweepParam::Alpha => "alpha",
            SweepParam::Beta => "beta",
            SweepParam::P => "p",
        }
    }
}

impl std::str::FromStr for SweepParam {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gamma" => Ok(SweepParam::Gamma),
            "alpha" => Ok(SweepParam::Alpha),
            "beta" => Ok(SweepParam::Beta),
            "p" => Ok(SweepParam::P),
            other => Err(Error::Parse(format!("unknown sweep parameter `{other}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub enum SweepTarget {
    /// Minimum Choi eigenvalue of a family along its own parameter.
    Family(MapFamily),
    /// Lifted Λ_γ applied to a three-qubit state. With `param = p` the state
    /// is mixed with white noise at weight `p` and γ stays fixed.
    Lifted { state: DensityMatrix, gamma: f64, rotated: bool, witness: bool, ngme_k: Option<f64> },
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub target: SweepTarget,
    pub param: SweepParam,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub param: f64,
    pub min_eigenvalue: f64,
    pub witness_value: Option<f64>,
    pub n_gme: Option<f64>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::ParameterOutOfRange { name: "steps", value: self.steps as f64 });
        }
        if self.start.is_nan() || self.stop.is_nan() || self.start >= self.stop {
            return Err(Error::ParameterOutOfRange { name: "stop", value: self.stop });
        }
        match &self.target {
            SweepTarget::Family(f) => {
                if f.parameter() != self.param.name() {
                    return Err(Error::Parse(format!("family {f} is swept over `{}`", f.parameter())));
                }
            }
            SweepTarget::Lifted { state, .. } => {
                if !matches!(self.param, SweepParam::Gamma | SweepParam::P) {
                    return Err(Error::Parse("lifted sweeps run over `gamma` or `p`".into()));
                }
                if state.dim() != 8 {
                    return Err(Error::DimensionMismatch { expected: 8, found: state.dim() });
                }
                if self.param == SweepParam::P && (self.start < 0.0 || self.stop > 1.0) {
                    return Err(Error::ParameterOutOfRange { name: "p", value: self.stop });
                }
            }
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let n = self.steps - 1;
        (0..self.steps)
            .map(|k| if k == n { self.stop } else { self.start + (self.stop - self.start) * k as f64 / n as f64 })
            .collect()
    }

    pub fn columns(&self) -> Vec<&'static str> {
        let mut cols = vec!["param", "min_eigenvalue"];
        if let SweepTarget::Lifted { witness, ngme_k, .. } = &self.target {
            if *witness {
                cols.push("witness_value");
            }
            if ngme_k.is_some() {
                cols.push("n_gme");
            }
        }
        cols
    }

    /// Evaluates one row; sweep rows are exactly these pointwise values.
    pub fn evaluate(&self, x: f64) -> Result<SweepRow> {
        match &self.target {
            SweepTarget::Family(f) => {
                let m = choi(&f.build(x)?);
                Ok(SweepRow { param: x, min_eigenvalue: linalg::min_eigenvalue(&m)?, witness_value: None, n_gme: None })
            }
            SweepTarget::Lifted { state, gamma, rotated, witness, ngme_k } => {
                let (g, rho) = match self.param {
                    SweepParam::P => (*gamma, states::noisy_mix(state, x)?),
                    _ => (x, state.clone()),
                };
                let map = lift(lambda_gamma(g), DETECTION_C, rotated.then(pauli_x))?;
                let min_eigenvalue = map.min_output_eigenvalue(rho.matrix())?;
                let witness_value = if *witness { Some(Witness::from_map(&map)?.value(&rho)?) } else { None };
                let n = ngme_k.map(|k| n_gme(&rho, k)).transpose()?;
                Ok(SweepRow { param: x, min_eigenvalue, witness_value, n_gme: n })
            }
        }
    }

    pub fn run(&self) -> Result<Vec<SweepRow>> {
        self.validate()?;
        self.values().into_iter().map(|x| self.evaluate(x)).collect()
    }

    pub fn to_csv(&self) -> Result<String> {
        let rows = self.run()?;
        let mut out = self.columns().join(",");
        out.push('\n');
        for r in rows {
            let mut fields = vec![fmt17(r.param), fmt17(r.min_eigenvalue)];
            fields.extend(r.witness_value.map(fmt17));
            fields.extend(r.n_gme.map(fmt17));
            writeln!(out, "{}", fields.join(",")).unwrap();
        }
        Ok(out)
    }
}

/// 17 significant digits in scientific notation.
pub fn fmt17(x: f64) -> String {
    // normalize -0 so golden files do not depend on rounding direction
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::w_state;

    fn lifted(param: SweepParam, start: f64, stop: f64, steps: usize) -> SweepSpec {
        SweepSpec {
            target: SweepTarget::Lifted {
                state: w_state(),
                gamma: 0.5,
                rotated: false,
                witness: true,
                ngme_k: Some(1.0),
            },
            param,
            start,
            stop,
            steps,
        }
    }

    #[test]
    fn csv_layout() {
        let csv = lifted(SweepParam::Gamma, 0.0, 0.5, 3).to_csv().unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "param,min_eigenvalue,witness_value,n_gme");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("0.0000000000000000e0,"));
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn rows_match_pointwise_evaluation() {
        let spec = lifted(SweepParam::P, 0.0, 1.0, 5);
        let rows = spec.run().unwrap();
        for (r, x) in rows.iter().zip(spec.values()) {
            assert_eq!(r, &spec.evaluate(x).unwrap());
        }
    }

    #[test]
    fn phi_alpha_choi_line() {
        let spec = SweepSpec {
            target: SweepTarget::Family(MapFamily::PhiAlpha),
            param: SweepParam::Alpha,
            start: 0.0,
            stop: 0.5,
            steps: 6,
        };
        for r in spec.run().unwrap() {
            assert!((r.min_eigenvalue + 2.0 * r.param / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn invalid_specs() {
        assert!(lifted(SweepParam::Gamma, 0.0, 0.5, 1).validate().is_err());
        assert!(lifted(SweepParam::Gamma, 0.5, 0.0, 5).validate().is_err());
        assert!(lifted(SweepParam::Alpha, 0.0, 0.5, 5).validate().is_err());
        let spec = SweepSpec {
            target: SweepTarget::Family(MapFamily::PhiAlpha),
            param: SweepParam::Beta,
            start: 0.0,
            stop: 1.0,
            steps: 3,
        };
        assert!(spec.validate().is_err());
    }

    #[test]
    fn fmt17_digits() {
        assert_eq!(fmt17(0.5), "5.0000000000000000e-1");
        assert_eq!(fmt17(-0.0), "0.0000000000000000e0");
    }
}
