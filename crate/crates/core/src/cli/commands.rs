//! Command implementations. Each returns the text to emit.

use serde::Serialize;

use super::io::StateFile;
use super::sweep::{SweepParam, SweepSpec, SweepTarget};
use super::{AnalyzeArgs, ChoiArgs, CliError, DetectArgs, FamilyParam, StateArgs, SweepArgs};
use crate::error::Error;
use crate::families::{Interval, MapFamily};
use crate::gme::{self, Detector};
use crate::linalg;
use crate::states::{self, Bipartition, DensityMatrix};
use crate::superop::{self, PureScan};
use crate::tol::Tolerances;

type CmdResult = Result<String, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn to_json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("report serializes");
    s.push('\n');
    s
}

fn resolve_family(p: &FamilyParam) -> Result<(MapFamily, f64), CliError> {
    let family: MapFamily = p.family.parse().map_err(|e: Error| usage(e.to_string()))?;
    let flag = match family.parameter() {
        "gamma" => p.gamma,
        "alpha" => p.alpha,
        "beta" => p.beta,
        _ => None,
    };
    let value = match (p.value, flag) {
        (Some(_), Some(_)) => return Err(usage("give the parameter either positionally or by flag, not both")),
        (Some(v), None) | (None, Some(v)) => v,
        (None, None) => return Err(usage(format!("{family} needs a value for `{}`", family.parameter()))),
    };
    Ok((family, value))
}

#[derive(Debug, Serialize)]
struct RangeReport {
    lo: f64,
    hi: f64,
}

impl From<Interval> for RangeReport {
    fn from(i: Interval) -> Self {
        RangeReport { lo: i.lo, hi: i.hi }
    }
}

#[derive(Debug, Serialize)]
struct AnalyzeReport {
    family: &'static str,
    parameter: &'static str,
    value: f64,
    /// Map the verdicts refer to; differs from `family` only for the
    /// traceless generator `phiC-beta`, whose positive member is `choi-F`.
    analyzed_map: &'static str,
    dim: usize,
    positive: bool,
    positivity_method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pure_scan_min_eigenvalue: Option<f64>,
    completely_positive: bool,
    choi_min_eigenvalue: f64,
    choi_spectrum: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    positive_range: Option<RangeReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cp_range: Option<RangeReport>,
    tolerance: f64,
}

pub fn cmd_analyze(args: &AnalyzeArgs, tol: Tolerances) -> CmdResult {
    let (family, value) = resolve_family(&args.param)?;
    let analyzed = if family == MapFamily::PhiCBeta { MapFamily::ChoiMapF } else { family };
    let map = analyzed.build(value)?;
    let (positive, method, scan_min) = match analyzed.positive_closed_form(value, tol.psd) {
        Some(p) => (p, "closed-form", None),
        None => {
            let scan = PureScan { samples: args.samples, refine: true, seed: args.seed };
            let m = superop::min_output_eigenvalue_over_pure(&map, scan)?;
            (m >= -tol.psd, "pure-state-scan", Some(m))
        }
    };
    let spectrum = superop::choi_spectrum(&map)?;
    let choi_min = spectrum[0];
    let report = AnalyzeReport {
        family: family.name(),
        parameter: family.parameter(),
        value,
        analyzed_map: analyzed.name(),
        dim: map.dim(),
        positive,
        positivity_method: method,
        pure_scan_min_eigenvalue: scan_min,
        completely_positive: choi_min >= -tol.psd,
        choi_min_eigenvalue: choi_min,
        choi_spectrum: spectrum,
        positive_range: analyzed.positive_range().map(Into::into),
        cp_range: analyzed.cp_range().map(Into::into),
        tolerance: tol.psd,
    };
    Ok(to_json_line(&report))
}

fn parse_k(k: &str) -> Result<f64, CliError> {
    if k.eq_ignore_ascii_case("w") {
        return Ok(gme::k_normalizing_w());
    }
    let v: f64 = k.parse().map_err(|_| usage(format!("--K expects a positive number or `w`, got `{k}`")))?;
    if v.is_nan() || v <= 0.0 {
        return Err(usage(format!("--K must be positive, got {v}")));
    }
    Ok(v)
}

fn read_state(path: &std::path::Path, raw: bool) -> Result<DensityMatrix, CliError> {
    Ok(StateFile::read(path)?.to_state(raw)?)
}

pub fn cmd_detect(args: &DetectArgs, tol: Tolerances) -> CmdResult {
    let k = if args.ngme { Some(parse_k(&args.k)?) } else { None };
    let rho = read_state(&args.state_file, args.raw)?;
    let detector = Detector {
        gamma: args.gamma,
        c: args.c,
        rotated: args.rotated,
        witness: args.witness,
        ngme_k: k,
        tol: tol.psd,
    };
    Ok(to_json_line(&detector.run(&rho)?))
}

pub fn cmd_sweep(args: &SweepArgs) -> CmdResult {
    let target_name = args.target.as_str();
    let (target, default_param) = if target_name == "lifted" {
        let state = match &args.state_file {
            Some(path) => read_state(path, args.raw)?,
            None => named_state(&args.state, None, None, None, 8, crate::superop::DEFAULT_SEED)?,
        };
        let ngme_k = if args.ngme { Some(parse_k(&args.k)?) } else { None };
        let t = SweepTarget::Lifted { state, gamma: args.gamma, rotated: args.rotated, witness: args.witness, ngme_k };
        (t, "gamma")
    } else {
        let family: MapFamily = target_name.parse().map_err(|e: Error| usage(e.to_string()))?;
        if args.witness || args.ngme {
            return Err(usage("--witness and --ngme apply to lifted sweeps only"));
        }
        (SweepTarget::Family(family), family.parameter())
    };
    let param: SweepParam =
        args.param.as_deref().unwrap_or(default_param).parse().map_err(|e: Error| usage(e.to_string()))?;
    if args.steps < 2 || args.start.is_nan() || args.stop.is_nan() || args.start >= args.stop {
        return Err(usage("sweeps need --steps ≥ 2 and --start < --stop"));
    }
    let spec = SweepSpec { target, param, start: args.start, stop: args.stop, steps: args.steps };
    spec.validate().map_err(|e| match e {
        Error::Parse(msg) => usage(msg),
        other => CliError::Data(other),
    })?;
    Ok(spec.to_csv()?)
}

/// Builds a named state. Eight-dimensional states are labelled as three
/// qubits.
pub fn named_state(
    name: &str,
    p: Option<f64>,
    c1: Option<f64>,
    c2: Option<f64>,
    dim: usize,
    seed: u64,
) -> Result<DensityMatrix, CliError> {
    let dims_for = |d: usize| if d == 8 { vec![2, 2, 2] } else { vec![d] };
    Ok(match name {
        "w" => states::w_state(),
        "ghz" => states::ghz_state(),
        "noisy-w" => states::noisy_w(p.ok_or_else(|| usage("noisy-w needs --p"))?)?,
        "schmidt" => {
            let (a, b) = c1.zip(c2).ok_or_else(|| usage("schmidt needs --c1 and --c2"))?;
            states::schmidt_state(a, b)?
        }
        "mixed" => states::maximally_mixed(dims_for(dim)),
        "random-pure" => {
            let s = states::random_pure_seeded(dim, seed);
            DensityMatrix::new_unchecked(s.into_matrix(), dims_for(dim))?
        }
        "biseparable" => {
            let mut rng = states::rng_from_seed(seed);
            let part = Bipartition::ALL[(seed % 3) as usize];
            states::random_biseparable(part, &mut rng)
        }
        other => return Err(usage(format!("unknown state `{other}`"))),
    })
}

pub fn cmd_state(args: &StateArgs) -> CmdResult {
    if args.dim == 0 || args.dim > linalg::MAX_DIM {
        return Err(usage(format!("--dim must be in 1..={}", linalg::MAX_DIM)));
    }
    let rho = named_state(&args.name, args.p, args.c1, args.c2, args.dim, args.seed)?;
    let mut s = StateFile::from_state(&rho).to_json();
    s.push('\n');
    Ok(s)
}

#[derive(Debug, Serialize)]
struct ChoiReport {
    family: &'static str,
    value: f64,
    choi: StateFile,
}

pub fn cmd_choi(args: &ChoiArgs) -> CmdResult {
    let (family, value) = resolve_family(&args.param)?;
    let map = family.build(value)?;
    let d = map.dim();
    let choi = StateFile::from_matrix(&superop::choi(&map), Some(vec![d, d]));
    Ok(to_json_line(&ChoiReport { family: family.name(), value, choi }))
}
