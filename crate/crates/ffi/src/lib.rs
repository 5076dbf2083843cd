//! C ABI over `lindmap`.
//!
//! Objects cross the boundary as opaque handles (`LmMatrix`, `LmSuperOp`)
//! created by `lm_*` constructors and released with the matching `_free`.
//! Every fallible call returns an [`LmStatus`]; on failure a message is
//! available from [`lm_last_error`] until the next failing call on the same
//! thread. Matrices are passed as row-major `re`/`im` arrays of length d².

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lindmap::gme::{self, Detector, Verdict};
use lindmap::linalg::{self, ComplexMatrix};
use lindmap::states::{self, DensityMatrix};
use lindmap::superop;
use lindmap::{Error, MapFamily, SuperOp};
use num_complex::Complex64;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    NotHermitian = 4,
    NoConvergence = 5,
    NotADensityMatrix = 6,
    OutOfRange = 7,
    UnknownFamily = 8,
    NoSignChange = 9,
    Internal = 10,
}

/// Opaque square complex matrix.
pub struct LmMatrix(ComplexMatrix);

/// Opaque linear map on d×d matrices.
pub struct LmSuperOp(SuperOp);

/// Outcome of [`lm_detect_gme`].
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct LmDetectionReport {
    pub gamma: f64,
    pub c: f64,
    pub min_eigenvalue: f64,
    pub witness_value: f64,
    pub n_gme: f64,
    pub detected: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> LmStatus {
    match err {
        Error::NonHermitianInput { .. } => LmStatus::NotHermitian,
        Error::NoConvergence { .. } => LmStatus::NoConvergence,
        Error::DimensionMismatch { .. } => LmStatus::DimensionMismatch,
        Error::NoSignChange { .. } => LmStatus::NoSignChange,
        Error::ParameterOutOfRange { .. } | Error::NotNormalized { .. } => LmStatus::OutOfRange,
        Error::NotADensityMatrix(_) => LmStatus::NotADensityMatrix,
        Error::UnknownFamily(_) => LmStatus::UnknownFamily,
        Error::InvalidPartition(_) | Error::Parse(_) => LmStatus::InvalidArgument,
        Error::AssignmentNotFound => LmStatus::Internal,
    }
}

enum Fail {
    Lib(Error),
    Null(&'static str),
    Arg(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

/// Runs `f`, translating errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> LmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LmStatus::Ok,
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Null(name))) => {
            set_error(format!("`{name}` is null"));
            LmStatus::NullPointer
        }
        Ok(Err(Fail::Arg(msg))) => {
            set_error(msg);
            LmStatus::InvalidArgument
        }
        Err(_) => {
            set_error("internal panic".into());
            LmStatus::Internal
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, name: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(name))
}

unsafe fn write<T>(out: *mut T, name: &'static str, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null(name));
    }
    out.write(value);
    Ok(())
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

fn density(m: &ComplexMatrix) -> Result<DensityMatrix, Fail> {
    let dims = if m.dim() == 8 { vec![2, 2, 2] } else { vec![m.dim()] };
    Ok(DensityMatrix::new(m.clone(), dims)?)
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn lm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

// --- matrices -----------------------------------------------------------

/// Builds a `dim`×`dim` matrix from row-major arrays. `im` may be null for a
/// real matrix.
///
/// # Safety
/// `re` (and `im` when non-null) must point to `dim*dim` readable doubles.
#[no_mangle]
pub unsafe extern "C" fn lm_matrix_new(
    dim: usize,
    re: *const f64,
    im: *const f64,
    out: *mut *mut LmMatrix,
) -> LmStatus {
    guard(|| {
        if re.is_null() {
            return Err(Fail::Null("re"));
        }
        if dim == 0 || dim > linalg::MAX_DIM {
            return Err(Fail::Arg(format!("dimension {dim} outside 1..={}", linalg::MAX_DIM)));
        }
        let n = dim * dim;
        let re = std::slice::from_raw_parts(re, n);
        let data: Vec<Complex64> = if im.is_null() {
            re.iter().map(|&r| Complex64::new(r, 0.0)).collect()
        } else {
            let im = std::slice::from_raw_parts(im, n);
            re.iter().zip(im).map(|(&r, &i)| Complex64::new(r, i)).collect()
        };
        let m = ComplexMatrix::from_row_major(data)?;
        write(out, "out", boxed(LmMatrix(m)))
    })
}

/// # Safety
/// `m` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn lm_matrix_free(m: *mut LmMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Dimension of `m`, 0 for null.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lm_matrix_dim(m: *const LmMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.dim())
}

/// # Safety
/// `m` must be a live handle; `re`/`im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lm_matrix_get(
    m: *const LmMatrix,
    row: usize,
    col: usize,
    re: *mut f64,
    im: *mut f64,
) -> LmStatus {
    guard(|| {
        let m = &deref(m, "m")?.0;
        if row >= m.dim() || col >= m.dim() {
            return Err(Fail::Arg(format!("index ({row}, {col}) outside {0}×{0}", m.dim())));
        }
        let z = m[(row, col)];
        write(re, "re", z.re)?;
        write(im, "im", z.im)
    })
}

/// Smallest eigenvalue of a Hermitian matrix.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lm_matrix_min_eigenvalue(m: *const LmMatrix, out: *mut f64) -> LmStatus {
    guard(|| write(out, "out", linalg::min_eigenvalue(&deref(m, "m")?.0)?))
}

/// Trace norm (sum of absolute eigenvalues) of a Hermitian matrix.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lm_matrix_trace_norm(m: *const LmMatrix, out: *mut f64) -> LmStatus {
    guard(|| write(out, "out", linalg::trace_norm(&deref(m, "m")?.0)?))
}

// --- maps ---------------------------------------------------------------

/// Builds a named family member: `lambda-gamma`, `phi-alpha`, `phi2-alpha`,
/// `phiC-beta`, `choi-F` or `transposition` (parameter = dimension).
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lm_superop_family(name: *const c_char, param: f64, out: *mut *mut LmSuperOp) -> LmStatus {
    guard(|| {
        if name.is_null() {
            return Err(Fail::Null("name"));
        }
        let name = CStr::from_ptr(name).to_str().map_err(|_| Fail::Arg("name is not UTF-8".into()))?;
        let family: MapFamily = name.parse()?;
        write(out, "out", boxed(LmSuperOp(family.build(param)?)))
    })
}

/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lm_superop_free(s: *mut LmSuperOp) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Dimension d of the matrices the map acts on, 0 for null.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lm_superop_dim(s: *const LmSuperOp) -> usize {
    s.as_ref().map_or(0, |s| s.0.dim())
}

/// `out = S(x)` as a new matrix handle.
///
/// # Safety
/// `s` and `x` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lm_superop_apply(
    s: *const LmSuperOp,
    x: *const LmMatrix,
    out: *mut *mut LmMatrix,
) -> LmStatus {
    guard(|| {
        let y = deref(s, "s")?.0.apply(&deref(x, "x")?.0)?;
        write(out, "out", boxed(LmMatrix(y)))
    })
}

/// Choi matrix with the trace-one maximally entangled state.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lm_superop_choi(s: *const LmSuperOp, out: *mut *mut LmMatrix) -> LmStatus {
    guard(|| write(out, "out", boxed(LmMatrix(superop::choi(&deref(s, "s")?.0)))))
}

/// Complete positivity: Choi matrix PSD within `tol`.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lm_superop_is_cp(s: *const LmSuperOp, tol: f64, out: *mut bool) -> LmStatus {
    guard(|| write(out, "out", superop::is_completely_positive(&deref(s, "s")?.0, tol)?))
}

// --- states and GME -----------------------------------------------------

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lm_state_w(out: *mut *mut LmMatrix) -> LmStatus {
    guard(|| write(out, "out", boxed(LmMatrix(states::w_state().into_matrix()))))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lm_state_ghz(out: *mut *mut LmMatrix) -> LmStatus {
    guard(|| write(out, "out", boxed(LmMatrix(states::ghz_state().into_matrix()))))
}

/// p·|W⟩⟨W| + (1−p)·𝕀/8
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lm_state_noisy_w(p: f64, out: *mut *mut LmMatrix) -> LmStatus {
    guard(|| write(out, "out", boxed(LmMatrix(states::noisy_w(p)?.into_matrix()))))
}

/// Applies the lifted Λ_γ (trace constant 1) to a three-qubit density
/// matrix. The witness value and 𝒩_GME (with 𝒦 = 1) are always filled in;
/// the verdict follows the lifted spectrum.
///
/// # Safety
/// `rho` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lm_detect_gme(
    rho: *const LmMatrix,
    gamma: f64,
    rotated: bool,
    out: *mut LmDetectionReport,
) -> LmStatus {
    guard(|| {
        let rho = density(&deref(rho, "rho")?.0)?;
        let mut detector = Detector::new(gamma);
        detector.rotated = rotated;
        detector.ngme_k = Some(1.0);
        let r = detector.run(&rho)?;
        let witness = gme::Witness::from_map(&gme::lifted_lambda(gamma, rotated))?.value(&rho)?;
        let report = LmDetectionReport {
            gamma: r.gamma,
            c: r.c,
            min_eigenvalue: r.min_eigenvalue,
            witness_value: witness,
            n_gme: r.n_gme.unwrap_or(f64::NAN),
            detected: r.verdict == Verdict::GmeDetected,
        };
        write(out, "out", report)
    })
}

/// 𝒩_GME of a three-qubit density matrix with normalization `k`.
///
/// # Safety
/// `rho` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lm_n_gme(rho: *const LmMatrix, k: f64, out: *mut f64) -> LmStatus {
    guard(|| {
        let rho = density(&deref(rho, "rho")?.0)?;
        write(out, "out", gme::n_gme(&rho, k)?)
    })
}

/// tr(𝒲ρ) for the witness built at γ = ½.
///
/// # Safety
/// `rho` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lm_witness_value(rho: *const LmMatrix, out: *mut f64) -> LmStatus {
    guard(|| {
        let rho = density(&deref(rho, "rho")?.0)?;
        write(out, "out", gme::witness_value(&rho)?)
    })
}
