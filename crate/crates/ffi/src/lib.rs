//! C interface to `entmol`.
//!
//! Objects are opaque handles created by `entmol_*` constructors and released with the
//! matching `*_free`. Every fallible call returns an [`EntmolStatus`]; on failure
//! [`entmol_last_error`] describes the problem for the calling thread. Strings returned
//! through out-parameters are owned by the caller and released with
//! [`entmol_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use entmol::analysis::analyze_spec;
use entmol::measures::{self, PairMeasures};
use entmol::molecule::{generate, parse_spec, FamilyState, GraphKind, MoleculeSpec, WeightPattern};
use entmol::qcore::{outer_product, partial_trace, reduced_pair_from_pure, DensityOperator, PureState, StateFile, C64};
use entmol::{states, Error, Limits};

/// A normalized pure state.
pub struct EntmolPureState(PureState);

/// A validated density operator.
pub struct EntmolDensity(DensityOperator);

/// A molecule spec together with its family state.
pub struct EntmolMolecule(FamilyState);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntmolStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidState = 3,
    Domain = 4,
    Capacity = 5,
    Parse = 6,
    Numerical = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct EntmolPairMeasures {
    pub concurrence: f64,
    pub eof: f64,
    pub fef: f64,
    pub teleport_fidelity: f64,
    pub ppt: bool,
    pub min_pt_eigenvalue: f64,
}

impl From<PairMeasures> for EntmolPairMeasures {
    fn from(m: PairMeasures) -> Self {
        EntmolPairMeasures {
            concurrence: m.concurrence,
            eof: m.eof,
            fef: m.fef,
            teleport_fidelity: m.teleport_fidelity,
            ppt: m.ppt,
            min_pt_eigenvalue: m.min_pt_eigenvalue,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(EntmolStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Capacity { .. } => EntmolStatus::Capacity,
            Error::QubitIndex { .. } | Error::DuplicateQubit(_) | Error::Dimension { .. } => {
                EntmolStatus::InvalidArgument
            }
            Error::NotHermitian { .. } | Error::InvalidState(_) => EntmolStatus::InvalidState,
            Error::NoConvergence { .. } => EntmolStatus::Numerical,
            Error::Domain(_) | Error::Io(_) => EntmolStatus::Domain,
            Error::Parse(_) | Error::Json(_) => EntmolStatus::Parse,
        };
        Failure(status, e.to_string())
    }
}

type FfiResult<T> = Result<T, Failure>;

fn null(what: &str) -> Failure {
    Failure(EntmolStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> FfiResult<()>) -> EntmolStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EntmolStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            EntmolStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> FfiResult<&'a T> {
    unsafe { p.as_ref() }.ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> FfiResult<()> {
    if out.is_null() {
        return Err(null(what));
    }
    unsafe { out.write(value) };
    Ok(())
}

unsafe fn put_handle<T>(out: *mut *mut T, value: T) -> FfiResult<()> {
    if out.is_null() {
        return Err(null("out"));
    }
    unsafe { out.write(Box::into_raw(Box::new(value))) };
    Ok(())
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> FfiResult<&'a str> {
    if s.is_null() {
        return Err(null(what));
    }
    unsafe { CStr::from_ptr(s) }
        .to_str()
        .map_err(|_| Failure(EntmolStatus::InvalidArgument, format!("{what} is not valid UTF-8")))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> FfiResult<()> {
    let c = CString::new(s).map_err(|_| Failure(EntmolStatus::InvalidArgument, "string contains NUL".into()))?;
    unsafe { put(out, c.into_raw(), "out") }
}

fn limits() -> FfiResult<Limits> {
    Ok(Limits::from_env()?)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn entmol_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or NULL. Valid until the next failing
/// call on the same thread.
#[no_mangle]
pub extern "C" fn entmol_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from an `entmol_*` out-parameter and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn entmol_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

// ---------------------------------------------------------------- pure states

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn entmol_pure_ghz(n: usize, out: *mut *mut EntmolPureState) -> EntmolStatus {
    guard(|| unsafe { put_handle(out, EntmolPureState(states::ghz(n, &limits()?)?)) })
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn entmol_pure_w(n: usize, out: *mut *mut EntmolPureState) -> EntmolStatus {
    guard(|| unsafe { put_handle(out, EntmolPureState(states::w_state(n, &limits()?)?)) })
}

/// Star state `a|1>|0..0> + b|0>|N-2,1>`; requires `a^2 + (n-1) b^2 = 1`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn entmol_pure_star(n: usize, a: f64, b: f64, out: *mut *mut EntmolPureState) -> EntmolStatus {
    guard(|| unsafe { put_handle(out, EntmolPureState(states::star_pure_state(n, a, b, &limits()?)?)) })
}

/// Bell pair on qubits `i`, `j` (1-based) of `n`, others in `|0>`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn entmol_pure_bell(
    n: usize,
    i: usize,
    j: usize,
    out: *mut *mut EntmolPureState,
) -> EntmolStatus {
    guard(|| unsafe { put_handle(out, EntmolPureState(states::embedded_bell(n, i, j, &limits()?)?)) })
}

/// Haar-random pure state, reproducible from `seed`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn entmol_pure_random(n: usize, seed: u64, out: *mut *mut EntmolPureState) -> EntmolStatus {
    guard(|| unsafe { put_handle(out, EntmolPureState(states::random_pure(n, seed, &limits()?)?)) })
}

/// Builds a state from `2 * 2^n` interleaved `(re, im)` doubles; the norm must be 1.
///
/// # Safety
/// `data` must point to `len` readable doubles; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn entmol_pure_from_amplitudes(
    n: usize,
    data: *const f64,
    len: usize,
    out: *mut *mut EntmolPureState,
) -> EntmolStatus {
    guard(|| {
        limits()?.check_pure(n)?;
        if data.is_null() {
            return Err(null("data"));
        }
        let raw = unsafe { std::slice::from_raw_parts(data, len) };
        if !len.is_multiple_of(2) {
            return Err(Failure(
                EntmolStatus::InvalidArgument,
                "amplitude data must be (re, im) pairs".into(),
            ));
        }
        let amps = raw.chunks_exact(2).map(|p| C64::new(p[0], p[1])).collect();
        unsafe { put_handle(out, EntmolPureState(PureState::new(n, amps)?)) }
    })
}

/// # Safety
/// `state` must be NULL or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn entmol_pure_free(state: *mut EntmolPureState) {
    if !state.is_null() {
        drop(unsafe { Box::from_raw(state) });
    }
}

/// Qubit count, or 0 for NULL.
///
/// # Safety
/// `state` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn entmol_pure_n_qubits(state: *const EntmolPureState) -> usize {
    unsafe { state.as_ref() }.map_or(0, |s| s.0.n_qubits())
}

/// Copies the amplitudes as interleaved `(re, im)` doubles into `out`, which must hold
/// `2 * 2^n` values.
///
/// # Safety
/// `state` must be a live handle; `out` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn entmol_pure_amplitudes(
    state: *const EntmolPureState,
    out: *mut f64,
    len: usize,
) -> EntmolStatus {
    guard(|| {
        let s = unsafe { borrow(state, "state") }?;
        let need = 2 * s.0.dim();
        if out.is_null() {
            return Err(null("out"));
        }
        if len < need {
            return Err(Failure(
                EntmolStatus::BufferTooSmall,
                format!("need {need} doubles, got {len}"),
            ));
        }
        let buf = unsafe { std::slice::from_raw_parts_mut(out, need) };
        for (pair, a) in buf.chunks_exact_mut(2).zip(s.0.amplitudes()) {
            pair[0] = a.re;
            pair[1] = a.im;
        }
        Ok(())
    })
}

/// Serializes to the JSON state format.
///
/// # Safety
/// `state` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn entmol_pure_to_json(state: *const EntmolPureState, out: *mut *mut c_char) -> EntmolStatus {
    guard(|| {
        let s = unsafe { borrow(state, "state") }?;
        unsafe { put_string(out, StateFile::Pure(s.0.clone()).to_json()) }
    })
}

/// Density operator `|psi><psi|`.
///
/// # Safety
/// `state` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn entmol_pure_to_density(
    state: *const EntmolPureState,
    out: *mut *mut EntmolDensity,
) -> EntmolStatus {
    guard(|| {
        let s = unsafe { borrow(state, "state") }?;
        unsafe { put_handle(out, EntmolDensity(outer_product(&s.0, &limits()?)?)) }
    })
}

/// Two-qubit reduction onto qubits `i`, `j` (1-based, `i` first).
///
/// # Safety
/// `state` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn entmol_pure_reduced_pair(
    state: *const EntmolPureState,
    i: usize,
    j: usize,
    out: *mut *mut EntmolDensity,
) -> EntmolStatus {
    guard(|| {
        let s = unsafe { borrow(state, "state") }?;
        unsafe { put_handle(out, EntmolDensity(reduced_pair_from_pure(&s.0, i, j)?)) }
    })
}

// ---------------------------------------------------------------- densities

/// Parses a JSON state file; pure states are converted to `|psi><psi|`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn entmol_density_from_json(json: *const c_char, out: *mut *mut EntmolDensity) -> EntmolStatus {
    guard(|| {
        let text = unsafe { read_str(json, "json") }?;
        let lim = limits()?;
        let rho = match StateFile::from_json(text)? {
            StateFile::Pure(p) => outer_product(&p, &lim)?,
            StateFile::Density(d) => {
                lim.check_density(d.n_qubits())?;
                d
            }
        };
        unsafe { put_handle(out, EntmolDensity(rho)) }
    })
}

/// # Safety
/// `rho` must be NULL or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn entmol_density_free(rho: *mut EntmolDensity) {
    if !rho.is_null() {
        drop(unsafe { Box::from_raw(rho) });
    }
}

/// Qubit count, or 0 for NULL.
///
/// # Safety
/// `rho` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn entmol_density_n_qubits(rho: *const EntmolDensity) -> usize {
    unsafe { rho.as_ref() }.map_or(0, |r| r.0.n_qubits())
}

/// # Safety
/// `rho` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn entmol_density_to_json(rho: *const EntmolDensity, out: *mut *mut c_char) -> EntmolStatus {
    guard(|| {
        let r = unsafe { borrow(rho, "rho") }?;
        unsafe { put_string(out, StateFile::Density(r.0.clone()).to_json()) }
    })
}

/// Reduced operator on the `len` 1-based qubits in `keep`, in listed order.
///
/// # Safety
/// `rho` must be a live handle, `keep` must point to `len` values, `out` must be valid
/// for writes.
#[no_mangle]
pub unsafe extern "C" fn entmol_density_partial_trace(
    rho: *const EntmolDensity,
    keep: *const usize,
    len: usize,
    out: *mut *mut EntmolDensity,
) -> EntmolStatus {
    guard(|| {
        let r = unsafe { borrow(rho, "rho") }?;
        if keep.is_null() {
            return Err(null("keep"));
        }
        let keep = unsafe { std::slice::from_raw_parts(keep, len) };
        unsafe { put_handle(out, EntmolDensity(partial_trace(&r.0, keep)?)) }
    })
}

unsafe fn two_qubit_measure(
    rho: *const EntmolDensity,
    out: *mut f64,
    f: fn(&DensityOperator) -> entmol::Result<f64>,
) -> EntmolStatus {
    guard(|| {
        let r = unsafe { borrow(rho, "rho") }?;
        let v = f(&r.0)?;
        unsafe { put(out, v, "out") }
    })
}

/// Concurrence of a two-qubit operator.
///
/// # Safety
/// `rho` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn entmol_concurrence(rho: *const EntmolDensity, out: *mut f64) -> EntmolStatus {
    unsafe { two_qubit_measure(rho, out, measures::concurrence) }
}

/// Fully entangled fraction of a two-qubit operator.
///
/// # Safety
/// `rho` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn entmol_fef(rho: *const EntmolDensity, out: *mut f64) -> EntmolStatus {
    unsafe { two_qubit_measure(rho, out, measures::fully_entangled_fraction) }
}

/// Entanglement of formation as a function of concurrence `c` in `[0, 1]`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn entmol_eof(c: f64, out: *mut f64) -> EntmolStatus {
    guard(|| {
        let v = measures::entanglement_of_formation(c)?;
        unsafe { put(out, v, "out") }
    })
}

/// PPT test: `ppt` is true when the smallest partial-transpose eigenvalue (written to
/// `min_eigenvalue` when non-NULL) is at least `-tol`.
///
/// # Safety
/// `rho` must be a live handle; `ppt` must be valid for writes; `min_eigenvalue` may be
/// NULL.
#[no_mangle]
pub unsafe extern "C" fn entmol_is_ppt(
    rho: *const EntmolDensity,
    tol: f64,
    ppt: *mut bool,
    min_eigenvalue: *mut f64,
) -> EntmolStatus {
    guard(|| {
        let r = unsafe { borrow(rho, "rho") }?;
        let (is, min) = measures::is_ppt(&r.0, tol)?;
        unsafe { put(ppt, is, "ppt") }?;
        if !min_eigenvalue.is_null() {
            unsafe { min_eigenvalue.write(min) };
        }
        Ok(())
    })
}

/// All pair measures of a two-qubit operator.
///
/// # Safety
/// `rho` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn entmol_pair_measures(
    rho: *const EntmolDensity,
    tol: f64,
    out: *mut EntmolPairMeasures,
) -> EntmolStatus {
    guard(|| {
        let r = unsafe { borrow(rho, "rho") }?;
        let m = PairMeasures::compute(&r.0, tol)?;
        unsafe { put(out, m.into(), "out") }
    })
}

// ---------------------------------------------------------------- molecules

/// Parses the molecule text format. Diagnostics carry line and column.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn entmol_molecule_parse(text: *const c_char, out: *mut *mut EntmolMolecule) -> EntmolStatus {
    guard(|| {
        let text = unsafe { read_str(text, "text") }?;
        let spec = parse_spec(text).map_err(Error::from)?;
        unsafe { put_handle(out, EntmolMolecule(FamilyState::new(spec))) }
    })
}

/// Generates a `kind` graph (`ring`, `star`, `complete`, `even_odd`, `chain`) on `n`
/// qubits. `strong = weak = 0` gives uniform weights, otherwise edges alternate between
/// the two.
///
/// # Safety
/// `kind` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn entmol_molecule_generate(
    kind: *const c_char,
    n: usize,
    strong: u32,
    weak: u32,
    out: *mut *mut EntmolMolecule,
) -> EntmolStatus {
    guard(|| {
        let kind: GraphKind = unsafe { read_str(kind, "kind") }?.parse()?;
        let pattern = if strong == 0 && weak == 0 {
            WeightPattern::Uniform
        } else {
            WeightPattern::Alternating { strong, weak }
        };
        unsafe { put_handle(out, EntmolMolecule(FamilyState::new(generate(kind, n, pattern)?))) }
    })
}

/// # Safety
/// `mol` must be NULL or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn entmol_molecule_free(mol: *mut EntmolMolecule) {
    if !mol.is_null() {
        drop(unsafe { Box::from_raw(mol) });
    }
}

fn spec_of(m: &EntmolMolecule) -> &MoleculeSpec {
    m.0.spec()
}

/// Qubit count, or 0 for NULL.
///
/// # Safety
/// `mol` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn entmol_molecule_n_qubits(mol: *const EntmolMolecule) -> usize {
    unsafe { mol.as_ref() }.map_or(0, |m| spec_of(m).n_qubits())
}

/// Canonical text form of the molecule spec.
///
/// # Safety
/// `mol` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn entmol_molecule_to_text(mol: *const EntmolMolecule, out: *mut *mut c_char) -> EntmolStatus {
    guard(|| {
        let m = unsafe { borrow(mol, "mol") }?;
        unsafe { put_string(out, spec_of(m).to_text()) }
    })
}

/// Two-qubit reduction of the family state onto `k`, `l` (1-based, `k` first).
///
/// # Safety
/// `mol` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn entmol_molecule_pair_reduction(
    mol: *const EntmolMolecule,
    k: usize,
    l: usize,
    out: *mut *mut EntmolDensity,
) -> EntmolStatus {
    guard(|| {
        let m = unsafe { borrow(mol, "mol") }?;
        unsafe { put_handle(out, EntmolDensity(m.0.analytic_pair_reduction(k, l)?)) }
    })
}

/// Concurrence of the family state's `(k, l)` reduction.
///
/// # Safety
/// `mol` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn entmol_molecule_pair_concurrence(
    mol: *const EntmolMolecule,
    k: usize,
    l: usize,
    out: *mut f64,
) -> EntmolStatus {
    guard(|| {
        let m = unsafe { borrow(mol, "mol") }?;
        let c = measures::concurrence(&m.0.analytic_pair_reduction(k, l)?)?;
        unsafe { put(out, c, "out") }
    })
}

/// Full analysis report of the family state as JSON; `tol` is the entanglement threshold.
///
/// # Safety
/// `mol` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn entmol_molecule_analyze_json(
    mol: *const EntmolMolecule,
    tol: f64,
    out: *mut *mut c_char,
) -> EntmolStatus {
    guard(|| {
        let m = unsafe { borrow(mol, "mol") }?;
        let spec = spec_of(m);
        let report = analyze_spec(spec, &spec.to_text(), tol)?;
        unsafe { put_string(out, report.to_json()) }
    })
}
