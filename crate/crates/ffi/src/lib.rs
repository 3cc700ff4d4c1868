//! C ABI over `mermin-core`.
//!
//! States and traces are opaque heap handles released with their `_free`
//! function. Every fallible call returns an `int32_t` status (`MRM_OK` on
//! success) and writes results through out-pointers; the message of the last
//! failure on the calling thread is available from [`mrm_last_error`].
//! Buffers are caller-owned: when one is too small the call returns
//! `MRM_BUFFER_TOO_SMALL` and reports the required length.
//!
//! Safety contract for every `unsafe` entry point: non-null pointers must be
//! valid for the stated number of elements, and handles must come from this
//! library and not have been freed.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;

use mermin_core::grover::{grover_run, phi_ent, GroverProblem};
use mermin_core::hyperdet::delta2222;
use mermin_core::optimize::{optimize_restarts, WalkConfig};
use mermin_core::qft::{periodic_state, qft_run, PeriodicSpec};
use mermin_core::scan::{self, constant_family_value, full_family_value, ScanOptions, ScanRow};
use mermin_core::{Complex64, Error, FourQubitAmplitudes, StateVector};

pub const MRM_OK: i32 = 0;
pub const MRM_INVALID_ARGUMENT: i32 = 1;
pub const MRM_CAPACITY: i32 = 2;
pub const MRM_NUMERICAL: i32 = 3;
pub const MRM_EVALUATION: i32 = 4;
pub const MRM_NULL_POINTER: i32 = 5;
pub const MRM_BUFFER_TOO_SMALL: i32 = 6;
pub const MRM_PANIC: i32 = 7;

/// A complex number laid out as two doubles.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct MrmComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for MrmComplex {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<MrmComplex> for Complex64 {
    fn from(z: MrmComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

/// Opaque state vector.
pub struct MrmState {
    inner: StateVector,
}

/// Opaque sequence of states captured along a Grover or QFT run.
pub struct MrmTrace {
    states: Vec<StateVector>,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidArgument(_) => MRM_INVALID_ARGUMENT,
            Error::Capacity(_) => MRM_CAPACITY,
            Error::NumericalConsistency(_) => MRM_NUMERICAL,
            Error::Evaluation(_) => MRM_EVALUATION,
        };
        Self { code, message: e.to_string() }
    }
}

fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

fn null(name: &str) -> Failure {
    fail(MRM_NULL_POINTER, format!("{name} is null"))
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> i32 {
    let outcome = catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|_| Err(fail(MRM_PANIC, "internal panic")));
    match outcome {
        Ok(()) => {
            LAST_ERROR.with(|e| e.borrow_mut().clear());
            MRM_OK
        }
        Err(f) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = f.message);
            f.code
        }
    }
}

unsafe fn as_ref<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    unsafe { p.as_ref() }.ok_or_else(|| null(name))
}

unsafe fn as_slice<'a, T>(p: *const T, len: usize, name: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(name));
    }
    Ok(unsafe { slice::from_raw_parts(p, len) })
}

unsafe fn write<T>(p: *mut T, value: T, name: &str) -> Result<(), Failure> {
    if p.is_null() {
        return Err(null(name));
    }
    unsafe { p.write(value) };
    Ok(())
}

unsafe fn fill<T: Copy>(buf: *mut T, cap: usize, len_out: *mut usize, values: &[T]) -> Result<(), Failure> {
    unsafe { write(len_out, values.len(), "len_out")? };
    if cap < values.len() {
        return Err(fail(MRM_BUFFER_TOO_SMALL, format!("buffer holds {cap} elements, {} needed", values.len())));
    }
    if values.is_empty() {
        return Ok(());
    }
    if buf.is_null() {
        return Err(null("buffer"));
    }
    unsafe { slice::from_raw_parts_mut(buf, values.len()) }.copy_from_slice(values);
    Ok(())
}

unsafe fn emit_state(out: *mut *mut MrmState, inner: StateVector) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    unsafe { out.write(Box::into_raw(Box::new(MrmState { inner }))) };
    Ok(())
}

unsafe fn emit_trace(out: *mut *mut MrmTrace, states: Vec<StateVector>) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    unsafe { out.write(Box::into_raw(Box::new(MrmTrace { states }))) };
    Ok(())
}

fn values(rows: &[ScanRow]) -> Vec<f64> {
    rows.iter().map(|r| r.value).collect()
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `cap - 1` bytes) and returns the full message length.
#[no_mangle]
pub unsafe extern "C" fn mrm_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && cap > 0 {
            let n = msg.len().min(cap - 1);
            let dst = unsafe { slice::from_raw_parts_mut(buf.cast::<u8>(), n + 1) };
            dst[..n].copy_from_slice(&msg.as_bytes()[..n]);
            dst[n] = 0;
        }
        msg.len()
    })
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn mrm_status_str(status: i32) -> *const c_char {
    let s: &'static CStr = match status {
        MRM_OK => c"ok",
        MRM_INVALID_ARGUMENT => c"invalid argument",
        MRM_CAPACITY => c"capacity exceeded",
        MRM_NUMERICAL => c"numerical consistency failure",
        MRM_EVALUATION => c"objective evaluation failure",
        MRM_NULL_POINTER => c"null pointer",
        MRM_BUFFER_TOO_SMALL => c"buffer too small",
        MRM_PANIC => c"internal panic",
        _ => c"unknown status",
    };
    s.as_ptr()
}

/// State from `len` amplitudes; `len` must be a power of two, at least 2.
#[no_mangle]
pub unsafe extern "C" fn mrm_state_from_amplitudes(
    amplitudes: *const MrmComplex,
    len: usize,
    out: *mut *mut MrmState,
) -> i32 {
    guard(|| {
        let amps = unsafe { as_slice(amplitudes, len, "amplitudes")? };
        let state = StateVector::from_amplitudes(amps.iter().map(|&z| z.into()).collect())?;
        unsafe { emit_state(out, state) }
    })
}

/// Computational basis state `|index⟩` on `n_qubits` wires (qubit 1 is the most significant bit).
#[no_mangle]
pub unsafe extern "C" fn mrm_state_basis(n_qubits: usize, index: usize, out: *mut *mut MrmState) -> i32 {
    guard(|| unsafe { emit_state(out, StateVector::basis(n_qubits, index)?) })
}

/// Uniform superposition over `shift, shift + period, …` below `2^n_qubits`.
#[no_mangle]
pub unsafe extern "C" fn mrm_state_periodic(
    shift: usize,
    period: usize,
    n_qubits: usize,
    out: *mut *mut MrmState,
) -> i32 {
    guard(|| {
        let spec = PeriodicSpec::new(shift, period, n_qubits)?;
        unsafe { emit_state(out, periodic_state(&spec)) }
    })
}

/// Normalized `|x0⟩ + |+⟩^{⊗n}`.
#[no_mangle]
pub unsafe extern "C" fn mrm_state_phi_ent(n_qubits: usize, x0: usize, out: *mut *mut MrmState) -> i32 {
    guard(|| unsafe { emit_state(out, phi_ent(n_qubits, x0)?) })
}

/// Releases a state; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn mrm_state_free(state: *mut MrmState) {
    if !state.is_null() {
        drop(unsafe { Box::from_raw(state) });
    }
}

/// Number of qubits, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn mrm_state_num_qubits(state: *const MrmState) -> usize {
    unsafe { state.as_ref() }.map_or(0, |s| s.inner.n_qubits())
}

/// Number of amplitudes, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn mrm_state_len(state: *const MrmState) -> usize {
    unsafe { state.as_ref() }.map_or(0, |s| s.inner.dim())
}

/// Copies the amplitudes into `buf`, which must hold `mrm_state_len(state)` entries.
#[no_mangle]
pub unsafe extern "C" fn mrm_state_amplitudes(
    state: *const MrmState,
    buf: *mut MrmComplex,
    cap: usize,
    len_out: *mut usize,
) -> i32 {
    guard(|| {
        let s = unsafe { as_ref(state, "state")? };
        let amps: Vec<MrmComplex> = s.inner.amplitudes().iter().map(|&z| z.into()).collect();
        unsafe { fill(buf, cap, len_out, &amps) }
    })
}

/// Grover end-of-loop states `φ_0 … φ_{k_opt}` for the given marked indices.
#[no_mangle]
pub unsafe extern "C" fn mrm_trace_grover(
    n_qubits: usize,
    solutions: *const usize,
    solution_count: usize,
    out: *mut *mut MrmTrace,
) -> i32 {
    guard(|| {
        let sol = unsafe { as_slice(solutions, solution_count, "solutions")? };
        let problem = GroverProblem::new(n_qubits, sol.iter().copied())?;
        unsafe { emit_trace(out, grover_run(&problem).end_loop_states) }
    })
}

/// States before the first gate and after every gate of the QFT applied to `state`.
#[no_mangle]
pub unsafe extern "C" fn mrm_trace_qft(state: *const MrmState, out: *mut *mut MrmTrace) -> i32 {
    guard(|| {
        let s = unsafe { as_ref(state, "state")? };
        unsafe { emit_trace(out, qft_run(&s.inner)?) }
    })
}

/// Number of states in a trace, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn mrm_trace_len(trace: *const MrmTrace) -> usize {
    unsafe { trace.as_ref() }.map_or(0, |t| t.states.len())
}

/// Copies state `k` of the trace into a new handle.
#[no_mangle]
pub unsafe extern "C" fn mrm_trace_state(trace: *const MrmTrace, k: usize, out: *mut *mut MrmState) -> i32 {
    guard(|| {
        let t = unsafe { as_ref(trace, "trace")? };
        let s = t
            .states
            .get(k)
            .ok_or_else(|| fail(MRM_INVALID_ARGUMENT, format!("index {k} past trace of {}", t.states.len())))?;
        unsafe { emit_state(out, s.clone()) }
    })
}

/// Releases a trace; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn mrm_trace_free(trace: *mut MrmTrace) {
    if !trace.is_null() {
        drop(unsafe { Box::from_raw(trace) });
    }
}

type Objective = fn(&[f64], &StateVector) -> mermin_core::Result<f64>;

fn objective(n: usize, len: usize) -> Result<Objective, Failure> {
    if len == 6 {
        Ok(constant_family_value)
    } else if len == 6 * n {
        Ok(full_family_value)
    } else {
        Err(fail(MRM_INVALID_ARGUMENT, format!("expected 6 or {} parameters, got {len}", 6 * n)))
    }
}

/// `⟨state|M_n|state⟩`. With 6 parameters every qubit shares
/// `(α, β, γ, α′, β′, γ′)`; with `6n` they are laid out per qubit.
#[no_mangle]
pub unsafe extern "C" fn mrm_mermin_expectation(
    state: *const MrmState,
    params: *const f64,
    len: usize,
    out: *mut f64,
) -> i32 {
    guard(|| {
        let s = unsafe { as_ref(state, "state")? };
        let p = unsafe { as_slice(params, len, "params")? };
        let value = objective(s.inner.n_qubits(), len)?(p, &s.inner)?;
        unsafe { write(out, value, "out") }
    })
}

/// Maximizes the Mermin expectation over `param_count` (6 or `6n`) parameters
/// with `restarts` seeded random walks from the all-ones point. `argmax` may be
/// null; otherwise it receives `param_count` values.
#[no_mangle]
pub unsafe extern "C" fn mrm_mermin_optimize(
    state: *const MrmState,
    param_count: usize,
    seed: u64,
    restarts: usize,
    value_out: *mut f64,
    argmax: *mut f64,
) -> i32 {
    guard(|| {
        let s = unsafe { as_ref(state, "state")? };
        let f = objective(s.inner.n_qubits(), param_count)?;
        let cfg = WalkConfig::with_start(vec![1.0; param_count], seed);
        let best = optimize_restarts(|p: &[f64]| f(p, &s.inner), &cfg, restarts)?;
        unsafe { write(value_out, best.value, "value_out")? };
        if !argmax.is_null() {
            unsafe { slice::from_raw_parts_mut(argmax, param_count) }.copy_from_slice(&best.argmax);
        }
        Ok(())
    })
}

/// Cayley hyperdeterminant `Δ₂₂₂₂` of a four-qubit state.
#[no_mangle]
pub unsafe extern "C" fn mrm_delta2222(state: *const MrmState, out: *mut MrmComplex) -> i32 {
    guard(|| {
        let s = unsafe { as_ref(state, "state")? };
        let d = delta2222(&FourQubitAmplitudes::from_state(&s.inner)?);
        unsafe { write(out, d.into(), "out") }
    })
}

/// Grover scan: values `f(φ_k)` for `k = 0..=k_opt`, plus the index of the peak.
#[no_mangle]
pub unsafe extern "C" fn mrm_grover_scan(
    n_qubits: usize,
    target: usize,
    seed: u64,
    restarts: usize,
    values_out: *mut f64,
    cap: usize,
    len_out: *mut usize,
    k_max_out: *mut usize,
) -> i32 {
    guard(|| {
        let result = scan::grover_scan(n_qubits, target, ScanOptions { seed, restarts }, None)?;
        if !k_max_out.is_null() {
            unsafe { k_max_out.write(result.k_max()) };
        }
        unsafe { fill(values_out, cap, len_out, &values(&result.rows)) }
    })
}

/// QFT scan: the optimized Mermin value at every captured step.
#[no_mangle]
pub unsafe extern "C" fn mrm_qft_scan(
    shift: usize,
    period: usize,
    n_qubits: usize,
    seed: u64,
    restarts: usize,
    values_out: *mut f64,
    cap: usize,
    len_out: *mut usize,
) -> i32 {
    guard(|| {
        let spec = PeriodicSpec::new(shift, period, n_qubits)?;
        let rows = scan::qft_scan(&spec, ScanOptions { seed, restarts }, None)?;
        unsafe { fill(values_out, cap, len_out, &values(&rows)) }
    })
}

/// `|Δ₂₂₂₂|` at every step of the four-qubit QFT on a periodic state.
#[no_mangle]
pub unsafe extern "C" fn mrm_hyperdet_scan(
    shift: usize,
    period: usize,
    values_out: *mut f64,
    cap: usize,
    len_out: *mut usize,
) -> i32 {
    guard(|| {
        let rows = scan::hyperdet_scan(&PeriodicSpec::new(shift, period, 4)?)?;
        unsafe { fill(values_out, cap, len_out, &values(&rows)) }
    })
}
