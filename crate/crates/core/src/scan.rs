//! The three experiments behind the `mermin-scan` binary, and their CSV form.
//!
//! * Grover: one constant-family Mermin operator is tuned on `φ_ent` and then
//!   evaluated on every end-of-loop state.
//! * QFT: every captured state of the QFT gets its own optimized operator over
//!   all `6n` parameters.
//! * Hyperdeterminant: `|Δ₂₂₂₂|` along the four-qubit QFT run.

use std::io::{self, Write};

use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::grover::{grover_run, phi_ent, GroverProblem};
use crate::hyperdet::delta_abs;
use crate::mermin::{mermin_expectation, MerminFamilies};
use crate::optimize::{optimize_cached, WalkCache, WalkConfig, WalkResult};
use crate::qft::{periodic_state, qft_run, PeriodicSpec};
use crate::statevec::StateVector;

pub const CSV_HEADER: &str = "iteration,intricationValue";

/// Qubit range accepted by the Grover scan.
pub const GROVER_QUBITS: std::ops::RangeInclusive<usize> = 2..=12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanRow {
    pub iteration: usize,
    pub value: f64,
}

#[derive(Clone, Debug)]
pub struct GroverScan {
    pub rows: Vec<ScanRow>,
    pub k_opt: usize,
    /// The six constant-family parameters tuned on `φ_ent`.
    pub walk: WalkResult,
}

impl GroverScan {
    /// Index of the largest value; ties resolve to the smaller iteration.
    pub fn k_max(&self) -> usize {
        argmax(&self.rows)
    }

    pub fn peak(&self) -> f64 {
        self.rows[self.k_max()].value
    }
}

pub(crate) fn argmax(rows: &[ScanRow]) -> usize {
    let mut best = 0;
    for (i, r) in rows.iter().enumerate() {
        if r.value > rows[best].value {
            best = i;
        }
    }
    best
}

#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    pub seed: u64,
    pub restarts: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self { seed: 0, restarts: 5 }
    }
}

/// `f_{M_n}(φ)` for the constant families given by six parameters.
pub fn constant_family_value(params: &[f64], state: &StateVector) -> Result<f64> {
    let fam = MerminFamilies::from_constant_params(state.n_qubits(), params)?;
    mermin_expectation(&fam, state)
}

/// `f_{M_n}(φ)` for per-qubit families given by `6n` parameters.
pub fn full_family_value(params: &[f64], state: &StateVector) -> Result<f64> {
    let fam = MerminFamilies::from_params(state.n_qubits(), params)?;
    mermin_expectation(&fam, state)
}

pub fn grover_scan(
    n_qubits: usize,
    target: usize,
    opts: ScanOptions,
    cache: Option<&mut WalkCache>,
) -> Result<GroverScan> {
    if !GROVER_QUBITS.contains(&n_qubits) {
        return invalid(format!(
            "Grover scan supports {}..={} qubits, got {n_qubits}",
            GROVER_QUBITS.start(),
            GROVER_QUBITS.end()
        ));
    }
    let problem = GroverProblem::single(n_qubits, target)?;
    let target_state = phi_ent(n_qubits, target)?;
    let cfg = WalkConfig::with_start(vec![1.0; 6], opts.seed);
    let label = format!("grover-phi-ent-n{n_qubits}-x{target}");
    let walk =
        optimize_cached(|p: &[f64]| constant_family_value(p, &target_state), &cfg, opts.restarts, &label, cache)?;

    let fam = MerminFamilies::from_constant_params(n_qubits, &walk.argmax)?;
    let trace = grover_run(&problem);
    let rows = trace
        .end_loop_states
        .iter()
        .enumerate()
        .map(|(iteration, s)| Ok(ScanRow { iteration, value: mermin_expectation(&fam, s)? }))
        .collect::<Result<_>>()?;
    Ok(GroverScan { rows, k_opt: trace.k_opt, walk })
}

/// Seed of the walk optimizing step `k`; distinct steps never share a stream.
pub fn qft_step_seed(seed: u64, k: usize) -> u64 {
    seed.wrapping_add((k as u64) << 32)
}

/// `q̃(k)` for every captured state of the QFT run on `φ^{l,r}`.
pub fn qft_scan(spec: &PeriodicSpec, opts: ScanOptions, cache: Option<&mut WalkCache>) -> Result<Vec<ScanRow>> {
    let n = spec.n_qubits();
    let states = qft_run(&periodic_state(spec))?;
    let label = |k: usize| format!("qft-n{n}-l{}-r{}-k{k}", spec.shift(), spec.period());
    let cfg = |k: usize| WalkConfig::with_start(vec![1.0; 6 * n], qft_step_seed(opts.seed, k));

    let solve = |k: usize, state: &StateVector, cache: Option<&mut WalkCache>| {
        optimize_cached(|p: &[f64]| full_family_value(p, state), &cfg(k), opts.restarts, &label(k), cache)
            .map(|w| ScanRow { iteration: k, value: w.value })
    };

    match cache {
        Some(cache) => states.iter().enumerate().map(|(k, s)| solve(k, s, Some(&mut *cache))).collect(),
        None => states.par_iter().enumerate().map(|(k, s)| solve(k, s, None)).collect(),
    }
}

/// `|Δ₂₂₂₂(φ^{l,r}_k)|` along the four-qubit QFT run.
pub fn hyperdet_scan(spec: &PeriodicSpec) -> Result<Vec<ScanRow>> {
    if spec.n_qubits() != 4 {
        return invalid("the hyperdeterminant scan is defined for four qubits only");
    }
    qft_run(&periodic_state(spec))?
        .iter()
        .enumerate()
        .map(|(iteration, s)| Ok(ScanRow { iteration, value: delta_abs(s)? }))
        .collect()
}

/// Formats with 12 significant digits, plain decimal notation between 1e-4 and 1e12.
pub fn format_value(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    if !(-4..12).contains(&exp) {
        return format!("{v:.11e}");
    }
    let decimals = (11 - exp).max(0) as usize;
    let s = format!("{v:.decimals$}");
    // a rounding carry (9.99… → 10.0…) leaves one digit too many; harmless
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn write_csv<W: Write>(mut out: W, rows: &[ScanRow]) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(out, "{},{}", r.iteration, format_value(r.value))?;
    }
    out.flush()
}

pub fn to_csv(rows: &[ScanRow]) -> String {
    let mut buf = Vec::new();
    write_csv(&mut buf, rows).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}
