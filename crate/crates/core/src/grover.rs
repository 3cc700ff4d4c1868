//! Grover search without the ancilla wire: the oracle negates the amplitudes
//! of marked indices and the diffusion reflects every amplitude about the mean.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::circuit::{Circuit, Layer};
use crate::error::{invalid, Result};
use crate::statevec::{Matrix, SingleQubitGate, StateVector, MAX_QUBITS};

/// A search instance: `n_qubits` wires and the set of marked basis indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroverProblem {
    n_qubits: usize,
    solutions: BTreeSet<usize>,
}

impl GroverProblem {
    pub fn new(n_qubits: usize, solutions: impl IntoIterator<Item = usize>) -> Result<Self> {
        if !(2..=MAX_QUBITS).contains(&n_qubits) {
            return invalid(format!("Grover needs 2..={MAX_QUBITS} qubits, got {n_qubits}"));
        }
        let solutions: BTreeSet<usize> = solutions.into_iter().collect();
        let dim = 1usize << n_qubits;
        if solutions.is_empty() {
            return invalid("solution set is empty");
        }
        if solutions.len() >= dim {
            return invalid("every basis state is marked");
        }
        if let Some(&bad) = solutions.iter().find(|&&x| x >= dim) {
            return invalid(format!("solution {bad} out of range for {n_qubits} qubits"));
        }
        Ok(Self { n_qubits, solutions })
    }

    /// Single marked element.
    pub fn single(n_qubits: usize, target: usize) -> Result<Self> {
        Self::new(n_qubits, [target])
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn solutions(&self) -> &BTreeSet<usize> {
        &self.solutions
    }

    pub fn k_opt(&self) -> usize {
        k_opt(self.dim(), self.solutions.len()).expect("validated at construction")
    }
}

/// States at the end of every loop iteration, `φ_0` through `φ_{k_opt}`.
#[derive(Clone, Debug)]
pub struct GroverTrace {
    pub end_loop_states: Vec<StateVector>,
    pub k_opt: usize,
}

/// `round(π/4 · √(N/s))`, rounding halves up.
pub fn k_opt(dim: usize, solution_count: usize) -> Result<usize> {
    if solution_count < 1 || solution_count >= dim {
        return invalid(format!("need 1 <= s < N, got s = {solution_count}, N = {dim}"));
    }
    let x = PI / 4.0 * (dim as f64 / solution_count as f64).sqrt();
    Ok((x + 0.5).floor() as usize)
}

/// Negates the amplitude of every index in `solutions`.
pub fn oracle_apply(state: &StateVector, solutions: &BTreeSet<usize>) -> Result<StateVector> {
    if let Some(&bad) = solutions.iter().find(|&&x| x >= state.dim()) {
        return invalid(format!("solution {bad} out of range for dimension {}", state.dim()));
    }
    let mut out = state.clone();
    let amps = out.amplitudes_mut();
    for &x in solutions {
        amps[x] = -amps[x];
    }
    Ok(out)
}

/// Inversion about the mean: `α_i → 2·mean(α) − α_i`.
pub fn diffusion_apply(state: &StateVector) -> StateVector {
    let mut out = state.clone();
    let amps = out.amplitudes_mut();
    let twice_mean = amps.iter().sum::<Complex64>() * (2.0 / amps.len() as f64);
    for a in amps.iter_mut() {
        *a = twice_mean - *a;
    }
    out
}

/// Runs the loop `k_opt` times starting from `H^{⊗n}|0…0⟩`.
pub fn grover_run(problem: &GroverProblem) -> GroverTrace {
    let k_opt = problem.k_opt();
    let mut state = StateVector::uniform(problem.n_qubits).expect("validated width");
    let mut end_loop_states = Vec::with_capacity(k_opt + 1);
    end_loop_states.push(state.clone());
    for _ in 0..k_opt {
        state = diffusion_apply(&oracle_apply(&state, &problem.solutions).expect("validated indices"));
        end_loop_states.push(state.clone());
    }
    GroverTrace { end_loop_states, k_opt }
}

/// Closed-form amplitudes after `k` iterations.
///
/// `alpha` is the amplitude on each marked index, `beta` the amplitude on each
/// unmarked one; the tilde pair rewrites the state as
/// `alpha_tilde · Σ_{x∈S}|x⟩ + beta_tilde · |+⟩^{⊗n}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroverCoefficients {
    pub alpha: f64,
    pub beta: f64,
    pub alpha_tilde: f64,
    pub beta_tilde: f64,
}

impl GroverCoefficients {
    pub fn new(n_qubits: usize, solution_count: usize, k: usize) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if solution_count < 1 || solution_count >= dim {
            return invalid(format!("need 1 <= s < N, got s = {solution_count}, N = {dim}"));
        }
        let s = solution_count as f64;
        let n = dim as f64;
        let theta = 2.0 * (s / n).sqrt().asin();
        let angle = (2 * k + 1) as f64 * theta / 2.0;
        let alpha = angle.sin() / s.sqrt();
        let beta = angle.cos() / (n - s).sqrt();
        Ok(Self { alpha, beta, alpha_tilde: alpha - beta, beta_tilde: (n_qubits as f64 / 2.0).exp2() * beta })
    }
}

/// `|φ_k⟩` from the closed form rather than by iteration.
pub fn explicit_state(problem: &GroverProblem, k: usize) -> StateVector {
    let c = GroverCoefficients::new(problem.n_qubits, problem.solutions.len(), k).expect("validated problem");
    let amps = (0..problem.dim())
        .map(|i| {
            let v = if problem.solutions.contains(&i) { c.alpha } else { c.beta };
            Complex64::new(v, 0.0)
        })
        .collect();
    StateVector::from_amplitudes(amps).expect("validated width")
}

/// `(|x0⟩ + |+⟩^{⊗n}) / K` with `K = √(2 + 2·2^{−n/2})`.
pub fn phi_ent(n_qubits: usize, x0: usize) -> Result<StateVector> {
    let mut state = StateVector::uniform(n_qubits)?;
    if x0 >= state.dim() {
        return invalid(format!("index {x0} out of range for {n_qubits} qubits"));
    }
    let k = (2.0 + 2.0 * (-(n_qubits as f64) / 2.0).exp2()).sqrt();
    let amps = state.amplitudes_mut();
    amps[x0] += 1.0;
    for a in amps.iter_mut() {
        *a /= k;
    }
    Ok(state)
}

/// Grover as a layered circuit with dense oracle and diffusion blocks:
/// `[H,…,H]`, then `[U_f]`, `[D]` repeated `k_opt` times. Running it from
/// `|0…0⟩` yields `φ_k` at positions `2k + 1` of the state list.
pub fn grover_circuit(problem: &GroverProblem) -> Result<Circuit> {
    let dim = problem.dim();
    let h = SingleQubitGate::hadamard().to_matrix();
    let mut layers = vec![Layer::new(vec![h; problem.n_qubits])?];

    let diag: Vec<Complex64> =
        (0..dim).map(|i| if problem.solutions.contains(&i) { -1.0 } else { 1.0 }.into()).collect();
    let oracle = Matrix::diagonal(&diag);
    let uniform = 2.0 / dim as f64;
    let diffusion = Matrix::from_row_major(
        (0..dim * dim)
            .map(|i| {
                let on_diag = i / dim == i % dim;
                Complex64::new(if on_diag { uniform - 1.0 } else { uniform }, 0.0)
            })
            .collect(),
    )?;
    for _ in 0..problem.k_opt() {
        layers.push(Layer::new(vec![oracle.clone()])?);
        layers.push(Layer::new(vec![diffusion.clone()])?);
    }
    Circuit::new(layers)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_opt_examples() {
        assert_eq!(k_opt(16, 1).unwrap(), 3);
        assert_eq!(k_opt(4096, 1).unwrap(), 50);
        assert_eq!(k_opt(512, 1).unwrap(), 18);
        assert!(k_opt(16, 0).is_err());
        assert!(k_opt(16, 16).is_err());
    }

    #[test]
    fn oracle_flips_marked_amplitudes() {
        let u = StateVector::uniform(2).unwrap();
        let s: BTreeSet<_> = [3].into();
        let out = oracle_apply(&u, &s).unwrap();
        assert!(out.approx_eq(&StateVector::from_real(&[0.5, 0.5, 0.5, -0.5]).unwrap(), 0.0));
        assert!(oracle_apply(&out, &s).unwrap().approx_eq(&u, 0.0));
        assert_eq!(oracle_apply(&u, &BTreeSet::new()).unwrap(), u);
        assert!(oracle_apply(&u, &[4].into()).is_err());
    }

    #[test]
    fn diffusion_examples() {
        let u = StateVector::uniform(3).unwrap();
        assert!(diffusion_apply(&u).approx_eq(&u, 1e-15));
        let e3 = StateVector::basis(2, 3).unwrap();
        let d = diffusion_apply(&e3);
        assert!(d.approx_eq(&StateVector::from_real(&[0.5, 0.5, 0.5, -0.5]).unwrap(), 1e-15));
        assert!(diffusion_apply(&d).approx_eq(&e3, 1e-10));
    }

    #[test]
    fn two_qubit_search_is_exact_after_one_iteration() {
        let p = GroverProblem::single(2, 0).unwrap();
        let trace = grover_run(&p);
        assert_eq!(trace.k_opt, 2);
        assert!((trace.end_loop_states[1].amplitude(0).re - 1.0).abs() < 1e-15);
        assert!(explicit_state(&p, 1).approx_eq(&StateVector::basis(2, 0).unwrap(), 1e-15));
    }

    #[test]
    fn four_qubit_trace_length() {
        let trace = grover_run(&GroverProblem::single(4, 0).unwrap());
        assert_eq!(trace.end_loop_states.len(), 4);
    }

    #[test]
    fn explicit_state_at_zero_is_uniform() {
        for (n, s) in [(3, vec![1]), (5, vec![0, 7]), (6, vec![63])] {
            let p = GroverProblem::new(n, s).unwrap();
            assert!(explicit_state(&p, 0).approx_eq(&StateVector::uniform(n).unwrap(), 1e-12));
        }
    }

    #[test]
    fn tilde_coefficients_reconstruct_state() {
        let p = GroverProblem::new(5, [2, 9]).unwrap();
        let plus = StateVector::uniform(5).unwrap();
        for k in 0..=p.k_opt() {
            let c = GroverCoefficients::new(5, 2, k).unwrap();
            let amps: Vec<Complex64> = plus
                .amplitudes()
                .iter()
                .enumerate()
                .map(|(i, &a)| {
                    let marked = if p.solutions().contains(&i) { c.alpha_tilde } else { 0.0 };
                    a * c.beta_tilde + marked
                })
                .collect();
            let rebuilt = StateVector::from_amplitudes(amps).unwrap();
            assert!(rebuilt.approx_eq(&explicit_state(&p, k), 1e-12));
        }
    }

    #[test]
    fn phi_ent_examples() {
        let s = phi_ent(1, 0).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expect = StateVector::from_real(&[1.0 + h, h]).unwrap().normalized().unwrap();
        assert!(s.approx_eq(&expect, 1e-15));
        assert!(phi_ent(3, 8).is_err());
    }

    #[test]
    fn problem_validation() {
        assert!(GroverProblem::new(1, [0]).is_err());
        assert!(GroverProblem::new(3, Vec::<usize>::new()).is_err());
        assert!(GroverProblem::new(2, [0, 1, 2, 3]).is_err());
        assert!(GroverProblem::new(2, [4]).is_err());
    }
}
