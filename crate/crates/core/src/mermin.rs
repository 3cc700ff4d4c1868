//! Mermin polynomials built from two families of single-qubit observables
//! `a_j = α_j X + β_j Y + γ_j Z` and `a'_j`, and their expectation values on pure
//! states.
//!
//! The operator obeys
//!
//! ```text
//! M_1 = a_1
//! M_n = ½ M_{n−1} ⊗ (a_n + a'_n) + ½ M'_{n−1} ⊗ (a_n − a'_n)
//! ```
//!
//! where `M'` swaps the roles of the primed and unprimed observables. Applying
//! it to a vector never needs the `2^n × 2^n` matrix: peeling qubits from the
//! last one down, the partial result is always `M_k u + M'_k v` for a pair of
//! vectors `(u, v)`, so each qubit costs four single-qubit applications.

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::statevec::{apply_gate_into, inner_product, Matrix, SingleQubitGate, StateVector};

/// Largest qubit count for which the dense operator may be materialized.
pub const DENSE_MAX_QUBITS: usize = 8;

const IMAGINARY_TOLERANCE: f64 = 1e-9;

/// Real coefficients of `αX + βY + γZ`, not necessarily normalized.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ObservableTriple {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl ObservableTriple {
    pub const fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        Self { alpha, beta, gamma }
    }

    pub fn from_slice(v: &[f64]) -> Self {
        Self::new(v[0], v[1], v[2])
    }

    pub fn norm(&self) -> f64 {
        (self.alpha * self.alpha + self.beta * self.beta + self.gamma * self.gamma).sqrt()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return invalid(format!("observable triple {self:?} cannot be normalized"));
        }
        Ok(Self::new(self.alpha / n, self.beta / n, self.gamma / n))
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self::new(self.alpha * s, self.beta * s, self.gamma * s)
    }
}

/// `αX + βY + γZ` for the normalized triple.
pub fn observable(t: &ObservableTriple) -> Result<SingleQubitGate> {
    let t = t.normalized()?;
    Ok(pauli_combination(t.alpha, t.beta, t.gamma))
}

fn pauli_combination(alpha: f64, beta: f64, gamma: f64) -> SingleQubitGate {
    SingleQubitGate::new([
        [Complex64::new(gamma, 0.0), Complex64::new(alpha, -beta)],
        [Complex64::new(alpha, beta), Complex64::new(-gamma, 0.0)],
    ])
}

/// The unprimed and primed observable families, one triple per qubit each.
#[derive(Clone, Debug, PartialEq)]
pub struct MerminFamilies {
    unprimed: Vec<ObservableTriple>,
    primed: Vec<ObservableTriple>,
}

impl MerminFamilies {
    pub fn new(unprimed: Vec<ObservableTriple>, primed: Vec<ObservableTriple>) -> Result<Self> {
        if unprimed.is_empty() || unprimed.len() != primed.len() {
            return invalid(format!(
                "families must be nonempty and of equal length, got {} and {}",
                unprimed.len(),
                primed.len()
            ));
        }
        if let Some(t) = unprimed.iter().chain(&primed).find(|t| t.norm() == 0.0 || !t.norm().is_finite()) {
            return invalid(format!("observable triple {t:?} is zero or not finite"));
        }
        Ok(Self { unprimed, primed })
    }

    /// Every `a_j = a` and every `a'_j = a'`.
    pub fn constant(n: usize, a: ObservableTriple, a_prime: ObservableTriple) -> Result<Self> {
        Self::new(vec![a; n], vec![a_prime; n])
    }

    /// Six parameters `(α, β, γ, α', β', γ')` shared by every qubit.
    pub fn from_constant_params(n: usize, params: &[f64]) -> Result<Self> {
        if params.len() != 6 {
            return invalid(format!("expected 6 parameters, got {}", params.len()));
        }
        Self::constant(n, ObservableTriple::from_slice(&params[..3]), ObservableTriple::from_slice(&params[3..]))
    }

    /// `6n` parameters laid out per qubit as `(α_j, β_j, γ_j, α'_j, β'_j, γ'_j)`.
    pub fn from_params(n: usize, params: &[f64]) -> Result<Self> {
        if params.len() != 6 * n || n == 0 {
            return invalid(format!("expected {} parameters, got {}", 6 * n, params.len()));
        }
        let (unprimed, primed) = params
            .chunks_exact(6)
            .map(|c| (ObservableTriple::from_slice(&c[..3]), ObservableTriple::from_slice(&c[3..])))
            .unzip();
        Self::new(unprimed, primed)
    }

    pub fn n(&self) -> usize {
        self.unprimed.len()
    }

    pub fn unprimed(&self) -> &[ObservableTriple] {
        &self.unprimed
    }

    pub fn primed(&self) -> &[ObservableTriple] {
        &self.primed
    }

    /// Families with primed and unprimed roles exchanged; they define `M'_n`.
    pub fn swapped(&self) -> Self {
        Self { unprimed: self.primed.clone(), primed: self.unprimed.clone() }
    }

    fn gates(&self) -> Result<(Vec<SingleQubitGate>, Vec<SingleQubitGate>)> {
        let a = self.unprimed.iter().map(observable).collect::<Result<_>>()?;
        let b = self.primed.iter().map(observable).collect::<Result<_>>()?;
        Ok((a, b))
    }
}

/// Dense `M_n`, for small registers and as a reference.
#[derive(Clone, Debug, PartialEq)]
pub struct MerminOperatorDense {
    pub entries: Matrix,
}

/// `M_n |state⟩` without forming the operator.
pub fn mermin_apply(fam: &MerminFamilies, state: &StateVector) -> Result<StateVector> {
    let n = fam.n();
    if n != state.n_qubits() {
        return invalid(format!("families cover {n} qubits, state has {}", state.n_qubits()));
    }
    let (a, ap) = fam.gates()?;
    let dim = state.dim();
    let zero = Complex64::new(0.0, 0.0);
    let half = Complex64::new(0.5, 0.0);

    let mut u = state.amplitudes().to_vec();
    let mut v = vec![zero; dim];
    let mut pu = vec![zero; dim];
    let mut mu = vec![zero; dim];
    let mut scratch = vec![zero; dim];
    let mut v_live = false;

    for q in (2..=n).rev() {
        let plus = a[q - 1].add(&ap[q - 1]).scale(half);
        let minus = a[q - 1].sub(&ap[q - 1]).scale(half);
        apply_gate_into(&u, &mut pu, n, q, &plus);
        apply_gate_into(&u, &mut mu, n, q, &minus);
        if v_live {
            // u' = ½(p u − m v), v' = ½(m u + p v)
            apply_gate_into(&v, &mut scratch, n, q, &minus);
            for (x, s) in pu.iter_mut().zip(&scratch) {
                *x -= s;
            }
            apply_gate_into(&v, &mut scratch, n, q, &plus);
            for (x, s) in mu.iter_mut().zip(&scratch) {
                *x += s;
            }
        }
        std::mem::swap(&mut u, &mut pu);
        std::mem::swap(&mut v, &mut mu);
        v_live = true;
    }

    let mut out = vec![zero; dim];
    apply_gate_into(&u, &mut out, n, 1, &a[0]);
    if v_live {
        apply_gate_into(&v, &mut scratch, n, 1, &ap[0]);
        for (x, s) in out.iter_mut().zip(&scratch) {
            *x += s;
        }
    }
    StateVector::from_amplitudes(out)
}

/// `⟨state| M_n |state⟩`; the imaginary part must vanish to within `1e-9`.
pub fn mermin_expectation(fam: &MerminFamilies, state: &StateVector) -> Result<f64> {
    let applied = mermin_apply(fam, state)?;
    let z = inner_product(state, &applied)?;
    if z.im.abs() > IMAGINARY_TOLERANCE * state.norm().powi(2).max(1.0) {
        return Err(Error::NumericalConsistency(format!("Mermin expectation has imaginary part {:e}", z.im)));
    }
    Ok(z.re)
}

/// `M_n` as a dense matrix built term by term from the recursion.
pub fn mermin_dense(fam: &MerminFamilies) -> Result<MerminOperatorDense> {
    let n = fam.n();
    if n > DENSE_MAX_QUBITS {
        return Err(Error::Capacity(format!("dense Mermin operator limited to {DENSE_MAX_QUBITS} qubits, got {n}")));
    }
    let (a, ap) = fam.gates()?;
    let half = Complex64::new(0.5, 0.0);
    let mut m = a[0].to_matrix();
    let mut m_prime = ap[0].to_matrix();
    for j in 1..n {
        let sum = a[j].add(&ap[j]).to_matrix();
        let diff = a[j].sub(&ap[j]).to_matrix();
        let next = &m.kron(&sum).scale(half) + &m_prime.kron(&diff).scale(half);
        // M' swaps a and a', so (a' + a) stays and (a' − a) flips sign
        let next_prime = &m_prime.kron(&sum).scale(half) - &m.kron(&diff).scale(half);
        m = next;
        m_prime = next_prime;
    }
    Ok(MerminOperatorDense { entries: m })
}

/// Triple of `g† (αX + βY + γZ) g`, read off through `½ tr(· P)` for `P ∈ {X, Y, Z}`.
pub fn observable_conjugate(t: &ObservableTriple, g: &SingleQubitGate) -> Result<ObservableTriple> {
    if !g.is_unitary(1e-9) {
        return invalid("conjugating gate is not unitary");
    }
    let a = observable(t)?;
    let b = g.adjoint().compose(&a).compose(g);
    let proj = |p: SingleQubitGate| b.compose(&p).trace().re / 2.0;
    Ok(ObservableTriple::new(
        proj(SingleQubitGate::pauli_x()),
        proj(SingleQubitGate::pauli_y()),
        proj(SingleQubitGate::pauli_z()),
    ))
}
