//! Quantum Fourier transform circuit and the periodic input states it is run on.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::circuit::{run, Circuit, Layer};
use crate::error::{invalid, Result};
use crate::statevec::{Matrix, SingleQubitGate, StateVector, MAX_QUBITS};

/// Shift `l` and period `r` of a periodic state over `n_qubits` wires.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicSpec {
    shift: usize,
    period: usize,
    n_qubits: usize,
}

impl PeriodicSpec {
    /// Requires `0 <= shift <= N-1` and `1 <= period <= N-shift-1` with `N = 2^n_qubits`.
    pub fn new(shift: usize, period: usize, n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return invalid(format!("qubit count {n_qubits} out of range 1..={MAX_QUBITS}"));
        }
        let dim = 1usize << n_qubits;
        if shift >= dim {
            return invalid(format!("shift {shift} out of range 0..{dim}"));
        }
        if period < 1 || period + shift >= dim {
            return invalid(format!(
                "period {period} out of range 1..={} for shift {shift}",
                dim as isize - shift as isize - 1
            ));
        }
        Ok(Self { shift, period, n_qubits })
    }

    pub fn shift(&self) -> usize {
        self.shift
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Number of support elements, `⌈(N − l) / r⌉`.
    pub fn support_len(&self) -> usize {
        ((1usize << self.n_qubits) - self.shift).div_ceil(self.period)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.support_len()).map(move |i| self.shift + i * self.period)
    }

    /// Every valid `(shift, period)` pair on `n_qubits` wires, shift-major.
    pub fn enumerate(n_qubits: usize) -> Vec<Self> {
        let dim = 1usize << n_qubits;
        (0..dim)
            .flat_map(|l| (1..dim.saturating_sub(l)).map(move |r| (l, r)))
            .map(|(l, r)| Self { shift: l, period: r, n_qubits })
            .collect()
    }
}

/// Uniform superposition over `l, l + r, …, l + (A−1) r`.
pub fn periodic_state(spec: &PeriodicSpec) -> StateVector {
    let dim = 1usize << spec.n_qubits;
    let a = 1.0 / (spec.support_len() as f64).sqrt();
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    for i in spec.support() {
        amps[i] = Complex64::new(a, 0.0);
    }
    StateVector::from_amplitudes(amps).expect("validated width")
}

fn phase(k: u32) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI / (k as f64).exp2())
}

/// `diag(1, 1, 1, e^{2iπ/2^k})`.
pub fn crk_matrix(k: u32) -> Result<Matrix> {
    if k < 1 {
        return invalid("controlled rotation index must be >= 1");
    }
    let one = Complex64::new(1.0, 0.0);
    Ok(Matrix::diagonal(&[one, one, one, phase(k)]))
}

fn check_wire(wire: usize, n_qubits: usize) -> Result<()> {
    if wire == 0 || wire > n_qubits {
        return invalid(format!("wire {wire} out of range 1..={n_qubits}"));
    }
    Ok(())
}

/// Full-width controlled `R_k` between `target` and `control` (1-based wires).
pub fn controlled_phase(k: u32, target: usize, control: usize, n_qubits: usize) -> Result<Matrix> {
    check_wire(target, n_qubits)?;
    check_wire(control, n_qubits)?;
    if target == control {
        return invalid("target and control wires coincide");
    }
    if k < 1 {
        return invalid("controlled rotation index must be >= 1");
    }
    let bt = 1usize << (n_qubits - target);
    let bc = 1usize << (n_qubits - control);
    let p = phase(k);
    let diag: Vec<Complex64> = (0..1usize << n_qubits)
        .map(|i| if i & bt != 0 && i & bc != 0 { p } else { Complex64::new(1.0, 0.0) })
        .collect();
    Ok(Matrix::diagonal(&diag))
}

/// Permutation matrix exchanging wires `w1` and `w2` on an `n_qubits` register.
pub fn swap_matrix(w1: usize, w2: usize, n_qubits: usize) -> Result<Matrix> {
    check_wire(w1, n_qubits)?;
    check_wire(w2, n_qubits)?;
    if w1 == w2 {
        return invalid("swap wires coincide");
    }
    let dim = 1usize << n_qubits;
    let b1 = n_qubits - w1;
    let b2 = n_qubits - w2;
    let mut m = Matrix::zeros(dim);
    for i in 0..dim {
        let diff = ((i >> b1) ^ (i >> b2)) & 1;
        let j = i ^ (diff << b1) ^ (diff << b2);
        m.set(j, i, Complex64::new(1.0, 0.0));
    }
    Ok(m)
}

/// Reverses wire order: wire `i` is exchanged with wire `n + 1 − i`.
pub fn global_swap(n_qubits: usize) -> Result<Matrix> {
    let mut m = Matrix::identity(1usize << n_qubits);
    for w in 1..=n_qubits / 2 {
        m = &m * &swap_matrix(w, n_qubits + 1 - w, n_qubits)?;
    }
    Ok(m)
}

/// One gate per layer: for each wire `w`, `H` on `w` then `cR_k` (k = 2..=n−w+1)
/// targeting `w` and controlled by wire `w+k−1`; the global swap closes the circuit.
pub fn qft_layers(n_qubits: usize) -> Result<Circuit> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return invalid(format!("qubit count {n_qubits} out of range 1..={MAX_QUBITS}"));
    }
    let h = SingleQubitGate::hadamard().to_matrix();
    let i2 = Matrix::identity(2);
    let mut layers = Vec::with_capacity(n_qubits * (n_qubits + 1) / 2 + 1);
    for w in 1..=n_qubits {
        let blocks = (1..=n_qubits).map(|j| if j == w { h.clone() } else { i2.clone() }).collect();
        layers.push(Layer::new(blocks)?);
        for k in 2..=(n_qubits - w + 1) {
            layers.push(Layer::new(vec![controlled_phase(k as u32, w, w + k - 1, n_qubits)?])?);
        }
    }
    layers.push(Layer::new(vec![global_swap(n_qubits)?])?);
    Circuit::new(layers)
}

/// DFT matrix: entry `(k, j)` is `ω^{kj}/√N` with `ω = e^{2iπ/N}`.
pub fn qft_matrix(n_qubits: usize) -> Matrix {
    let dim = 1usize << n_qubits;
    let norm = 1.0 / (dim as f64).sqrt();
    let entries = (0..dim * dim)
        .map(|idx| {
            let (k, j) = (idx / dim, idx % dim);
            let e = ((k * j) % dim) as f64;
            Complex64::from_polar(norm, 2.0 * PI * e / dim as f64)
        })
        .collect();
    Matrix::from_row_major(entries).expect("square by construction")
}

/// States before the first gate and after every gate of the QFT circuit.
pub fn qft_run(state: &StateVector) -> Result<Vec<StateVector>> {
    run(&qft_layers(state.n_qubits())?, state)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn periodic_state_example() {
        let s = periodic_state(&PeriodicSpec::new(1, 5, 4).unwrap());
        let a = 1.0 / 3f64.sqrt();
        for i in 0..16 {
            let expect = if [1, 6, 11].contains(&i) { a } else { 0.0 };
            assert!((s.amplitude(i).re - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn full_support_is_uniform() {
        let s = periodic_state(&PeriodicSpec::new(0, 1, 3).unwrap());
        assert!(s.approx_eq(&StateVector::uniform(3).unwrap(), 1e-15));
    }

    #[test]
    fn shift_two_period_four_factorizes() {
        // support {2,6,10,14}: |+⟩|+⟩|1⟩|0⟩
        let s = periodic_state(&PeriodicSpec::new(2, 4, 4).unwrap());
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let c = |x: f64| Complex64::new(x, 0.0);
        let p = StateVector::product(&[[c(h), c(h)], [c(h), c(h)], [c(0.0), c(1.0)], [c(1.0), c(0.0)]]).unwrap();
        assert!(s.approx_eq(&p, 1e-15));
    }

    #[test]
    fn periodic_spec_validation() {
        assert!(PeriodicSpec::new(16, 1, 4).is_err());
        assert!(PeriodicSpec::new(0, 0, 4).is_err());
        assert!(PeriodicSpec::new(0, 16, 4).is_err());
        assert!(PeriodicSpec::new(15, 1, 4).is_err());
        assert!(PeriodicSpec::new(0, 15, 4).is_ok());
    }

    #[test]
    fn enumerate_matches_validation() {
        let all = PeriodicSpec::enumerate(4);
        // Σ_{l=0}^{15} (15 − l)
        assert_eq!(all.len(), 120);
        assert!(all.iter().all(|s| PeriodicSpec::new(s.shift, s.period, 4).is_ok()));
    }

    #[test]
    fn cr1_is_controlled_z() {
        let m = crk_matrix(1).unwrap();
        let one = Complex64::new(1.0, 0.0);
        assert!(m.approx_eq(&Matrix::diagonal(&[one, one, one, -one]), 1e-15));
        assert!(crk_matrix(0).is_err());
    }

    #[test]
    fn swap_examples() {
        let s = swap_matrix(1, 2, 2).unwrap();
        assert!((&s * &s).approx_eq(&Matrix::identity(4), 0.0));
        let out = StateVector::basis(2, 0b01).unwrap().apply_matrix(&s).unwrap();
        assert_eq!(out, StateVector::basis(2, 0b10).unwrap());
        assert!(swap_matrix(1, 1, 2).is_err());
        assert!(swap_matrix(0, 1, 2).is_err());
        assert!(swap_matrix(1, 3, 2).is_err());
    }

    #[test]
    fn controlled_phase_is_symmetric() {
        let a = controlled_phase(3, 1, 3, 4).unwrap();
        let b = controlled_phase(3, 3, 1, 4).unwrap();
        assert_eq!(a, b);
        // embedding on adjacent wires agrees with the 4×4 form
        let local = Matrix::identity(2).kron(&crk_matrix(2).unwrap()).kron(&Matrix::identity(2));
        assert!(controlled_phase(2, 2, 3, 4).unwrap().approx_eq(&local, 0.0));
    }

    #[test]
    fn layer_counts() {
        assert_eq!(qft_layers(4).unwrap().len(), 11);
        assert_eq!(qft_layers(1).unwrap().len(), 2);
        let two = qft_layers(2).unwrap();
        assert_eq!(two.len(), 4);
        assert!(two.layers()[1].blocks()[0].approx_eq(&crk_matrix(2).unwrap(), 0.0));
        assert!(two.layers()[3].blocks()[0].approx_eq(&swap_matrix(1, 2, 2).unwrap(), 0.0));
        assert!(qft_layers(0).is_err());
    }

    #[test]
    fn qft_of_zero_is_uniform() {
        let states = qft_run(&StateVector::basis(4, 0).unwrap()).unwrap();
        assert_eq!(states.len(), 12);
        assert!(states[11].approx_eq(&StateVector::uniform(4).unwrap(), 1e-12));
    }

    #[test]
    fn ghz_is_the_zero_fifteen_periodic_state() {
        let s = periodic_state(&PeriodicSpec::new(0, 15, 4).unwrap());
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut ghz = vec![0.0; 16];
        ghz[0] = h;
        ghz[15] = h;
        let states = qft_run(&s).unwrap();
        assert!(states[0].approx_eq(&StateVector::from_real(&ghz).unwrap(), 1e-15));
    }

    #[test]
    fn qft_matrix_is_unitary() {
        for n in 1..=6 {
            assert!(qft_matrix(n).is_unitary(1e-9), "n = {n}");
        }
    }
}
