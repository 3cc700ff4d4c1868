//! Layered circuits: each layer is a list of gate blocks laid side by side on
//! the wires, the first block covering the most significant qubits.

use crate::error::{invalid, Result};
use crate::statevec::{apply_block_in_place, apply_gate_in_place, Matrix, SingleQubitGate, StateVector};

#[derive(Clone, Debug, PartialEq)]
pub struct Layer {
    blocks: Vec<Matrix>,
    total_qubits: usize,
}

impl Layer {
    pub fn new(blocks: Vec<Matrix>) -> Result<Self> {
        if blocks.is_empty() {
            return invalid("a layer needs at least one block");
        }
        let mut total_qubits = 0;
        for (i, b) in blocks.iter().enumerate() {
            if b.dim() < 2 || !b.dim().is_power_of_two() {
                return invalid(format!("block {i} has dimension {}, not a power of two", b.dim()));
            }
            total_qubits += b.dim().trailing_zeros() as usize;
        }
        Ok(Self { blocks, total_qubits })
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    pub fn total_qubits(&self) -> usize {
        self.total_qubits
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Circuit {
    layers: Vec<Layer>,
}

impl Circuit {
    pub fn new(layers: Vec<Layer>) -> Result<Self> {
        if let Some(first) = layers.first() {
            let width = first.total_qubits;
            if let Some((i, l)) = layers.iter().enumerate().find(|(_, l)| l.total_qubits != width) {
                return invalid(format!("layer {i} spans {} qubits, expected {width}", l.total_qubits));
            }
        }
        Ok(Self { layers })
    }

    /// Builds a circuit from nested block lists, as in `[[H, I4], [X, X, I2]]`.
    pub fn from_blocks(layers: Vec<Vec<Matrix>>) -> Result<Self> {
        Self::new(layers.into_iter().map(Layer::new).collect::<Result<_>>()?)
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// Qubit count of the circuit, `None` when it has no layers.
    pub fn width(&self) -> Option<usize> {
        self.layers.first().map(Layer::total_qubits)
    }
}

/// Dense matrix of one layer: the Kronecker product of its blocks in wire order.
pub fn layer_matrix(layer: &Layer) -> Matrix {
    let mut blocks = layer.blocks.iter();
    let first = blocks.next().expect("layer has at least one block").clone();
    blocks.fold(first, |acc, b| acc.kron(b))
}

/// Runs `circuit` on `initial`, returning the state before the first layer
/// followed by the state after every layer.
pub fn run(circuit: &Circuit, initial: &StateVector) -> Result<Vec<StateVector>> {
    if let Some(width) = circuit.width() {
        if width != initial.n_qubits() {
            return invalid(format!("circuit spans {width} qubits but the state has {}", initial.n_qubits()));
        }
    }
    let n = initial.n_qubits();
    let mut states = Vec::with_capacity(circuit.len() + 1);
    states.push(initial.clone());
    let mut current = initial.clone();
    for layer in &circuit.layers {
        let mut wire = 1;
        for block in &layer.blocks {
            let width = block.dim().trailing_zeros() as usize;
            let amps = current.amplitudes_mut();
            if width == 1 {
                let e = block.entries();
                let gate = SingleQubitGate::new([[e[0], e[1]], [e[2], e[3]]]);
                apply_gate_in_place(amps, n, wire, &gate);
            } else {
                apply_block_in_place(amps, n, wire, block);
            }
            wire += width;
        }
        states.push(current.clone());
    }
    Ok(states)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn h() -> Matrix {
        SingleQubitGate::hadamard().to_matrix()
    }
    fn x() -> Matrix {
        SingleQubitGate::pauli_x().to_matrix()
    }

    #[test]
    fn layer_matrix_examples() {
        let layer = Layer::new(vec![h(), Matrix::identity(4)]).unwrap();
        let m = layer_matrix(&layer);
        assert_eq!(m.dim(), 8);
        assert!(m.approx_eq(&h().kron(&Matrix::identity(4)), 0.0));

        let id = Layer::new(vec![Matrix::identity(2)]).unwrap();
        assert!(layer_matrix(&id).approx_eq(&Matrix::identity(2), 0.0));

        let xx = Circuit::from_blocks(vec![vec![x(), x()]]).unwrap();
        let out = run(&xx, &StateVector::basis(2, 0).unwrap()).unwrap();
        assert!(out[1].approx_eq(&StateVector::basis(2, 3).unwrap(), 0.0));
    }

    #[test]
    fn non_power_of_two_block_rejected() {
        assert!(Layer::new(vec![Matrix::identity(3)]).is_err());
        assert!(Layer::new(vec![]).is_err());
    }

    #[test]
    fn inconsistent_widths_rejected() {
        let r = Circuit::from_blocks(vec![vec![h()], vec![h(), h()]]);
        assert!(r.is_err());
    }

    #[test]
    fn empty_circuit_returns_initial() {
        let s = StateVector::basis(1, 0).unwrap();
        let out = run(&Circuit::default(), &s).unwrap();
        assert_eq!(out, vec![s]);
    }

    #[test]
    fn hh_on_00_gives_uniform() {
        let c = Circuit::from_blocks(vec![vec![h(), h()]]).unwrap();
        let out = run(&c, &StateVector::basis(2, 0).unwrap()).unwrap();
        assert_eq!(out.len(), 2);
        assert!(out[1].approx_eq(&StateVector::uniform(2).unwrap(), 1e-15));
    }

    #[test]
    fn width_mismatch_rejected() {
        let c = Circuit::from_blocks(vec![vec![h(), h()]]).unwrap();
        assert!(run(&c, &StateVector::basis(3, 0).unwrap()).is_err());
    }

    #[test]
    fn figure_circuit_matches_dense_fold() {
        let i2 = Matrix::identity(2);
        let i4 = Matrix::identity(4);
        let c = Circuit::from_blocks(vec![
            vec![h(), i4.clone()],
            vec![x(), x(), i2.clone()],
            vec![i4, h()],
            vec![h(), h(), h()],
        ])
        .unwrap();
        let init = StateVector::basis(3, 0).unwrap();
        let states = run(&c, &init).unwrap();
        assert_eq!(states.len(), 5);

        let mut dense = init.amplitudes().to_vec();
        for (layer, s) in c.layers().iter().zip(&states[1..]) {
            dense = layer_matrix(layer).mul_vec(&dense).unwrap();
            assert!((s.norm() - 1.0).abs() < 1e-12);
            let diff = dense
                .iter()
                .zip(s.amplitudes())
                .map(|(a, b): (&Complex64, &Complex64)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(diff < 1e-12);
        }
    }
}
