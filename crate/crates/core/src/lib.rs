//! Statevector simulation of Grover search and the quantum Fourier transform,
//! with entanglement evaluation through Mermin polynomials and the four-qubit
//! Cayley hyperdeterminant.
//!
//! Basis states are indexed big-endian throughout: qubit 1 is the most
//! significant bit.

pub mod circuit;
pub mod error;
pub mod grover;
pub mod hyperdet;
pub mod mermin;
pub mod optimize;
pub mod qft;
pub mod scan;
pub mod statevec;

pub use num_complex::Complex64;

pub use circuit::{layer_matrix, run, Circuit, Layer};
pub use error::{Error, Result};
pub use grover::{
    diffusion_apply, explicit_state, grover_circuit, grover_run, k_opt, oracle_apply, phi_ent, GroverCoefficients,
    GroverProblem, GroverTrace,
};
pub use hyperdet::{delta2222, report, FourQubitAmplitudes, InvariantReport};
pub use mermin::{
    mermin_apply, mermin_dense, mermin_expectation, observable, observable_conjugate, MerminFamilies,
    MerminOperatorDense, ObservableTriple,
};
pub use optimize::{optimize, optimize_restarts, WalkCache, WalkConfig, WalkResult};
pub use qft::{crk_matrix, periodic_state, qft_layers, qft_matrix, qft_run, swap_matrix, PeriodicSpec};
pub use statevec::{apply_single_qubit, inner_product, kronecker_power, Matrix, SingleQubitGate, StateVector};
