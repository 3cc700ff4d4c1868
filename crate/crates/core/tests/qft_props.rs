mod common;

use common::*;
use mermin_core::qft::{global_swap, periodic_state, qft_layers, qft_matrix, qft_run, swap_matrix, PeriodicSpec};
use mermin_core::{layer_matrix, run, Complex64, Matrix, StateVector};

#[test]
fn layered_circuit_matches_dft_on_random_states() {
    let mut rng = rng(41);
    let mut checked = 0;
    for n in 1..=5 {
        let circuit = qft_layers(n).unwrap();
        let dft = qft_matrix(n);
        for _ in 0..40 {
            let s = random_state(&mut rng, n);
            let expect = s.apply_matrix(&dft).unwrap();
            let got = run(&circuit, &s).unwrap().pop().unwrap();
            assert!(got.max_abs_diff(&expect) <= 1e-9, "n = {n}");
            assert!(qft_run(&s).unwrap().last().unwrap().approx_eq(&expect, 1e-9));
            checked += 1;
        }
    }
    assert!(checked >= 200);
}

#[test]
fn layer_product_equals_dft() {
    for n in 1..=5 {
        let circuit = qft_layers(n).unwrap();
        assert_eq!(circuit.len(), n * (n + 1) / 2 + 1);
        let product = circuit.layers().iter().fold(Matrix::identity(1 << n), |acc, l| &layer_matrix(l) * &acc);
        assert!(product.approx_eq(&qft_matrix(n), 1e-12));
        assert!(qft_matrix(n).is_unitary(1e-12));
    }
}

#[test]
fn four_qubit_run_captures_twelve_states() {
    for spec in PeriodicSpec::enumerate(4) {
        let states = qft_run(&periodic_state(&spec)).unwrap();
        assert_eq!(states.len(), 12);
        for s in &states {
            assert!((s.norm() - 1.0).abs() <= 1e-12);
        }
    }
}

#[test]
fn periodic_pairs_enumerate_completely() {
    assert_eq!(PeriodicSpec::enumerate(4).len(), 120);
    assert!(PeriodicSpec::new(15, 1, 4).is_err());
    assert!(PeriodicSpec::new(0, 0, 4).is_err());
    assert!(PeriodicSpec::new(0, 16, 4).is_err());
    for spec in PeriodicSpec::enumerate(3) {
        let s = periodic_state(&spec);
        let support: Vec<usize> = (0..8).filter(|&i| s.amplitude(i).norm() > 0.0).collect();
        assert_eq!(support, spec.support().collect::<Vec<_>>());
        assert!(support.len() >= 2);
    }
}

#[test]
fn transform_of_period_gives_peaks_at_multiples() {
    // period 4 from 0 on 4 qubits: amplitude only on multiples of N/r = 4
    let s = periodic_state(&PeriodicSpec::new(0, 4, 4).unwrap());
    let out = qft_run(&s).unwrap().pop().unwrap();
    for i in 0..16 {
        let expect = if i % 4 == 0 { 0.5 } else { 0.0 };
        assert!((out.amplitude(i) - Complex64::new(expect, 0.0)).norm() <= 1e-12, "{i}");
    }
}

#[test]
fn swaps_are_permutation_involutions() {
    for n in 2..=5 {
        let g = global_swap(n).unwrap();
        assert!((&g * &g).approx_eq(&Matrix::identity(1 << n), 0.0));
        let s = swap_matrix(1, n, n).unwrap();
        let e = StateVector::basis(n, 1).unwrap();
        assert_eq!(e.apply_matrix(&s).unwrap(), StateVector::basis(n, 1 << (n - 1)).unwrap());
    }
}
