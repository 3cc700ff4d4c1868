mod common;

use std::collections::BTreeSet;

use common::*;
use mermin_core::grover::{
    diffusion_apply, explicit_state, grover_circuit, grover_run, k_opt, oracle_apply, phi_ent, GroverCoefficients,
    GroverProblem,
};
use mermin_core::{inner_product, run, StateVector};
use proptest::prelude::*;
use rand::Rng;

fn random_problem(rng: &mut rand_chacha::ChaCha8Rng, n: usize, s: usize) -> GroverProblem {
    let mut set = BTreeSet::new();
    while set.len() < s {
        set.insert(rng.random_range(0..1usize << n));
    }
    GroverProblem::new(n, set).unwrap()
}

#[test]
fn iterated_states_match_closed_form() {
    let mut rng = rng(31);
    for n in 2..=10 {
        for s in [1, 2] {
            for _ in 0..3 {
                let p = random_problem(&mut rng, n, s);
                let trace = grover_run(&p);
                assert_eq!(trace.end_loop_states.len(), p.k_opt() + 1);
                for (k, state) in trace.end_loop_states.iter().enumerate() {
                    let d = state.max_abs_diff(&explicit_state(&p, k));
                    assert!(d <= 1e-9, "n = {n}, S = {:?}, k = {k}: {d:e}", p.solutions());
                }
            }
        }
    }
}

fn assert_monotone(n: usize, s: usize, kmax: usize) {
    let c: Vec<_> = (0..=kmax).map(|k| GroverCoefficients::new(n, s, k).unwrap()).collect();
    for w in c.windows(2) {
        assert!(w[1].alpha_tilde > w[0].alpha_tilde, "n = {n}, s = {s}");
        assert!(w[1].beta_tilde < w[0].beta_tilde, "n = {n}, s = {s}");
    }
}

/// Monotone for `k ≤ π/4·√(N/s) − 1/2`.
#[test]
fn tilde_coefficients_are_monotone_on_stated_range() {
    for n in 2..=12 {
        for s in [1, 2, 3] {
            let bound = std::f64::consts::FRAC_PI_4 * ((1 << n) as f64 / s as f64).sqrt() - 0.5;
            assert_monotone(n, s, bound.floor() as usize);
        }
    }
}

/// Rounding can put `k_opt` one past the stated range. For `(n, s) = (2, 1)` and
/// `(3, 2)` that step overshoots; from four qubits on the sequences stay monotone.
#[test]
fn tilde_coefficients_are_monotone_up_to_k_opt() {
    for n in 4..=12 {
        for s in [1, 2, 3] {
            assert_monotone(n, s, k_opt(1 << n, s).unwrap());
        }
    }
}

#[test]
fn two_qubit_search_overshoots_at_k_opt() {
    let p = GroverProblem::single(2, 0).unwrap();
    let trace = grover_run(&p);
    assert_eq!(trace.k_opt, 2);
    assert!((trace.end_loop_states[1].amplitude(0).norm_sqr() - 1.0).abs() <= 1e-12);
    assert!((trace.end_loop_states[2].amplitude(0).norm_sqr() - 0.25).abs() <= 1e-12);
}

#[test]
fn circuit_agrees_with_direct_loop() {
    let mut rng = rng(32);
    for n in 2..=6 {
        let p = random_problem(&mut rng, n, 1 + n % 2);
        let states = run(&grover_circuit(&p).unwrap(), &StateVector::basis(n, 0).unwrap()).unwrap();
        let trace = grover_run(&p);
        for (k, phi) in trace.end_loop_states.iter().enumerate() {
            assert!(states[2 * k + 1].approx_eq(phi, 1e-10), "n = {n}, k = {k}");
        }
    }
}

/// With at most a quarter of the indices marked, the rounded count lands within
/// `θ` of the quarter turn, so `P ≥ cos²θ`.
#[test]
fn success_probability_after_optimal_count() {
    for n in 2..=12 {
        for s in [1, 2, 3] {
            if 4 * s > 1 << n {
                continue;
            }
            let p = GroverProblem::new(n, 0..s).unwrap();
            let last = grover_run(&p).end_loop_states.pop().unwrap();
            let prob: f64 = p.solutions().iter().map(|&x| last.amplitude(x).norm_sqr()).sum();
            let theta = 2.0 * (s as f64 / (1 << n) as f64).sqrt().asin();
            assert!(prob >= theta.cos().powi(2) - 1e-12, "n = {n}, s = {s}: {prob}");
        }
    }
}

#[test]
fn phi_ent_is_normalized_and_favours_target() {
    for n in 1..=12 {
        for x0 in [0, (1 << n) - 1] {
            let s = phi_ent(n, x0).unwrap();
            assert!((s.norm() - 1.0).abs() <= 1e-12);
            let other = if x0 == 0 { 1 } else { 0 };
            assert!(s.amplitude(x0).re > s.amplitude(other).re);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn oracle_and_diffusion_are_unitary_involutions(n in 1usize..=8, seed in any::<u64>(), marked in 0usize..256) {
        let mut rng = rng(seed);
        let state = random_state(&mut rng, n);
        let set: BTreeSet<usize> = [marked % (1 << n)].into();
        let o = oracle_apply(&state, &set).unwrap();
        let d = diffusion_apply(&state);
        prop_assert!((o.norm() - 1.0).abs() <= 1e-12);
        prop_assert!((d.norm() - 1.0).abs() <= 1e-12);
        prop_assert!(oracle_apply(&o, &set).unwrap().approx_eq(&state, 1e-14));
        prop_assert!(diffusion_apply(&d).approx_eq(&state, 1e-12));
    }

    #[test]
    fn diffusion_fixes_uniform_component(n in 1usize..=8, seed in any::<u64>()) {
        let mut rng = rng(seed);
        let state = random_state(&mut rng, n);
        let u = StateVector::uniform(n).unwrap();
        let before = inner_product(&u, &state).unwrap();
        let after = inner_product(&u, &diffusion_apply(&state)).unwrap();
        prop_assert!((before - after).norm() <= 1e-12);
    }
}
