#![allow(dead_code)]

use mermin_core::mermin::{MerminFamilies, ObservableTriple};
use mermin_core::{Complex64, SingleQubitGate, StateVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

pub fn complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(gaussian(rng), gaussian(rng))
}

pub fn random_state(rng: &mut ChaCha8Rng, n: usize) -> StateVector {
    let amps = (0..1usize << n).map(|_| complex(rng)).collect();
    StateVector::from_amplitudes(amps).unwrap().normalized().unwrap()
}

pub fn random_product_state(rng: &mut ChaCha8Rng, n: usize) -> StateVector {
    let factors: Vec<[Complex64; 2]> = (0..n).map(|_| [complex(rng), complex(rng)]).collect();
    StateVector::product(&factors).unwrap().normalized().unwrap()
}

/// Haar-ish SU(2) element from a random unit quaternion, times a random phase.
pub fn random_unitary(rng: &mut ChaCha8Rng) -> SingleQubitGate {
    let q: Vec<f64> = (0..4).map(|_| gaussian(rng)).collect();
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let a = Complex64::new(q[0] / n, q[1] / n);
    let b = Complex64::new(q[2] / n, q[3] / n);
    let phase = Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
    SingleQubitGate::new([[a, -b.conj()], [b, a.conj()]]).scale(phase)
}

/// Random element of SL(2, C) kept reasonably well conditioned.
pub fn random_sl2(rng: &mut ChaCha8Rng) -> SingleQubitGate {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let g = SingleQubitGate::new([
        [one + complex(rng) * 0.4, zero + complex(rng) * 0.4],
        [zero + complex(rng) * 0.4, one + complex(rng) * 0.4],
    ]);
    let det = g.determinant();
    g.scale(Complex64::new(1.0, 0.0) / det.sqrt())
}

pub fn random_triple(rng: &mut ChaCha8Rng) -> ObservableTriple {
    ObservableTriple::new(gaussian(rng), gaussian(rng), gaussian(rng))
}

pub fn random_families(rng: &mut ChaCha8Rng, n: usize) -> MerminFamilies {
    let a = (0..n).map(|_| random_triple(rng)).collect();
    let b = (0..n).map(|_| random_triple(rng)).collect();
    MerminFamilies::new(a, b).unwrap()
}

pub fn ghz(n: usize) -> StateVector {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut amps = vec![0.0; 1 << n];
    amps[0] = h;
    amps[(1 << n) - 1] = h;
    StateVector::from_real(&amps).unwrap()
}
