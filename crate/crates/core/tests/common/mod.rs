#![allow(dead_code)]

use ampsum_core::{state_from_amplitudes, ComplexAmp, StateVector, WeightSpec};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_amplitudes(dim: usize, rng: &mut ChaCha8Rng) -> Vec<ComplexAmp> {
    (0..dim)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

pub fn random_state(n: usize, rng: &mut ChaCha8Rng) -> StateVector {
    state_from_amplitudes(random_amplitudes(1 << n, rng), true).unwrap()
}

pub fn random_weights(k: usize, rng: &mut ChaCha8Rng) -> WeightSpec {
    WeightSpec::new((0..k).map(|_| rng.gen_range(-1.0..=1.0)).collect()).unwrap()
}

pub fn max_dev(a: &[ComplexAmp], b: &[ComplexAmp]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// The worked 16-amplitude example: eight 1/√64, four 1/√32, two 1/√8, one 1/√2, one 0.
pub fn example_vector() -> Vec<f64> {
    let mut v = vec![1.0 / 64f64.sqrt(); 8];
    v.extend([1.0 / 32f64.sqrt(); 4]);
    v.extend([1.0 / 8f64.sqrt(); 2]);
    v.extend([1.0 / 2f64.sqrt(), 0.0]);
    v
}
