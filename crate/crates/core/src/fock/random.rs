use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{mix, DensityMatrix, TwoModeState};
use crate::error::{Error, Result};

fn gaussian_vector<R: Rng>(rng: &mut R, len: usize) -> Vec<Complex64> {
    (0..len)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect()
}

/// Haar-like random pure state (normalized complex Gaussian amplitudes).
pub fn random_pure(seed: u64, cutoff_a: usize, cutoff_b: usize) -> TwoModeState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amps = gaussian_vector(&mut rng, (cutoff_a + 1) * (cutoff_b + 1));
    TwoModeState::from_amplitudes(cutoff_a, cutoff_b, amps).expect("gaussian vector is nonzero")
}

fn random_product<R: Rng>(rng: &mut R, cutoff_a: usize, cutoff_b: usize) -> TwoModeState {
    let phi = gaussian_vector(rng, cutoff_a + 1);
    let chi = gaussian_vector(rng, cutoff_b + 1);
    let amps = phi
        .iter()
        .flat_map(|x| chi.iter().map(move |y| x * y))
        .collect();
    TwoModeState::from_amplitudes(cutoff_a, cutoff_b, amps).expect("gaussian vector is nonzero")
}

/// Convex mixture of `k_terms` random product states |φ>_a ⊗ |χ>_b.
pub fn random_separable(
    seed: u64,
    cutoff_a: usize,
    cutoff_b: usize,
    k_terms: usize,
) -> Result<DensityMatrix> {
    if k_terms == 0 {
        return Err(Error::Parameter("k_terms must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let states: Vec<_> = (0..k_terms)
        .map(|_| random_product(&mut rng, cutoff_a, cutoff_b))
        .collect();
    let raw: Vec<f64> = (0..k_terms).map(|_| rng.random::<f64>() + 1e-3).collect();
    let total: f64 = raw.iter().sum();
    let mut weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
    // absorb rounding so the weights sum check in `mix` is exact enough
    let drift: f64 = 1.0 - weights.iter().sum::<f64>();
    weights[0] += drift;
    mix(&states, &weights)
}
