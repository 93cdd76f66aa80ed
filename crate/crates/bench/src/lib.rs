//! Fixed inputs shared by the kernel benchmarks.

use su2w_core::su2gen::min_uncertainty_state;
use su2w_core::{random_pure, DensityMatrix, MinUncertaintySpec, TwoModeState};

/// Generated minimum-uncertainty state at `lambda = 0.5`, `m = n / 2`.
pub fn generated(n: usize) -> TwoModeState {
    min_uncertainty_state(&MinUncertaintySpec::new(n, n / 2, 0.5).expect("valid spec"))
        .expect("finite state")
}

/// Seeded random pure state with equal cutoffs.
pub fn random_state(cutoff: usize) -> TwoModeState {
    random_pure(7, cutoff, cutoff)
}

pub fn random_density(cutoff: usize) -> DensityMatrix {
    DensityMatrix::from_pure(&random_state(cutoff))
}
