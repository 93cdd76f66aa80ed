//! Truncated two-mode Fock space.
//!
//! Basis vectors |na, nb> with `na <= cutoff_a`, `nb <= cutoff_b` are laid out
//! row-major: `index = na * (cutoff_b + 1) + nb`.

pub mod dense;
mod density;
pub mod io;
mod moments;
mod random;
mod state;

pub use density::{mix, DensityMatrix};
pub use moments::{
    su11_moments, su2_moments, FockState, Moment, MomentWord, SU11Moments, SU2Moments,
};
pub use random::{random_pure, random_separable};
pub use state::{FockIndex, KetImage, TwoModeState};

/// Number of basis vectors for the given cutoffs.
#[inline]
pub fn basis_dim(cutoff_a: usize, cutoff_b: usize) -> usize {
    (cutoff_a + 1) * (cutoff_b + 1)
}

/// √((n+k)!/n!), the factor picked up by lowering |n+k> to |n> k times.
#[inline]
pub(crate) fn lowering_factor(n: usize, k: usize) -> f64 {
    (1..=k).map(|t| ((n + t) as f64).sqrt()).product()
}
