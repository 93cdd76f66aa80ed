//! Two-mode bosonic states in a truncated Fock space, partial transposition,
//! separability inequalities built from SU(2) and SU(1,1) uncertainty
//! relations, and the SU(2) minimum-uncertainty states that violate them.
//!
//! The crate is organised bottom-up:
//!
//! * [`fock`]: basis, pure states, density matrices, normally-ordered moments
//!   and a dense brute-force oracle.
//! * [`pt`]: partial transposition of mode b, both as an explicit matrix map
//!   and as a rewrite of moment words.
//! * [`criteria`]: the one-parameter inequality family, its optimum and the
//!   Q/R witness values.
//! * [`su2gen`]: minimum-uncertainty state generator and critical squeezing.
//! * [`measure`]: Monte Carlo model of the phase-shifter + 50:50 beam splitter
//!   photon-counting setup.
//! * [`optics`]: linear two-mode transforms shared by the generator and the
//!   measurement model.

pub mod criteria;
pub mod error;
pub mod fock;
pub mod measure;
pub mod optics;
pub mod pt;
pub mod special;
pub mod su2gen;

pub use criteria::{verdict, CriterionReport};
pub use error::{Error, Result};
pub use fock::{
    mix, random_pure, random_separable, su11_moments, su2_moments, DensityMatrix, FockIndex,
    FockState, MomentWord, SU11Moments, SU2Moments, TwoModeState,
};
pub use num_complex::Complex64;
pub use su2gen::MinUncertaintySpec;

/// Rounding floor below which a negative slack still counts as "not violated".
pub const VIOLATION_THRESHOLD: f64 = 1e-10;
