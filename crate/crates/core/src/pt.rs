//! Partial transposition with respect to mode b.
//!
//! Two independent routes are provided: the explicit index permutation
//! [`pt_density`], and [`pt_moment`], which reads a moment of ρ^PT off the
//! original state by exchanging the mode-b exponents of the word.

use nalgebra::DMatrix;

use crate::error::Result;
use crate::fock::{
    su2_moments, DensityMatrix, FockIndex, FockState, Moment, MomentWord, SU11Moments,
};
use num_complex::Complex64;

/// ρ^PT with out[(na,nb),(na',nb')] = in[(na,nb'),(na',nb)].
pub fn pt_density(rho: &DensityMatrix) -> DensityMatrix {
    let dim = rho.dim();
    let mut out = DMatrix::<Complex64>::zeros(dim, dim);
    for r in 0..dim {
        let FockIndex { na, nb } = rho.fock_index(r);
        for c in 0..dim {
            let FockIndex { na: na2, nb: nb2 } = rho.fock_index(c);
            out[(r, c)] = rho.get(FockIndex::new(na, nb2), FockIndex::new(na2, nb));
        }
    }
    DensityMatrix::from_exact(rho.cutoff_a(), rho.cutoff_b(), out)
}

/// Partial transpose with respect to mode a, as swap ∘ PT_b ∘ swap.
pub fn pt_density_a(rho: &DensityMatrix) -> DensityMatrix {
    pt_density(&rho.swap_modes()).swap_modes()
}

/// <a†^m a^n b†^p b^q> in ρ^PT, evaluated as <a†^m a^n b†^q b^p> in ρ.
pub fn pt_moment<S: FockState + ?Sized>(state: &S, word: MomentWord) -> Moment {
    state.moment(word.swap_b())
}

/// SU(1,1) moments of ρ^PT obtained from the SU(2) moments of ρ:
/// (ΔKx)²_PT = (ΔJx)² + 1/4, (ΔKy)²_PT = (ΔJy)² + 1/4, <Kz>_PT = <Kz>,
/// and <Kx>_PT = <Jx>, <Ky>_PT = <Jy>.
pub fn pt_k_relations<S: FockState + ?Sized>(state: &S) -> Result<SU11Moments> {
    let m = su2_moments(state)?;
    Ok(SU11Moments {
        mean_kx: m.mean_jx,
        mean_ky: m.mean_jy,
        mean_kz: 0.5 * (m.n_plus + 1.0),
        var_kx: m.var_jx + 0.25,
        var_ky: m.var_jy + 0.25,
    })
}

/// (ΔKx)(ΔKy) − <Kz>/2 evaluated on ρ^PT; negative certifies entanglement.
pub fn pt_uncertainty_slack(k: &SU11Moments) -> f64 {
    (k.var_kx * k.var_ky).sqrt() - 0.5 * k.mean_kz
}
