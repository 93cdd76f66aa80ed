use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{lowering_factor, DensityMatrix, TwoModeState};
use crate::error::{Error, Result};

/// Exponents of the normally-ordered monomial a†^m a^n b†^p b^q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MomentWord {
    pub m: usize,
    pub n: usize,
    pub p: usize,
    pub q: usize,
}

impl MomentWord {
    pub const fn new(m: usize, n: usize, p: usize, q: usize) -> Self {
        Self { m, n, p, q }
    }

    pub const fn degree(self) -> usize {
        self.m + self.n + self.p + self.q
    }

    /// The word with mode-b exponents exchanged, a†^m a^n b†^q b^p.
    pub const fn swap_b(self) -> Self {
        Self::new(self.m, self.n, self.q, self.p)
    }

    /// Every word of total degree at most `max_degree`.
    pub fn all_up_to(max_degree: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for m in 0..=max_degree {
            for n in 0..=max_degree - m {
                for p in 0..=max_degree - m - n {
                    for q in 0..=max_degree - m - n - p {
                        out.push(Self::new(m, n, p, q));
                    }
                }
            }
        }
        out
    }
}

/// Expectation value of a [`MomentWord`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moment {
    pub value: Complex64,
    /// Some exponent exceeds its mode's cutoff. The value is still the exact
    /// expectation for a state confined to the truncated basis (namely zero
    /// for that word), but the basis cannot resolve the operator.
    pub exceeds_cutoff: bool,
}

/// Anything that can evaluate normally-ordered moments.
pub trait FockState {
    fn cutoffs(&self) -> (usize, usize);

    /// <a†^m a^n b†^p b^q>.
    ///
    /// Evaluated as <(a^m b^p)ψ | (a^n b^q)ψ> (or its trace analogue), so
    /// only lowering operators act and nothing is lost to truncation.
    fn moment(&self, word: MomentWord) -> Moment;

    fn moment_value(&self, word: MomentWord) -> Complex64 {
        self.moment(word).value
    }
}

fn exceeds(word: MomentWord, (ca, cb): (usize, usize)) -> bool {
    word.m.max(word.n) > ca || word.p.max(word.q) > cb
}

impl FockState for TwoModeState {
    fn cutoffs(&self) -> (usize, usize) {
        (self.cutoff_a(), self.cutoff_b())
    }

    fn moment(&self, word: MomentWord) -> Moment {
        let (ca, cb) = self.cutoffs();
        let MomentWord { m, n, p, q } = word;
        let mut acc = Complex64::new(0.0, 0.0);
        if !exceeds(word, (ca, cb)) {
            let amps = self.amplitudes();
            for i in 0..=ca - m.max(n) {
                let fa = lowering_factor(i, m) * lowering_factor(i, n);
                for j in 0..=cb - p.max(q) {
                    let bra = amps[self.index_of(i + m, j + p)];
                    let ket = amps[self.index_of(i + n, j + q)];
                    if bra == Complex64::new(0.0, 0.0) || ket == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    let f = fa * lowering_factor(j, p) * lowering_factor(j, q);
                    acc += bra.conj() * ket * f;
                }
            }
        }
        Moment {
            value: acc,
            exceeds_cutoff: exceeds(word, (ca, cb)),
        }
    }
}

impl FockState for DensityMatrix {
    fn cutoffs(&self) -> (usize, usize) {
        (self.cutoff_a(), self.cutoff_b())
    }

    fn moment(&self, word: MomentWord) -> Moment {
        let (ca, cb) = self.cutoffs();
        let MomentWord { m, n, p, q } = word;
        let mut acc = Complex64::new(0.0, 0.0);
        if !exceeds(word, (ca, cb)) {
            let rho = self.entries();
            let idx = |na: usize, nb: usize| na * (cb + 1) + nb;
            // Tr(ρ a†^m b†^p a^n b^q) = Σ_k <k|a^n b^q ρ a†^m b†^p|k>
            for i in 0..=ca - m.max(n) {
                let fa = lowering_factor(i, m) * lowering_factor(i, n);
                for j in 0..=cb - p.max(q) {
                    let e = rho[(idx(i + n, j + q), idx(i + m, j + p))];
                    if e == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    acc += e * fa * lowering_factor(j, p) * lowering_factor(j, q);
                }
            }
        }
        Moment {
            value: acc,
            exceeds_cutoff: exceeds(word, (ca, cb)),
        }
    }
}

/// First and second moments of the Schwinger SU(2) operators
/// Jx = (a†b + ab†)/2, Jy = (a†b − ab†)/2i, Jz = (a†a − b†b)/2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SU2Moments {
    pub mean_jx: f64,
    pub mean_jy: f64,
    pub mean_jz: f64,
    pub var_jx: f64,
    pub var_jy: f64,
    /// <Na + Nb>
    pub n_plus: f64,
    /// <Na − Nb>
    pub n_minus: f64,
    pub mean_na: f64,
    pub mean_nb: f64,
}

/// First moments and Kx/Ky variances of the SU(1,1) operators
/// Kx = (a†b† + ab)/2, Ky = (a†b† − ab)/2i, Kz = (a†a + b†b + 1)/2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SU11Moments {
    pub mean_kx: f64,
    pub mean_ky: f64,
    pub mean_kz: f64,
    pub var_kx: f64,
    pub var_ky: f64,
}

const W_ADAG_B: MomentWord = MomentWord::new(1, 0, 0, 1);
const W_A_BDAG: MomentWord = MomentWord::new(0, 1, 1, 0);
const W_A_B: MomentWord = MomentWord::new(0, 1, 0, 1);
const W_ADAG_BDAG: MomentWord = MomentWord::new(1, 0, 1, 0);
const W_NA: MomentWord = MomentWord::new(1, 1, 0, 0);
const W_NB: MomentWord = MomentWord::new(0, 0, 1, 1);
const W_NA_NB: MomentWord = MomentWord::new(1, 1, 1, 1);
const W_ADAG2_B2: MomentWord = MomentWord::new(2, 0, 0, 2);
const W_A2_BDAG2: MomentWord = MomentWord::new(0, 2, 2, 0);
const W_ADAG2_BDAG2: MomentWord = MomentWord::new(2, 0, 2, 0);
const W_A2_B2: MomentWord = MomentWord::new(0, 2, 0, 2);

/// Var = <X²> − <X>², clamping rounding-level negatives. The tolerance
/// scales with <X²> since the subtraction cancels at that magnitude.
pub(crate) fn variance(name: &'static str, second: f64, first: f64) -> Result<f64> {
    let v = second - first * first;
    let tol = 1e-12 * second.abs().max(1.0);
    if v >= 0.0 {
        Ok(v)
    } else if v > -tol {
        Ok(0.0)
    } else {
        Err(Error::NegativeVariance { name, value: v })
    }
}

pub fn su2_moments<S: FockState + ?Sized>(state: &S) -> Result<SU2Moments> {
    let w = state.moment_value(W_ADAG_B);
    let w_bar = state.moment_value(W_A_BDAG);
    let mean_na = state.moment_value(W_NA).re;
    let mean_nb = state.moment_value(W_NB).re;
    let na_nb = state.moment_value(W_NA_NB).re;
    let pair = state.moment_value(W_ADAG2_B2) + state.moment_value(W_A2_BDAG2);

    let mean_jx = ((w + w_bar) * 0.5).re;
    let mean_jy = ((w - w_bar) / Complex64::new(0.0, 2.0)).re;
    let jx2 = 0.25 * (pair.re + 2.0 * na_nb + mean_na + mean_nb);
    let jy2 = 0.25 * (-pair.re + 2.0 * na_nb + mean_na + mean_nb);

    Ok(SU2Moments {
        mean_jx,
        mean_jy,
        mean_jz: 0.5 * (mean_na - mean_nb),
        var_jx: variance("Jx", jx2, mean_jx)?,
        var_jy: variance("Jy", jy2, mean_jy)?,
        n_plus: mean_na + mean_nb,
        n_minus: mean_na - mean_nb,
        mean_na,
        mean_nb,
    })
}

pub fn su11_moments<S: FockState + ?Sized>(state: &S) -> Result<SU11Moments> {
    let z = state.moment_value(W_A_B);
    let z_bar = state.moment_value(W_ADAG_BDAG);
    let mean_na = state.moment_value(W_NA).re;
    let mean_nb = state.moment_value(W_NB).re;
    let na_nb = state.moment_value(W_NA_NB).re;
    let pair = state.moment_value(W_ADAG2_BDAG2) + state.moment_value(W_A2_B2);

    let mean_kx = ((z_bar + z) * 0.5).re;
    let mean_ky = ((z_bar - z) / Complex64::new(0.0, 2.0)).re;
    let kx2 = 0.25 * (pair.re + 2.0 * na_nb + mean_na + mean_nb + 1.0);
    let ky2 = 0.25 * (-pair.re + 2.0 * na_nb + mean_na + mean_nb + 1.0);

    Ok(SU11Moments {
        mean_kx,
        mean_ky,
        mean_kz: 0.5 * (mean_na + mean_nb + 1.0),
        var_kx: variance("Kx", kx2, mean_kx)?,
        var_ky: variance("Ky", ky2, mean_ky)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::FockIndex;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn bell_00_11() -> TwoModeState {
        TwoModeState::make_pure_state(
            [
                (FockIndex::new(0, 0), c(1.0)),
                (FockIndex::new(1, 1), c(1.0)),
            ],
            1,
            1,
        )
        .unwrap()
    }

    fn single_photon_bell() -> TwoModeState {
        TwoModeState::make_pure_state(
            [
                (FockIndex::new(1, 0), c(1.0)),
                (FockIndex::new(0, 1), c(1.0)),
            ],
            1,
            1,
        )
        .unwrap()
    }

    #[test]
    fn basic_moments() {
        let vac = TwoModeState::vacuum();
        assert_eq!(vac.moment_value(MomentWord::new(0, 1, 0, 0)), c(0.0));
        let one = TwoModeState::basis(2, 2, 1, 0).unwrap();
        assert!((one.moment_value(MomentWord::new(1, 1, 0, 0)) - c(1.0)).norm() < 1e-15);
        let ab = bell_00_11().moment_value(MomentWord::new(0, 1, 0, 1));
        assert!((ab - c(0.5)).norm() < 1e-15);
    }

    #[test]
    fn exceeding_word_is_flagged() {
        let one = TwoModeState::basis(1, 1, 1, 0).unwrap();
        let mo = one.moment(MomentWord::new(2, 2, 0, 0));
        assert!(mo.exceeds_cutoff);
        assert_eq!(mo.value, c(0.0));
    }

    #[test]
    fn su2_examples() {
        let m = su2_moments(&TwoModeState::basis(1, 1, 1, 0).unwrap()).unwrap();
        assert!((m.var_jx - 0.25).abs() < 1e-15 && (m.var_jy - 0.25).abs() < 1e-15);
        assert!((m.mean_jz - 0.5).abs() < 1e-15);

        let m = su2_moments(&single_photon_bell()).unwrap();
        assert!((m.mean_jx - 0.5).abs() < 1e-15);
        assert!(m.var_jx.abs() < 1e-15);
        assert!((m.var_jy - 0.25).abs() < 1e-15);

        let m = su2_moments(&TwoModeState::vacuum()).unwrap();
        for v in [
            m.mean_jx, m.mean_jy, m.mean_jz, m.var_jx, m.var_jy, m.n_plus,
        ] {
            assert_eq!(v, 0.0);
        }
    }

    #[test]
    fn su11_examples() {
        let k = su11_moments(&TwoModeState::vacuum()).unwrap();
        assert_eq!(k.mean_kz, 0.5);
        assert_eq!(k.var_kx, 0.25);
        assert_eq!(k.var_ky, 0.25);
        let k = su11_moments(&TwoModeState::basis(1, 1, 1, 0).unwrap()).unwrap();
        assert_eq!(k.mean_kz, 1.0);
        let k = su11_moments(&bell_00_11()).unwrap();
        assert!((k.mean_kx - 0.5).abs() < 1e-15);
    }

    #[test]
    fn pure_and_projector_agree() {
        let s = bell_00_11();
        let rho = DensityMatrix::from_pure(&s);
        for w in MomentWord::all_up_to(4) {
            assert!(
                (s.moment_value(w) - rho.moment_value(w)).norm() < 1e-14,
                "{w:?}"
            );
        }
    }

    #[test]
    fn variance_clamp_and_error() {
        assert_eq!(variance("x", 1.0, 1.0 + 1e-14).unwrap(), 0.0);
        assert!(matches!(
            variance("x", 0.0, 1e-3),
            Err(Error::NegativeVariance { .. })
        ));
    }

    #[test]
    fn word_enumeration_counts() {
        // compositions of d into four parts, summed over d = 0..=4
        assert_eq!(MomentWord::all_up_to(4).len(), 70);
    }
}
