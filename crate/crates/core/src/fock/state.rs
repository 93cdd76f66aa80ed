use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{basis_dim, MomentWord};
use crate::error::{Error, Result};

/// Photon numbers of modes a and b.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FockIndex {
    pub na: usize,
    pub nb: usize,
}

impl FockIndex {
    pub const fn new(na: usize, nb: usize) -> Self {
        Self { na, nb }
    }

    pub const fn total(self) -> usize {
        self.na + self.nb
    }
}

impl From<(usize, usize)> for FockIndex {
    fn from((na, nb): (usize, usize)) -> Self {
        Self { na, nb }
    }
}

/// Normalized pure state on a truncated two-mode Fock basis.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeState {
    cutoff_a: usize,
    cutoff_b: usize,
    amplitudes: Vec<Complex64>,
    input_norm: f64,
}

/// Result of applying an operator word to a ket inside the truncated basis.
#[derive(Debug, Clone)]
pub struct KetImage {
    pub amplitudes: Vec<Complex64>,
    /// Squared norm that left the basis through a raising operator.
    pub truncation_loss: f64,
}

impl KetImage {
    /// Truncation loss above 1e-10 of the retained norm.
    pub fn truncation_warning(&self) -> bool {
        let kept: f64 = self.amplitudes.iter().map(|z| z.norm_sqr()).sum();
        self.truncation_loss > 1e-10 * kept.max(f64::MIN_POSITIVE)
    }
}

impl TwoModeState {
    /// Builds a normalized state from sparse amplitudes. Duplicate indices are
    /// rejected.
    pub fn make_pure_state<I>(raw: I, cutoff_a: usize, cutoff_b: usize) -> Result<Self>
    where
        I: IntoIterator<Item = (FockIndex, Complex64)>,
    {
        let dim = basis_dim(cutoff_a, cutoff_b);
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        let mut seen = vec![false; dim];
        for (idx, amp) in raw {
            if idx.na > cutoff_a || idx.nb > cutoff_b {
                return Err(Error::OutOfBasis {
                    na: idx.na,
                    nb: idx.nb,
                    cutoff_a,
                    cutoff_b,
                });
            }
            let i = idx.na * (cutoff_b + 1) + idx.nb;
            if seen[i] {
                return Err(Error::DuplicateIndex {
                    na: idx.na,
                    nb: idx.nb,
                });
            }
            seen[i] = true;
            amplitudes[i] = amp;
        }
        Self::from_amplitudes(cutoff_a, cutoff_b, amplitudes)
    }

    /// Builds a normalized state from a dense amplitude vector in basis order.
    pub fn from_amplitudes(
        cutoff_a: usize,
        cutoff_b: usize,
        mut amplitudes: Vec<Complex64>,
    ) -> Result<Self> {
        if amplitudes.len() != basis_dim(cutoff_a, cutoff_b) {
            return Err(Error::Parameter(format!(
                "amplitude vector has length {}, basis has {}",
                amplitudes.len(),
                basis_dim(cutoff_a, cutoff_b)
            )));
        }
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::Parameter("non-finite amplitude".into()));
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::NullState);
        }
        for z in &mut amplitudes {
            *z /= norm;
        }
        Ok(Self {
            cutoff_a,
            cutoff_b,
            amplitudes,
            input_norm: norm,
        })
    }

    /// The basis vector |na, nb>.
    pub fn basis(cutoff_a: usize, cutoff_b: usize, na: usize, nb: usize) -> Result<Self> {
        Self::make_pure_state(
            [(FockIndex::new(na, nb), Complex64::new(1.0, 0.0))],
            cutoff_a,
            cutoff_b,
        )
    }

    pub fn vacuum() -> Self {
        Self::basis(0, 0, 0, 0).expect("vacuum is in every basis")
    }

    pub fn cutoff_a(&self) -> usize {
        self.cutoff_a
    }

    pub fn cutoff_b(&self) -> usize {
        self.cutoff_b
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// Norm of the amplitudes passed to the constructor.
    pub fn input_norm(&self) -> f64 {
        self.input_norm
    }

    #[inline]
    pub fn index_of(&self, na: usize, nb: usize) -> usize {
        na * (self.cutoff_b + 1) + nb
    }

    #[inline]
    pub fn fock_index(&self, i: usize) -> FockIndex {
        FockIndex::new(i / (self.cutoff_b + 1), i % (self.cutoff_b + 1))
    }

    /// Amplitude of |na, nb>; zero beyond the cutoffs.
    pub fn amplitude(&self, na: usize, nb: usize) -> Complex64 {
        if na > self.cutoff_a || nb > self.cutoff_b {
            Complex64::new(0.0, 0.0)
        } else {
            self.amplitudes[self.index_of(na, nb)]
        }
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Nonzero amplitudes in basis order.
    pub fn iter_nonzero(&self) -> impl Iterator<Item = (FockIndex, Complex64)> + '_ {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(_, z)| **z != Complex64::new(0.0, 0.0))
            .map(|(i, z)| (self.fock_index(i), *z))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    /// <self|other>. Both states must share cutoffs.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.same_cutoffs(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(x, y)| x.conj() * y)
            .sum())
    }

    pub(crate) fn same_cutoffs(&self, other: &Self) -> Result<()> {
        if self.cutoff_a != other.cutoff_a || self.cutoff_b != other.cutoff_b {
            return Err(Error::CutoffMismatch(
                self.cutoff_a,
                self.cutoff_b,
                other.cutoff_a,
                other.cutoff_b,
            ));
        }
        Ok(())
    }

    /// Largest na + nb carrying a nonzero amplitude.
    pub fn max_total_photons(&self) -> usize {
        self.iter_nonzero()
            .map(|(i, _)| i.total())
            .max()
            .unwrap_or(0)
    }

    /// Same state on larger cutoffs.
    pub fn embed(&self, cutoff_a: usize, cutoff_b: usize) -> Result<Self> {
        if cutoff_a < self.cutoff_a || cutoff_b < self.cutoff_b {
            // shrinking is allowed only when nothing is cut off
            if let Some((i, _)) = self
                .iter_nonzero()
                .find(|(i, _)| i.na > cutoff_a || i.nb > cutoff_b)
            {
                return Err(Error::OutOfBasis {
                    na: i.na,
                    nb: i.nb,
                    cutoff_a,
                    cutoff_b,
                });
            }
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); basis_dim(cutoff_a, cutoff_b)];
        for (i, z) in self.iter_nonzero() {
            amplitudes[i.na * (cutoff_b + 1) + i.nb] = z;
        }
        Ok(Self {
            cutoff_a,
            cutoff_b,
            amplitudes,
            input_norm: self.input_norm,
        })
    }

    /// e^{-i φ b†b}|ψ>.
    pub fn phase_shift_b(&self, phi: f64) -> Self {
        let mut out = self.clone();
        for (i, z) in out.amplitudes.iter_mut().enumerate() {
            let nb = i % (self.cutoff_b + 1);
            *z *= Complex64::from_polar(1.0, -phi * nb as f64);
        }
        out
    }

    /// Exchanges the roles of modes a and b.
    pub fn swap_modes(&self) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); self.dim()];
        for (i, z) in self.amplitudes.iter().enumerate() {
            let FockIndex { na, nb } = self.fock_index(i);
            amplitudes[nb * (self.cutoff_a + 1) + na] = *z;
        }
        Self {
            cutoff_a: self.cutoff_b,
            cutoff_b: self.cutoff_a,
            amplitudes,
            input_norm: self.input_norm,
        }
    }

    /// Applies a†^m a^n b†^p b^q to the ket, dropping (and accounting for)
    /// any component raised beyond the cutoffs.
    pub fn apply_word(&self, word: MomentWord) -> KetImage {
        let MomentWord { m, n, p, q } = word;
        let (ca, cb) = (self.cutoff_a, self.cutoff_b);
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim()];
        let mut loss = 0.0;
        for (i, z) in self.amplitudes.iter().enumerate() {
            if *z == Complex64::new(0.0, 0.0) {
                continue;
            }
            let FockIndex { na, nb } = self.fock_index(i);
            if na < n || nb < q {
                continue;
            }
            let (la, lb) = (na - n, nb - q);
            let factor = super::lowering_factor(la, n)
                * super::lowering_factor(lb, q)
                * super::lowering_factor(la, m)
                * super::lowering_factor(lb, p);
            let (ra, rb) = (la + m, lb + p);
            let image = *z * factor;
            if ra > ca || rb > cb {
                loss += image.norm_sqr();
            } else {
                out[ra * (cb + 1) + rb] += image;
            }
        }
        KetImage {
            amplitudes: out,
            truncation_loss: loss,
        }
    }
}
