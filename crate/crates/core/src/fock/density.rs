use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{basis_dim, FockIndex, TwoModeState};
use crate::error::{Error, Result};

/// Hermitian, unit-trace matrix over the truncated two-mode basis.
///
/// Positivity is not enforced: partial transposes of entangled states are
/// represented by the same type.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    cutoff_a: usize,
    cutoff_b: usize,
    entries: DMatrix<Complex64>,
    adjustment: f64,
}

impl DensityMatrix {
    /// Symmetrizes to (ρ + ρ†)/2 and rescales to unit trace. The largest
    /// entry change is kept in [`adjustment`](Self::adjustment).
    pub fn new(cutoff_a: usize, cutoff_b: usize, entries: DMatrix<Complex64>) -> Result<Self> {
        let dim = basis_dim(cutoff_a, cutoff_b);
        if entries.nrows() != dim || entries.ncols() != dim {
            return Err(Error::Parameter(format!(
                "matrix is {}x{}, basis has {dim} states",
                entries.nrows(),
                entries.ncols()
            )));
        }
        let herm = (&entries + entries.adjoint()) * Complex64::new(0.5, 0.0);
        let trace = herm.trace().re;
        if !trace.is_finite() || trace <= 0.0 {
            return Err(Error::NullState);
        }
        let fixed = herm / Complex64::new(trace, 0.0);
        let adjustment = (&fixed - &entries)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        Ok(Self {
            cutoff_a,
            cutoff_b,
            entries: fixed,
            adjustment,
        })
    }

    /// |ψ><ψ|.
    pub fn from_pure(state: &TwoModeState) -> Self {
        let v = nalgebra::DVector::from_column_slice(state.amplitudes());
        Self {
            cutoff_a: state.cutoff_a(),
            cutoff_b: state.cutoff_b(),
            entries: &v * v.adjoint(),
            adjustment: 0.0,
        }
    }

    /// Wraps a matrix that is Hermitian with unit trace by construction
    /// (e.g. an index permutation of one that is).
    pub(crate) fn from_exact(
        cutoff_a: usize,
        cutoff_b: usize,
        entries: DMatrix<Complex64>,
    ) -> Self {
        Self {
            cutoff_a,
            cutoff_b,
            entries,
            adjustment: 0.0,
        }
    }

    pub fn cutoff_a(&self) -> usize {
        self.cutoff_a
    }

    pub fn cutoff_b(&self) -> usize {
        self.cutoff_b
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    /// Largest entry change applied by [`new`](Self::new).
    pub fn adjustment(&self) -> f64 {
        self.adjustment
    }

    #[inline]
    pub fn index_of(&self, i: FockIndex) -> usize {
        i.na * (self.cutoff_b + 1) + i.nb
    }

    #[inline]
    pub fn fock_index(&self, i: usize) -> FockIndex {
        FockIndex::new(i / (self.cutoff_b + 1), i % (self.cutoff_b + 1))
    }

    pub fn get(&self, row: FockIndex, col: FockIndex) -> Complex64 {
        self.entries[(self.index_of(row), self.index_of(col))]
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }

    /// max |ρ − ρ†|
    pub fn hermiticity_error(&self) -> f64 {
        (&self.entries - self.entries.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self
            .entries
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    pub fn swap_modes(&self) -> Self {
        let (ca, cb) = (self.cutoff_a, self.cutoff_b);
        let dim = self.dim();
        let perm: Vec<usize> = (0..dim)
            .map(|i| {
                let FockIndex { na, nb } = self.fock_index(i);
                nb * (ca + 1) + na
            })
            .collect();
        let mut out = DMatrix::zeros(dim, dim);
        for r in 0..dim {
            for c in 0..dim {
                out[(perm[r], perm[c])] = self.entries[(r, c)];
            }
        }
        Self::from_exact(cb, ca, out)
    }

    /// Same operator on larger cutoffs, zero-padded.
    pub fn embed(&self, cutoff_a: usize, cutoff_b: usize) -> Result<Self> {
        if cutoff_a < self.cutoff_a || cutoff_b < self.cutoff_b {
            return Err(Error::Parameter("embed cannot shrink cutoffs".into()));
        }
        let dim = basis_dim(cutoff_a, cutoff_b);
        let map = |i: usize| {
            let f = self.fock_index(i);
            f.na * (cutoff_b + 1) + f.nb
        };
        let mut out = DMatrix::zeros(dim, dim);
        for r in 0..self.dim() {
            for c in 0..self.dim() {
                out[(map(r), map(c))] = self.entries[(r, c)];
            }
        }
        Ok(Self::from_exact(cutoff_a, cutoff_b, out))
    }
}

/// ρ = Σ wᵢ |ψᵢ><ψᵢ|.
pub fn mix(states: &[TwoModeState], weights: &[f64]) -> Result<DensityMatrix> {
    if states.is_empty() {
        return Err(Error::InvalidWeights("empty mixture".into()));
    }
    if states.len() != weights.len() {
        return Err(Error::InvalidWeights(format!(
            "{} states but {} weights",
            states.len(),
            weights.len()
        )));
    }
    if let Some(w) = weights.iter().find(|w| !(**w >= 0.0)) {
        return Err(Error::InvalidWeights(format!("negative weight {w}")));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidWeights(format!("weights sum to {total}")));
    }
    let first = &states[0];
    if states.len() == 1 {
        return Ok(DensityMatrix::from_pure(first));
    }
    let dim = first.dim();
    let mut rho = DMatrix::<Complex64>::zeros(dim, dim);
    for (s, &w) in states.iter().zip(weights) {
        first.same_cutoffs(s)?;
        let v = nalgebra::DVector::from_column_slice(s.amplitudes());
        rho += (&v * v.adjoint()) * Complex64::new(w, 0.0);
    }
    DensityMatrix::new(first.cutoff_a(), first.cutoff_b(), rho)
}
