//! Brute-force operator algebra on explicit matrices.
//!
//! This path shares no code with the moment evaluators: it builds the
//! truncated ladder matrices, multiplies them out and takes Tr(ρ O). To keep
//! truncation out of the products, ρ is first zero-padded by the polynomial
//! degree in each mode.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{basis_dim, DensityMatrix, MomentWord, TwoModeState};
use crate::error::{Error, Result};

/// Largest basis the oracle will build matrices for.
pub const MAX_DENSE_DIM: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ladder {
    A,
    ADag,
    B,
    BDag,
}

/// Linear combination of operator products. Each product is applied
/// right-to-left as written.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OperatorPoly {
    terms: Vec<(Complex64, Vec<Ladder>)>,
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

impl OperatorPoly {
    pub fn identity() -> Self {
        Self {
            terms: vec![(re(1.0), Vec::new())],
        }
    }

    pub fn ladder(l: Ladder) -> Self {
        Self {
            terms: vec![(re(1.0), vec![l])],
        }
    }

    /// a†^m a^n b†^p b^q as a literal product.
    pub fn word(w: MomentWord) -> Self {
        let mut ops = Vec::with_capacity(w.degree());
        ops.extend(std::iter::repeat_n(Ladder::ADag, w.m));
        ops.extend(std::iter::repeat_n(Ladder::A, w.n));
        ops.extend(std::iter::repeat_n(Ladder::BDag, w.p));
        ops.extend(std::iter::repeat_n(Ladder::B, w.q));
        Self {
            terms: vec![(re(1.0), ops)],
        }
    }

    pub fn terms(&self) -> &[(Complex64, Vec<Ladder>)] {
        &self.terms
    }

    pub fn degree(&self) -> usize {
        self.terms.iter().map(|(_, t)| t.len()).max().unwrap_or(0)
    }

    pub fn scale(mut self, c: Complex64) -> Self {
        for (k, _) in &mut self.terms {
            *k *= c;
        }
        self
    }

    pub fn add(mut self, other: &Self) -> Self {
        self.terms.extend(other.terms.iter().cloned());
        self
    }

    pub fn sub(self, other: &Self) -> Self {
        self.add(&other.clone().scale(re(-1.0)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (c1, t1) in &self.terms {
            for (c2, t2) in &other.terms {
                let mut t = t1.clone();
                t.extend_from_slice(t2);
                terms.push((c1 * c2, t));
            }
        }
        Self { terms }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    fn bilinear(x: Ladder, y: Ladder) -> Self {
        Self::ladder(x).mul(&Self::ladder(y))
    }

    pub fn na() -> Self {
        Self::bilinear(Ladder::ADag, Ladder::A)
    }

    pub fn nb() -> Self {
        Self::bilinear(Ladder::BDag, Ladder::B)
    }

    pub fn jx() -> Self {
        Self::bilinear(Ladder::ADag, Ladder::B)
            .add(&Self::bilinear(Ladder::A, Ladder::BDag))
            .scale(re(0.5))
    }

    pub fn jy() -> Self {
        Self::bilinear(Ladder::ADag, Ladder::B)
            .sub(&Self::bilinear(Ladder::A, Ladder::BDag))
            .scale(Complex64::new(0.0, -0.5))
    }

    pub fn jz() -> Self {
        Self::na().sub(&Self::nb()).scale(re(0.5))
    }

    pub fn kx() -> Self {
        Self::bilinear(Ladder::ADag, Ladder::BDag)
            .add(&Self::bilinear(Ladder::A, Ladder::B))
            .scale(re(0.5))
    }

    pub fn ky() -> Self {
        Self::bilinear(Ladder::ADag, Ladder::BDag)
            .sub(&Self::bilinear(Ladder::A, Ladder::B))
            .scale(Complex64::new(0.0, -0.5))
    }

    pub fn kz() -> Self {
        Self::na()
            .add(&Self::nb())
            .add(&Self::identity())
            .scale(re(0.5))
    }
}

/// Explicit truncated ladder matrices.
#[derive(Debug, Clone)]
pub struct DenseOperators {
    pub cutoff_a: usize,
    pub cutoff_b: usize,
    pub a: DMatrix<Complex64>,
    pub a_dag: DMatrix<Complex64>,
    pub b: DMatrix<Complex64>,
    pub b_dag: DMatrix<Complex64>,
}

impl DenseOperators {
    pub fn new(cutoff_a: usize, cutoff_b: usize) -> Result<Self> {
        let dim = basis_dim(cutoff_a, cutoff_b);
        if dim > MAX_DENSE_DIM {
            return Err(Error::DimensionOverflow {
                dim,
                max: MAX_DENSE_DIM,
            });
        }
        let idx = |na: usize, nb: usize| na * (cutoff_b + 1) + nb;
        let mut a = DMatrix::zeros(dim, dim);
        let mut b = DMatrix::zeros(dim, dim);
        for na in 0..=cutoff_a {
            for nb in 0..=cutoff_b {
                if na > 0 {
                    a[(idx(na - 1, nb), idx(na, nb))] = re((na as f64).sqrt());
                }
                if nb > 0 {
                    b[(idx(na, nb - 1), idx(na, nb))] = re((nb as f64).sqrt());
                }
            }
        }
        Ok(Self {
            cutoff_a,
            cutoff_b,
            a_dag: a.adjoint(),
            b_dag: b.adjoint(),
            a,
            b,
        })
    }

    pub fn dim(&self) -> usize {
        self.a.nrows()
    }

    pub fn ladder(&self, l: Ladder) -> &DMatrix<Complex64> {
        match l {
            Ladder::A => &self.a,
            Ladder::ADag => &self.a_dag,
            Ladder::B => &self.b,
            Ladder::BDag => &self.b_dag,
        }
    }

    pub fn matrix(&self, poly: &OperatorPoly) -> DMatrix<Complex64> {
        let dim = self.dim();
        let mut out = DMatrix::zeros(dim, dim);
        for (c, ops) in poly.terms() {
            let mut prod = DMatrix::<Complex64>::identity(dim, dim);
            for l in ops {
                prod *= self.ladder(*l);
            }
            out += prod * *c;
        }
        out
    }
}

/// Tr(ρ O) by explicit matrix products on a padded basis.
pub fn dense_oracle(poly: &OperatorPoly, rho: &DensityMatrix) -> Result<Complex64> {
    let pad = poly.degree();
    let (ca, cb) = (rho.cutoff_a() + pad, rho.cutoff_b() + pad);
    let dim = basis_dim(ca, cb);
    if dim > MAX_DENSE_DIM {
        return Err(Error::DimensionOverflow {
            dim,
            max: MAX_DENSE_DIM,
        });
    }
    let ops = DenseOperators::new(ca, cb)?;
    let padded = rho.embed(ca, cb)?;
    Ok((padded.entries() * ops.matrix(poly)).trace())
}

/// <ψ|O|ψ> through [`dense_oracle`].
pub fn dense_oracle_pure(poly: &OperatorPoly, state: &TwoModeState) -> Result<Complex64> {
    dense_oracle(poly, &DensityMatrix::from_pure(state))
}
