//! Passive linear two-mode transforms on Fock states.
//!
//! A transform is given by the images of the creation operators,
//! a† ↦ u₀₀ a† + u₀₁ b† and b† ↦ u₁₀ a† + u₁₁ b†. The Fock-space unitary is
//! exp(i Σ G_jk a_j† a_k) with e^{iG} = uᵀ. On the n-photon manifold the
//! exponent is a tridiagonal Hermitian matrix, exponentiated through its
//! eigen-decomposition; the block stays unitary to rounding at any n.
//! Eigenvectors depend only on the direction of the traceless part of G and
//! are cached per thread.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use nalgebra::{DMatrix, DVector, Matrix2};
use num_complex::Complex64;

use crate::error::Result;
use crate::fock::TwoModeState;

/// Images of a† and b† under a linear mode transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeMap(pub [[Complex64; 2]; 2]);

/// Mixing angle and phase of S(z) = exp(z a b† − z* a† b), z = r e^{iφ_z}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSplitterParams {
    pub r: f64,
    pub phi_z: f64,
}

impl BeamSplitterParams {
    pub const fn new(r: f64, phi_z: f64) -> Self {
        Self { r, phi_z }
    }
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

impl ModeMap {
    /// S(z) a† S(z)† = a† cos r + b† e^{iφ_z} sin r,
    /// S(z) b† S(z)† = b† cos r − a† e^{−iφ_z} sin r.
    pub fn beam_splitter(p: BeamSplitterParams) -> Self {
        let (s, c) = p.r.sin_cos();
        let e = Complex64::from_polar(1.0, p.phi_z);
        Self([
            [Complex64::new(c, 0.0), e * s],
            [-e.conj() * s, Complex64::new(c, 0.0)],
        ])
    }

    /// Phase shifter e^{−iφ b†b} on mode b followed by the 50:50 splitter
    /// with outputs c = (a + b e^{−iφ})/√2, d = (−a + b e^{−iφ})/√2, returned
    /// in the (c, d) ↦ (a, b) slots.
    pub fn phase_then_balanced(phi: f64) -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let e = Complex64::from_polar(h, -phi);
        Self([[Complex64::new(h, 0.0), Complex64::new(-h, 0.0)], [e, e]])
    }

    /// e^{iα}(cos θ + i sin θ n̂·σ) = uᵀ, returned as (α, θ, n̂·σ).
    /// The map must be unitary.
    fn generator(&self) -> (f64, f64, Matrix2<Complex64>) {
        let [[a, b], [c, d]] = self.0;
        let m = Matrix2::new(a, c, b, d);
        let alpha = 0.5 * (a * d - b * c).arg();
        let m0 = m * Complex64::from_polar(1.0, -alpha);
        let cos_t = 0.5 * (m0[(0, 0)] + m0[(1, 1)]).re;
        let sin_n = (m0 - m0.adjoint()) * Complex64::new(0.0, -0.5);
        let sin_t = (0.5 * sin_n.iter().map(|z| z.norm_sqr()).sum::<f64>()).sqrt();
        if sin_t > 1e-300 {
            (
                alpha,
                sin_t.atan2(cos_t),
                sin_n / Complex64::new(sin_t, 0.0),
            )
        } else {
            let sz = Matrix2::new(ONE, ZERO, ZERO, -ONE);
            (
                alpha,
                if cos_t > 0.0 {
                    0.0
                } else {
                    std::f64::consts::PI
                },
                sz,
            )
        }
    }
}

/// Eigenvectors of n̂·σ lifted to the n-photon manifold, with the integer
/// eigenvalues 2k − n they belong to.
type Lifted = Rc<(DMatrix<Complex64>, Vec<f64>)>;

thread_local! {
    static LIFTED: RefCell<HashMap<(usize, [u64; 8]), Lifted>> = RefCell::new(HashMap::new());
}

const CACHE_LIMIT: usize = 512;

fn lifted(direction: &Matrix2<Complex64>, n: usize) -> Lifted {
    let mut key = [0u64; 8];
    for (i, z) in direction.iter().enumerate() {
        key[2 * i] = z.re.to_bits();
        key[2 * i + 1] = z.im.to_bits();
    }
    LIFTED.with(|cache| {
        if let Some(hit) = cache.borrow().get(&(n, key)) {
            return hit.clone();
        }
        let mut h = DMatrix::from_element(n + 1, n + 1, ZERO);
        for k in 0..=n {
            h[(k, k)] = direction[(0, 0)] * k as f64 + direction[(1, 1)] * (n - k) as f64;
            if k < n {
                // a†b |k, n−k> = √((k+1)(n−k)) |k+1, n−k−1>
                let w = (((k + 1) * (n - k)) as f64).sqrt();
                h[(k + 1, k)] = direction[(0, 1)] * w;
                h[(k, k + 1)] = direction[(1, 0)] * w;
            }
        }
        let eig = h.symmetric_eigen();
        let spectrum = eig.eigenvalues.iter().map(|mu| mu.round()).collect();
        let entry = Rc::new((eig.eigenvectors, spectrum));
        let mut cache = cache.borrow_mut();
        if cache.len() >= CACHE_LIMIT {
            cache.clear();
        }
        cache.insert((n, key), entry.clone());
        entry
    })
}

/// (eigenvectors, phases) of the transform on the n-photon manifold.
fn manifold_factors(map: &ModeMap, n: usize) -> (Lifted, Vec<Complex64>) {
    let (alpha, theta, direction) = map.generator();
    let basis = lifted(&direction, n);
    let phases = basis
        .1
        .iter()
        .map(|mu| Complex64::from_polar(1.0, alpha * n as f64 + theta * mu))
        .collect();
    (basis, phases)
}

/// The transform on the n-photon manifold; column k is the image of
/// |k, n−k>, row j the amplitude on |j, n−j>.
pub fn manifold_block(map: &ModeMap, n: usize) -> DMatrix<Complex64> {
    let (basis, phases) = manifold_factors(map, n);
    let v = &basis.0;
    let block = v * DMatrix::from_diagonal(&DVector::from_vec(phases)) * v.adjoint();
    if map.0.iter().flatten().all(|z| z.im == 0.0) {
        // a real map has a real block; drop the rounding residue
        block.map(|z| Complex64::new(z.re, 0.0))
    } else {
        block
    }
}

/// Image of |p, q> as amplitudes over |k, p+q−k>, k = 0..=p+q.
pub fn transform_basis_vector(map: &ModeMap, p: usize, q: usize) -> Vec<Complex64> {
    manifold_block(map, p + q)
        .column(p)
        .iter()
        .copied()
        .collect()
}

/// Applies `map` to every basis component. The output uses cutoff T in both
/// modes, T being the larger of the input cutoffs and the highest occupied
/// photon-number manifold, so no amplitude is lost.
pub fn transform(state: &TwoModeState, map: &ModeMap) -> Result<TwoModeState> {
    let t = state
        .max_total_photons()
        .max(state.cutoff_a())
        .max(state.cutoff_b());
    let real_map = map.0.iter().flatten().all(|z| z.im == 0.0);
    let mut out = vec![ZERO; (t + 1) * (t + 1)];
    for n in 0..=state.max_total_photons() {
        let psi = DVector::from_iterator(n + 1, (0..=n).map(|k| state.amplitude(k, n - k)));
        if psi.iter().all(|z| *z == ZERO) {
            continue;
        }
        let image = if real_map {
            manifold_block(map, n) * psi
        } else {
            let (basis, phases) = manifold_factors(map, n);
            let v = &basis.0;
            let mut coords = v.adjoint() * psi;
            for (c, p) in coords.iter_mut().zip(&phases) {
                *c *= p;
            }
            v * coords
        };
        for (j, z) in image.iter().enumerate() {
            out[j * (t + 1) + (n - j)] = *z;
        }
    }
    TwoModeState::from_amplitudes(t, t, out)
}

/// S(z)|ψ>.
pub fn beam_splitter(state: &TwoModeState, params: BeamSplitterParams) -> Result<TwoModeState> {
    transform(state, &ModeMap::beam_splitter(params))
}
