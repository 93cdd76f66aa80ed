//! SU(2) minimum-uncertainty states |Ψ>_{N,m} of squeezing λ.
//!
//! They solve [(1−λ) a b† + (1+λ) a† b]|Ψ> = 2β|Ψ>. In the frame rotated by
//! the beam splitter S(z) with tan r = √((1−λ)/(1+λ)), φ_z = 0, the problem
//! becomes [√(1−λ²)(Na − Nb) + 2λ a†b]|Ψ'> = 2β|Ψ'>, whose solutions on the
//! N-photon manifold are truncated at p = m:
//!
//! |Ψ'>_{N,m} ∝ Σ_{p≥m} C_p |p, N−p>,
//! C_p = Λ^{p−m}/(p−m)! · √(p!(N−m)!/(m!(N−p)!)),  Λ = −λ/√(1−λ²),
//!
//! with 2β = √(1−λ²)(2m − N).

mod critical;

pub use crate::optics::{beam_splitter, BeamSplitterParams};
pub use critical::{critical_equation_residual, lambda_c, q_along_lambda, CriticalSqueezing};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{MomentWord, TwoModeState};
use crate::special::{ln_factorials, CompensatedSum};

/// Labels of a minimum-uncertainty state: total photon number N,
/// truncation index m and squeezing λ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinUncertaintySpec {
    total_n: usize,
    truncation_m: usize,
    lambda: f64,
}

impl MinUncertaintySpec {
    /// Accepts 0 ≤ λ < 1 (Jx-squeezed) and λ > 1 (Jy-squeezed, reached through
    /// a π/2 phase on mode b). λ = 1 is rejected.
    pub fn new(total_n: usize, truncation_m: usize, lambda: f64) -> Result<Self> {
        if total_n == 0 {
            return Err(Error::Parameter(
                "total photon number N must be at least 1".into(),
            ));
        }
        if truncation_m > total_n {
            return Err(Error::Parameter(format!(
                "truncation index m = {truncation_m} exceeds N = {total_n}"
            )));
        }
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(Error::Parameter(format!(
                "squeezing lambda must be >= 0, got {lambda}"
            )));
        }
        if lambda == 1.0 {
            return Err(Error::Unsqueezed);
        }
        Ok(Self {
            total_n,
            truncation_m,
            lambda,
        })
    }

    pub fn total_n(&self) -> usize {
        self.total_n
    }

    pub fn truncation_m(&self) -> usize {
        self.truncation_m
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    fn require_jx_squeezed(&self) -> Result<()> {
        if self.lambda > 1.0 {
            return Err(Error::Parameter(format!(
                "lambda = {} > 1; use the Jy-squeezed mapping",
                self.lambda
            )));
        }
        Ok(())
    }

    /// Λ = −λ/√(1−λ²).
    pub fn big_lambda(&self) -> f64 {
        -self.lambda / (1.0 - self.lambda * self.lambda).sqrt()
    }

    /// 2β = √(1−λ²)(2m − N).
    pub fn two_beta(&self) -> f64 {
        (1.0 - self.lambda * self.lambda).sqrt()
            * (2.0 * self.truncation_m as f64 - self.total_n as f64)
    }
}

/// Beam-splitter frame that diagonalizes the generator: tan r = √((1−λ)/(1+λ)).
pub fn generator_frame(lambda: f64) -> BeamSplitterParams {
    BeamSplitterParams::new(((1.0 - lambda) / (1.0 + lambda)).sqrt().atan(), 0.0)
}

/// C_p for p ∈ [m, N] in log-magnitude and sign form.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector {
    pub total_n: usize,
    pub truncation_m: usize,
    /// ln|C_p|, index 0 is p = m. `-inf` marks an exact zero.
    pub log_magnitudes: Vec<f64>,
    pub signs: Vec<i8>,
    /// Σ|C_p|², equal to ₂F₁(m+1, m−N; 1; −Λ²).
    pub norm_sq: f64,
    pub log_norm_sq: f64,
}

impl CoefficientVector {
    /// Unit-norm real coefficients indexed by p − m.
    pub fn normalized(&self) -> Vec<f64> {
        let max = self
            .log_magnitudes
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max);
        let scaled: Vec<f64> = self
            .log_magnitudes
            .iter()
            .zip(&self.signs)
            .map(|(l, s)| f64::from(*s) * (l - max).exp())
            .collect();
        let norm = scaled
            .iter()
            .map(|x| x * x)
            .collect::<CompensatedSum>()
            .value()
            .sqrt();
        scaled.into_iter().map(|x| x / norm).collect()
    }

    /// One `p sign log|C_p|` row per coefficient.
    pub fn debug_dump(&self) -> String {
        let mut out = format!(
            "# N={} m={} norm_sq={:e}\n# p sign log_magnitude\n",
            self.total_n, self.truncation_m, self.norm_sq
        );
        for (k, (l, s)) in self.log_magnitudes.iter().zip(&self.signs).enumerate() {
            let sign = if *s < 0 { '-' } else { '+' };
            out.push_str(&format!("{} {} {:.17e}\n", self.truncation_m + k, sign, l));
        }
        out
    }
}

pub fn coefficients(spec: &MinUncertaintySpec) -> Result<CoefficientVector> {
    spec.require_jx_squeezed()?;
    let (n, m) = (spec.total_n, spec.truncation_m);
    let big = spec.big_lambda();
    let ln_big = big.abs().ln();
    let lf = ln_factorials(n);
    let mut log_magnitudes = Vec::with_capacity(n - m + 1);
    let mut signs = Vec::with_capacity(n - m + 1);
    for p in m..=n {
        let k = p - m;
        let radial = 0.5 * (lf[p] + lf[n - m] - lf[m] - lf[n - p]);
        let l = if k == 0 {
            radial
        } else if big == 0.0 {
            f64::NEG_INFINITY
        } else {
            k as f64 * ln_big - lf[k] + radial
        };
        log_magnitudes.push(l);
        signs.push(if big < 0.0 && k % 2 == 1 { -1 } else { 1 });
    }
    let max = log_magnitudes
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let scaled: CompensatedSum = log_magnitudes
        .iter()
        .map(|l| (2.0 * (l - max)).exp())
        .collect();
    let log_norm_sq = 2.0 * max + scaled.value().ln();
    Ok(CoefficientVector {
        total_n: n,
        truncation_m: m,
        log_magnitudes,
        signs,
        norm_sq: log_norm_sq.exp(),
        log_norm_sq,
    })
}

/// |Ψ'>_{N,m} on cutoff N in both modes.
pub fn transformed_state(spec: &MinUncertaintySpec) -> Result<TwoModeState> {
    let coeffs = coefficients(spec)?;
    let n = spec.total_n;
    let mut amps = vec![Complex64::new(0.0, 0.0); (n + 1) * (n + 1)];
    for (k, c) in coeffs.normalized().into_iter().enumerate() {
        let p = spec.truncation_m + k;
        amps[p * (n + 1) + (n - p)] = Complex64::new(c, 0.0);
    }
    TwoModeState::from_amplitudes(n, n, amps)
}

/// |Ψ>_{N,m} = S(z)|Ψ'>_{N,m}, or the Jy-squeezed image for λ > 1.
pub fn min_uncertainty_state(spec: &MinUncertaintySpec) -> Result<TwoModeState> {
    if spec.lambda > 1.0 {
        return jy_squeezed(spec.total_n, spec.truncation_m, spec.lambda);
    }
    beam_splitter(&transformed_state(spec)?, generator_frame(spec.lambda))
}

/// e^{−i(π/2) b†b}|Ψ>_{N,m,1/λ} for λ > 1; Jx and Jy variances trade places.
pub fn jy_squeezed(total_n: usize, truncation_m: usize, lambda: f64) -> Result<TwoModeState> {
    if !(lambda > 1.0) || !lambda.is_finite() {
        return Err(Error::Parameter(format!(
            "Jy-squeezed states need lambda > 1, got {lambda}"
        )));
    }
    let inner = MinUncertaintySpec::new(total_n, truncation_m, 1.0 / lambda)?;
    Ok(min_uncertainty_state(&inner)?.phase_shift_b(std::f64::consts::FRAC_PI_2))
}

/// <N₋> = λ<N₋>_{Ψ'} − 2√(1−λ²)<Jx>_{Ψ'} from the coefficients alone.
pub fn n_minus(spec: &MinUncertaintySpec) -> Result<f64> {
    if spec.lambda > 1.0 {
        let inner = MinUncertaintySpec::new(spec.total_n, spec.truncation_m, 1.0 / spec.lambda)?;
        return n_minus(&inner);
    }
    let c = coefficients(spec)?.normalized();
    let (n, m) = (spec.total_n, spec.truncation_m);
    let mut diff = CompensatedSum::default();
    let mut jx = CompensatedSum::default();
    for (k, ck) in c.iter().enumerate() {
        let p = m + k;
        diff.add(ck * ck * (2.0 * p as f64 - n as f64));
        if k > 0 {
            // <a†b> picks C_p C_{p−1} √(p(N−p+1))
            jx.add(ck * c[k - 1] * ((p * (n - p + 1)) as f64).sqrt());
        }
    }
    let lam = spec.lambda;
    Ok(lam * diff.value() - 2.0 * (1.0 - lam * lam).sqrt() * jx.value())
}

/// ((ΔJx)², (ΔJy)²) = (λ<N₋>/4, <N₋>/(4λ)).
pub fn analytic_variances(spec: &MinUncertaintySpec) -> Result<(f64, f64)> {
    if spec.lambda == 0.0 {
        return Err(Error::Parameter(
            "lambda = 0: the variance relations divide by lambda; compute the moments of the state directly".into(),
        ));
    }
    let nm = n_minus(spec)?;
    if spec.lambda > 1.0 {
        let l = 1.0 / spec.lambda;
        return Ok((nm / (4.0 * l), l * nm / 4.0));
    }
    Ok((spec.lambda * nm / 4.0, nm / (4.0 * spec.lambda)))
}

fn residual(state: &TwoModeState, terms: &[(f64, MomentWord)], eigenvalue: f64) -> f64 {
    let mut acc: Vec<Complex64> = state.amplitudes().iter().map(|z| -z * eigenvalue).collect();
    let mut lost = 0.0;
    for (c, w) in terms {
        let img = state.apply_word(*w);
        lost += img.truncation_loss;
        for (a, z) in acc.iter_mut().zip(&img.amplitudes) {
            *a += z * *c;
        }
    }
    // anything pushed out of the basis counts fully against the residual
    (acc.iter().map(|z| z.norm_sqr()).sum::<f64>() + lost).sqrt()
}

/// ‖[(1−λ) a b† + (1+λ) a†b − 2β]|ψ>‖.
pub fn eigen_residual(state: &TwoModeState, lambda: f64, two_beta: f64) -> f64 {
    residual(
        state,
        &[
            (1.0 - lambda, MomentWord::new(0, 1, 1, 0)),
            (1.0 + lambda, MomentWord::new(1, 0, 0, 1)),
        ],
        two_beta,
    )
}

/// ‖[√(1−λ²)(Na − Nb) + 2λ a†b − 2β]|ψ'>‖.
pub fn transformed_eigen_residual(state: &TwoModeState, lambda: f64, two_beta: f64) -> f64 {
    let s = (1.0 - lambda * lambda).sqrt();
    residual(
        state,
        &[
            (s, MomentWord::new(1, 1, 0, 0)),
            (-s, MomentWord::new(0, 0, 1, 1)),
            (2.0 * lambda, MomentWord::new(1, 0, 0, 1)),
        ],
        two_beta,
    )
}
