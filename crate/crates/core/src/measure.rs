//! Monte Carlo model of the photon-counting measurement of Jx and Jy.
//!
//! Mode b passes a phase shifter e^{−iφ b†b}, then both modes meet on a
//! 50:50 beam splitter with outputs c = (a + b e^{−iφ})/√2 and
//! d = (−a + b e^{−iφ})/√2. The count difference n_c − n_d realizes 2Jx at
//! φ = 0 and 2Jy at φ = π/2, while n_c + n_d is the total photon number.
//! Detectors are ideal.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::TwoModeState;
use crate::optics::{transform, ModeMap};

pub const PHASE_JX: f64 = 0.0;
pub const PHASE_JY: f64 = std::f64::consts::FRAC_PI_2;
pub const DEFAULT_BOOTSTRAP_RESAMPLES: usize = 1000;

/// Joint photon-count distribution at the two output ports.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeDistribution {
    /// (n_c, n_d) with n_c + n_d ≤ total cutoff, in lexicographic order.
    pub outcomes: Vec<(usize, usize)>,
    pub probabilities: Vec<f64>,
}

impl OutcomeDistribution {
    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    /// Exact <f(n_c, n_d)>.
    pub fn expect<F: Fn(usize, usize) -> f64>(&self, f: F) -> f64 {
        self.outcomes
            .iter()
            .zip(&self.probabilities)
            .map(|(&(c, d), p)| p * f(c, d))
            .sum()
    }

    fn mixed(parts: &[(f64, OutcomeDistribution)]) -> Self {
        let t = parts
            .iter()
            .map(|(_, d)| d.outcomes.iter().map(|(c, e)| c + e).max().unwrap_or(0))
            .max()
            .unwrap_or(0);
        let outcomes = triangle(t);
        let mut probabilities = vec![0.0; outcomes.len()];
        for (w, d) in parts {
            for (o, p) in d.outcomes.iter().zip(&d.probabilities) {
                let k = outcomes.binary_search(o).expect("outcome within triangle");
                probabilities[k] += w * p;
            }
        }
        Self {
            outcomes,
            probabilities,
        }
    }
}

fn triangle(t: usize) -> Vec<(usize, usize)> {
    (0..=t)
        .flat_map(|c| (0..=t - c).map(move |d| (c, d)))
        .collect()
}

pub fn output_distribution(state: &TwoModeState, phi: f64) -> Result<OutcomeDistribution> {
    let out = transform(state, &ModeMap::phase_then_balanced(phi))?;
    let t = out.cutoff_a();
    let outcomes = triangle(t);
    let probabilities = outcomes
        .iter()
        .map(|&(c, d)| out.amplitude(c, d).norm_sqr())
        .collect();
    Ok(OutcomeDistribution {
        outcomes,
        probabilities,
    })
}

/// Distribution for the mixture Σ wᵢ |ψᵢ><ψᵢ|.
pub fn output_distribution_mixture(
    states: &[TwoModeState],
    weights: &[f64],
    phi: f64,
) -> Result<OutcomeDistribution> {
    if states.len() != weights.len() || states.is_empty() {
        return Err(Error::InvalidWeights(
            "states and weights must be nonempty and equal in length".into(),
        ));
    }
    let parts = states
        .iter()
        .zip(weights)
        .map(|(s, &w)| Ok((w, output_distribution(s, phi)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(OutcomeDistribution::mixed(&parts))
}

/// i.i.d. draws by inverse CDF over the enumerated outcomes.
pub fn sample_from(dist: &OutcomeDistribution, count: usize, seed: u64) -> Vec<(usize, usize)> {
    let mut cdf = Vec::with_capacity(dist.probabilities.len());
    let mut acc = 0.0;
    for p in &dist.probabilities {
        acc += p;
        cdf.push(acc);
    }
    let total = acc;
    let last_nonzero = dist
        .probabilities
        .iter()
        .rposition(|p| *p > 0.0)
        .unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let u = rng.random::<f64>() * total;
            let k = cdf.partition_point(|c| *c <= u).min(last_nonzero);
            dist.outcomes[k]
        })
        .collect()
}

pub fn sample(
    state: &TwoModeState,
    phi: f64,
    count: usize,
    seed: u64,
) -> Result<Vec<(usize, usize)>> {
    if count == 0 {
        return Err(Error::Parameter("sample count must be at least 1".into()));
    }
    Ok(sample_from(&output_distribution(state, phi)?, count, seed))
}

/// CSV with header `phase_rad,n_c,n_d`.
pub fn samples_to_csv(sets: &[(f64, &[(usize, usize)])]) -> String {
    let mut out = String::from("phase_rad,n_c,n_d\n");
    for (phi, samples) in sets {
        for (c, d) in samples.iter() {
            out.push_str(&format!("{phi},{c},{d}\n"));
        }
    }
    out
}

/// Plug-in Q/R estimates with bootstrap standard errors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessEstimate {
    /// `null` when no photon was ever counted.
    pub q_hat: Option<f64>,
    pub r_hat: f64,
    pub std_err_q: Option<f64>,
    pub std_err_r: f64,
    pub samples_per_phase: usize,
    pub seed: u64,
    pub mean_jx: f64,
    pub var_jx: f64,
    pub mean_jy: f64,
    pub var_jy: f64,
    pub n_plus: f64,
    pub bootstrap_resamples: usize,
}

impl WitnessEstimate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("estimate serializes")
    }
}

/// Distinct outcomes with multiplicities.
#[derive(Debug, Clone)]
struct Tally {
    outcomes: Vec<(usize, usize)>,
    counts: Vec<u64>,
}

impl Tally {
    fn new(samples: &[(usize, usize)]) -> Self {
        let mut sorted = samples.to_vec();
        sorted.sort_unstable();
        let mut outcomes: Vec<(usize, usize)> = Vec::new();
        let mut counts: Vec<u64> = Vec::new();
        for o in sorted {
            if outcomes.last() == Some(&o) {
                *counts.last_mut().expect("nonempty") += 1;
            } else {
                outcomes.push(o);
                counts.push(1);
            }
        }
        Self { outcomes, counts }
    }

    /// (mean of (n_c − n_d)/2, unbiased variance of it, Σ(n_c + n_d), M)
    fn stats(&self, counts: &[u64]) -> (f64, f64, f64, f64) {
        let total: u64 = counts.iter().sum();
        let m = total as f64;
        let half_diff = |(c, d): (usize, usize)| 0.5 * (c as f64 - d as f64);
        let mean = self
            .outcomes
            .iter()
            .zip(counts)
            .map(|(o, k)| *k as f64 * half_diff(*o))
            .sum::<f64>()
            / m;
        let ss: f64 = self
            .outcomes
            .iter()
            .zip(counts)
            .map(|(o, k)| *k as f64 * (half_diff(*o) - mean).powi(2))
            .sum();
        let photons: f64 = self
            .outcomes
            .iter()
            .zip(counts)
            .map(|(o, k)| *k as f64 * (o.0 + o.1) as f64)
            .sum();
        (mean, ss / (m - 1.0), photons, m)
    }

    /// Multinomial resample of the same size, equivalent to drawing with
    /// replacement from the raw samples.
    fn resample<R: Rng>(&self, rng: &mut R) -> Vec<u64> {
        let total: u64 = self.counts.iter().sum();
        let mut left = total;
        let mut mass_left = total as f64;
        let mut out = Vec::with_capacity(self.counts.len());
        for (i, &k) in self.counts.iter().enumerate() {
            if i + 1 == self.counts.len() {
                out.push(left);
                break;
            }
            let p = (k as f64 / mass_left).clamp(0.0, 1.0);
            let draw = if left == 0 {
                0
            } else {
                Binomial::new(left, p).expect("valid binomial").sample(rng)
            };
            out.push(draw);
            left -= draw;
            mass_left -= k as f64;
        }
        out
    }
}

fn q_of(vx: f64, vy: f64, n_plus: f64) -> Option<f64> {
    (n_plus > 0.0).then(|| (vx + vy) / (0.5 * n_plus) - 1.0)
}

fn r_of(vx: f64, vy: f64, n_plus: f64) -> f64 {
    (1.0 + 4.0 * vx) * (1.0 + 4.0 * vy) / ((1.0 + n_plus) * (1.0 + n_plus)) - 1.0
}

fn std_dev(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
}

/// Estimates Q and R from count records at φ = 0 (Jx) and φ = π/2 (Jy).
/// <N₊> pools both records. Standard errors come from `resamples` bootstrap
/// replicates drawn from a stream derived from `seed`.
pub fn estimate_witnesses(
    samples_phi0: &[(usize, usize)],
    samples_phi90: &[(usize, usize)],
    resamples: usize,
    seed: u64,
) -> Result<WitnessEstimate> {
    if samples_phi0.len() < 2 || samples_phi90.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "need at least two samples per phase, got {} and {}",
            samples_phi0.len(),
            samples_phi90.len()
        )));
    }
    if resamples < 2 {
        return Err(Error::Parameter(
            "bootstrap needs at least two resamples".into(),
        ));
    }
    let t0 = Tally::new(samples_phi0);
    let t90 = Tally::new(samples_phi90);
    let point = |c0: &[u64], c90: &[u64]| {
        let (mx, vx, px, mx_n) = t0.stats(c0);
        let (my, vy, py, my_n) = t90.stats(c90);
        let n_plus = (px + py) / (mx_n + my_n);
        (mx, vx, my, vy, n_plus)
    };
    let (mean_jx, var_jx, mean_jy, var_jy, n_plus) = point(&t0.counts, &t90.counts);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    let mut qs = Vec::with_capacity(resamples);
    let mut rs = Vec::with_capacity(resamples);
    for _ in 0..resamples {
        let c0 = t0.resample(&mut rng);
        let c90 = t90.resample(&mut rng);
        let (_, vx, _, vy, np) = point(&c0, &c90);
        if let Some(q) = q_of(vx, vy, np) {
            qs.push(q);
        }
        rs.push(r_of(vx, vy, np));
    }
    let q_hat = q_of(var_jx, var_jy, n_plus);
    Ok(WitnessEstimate {
        q_hat,
        r_hat: r_of(var_jx, var_jy, n_plus),
        std_err_q: (q_hat.is_some() && qs.len() >= 2).then(|| std_dev(&qs)),
        std_err_r: std_dev(&rs),
        samples_per_phase: samples_phi0.len(),
        seed,
        mean_jx,
        var_jx,
        mean_jy,
        var_jy,
        n_plus,
        bootstrap_resamples: resamples,
    })
}

/// Infinite-data limit: (Q, R) from exact distribution moments.
pub fn exact_witnesses(
    dist_phi0: &OutcomeDistribution,
    dist_phi90: &OutcomeDistribution,
) -> (Option<f64>, f64) {
    let moments = |d: &OutcomeDistribution| {
        let mean = d.expect(|c, e| 0.5 * (c as f64 - e as f64));
        let second = d.expect(|c, e| 0.25 * (c as f64 - e as f64).powi(2));
        (second - mean * mean, d.expect(|c, e| (c + e) as f64))
    };
    let (vx, n0) = moments(dist_phi0);
    let (vy, n90) = moments(dist_phi90);
    let n_plus = 0.5 * (n0 + n90);
    (q_of(vx, vy, n_plus), r_of(vx, vy, n_plus))
}

/// Both phase settings with `count` samples each; the φ = π/2 stream and the
/// bootstrap are seeded from values derived from `seed`.
pub fn simulate(
    state_dist: (&OutcomeDistribution, &OutcomeDistribution),
    count: usize,
    seed: u64,
) -> Result<(Vec<(usize, usize)>, Vec<(usize, usize)>, WitnessEstimate)> {
    let s0 = sample_from(state_dist.0, count, seed);
    let s90 = sample_from(state_dist.1, count, seed ^ 0x9E37_79B9_7F4A_7C15);
    let est = estimate_witnesses(&s0, &s90, DEFAULT_BOOTSTRAP_RESAMPLES, seed)?;
    Ok((s0, s90, est))
}
