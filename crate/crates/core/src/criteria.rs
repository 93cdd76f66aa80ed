//! Separability inequalities built from the SU(1,1) uncertainty relation of
//! the partially transposed state, written in SU(2) variances:
//!
//! (ΔJx)² + c²(ΔJy)² ≥ c<N₊>/2 − (c−1)²/4   for every c > 0
//!
//! `c = 1` gives the sum form behind Q; minimizing over `c` gives the product
//! form (1 + 4(ΔJx)²)(1 + 4(ΔJy)²) ≥ (1 + <N₊>)².

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{su2_moments, FockState, SU2Moments};
use crate::VIOLATION_THRESHOLD;

/// Slack of the c-family inequality; negative means the state is entangled.
pub fn family_slack(m: &SU2Moments, c: f64) -> Result<f64> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::Parameter(format!("c must be positive, got {c}")));
    }
    Ok(m.var_jx + c * c * m.var_jy - 0.5 * c * m.n_plus + 0.25 * (c - 1.0) * (c - 1.0))
}

/// Interval of `c` on which the family bound exceeds the state-independent
/// SU(2) bound c|<N₋>|/2. Diagnostic only.
pub fn c_window(m: &SU2Moments) -> (f64, f64) {
    let n_min = m.mean_na.min(m.mean_nb).max(0.0);
    let s = 1.0 + 2.0 * n_min;
    let root = (s * s - 1.0).sqrt();
    // the smaller root is computed as 1/c₊ to avoid cancellation
    let c_plus = s + root;
    (1.0 / c_plus, c_plus)
}

/// Minimizer of [`family_slack`] over c > 0.
pub fn c_opt(m: &SU2Moments) -> f64 {
    (1.0 + m.n_plus) / (1.0 + 4.0 * m.var_jy)
}

/// Q = ((ΔJx)² + (ΔJy)²)/(<N₊>/2) − 1. Undefined when <N₊> = 0.
pub fn q_value(m: &SU2Moments) -> Option<f64> {
    (m.n_plus > 0.0).then(|| (m.var_jx + m.var_jy) / (0.5 * m.n_plus) - 1.0)
}

/// R = (1 + 4(ΔJx)²)(1 + 4(ΔJy)²)/(1 + <N₊>)² − 1.
pub fn r_value(m: &SU2Moments) -> f64 {
    (1.0 + 4.0 * m.var_jx) * (1.0 + 4.0 * m.var_jy) / ((1.0 + m.n_plus) * (1.0 + m.n_plus)) - 1.0
}

/// Numerical minimum of [`family_slack`] over c > 0: best point of a
/// `grid_points` log-grid on [c_opt/100, 100·c_opt], refined by golden-section
/// search between its grid neighbours. Returns (c, slack).
pub fn numerical_minimum(m: &SU2Moments, grid_points: usize) -> (f64, f64) {
    let grid_points = grid_points.max(3);
    let center = c_opt(m);
    let (lo, hi) = ((center / 100.0).ln(), (center * 100.0).ln());
    let at = |k: usize| (lo + (hi - lo) * k as f64 / (grid_points - 1) as f64).exp();
    let f = |c: f64| family_slack(m, c).expect("grid points are positive");
    let best = (0..grid_points)
        .min_by(|&i, &j| f(at(i)).total_cmp(&f(at(j))))
        .expect("grid is nonempty");
    let (mut a, mut b) = (
        at(best.saturating_sub(1)),
        at((best + 1).min(grid_points - 1)),
    );
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
        if b - a <= f64::EPSILON * b {
            break;
        }
    }
    let c = 0.5 * (a + b);
    let refined = f(c);
    let grid_best = f(at(best));
    if grid_best < refined {
        (at(best), grid_best)
    } else {
        (c, refined)
    }
}

/// Aggregate verdict for one state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    /// `null` for states with <N₊> = 0.
    pub q_value: Option<f64>,
    pub r_value: f64,
    pub c_opt: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c_minus: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c_plus: Option<f64>,
    pub slack_at_copt: f64,
    pub hz_violated: bool,
    pub optimal_violated: bool,
    /// (ΔJx)² + (ΔJy)² − <N₊>/2, the c = 1 slack without normalization.
    pub raw_hz_slack: f64,
}

impl CriterionReport {
    pub fn from_moments(m: &SU2Moments) -> Self {
        let q = q_value(m);
        let r = r_value(m);
        let c = c_opt(m);
        let raw_hz_slack = m.var_jx + m.var_jy - 0.5 * m.n_plus;
        let window = (m.n_plus > 0.0).then(|| c_window(m));
        let hz_violated = match q {
            Some(q) => q < -VIOLATION_THRESHOLD,
            None => raw_hz_slack < -VIOLATION_THRESHOLD,
        };
        Self {
            q_value: q,
            r_value: r,
            c_opt: c,
            c_minus: window.map(|w| w.0),
            c_plus: window.map(|w| w.1),
            slack_at_copt: family_slack(m, c).expect("c_opt is positive"),
            hz_violated,
            optimal_violated: r < -VIOLATION_THRESHOLD,
            raw_hz_slack,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn verdict<S: FockState + ?Sized>(state: &S) -> Result<CriterionReport> {
    Ok(CriterionReport::from_moments(&su2_moments(state)?))
}
