//! Critical squeezing λ_c at which the c = 1 witness Q of
//! |Ψ>_{N,m} changes sign.
//!
//! Roots are bracketed by scanning Q on a 1000-point grid over (0,1) and
//! refined by bisection. The closed-form condition
//!
//! (m̃ + 3m + 4Λ²m) ₂F₁(m+1, −m̃; 1; −Λ²) = 2m(1 + 2Λ²)(m̃+1) ₂F₁(m+1, −m̃; 2; −Λ²),
//! m̃ = N − m,
//!
//! is solved independently on the same bracket as a cross-check.

use super::{n_minus, MinUncertaintySpec};
use crate::error::{Error, Result};
use crate::special::hyp2f1_terminating;

const GRID_POINTS: usize = 1000;
const BISECTION_STEPS: usize = 200;

/// Outcome of [`lambda_c`].
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalSqueezing {
    pub total_n: usize,
    pub truncation_m: usize,
    /// Smallest root of Q(λ) on (0,1).
    pub lambda_c: f64,
    /// Every sign change of Q found on the grid, ascending.
    pub roots: Vec<f64>,
    /// Root of the closed-form condition in the first bracket.
    pub closed_form_root: f64,
    /// Relative residual of the closed-form condition at `lambda_c`.
    pub closed_form_residual: f64,
}

/// Q along the squeezing axis, via <N₋> and the minimum-uncertainty
/// variance relations. Requires 0 < λ < 1.
pub fn q_along_lambda(total_n: usize, truncation_m: usize, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::Parameter(format!(
            "lambda must lie in (0,1), got {lambda}"
        )));
    }
    let spec = MinUncertaintySpec::new(total_n, truncation_m, lambda)?;
    let nm = n_minus(&spec)?;
    let var_sum = 0.25 * nm * (lambda + 1.0 / lambda);
    Ok(var_sum / (0.5 * total_n as f64) - 1.0)
}

/// (LHS − RHS)/(|LHS| + |RHS|) of the closed-form λ_c condition.
pub fn critical_equation_residual(total_n: usize, truncation_m: usize, lambda: f64) -> f64 {
    let m = truncation_m as f64;
    let mt_k = total_n - truncation_m;
    let mt = mt_k as f64;
    let l2 = lambda * lambda / (1.0 - lambda * lambda);
    let lhs = (mt + 3.0 * m + 4.0 * l2 * m) * hyp2f1_terminating(m + 1.0, mt_k, 1.0, -l2);
    let rhs = 2.0 * m * (1.0 + 2.0 * l2) * (mt + 1.0) * hyp2f1_terminating(m + 1.0, mt_k, 2.0, -l2);
    let scale = lhs.abs() + rhs.abs();
    if scale == 0.0 {
        0.0
    } else {
        (lhs - rhs) / scale
    }
}

fn bisect<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64) -> Option<f64> {
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Some(lo);
    }
    if f_hi == 0.0 {
        return Some(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return None;
    }
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Some(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

pub fn lambda_c(total_n: usize, truncation_m: usize) -> Result<CriticalSqueezing> {
    MinUncertaintySpec::new(total_n, truncation_m, 0.5)?;
    let q = |l: f64| q_along_lambda(total_n, truncation_m, l).expect("grid lies in (0,1)");
    let grid: Vec<f64> = (1..=GRID_POINTS)
        .map(|k| k as f64 / (GRID_POINTS + 1) as f64)
        .collect();
    let values: Vec<f64> = grid.iter().map(|&l| q(l)).collect();

    let mut brackets = Vec::new();
    for k in 0..GRID_POINTS - 1 {
        let (a, b) = (values[k], values[k + 1]);
        if a == 0.0 {
            brackets.push((grid[k], grid[k]));
        } else if a.signum() != b.signum() && b != 0.0 {
            brackets.push((grid[k], grid[k + 1]));
        }
    }
    if values[GRID_POINTS - 1] == 0.0 {
        let l = grid[GRID_POINTS - 1];
        brackets.push((l, l));
    }
    if brackets.is_empty() {
        return Err(Error::NoSignChange {
            total_n,
            truncation_m,
            q_at_half: q(0.5),
        });
    }

    let roots: Vec<f64> = brackets
        .iter()
        .map(|&(lo, hi)| {
            if lo == hi {
                lo
            } else {
                bisect(q, lo, hi).expect("bracket has a sign change")
            }
        })
        .collect();
    let (lo, hi) = brackets[0];
    let widen = 1.0 / (GRID_POINTS + 1) as f64;
    let closed_form_root = bisect(
        |l| critical_equation_residual(total_n, truncation_m, l),
        (lo - widen).max(widen * 0.5),
        (hi + widen).min(1.0 - widen * 0.5),
    )
    .unwrap_or(f64::NAN);
    Ok(CriticalSqueezing {
        total_n,
        truncation_m,
        lambda_c: roots[0],
        closed_form_residual: critical_equation_residual(total_n, truncation_m, roots[0]),
        roots,
        closed_form_root,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_below_top() {
        for n in [5usize, 10, 20, 50] {
            let c = lambda_c(n, n - 1).unwrap();
            let want = 1.0 / ((n - 1) as f64).sqrt();
            assert!((c.lambda_c - want).abs() < 1e-6, "N={n}: {}", c.lambda_c);
            assert!(c.closed_form_residual.abs() < 1e-8);
            assert!((c.closed_form_root - c.lambda_c).abs() < 1e-6);
            assert_eq!(c.roots.len(), 1);
        }
        assert!((lambda_c(10, 9).unwrap().lambda_c - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn reflection_symmetry() {
        for m in 0..=10 {
            match (lambda_c(10, m), lambda_c(10, 10 - m)) {
                (Ok(a), Ok(b)) => assert!((a.lambda_c - b.lambda_c).abs() < 1e-9, "m={m}"),
                (Err(_), Err(_)) => {}
                _ => panic!("asymmetric outcome at m={m}"),
            }
        }
    }

    #[test]
    fn decreases_away_from_balance() {
        let n = 20;
        let mut last = 1.0;
        for m in 12..=19 {
            let c = lambda_c(n, m).unwrap().lambda_c;
            assert!(c < last, "m={m}: {c} !< {last}");
            last = c;
        }
    }

    #[test]
    fn extremes_never_change_sign() {
        // m = N has Q = (λ² − 1)/2 < 0 everywhere
        match lambda_c(8, 8) {
            Err(Error::NoSignChange { q_at_half, .. }) => {
                assert!((q_at_half - (0.25 - 1.0) / 2.0).abs() < 1e-12)
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn q_domain() {
        assert!(q_along_lambda(4, 2, 0.0).is_err());
        assert!(q_along_lambda(4, 2, 1.0).is_err());
    }
}
