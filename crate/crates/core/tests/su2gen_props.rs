use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use su2w_core::criteria::{q_value, r_value};
use su2w_core::special::hyp2f1_terminating;
use su2w_core::su2gen::{
    coefficients, eigen_residual, min_uncertainty_state, n_minus, transformed_state,
};
use su2w_core::{su2_moments, MinUncertaintySpec, TwoModeState};

fn spec(n: usize, m: usize, l: f64) -> MinUncertaintySpec {
    MinUncertaintySpec::new(n, m, l).unwrap()
}

fn rational_norm(n: usize, m: usize, big_sq: &BigRational) -> BigRational {
    // Σ_k C(N−m, k) (m+k)!/(m! k!) Λ^{2k}
    let mut total = BigRational::zero();
    let mut binom = BigRational::one();
    let mut rising = BigRational::one();
    let mut power = BigRational::one();
    for k in 0..=(n - m) {
        if k > 0 {
            let kk = BigRational::from_integer(BigInt::from(k));
            binom = binom * BigRational::from_integer(BigInt::from(n - m - k + 1)) / &kk;
            rising = rising * BigRational::from_integer(BigInt::from(m + k)) / &kk;
            power = power * big_sq;
        }
        total += &binom * &rising * &power;
    }
    total
}

#[test]
fn norm_matches_exact_rational_sum() {
    let third = BigRational::new(BigInt::from(1), BigInt::from(3));
    let exact = rational_norm(10, 3, &third).to_f64().unwrap();
    let got = coefficients(&spec(10, 3, 0.5)).unwrap().norm_sq;
    assert!(((got - exact) / exact).abs() < 1e-13, "{got} vs {exact}");
}

#[test]
fn norm_matches_hypergeometric_sum() {
    for n in [1usize, 5, 20, 60, 150] {
        for m in [0, n / 3, n / 2, n] {
            for l in [0.05, 0.4, 0.8, 0.95] {
                let s = spec(n, m, l);
                let big2 = s.big_lambda().powi(2);
                let want = hyp2f1_terminating(m as f64 + 1.0, n - m, 1.0, -big2);
                let got = coefficients(&s).unwrap().norm_sq;
                assert!(((got - want) / want).abs() < 1e-10, "N={n} m={m} λ={l}");
            }
        }
    }
}

#[test]
fn large_n_coefficients_stay_finite() {
    let c = coefficients(&spec(300, 120, 0.9)).unwrap();
    assert!(c.log_norm_sq.is_finite());
    let v = c.normalized();
    let s: f64 = v.iter().map(|x| x * x).sum();
    assert!((s - 1.0).abs() < 1e-12);
}

fn off_manifold_mass(s: &TwoModeState, n: usize) -> f64 {
    s.iter_nonzero()
        .filter(|(i, _)| i.total() != n)
        .map(|(_, z)| z.norm())
        .fold(0.0, f64::max)
}

#[test]
fn generated_states_are_eigenstates_on_the_manifold() {
    for n in [1usize, 2, 7, 16, 33, 50] {
        for m in (0..=n).step_by(1 + n / 6) {
            for l in [0.05, 0.35, 0.65, 0.95] {
                let sp = spec(n, m, l);
                let psi = min_uncertainty_state(&sp).unwrap();
                assert!(off_manifold_mass(&psi, n) <= 1e-14);
                assert!(
                    eigen_residual(&psi, l, sp.two_beta()) <= 1e-9,
                    "N={n} m={m} λ={l}"
                );
                let mo = su2_moments(&psi).unwrap();
                let prod = (mo.var_jx * mo.var_jy).sqrt();
                let half_jz = mo.mean_jz.abs() / 2.0;
                assert!(
                    (prod - half_jz).abs() <= 1e-9 * half_jz.max(1e-300),
                    "N={n} m={m} λ={l}"
                );
                assert!((mo.var_jx / mo.var_jy - l * l).abs() <= 1e-9 * l * l);
                assert!(
                    (n_minus(&sp).unwrap() - mo.n_minus).abs() <= 1e-10 * (1.0 + mo.n_minus.abs())
                );
            }
        }
    }
}

#[test]
fn reflection_m_to_n_minus_m() {
    for n in [4usize, 10, 17] {
        for m in 0..=n {
            for l in [0.1, 0.5, 0.9] {
                let a = su2_moments(&min_uncertainty_state(&spec(n, m, l)).unwrap()).unwrap();
                let b = su2_moments(&min_uncertainty_state(&spec(n, n - m, l)).unwrap()).unwrap();
                assert!((r_value(&a) - r_value(&b)).abs() < 1e-9);
                assert!((q_value(&a).unwrap() - q_value(&b).unwrap()).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn lambda_zero_extreme_r() {
    let n = 10usize;
    for m in 0..=n {
        let mo = su2_moments(&min_uncertainty_state(&spec(n, m, 0.0)).unwrap()).unwrap();
        let (nf, mf) = (n as f64, m as f64);
        let want = -(nf * nf + nf * (1.0 - 2.0 * mf) + 2.0 * mf * mf) / ((1.0 + nf) * (1.0 + nf));
        assert!(
            (r_value(&mo) - want).abs() < 1e-9,
            "m={m}: {} vs {want}",
            r_value(&mo)
        );
    }
}

#[test]
fn balanced_truncation_is_entangled() {
    let mo = su2_moments(&min_uncertainty_state(&spec(10, 5, 0.3)).unwrap()).unwrap();
    assert!(r_value(&mo) < 0.0);
}

#[test]
fn transformed_frame_has_n_photons() {
    let psi = transformed_state(&spec(12, 4, 0.6)).unwrap();
    assert_eq!(off_manifold_mass(&psi, 12), 0.0);
}
