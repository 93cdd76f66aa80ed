//! Acceptance suite: one `[PASS]`/`[FAIL]` line per criterion, nonzero exit
//! if any criterion fails. Every tolerance is pinned below.

use std::process::Command;
use std::time::{Duration, Instant};

use su2w_core::criteria::{c_opt, family_slack, numerical_minimum, q_value, r_value};
use su2w_core::measure::{output_distribution, simulate, WitnessEstimate, PHASE_JX, PHASE_JY};
use su2w_core::pt::{pt_density, pt_k_relations, pt_moment};
use su2w_core::su2gen::{eigen_residual, lambda_c, min_uncertainty_state, q_along_lambda};
use su2w_core::{
    mix, random_pure, random_separable, su11_moments, su2_moments, Complex64, DensityMatrix,
    FockState, MinUncertaintySpec, MomentWord, SU2Moments, TwoModeState,
};

const AC1_TOL: f64 = 1e-10;
const AC1_BUDGET: Duration = Duration::from_secs(30);
const AC2_RESIDUAL_TOL: f64 = 1e-9;
const AC2_SATURATION_REL_TOL: f64 = 1e-9;
const AC2_BUDGET: Duration = Duration::from_secs(120);
const AC3_N_MINUS_REL_TOL: f64 = 1e-9;
const AC3_LAMBDA_C_TOL: f64 = 1e-6;
const AC3_EXTREME_R_TOL: f64 = 1e-9;
const AC4_R_CEILING: f64 = -1e-10;
const AC5_QR_FLOOR: f64 = -1e-12;
const AC5_SLACK_FLOOR: f64 = -1e-10;
const AC6_MATCH_TOL: f64 = 1e-8;
const AC6_GRID_POINTS: usize = 1000;
const AC7_TOL: f64 = 1e-9;
const AC8_ROOT_TOL: f64 = 1e-6;
const AC9_SAMPLES: usize = 100_000;
const AC9_SIGMAS: f64 = 4.0;
const AC9_SHRINK: f64 = 2.0;
const AC9_SHRINK_REL_TOL: f64 = 0.25;
const AC9_BUDGET: Duration = Duration::from_secs(60);

const LAMBDAS: [f64; 19] = [
    0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85,
    0.9, 0.95,
];

struct Verdict {
    pass: bool,
    detail: String,
}

fn grid() -> impl Iterator<Item = (usize, usize, f64)> {
    (1..=50usize).flat_map(|n| (0..=n).flat_map(move |m| LAMBDAS.iter().map(move |&l| (n, m, l))))
}

fn spec(n: usize, m: usize, l: f64) -> MinUncertaintySpec {
    MinUncertaintySpec::new(n, m, l).unwrap()
}

fn generated(n: usize, m: usize, l: f64) -> TwoModeState {
    min_uncertainty_state(&spec(n, m, l)).unwrap()
}

fn moments(n: usize, m: usize, l: f64) -> SU2Moments {
    su2_moments(&generated(n, m, l)).unwrap()
}

fn ac1_pt_identities(elapsed: &dyn Fn() -> Duration) -> Verdict {
    let words = MomentWord::all_up_to(4);
    let (mut word_dev, mut rel_dev) = (0.0f64, 0.0f64);
    for seed in 0..100u64 {
        let rho = if seed % 2 == 0 {
            DensityMatrix::from_pure(&random_pure(seed, 8, 8))
        } else {
            let parts = [random_pure(seed, 8, 8), random_pure(seed + 1000, 8, 8)];
            mix(&parts, &[0.3, 0.7]).unwrap()
        };
        let t = pt_density(&rho);
        for &w in &words {
            word_dev = word_dev.max((pt_moment(&rho, w).value - t.moment(w).value).norm());
        }
        let j = su2_moments(&rho).unwrap();
        let short = pt_k_relations(&rho).unwrap();
        let full = su11_moments(&t).unwrap();
        for (a, b) in [
            (short.var_kx, full.var_kx),
            (short.var_ky, full.var_ky),
            (short.mean_kz, full.mean_kz),
            (full.var_kx, j.var_jx + 0.25),
            (full.var_ky, j.var_jy + 0.25),
            (full.mean_kz, 0.5 * (j.n_plus + 1.0)),
        ] {
            rel_dev = rel_dev.max((a - b).abs());
        }
    }
    let t = elapsed();
    Verdict {
        pass: word_dev <= AC1_TOL && rel_dev <= AC1_TOL && t < AC1_BUDGET,
        detail: format!(
            "100 states: word dev {word_dev:.2e}, K-J relation dev {rel_dev:.2e} (tol {AC1_TOL:e}), {:.1?} (budget {AC1_BUDGET:?})",
            t
        ),
    }
}

fn ac2_eigenstates(elapsed: &dyn Fn() -> Duration) -> Verdict {
    let (mut res, mut sat, mut count) = (0.0f64, 0.0f64, 0usize);
    for (n, m, l) in grid() {
        let sp = spec(n, m, l);
        let psi = min_uncertainty_state(&sp).unwrap();
        res = res.max(eigen_residual(&psi, l, sp.two_beta()));
        let mo = su2_moments(&psi).unwrap();
        let half = mo.mean_jz.abs() / 2.0;
        let rel = ((mo.var_jx * mo.var_jy).sqrt() - half).abs() / half;
        sat = if rel.is_nan() {
            f64::INFINITY
        } else {
            sat.max(rel)
        };
        count += 1;
    }
    let t = elapsed();
    Verdict {
        pass: res <= AC2_RESIDUAL_TOL && sat <= AC2_SATURATION_REL_TOL && t < AC2_BUDGET,
        detail: format!(
            "{count} states: residual {res:.2e} (tol {AC2_RESIDUAL_TOL:e}), saturation rel dev {sat:.2e} (tol {AC2_SATURATION_REL_TOL:e}), {t:.1?} (budget {AC2_BUDGET:?})"
        ),
    }
}

fn ac3_closed_forms() -> Verdict {
    let (mut top, mut next) = (0.0f64, 0.0f64);
    for n in 1..=50usize {
        let nf = n as f64;
        for &l in &LAMBDAS {
            let a = moments(n, n, l).n_minus;
            top = top.max((a - l * nf).abs() / (l * nf));
            let b = moments(n, n - 1, l).n_minus;
            let want = l * (3.0 * nf - 2.0 + (nf * nf - 3.0 * nf + 2.0) * l * l)
                / (1.0 + (nf - 1.0) * l * l);
            next = next.max((b - want).abs() / want);
        }
    }
    let mut lc = 0.0f64;
    for n in [5usize, 10, 20, 50] {
        let got = lambda_c(n, n - 1).map(|c| c.lambda_c).unwrap_or(f64::NAN);
        let d = (got - 1.0 / ((n - 1) as f64).sqrt()).abs();
        lc = if d.is_nan() { f64::INFINITY } else { lc.max(d) };
    }
    let mut ext = 0.0f64;
    for m in 0..=10usize {
        let (nf, mf) = (10.0, m as f64);
        let want = -(nf * nf + nf * (1.0 - 2.0 * mf) + 2.0 * mf * mf) / ((1.0 + nf) * (1.0 + nf));
        ext = ext.max((r_value(&moments(10, m, 0.0)) - want).abs());
    }
    Verdict {
        pass: top <= AC3_N_MINUS_REL_TOL
            && next <= AC3_N_MINUS_REL_TOL
            && lc <= AC3_LAMBDA_C_TOL
            && ext <= AC3_EXTREME_R_TOL,
        detail: format!(
            "<N-> m=N rel {top:.2e}, m=N-1 rel {next:.2e} (tol {AC3_N_MINUS_REL_TOL:e}); lambda_c(N,N-1) dev {lc:.2e} (tol {AC3_LAMBDA_C_TOL:e}); lambda=0 R dev {ext:.2e} (tol {AC3_EXTREME_R_TOL:e})"
        ),
    }
}

fn ac4_r_negative() -> Verdict {
    let mut worst = (f64::NEG_INFINITY, 0, 0, 0.0);
    for (n, m, l) in grid() {
        let r = r_value(&moments(n, m, l));
        if !(r <= worst.0) {
            worst = (r, n, m, l);
        }
    }
    Verdict {
        pass: worst.0 < AC4_R_CEILING,
        detail: format!(
            "max R {:.3e} at N={} m={} lambda={} (must be < {AC4_R_CEILING:e})",
            worst.0, worst.1, worst.2, worst.3
        ),
    }
}

fn ac5_separable() -> Verdict {
    let (mut q_min, mut r_min, mut s_min) = (f64::INFINITY, f64::INFINITY, f64::INFINITY);
    for seed in 0..10_000u64 {
        let rho = random_separable(seed, 6, 6, 1 + (seed % 4) as usize).unwrap();
        let mo = su2_moments(&rho).unwrap();
        if let Some(q) = q_value(&mo) {
            q_min = q_min.min(q);
        }
        r_min = r_min.min(r_value(&mo));
        for c in [0.2, 1.0, 5.0] {
            s_min = s_min.min(family_slack(&mo, c).unwrap());
        }
    }
    Verdict {
        pass: q_min >= AC5_QR_FLOOR && r_min >= AC5_QR_FLOOR && s_min >= AC5_SLACK_FLOOR,
        detail: format!(
            "10000 mixtures: min Q {q_min:.3e}, min R {r_min:.3e} (floor {AC5_QR_FLOOR:e}), min slack {s_min:.3e} (floor {AC5_SLACK_FLOOR:e})"
        ),
    }
}

fn ac6_c_opt() -> Verdict {
    let (mut dev, mut sign_mismatch) = (0.0f64, 0usize);
    for seed in 0..1000u64 {
        let mo = su2_moments(&random_pure(seed, 4, 4)).unwrap();
        let exact = family_slack(&mo, c_opt(&mo)).unwrap();
        dev = dev.max((numerical_minimum(&mo, AC6_GRID_POINTS).1 - exact).abs());
        if (exact < 0.0) != (r_value(&mo) < 0.0) {
            sign_mismatch += 1;
        }
    }
    Verdict {
        pass: dev <= AC6_MATCH_TOL && sign_mismatch == 0,
        detail: format!(
            "1000 states: |grid min - closed form| {dev:.2e} (tol {AC6_MATCH_TOL:e}), sign mismatches {sign_mismatch}"
        ),
    }
}

fn ac7_symmetry() -> Verdict {
    let mut dev = 0.0f64;
    for (n, m, l) in grid().filter(|&(n, m, _)| 2 * m < n) {
        let (a, b) = (moments(n, m, l), moments(n, n - m, l));
        dev = dev.max((r_value(&a) - r_value(&b)).abs());
        dev = dev.max((q_value(&a).unwrap() - q_value(&b).unwrap()).abs());
    }
    Verdict {
        pass: dev <= AC7_TOL,
        detail: format!("max |dQ|,|dR| over (N,m) vs (N,N-m): {dev:.2e} (tol {AC7_TOL:e})"),
    }
}

fn ac8_dominance() -> Verdict {
    let mut tested = 0usize;
    let mut counterexamples = 0usize;
    let mut check = |mo: &SU2Moments| {
        tested += 1;
        if q_value(mo).is_some_and(|q| q < 0.0) && r_value(mo) >= 0.0 {
            counterexamples += 1;
        }
    };
    for (n, m, l) in grid() {
        check(&moments(n, m, l));
    }
    for seed in 0..2000u64 {
        check(&su2_moments(&random_pure(seed, 4, 4)).unwrap());
    }
    let root = lambda_c(10, 9).map(|c| c.lambda_c).unwrap_or(f64::NAN);
    let root_dev = (root - 1.0 / 3.0).abs();
    let below = q_along_lambda(10, 9, 1.0 / 3.0 - 1e-3).unwrap();
    let above = q_along_lambda(10, 9, 1.0 / 3.0 + 1e-3).unwrap();
    let r_side = LAMBDAS
        .iter()
        .chain(&[1.0 / 3.0 - 1e-3, 1.0 / 3.0 + 1e-3])
        .map(|&l| r_value(&moments(10, 9, l)))
        .fold(f64::NEG_INFINITY, f64::max);
    Verdict {
        pass: counterexamples == 0
            && root_dev <= AC8_ROOT_TOL
            && below > 0.0
            && above < 0.0
            && r_side < 0.0,
        detail: format!(
            "{tested} states, {counterexamples} with Q<0 but R>=0; N=10 m=9: root {root:.9} (|d| {root_dev:.1e}, tol {AC8_ROOT_TOL:e}), Q {below:+.2e} / {above:+.2e} across it, max R {r_side:.3e}"
        ),
    }
}

fn estimates(state: &TwoModeState, samples: usize, seed: u64) -> WitnessEstimate {
    let d0 = output_distribution(state, PHASE_JX).unwrap();
    let d90 = output_distribution(state, PHASE_JY).unwrap();
    simulate((&d0, &d90), samples, seed).unwrap().2
}

fn ac9_measurement(elapsed: &dyn Fn() -> Duration) -> Verdict {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let z = Complex64::new(0.0, 0.0);
    let bell = TwoModeState::from_amplitudes(
        1,
        1,
        vec![z, Complex64::new(h, 0.0), Complex64::new(h, 0.0), z],
    )
    .unwrap();
    let squeezed = generated(10, 10, 0.5);
    let mut ok = true;
    let mut notes = Vec::new();
    for (name, state, seed) in [("bell", &bell, 101u64), ("psi10,10", &squeezed, 202u64)] {
        let exact = su2_moments(state).unwrap();
        let (q, r) = (q_value(&exact).unwrap(), r_value(&exact));
        let e = estimates(state, AC9_SAMPLES, seed);
        let zq = (e.q_hat.unwrap() - q).abs() / e.std_err_q.unwrap();
        let zr = (e.r_hat - r).abs() / e.std_err_r;
        ok &= zq <= AC9_SIGMAS && zr <= AC9_SIGMAS;
        notes.push(format!("{name}: |dq|/se {zq:.2}, |dr|/se {zr:.2}"));
        let e4 = estimates(state, 4 * AC9_SAMPLES, seed);
        let shrink_r = e.std_err_r / e4.std_err_r;
        let shrink_q = e.std_err_q.unwrap() / e4.std_err_q.unwrap();
        if name == "psi10,10" {
            let within = |x: f64| (x - AC9_SHRINK).abs() <= AC9_SHRINK_REL_TOL * AC9_SHRINK;
            ok &= within(shrink_q) && within(shrink_r);
            notes.push(format!(
                "se shrink q {shrink_q:.2}, r {shrink_r:.2} (want {AC9_SHRINK} within {:.0}%)",
                AC9_SHRINK_REL_TOL * 100.0
            ));
        } else {
            // exact Jx eigenstate with a fair ±1/2 Jy coin: variance estimator at its stationary point, 1/M regime
            notes.push(format!(
                "bell se shrink q {shrink_q:.2} (1/M regime, informational)"
            ));
        }
    }
    let t = elapsed();
    ok &= t < AC9_BUDGET;
    notes.push(format!("{t:.1?} (budget {AC9_BUDGET:?})"));
    Verdict {
        pass: ok,
        detail: notes.join("; "),
    }
}

fn ac10_determinism() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_su2w");
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data");
    let dir = tempfile::tempdir().unwrap();
    let out = |name: &str| dir.path().join(name).display().to_string();
    let bell = format!("{data}/bell.json");
    let mixture = format!("{data}/separable_mixture.json");
    let gen = out("gen.json");
    let runs: Vec<(Vec<String>, Option<String>)> = vec![
        (
            vec![
                "state", "--n", "6", "--m", "2", "--lambda", "0.4", "--out", &gen,
            ]
            .into_iter()
            .map(String::from)
            .collect(),
            Some(gen.clone()),
        ),
        (vec!["criteria".into(), "--in".into(), bell.clone()], None),
        (
            vec!["criteria".into(), "--in".into(), mixture.clone()],
            None,
        ),
        (
            vec!["criteria", "--n", "10", "--m", "3", "--lambda", "0.7"]
                .into_iter()
                .map(String::from)
                .collect(),
            None,
        ),
        (
            vec![
                "sweep",
                "--n",
                "10",
                "--m-list",
                "0:10",
                "--lambda-grid",
                "0:0.95:20",
            ]
            .into_iter()
            .map(String::from)
            .collect(),
            None,
        ),
        (
            vec!["lambdac", "--n-list", "4:40:2", "--m-rule", "N-2"]
                .into_iter()
                .map(String::from)
                .collect(),
            None,
        ),
        (
            vec!["lambdac", "--n-list", "4:40:4", "--m-rule", "half+2"]
                .into_iter()
                .map(String::from)
                .collect(),
            None,
        ),
        (
            vec![
                "measure".into(),
                "--in".into(),
                bell.clone(),
                "--samples".into(),
                "5000".into(),
                "--seed".into(),
                "9".into(),
                "--samples-out".into(),
                out("samples.csv"),
            ],
            Some(out("samples.csv")),
        ),
        (vec!["check".into()], None),
    ];
    let mut mismatched = Vec::new();
    for (args, file) in &runs {
        let once = || {
            let o = Command::new(bin).args(args).output().unwrap();
            let f = file.as_ref().map(|p| std::fs::read(p).unwrap());
            (o.status.code(), o.stdout, f)
        };
        let (a, b) = (once(), once());
        if a != b || a.0 != Some(0) {
            mismatched.push(args[0].clone());
        }
    }
    Verdict {
        pass: mismatched.is_empty(),
        detail: format!(
            "{} commands re-run byte-identical; mismatched or failed: {mismatched:?}",
            runs.len()
        ),
    }
}

fn main() {
    let criteria: Vec<(&str, &str, Box<dyn Fn(&dyn Fn() -> Duration) -> Verdict>)> = vec![
        ("AC-1", "PT identity suite", Box::new(ac1_pt_identities)),
        ("AC-2", "eigenstate suite", Box::new(ac2_eigenstates)),
        (
            "AC-3",
            "closed-form anchors",
            Box::new(|_| ac3_closed_forms()),
        ),
        ("AC-4", "R always negative", Box::new(|_| ac4_r_negative())),
        (
            "AC-5",
            "separability soundness",
            Box::new(|_| ac5_separable()),
        ),
        ("AC-6", "c_opt optimality", Box::new(|_| ac6_c_opt())),
        ("AC-7", "m <-> N-m symmetry", Box::new(|_| ac7_symmetry())),
        (
            "AC-8",
            "Q violation implies R violation",
            Box::new(|_| ac8_dominance()),
        ),
        ("AC-9", "measurement simulation", Box::new(ac9_measurement)),
        ("AC-10", "CLI determinism", Box::new(|_| ac10_determinism())),
    ];
    let mut failed = 0;
    for (id, title, run) in &criteria {
        let start = Instant::now();
        let v = run(&|| start.elapsed());
        if !v.pass {
            failed += 1;
        }
        println!(
            "[{}] {id} {title}: {}",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
