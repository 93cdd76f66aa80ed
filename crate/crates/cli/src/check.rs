//! Oracle-equivalence suites behind `su2w check`. Each suite reports its worst
//! deviation against a fixed tolerance.

use su2w_core::criteria::{c_opt, family_slack, numerical_minimum, q_value, r_value};
use su2w_core::fock::dense::{dense_oracle_pure, OperatorPoly};
use su2w_core::pt::{pt_density, pt_k_relations, pt_moment};
use su2w_core::su2gen::{
    analytic_variances, eigen_residual, lambda_c, min_uncertainty_state, n_minus,
};
use su2w_core::{
    random_pure, random_separable, su11_moments, su2_moments, Complex64, DensityMatrix, FockState,
    MinUncertaintySpec, MomentWord,
};

use crate::commands::real;
use crate::{emit, CliError};

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub max_error: f64,
    pub tolerance: f64,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.max_error <= self.tolerance
    }
}

#[derive(Default)]
struct Worst {
    cases: usize,
    err: f64,
}

impl Worst {
    fn push(&mut self, e: f64) {
        self.cases += 1;
        // NaN counts as a failure
        if !(e <= self.err) {
            self.err = if e.is_nan() { f64::INFINITY } else { e };
        }
    }

    fn done(self, name: &'static str, tolerance: f64) -> SuiteResult {
        SuiteResult {
            name,
            cases: self.cases,
            max_error: self.err,
            tolerance,
        }
    }
}

const LAMBDAS: [f64; 19] = [
    0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85,
    0.9, 0.95,
];

fn spec(n: usize, m: usize, l: f64) -> MinUncertaintySpec {
    MinUncertaintySpec::new(n, m, l).expect("grid specs are valid")
}

fn generated_grid(max_n: usize) -> impl Iterator<Item = (usize, usize, f64)> {
    (1..=max_n).flat_map(|n| (0..=n).flat_map(move |m| LAMBDAS.iter().map(move |&l| (n, m, l))))
}

fn pt_word_shortcut() -> SuiteResult {
    let mut w = Worst::default();
    let words = MomentWord::all_up_to(4);
    for seed in 0..20 {
        let rho = DensityMatrix::from_pure(&random_pure(seed, 6, 6));
        let t = pt_density(&rho);
        for &word in &words {
            w.push((pt_moment(&rho, word).value - t.moment(word).value).norm());
        }
    }
    w.done("pt-word-shortcut", 1e-10)
}

fn pt_k_relation_suite() -> SuiteResult {
    let mut w = Worst::default();
    for seed in 0..20 {
        let rho = if seed % 2 == 0 {
            DensityMatrix::from_pure(&random_pure(seed, 6, 6))
        } else {
            random_separable(seed, 5, 5, 3).expect("k > 0")
        };
        let short = pt_k_relations(&rho).expect("moments exist");
        let full = su11_moments(&pt_density(&rho)).expect("moments exist");
        for (a, b) in [
            (short.var_kx, full.var_kx),
            (short.var_ky, full.var_ky),
            (short.mean_kz, full.mean_kz),
        ] {
            w.push((a - b).abs());
        }
    }
    w.done("pt-k-relations", 1e-10)
}

fn moment_dense_oracle() -> SuiteResult {
    let mut w = Worst::default();
    let words = MomentWord::all_up_to(4);
    for seed in 0..6 {
        let s = random_pure(seed, 4, 4);
        for &word in &words {
            let dense = dense_oracle_pure(&OperatorPoly::word(word), &s).expect("small basis");
            w.push((s.moment(word).value - dense).norm());
        }
    }
    w.done("moment-dense-oracle", 1e-10)
}

fn commutator(
    name: &'static str,
    x: OperatorPoly,
    y: OperatorPoly,
    z: OperatorPoly,
    k: Complex64,
) -> SuiteResult {
    let mut w = Worst::default();
    let c = x.commutator(&y);
    for seed in 0..10 {
        let s = random_pure(seed, 3, 3);
        let lhs = dense_oracle_pure(&c, &s).expect("small basis");
        let rhs = dense_oracle_pure(&z, &s).expect("small basis") * k;
        w.push((lhs - rhs).norm());
    }
    w.done(name, 1e-12)
}

fn eigen_residuals() -> SuiteResult {
    let mut w = Worst::default();
    for (n, m, l) in generated_grid(20) {
        let sp = spec(n, m, l);
        let psi = min_uncertainty_state(&sp).expect("valid spec");
        w.push(eigen_residual(&psi, l, sp.two_beta()));
    }
    w.done("eigen-residual", 1e-9)
}

fn saturation() -> SuiteResult {
    let mut w = Worst::default();
    for (n, m, l) in generated_grid(20) {
        let mo = su2_moments(&min_uncertainty_state(&spec(n, m, l)).expect("valid spec"))
            .expect("moments");
        let half = mo.mean_jz.abs() / 2.0;
        let prod = (mo.var_jx * mo.var_jy).sqrt();
        w.push((prod - half).abs() / half.max(f64::MIN_POSITIVE));
    }
    w.done("uncertainty-saturation", 1e-9)
}

fn shortcut_n_minus() -> SuiteResult {
    let mut w = Worst::default();
    for (n, m, l) in generated_grid(20) {
        let sp = spec(n, m, l);
        let mo = su2_moments(&min_uncertainty_state(&sp).expect("valid spec")).expect("moments");
        let nm = n_minus(&sp).expect("valid spec");
        w.push((nm - mo.n_minus).abs() / (1.0 + mo.n_minus.abs()));
        let (vx, vy) = analytic_variances(&sp).expect("lambda > 0");
        w.push((vx - mo.var_jx).abs() / (1.0 + mo.var_jx));
        w.push((vy - mo.var_jy).abs() / (1.0 + mo.var_jy));
    }
    w.done("n-minus-and-variances", 1e-10)
}

fn reflection() -> SuiteResult {
    let mut w = Worst::default();
    for (n, m, l) in generated_grid(12) {
        let a =
            su2_moments(&min_uncertainty_state(&spec(n, m, l)).expect("valid")).expect("moments");
        let b = su2_moments(&min_uncertainty_state(&spec(n, n - m, l)).expect("valid"))
            .expect("moments");
        w.push((r_value(&a) - r_value(&b)).abs());
        w.push((q_value(&a).unwrap_or(0.0) - q_value(&b).unwrap_or(0.0)).abs());
    }
    w.done("m-reflection-symmetry", 1e-9)
}

fn c_opt_optimality() -> SuiteResult {
    let mut w = Worst::default();
    for seed in 0..200 {
        let mo = su2_moments(&random_pure(seed, 4, 4)).expect("moments");
        let exact = family_slack(&mo, c_opt(&mo)).expect("c_opt > 0");
        w.push((numerical_minimum(&mo, 1000).1 - exact).abs());
    }
    w.done("c-opt-optimality", 1e-8)
}

fn separable_soundness() -> SuiteResult {
    let mut w = Worst::default();
    for seed in 0..200 {
        let rho = random_separable(seed, 4, 4, 1 + (seed as usize % 4)).expect("k > 0");
        w.push((-pt_density(&rho).min_eigenvalue()).max(0.0));
        let mo = su2_moments(&rho).expect("moments");
        for c in [0.2, 1.0, 5.0] {
            w.push((-family_slack(&mo, c).expect("c > 0")).max(0.0));
        }
    }
    w.done("separable-soundness", 1e-10)
}

fn critical_closed_form() -> SuiteResult {
    let mut w = Worst::default();
    for n in [5usize, 10, 20] {
        let c = lambda_c(n, n - 1).map(|c| c.lambda_c).unwrap_or(f64::NAN);
        w.push((c - 1.0 / ((n - 1) as f64).sqrt()).abs());
    }
    w.done("lambda-c-closed-form", 1e-6)
}

pub fn suites() -> Vec<SuiteResult> {
    let i = Complex64::new(0.0, 1.0);
    vec![
        pt_word_shortcut(),
        pt_k_relation_suite(),
        moment_dense_oracle(),
        commutator(
            "su2-commutator",
            OperatorPoly::jx(),
            OperatorPoly::jy(),
            OperatorPoly::jz(),
            i,
        ),
        commutator(
            "su11-commutator",
            OperatorPoly::kx(),
            OperatorPoly::ky(),
            OperatorPoly::kz(),
            -i,
        ),
        eigen_residuals(),
        saturation(),
        shortcut_n_minus(),
        reflection(),
        c_opt_optimality(),
        separable_soundness(),
        critical_closed_form(),
    ]
}

pub fn table(results: &[SuiteResult]) -> String {
    let mut out = format!(
        "{:<24} {:>6} {:>24} {:>10}  status\n",
        "suite", "cases", "max_error", "tolerance"
    );
    for r in results {
        out.push_str(&format!(
            "{:<24} {:>6} {:>24} {:>10}  {}\n",
            r.name,
            r.cases,
            real(r.max_error),
            real(r.tolerance),
            if r.passed() { "pass" } else { "FAIL" }
        ));
    }
    let passed = results.iter().filter(|r| r.passed()).count();
    out.push_str(&format!("{passed}/{} suites passed\n", results.len()));
    out
}

pub fn run_all() -> Result<(), CliError> {
    let results = suites();
    emit(None, &table(&results))?;
    match results.iter().find(|r| !r.passed()) {
        Some(r) => Err(CliError::check(format!(
            "identity check failed: {}",
            r.name
        ))),
        None => Ok(()),
    }
}
