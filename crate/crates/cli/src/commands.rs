use std::path::Path;

use rayon::prelude::*;
use su2w_core::criteria::CriterionReport;
use su2w_core::fock::io::{read_state_input, state_to_json, StateInput};
use su2w_core::measure::{
    output_distribution, output_distribution_mixture, samples_to_csv, simulate, PHASE_JX, PHASE_JY,
};
use su2w_core::su2gen::{lambda_c, min_uncertainty_state};
use su2w_core::{su2_moments, verdict, Error, MinUncertaintySpec, TwoModeState};

use crate::grid::{parse_int_list, parse_real_grid};
use crate::{emit, pool, CliError, MRule};

pub const SWEEP_HEADER: &str = "lambda,N,m,Q,R,c_opt,var_jx,var_jy,n_plus,n_minus";
pub const LAMBDAC_HEADER: &str = "N,m,lambda_c,status";

/// Shortest round-trip form; exponent notation for very small or large values.
pub fn real(x: f64) -> String {
    format!("{x:?}")
}

fn generate(n: usize, m: usize, lambda: f64) -> Result<TwoModeState, CliError> {
    Ok(min_uncertainty_state(&MinUncertaintySpec::new(
        n, m, lambda,
    )?)?)
}

fn read_input(path: &Path) -> Result<StateInput, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    read_state_input(&text)
        .map_err(|e| CliError::usage(format!("malformed state file {}: {e}", path.display())))
}

pub fn state(n: usize, m: usize, lambda: f64, out: Option<&Path>) -> Result<(), CliError> {
    let psi = generate(n, m, lambda)?;
    emit(out, &(state_to_json(&psi) + "\n"))
}

pub fn criteria(input: Option<&Path>, spec: Option<(usize, usize, f64)>) -> Result<(), CliError> {
    let report = match (input, spec) {
        (Some(path), _) => match read_input(path)? {
            StateInput::Pure(s) => verdict(&s)?,
            mixture => verdict(&mixture.density()?)?,
        },
        (None, Some((n, m, l))) => verdict(&generate(n, m, l)?)?,
        (None, None) => {
            return Err(CliError::usage(
                "criteria needs --in FILE or all of --n, --m, --lambda",
            ))
        }
    };
    emit(None, &(report.to_json() + "\n"))
}

enum SweepRow {
    Data(String),
    Skipped(String),
}

fn sweep_row(n: usize, m: usize, lambda: f64) -> Result<SweepRow, CliError> {
    if lambda == 1.0 {
        return Ok(SweepRow::Skipped(format!(
            "# skipped lambda=1 N={n} m={m}: {}",
            Error::Unsqueezed
        )));
    }
    let mo = su2_moments(&generate(n, m, lambda)?)?;
    let r = CriterionReport::from_moments(&mo);
    Ok(SweepRow::Data(format!(
        "{},{n},{m},{},{},{},{},{},{},{}",
        real(lambda),
        r.q_value.map(real).unwrap_or_default(),
        real(r.r_value),
        real(r.c_opt),
        real(mo.var_jx),
        real(mo.var_jy),
        real(mo.n_plus),
        real(mo.n_minus),
    )))
}

/// The sweep CSV as text.
pub fn sweep_csv(n: usize, m_list: &str, lambda_grid: &str) -> Result<String, CliError> {
    let mut ms = parse_int_list(m_list)?;
    let mut lambdas = parse_real_grid(lambda_grid)?;
    if let Some(bad) = lambdas.iter().find(|l| **l < 0.0) {
        return Err(CliError::usage(format!("lambda must be >= 0, got {bad}")));
    }
    if let Some(bad) = ms.iter().find(|m| **m > n) {
        return Err(CliError::usage(format!("m = {bad} exceeds N = {n}")));
    }
    ms.sort_unstable();
    ms.dedup();
    lambdas.sort_by(f64::total_cmp);
    lambdas.dedup();

    let points: Vec<(usize, f64)> = ms
        .iter()
        .flat_map(|&m| lambdas.iter().map(move |&l| (m, l)))
        .collect();
    let rows = pool()?.install(|| {
        points
            .par_iter()
            .map(|&(m, l)| sweep_row(n, m, l))
            .collect::<Result<Vec<_>, _>>()
    })?;
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for row in rows {
        match row {
            SweepRow::Data(line) | SweepRow::Skipped(line) => {
                out.push_str(&line);
                out.push('\n');
            }
        }
    }
    Ok(out)
}

pub fn sweep(
    n: usize,
    m_list: &str,
    lambda_grid: &str,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let text = sweep_csv(n, m_list, lambda_grid)?;
    for line in text.lines().filter(|l| l.starts_with('#')) {
        eprintln!("warning: {}", line.trim_start_matches("# "));
    }
    emit(out, &text)
}

fn lambdac_row(n: usize, m: Option<usize>) -> String {
    let Some(m) = m.filter(|&m| m <= n && n >= 1) else {
        let shown = m.map(|m| m.to_string()).unwrap_or_default();
        return format!("{n},{shown},,invalid_m");
    };
    match lambda_c(n, m) {
        Ok(c) if c.roots.len() > 1 => format!("{n},{m},{},multiple_roots", real(c.lambda_c)),
        Ok(c) => format!("{n},{m},{},ok", real(c.lambda_c)),
        Err(Error::NoSignChange { .. }) => format!("{n},{m},,no_sign_change"),
        Err(_) => format!("{n},{m},,invalid_m"),
    }
}

pub fn lambdac_csv(n_list: &str, rule: MRule, explicit: Option<usize>) -> Result<String, CliError> {
    let mut ns = parse_int_list(n_list)?;
    ns.sort_unstable();
    ns.dedup();
    let rows: Vec<String> = pool()?.install(|| {
        ns.par_iter()
            .map(|&n| lambdac_row(n, rule.pick(n, explicit)))
            .collect()
    });
    let mut out = String::from(LAMBDAC_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    Ok(out)
}

pub fn lambdac(
    n_list: &str,
    rule: MRule,
    explicit: Option<usize>,
    out: Option<&Path>,
) -> Result<(), CliError> {
    emit(out, &lambdac_csv(n_list, rule, explicit)?)
}

pub fn measure(
    input: &Path,
    samples: usize,
    seed: u64,
    out: Option<&Path>,
    samples_out: Option<&Path>,
) -> Result<(), CliError> {
    if samples < 2 {
        return Err(CliError::usage(format!(
            "insufficient data for variance: need --samples >= 2, got {samples}"
        )));
    }
    let dists = match read_input(input)? {
        StateInput::Pure(s) => (
            output_distribution(&s, PHASE_JX)?,
            output_distribution(&s, PHASE_JY)?,
        ),
        StateInput::Mixture { weights, states } => (
            output_distribution_mixture(&states, &weights, PHASE_JX)?,
            output_distribution_mixture(&states, &weights, PHASE_JY)?,
        ),
    };
    let (s0, s90, est) = simulate((&dists.0, &dists.1), samples, seed)?;
    if let Some(path) = samples_out {
        emit(
            Some(path),
            &samples_to_csv(&[(PHASE_JX, &s0), (PHASE_JY, &s90)]),
        )?;
    }
    emit(out, &(est.to_json() + "\n"))
}
