//! One function per subcommand; each returns a finished report.

use pointsplit_core::anomaly::{default_cutoff, default_eta, kernel_asymptote_detailed, AnomalyReport};
use pointsplit_core::fock::slot_count;
use pointsplit_core::symbolic::{derive_i1, CurrentForm, Derivation, SpinMatrix};
use pointsplit_core::vacuum::{
    build_vacuum_eps, excitation_energy_routes, ground_state_bruteforce, negative_set, split_energy, ENUMERATION_LIMIT,
};
use pointsplit_core::verify::{run_checks, CheckResult, VerifyOptions};
use pointsplit_core::Species;
use rayon::prelude::*;
use serde_json::Value;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::report::{Report, Table};

pub const VERIFY_EPS: &[f64] = &[0.3, 1.7];
pub const ANOMALY_EPS: &[f64] = &[0.1, 0.05, 0.025];
pub const VACUUM_EPS: &[f64] = &[2.0];
pub const KERNEL_EPS: &[f64] = &[0.1, 0.05, 0.01];

fn check(name: impl Into<String>, max_residual: f64, tolerance: f64) -> CheckResult {
    CheckResult { name: name.into(), passed: max_residual < tolerance, max_residual, tolerance }
}

pub fn verify(cfg: RunConfig) -> Result<Report, CliError> {
    let lattice = cfg.lattice();
    let opts = VerifyOptions {
        eps_values: cfg.eps.clone(),
        smearing: Some(cfg.smearing()),
        corrupt_current_sign: cfg.corrupt_sign,
        ..VerifyOptions::default()
    };
    let mut report = Report::new("verify", cfg);
    report.checks = run_checks(&lattice, &opts)?;
    Ok(report)
}

pub fn anomaly(cfg: RunConfig) -> Result<Report, CliError> {
    let lattice = cfg.lattice();
    let f = cfg.smearing();
    let result = AnomalyReport::compute(&f, &lattice, &cfg.eps)?;
    let kernel = kernel_rows(&cfg, cfg.eps.iter().copied().filter(|&e| e > 0.0).collect())?;
    let mut report = Report::new("anomaly", cfg);

    let gap = (result.i2_direct - result.i2_spectral).abs() / result.i2_direct.abs().max(1e-300);
    let gap = if result.i2_direct == result.i2_spectral { 0.0 } else { gap };
    report.checks.push(check("i2_direct_vs_spectral", gap, 1e-10));

    let mut summary = Table::new(&["i2_direct", "i2_spectral", "relative_gap", "continuum_limit_i1"]);
    summary.push(vec![
        result.i2_direct.into(),
        result.i2_spectral.into(),
        gap.into(),
        result.continuum_limit_i1.into(),
    ]);
    report.tables.insert("summary", summary);

    let mut sweep = Table::new(&[
        "eps",
        "i1_eps",
        "kernel_im",
        "finite_difference",
        "continuum_limit",
        "fd_error",
        "i1_sign_matches_i2",
    ]);
    for row in &result.rows {
        sweep.push(vec![
            row.eps.into(),
            row.i1_eps.into(),
            row.kernel_im.into(),
            row.finite_difference.into(),
            row.continuum_limit.into(),
            (row.finite_difference - row.continuum_limit).abs().into(),
            (row.i1_eps.signum() == result.i2_direct.signum()).into(),
        ]);
    }
    report.tables.insert("eps_sweep", sweep);
    report.tables.insert("kernel", kernel.0);

    push_derivations(&mut report)?;
    Ok(report)
}

pub fn vacuum(cfg: RunConfig) -> Result<Report, CliError> {
    let lattice = cfg.lattice();
    let slots = slot_count(lattice.n_max());
    let enumerate = slots <= ENUMERATION_LIMIT;
    let mut report = Report::new("vacuum", cfg.clone());
    if !enumerate {
        report.warn(format!(
            "{slots} slots exceed the enumeration bound of {ENUMERATION_LIMIT}; brute-force minimum skipped"
        ));
    }
    for &eps in &cfg.eps {
        if cfg.below_negative_energy_threshold(eps) {
            report.warn(format!(
                "eps = {eps}: cutoff momentum {} gives Λ·|eps| = {} <= π/2, so no mode has negative split energy",
                lattice.cutoff(),
                lattice.cutoff() * eps.abs()
            ));
        }
    }

    struct EpsResult {
        spectrum: pointsplit_core::SplitSpectrum,
        vacuum_energy: f64,
        ground: Option<pointsplit_core::EnergyReport>,
        excitations: Vec<(i64, Species, f64, f64, f64)>,
    }
    let results = cfg
        .eps
        .par_iter()
        .map(|&eps| -> Result<EpsResult, CliError> {
            let spectrum = negative_set(eps, &lattice);
            let vacuum_energy = split_energy(&build_vacuum_eps(eps, &lattice), eps, &lattice)?;
            let ground = if enumerate { Some(ground_state_bruteforce(eps, &lattice)?) } else { None };
            let mut excitations = Vec::new();
            for q in lattice.indices() {
                let formula = lattice.energy(q) * (lattice.momentum(q) * eps).cos();
                for species in [Species::Electron, Species::Positron] {
                    let (coefficient, expectation) = excitation_energy_routes(q, species, eps, &lattice)?;
                    excitations.push((q, species, coefficient, expectation, formula));
                }
            }
            Ok(EpsResult { spectrum, vacuum_energy, ground, excitations })
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut spectrum = Table::new(&["eps", "j", "p", "energy", "split_energy", "in_negative_set", "zero_mode"]);
    let mut ground = Table::new(&[
        "eps",
        "negative_set",
        "zero_set",
        "vacuum_eps_energy",
        "additive_formula",
        "bruteforce_minimum",
        "degeneracy",
        "states_enumerated",
        "minimizer",
        "minimizers_match_vacuum_eps",
    ]);
    let mut excitations = Table::new(&["eps", "q", "species", "coefficient", "expectation", "e_cos_pe"]);
    for (&eps, r) in cfg.eps.iter().zip(&results) {
        for m in &r.spectrum.modes {
            spectrum.push(vec![
                eps.into(),
                m.j.into(),
                m.p.into(),
                m.energy.into(),
                m.split_energy.into(),
                m.negative.into(),
                r.spectrum.zero_set.contains(&m.j).into(),
            ]);
        }
        let formula = r.spectrum.redefined_vacuum_energy();
        let scale = formula.abs().max(1.0);
        let mut vac_residual = (r.vacuum_energy - formula).abs();
        let (min, degeneracy, enumerated, label, matches) = match &r.ground {
            Some(g) => {
                vac_residual = vac_residual.max((g.energy - r.vacuum_energy).abs());
                (
                    g.energy.into(),
                    g.degeneracy.into(),
                    g.states_enumerated.into(),
                    g.label.clone().into(),
                    g.matches_redefined_vacuum.into(),
                )
            }
            None => (Value::Null, Value::Null, Value::Null, Value::Null, Value::Null),
        };
        let minimizers_ok = r.ground.as_ref().is_none_or(|g| g.matches_redefined_vacuum);
        let mut c = check(format!("ground_state(eps={eps})"), vac_residual, 1e-10 * scale);
        c.passed &= minimizers_ok;
        report.checks.push(c);
        ground.push(vec![
            eps.into(),
            join(&r.spectrum.negative_set).into(),
            join(&r.spectrum.zero_set).into(),
            r.vacuum_energy.into(),
            formula.into(),
            min,
            degeneracy,
            enumerated,
            label,
            matches,
        ]);

        let mut worst: f64 = 0.0;
        for &(q, species, coefficient, expectation, formula) in &r.excitations {
            worst = worst.max((coefficient - formula).abs()).max((expectation - formula).abs());
            let name = match species {
                Species::Electron => "electron",
                Species::Positron => "positron",
            };
            excitations.push(vec![
                eps.into(),
                q.into(),
                name.into(),
                coefficient.into(),
                expectation.into(),
                formula.into(),
            ]);
        }
        report.checks.push(check(format!("excitation_energy(eps={eps})"), worst, 1e-12));
    }
    report.tables.insert("spectrum", spectrum);
    report.tables.insert("ground_state", ground);
    report.tables.insert("excitations", excitations);
    Ok(report)
}

pub fn kernel(cfg: RunConfig) -> Result<Report, CliError> {
    if let Some(bad) = cfg.eps.iter().find(|&&e| e <= 0.0) {
        return Err(CliError::Config(format!("kernel needs eps > 0, got {bad}")));
    }
    let (table, samples) = kernel_rows(&cfg, cfg.eps.clone())?;
    let mut report = Report::new("kernel", cfg);
    report.tables.insert("kernel", table);
    report.tables.insert("kernel_samples", samples);
    Ok(report)
}

pub fn derive(cfg: RunConfig) -> Result<Report, CliError> {
    let mut report = Report::new("derive", cfg);
    push_derivations(&mut report)?;
    Ok(report)
}

/// `(kernel table, per-η sample table)` for the given positive eps values.
fn kernel_rows(cfg: &RunConfig, eps: Vec<f64>) -> Result<(Table, Table), CliError> {
    let rows = eps
        .par_iter()
        .map(|&e| {
            let eta = cfg.eta.unwrap_or_else(|| default_eta(e));
            let cutoff = cfg.cutoff.unwrap_or_else(|| default_cutoff(e));
            kernel_asymptote_detailed(e, eta, cutoff, cfg.mass)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut table = Table::new(&["eps", "eta", "cutoff", "mass", "kernel", "eps_times_kernel", "error"]);
    let mut samples = Table::new(&["eps", "eta", "damped_integral"]);
    for k in rows {
        table.push(vec![
            k.eps.into(),
            k.eta.into(),
            k.cutoff.into(),
            k.mass.into(),
            k.value.into(),
            (k.eps * k.value).into(),
            k.error.into(),
        ]);
        for (eta, v) in &k.samples {
            samples.push(vec![k.eps.into(), (*eta).into(), (*v).into()]);
        }
    }
    Ok((table, samples))
}

/// Local and split charge–current derivations, as checks plus a step table.
fn push_derivations(report: &mut Report) -> Result<(), CliError> {
    let local = derive_i1(CurrentForm::Local, SpinMatrix::IDENTITY, SpinMatrix::SIGMA_X)?;
    let split = derive_i1(CurrentForm::Split, SpinMatrix::IDENTITY, SpinMatrix::SIGMA_X)?;
    report.checks.push(check("formal_i1_terms", local.result().len() as f64, 0.5));
    let split_zero = if split.result().is_zero() { 1.0 } else { 0.0 };
    report.checks.push(check("split_i1_nonzero", split_zero, 0.5));

    let mut table = Table::new(&["current", "step", "label", "expression"]);
    for (name, d) in [("local", &local), ("split", &split)] {
        push_steps(&mut table, name, d);
    }
    report.tables.insert("derivation", table);
    Ok(())
}

fn push_steps(table: &mut Table, name: &'static str, d: &Derivation) {
    for (k, step) in d.steps.iter().enumerate() {
        table.push(vec![name.into(), (k + 1).into(), step.label.into(), step.expr.to_string().into()]);
    }
}

fn join(js: &[i64]) -> String {
    js.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}
