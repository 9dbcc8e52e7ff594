//! Identity suite: anticommutation relations, spinor invariants,
//! hermiticity, continuity and the point-split defining relation.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::fock::{annihilate_bits, create_bits, slot_count};
use crate::lattice::{spinor, LatticeConfig, Mat2, Sign};
use crate::modeops::identities::{
    boulware_residual, continuity_pair_residual, continuity_residual_with_sign, split_commutator_residual,
};
use crate::modeops::{build_f, build_h0, build_h0_eps, build_rho};
use crate::trig::TrigPoly;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub max_residual: f64,
    pub tolerance: f64,
}

impl CheckResult {
    fn new(name: impl Into<String>, max_residual: f64, tolerance: f64) -> Self {
        Self { name: name.into(), passed: max_residual < tolerance, max_residual, tolerance }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub z_samples: Vec<f64>,
    pub eps_values: Vec<f64>,
    pub smearing: Option<TrigPoly>,
    /// Largest `n_max` at which the CAR suite enumerates basis states.
    pub car_n_max: usize,
    /// Test hook: flips the sign of the current in the continuity check.
    pub corrupt_current_sign: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            z_samples: vec![0.0, 0.731, 2.19],
            eps_values: vec![0.3, 1.7],
            smearing: None,
            car_n_max: 2,
            corrupt_current_sign: false,
        }
    }
}

/// `{a_s, a_t†} = δ_st`, `{a_s, a_t} = 0`, `{a_s†, a_t†} = 0` on every basis
/// state; returns the largest amplitude residual.
pub fn car_suite(n_max: usize) -> f64 {
    let slots = slot_count(n_max);
    let apply2 = |bits: u128, first: (usize, bool), second: (usize, bool)| -> Option<(u128, f64)> {
        let step = |b, (s, dag): (usize, bool)| if dag { create_bits(b, s) } else { annihilate_bits(b, s) };
        let (b1, s1) = step(bits, first)?;
        let (b2, s2) = step(b1, second)?;
        Some((b2, s1 * s2))
    };
    let mut worst: f64 = 0.0;
    for bits in 0..(1u128 << slots) {
        for s in 0..slots {
            for t in 0..slots {
                for (x, y, identity) in
                    [((s, false), (t, true), s == t), ((s, false), (t, false), false), ((s, true), (t, true), false)]
                {
                    // x·y + y·x applied to |bits⟩; the right factor acts first.
                    let mut acc: Vec<(u128, f64)> = Vec::with_capacity(3);
                    for term in [apply2(bits, y, x), apply2(bits, x, y)].into_iter().flatten() {
                        acc.push(term);
                    }
                    if identity {
                        acc.push((bits, -1.0));
                    }
                    acc.sort_by_key(|e| e.0);
                    let mut k = 0;
                    while k < acc.len() {
                        let mut sum = 0.0;
                        let key = acc[k].0;
                        while k < acc.len() && acc[k].0 == key {
                            sum += acc[k].1;
                            k += 1;
                        }
                        worst = worst.max(sum.abs());
                    }
                }
            }
        }
    }
    worst
}

/// Eigen-equation, normalization, orthogonality and completeness residuals.
pub fn spinor_residual(cfg: &LatticeConfig) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for j in cfg.indices() {
        let up = spinor(Sign::Positive, j, cfg)?;
        let dn = spinor(Sign::Negative, j, cfg)?;
        for s in [&up, &dn] {
            let h = Mat2::dirac(s.p, cfg.mass()).apply(&s.u);
            let lam = s.lambda.value() * s.energy;
            for (hk, uk) in h.iter().zip(&s.u) {
                worst = worst.max((hk - uk * lam).norm());
            }
            worst = worst.max((s.dot(&s.u) - 1.0).norm());
        }
        worst = worst.max(up.dot(&dn.u).norm());
        for r in 0..2 {
            for c in 0..2 {
                let sum = up.u[r] * up.u[c].conj() + dn.u[r] * dn.u[c].conj();
                let expect = if r == c { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
                worst = worst.max((sum - expect).norm());
            }
        }
    }
    Ok(worst)
}

/// Runs every identity check.
pub fn run_checks(cfg: &LatticeConfig, opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let car_n = cfg.n_max().min(opts.car_n_max);
    out.push(CheckResult::new(format!("car_suite(n_max={car_n})"), car_suite(car_n), 1e-12));
    out.push(CheckResult::new("spinor_invariants", spinor_residual(cfg)?, 1e-12));

    let mut herm: f64 = build_h0(cfg).hermiticity_defect();
    for &eps in &opts.eps_values {
        herm = herm.max(build_h0_eps(cfg, eps).hermiticity_defect());
    }
    for &z in &opts.z_samples {
        herm = herm.max(build_rho(z, cfg).hermiticity_defect());
    }
    let f = match &opts.smearing {
        Some(f) => f.clone(),
        None => TrigPoly::cosine(cfg.box_length(), 1, 1.0)?,
    };
    herm = herm.max(build_f(&f, cfg)?.hermiticity_defect());
    out.push(CheckResult::new("hermiticity", herm, 1e-12));

    let sign = if opts.corrupt_current_sign { -1.0 } else { 1.0 };
    let mut cont = if opts.corrupt_current_sign { 0.0 } else { continuity_pair_residual(cfg) };
    for &z in &opts.z_samples {
        cont = cont.max(continuity_residual_with_sign(cfg, z, sign)?);
    }
    out.push(CheckResult::new("continuity", cont, 1e-12));

    let mut defining: f64 = 0.0;
    let mut explicit: f64 = 0.0;
    for &eps in &opts.eps_values {
        for &z in &opts.z_samples {
            defining = defining.max(boulware_residual(cfg, z, eps)?);
            explicit = explicit.max(split_commutator_residual(cfg, z, eps)?);
        }
    }
    out.push(CheckResult::new("split_defining_relation", defining, 1e-10));
    out.push(CheckResult::new("split_commutator_expansion", explicit, 1e-10));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn car_suite_small() {
        assert_eq!(car_suite(1), 0.0);
    }

    #[test]
    fn default_suite_passes_and_negative_control_fails() {
        let cfg = LatticeConfig::new(1.0, 1.0, 2).unwrap();
        let checks = run_checks(&cfg, &VerifyOptions::default()).unwrap();
        assert!(checks.iter().all(|c| c.passed), "{checks:?}");
        let bad = run_checks(&cfg, &VerifyOptions { corrupt_current_sign: true, ..Default::default() }).unwrap();
        let cont = bad.iter().find(|c| c.name == "continuity").unwrap();
        assert!(!cont.passed);
    }
}
