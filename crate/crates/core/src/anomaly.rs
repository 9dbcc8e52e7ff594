//! The charge–current anomaly: `I₂ = ⟨0|[F,[H₀,F]]|0⟩` evaluated exactly, the
//! point-split `I₁(ε)`, the split-current vacuum kernel and its continuum
//! asymptotics.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{self, FockVector};
use crate::lattice::LatticeConfig;
use crate::lattice::Sign;
use crate::modeops::field::ModeTable;
use crate::modeops::{apply, build_f, build_h0, commutator, vev};
use crate::quadrature::{integrate, richardson};
use crate::trig::TrigPoly;

/// Absolute tolerance for the continuum kernel quadrature.
pub const QUAD_TOL: f64 = 1e-9;

/// Number of halvings of the damping `η` fed to the extrapolation.
const ETA_LEVELS: usize = 4;

/// `2⟨0|F H₀ F|0⟩` by applying operators to the Fock vacuum, before
/// discarding the imaginary rounding residue.
pub fn compute_i2_direct_complex(f: &TrigPoly, cfg: &LatticeConfig) -> Result<Complex64> {
    let fop = build_f(f, cfg)?;
    let h0 = build_h0(cfg);
    let vac = FockVector::vacuum(cfg);
    let x = apply(&fop, &apply(&h0, &apply(&fop, &vac)?)?)?;
    Ok(fock::inner(&vac, &x)? * 2.0)
}

pub fn compute_i2_direct(f: &TrigPoly, cfg: &LatticeConfig) -> Result<f64> {
    Ok(compute_i2_direct_complex(f, cfg)?.re)
}

/// `⟨0|[F,[H₀,F]]|0⟩` through the operator algebra alone.
pub fn compute_i2_double_commutator(f: &TrigPoly, cfg: &LatticeConfig) -> Result<f64> {
    let fop = build_f(f, cfg)?;
    let inner = commutator(&build_h0(cfg), &fop)?;
    Ok(vev(&commutator(&fop, &inner)?).re)
}

/// `⟨m|F|0⟩` for the pair state `m = b_k† d_{k′}† |0⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairAmplitude {
    pub electron_j: i64,
    pub positron_j: i64,
    pub amplitude: Complex64,
    pub energy: f64,
}

/// All electron–positron pair amplitudes of `F|0⟩`: the smeared bilinear
/// `u_{+,k}† u_{−,k′} c_{k−k′}` with energy `E_k + E_{k′}`.
pub fn pair_amplitudes(f: &TrigPoly, cfg: &LatticeConfig) -> Result<Vec<PairAmplitude>> {
    if (f.box_length() - cfg.box_length()).abs() > 1e-12 * cfg.box_length() {
        return Err(Error::LatticeMismatch(format!(
            "smearing box length {} vs lattice box length {}",
            f.box_length(),
            cfg.box_length()
        )));
    }
    if f.max_harmonic() > 2 * cfg.n_max() {
        return Err(Error::HarmonicOutOfRange { n: f.max_harmonic() as i64, limit: 2 * cfg.n_max() });
    }
    let mut out = Vec::new();
    for k in cfg.indices() {
        let up = crate::lattice::spinor(Sign::Positive, k, cfg)?;
        for kp in cfg.indices() {
            let down = crate::lattice::spinor(Sign::Negative, kp, cfg)?;
            let amplitude = up.dot(&down.u) * f.coeff(k - kp);
            out.push(PairAmplitude { electron_j: k, positron_j: kp, amplitude, energy: up.energy + down.energy });
        }
    }
    Ok(out)
}

/// `2 Σ_m |⟨0|F|m⟩|² ξ(m)` over the pair states reachable from the vacuum.
pub fn compute_i2_spectral(f: &TrigPoly, cfg: &LatticeConfig) -> Result<f64> {
    Ok(pair_amplitudes(f, cfg)?.iter().map(|p| 2.0 * p.amplitude.norm_sqr() * p.energy).sum())
}

/// `⟨0|ψ†(z+g)σ_xψ(z)|0⟩ = −(1/L) Σ_j (p_j/E_j) e^{−i p_j g}`.
///
/// Modes `±j` are summed in pairs, `(2i/L) Σ_{j>0} (p_j/E_j) sin(p_j g)`, so
/// the result is exactly imaginary and exactly odd in `g`.
pub fn vev_kernel(g: f64, cfg: &LatticeConfig) -> Complex64 {
    let l = cfg.box_length();
    let sum: f64 = (1..=cfg.n_max() as i64)
        .map(|j| {
            let p = cfg.momentum(j);
            p / cfg.energy(j) * (p * g).sin()
        })
        .sum();
    Complex64::new(0.0, 2.0 * sum / l)
}

/// `(−i/2) Σ_γ ∫₀^L (f(z+γε) − f(z)) f′(z) dz · ⟨0|ψ†(z+γε)σ_xψ(z)|0⟩`.
pub fn compute_i1_eps_complex(f: &TrigPoly, eps: f64, cfg: &LatticeConfig) -> Complex64 {
    let half_minus_i = Complex64::new(0.0, -0.5);
    [1.0, -1.0]
        .iter()
        .map(|gamma| {
            let g = gamma * eps;
            half_minus_i * f.shifted_difference_integral(g) * vev_kernel(g, cfg)
        })
        .sum()
}

pub fn compute_i1_eps(f: &TrigPoly, eps: f64, cfg: &LatticeConfig) -> f64 {
    compute_i1_eps_complex(f, eps, cfg).re
}

/// Default upper limit for the kernel quadrature.
pub fn default_cutoff(eps: f64) -> f64 {
    (1e4f64).max(100.0 / eps)
}

/// Default Abel damping `η = ε²`.
pub fn default_eta(eps: f64) -> f64 {
    eps * eps
}

/// `∫₀^∞ sin(pε) e^{−ηp} dp = ε/(ε² + η²)`.
pub fn massless_damped_sine(eps: f64, eta: f64) -> f64 {
    eps / (eps * eps + eta * eta)
}

/// Details of one kernel evaluation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelAsymptote {
    pub eps: f64,
    pub eta: f64,
    pub cutoff: f64,
    pub mass: f64,
    /// `(η_k, I(η_k))` samples, halving `η` each step.
    pub samples: Vec<(f64, f64)>,
    /// Extrapolated `η → 0` value.
    pub value: f64,
    pub error: f64,
}

fn damped_kernel(eps: f64, eta: f64, cutoff: f64, m: f64) -> Result<(f64, f64)> {
    let body = integrate(|p| p / p.hypot(m) * (p * eps).sin() * (-eta * p).exp(), 0.0, cutoff, QUAD_TOL, 200_000)?;
    // Beyond the cutoff p/E_p = 1 − O(m²/p²); the massless tail is closed
    // form and the remainder is bounded by m²/(2·cutoff).
    let (s, c) = (cutoff * eps).sin_cos();
    let tail = (-eta * cutoff).exp() * (eta * s + eps * c) / (eps * eps + eta * eta);
    Ok((body.value + tail, body.error + m * m / (2.0 * cutoff)))
}

/// `∫₀^∞ (p/E_p) sin(pε) e^{−ηp} dp` extrapolated to `η → 0`.
pub fn kernel_asymptote_detailed(eps: f64, eta: f64, cutoff: f64, m: f64) -> Result<KernelAsymptote> {
    if !(eps > 0.0 && eta > 0.0 && cutoff > 0.0 && m > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "kernel asymptote needs eps, eta, cutoff, m > 0 (got {eps}, {eta}, {cutoff}, {m})"
        )));
    }
    let samples: Vec<(f64, f64, f64)> = (0..ETA_LEVELS)
        .into_par_iter()
        .map(|k| {
            let e = eta / 2f64.powi(k as i32);
            damped_kernel(eps, e, cutoff, m).map(|(v, err)| (e, v, err))
        })
        .collect::<Result<_>>()?;
    let values: Vec<f64> = samples.iter().map(|s| s.1).collect();
    let (value, extrap_err) = richardson(&values);
    let quad_err = samples.iter().map(|s| s.2).fold(0.0, f64::max);
    Ok(KernelAsymptote {
        eps,
        eta,
        cutoff,
        mass: m,
        samples: samples.iter().map(|s| (s.0, s.1)).collect(),
        value,
        error: extrap_err + quad_err,
    })
}

pub fn kernel_asymptote(eps: f64, eta: f64, cutoff: f64, m: f64) -> Result<f64> {
    Ok(kernel_asymptote_detailed(eps, eta, cutoff, m)?.value)
}

/// Continuum form of `I₁(ε)` after the kernel is replaced by `1/(γε)`:
/// returns `(2 Σ_γ ∫ ((f(z+γε) − f(z))/(γε)) f′ dz, 4 ∫ (f′)² dz)`.
pub fn continuum_i1_limit(f: &TrigPoly, eps: f64) -> Result<(f64, f64)> {
    if eps == 0.0 || !eps.is_finite() {
        return Err(Error::InvalidConfig(format!("continuum limit needs a finite nonzero eps, got {eps}")));
    }
    let finite_difference =
        [1.0, -1.0].iter().map(|gamma| 2.0 * f.shifted_difference_integral(gamma * eps) / (gamma * eps)).sum();
    Ok((finite_difference, 4.0 * f.derivative_sq_integral()))
}

/// One ε row of the anomaly report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EpsRow {
    pub eps: f64,
    pub i1_eps: f64,
    /// Imaginary part of the split-current vacuum kernel at `g = ε`.
    pub kernel_im: f64,
    pub finite_difference: f64,
    pub continuum_limit: f64,
}

/// `I₂` two ways, `I₁(ε)` across an ε sweep and the continuum limit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnomalyReport {
    pub lattice: LatticeConfig,
    pub smearing: Vec<(i64, f64, f64)>,
    pub i2_direct: f64,
    pub i2_spectral: f64,
    pub rows: Vec<EpsRow>,
    pub continuum_limit_i1: f64,
}

impl AnomalyReport {
    /// Rows follow the order of `eps`; each row is independent.
    pub fn compute(f: &TrigPoly, cfg: &LatticeConfig, eps: &[f64]) -> Result<Self> {
        let i2_direct = compute_i2_direct(f, cfg)?;
        let i2_spectral = compute_i2_spectral(f, cfg)?;
        let continuum_limit_i1 = 4.0 * f.derivative_sq_integral();
        let rows = eps
            .par_iter()
            .map(|&e| {
                let (finite_difference, continuum_limit) =
                    if e == 0.0 { (0.0, continuum_limit_i1) } else { continuum_i1_limit(f, e)? };
                Ok(EpsRow {
                    eps: e,
                    i1_eps: compute_i1_eps(f, e, cfg),
                    kernel_im: vev_kernel(e, cfg).im,
                    finite_difference,
                    continuum_limit,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            lattice: *cfg,
            smearing: f.harmonics().map(|(n, c)| (n, c.re, c.im)).collect(),
            i2_direct,
            i2_spectral,
            rows,
            continuum_limit_i1,
        })
    }
}

/// Used by tests that want the vacuum kernel through the operator algebra.
pub fn vev_kernel_via_operators(g: f64, cfg: &LatticeConfig) -> Complex64 {
    let table = ModeTable::new(cfg);
    vev(&crate::modeops::field::one_sided_kernel(&table, g, &crate::lattice::Mat2::sigma_x()).at(0.0))
}
