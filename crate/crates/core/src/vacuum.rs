//! Spectrum of the point-split Hamiltonian and the redefined vacuum.
//!
//! Under `H₀,ε` a single electron or positron in mode `q` carries energy
//! `E_q cos(p_q ε)`. Modes with `cos(p_q ε) < 0` form the negative set; the
//! state with both species occupied on every such mode is the ground state.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{self, slot_count, FockVector, SlotIndex, Species};
use crate::lattice::LatticeConfig;
use crate::modeops::{build_h0_eps, expectation, Signature};

/// `|cos(p ε)|` at or below this counts as a zero mode.
pub const ZERO_MODE_TOL: f64 = 1e-12;

/// Largest slot count accepted by [`ground_state_bruteforce`].
pub const ENUMERATION_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumEntry {
    pub j: i64,
    pub p: f64,
    pub energy: f64,
    pub split_energy: f64,
    pub negative: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SplitSpectrum {
    pub eps: f64,
    pub modes: Vec<SpectrumEntry>,
    pub negative_set: Vec<i64>,
    pub zero_set: Vec<i64>,
}

impl SplitSpectrum {
    /// `Σ_{q ∈ S_ε} 2 E_q cos(p_q ε)`.
    pub fn redefined_vacuum_energy(&self) -> f64 {
        // `+ 0.0` keeps an empty sum at +0 rather than -0.
        self.modes.iter().filter(|m| m.negative).map(|m| 2.0 * m.split_energy).sum::<f64>() + 0.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyReport {
    pub label: String,
    pub energy: f64,
    pub degeneracy: u64,
    pub states_enumerated: u64,
    /// Whether the minimizers are exactly the negative set filled for both
    /// species with zero modes free.
    pub matches_redefined_vacuum: bool,
}

/// Single-particle energy `⟨0|a_q H₀,ε a_q†|0⟩` via the Fock action.
pub fn excitation_energy(q: i64, species: Species, eps: f64, cfg: &LatticeConfig) -> Result<f64> {
    Ok(excitation_energy_routes(q, species, eps, cfg)?.1)
}

/// The same energy read off the operator coefficient and computed with
/// apply/inner: `(coefficient, expectation)`.
pub fn excitation_energy_routes(q: i64, species: Species, eps: f64, cfg: &LatticeConfig) -> Result<(f64, f64)> {
    cfg.check_index(q)?;
    let n = cfg.n_max();
    let h = build_h0_eps(cfg, eps);
    let slot = SlotIndex { species, j: q };
    let s = slot.linear(n) as u16;
    let coefficient = h.coefficient(&Signature { creators: vec![s], annihilators: vec![s] }).re;
    let state = fock::apply_create(slot, &FockVector::vacuum(cfg));
    let value = expectation(&state, &h)?;
    Ok((coefficient, value.re))
}

pub fn negative_set(eps: f64, cfg: &LatticeConfig) -> SplitSpectrum {
    let mut modes = Vec::with_capacity(cfg.modes_per_species());
    let mut negative = Vec::new();
    let mut zero = Vec::new();
    for j in cfg.indices() {
        let p = cfg.momentum(j);
        let energy = cfg.energy(j);
        let cos = (p * eps).cos();
        let is_zero = cos.abs() <= ZERO_MODE_TOL;
        let is_negative = cos < 0.0 && !is_zero;
        if is_zero {
            zero.push(j);
        }
        if is_negative {
            negative.push(j);
        }
        modes.push(SpectrumEntry { j, p, energy, split_energy: energy * cos, negative: is_negative });
    }
    SplitSpectrum { eps, modes, negative_set: negative, zero_set: zero }
}

fn negative_mask(spec: &SplitSpectrum, n_max: usize) -> u128 {
    spec.negative_set.iter().fold(0u128, |acc, &j| {
        acc | 1 << SlotIndex::electron(j).linear(n_max) | 1 << SlotIndex::positron(j).linear(n_max)
    })
}

fn zero_mask(spec: &SplitSpectrum, n_max: usize) -> u128 {
    spec.zero_set.iter().fold(0u128, |acc, &j| {
        acc | 1 << SlotIndex::electron(j).linear(n_max) | 1 << SlotIndex::positron(j).linear(n_max)
    })
}

/// `Π_{q∈S_ε} d_q† b_q† |0⟩` with creators ordered by ascending slot
/// (electrons, then positrons) read left to right, which gives amplitude
/// `+1` on the filled bitstring.
pub fn build_vacuum_eps(eps: f64, cfg: &LatticeConfig) -> FockVector {
    let n = cfg.n_max();
    let spec = negative_set(eps, cfg);
    let mut v = FockVector::vacuum(cfg);
    let mut slots: Vec<SlotIndex> =
        spec.negative_set.iter().flat_map(|&j| [SlotIndex::electron(j), SlotIndex::positron(j)]).collect();
    slots.sort_by_key(|s| s.linear(n));
    for slot in slots.iter().rev() {
        v = fock::apply_create(*slot, &v);
    }
    v
}

/// `⟨v|H₀,ε|v⟩`.
pub fn split_energy(v: &FockVector, eps: f64, cfg: &LatticeConfig) -> Result<f64> {
    let e: Complex64 = expectation(v, &build_h0_eps(cfg, eps))?;
    Ok(e.re / fock::inner(v, v)?.re)
}

fn slot_energies(eps: f64, cfg: &LatticeConfig) -> Vec<f64> {
    let n = cfg.n_max();
    let mut w = vec![0.0; slot_count(n)];
    for j in cfg.indices() {
        let e = cfg.energy(j) * (cfg.momentum(j) * eps).cos();
        w[SlotIndex::electron(j).linear(n)] = e;
        w[SlotIndex::positron(j).linear(n)] = e;
    }
    w
}

/// Energy of a basis state under `H₀,ε`: additive over occupied slots.
pub fn basis_energy(bits: u128, eps: f64, cfg: &LatticeConfig) -> f64 {
    additive(bits as u64, &slot_energies(eps, cfg))
}

#[inline]
fn additive(mut bits: u64, w: &[f64]) -> f64 {
    let mut e = 0.0;
    while bits != 0 {
        let s = bits.trailing_zeros() as usize;
        e += w[s];
        bits &= bits - 1;
    }
    e
}

/// Human-readable occupation list, `|0⟩` for the empty state.
pub fn state_label(bits: u128, n_max: usize) -> String {
    if bits == 0 {
        return "|0>".into();
    }
    let names: Vec<String> = (0..slot_count(n_max))
        .filter(|s| bits >> s & 1 == 1)
        .map(|s| SlotIndex::from_linear(s, n_max).to_string())
        .collect();
    format!("|{}>", names.join(" "))
}

/// Exhaustive minimum of `H₀,ε` over all occupation basis states.
pub fn ground_state_bruteforce(eps: f64, cfg: &LatticeConfig) -> Result<EnergyReport> {
    let n = cfg.n_max();
    let slots = slot_count(n);
    if slots > ENUMERATION_LIMIT {
        return Err(Error::EnumerationBound { slots, limit: ENUMERATION_LIMIT });
    }
    let w = slot_energies(eps, cfg);
    let total = 1u64 << slots;
    let scale: f64 = w.iter().map(|x| x.abs()).sum::<f64>().max(1.0);
    let tie = 1e-12 * scale;

    let chunk = 1u64 << 12.min(slots);
    let min = (0..total / chunk)
        .into_par_iter()
        .map(|c| (c * chunk..(c + 1) * chunk).map(|b| additive(b, &w)).fold(f64::INFINITY, f64::min))
        .reduce(|| f64::INFINITY, f64::min);

    let spec = negative_set(eps, cfg);
    let filled = negative_mask(&spec, n) as u64;
    let free = zero_mask(&spec, n) as u64;
    let (degeneracy, conforming) = (0..total / chunk)
        .into_par_iter()
        .map(|c| {
            let mut count = 0u64;
            let mut ok = 0u64;
            for b in c * chunk..(c + 1) * chunk {
                if additive(b, &w) - min <= tie {
                    count += 1;
                    if b & !free == filled {
                        ok += 1;
                    }
                }
            }
            (count, ok)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));

    let expected = 1u64 << (2 * spec.zero_set.len());
    Ok(EnergyReport {
        label: state_label(filled as u128, n),
        energy: min,
        degeneracy,
        states_enumerated: total,
        matches_redefined_vacuum: degeneracy == expected && conforming == degeneracy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn cfg(n: usize) -> LatticeConfig {
        LatticeConfig::new(1.0, 1.0, n).unwrap()
    }

    #[test]
    fn excitation_energy_examples() {
        let c = cfg(3);
        for species in [Species::Electron, Species::Positron] {
            assert_abs_diff_eq!(excitation_energy(2, species, 0.0, &c).unwrap(), 5f64.sqrt(), epsilon = 1e-12);
            assert_abs_diff_eq!(excitation_energy(2, species, PI / 2.0, &c).unwrap(), -5f64.sqrt(), epsilon = 1e-12);
            let (coef, full) = excitation_energy_routes(2, species, 2.0, &c).unwrap();
            assert_abs_diff_eq!(full, 5f64.sqrt() * 4f64.cos(), epsilon = 1e-12);
            assert_abs_diff_eq!(full, -1.4615, epsilon = 1e-4);
            assert_abs_diff_eq!(coef, full, epsilon = 1e-12);
        }
        assert!(excitation_energy(4, Species::Electron, 0.0, &c).is_err());
    }

    #[test]
    fn negative_set_examples() {
        assert!(negative_set(0.0, &cfg(5)).negative_set.is_empty());
        let s = negative_set(2.0, &cfg(3));
        assert_eq!(s.negative_set, vec![-2, -1, 1, 2]);
        assert!(s.zero_set.is_empty());

        let s = negative_set(0.1, &cfg(40));
        let mut expect: Vec<i64> = (16..=40).map(|j| -j).collect();
        expect.reverse();
        expect.extend(16..=40);
        assert_eq!(s.negative_set, expect);
    }

    #[test]
    fn zero_modes_are_excluded_and_reported() {
        let c = cfg(2);
        let eps = PI / 2.0;
        let s = negative_set(eps, &c);
        assert_eq!(s.zero_set, vec![-1, 1]);
        assert_eq!(s.negative_set, vec![-2, 2]);
        let report = ground_state_bruteforce(eps, &c).unwrap();
        assert_eq!(report.degeneracy, 16);
        assert!(report.matches_redefined_vacuum);
    }

    #[test]
    fn redefined_vacuum_energy_and_sign() {
        let c = cfg(3);
        assert_eq!(build_vacuum_eps(0.0, &c), FockVector::vacuum(&c));
        let v = build_vacuum_eps(2.0, &c);
        assert_eq!(v.len(), 1);
        assert_eq!(v.iter().next().unwrap().1, Complex64::new(1.0, 0.0));
        let e = split_energy(&v, 2.0, &c).unwrap();
        let formula = 4.0 * (2f64.sqrt() * 2f64.cos() + 5f64.sqrt() * 4f64.cos());
        assert_abs_diff_eq!(e, formula, epsilon = 1e-12);
        assert_abs_diff_eq!(negative_set(2.0, &c).redefined_vacuum_energy(), formula, epsilon = 1e-12);
    }

    #[test]
    fn bruteforce_unsplit_vacuum_is_unique_minimum() {
        let r = ground_state_bruteforce(0.0, &cfg(2)).unwrap();
        assert_eq!(r.energy, 0.0);
        assert_eq!(r.degeneracy, 1);
        assert_eq!(r.label, "|0>");
        assert!(r.matches_redefined_vacuum);
    }

    #[test]
    fn bruteforce_bound() {
        assert!(matches!(ground_state_bruteforce(0.1, &cfg(6)), Err(Error::EnumerationBound { .. })));
    }

    #[test]
    fn basis_energy_is_expectation_of_h0_eps() {
        let c = cfg(1);
        for eps in [0.0, 1.1, 2.5] {
            for bits in 0..(1u128 << slot_count(1)) {
                let v = FockVector::basis(1, bits);
                let e = split_energy(&v, eps, &c).unwrap();
                assert_abs_diff_eq!(e, basis_energy(bits, eps, &c), epsilon = 1e-12);
            }
        }
    }
}
