//! Fermionic Fock space over the lattice modes.
//!
//! Slots are linearized electrons first (ascending `j`), then positrons
//! (ascending `j`). This order is the single source of Jordan–Wigner signs:
//! creating or annihilating in slot `s` picks up `(−1)^{#occupied slots < s}`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::LatticeConfig;

/// Basis states are stored as `u128` bitstrings.
pub const MAX_SLOTS: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Species {
    Electron,
    Positron,
}

/// A `(species, j)` pair naming one fermionic mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SlotIndex {
    pub species: Species,
    pub j: i64,
}

impl SlotIndex {
    pub fn electron(j: i64) -> Self {
        Self { species: Species::Electron, j }
    }

    pub fn positron(j: i64) -> Self {
        Self { species: Species::Positron, j }
    }

    pub fn linear(&self, n_max: usize) -> usize {
        let offset = (self.j + n_max as i64) as usize;
        match self.species {
            Species::Electron => offset,
            Species::Positron => 2 * n_max + 1 + offset,
        }
    }

    pub fn from_linear(s: usize, n_max: usize) -> Self {
        let per = 2 * n_max + 1;
        let (species, offset) = if s < per { (Species::Electron, s) } else { (Species::Positron, s - per) };
        Self { species, j: offset as i64 - n_max as i64 }
    }
}

impl fmt::Display for SlotIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.species {
            Species::Electron => 'b',
            Species::Positron => 'd',
        };
        write!(f, "{tag}[{}]", self.j)
    }
}

/// Total slot count `2(2n_max + 1)`.
pub fn slot_count(n_max: usize) -> usize {
    2 * (2 * n_max + 1)
}

#[inline]
fn parity_below(bits: u128, slot: usize) -> f64 {
    let mask = if slot == 0 { 0 } else { (1u128 << slot) - 1 };
    if (bits & mask).count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Creation on a single basis state; `None` if the slot is already occupied.
#[inline]
pub fn create_bits(bits: u128, slot: usize) -> Option<(u128, f64)> {
    let bit = 1u128 << slot;
    if bits & bit != 0 {
        None
    } else {
        Some((bits | bit, parity_below(bits, slot)))
    }
}

/// Annihilation on a single basis state; `None` if the slot is empty.
#[inline]
pub fn annihilate_bits(bits: u128, slot: usize) -> Option<(u128, f64)> {
    let bit = 1u128 << slot;
    if bits & bit == 0 {
        None
    } else {
        Some((bits & !bit, parity_below(bits, slot)))
    }
}

/// Sparse vector over occupation bitstrings.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    n_max: usize,
    amps: BTreeMap<u128, Complex64>,
    prune: f64,
}

impl FockVector {
    pub fn zero(n_max: usize) -> Self {
        assert!(
            slot_count(n_max) <= MAX_SLOTS,
            "Fock vectors support at most {MAX_SLOTS} slots (n_max <= 31), got n_max = {n_max}"
        );
        Self { n_max, amps: BTreeMap::new(), prune: 0.0 }
    }

    /// `|0⟩`: the empty bitstring with amplitude one.
    pub fn vacuum(cfg: &LatticeConfig) -> Self {
        Self::basis(cfg.n_max(), 0)
    }

    pub fn basis(n_max: usize, bits: u128) -> Self {
        let mut v = Self::zero(n_max);
        v.amps.insert(bits, Complex64::new(1.0, 0.0));
        v
    }

    /// Drop amplitudes with modulus at or below `threshold` from now on.
    pub fn with_prune_threshold(mut self, threshold: f64) -> Self {
        self.prune = threshold;
        self.amps.retain(|_, a| a.norm() > threshold || (threshold == 0.0 && *a != Complex64::new(0.0, 0.0)));
        self
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn slots(&self) -> usize {
        slot_count(self.n_max)
    }

    pub fn is_zero(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn amplitude(&self, bits: u128) -> Complex64 {
        self.amps.get(&bits).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u128, Complex64)> + '_ {
        self.amps.iter().map(|(&b, &a)| (b, a))
    }

    /// Adds `amp` to the basis state `bits`, dropping entries that end up at
    /// or below the prune threshold.
    pub fn add_amplitude(&mut self, bits: u128, amp: Complex64) {
        let entry = self.amps.entry(bits).or_default();
        *entry += amp;
        let keep = if self.prune == 0.0 { *entry != Complex64::new(0.0, 0.0) } else { entry.norm() > self.prune };
        if !keep {
            self.amps.remove(&bits);
        }
    }

    pub fn from_amplitudes(n_max: usize, amps: impl IntoIterator<Item = (u128, Complex64)>) -> Self {
        let mut v = Self::zero(n_max);
        for (b, a) in amps {
            v.add_amplitude(b, a);
        }
        v
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.values().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = Self { n_max: self.n_max, amps: BTreeMap::new(), prune: self.prune };
        for (&b, &a) in &self.amps {
            out.add_amplitude(b, a * c);
        }
        out
    }

    pub fn add(&self, other: &FockVector) -> Result<Self> {
        check_same(self.n_max, other.n_max)?;
        let mut out = self.clone();
        for (&b, &a) in &other.amps {
            out.add_amplitude(b, a);
        }
        Ok(out)
    }

    fn map_basis(&self, f: impl Fn(u128) -> Option<(u128, f64)>) -> Self {
        let mut out = Self { n_max: self.n_max, amps: BTreeMap::new(), prune: self.prune };
        for (&b, &a) in &self.amps {
            if let Some((nb, sign)) = f(b) {
                out.add_amplitude(nb, a * sign);
            }
        }
        out
    }

    fn linear_slot(&self, slot: SlotIndex) -> usize {
        assert!(slot.j.unsigned_abs() as usize <= self.n_max, "slot {slot} out of range for n_max = {}", self.n_max);
        slot.linear(self.n_max)
    }
}

fn check_same(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::LatticeMismatch(format!("n_max {a} vs {b}")))
    }
}

/// `a_s† v`.
pub fn apply_create(slot: SlotIndex, v: &FockVector) -> FockVector {
    let s = v.linear_slot(slot);
    v.map_basis(|b| create_bits(b, s))
}

/// `a_s v`.
pub fn apply_annihilate(slot: SlotIndex, v: &FockVector) -> FockVector {
    let s = v.linear_slot(slot);
    v.map_basis(|b| annihilate_bits(b, s))
}

/// `⟨v|w⟩`, conjugate-linear in `v`.
pub fn inner(v: &FockVector, w: &FockVector) -> Result<Complex64> {
    check_same(v.n_max, w.n_max)?;
    let (small, large, conj_small) = if v.amps.len() <= w.amps.len() { (v, w, true) } else { (w, v, false) };
    let mut acc = Complex64::new(0.0, 0.0);
    for (b, a) in &small.amps {
        if let Some(c) = large.amps.get(b) {
            acc += if conj_small { a.conj() * c } else { c.conj() * a };
        }
    }
    Ok(acc)
}
