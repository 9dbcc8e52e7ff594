//! Normal-ordered polynomials in fermionic ladder operators.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{self, slot_count, FockVector, SlotIndex};

/// One ladder operator acting on a linear slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ladder {
    pub slot: u16,
    pub dagger: bool,
}

impl Ladder {
    pub fn create(slot: usize) -> Self {
        Self { slot: slot as u16, dagger: true }
    }

    pub fn annihilate(slot: usize) -> Self {
        Self { slot: slot as u16, dagger: false }
    }
}

/// Canonical monomial shape: creators strictly ascending, annihilators
/// strictly descending, creators to the left.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    pub creators: Vec<u16>,
    pub annihilators: Vec<u16>,
}

impl Signature {
    pub fn scalar() -> Self {
        Self { creators: Vec::new(), annihilators: Vec::new() }
    }

    pub fn is_scalar(&self) -> bool {
        self.creators.is_empty() && self.annihilators.is_empty()
    }

    pub fn adjoint(&self) -> Self {
        Self {
            creators: self.annihilators.iter().rev().copied().collect(),
            annihilators: self.creators.iter().rev().copied().collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.creators.len() + self.annihilators.len()
    }
}

/// A monomial with its coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeMonomial {
    pub coeff: Complex64,
    pub creators: Vec<SlotIndex>,
    pub annihilators: Vec<SlotIndex>,
}

/// Sum of normal-ordered monomials with an explicit c-number part.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeOperator {
    n_max: usize,
    terms: BTreeMap<Signature, Complex64>,
}

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

impl ModeOperator {
    pub fn zero(n_max: usize) -> Self {
        Self { n_max, terms: BTreeMap::new() }
    }

    pub fn scalar(n_max: usize, c: Complex64) -> Self {
        let mut op = Self::zero(n_max);
        op.add_term(Signature::scalar(), c);
        op
    }

    pub fn create(n_max: usize, slot: SlotIndex) -> Self {
        Self::from_word(n_max, Complex64::new(1.0, 0.0), &[Ladder::create(slot.linear(n_max))])
    }

    pub fn annihilate(n_max: usize, slot: SlotIndex) -> Self {
        Self::from_word(n_max, Complex64::new(1.0, 0.0), &[Ladder::annihilate(slot.linear(n_max))])
    }

    /// `a_s† a_s`.
    pub fn number(n_max: usize, slot: SlotIndex) -> Self {
        let s = slot.linear(n_max);
        Self::from_word(n_max, Complex64::new(1.0, 0.0), &[Ladder::create(s), Ladder::annihilate(s)])
    }

    /// Normal-orders `coeff · w₀ w₁ … w_k` (leftmost acts last).
    pub fn from_word(n_max: usize, coeff: Complex64, word: &[Ladder]) -> Self {
        let mut op = Self::zero(n_max);
        op.push_word(coeff, word);
        op
    }

    pub(crate) fn push_word(&mut self, coeff: Complex64, word: &[Ladder]) {
        if coeff == ZERO {
            return;
        }
        let limit = slot_count(self.n_max);
        debug_assert!(word.iter().all(|l| (l.slot as usize) < limit));
        normal_order(word.to_vec(), coeff, &mut |sig, c| self.add_term(sig, c));
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn add_term(&mut self, sig: Signature, c: Complex64) {
        if c == ZERO {
            return;
        }
        let entry = self.terms.entry(sig.clone()).or_insert(ZERO);
        *entry += c;
        if *entry == ZERO {
            self.terms.remove(&sig);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Signature, Complex64)> {
        self.terms.iter().map(|(s, &c)| (s, c))
    }

    pub fn coefficient(&self, sig: &Signature) -> Complex64 {
        self.terms.get(sig).copied().unwrap_or(ZERO)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn monomials(&self) -> Vec<ModeMonomial> {
        self.terms
            .iter()
            .map(|(sig, &coeff)| ModeMonomial {
                coeff,
                creators: sig.creators.iter().map(|&s| SlotIndex::from_linear(s as usize, self.n_max)).collect(),
                annihilators: sig
                    .annihilators
                    .iter()
                    .map(|&s| SlotIndex::from_linear(s as usize, self.n_max))
                    .collect(),
            })
            .collect()
    }

    /// The c-number part, which is the vacuum expectation value.
    pub fn c_number(&self) -> Complex64 {
        self.coefficient(&Signature::scalar())
    }

    pub fn without_c_number(&self) -> Self {
        let mut out = self.clone();
        out.terms.remove(&Signature::scalar());
        out
    }

    fn check(&self, other: &ModeOperator) -> Result<()> {
        if self.n_max == other.n_max {
            Ok(())
        } else {
            Err(Error::LatticeMismatch(format!("operator n_max {} vs {}", self.n_max, other.n_max)))
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = Self::zero(self.n_max);
        for (sig, &v) in &self.terms {
            out.add_term(sig.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &ModeOperator) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (sig, &v) in &other.terms {
            out.add_term(sig.clone(), v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &ModeOperator) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.n_max);
        for (sig, &v) in &self.terms {
            out.add_term(sig.adjoint(), v.conj());
        }
        out
    }

    /// Largest coefficient-wise difference `max |A − B|`.
    pub fn max_abs_diff(&self, other: &ModeOperator) -> Result<f64> {
        self.check(other)?;
        let mut worst: f64 = 0.0;
        for (sig, &v) in &self.terms {
            worst = worst.max((v - other.coefficient(sig)).norm());
        }
        for (sig, &v) in &other.terms {
            if !self.terms.contains_key(sig) {
                worst = worst.max(v.norm());
            }
        }
        Ok(worst)
    }

    pub fn max_coefficient(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Coefficient-wise hermiticity defect `max |A − A†|`.
    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint()).expect("same lattice")
    }
}

/// Exact normal-ordered product.
pub fn op_mul(a: &ModeOperator, b: &ModeOperator) -> Result<ModeOperator> {
    a.check(b)?;
    let mut out = ModeOperator::zero(a.n_max);
    let mut word = Vec::new();
    for (sa, &ca) in &a.terms {
        for (sb, &cb) in &b.terms {
            word.clear();
            word.extend(sa.creators.iter().map(|&s| Ladder { slot: s, dagger: true }));
            word.extend(sa.annihilators.iter().map(|&s| Ladder { slot: s, dagger: false }));
            word.extend(sb.creators.iter().map(|&s| Ladder { slot: s, dagger: true }));
            word.extend(sb.annihilators.iter().map(|&s| Ladder { slot: s, dagger: false }));
            out.push_word(ca * cb, &word);
        }
    }
    Ok(out)
}

/// `AB − BA`.
pub fn commutator(a: &ModeOperator, b: &ModeOperator) -> Result<ModeOperator> {
    op_mul(a, b)?.sub(&op_mul(b, a)?)
}

/// `A v`.
pub fn apply(a: &ModeOperator, v: &FockVector) -> Result<FockVector> {
    if a.n_max != v.n_max() {
        return Err(Error::LatticeMismatch(format!("operator n_max {} vs vector n_max {}", a.n_max, v.n_max())));
    }
    let mut out = FockVector::zero(v.n_max());
    for (sig, &c) in &a.terms {
        'basis: for (bits, amp) in v.iter() {
            let mut state = bits;
            let mut sign = 1.0;
            for &s in sig.annihilators.iter().rev() {
                match fock::annihilate_bits(state, s as usize) {
                    Some((nb, sg)) => {
                        state = nb;
                        sign *= sg;
                    }
                    None => continue 'basis,
                }
            }
            for &s in sig.creators.iter().rev() {
                match fock::create_bits(state, s as usize) {
                    Some((nb, sg)) => {
                        state = nb;
                        sign *= sg;
                    }
                    None => continue 'basis,
                }
            }
            out.add_amplitude(state, amp * c * sign);
        }
    }
    Ok(out)
}

/// `⟨0|A|0⟩`, read off as the c-number part.
pub fn vev(a: &ModeOperator) -> Complex64 {
    a.c_number()
}

/// `⟨v|A|v⟩`.
pub fn expectation(v: &FockVector, a: &ModeOperator) -> Result<Complex64> {
    fock::inner(v, &apply(a, v)?)
}

/// Wick reordering of a ladder word into canonical monomials.
fn normal_order(mut word: Vec<Ladder>, coeff: Complex64, emit: &mut impl FnMut(Signature, Complex64)) {
    // a_s a_t† = δ_st − a_t† a_s
    if let Some(i) = word.windows(2).position(|w| !w[0].dagger && w[1].dagger) {
        if word[i].slot == word[i + 1].slot {
            let mut contracted = word.clone();
            contracted.drain(i..i + 2);
            normal_order(contracted, coeff, emit);
        }
        word.swap(i, i + 1);
        normal_order(word, -coeff, emit);
        return;
    }
    let split = word.iter().position(|l| !l.dagger).unwrap_or(word.len());
    let mut creators: Vec<u16> = word[..split].iter().map(|l| l.slot).collect();
    let mut annihilators: Vec<u16> = word[split..].iter().map(|l| l.slot).collect();
    let Some(s1) = sort_with_sign(&mut creators, |a, b| a < b) else { return };
    let Some(s2) = sort_with_sign(&mut annihilators, |a, b| a > b) else { return };
    emit(Signature { creators, annihilators }, coeff * (s1 * s2));
}

/// Bubble sort into strict order, returning the permutation sign or `None`
/// when a slot repeats (Pauli exclusion).
fn sort_with_sign(v: &mut [u16], before: impl Fn(u16, u16) -> bool) -> Option<f64> {
    let mut sign = 1.0;
    for i in 0..v.len() {
        for k in 0..v.len() - 1 - i {
            if v[k] == v[k + 1] {
                return None;
            }
            if !before(v[k], v[k + 1]) {
                v.swap(k, k + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(sign)
}

impl fmt::Display for ModeOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (sig, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:.6}{:+.6}i)", c.re, c.im)?;
            for &s in &sig.creators {
                write!(f, " {}†", SlotIndex::from_linear(s as usize, self.n_max))?;
            }
            for &s in &sig.annihilators {
                write!(f, " {}", SlotIndex::from_linear(s as usize, self.n_max))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{apply_annihilate, apply_create};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    const N: usize = 1;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn dense(op: &ModeOperator) -> Vec<Vec<Complex64>> {
        let dim = 1usize << slot_count(op.n_max());
        let mut m = vec![vec![ZERO; dim]; dim];
        #[allow(clippy::needless_range_loop)]
        for col in 0..dim {
            let out = apply(op, &FockVector::basis(op.n_max(), col as u128)).unwrap();
            for (row, a) in out.iter() {
                m[row as usize][col] = a;
            }
        }
        m
    }

    fn dense_mul(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
        let n = a.len();
        let mut out = vec![vec![ZERO; n]; n];
        for i in 0..n {
            for k in 0..n {
                if a[i][k] == ZERO {
                    continue;
                }
                for j in 0..n {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
        out
    }

    fn max_dense_diff(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> f64 {
        a.iter().zip(b).flat_map(|(r, s)| r.iter().zip(s).map(|(x, y)| (x - y).norm())).fold(0.0, f64::max)
    }

    fn random_bilinear(rng: &mut StdRng) -> ModeOperator {
        let slots = slot_count(N);
        let mut op = ModeOperator::zero(N);
        for s in 0..slots {
            for t in 0..slots {
                if rng.gen_bool(0.5) {
                    let coeff = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                    let word = match rng.gen_range(0..3) {
                        0 => [Ladder::create(s), Ladder::annihilate(t)],
                        1 => [Ladder::annihilate(s), Ladder::create(t)],
                        _ => [Ladder::annihilate(s), Ladder::annihilate(t)],
                    };
                    op.push_word(coeff, &word);
                }
            }
        }
        op
    }

    #[test]
    fn car_swap() {
        let s = SlotIndex::electron(0);
        let a = ModeOperator::annihilate(N, s);
        let ad = ModeOperator::create(N, s);
        let prod = op_mul(&a, &ad).unwrap();
        let expect = ModeOperator::scalar(N, c(1.0, 0.0)).sub(&ModeOperator::number(N, s)).unwrap();
        assert_eq!(prod, expect);
        assert_eq!(vev(&op_mul(&ad, &a).unwrap()), ZERO);
        assert!(op_mul(&ad, &ad).unwrap().is_empty());
    }

    #[test]
    fn commutator_examples() {
        let s = SlotIndex::positron(-1);
        let n = ModeOperator::number(N, s);
        assert!(commutator(&n, &n).unwrap().is_empty());
        let ad = ModeOperator::create(N, s);
        assert_eq!(commutator(&n, &ad).unwrap(), ad);
    }

    #[test]
    fn product_matches_dense_composition() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..3 {
            let a = random_bilinear(&mut rng);
            let b = random_bilinear(&mut rng);
            let cc = random_bilinear(&mut rng);
            let ab = op_mul(&a, &b).unwrap();
            assert!(max_dense_diff(&dense(&ab), &dense_mul(&dense(&a), &dense(&b))) < 1e-12);

            let left = op_mul(&ab, &cc).unwrap();
            let right = op_mul(&a, &op_mul(&b, &cc).unwrap()).unwrap();
            assert!(left.max_abs_diff(&right).unwrap() < 1e-12);
            assert!(max_dense_diff(&dense(&left), &dense_mul(&dense(&ab), &dense(&cc))) < 1e-12);
        }
    }

    #[test]
    fn adjoint_matches_dense_conjugate_transpose() {
        let mut rng = StdRng::seed_from_u64(3);
        let a = random_bilinear(&mut rng);
        let d = dense(&a);
        let dt = dense(&a.adjoint());
        for i in 0..d.len() {
            for j in 0..d.len() {
                assert!((d[i][j].conj() - dt[j][i]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn apply_agrees_with_fock_ladders() {
        let cfg = crate::LatticeConfig::new(1.0, 1.0, N).unwrap();
        let vac = FockVector::vacuum(&cfg);
        let e = SlotIndex::electron(1);
        let p = SlotIndex::positron(0);
        let word = ModeOperator::from_word(N, c(1.0, 0.0), &[Ladder::create(e.linear(N)), Ladder::create(p.linear(N))]);
        let via_op = apply(&word, &vac).unwrap();
        let via_fock = apply_create(e, &apply_create(p, &vac));
        assert_eq!(via_op, via_fock);
        let back = apply(&ModeOperator::annihilate(N, p), &via_op).unwrap();
        assert_eq!(back, apply_annihilate(p, &via_fock));
    }

    #[test]
    fn expectation_on_vacuum_equals_vev() {
        let mut rng = StdRng::seed_from_u64(5);
        let cfg = crate::LatticeConfig::new(1.0, 1.0, N).unwrap();
        let vac = FockVector::vacuum(&cfg);
        for _ in 0..10 {
            let a = op_mul(&random_bilinear(&mut rng), &random_bilinear(&mut rng)).unwrap();
            let e = expectation(&vac, &a).unwrap();
            assert!((e - vev(&a)).norm() < 1e-12);
        }
    }

    #[test]
    fn lattice_mismatch() {
        let a = ModeOperator::zero(1);
        let b = ModeOperator::zero(2);
        assert!(op_mul(&a, &b).is_err());
        assert!(commutator(&a, &b).is_err());
        assert!(apply(&a, &FockVector::basis(2, 0)).is_err());
    }
}
