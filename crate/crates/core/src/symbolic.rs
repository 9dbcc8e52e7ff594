//! Formal continuum algebra of field bilinears `ψ†(x)·M·ψ(y)`.
//!
//! Points are a base variable plus an integer multiple of the formal shift
//! `γε`. Terms that sit under the symmetrizing average `½ Σ_{γ=±1}` carry a
//! flag. Smearing functions appear only as placeholders `f(x)` and `f'(x)`;
//! they are never evaluated.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Z,
    Zp,
    Zpp,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::Z => "z",
            Var::Zp => "z'",
            Var::Zpp => "z''",
        })
    }
}

/// `base + shift·γε`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymPoint {
    pub base: Var,
    pub shift: i32,
}

impl SymPoint {
    pub fn at(base: Var) -> Self {
        Self { base, shift: 0 }
    }

    pub fn shifted(base: Var, shift: i32) -> Self {
        Self { base, shift }
    }
}

fn fmt_shift(f: &mut fmt::Formatter<'_>, shift: i32) -> fmt::Result {
    match shift {
        0 => Ok(()),
        1 => write!(f, "+γε"),
        -1 => write!(f, "-γε"),
        k => write!(f, "{k:+}γε"),
    }
}

impl fmt::Display for SymPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        fmt_shift(f, self.shift)
    }
}

/// 2×2 matrix with Gaussian-integer entries, stored as `(re, im)` pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpinMatrix(pub [[(i64, i64); 2]; 2]);

impl SpinMatrix {
    pub const IDENTITY: SpinMatrix = SpinMatrix([[(1, 0), (0, 0)], [(0, 0), (1, 0)]]);
    pub const SIGMA_X: SpinMatrix = SpinMatrix([[(0, 0), (1, 0)], [(1, 0), (0, 0)]]);
    pub const SIGMA_Z: SpinMatrix = SpinMatrix([[(1, 0), (0, 0)], [(0, 0), (-1, 0)]]);

    pub fn mul(&self, other: &SpinMatrix) -> SpinMatrix {
        let mut out = [[(0i64, 0i64); 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, slot) in row.iter_mut().enumerate() {
                for k in 0..2 {
                    let (a, b) = (self.0[r][k], other.0[k][c]);
                    slot.0 += a.0 * b.0 - a.1 * b.1;
                    slot.1 += a.0 * b.1 + a.1 * b.0;
                }
            }
        }
        SpinMatrix(out)
    }

    fn name(&self) -> Option<&'static str> {
        let x = Self::SIGMA_X;
        let z = Self::SIGMA_Z;
        [(Self::IDENTITY, "1"), (x, "σx"), (z, "σz"), (x.mul(&z), "σxσz"), (z.mul(&x), "σzσx")]
            .into_iter()
            .find(|(m, _)| m == self)
            .map(|(_, n)| n)
    }
}

impl fmt::Display for SpinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.name() {
            return f.write_str(n);
        }
        let e = |(re, im): (i64, i64)| if im == 0 { format!("{re}") } else { format!("{re}{im:+}i") };
        write!(f, "[[{}, {}], [{}, {}]]", e(self.0[0][0]), e(self.0[0][1]), e(self.0[1][0]), e(self.0[1][1]))
    }
}

/// `ψ†(left) · matrix · ψ(right)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bilinear {
    pub left: SymPoint,
    pub matrix: SpinMatrix,
    pub right: SymPoint,
}

impl Bilinear {
    pub fn new(left: SymPoint, matrix: SpinMatrix, right: SymPoint) -> Self {
        Self { left, matrix, right }
    }

    fn map_points(&self, f: impl Fn(SymPoint) -> SymPoint) -> Self {
        Self { left: f(self.left), matrix: self.matrix, right: f(self.right) }
    }
}

impl fmt::Display for Bilinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.matrix == SpinMatrix::IDENTITY {
            write!(f, "ψ†({})ψ({})", self.left, self.right)
        } else {
            write!(f, "ψ†({}){}ψ({})", self.left, self.matrix, self.right)
        }
    }
}

/// `δ(lo − hi + shift·γε)`, normalized so `lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeltaFactor {
    pub lo: Var,
    pub hi: Var,
    pub shift: i32,
}

impl DeltaFactor {
    /// `δ(x − y)`, using evenness of δ to normalize orientation.
    pub fn between(x: SymPoint, y: SymPoint) -> Self {
        let shift = x.shift - y.shift;
        if x.base <= y.base {
            Self { lo: x.base, hi: y.base, shift }
        } else {
            Self { lo: y.base, hi: x.base, shift: -shift }
        }
    }

    fn involves(&self, v: Var) -> bool {
        self.lo == v || self.hi == v
    }

    /// The point that `v` is pinned to, if `v` appears on one side only.
    fn root_for(&self, v: Var) -> Option<SymPoint> {
        match (self.lo == v, self.hi == v) {
            (true, false) => Some(SymPoint::shifted(self.hi, -self.shift)),
            (false, true) => Some(SymPoint::shifted(self.lo, self.shift)),
            _ => None,
        }
    }

    fn map_points(&self, f: impl Fn(SymPoint) -> SymPoint) -> Self {
        let lo = f(SymPoint::shifted(self.lo, self.shift));
        let hi = f(SymPoint::at(self.hi));
        Self::between(lo, hi)
    }
}

impl fmt::Display for DeltaFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "δ({}-{}", self.lo, self.hi)?;
        fmt_shift(f, self.shift)?;
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Smearing {
    F,
    DF,
}

/// Placeholder `f(point)` or `f'(point)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormalFactor {
    pub kind: Smearing,
    pub point: SymPoint,
}

impl FormalFactor {
    pub fn f(point: SymPoint) -> Self {
        Self { kind: Smearing::F, point }
    }

    pub fn df(point: SymPoint) -> Self {
        Self { kind: Smearing::DF, point }
    }
}

impl fmt::Display for FormalFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Smearing::F => write!(f, "f({})", self.point),
            Smearing::DF => write!(f, "f'({})", self.point),
        }
    }
}

/// Structural part of a term; coefficients live in [`SymExpr`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymTerm {
    pub gamma_average: bool,
    pub factors: Vec<FormalFactor>,
    pub deltas: Vec<DeltaFactor>,
    pub bilinear: Option<Bilinear>,
}

impl SymTerm {
    fn canonical(mut self) -> Self {
        self.factors.sort();
        self.deltas.sort();
        self
    }

    fn map_points(&self, f: impl Fn(SymPoint) -> SymPoint + Copy) -> Self {
        SymTerm {
            gamma_average: self.gamma_average,
            factors: self.factors.iter().map(|x| FormalFactor { kind: x.kind, point: f(x.point) }).collect(),
            deltas: self.deltas.iter().map(|d| d.map_points(f)).collect(),
            bilinear: self.bilinear.map(|b| b.map_points(f)),
        }
        .canonical()
    }
}

/// Canonical sum of terms; equal expressions compare equal structurally.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SymExpr {
    terms: BTreeMap<SymTerm, Complex64>,
}

impl SymExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn bilinear(b: Bilinear) -> Self {
        let mut e = Self::zero();
        e.push(
            SymTerm { gamma_average: false, factors: vec![], deltas: vec![], bilinear: Some(b) },
            Complex64::new(1.0, 0.0),
        );
        e
    }

    pub fn push(&mut self, term: SymTerm, coeff: Complex64) {
        let term = term.canonical();
        let entry = self.terms.entry(term.clone()).or_default();
        *entry += coeff;
        if *entry == Complex64::new(0.0, 0.0) {
            self.terms.remove(&term);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SymTerm, Complex64)> {
        self.terms.iter().map(|(t, &c)| (t, c))
    }

    pub fn add(&self, other: &SymExpr) -> SymExpr {
        let mut out = self.clone();
        for (t, c) in other.terms() {
            out.push(t.clone(), c);
        }
        out
    }

    pub fn scale(&self, k: Complex64) -> SymExpr {
        let mut out = SymExpr::zero();
        for (t, c) in self.terms() {
            out.push(t.clone(), c * k);
        }
        out
    }

    /// Puts every term under `½ Σ_γ`.
    pub fn gamma_average(&self) -> SymExpr {
        let mut out = SymExpr::zero();
        for (t, c) in self.terms() {
            let mut t = t.clone();
            t.gamma_average = true;
            out.push(t, c);
        }
        out
    }

    /// Multiplies each term by smearing placeholders.
    pub fn times_factors(&self, factors: &[FormalFactor]) -> SymExpr {
        let mut out = SymExpr::zero();
        for (t, c) in self.terms() {
            let mut t = t.clone();
            t.factors.extend_from_slice(factors);
            out.push(t, c);
        }
        out
    }

    /// Renames `var → var + shift·γε` in every term, the change of variables
    /// allowed under `∫ d var` on a periodic domain.
    pub fn translate(&self, var: Var, shift: i32) -> SymExpr {
        let mut out = SymExpr::zero();
        for (t, c) in self.terms() {
            out.push(t.map_points(|p| if p.base == var { SymPoint::shifted(var, p.shift + shift) } else { p }), c);
        }
        out
    }

    /// Under `∫ d var`, translates each term so that the bilinear's
    /// right-hand point sits at `var` unshifted.
    pub fn recentre(&self, var: Var) -> SymExpr {
        let mut out = SymExpr::zero();
        for (t, c) in self.terms() {
            let shift = match t.bilinear {
                Some(b) if b.right.base == var => -b.right.shift,
                _ => 0,
            };
            let moved = t.map_points(|p| if p.base == var { SymPoint::shifted(var, p.shift + shift) } else { p });
            out.push(moved, c);
        }
        out
    }
}

fn fmt_coeff(c: Complex64) -> String {
    match (c.re, c.im) {
        (re, 0.0) => format!("{re}"),
        (0.0, im) => match im {
            1.0 => "i".into(),
            -1.0 => "-i".into(),
            _ => format!("{im}i"),
        },
        (re, im) => format!("({re}{im:+}i)"),
    }
}

impl fmt::Display for SymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (t, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, "\n+ ")?;
            }
            write!(f, "{}", fmt_coeff(*c))?;
            if t.gamma_average {
                write!(f, " ½Σγ")?;
            }
            for x in &t.factors {
                write!(f, " {x}")?;
            }
            for d in &t.deltas {
                write!(f, " {d}")?;
            }
            match &t.bilinear {
                Some(b) => write!(f, " {b}")?,
                None => write!(f, " 1")?,
            }
        }
        Ok(())
    }
}

/// `[ψ†(x_A)M_Aψ(y_A), ψ†(x_B)M_Bψ(y_B)]
///   = ψ†(x_A)M_AM_Bψ(y_B)δ(y_A − x_B) − ψ†(x_B)M_BM_Aψ(y_A)δ(y_B − x_A)`.
pub fn commute_bilinears(a: &Bilinear, b: &Bilinear) -> SymExpr {
    let mut out = SymExpr::zero();
    out.push(
        SymTerm {
            gamma_average: false,
            factors: vec![],
            deltas: vec![DeltaFactor::between(a.right, b.left)],
            bilinear: Some(Bilinear::new(a.left, a.matrix.mul(&b.matrix), b.right)),
        },
        Complex64::new(1.0, 0.0),
    );
    out.push(
        SymTerm {
            gamma_average: false,
            factors: vec![],
            deltas: vec![DeltaFactor::between(b.right, a.left)],
            bilinear: Some(Bilinear::new(b.left, b.matrix.mul(&a.matrix), a.right)),
        },
        Complex64::new(-1.0, 0.0),
    );
    out
}

/// `∫ g(var) δ(… var …) d var = g(root)` applied termwise.
pub fn integrate_delta(e: &SymExpr, var: Var) -> Result<SymExpr> {
    let mut out = SymExpr::zero();
    for (t, c) in e.terms() {
        let found = t.deltas.iter().enumerate().find_map(|(i, d)| d.root_for(var).map(|r| (i, r)));
        let Some((idx, root)) = found else {
            return Err(Error::MissingDelta { var: var.to_string(), term: format!("{}", single(t, c)) });
        };
        let mut rest = t.clone();
        rest.deltas.remove(idx);
        let substituted =
            rest.map_points(|p| if p.base == var { SymPoint::shifted(root.base, root.shift + p.shift) } else { p });
        debug_assert!(!substituted.deltas.iter().any(|d| d.involves(var)));
        out.push(substituted, c);
    }
    Ok(out)
}

fn single(t: &SymTerm, c: Complex64) -> SymExpr {
    let mut e = SymExpr::zero();
    e.push(t.clone(), c);
    e
}

/// One recorded step of a derivation.
#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    pub label: &'static str,
    pub expr: SymExpr,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Derivation {
    pub steps: Vec<Step>,
}

impl Derivation {
    pub fn result(&self) -> &SymExpr {
        &self.steps.last().expect("derivation has steps").expr
    }

    /// Stable text transcript.
    pub fn transcript(&self) -> String {
        let mut s = String::new();
        for (k, step) in self.steps.iter().enumerate() {
            s.push_str(&format!("[{}] {}\n{}\n", k + 1, step.label, step.expr));
        }
        s
    }
}

/// Which current enters `∬ f(z) f'(z') [ρ_M(z), J(z')] dz' dz`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurrentForm {
    /// `ψ†(z')Mψ(z')`.
    Local,
    /// `½ Σ_γ ψ†(z'+γε)Mψ(z')`.
    Split,
}

/// Formal `−i ⟨0| ∬ f(z) f'(z') [ψ†(z)M_Aψ(z), J_B(z')] dz' dz |0⟩`:
/// commute, smear, integrate the delta over `z'`, then translate each term
/// in `z` so that the bilinears line up.
pub fn derive_i1(form: CurrentForm, charge_matrix: SpinMatrix, current_matrix: SpinMatrix) -> Result<Derivation> {
    let z = SymPoint::at(Var::Z);
    let zp = SymPoint::at(Var::Zp);
    let charge = Bilinear::new(z, charge_matrix, z);
    let mut steps = Vec::new();

    let commuted = match form {
        CurrentForm::Local => commute_bilinears(&charge, &Bilinear::new(zp, current_matrix, zp)),
        CurrentForm::Split => {
            commute_bilinears(&charge, &Bilinear::new(SymPoint::shifted(Var::Zp, 1), current_matrix, zp))
                .gamma_average()
        }
    };
    steps.push(Step { label: "commutator of charge density and current", expr: commuted.clone() });

    let smeared = commuted.times_factors(&[FormalFactor::f(z), FormalFactor::df(zp)]).scale(Complex64::new(0.0, -1.0));
    steps.push(Step { label: "smear with -i f(z) f'(z')", expr: smeared.clone() });

    let integrated = integrate_delta(&smeared, Var::Zp)?;
    steps.push(Step { label: "integrate over z'", expr: integrated.clone() });

    let aligned = integrated.recentre(Var::Z);
    steps.push(Step { label: "translate z under the integral", expr: aligned });
    Ok(Derivation { steps })
}

/// The unsplit charge–current pipeline; canonicalizes to zero.
pub fn derive_i1_formal() -> SymExpr {
    derive_i1(CurrentForm::Local, SpinMatrix::IDENTITY, SpinMatrix::SIGMA_X)
        .expect("every commutator term carries a delta in z'")
        .result()
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> SymPoint {
        SymPoint::at(Var::Z)
    }
    fn zp() -> SymPoint {
        SymPoint::at(Var::Zp)
    }
    fn zpp() -> SymPoint {
        SymPoint::at(Var::Zpp)
    }
    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    fn term(deltas: Vec<DeltaFactor>, b: Bilinear) -> SymTerm {
        SymTerm { gamma_average: false, factors: vec![], deltas, bilinear: Some(b) }
    }

    #[test]
    fn pauli_products() {
        let x = SpinMatrix::SIGMA_X;
        let zz = SpinMatrix::SIGMA_Z;
        assert_eq!(x.mul(&x), SpinMatrix::IDENTITY);
        assert_eq!(zz.mul(&zz), SpinMatrix::IDENTITY);
        assert_ne!(x.mul(&zz), zz.mul(&x));
        assert_eq!(x.mul(&zz).to_string(), "σxσz");
    }

    #[test]
    fn charge_current_relation() {
        let a = Bilinear::new(z(), SpinMatrix::IDENTITY, z());
        let b = Bilinear::new(zp(), SpinMatrix::SIGMA_X, zpp());
        let got = commute_bilinears(&a, &b);
        let mut expect = SymExpr::zero();
        expect.push(term(vec![DeltaFactor::between(z(), zp())], Bilinear::new(z(), SpinMatrix::SIGMA_X, zpp())), one());
        expect
            .push(term(vec![DeltaFactor::between(z(), zpp())], Bilinear::new(zp(), SpinMatrix::SIGMA_X, z())), -one());
        assert_eq!(got, expect);
    }

    #[test]
    fn self_commutator_vanishes() {
        let a = Bilinear::new(z(), SpinMatrix::IDENTITY, z());
        assert!(commute_bilinears(&a, &a).is_zero());
    }

    #[test]
    fn split_current_commutator() {
        let a = Bilinear::new(z(), SpinMatrix::IDENTITY, z());
        let b = Bilinear::new(SymPoint::shifted(Var::Zp, 1), SpinMatrix::SIGMA_X, zp());
        let got = commute_bilinears(&a, &b).gamma_average();
        let mut expect = SymExpr::zero();
        let avg = |mut t: SymTerm| {
            t.gamma_average = true;
            t
        };
        expect.push(
            avg(term(
                vec![DeltaFactor::between(z(), SymPoint::shifted(Var::Zp, 1))],
                Bilinear::new(z(), SpinMatrix::SIGMA_X, zp()),
            )),
            one(),
        );
        expect.push(
            avg(term(
                vec![DeltaFactor::between(z(), zp())],
                Bilinear::new(SymPoint::shifted(Var::Zp, 1), SpinMatrix::SIGMA_X, z()),
            )),
            -one(),
        );
        assert_eq!(got, expect);
        assert_eq!(got.to_string(), "1 ½Σγ δ(z-z'-γε) ψ†(z)σxψ(z')\n+ -1 ½Σγ δ(z-z') ψ†(z'+γε)σxψ(z)");
    }

    #[test]
    fn antisymmetry() {
        let mats = [SpinMatrix::IDENTITY, SpinMatrix::SIGMA_X, SpinMatrix::SIGMA_Z];
        let pts = [z(), zp(), SymPoint::shifted(Var::Zp, 1), zpp()];
        for ma in mats {
            for mb in mats {
                for (i, &x) in pts.iter().enumerate() {
                    let y = pts[(i + 1) % pts.len()];
                    let a = Bilinear::new(x, ma, y);
                    let b = Bilinear::new(y, mb, pts[(i + 2) % pts.len()]);
                    let sum = commute_bilinears(&a, &b).add(&commute_bilinears(&b, &a));
                    assert!(sum.is_zero());
                }
            }
        }
    }

    #[test]
    fn commuting_matrices_at_coincident_points_cancel() {
        for (ma, mb) in [(SpinMatrix::IDENTITY, SpinMatrix::SIGMA_X), (SpinMatrix::SIGMA_Z, SpinMatrix::SIGMA_Z)] {
            let a = Bilinear::new(z(), ma, z());
            let b = Bilinear::new(z(), mb, z());
            assert!(commute_bilinears(&a, &b).is_zero());
        }
    }

    #[test]
    fn delta_integration() {
        let mut e = SymExpr::zero();
        e.push(term(vec![DeltaFactor::between(z(), zp())], Bilinear::new(z(), SpinMatrix::SIGMA_X, zp())), one());
        let got = integrate_delta(&e, Var::Zp).unwrap();
        assert_eq!(got, SymExpr::bilinear(Bilinear::new(z(), SpinMatrix::SIGMA_X, z())));

        let mut e = SymExpr::zero();
        e.push(
            term(
                vec![DeltaFactor::between(z(), SymPoint::shifted(Var::Zp, 1))],
                Bilinear::new(z(), SpinMatrix::SIGMA_X, zp()),
            ),
            one(),
        );
        let got = integrate_delta(&e, Var::Zp).unwrap();
        assert_eq!(got, SymExpr::bilinear(Bilinear::new(z(), SpinMatrix::SIGMA_X, SymPoint::shifted(Var::Z, -1))));
    }

    #[test]
    fn delta_integration_requires_delta() {
        let mut e = SymExpr::zero();
        e.push(SymTerm { gamma_average: false, factors: vec![], deltas: vec![], bilinear: None }, one());
        assert!(matches!(integrate_delta(&e, Var::Zp), Err(Error::MissingDelta { .. })));
    }

    #[test]
    fn formal_i1_is_zero() {
        let d = derive_i1(CurrentForm::Local, SpinMatrix::IDENTITY, SpinMatrix::SIGMA_X).unwrap();
        assert!(d.result().is_zero());
        assert!(!d.steps[0].expr.is_zero());
        assert!(derive_i1_formal().is_zero());
        assert_eq!(derive_i1_formal().to_string(), "0");
    }

    #[test]
    fn charge_charge_pipeline_is_zero() {
        let d = derive_i1(CurrentForm::Local, SpinMatrix::IDENTITY, SpinMatrix::IDENTITY).unwrap();
        assert!(d.result().is_zero());
    }

    #[test]
    fn split_pipeline_keeps_shifted_difference() {
        let d = derive_i1(CurrentForm::Split, SpinMatrix::IDENTITY, SpinMatrix::SIGMA_X).unwrap();
        let r = d.result();
        let shifted = SymPoint::shifted(Var::Z, 1);
        let b = Bilinear::new(shifted, SpinMatrix::SIGMA_X, z());
        let mk = |f_at: SymPoint| SymTerm {
            gamma_average: true,
            factors: vec![FormalFactor::f(f_at), FormalFactor::df(z())],
            deltas: vec![],
            bilinear: Some(b),
        };
        let mut expect = SymExpr::zero();
        expect.push(mk(shifted), Complex64::new(0.0, -1.0));
        expect.push(mk(z()), Complex64::new(0.0, 1.0));
        assert_eq!(r, &expect);
        assert_eq!(r.to_string(), "i ½Σγ f(z) f'(z) ψ†(z+γε)σxψ(z)\n+ -i ½Σγ f(z+γε) f'(z) ψ†(z+γε)σxψ(z)");
    }

    #[test]
    fn translation_round_trip() {
        let d = derive_i1(CurrentForm::Split, SpinMatrix::IDENTITY, SpinMatrix::SIGMA_X).unwrap();
        let e = d.result();
        assert_eq!(&e.translate(Var::Z, 2).translate(Var::Z, -2), e);
    }
}
