//! Field bilinears expanded in lattice modes.
//!
//! With `A_{+,j} = b_j` and `A_{−,j} = d_j†` the field is
//! `ψ(z) = Σ_a φ_a(z) A_a`, so every bilinear is a kernel over mode pairs:
//! `Σ_{ab} K_ab e^{i(p_b − p_a)z} A_a† A_b`. Position enters only through
//! that phase, and `∂_z` multiplies `K_ab` by `i(p_b − p_a)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{slot_count, SlotIndex};
use crate::lattice::{spinor, LatticeConfig, Mat2, ModeSpinor, Sign};
use crate::modeops::operator::{Ladder, ModeOperator};
use crate::trig::TrigPoly;

/// A `(λ, j)` field mode. Its linear index coincides with the Fock slot it
/// feeds: `λ = +1` ↔ electron `j`, `λ = −1` ↔ positron `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldMode {
    pub lambda: Sign,
    pub j: i64,
}

impl FieldMode {
    pub fn index(&self, n_max: usize) -> usize {
        self.slot().linear(n_max)
    }

    pub fn slot(&self) -> SlotIndex {
        match self.lambda {
            Sign::Positive => SlotIndex::electron(self.j),
            Sign::Negative => SlotIndex::positron(self.j),
        }
    }

    fn from_index(i: usize, n_max: usize) -> Self {
        let slot = SlotIndex::from_linear(i, n_max);
        let lambda = match slot.species {
            crate::fock::Species::Electron => Sign::Positive,
            crate::fock::Species::Positron => Sign::Negative,
        };
        Self { lambda, j: slot.j }
    }

    /// `A_a†` as a ladder operator.
    fn dagger(&self, n_max: usize) -> Ladder {
        let s = self.index(n_max);
        match self.lambda {
            Sign::Positive => Ladder::create(s),
            Sign::Negative => Ladder::annihilate(s),
        }
    }

    /// `A_a` as a ladder operator.
    fn plain(&self, n_max: usize) -> Ladder {
        let s = self.index(n_max);
        match self.lambda {
            Sign::Positive => Ladder::annihilate(s),
            Sign::Negative => Ladder::create(s),
        }
    }
}

/// All field modes with their spinors, in linear order.
#[derive(Debug, Clone)]
pub struct ModeTable {
    cfg: LatticeConfig,
    spinors: Vec<ModeSpinor>,
}

impl ModeTable {
    pub fn new(cfg: &LatticeConfig) -> Self {
        let n = cfg.n_max();
        let spinors = (0..slot_count(n))
            .map(|i| {
                let m = FieldMode::from_index(i, n);
                spinor(m.lambda, m.j, cfg).expect("index in range")
            })
            .collect();
        Self { cfg: *cfg, spinors }
    }

    pub fn config(&self) -> &LatticeConfig {
        &self.cfg
    }

    pub fn len(&self) -> usize {
        self.spinors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spinors.is_empty()
    }

    pub fn spinor(&self, i: usize) -> &ModeSpinor {
        &self.spinors[i]
    }

    pub fn mode(&self, i: usize) -> FieldMode {
        FieldMode::from_index(i, self.cfg.n_max())
    }
}

/// Coefficients `K_ab` of a z-local bilinear `Σ K_ab e^{i(p_b−p_a)z} A_a†A_b`.
#[derive(Debug, Clone)]
pub struct FieldKernel {
    cfg: LatticeConfig,
    dim: usize,
    amp: Vec<Complex64>,
}

impl FieldKernel {
    pub fn from_fn(table: &ModeTable, f: impl Fn(&ModeSpinor, &ModeSpinor) -> Complex64) -> Self {
        let dim = table.len();
        let mut amp = Vec::with_capacity(dim * dim);
        for a in 0..dim {
            for b in 0..dim {
                amp.push(f(table.spinor(a), table.spinor(b)));
            }
        }
        Self { cfg: *table.config(), dim, amp }
    }

    pub fn config(&self) -> &LatticeConfig {
        &self.cfg
    }

    pub fn get(&self, a: FieldMode, b: FieldMode) -> Complex64 {
        let n = self.cfg.n_max();
        self.amp[a.index(n) * self.dim + b.index(n)]
    }

    fn momentum_transfer(&self, a: usize, b: usize) -> f64 {
        let n = self.cfg.n_max();
        let ja = FieldMode::from_index(a, n).j;
        let jb = FieldMode::from_index(b, n).j;
        self.cfg.momentum(jb - ja)
    }

    /// Analytic `∂_z`.
    pub fn dz(&self) -> Self {
        let mut out = self.clone();
        for a in 0..self.dim {
            for b in 0..self.dim {
                out.amp[a * self.dim + b] *= Complex64::new(0.0, self.momentum_transfer(a, b));
            }
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        out.amp.iter_mut().for_each(|x| *x *= c);
        out
    }

    pub fn add(&self, other: &FieldKernel) -> Result<Self> {
        if !self.cfg.same_model(&other.cfg) {
            return Err(Error::LatticeMismatch("field kernels on different lattices".into()));
        }
        let mut out = self.clone();
        out.amp.iter_mut().zip(&other.amp).for_each(|(x, y)| *x += y);
        Ok(out)
    }

    /// `max_ab |K_ab − K'_ab|`.
    pub fn max_abs_diff(&self, other: &FieldKernel) -> Result<f64> {
        if !self.cfg.same_model(&other.cfg) {
            return Err(Error::LatticeMismatch("field kernels on different lattices".into()));
        }
        Ok(self.amp.iter().zip(&other.amp).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max))
    }

    /// Normal-ordered operator at position `z`.
    pub fn at(&self, z: f64) -> ModeOperator {
        let n = self.cfg.n_max();
        let mut op = ModeOperator::zero(n);
        for a in 0..self.dim {
            for b in 0..self.dim {
                let k = self.amp[a * self.dim + b];
                if k == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let phase = Complex64::from_polar(1.0, self.momentum_transfer(a, b) * z);
                let (ma, mb) = (FieldMode::from_index(a, n), FieldMode::from_index(b, n));
                op.push_word(k * phase, &[ma.dagger(n), mb.plain(n)]);
            }
        }
        op
    }

    /// `∫₀^L (operator at z) f(z) dz`, exact over box harmonics:
    /// the `(a, b)` phase pairs with harmonic `n = j_a − j_b`.
    pub fn smear(&self, f: &TrigPoly) -> Result<ModeOperator> {
        check_smearing(f, &self.cfg)?;
        let n = self.cfg.n_max();
        let l = self.cfg.box_length();
        let mut op = ModeOperator::zero(n);
        for a in 0..self.dim {
            for b in 0..self.dim {
                let (ma, mb) = (FieldMode::from_index(a, n), FieldMode::from_index(b, n));
                let c = f.coeff(ma.j - mb.j);
                let k = self.amp[a * self.dim + b] * c * l;
                op.push_word(k, &[ma.dagger(n), mb.plain(n)]);
            }
        }
        Ok(op)
    }
}

fn check_smearing(f: &TrigPoly, cfg: &LatticeConfig) -> Result<()> {
    let (lf, lc) = (f.box_length(), cfg.box_length());
    if (lf - lc).abs() > 1e-12 * lc {
        return Err(Error::LatticeMismatch(format!("smearing box length {lf} vs lattice box length {lc}")));
    }
    let limit = 2 * cfg.n_max();
    let top = f.max_harmonic();
    if top > limit {
        return Err(Error::HarmonicOutOfRange { n: top as i64, limit });
    }
    Ok(())
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Kernel of `ψ†(z + g) M ψ(z)`.
pub fn one_sided_kernel(table: &ModeTable, g: f64, m: &Mat2) -> FieldKernel {
    let inv_l = 1.0 / table.config().box_length();
    FieldKernel::from_fn(table, |ua, ub| Complex64::from_polar(inv_l, -ua.p * g) * ua.sandwich(m, ub))
}

/// Kernel of `ρ(z) = ψ†(z)ψ(z)`.
pub fn rho_kernel(table: &ModeTable) -> FieldKernel {
    one_sided_kernel(table, 0.0, &Mat2::identity())
}

/// Kernel of `J(z) = ψ†(z)σ_xψ(z)`.
pub fn current_kernel(table: &ModeTable) -> FieldKernel {
    one_sided_kernel(table, 0.0, &Mat2::sigma_x())
}

/// Kernel of the symmetrized split current `½ Σ_γ ψ†(z+γε)σ_xψ(z)`.
pub fn split_current_kernel(table: &ModeTable, eps: f64) -> FieldKernel {
    let sx = Mat2::sigma_x();
    one_sided_kernel(table, eps, &sx).add(&one_sided_kernel(table, -eps, &sx)).expect("same lattice").scale(c(0.5))
}

/// `e^{-iqz} ∫_{z−g}^{z} e^{iqz′} dz′`.
fn line_integral_factor(q: f64, g: f64, same_momentum: bool) -> Complex64 {
    if same_momentum {
        c(g)
    } else {
        (c(1.0) - Complex64::from_polar(1.0, -q * g)) / Complex64::new(0.0, q)
    }
}

/// Kernel of the current fixed by `[H₀,ε, ρ(z)] = i ∂_z J(z; ε)`:
/// `½ Σ_γ { ψ†(z+γε)σ_xψ(z) + i ∫_{z−γε}^{z} ψ†(z′+γε)(iσ_x∂_{z′} − mσ_z)ψ(z′) dz′ }`.
pub fn boulware_current_kernel(table: &ModeTable, eps: f64) -> FieldKernel {
    let cfg = *table.config();
    let inv_l = 1.0 / cfg.box_length();
    let sx = Mat2::sigma_x();
    let m = cfg.mass();
    FieldKernel::from_fn(table, |ua, ub| {
        // iσ_x ∂_{z′} on e^{i p_b z′} gives −p_b σ_x.
        let op = Mat2::sigma_x().scale(c(-ub.p)).add(&Mat2::sigma_z().scale(c(-m)));
        let q = ub.p - ua.p;
        let mut total = Complex64::new(0.0, 0.0);
        for gamma in [1.0, -1.0] {
            let g = gamma * eps;
            let shift = Complex64::from_polar(inv_l, -ua.p * g);
            let local = ua.sandwich(&sx, ub);
            let tail = Complex64::new(0.0, 1.0) * line_integral_factor(q, g, ua.j == ub.j) * ua.sandwich(&op, ub);
            total += shift * (local + tail);
        }
        total * 0.5
    })
}

/// Kernel of the explicit point-split commutator
/// `½ Σ_γ ( i(∂ψ†(z+γε)σ_xψ(z) + ψ†(z)σ_x∂ψ(z+γε)) + m(ψ†(z+γε)σ_zψ(z) − ψ†(z)σ_zψ(z+γε)) )`.
pub fn split_commutator_kernel(table: &ModeTable, eps: f64) -> FieldKernel {
    let cfg = *table.config();
    let inv_l = 1.0 / cfg.box_length();
    let (sx, sz) = (Mat2::sigma_x(), Mat2::sigma_z());
    let m = cfg.mass();
    FieldKernel::from_fn(table, |ua, ub| {
        let x = ua.sandwich(&sx, ub);
        let zz = ua.sandwich(&sz, ub);
        let mut total = Complex64::new(0.0, 0.0);
        for gamma in [1.0, -1.0] {
            let g = gamma * eps;
            let left = Complex64::from_polar(1.0, -ua.p * g);
            let right = Complex64::from_polar(1.0, ub.p * g);
            total += left * x * ua.p - right * x * ub.p + left * zz * m - right * zz * m;
        }
        total * (0.5 * inv_l)
    })
}

/// `ρ(z)`, including its vacuum c-number `(2n_max+1)/L`.
pub fn build_rho(z: f64, cfg: &LatticeConfig) -> ModeOperator {
    rho_kernel(&ModeTable::new(cfg)).at(z)
}

/// `J(z) = ψ†(z)σ_xψ(z)`.
pub fn build_j(z: f64, cfg: &LatticeConfig) -> ModeOperator {
    current_kernel(&ModeTable::new(cfg)).at(z)
}

/// `½ Σ_γ ψ†(z+γε)σ_xψ(z)`.
pub fn build_j_split(z: f64, eps: f64, cfg: &LatticeConfig) -> ModeOperator {
    split_current_kernel(&ModeTable::new(cfg), eps).at(z)
}

/// One-sided `ψ†(z+g)σ_xψ(z)`.
pub fn build_j_one_sided(z: f64, g: f64, cfg: &LatticeConfig) -> ModeOperator {
    one_sided_kernel(&ModeTable::new(cfg), g, &Mat2::sigma_x()).at(z)
}

pub fn build_j_boulware(z: f64, eps: f64, cfg: &LatticeConfig) -> ModeOperator {
    boulware_current_kernel(&ModeTable::new(cfg), eps).at(z)
}

/// `F = ∫₀^L ρ(z) f(z) dz`.
pub fn build_f(f: &TrigPoly, cfg: &LatticeConfig) -> Result<ModeOperator> {
    rho_kernel(&ModeTable::new(cfg)).smear(f)
}

/// Total charge `Q = ∫₀^L ρ(z) dz`.
pub fn build_charge(cfg: &LatticeConfig) -> ModeOperator {
    let one = TrigPoly::constant(cfg.box_length(), 1.0).expect("positive box length");
    build_f(&one, cfg).expect("constant smearing is always in range")
}

/// `Σ_j E_j (b_j†b_j + d_j†d_j)`.
pub fn build_h0(cfg: &LatticeConfig) -> ModeOperator {
    build_h0_eps(cfg, 0.0)
}

/// `Σ_j E_j cos(p_j ε)(b_j†b_j + d_j†d_j)`.
pub fn build_h0_eps(cfg: &LatticeConfig, eps: f64) -> ModeOperator {
    let n = cfg.n_max();
    let mut op = ModeOperator::zero(n);
    for j in cfg.indices() {
        let w = cfg.energy(j) * (cfg.momentum(j) * eps).cos();
        for slot in [SlotIndex::electron(j), SlotIndex::positron(j)] {
            let s = slot.linear(n);
            op.push_word(c(w), &[Ladder::create(s), Ladder::annihilate(s)]);
        }
    }
    op
}

/// Renormalization constant `ξ_{R,ε} = Σ_j E_j cos(p_j ε)`.
pub fn renormalization_constant(cfg: &LatticeConfig, eps: f64) -> f64 {
    cfg.indices().map(|j| cfg.energy(j) * (cfg.momentum(j) * eps).cos()).sum()
}

/// `½ Σ_γ ∫ ψ†(z+γε) H₀ ψ(z) dz` before the renormalization constant is
/// added, built from the field expansion. Its c-number is `−Σ_j E_j cos(p_j ε)`.
pub fn build_h0_eps_bare(cfg: &LatticeConfig, eps: f64) -> ModeOperator {
    let table = ModeTable::new(cfg);
    let n = cfg.n_max();
    let mut op = ModeOperator::zero(n);
    for a in 0..table.len() {
        for b in 0..table.len() {
            let (ua, ub) = (table.spinor(a), table.spinor(b));
            if ua.j != ub.j {
                continue;
            }
            let h = Mat2::dirac(ub.p, cfg.mass());
            let mut k = Complex64::new(0.0, 0.0);
            for gamma in [1.0, -1.0] {
                k += Complex64::from_polar(0.5, -ua.p * gamma * eps) * ua.sandwich(&h, ub);
            }
            let (ma, mb) = (table.mode(a), table.mode(b));
            op.push_word(k, &[ma.dagger(n), mb.plain(n)]);
        }
    }
    op
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::FockVector;
    use crate::modeops::operator::{apply, commutator, expectation, vev, Signature};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn cfg(n: usize) -> LatticeConfig {
        LatticeConfig::new(1.0, 1.0, n).unwrap()
    }

    #[test]
    fn h0_vacuum_and_single_particle() {
        let cfg = cfg(2);
        let h = build_h0(&cfg);
        assert_eq!(vev(&h), Complex64::new(0.0, 0.0));
        assert!(h.hermiticity_defect() == 0.0);
        let vac = FockVector::vacuum(&cfg);
        for j in cfg.indices() {
            for slot in [SlotIndex::electron(j), SlotIndex::positron(j)] {
                let one = crate::fock::apply_create(slot, &vac);
                let e = expectation(&one, &h).unwrap();
                assert_abs_diff_eq!(e.re, cfg.energy(j), epsilon = 1e-12);
                let hv = apply(&h, &one).unwrap();
                assert_eq!(hv, one.scale(c(cfg.energy(j))));
            }
        }
    }

    #[test]
    fn bare_split_hamiltonian_renormalizes_to_direct_form() {
        let cfg = LatticeConfig::new(0.7, 0.8, 3).unwrap();
        for eps in [0.0, 0.3, 1.9] {
            let bare = build_h0_eps_bare(&cfg, eps);
            let xi = renormalization_constant(&cfg, eps);
            assert_abs_diff_eq!(bare.c_number().re, -xi, epsilon = 1e-12);
            let renorm = bare.add(&ModeOperator::scalar(3, c(xi))).unwrap();
            assert!(renorm.max_abs_diff(&build_h0_eps(&cfg, eps)).unwrap() < 1e-12);
            assert!(build_h0_eps(&cfg, eps).hermiticity_defect() < 1e-15);
        }
        assert_eq!(build_h0_eps(&cfg, 0.0), build_h0(&cfg));
    }

    #[test]
    fn split_hamiltonian_flips_sign_at_pi() {
        let cfg = cfg(3);
        let q = 2;
        let eps = PI / cfg.momentum(q);
        let h = build_h0_eps(&cfg, eps);
        let s = SlotIndex::electron(q).linear(3) as u16;
        let sig = Signature { creators: vec![s], annihilators: vec![s] };
        assert_abs_diff_eq!(h.coefficient(&sig).re, -cfg.energy(q), epsilon = 1e-12);
        assert_eq!(vev(&h), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn rho_vacuum_density_and_hermiticity() {
        let cfg = cfg(2);
        for z in [0.0, 0.8, 4.1] {
            let rho = build_rho(z, &cfg);
            assert_abs_diff_eq!(vev(&rho).re, 5.0 / cfg.box_length(), epsilon = 1e-14);
            assert!(vev(&rho).im.abs() < 1e-15);
            assert!(rho.hermiticity_defect() < 1e-15);
        }
    }

    #[test]
    fn charge_commutes_with_h0() {
        let cfg = cfg(2);
        let q = build_charge(&cfg);
        let comm = commutator(&build_h0(&cfg), &q).unwrap();
        assert!(comm.max_coefficient() < 1e-12);
        // Q = Σ b†b − Σ d†d + (2n_max + 1).
        assert_abs_diff_eq!(q.c_number().re, 5.0, epsilon = 1e-12);
    }

    #[test]
    fn charge_matches_riemann_sum_of_rho() {
        let cfg = cfg(1);
        let n = 16;
        let h = cfg.box_length() / n as f64;
        let mut sum = ModeOperator::zero(1);
        for k in 0..n {
            sum = sum.add(&build_rho(k as f64 * h, &cfg).scale(c(h))).unwrap();
        }
        assert!(sum.max_abs_diff(&build_charge(&cfg)).unwrap() < 1e-12);
    }

    #[test]
    fn smeared_constant_is_scaled_charge() {
        let cfg = cfg(2);
        let f = TrigPoly::constant(cfg.box_length(), 2.5).unwrap();
        let fq = build_f(&f, &cfg).unwrap();
        assert!(fq.max_abs_diff(&build_charge(&cfg).scale(c(2.5))).unwrap() < 1e-12);
    }

    #[test]
    fn smearing_checks() {
        let cfg = cfg(1);
        let l = cfg.box_length();
        assert!(matches!(build_f(&TrigPoly::cosine(l, 3, 1.0).unwrap(), &cfg), Err(Error::HarmonicOutOfRange { .. })));
        assert!(matches!(build_f(&TrigPoly::cosine(l + 1.0, 1, 1.0).unwrap(), &cfg), Err(Error::LatticeMismatch(_))));
        let f = TrigPoly::new(l, &[(1, Complex64::new(0.3, 0.2)), (2, Complex64::new(-0.1, 0.4))]).unwrap();
        assert!(build_f(&f, &cfg).unwrap().hermiticity_defect() < 1e-15);
    }

    #[test]
    fn f_connects_vacuum_only_to_pairs() {
        let cfg = cfg(2);
        let f =
            TrigPoly::new(cfg.box_length(), &[(1, Complex64::new(0.5, 0.0)), (2, Complex64::new(0.1, -0.3))]).unwrap();
        let fop = build_f(&f, &cfg).unwrap();
        let out = apply(&fop, &FockVector::vacuum(&cfg)).unwrap();
        let per = cfg.modes_per_species();
        let mut pairs = 0;
        for (bits, amp) in out.iter() {
            if bits == 0 {
                continue;
            }
            assert!(amp.norm() > 0.0);
            let electrons = (bits & ((1 << per) - 1)).count_ones();
            let positrons = (bits >> per).count_ones();
            assert_eq!((electrons, positrons), (1, 1), "state {bits:b}");
            pairs += 1;
        }
        assert!(pairs > 0);
    }

    #[test]
    fn split_current_reduces_and_has_zero_vev() {
        let cfg = cfg(2);
        let z = 0.6;
        assert!(build_j_split(z, 0.0, &cfg).max_abs_diff(&build_j(z, &cfg)).unwrap() < 1e-15);
        assert!(build_j_boulware(z, 0.0, &cfg).max_abs_diff(&build_j(z, &cfg)).unwrap() < 1e-15);
        for eps in [0.1, 0.7, 2.0] {
            assert!(vev(&build_j_split(z, eps, &cfg)).norm() < 1e-15);
            let one = vev(&build_j_one_sided(z, eps, &cfg));
            let other = vev(&build_j_one_sided(z, -eps, &cfg));
            assert!(one.re.abs() < 1e-15);
            assert!(one.im.abs() > 1e-3);
            assert_abs_diff_eq!(one.im, -other.im, epsilon = 1e-15);
        }
    }

    #[test]
    fn kernel_derivative_matches_finite_difference() {
        let cfg = cfg(2);
        let table = ModeTable::new(&cfg);
        let k = boulware_current_kernel(&table, 0.4);
        let z = 1.1;
        let h = 1e-5;
        let fd = k.at(z + h).sub(&k.at(z - h)).unwrap().scale(c(0.5 / h));
        assert!(fd.max_abs_diff(&k.dz().at(z)).unwrap() < 1e-8);
    }
}
