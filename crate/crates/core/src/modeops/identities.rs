//! Local conservation laws checked exactly in mode space.
//!
//! Each check returns the largest coefficient-wise residual. Both sides carry
//! the same `e^{i(p_b−p_a)z}` phase per mode pair, so agreement at one `z`
//! is agreement everywhere, but callers sample several `z` anyway.

use num_complex::Complex64;

use crate::error::Result;
use crate::lattice::{LatticeConfig, Mat2};
use crate::modeops::field::{
    boulware_current_kernel, build_h0, build_h0_eps, current_kernel, rho_kernel, split_commutator_kernel, ModeTable,
};
use crate::modeops::operator::commutator;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// `max_ab |u_a†[(λ_aE_a − λ_bE_b) + (p_b − p_a)σ_x]u_b|`.
pub fn continuity_pair_residual(cfg: &LatticeConfig) -> f64 {
    let table = ModeTable::new(cfg);
    let sx = Mat2::sigma_x();
    let mut worst: f64 = 0.0;
    for a in 0..table.len() {
        for b in 0..table.len() {
            let (ua, ub) = (table.spinor(a), table.spinor(b));
            let energy = ua.lambda.value() * ua.energy - ub.lambda.value() * ub.energy;
            let r = ua.dot(&ub.u) * energy + ua.sandwich(&sx, ub) * (ub.p - ua.p);
            worst = worst.max(r.norm());
        }
    }
    worst
}

/// `[H₀, ρ(z)] − i ∂_z (s·J(z))` for a current sign `s` (`+1` is correct).
pub fn continuity_residual_with_sign(cfg: &LatticeConfig, z: f64, current_sign: f64) -> Result<f64> {
    let table = ModeTable::new(cfg);
    let lhs = commutator(&build_h0(cfg), &rho_kernel(&table).at(z))?;
    let rhs = current_kernel(&table).dz().scale(I * current_sign).at(z);
    lhs.without_c_number().max_abs_diff(&rhs.without_c_number())
}

/// `[H₀, ρ(z)] = i ∂_z J(z)`.
pub fn continuity_residual(cfg: &LatticeConfig, z: f64) -> Result<f64> {
    continuity_residual_with_sign(cfg, z, 1.0)
}

/// `[H₀,ε, ρ(z)] = i ∂_z J_B(z; ε)` with the line-integral current.
pub fn boulware_residual(cfg: &LatticeConfig, z: f64, eps: f64) -> Result<f64> {
    let table = ModeTable::new(cfg);
    let lhs = commutator(&build_h0_eps(cfg, eps), &rho_kernel(&table).at(z))?;
    let rhs = boulware_current_kernel(&table, eps).dz().scale(I).at(z);
    lhs.without_c_number().max_abs_diff(&rhs.without_c_number())
}

/// `[H₀,ε, ρ(z)]` against the explicit split-derivative expression.
pub fn split_commutator_residual(cfg: &LatticeConfig, z: f64, eps: f64) -> Result<f64> {
    let table = ModeTable::new(cfg);
    let lhs = commutator(&build_h0_eps(cfg, eps), &rho_kernel(&table).at(z))?;
    let rhs = split_commutator_kernel(&table, eps).at(z);
    lhs.without_c_number().max_abs_diff(&rhs.without_c_number())
}
