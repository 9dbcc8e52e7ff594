//! The discretized 1+1D model: momentum grid, dispersion, spinors and
//! plane-wave mode functions on a periodic box.
//!
//! Modes live on a box of length `L = 2π/Δp`, so `p_j = j·Δp` are exactly the
//! box harmonics and every z-integral of products of mode functions reduces to
//! a Kronecker delta. Plane waves carry a `1/√L` normalization.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sign of the single-particle energy, `λ = ±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Positive => 1.0,
            Sign::Negative => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// Fixes the finite model: mass, momentum spacing and cutoff index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeConfig {
    mass: f64,
    delta_p: f64,
    n_max: usize,
}

impl LatticeConfig {
    pub fn new(mass: f64, delta_p: f64, n_max: usize) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::InvalidConfig(format!("mass must be > 0, got {mass}")));
        }
        if !(delta_p.is_finite() && delta_p > 0.0) {
            return Err(Error::InvalidConfig(format!("delta_p must be > 0, got {delta_p}")));
        }
        if n_max < 1 {
            return Err(Error::InvalidConfig("n_max must be >= 1".into()));
        }
        Ok(Self { mass, delta_p, n_max })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn delta_p(&self) -> f64 {
        self.delta_p
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Box length `L = 2π/Δp`.
    pub fn box_length(&self) -> f64 {
        2.0 * PI / self.delta_p
    }

    /// Momentum cutoff `Λ = n_max·Δp`.
    pub fn cutoff(&self) -> f64 {
        self.n_max as f64 * self.delta_p
    }

    /// Number of momentum modes per species, `2·n_max + 1`.
    pub fn modes_per_species(&self) -> usize {
        2 * self.n_max + 1
    }

    /// Mode indices `-n_max ..= n_max` in ascending order.
    pub fn indices(&self) -> impl DoubleEndedIterator<Item = i64> + Clone {
        let n = self.n_max as i64;
        -n..=n
    }

    pub fn check_index(&self, j: i64) -> Result<()> {
        if j.unsigned_abs() as usize > self.n_max {
            Err(Error::IndexOutOfRange { j, n_max: self.n_max })
        } else {
            Ok(())
        }
    }

    pub fn momentum(&self, j: i64) -> f64 {
        j as f64 * self.delta_p
    }

    pub fn energy(&self, j: i64) -> f64 {
        dispersion(self.momentum(j), self.mass)
    }

    pub(crate) fn same_model(&self, other: &LatticeConfig) -> bool {
        self == other
    }
}

/// `E_p = +√(p² + m²)`.
pub fn dispersion(p: f64, m: f64) -> f64 {
    p.hypot(m)
}

/// A `(λ, p)` mode with its energy and unit-normalized spinor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSpinor {
    pub lambda: Sign,
    pub j: i64,
    pub p: f64,
    pub energy: f64,
    pub u: [Complex64; 2],
}

impl ModeSpinor {
    /// `u† v` with another spinor (or any 2-vector).
    pub fn dot(&self, v: &[Complex64; 2]) -> Complex64 {
        self.u[0].conj() * v[0] + self.u[1].conj() * v[1]
    }

    /// `u_a† M u_b` for a 2×2 matrix `M` in row-major order.
    pub fn sandwich(&self, m: &Mat2, other: &ModeSpinor) -> Complex64 {
        self.dot(&m.apply(&other.u))
    }
}

/// Eigen-spinor of `σ_x p + σ_z m` with eigenvalue `λ E_p`.
///
/// The negative-energy branch uses `(−p/(E+m), 1)ᵀ·√((E+m)/2E)`, which stays
/// finite at `p = 0`.
pub fn spinor(lambda: Sign, j: i64, cfg: &LatticeConfig) -> Result<ModeSpinor> {
    cfg.check_index(j)?;
    let p = cfg.momentum(j);
    let m = cfg.mass;
    let energy = dispersion(p, m);
    let norm = ((energy + m) / (2.0 * energy)).sqrt();
    let ratio = p / (energy + m);
    let u = match lambda {
        Sign::Positive => [Complex64::new(norm, 0.0), Complex64::new(norm * ratio, 0.0)],
        Sign::Negative => [Complex64::new(-norm * ratio, 0.0), Complex64::new(norm, 0.0)],
    };
    Ok(ModeSpinor { lambda, j, p, energy, u })
}

/// Plane-wave mode function `u_{λ,p_j} e^{i p_j z} / √L`.
pub fn mode_function(lambda: Sign, j: i64, z: f64, cfg: &LatticeConfig) -> Result<[Complex64; 2]> {
    let s = spinor(lambda, j, cfg)?;
    let phase = Complex64::from_polar(1.0 / cfg.box_length().sqrt(), s.p * z);
    Ok([s.u[0] * phase, s.u[1] * phase])
}

/// Exact box integral `∫₀^L φ†_{λ,j} φ_{λ',j'} dz`.
///
/// Box harmonics integrate to `L·δ_{jj'}`, so the overlap reduces to the
/// spinor product at equal momentum.
pub fn mode_overlap(a: (Sign, i64), b: (Sign, i64), cfg: &LatticeConfig) -> Result<Complex64> {
    let sa = spinor(a.0, a.1, cfg)?;
    let sb = spinor(b.0, b.1, cfg)?;
    if a.1 != b.1 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(sa.dot(&sb.u))
}

/// Dense complex 2×2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub fn identity() -> Self {
        Self::real([[1.0, 0.0], [0.0, 1.0]])
    }

    pub fn sigma_x() -> Self {
        Self::real([[0.0, 1.0], [1.0, 0.0]])
    }

    pub fn sigma_z() -> Self {
        Self::real([[1.0, 0.0], [0.0, -1.0]])
    }

    pub fn real(m: [[f64; 2]; 2]) -> Self {
        Self(m.map(|row| row.map(|x| Complex64::new(x, 0.0))))
    }

    pub fn apply(&self, v: &[Complex64; 2]) -> [Complex64; 2] {
        let m = &self.0;
        [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self(self.0.map(|row| row.map(|x| x * c)))
    }

    pub fn add(&self, other: &Mat2) -> Self {
        let mut out = self.0;
        for (r, row) in out.iter_mut().enumerate() {
            for (c, x) in row.iter_mut().enumerate() {
                *x += other.0[r][c];
            }
        }
        Self(out)
    }

    /// Single-particle Dirac Hamiltonian at momentum `p`: `σ_x p + σ_z m`.
    pub fn dirac(p: f64, m: f64) -> Self {
        Self::sigma_x().scale(Complex64::new(p, 0.0)).add(&Self::sigma_z().scale(Complex64::new(m, 0.0)))
    }
}
