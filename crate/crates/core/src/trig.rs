//! Real trigonometric polynomials on the periodic box.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `f(z) = Σ_n c_n e^{2πi n z / L}` with `c_{−n} = conj(c_n)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrigPoly {
    box_length: f64,
    coeffs: BTreeMap<i64, Complex64>,
}

const SYMMETRY_TOL: f64 = 1e-14;

impl TrigPoly {
    /// Builds `f` from `(n, c_n)` pairs. A harmonic listed without its
    /// mirror gets `c_{−n} = conj(c_n)`; listing both requires them to be
    /// conjugate. Repeated harmonics are rejected.
    pub fn new(box_length: f64, harmonics: &[(i64, Complex64)]) -> Result<Self> {
        if !(box_length.is_finite() && box_length > 0.0) {
            return Err(Error::InvalidSmearing(format!("box length must be > 0, got {box_length}")));
        }
        let mut given = BTreeMap::new();
        for &(n, c) in harmonics {
            if given.insert(n, c).is_some() {
                return Err(Error::InvalidSmearing(format!("harmonic {n} listed twice")));
            }
        }
        let mut coeffs = BTreeMap::new();
        for (&n, &c) in &given {
            if n == 0 && c.im.abs() > SYMMETRY_TOL {
                return Err(Error::InvalidSmearing(format!("constant term must be real, got {c}")));
            }
            if let Some(&mirror) = given.get(&-n) {
                if (mirror - c.conj()).norm() > SYMMETRY_TOL * (1.0 + c.norm()) {
                    return Err(Error::InvalidSmearing(format!(
                        "harmonics {n} and {} are not complex conjugates: {c} vs {mirror}",
                        -n
                    )));
                }
            }
            let c = if n == 0 { Complex64::new(c.re, 0.0) } else { c };
            if c != Complex64::new(0.0, 0.0) {
                coeffs.insert(n, c);
                coeffs.entry(-n).or_insert(c.conj());
            }
        }
        Ok(Self { box_length, coeffs })
    }

    pub fn constant(box_length: f64, value: f64) -> Result<Self> {
        Self::new(box_length, &[(0, Complex64::new(value, 0.0))])
    }

    /// `amplitude · cos(2π n z / L)`.
    pub fn cosine(box_length: f64, n: i64, amplitude: f64) -> Result<Self> {
        if n == 0 {
            return Self::constant(box_length, amplitude);
        }
        Self::new(box_length, &[(n, Complex64::new(amplitude / 2.0, 0.0))])
    }

    /// `amplitude · sin(2π n z / L)`.
    pub fn sine(box_length: f64, n: i64, amplitude: f64) -> Result<Self> {
        Self::new(box_length, &[(n, Complex64::new(0.0, -amplitude / 2.0))])
    }

    pub fn box_length(&self) -> f64 {
        self.box_length
    }

    pub fn coeff(&self, n: i64) -> Complex64 {
        self.coeffs.get(&n).copied().unwrap_or_default()
    }

    /// Nonzero harmonics in ascending order of `n`.
    pub fn harmonics(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs.iter().map(|(&n, &c)| (n, c))
    }

    /// Largest `|n|` with a nonzero coefficient.
    pub fn max_harmonic(&self) -> usize {
        self.coeffs.keys().map(|n| n.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn wavenumber(&self, n: i64) -> f64 {
        2.0 * PI * n as f64 / self.box_length
    }

    pub fn is_constant(&self) -> bool {
        self.max_harmonic() == 0
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self {
            box_length: self.box_length,
            coeffs: self.coeffs.iter().filter(|_| k != 0.0).map(|(&n, &c)| (n, c * k)).collect(),
        }
    }

    pub fn eval(&self, z: f64) -> f64 {
        self.harmonics().map(|(n, c)| (c * Complex64::from_polar(1.0, self.wavenumber(n) * z)).re).sum()
    }

    pub fn derivative(&self, z: f64) -> f64 {
        self.harmonics()
            .map(|(n, c)| {
                let k = self.wavenumber(n);
                (c * Complex64::new(0.0, k) * Complex64::from_polar(1.0, k * z)).re
            })
            .sum()
    }

    /// `∫₀^L (f′)² dz = L Σ_n k_n² |c_n|²`.
    pub fn derivative_sq_integral(&self) -> f64 {
        self.box_length * self.harmonics().map(|(n, c)| self.wavenumber(n).powi(2) * c.norm_sqr()).sum::<f64>()
    }

    /// `∫₀^L (f(z+g) − f(z)) f′(z) dz = L Σ_n k_n |c_n|² sin(k_n g)`.
    pub fn shifted_difference_integral(&self, g: f64) -> f64 {
        self.box_length
            * self
                .harmonics()
                .map(|(n, c)| {
                    let k = self.wavenumber(n);
                    k * c.norm_sqr() * (k * g).sin()
                })
                .sum::<f64>()
    }
}
