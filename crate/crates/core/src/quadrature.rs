//! Adaptive Gauss–Kronrod quadrature and Richardson extrapolation.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

// 15-point Kronrod nodes on [0, 1] half of [-1, 1]; every second node is a
// 7-point Gauss node.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728,
];
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (k, (&x, &w)) in XGK.iter().zip(&WGK).take(7).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod += w * pair;
        if k % 2 == 1 {
            gauss += WG[k / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive bisection on `[a, b]` until the summed error estimate
/// is at most `abs_tol`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, abs_tol: f64, max_intervals: usize) -> Result<QuadResult> {
    // Seed with a uniform split so that oscillatory integrands are resolved
    // before the error estimate is trusted.
    let seeds = 16;
    let mut heap = BinaryHeap::new();
    let h = (b - a) / seeds as f64;
    for k in 0..seeds {
        let (lo, hi) = (a + k as f64 * h, if k + 1 == seeds { b } else { a + (k + 1) as f64 * h });
        let (value, error) = gk15(&f, lo, hi);
        heap.push(Segment { a: lo, b: hi, value, error });
    }
    loop {
        let total_err: f64 = heap.iter().map(|s| s.error).sum();
        if total_err <= abs_tol || heap.len() >= max_intervals {
            let value = heap.iter().map(|s| s.value).sum();
            if total_err > abs_tol {
                return Err(Error::Quadrature { achieved: total_err, tolerance: abs_tol });
            }
            return Ok(QuadResult { value, error: total_err, intervals: heap.len() });
        }
        let worst = heap.pop().expect("non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        for (lo, hi) in [(worst.a, mid), (mid, worst.b)] {
            let (value, error) = gk15(&f, lo, hi);
            heap.push(Segment { a: lo, b: hi, value, error });
        }
    }
}

/// Richardson extrapolation of samples `values[k] ≈ A(h / 2^k)` to `h → 0`
/// for an error series in integer powers `h, h², h³, …`. Returns the
/// extrapolated value and the difference of the last two diagonal entries.
pub fn richardson(values: &[f64]) -> (f64, f64) {
    assert!(!values.is_empty());
    let mut table: Vec<Vec<f64>> = vec![values.to_vec()];
    for order in 1..values.len() {
        let prev = &table[order - 1];
        let factor = 2f64.powi(order as i32);
        let next = prev.windows(2).map(|w| (factor * w[1] - w[0]) / (factor - 1.0)).collect();
        table.push(next);
    }
    let best = table.last().unwrap()[0];
    let err =
        if values.len() > 1 { (best - table[table.len() - 2].last().copied().unwrap()).abs() } else { f64::INFINITY };
    (best, err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn polynomials_are_exact() {
        let r = integrate(|x| x.powi(5) - 3.0 * x * x, -1.0, 2.0, 1e-12, 100).unwrap();
        assert_abs_diff_eq!(r.value, 64.0 / 6.0 - 1.0 / 6.0 - 9.0, epsilon = 1e-12);
    }

    #[test]
    fn oscillatory_damped_sine() {
        let (eps, eta) = (0.3, 0.05);
        let r = integrate(|p| (p * eps).sin() * (-eta * p).exp(), 0.0, 1000.0, 1e-10, 10_000).unwrap();
        let exact = (eps - (-eta * 1000.0f64).exp() * (eps * (1000.0 * eps).cos() + eta * (1000.0 * eps).sin()))
            / (eps * eps + eta * eta);
        assert_abs_diff_eq!(r.value, exact, epsilon = 1e-9);
    }

    #[test]
    fn reports_non_convergence() {
        let r = integrate(|x| 1.0 / x.abs().sqrt().max(1e-300), -1.0, 1.0, 1e-14, 20);
        assert!(matches!(r, Err(Error::Quadrature { .. })));
    }

    #[test]
    fn richardson_removes_polynomial_error() {
        let a = |h: f64| 2.0 + 0.7 * h - 0.3 * h * h + 0.1 * h.powi(3);
        let samples: Vec<f64> = (0..4).map(|k| a(0.5 / 2f64.powi(k))).collect();
        let (v, _) = richardson(&samples);
        assert_abs_diff_eq!(v, 2.0, epsilon = 1e-13);
    }
}
