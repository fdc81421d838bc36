use num_complex::Complex64;

use super::check_kq;
use crate::error::{Error, Result};

/// Default largest `k` accepted by [`g_roots`].
pub const DEFAULT_ROOTS_CAP: i64 = 500;

/// Absolute tolerance used for the imaginary-part check and for comparisons
/// against the exact value.
pub fn roots_tolerance(k: i64) -> f64 {
    if k <= 200 {
        1e-9
    } else {
        1e-7
    }
}

/// Precomputed `exp(iπn/k)` for `0 ≤ n < 2k`, shared across many `(q, i)`.
#[derive(Clone, Debug)]
pub struct RootTable {
    k: i64,
    powers: Vec<Complex64>,
}

impl RootTable {
    pub fn new(k: i64) -> Result<Self> {
        Self::with_cap(k, DEFAULT_ROOTS_CAP)
    }

    pub fn with_cap(k: i64, cap: i64) -> Result<Self> {
        if k < 1 {
            return Err(Error::Parameter(format!("k must be positive, got {k}")));
        }
        if k > cap {
            return Err(Error::Cap { k, cap });
        }
        let step = std::f64::consts::PI / k as f64;
        let powers = (0..2 * k)
            .map(|n| Complex64::from_polar(1.0, step * n as f64))
            .collect();
        Ok(RootTable { k, powers })
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    /// `ζ_m^n` for `ζ_m = exp(iπ(2m+1)/k)`.
    fn power(&self, m: i64, n: i64) -> Complex64 {
        let p = 2 * self.k;
        let idx = ((2 * m + 1) as i128 * n.rem_euclid(p) as i128).rem_euclid(p as i128);
        self.powers[idx as usize]
    }

    /// Evaluate `g(2k, q, i)` as a sum over the roots of `ζ^k = -1`.
    pub fn g(&self, q: i64, i: i64) -> Result<f64> {
        check_kq(self.k, q)?;
        self.finish(q, i, &self.weights(q))
    }

    /// [`RootTable::g`] at several indices, sharing the `q`-dependent factors.
    pub fn g_many(&self, q: i64, indices: impl IntoIterator<Item = i64>) -> Result<Vec<f64>> {
        check_kq(self.k, q)?;
        let w = self.weights(q);
        indices.into_iter().map(|i| self.finish(q, i, &w)).collect()
    }

    /// `1/((ζ_m - 1)(ζ_m^q - 1))` for each root.
    fn weights(&self, q: i64) -> Vec<Complex64> {
        (0..self.k)
            .map(|m| ((self.power(m, 1) - 1.0) * (self.power(m, q) - 1.0)).inv())
            .collect()
    }

    fn finish(&self, q: i64, i: i64, weights: &[Complex64]) -> Result<f64> {
        let terms: Vec<Complex64> = weights
            .iter()
            .enumerate()
            .map(|(m, w)| self.power(m as i64, i + 1) * w)
            .collect();
        let total = pairwise_sum(&terms) * (-2.0 / self.k as f64);
        let tol = roots_tolerance(self.k);
        if total.im.abs() > tol {
            return Err(Error::Numerical(format!(
                "imaginary part {:e} exceeds {tol:e} at k = {}, q = {q}, i = {i}",
                total.im, self.k
            )));
        }
        Ok(total.re)
    }
}

fn pairwise_sum(xs: &[Complex64]) -> Complex64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let (a, b) = xs.split_at(xs.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

/// `g(2k, q, i)` in floating point, `k ≤ DEFAULT_ROOTS_CAP`.
pub fn g_roots(k: i64, q: i64, i: i64) -> Result<f64> {
    g_roots_capped(k, q, i, DEFAULT_ROOTS_CAP)
}

pub fn g_roots_capped(k: i64, q: i64, i: i64, cap: i64) -> Result<f64> {
    check_kq(k, q)?;
    RootTable::with_cap(k, cap)?.g(q, i)
}
