//! Finite Laurent expansions `Σ c_n zⁿ`, `n_min ≤ n ≤ n_max`, with exact
//! term-wise differentiation.

use crate::prelude::*;

/// Region a holomorphic function lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    /// The unit disk `|z| < 1`.
    Disk,
    /// The exterior disk `|z| > 1` (including ∞).
    Exterior,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LaurentSeries {
    domain: Domain,
    n_min: i32,
    coeffs: Vec<Complex64>,
}

impl LaurentSeries {
    /// `coeffs[k]` multiplies `z^(n_min + k)`.
    pub fn new(domain: Domain, n_min: i32, coeffs: Vec<Complex64>) -> Self {
        LaurentSeries { domain, n_min, coeffs }
    }

    pub fn zero(domain: Domain) -> Self {
        LaurentSeries::new(domain, 0, Vec::new())
    }

    /// Power series on the disk, `coeffs[k]` multiplying `z^k`.
    pub fn polynomial(coeffs: Vec<Complex64>) -> Self {
        LaurentSeries::new(Domain::Disk, 0, coeffs)
    }

    /// Single term `c zⁿ`.
    pub fn monomial(domain: Domain, power: i32, c: Complex64) -> Self {
        LaurentSeries::new(domain, power, vec![c])
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn n_min(&self) -> i32 {
        self.n_min
    }

    pub fn n_max(&self) -> i32 {
        self.n_min + self.coeffs.len() as i32 - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `zⁿ` (zero outside the stored range).
    pub fn coeff(&self, power: i32) -> Complex64 {
        let k = power - self.n_min;
        if k < 0 {
            return Complex64::new(0.0, 0.0);
        }
        self.coeffs.get(k as usize).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Nonzero terms as `(power, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i32, Complex64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.re != 0.0 || c.im != 0.0)
            .map(move |(k, c)| (self.n_min + k as i32, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms().next().is_none()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.terms().map(|(n, c)| c * z.powi(n)).sum()
    }

    pub fn derivative(&self) -> LaurentSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * (self.n_min + k as i32) as f64)
            .collect();
        LaurentSeries::new(self.domain, self.n_min - 1, coeffs)
    }

    /// Multiplication by `zᵏ`.
    pub fn shift(&self, k: i32) -> LaurentSeries {
        LaurentSeries::new(self.domain, self.n_min + k, self.coeffs.clone())
    }

    pub fn scale(&self, a: Complex64) -> LaurentSeries {
        LaurentSeries::new(self.domain, self.n_min, self.coeffs.iter().map(|c| c * a).collect())
    }

    /// Term-wise sum; the result keeps `self`'s domain.
    pub fn add(&self, other: &LaurentSeries) -> LaurentSeries {
        if self.coeffs.is_empty() {
            return LaurentSeries::new(self.domain, other.n_min, other.coeffs.clone());
        }
        if other.coeffs.is_empty() {
            return self.clone();
        }
        let lo = self.n_min.min(other.n_min);
        let hi = self.n_max().max(other.n_max());
        let coeffs = (lo..=hi).map(|n| self.coeff(n) + other.coeff(n)).collect();
        LaurentSeries::new(self.domain, lo, coeffs)
    }
}
