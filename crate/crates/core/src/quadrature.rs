//! Uniform-grid rule for periodic integrands, plus the discrete Fourier
//! transform used for spectral cumulative integration.
//!
//! For a smooth 2π-periodic integrand the rectangle rule on `n` equispaced
//! nodes is exact for trigonometric polynomials of degree below `n` and
//! converges geometrically for analytic ones.

use crate::error::{Error, Result};
use crate::prelude::*;

/// Default number of quadrature nodes.
pub const DEFAULT_POINTS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodicRule {
    points: usize,
}

impl Default for PeriodicRule {
    fn default() -> Self {
        PeriodicRule { points: DEFAULT_POINTS }
    }
}

impl PeriodicRule {
    pub fn new(points: usize) -> Result<Self> {
        if points < 4 {
            return Err(Error::InvalidInput("quadrature needs at least 4 points"));
        }
        Ok(PeriodicRule { points })
    }

    pub fn points(&self) -> usize {
        self.points
    }

    /// Node `k`, `2πk/n`.
    #[inline]
    pub fn node(&self, k: usize) -> f64 {
        node(k, self.points)
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.points).map(move |k| self.node(k))
    }

    /// `e^{iu_k}` for every node.
    pub fn unit_nodes(&self) -> Vec<Complex64> {
        self.nodes().map(|u| Complex64::new(u.cos(), u.sin())).collect()
    }

    /// `(1/2π) ∫₀^{2π} f(u) du`.
    pub fn mean<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes().map(&mut f).sum::<f64>() / self.points as f64
    }

    pub fn mean_complex<F: FnMut(f64) -> Complex64>(&self, mut f: F) -> Complex64 {
        self.nodes().map(&mut f).sum::<Complex64>() / self.points as f64
    }

    /// `∫₀^{2π} f(u) du`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, f: F) -> f64 {
        TAU * self.mean(f)
    }
}

/// `2πk/n`, the single formula every grid in the crate uses for its nodes.
#[inline]
pub(crate) fn node(k: usize, n: usize) -> f64 {
    TAU * k as f64 / n as f64
}

/// Forward DFT `X_n = Σ_k x_k e^{-2πikn/N}` (no normalization), in place.
///
/// Radix-2 for power-of-two lengths, direct summation otherwise.
pub fn dft(data: &mut [Complex64]) {
    transform(data, -1.0);
}

/// Inverse DFT without the `1/N` factor.
pub fn idft(data: &mut [Complex64]) {
    transform(data, 1.0);
}

fn transform(data: &mut [Complex64], sign: f64) {
    let n = data.len();
    if n <= 1 {
        return;
    }
    if n.is_power_of_two() {
        radix2(data, sign);
    } else {
        let input = data.to_vec();
        for (m, out) in data.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, x) in input.iter().enumerate() {
                let angle = sign * node((k * m) % n, n);
                acc += x * Complex64::new(angle.cos(), angle.sin());
            }
            *out = acc;
        }
    }
}

fn radix2(data: &mut [Complex64], sign: f64) {
    let n = data.len();
    let mut j = 0;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            data.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        // Twiddles from direct evaluation rather than repeated multiplication
        // keep the error at the level of a single rounding.
        let twiddles: Vec<Complex64> = (0..half)
            .map(|k| {
                let angle = sign * node(k, len);
                Complex64::new(angle.cos(), angle.sin())
            })
            .collect();
        for start in (0..n).step_by(len) {
            for k in 0..half {
                let a = data[start + k];
                let b = data[start + k + half] * twiddles[k];
                data[start + k] = a + b;
                data[start + k + half] = a - b;
            }
        }
        len <<= 1;
    }
}
