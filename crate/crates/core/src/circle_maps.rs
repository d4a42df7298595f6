//! Circle functions and circle homeomorphisms.
//!
//! A direction `b` is a real trigonometric polynomial. It generates the flow
//! of homeomorphisms `h_t(e^{iu}) = e^{iφ_t(u)}` with
//! `φ_t(u) = ∫₀^u e^{t b(v) − t c(t)} dv`, where the normalizer `c(t)` makes
//! `φ_t(2π) = 2π`.

use crate::error::{Error, Result};
use crate::prelude::*;
use crate::quadrature::{self, PeriodicRule};
use crate::series::LaurentSeries;

/// Real band-limited circle function
/// `b(u) = b₀ + Σ_{n=1}^{N} (b_n e^{inu} + conj(b_n) e^{-inu})`.
///
/// Only the nonnegative modes are stored, so every value is real by
/// construction.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrigPolynomial {
    b0: f64,
    coeffs: Vec<Complex64>,
}

impl TrigPolynomial {
    /// `coeffs[n - 1]` is `b_n`.
    pub fn new(b0: f64, coeffs: Vec<Complex64>) -> Self {
        TrigPolynomial { b0, coeffs }
    }

    pub fn zero() -> Self {
        TrigPolynomial::default()
    }

    pub fn constant(value: f64) -> Self {
        TrigPolynomial::new(value, Vec::new())
    }

    /// `amplitude · cos(n u)`.
    pub fn cosine(n: usize, amplitude: f64) -> Self {
        TrigPolynomial::zero().with_mode(n, Complex64::new(amplitude / 2.0, 0.0))
    }

    /// `amplitude · sin(n u)`.
    pub fn sine(n: usize, amplitude: f64) -> Self {
        TrigPolynomial::zero().with_mode(n, Complex64::new(0.0, -amplitude / 2.0))
    }

    /// Adds `c` to `b_n` (and implicitly `conj(c)` to `b_{-n}`).
    pub fn with_mode(mut self, n: usize, c: Complex64) -> Self {
        assert!(n >= 1, "modes are indexed from 1");
        if self.coeffs.len() < n {
            self.coeffs.resize(n, Complex64::new(0.0, 0.0));
        }
        self.coeffs[n - 1] += c;
        self
    }

    pub fn b0(&self) -> f64 {
        self.b0
    }

    /// `b_1, …, b_N`.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `b_n` for `n ≥ 1`.
    pub fn coeff(&self, n: usize) -> Complex64 {
        if n == 0 {
            return Complex64::new(self.b0, 0.0);
        }
        self.coeffs.get(n - 1).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_mean_zero(&self) -> bool {
        self.b0 == 0.0
    }

    pub fn eval(&self, u: f64) -> f64 {
        let e = Complex64::new(u.cos(), u.sin());
        let mut power = e;
        let mut acc = 0.0;
        for c in &self.coeffs {
            acc += (c * power).re;
            power *= e;
        }
        self.b0 + 2.0 * acc
    }

    /// Values at the `n` nodes `2πk/n`.
    pub fn samples(&self, n: usize) -> Vec<f64> {
        (0..n).map(|k| self.eval(quadrature::node(k, n))).collect()
    }

    /// `max |b|` over the nodes of `rule`.
    pub fn max_abs(&self, rule: &PeriodicRule) -> f64 {
        rule.nodes().map(|u| self.eval(u).abs()).fold(0.0, f64::max)
    }

    /// Exact antiderivative `B(u) = ∫₀^u b(v) dv`.
    pub fn integral(&self, u: f64) -> f64 {
        let mut acc = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            let n = (k + 1) as f64;
            let mode = Complex64::new((n * u).cos() - 1.0, (n * u).sin());
            acc += (c * mode / Complex64::new(0.0, n)).re;
        }
        self.b0 * u + 2.0 * acc
    }

    pub fn scale(&self, a: f64) -> Self {
        TrigPolynomial::new(a * self.b0, self.coeffs.iter().map(|c| c * a).collect())
    }

    pub fn add(&self, other: &TrigPolynomial) -> Self {
        let n = self.degree().max(other.degree());
        let coeffs = (1..=n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        TrigPolynomial::new(self.b0 + other.b0, coeffs)
    }
}

/// Samples of `B(u) = ∫₀^u b` at `u_k = 2πk/M`, `k = 0..=M`.
#[derive(Debug, Clone, PartialEq)]
pub struct Antiderivative {
    values: Vec<f64>,
}

impl Antiderivative {
    pub fn grid_size(&self) -> usize {
        self.values.len() - 1
    }

    /// All `M + 1` samples, the last one at `u = 2π`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn at_node(&self, k: usize) -> f64 {
        self.values[k]
    }

    /// `|B(2π)| < tol`.
    pub fn is_periodic(&self, tol: f64) -> bool {
        self.values[self.grid_size()].abs() < tol
    }
}

/// Term-wise integration of `b` sampled on `grid` nodes.
pub fn antiderivative(b: &TrigPolynomial, grid: usize) -> Antiderivative {
    let values = (0..=grid).map(|k| b.integral(quadrature::node(k, grid))).collect();
    Antiderivative { values }
}

/// The constant `c(t) = (1/t) log((1/2π) ∫₀^{2π} e^{t b(u)} du)`.
///
/// `c(0)` is the mean of `b`, its limit as `t → 0`.
pub fn normalizer_c(b: &TrigPolynomial, t: f64, rule: &PeriodicRule) -> Result<f64> {
    if t == 0.0 {
        return Ok(b.b0());
    }
    let samples = b.samples(rule.points());
    let max_abs = samples.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let product = t.abs() * max_abs;
    if product > 500.0 {
        return Err(Error::Overflow { product });
    }
    // log-sum-exp: shift by the largest exponent
    let shift = samples.iter().map(|v| t * v).fold(f64::NEG_INFINITY, f64::max);
    let mean = samples.iter().map(|v| (t * v - shift).exp()).sum::<f64>() / samples.len() as f64;
    Ok((shift + mean.ln()) / t)
}

/// Orientation-preserving circle homeomorphism `h(e^{iu}) = e^{iφ(u)}`,
/// stored as the lift `φ` at `u_k = 2πk/M`, `k = 0..=M`, with `φ(0) = 0`
/// and `φ(2π) = 2π`.
///
/// Between nodes `φ` is evaluated by a monotone piecewise cubic Hermite
/// interpolant, so the interpolated map stays increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleHomeo {
    phi: Vec<f64>,
    slopes: Vec<f64>,
}

/// Tolerance on `φ(0) = 0` and `φ(2π) − φ(0) = 2π` when validating a lift.
pub const LIFT_TOLERANCE: f64 = 1e-9;

impl CircleHomeo {
    pub fn identity(grid: usize) -> Self {
        let phi = (0..=grid).map(|k| quadrature::node(k, grid)).collect();
        CircleHomeo::from_validated(phi)
    }

    /// Validates a sampled lift `φ(u_k)`, `k = 0..=M`.
    pub fn from_lift(mut phi: Vec<f64>) -> Result<Self> {
        if phi.len() < 5 {
            return Err(Error::InvalidInput("circle map needs at least 4 grid cells"));
        }
        if phi.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("circle map has non-finite samples"));
        }
        if phi[0].abs() > LIFT_TOLERANCE {
            return Err(Error::NotNormalized { phi0: phi[0] });
        }
        if let Some(index) = phi.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::NotMonotone { index });
        }
        let last = phi.len() - 1;
        let span = phi[last] - phi[0];
        if (span - TAU).abs() > LIFT_TOLERANCE {
            return Err(Error::NotPeriodic { span });
        }
        phi[0] = 0.0;
        phi[last] = TAU;
        Ok(CircleHomeo::from_validated(phi))
    }

    /// Samples a circle map `h` at `e^{iu_k}` and unwraps its argument.
    ///
    /// `h` must fix `1`.
    pub fn from_circle_map<F>(grid: usize, h: F) -> Result<Self>
    where
        F: Fn(Complex64) -> Complex64,
    {
        if grid < 4 {
            return Err(Error::InvalidInput("circle map needs at least 4 grid cells"));
        }
        let mut phi = Vec::with_capacity(grid + 1);
        let mut prev = h(Complex64::new(1.0, 0.0));
        phi.push(prev.arg());
        for k in 1..=grid {
            let u = quadrature::node(k, grid);
            let next = h(Complex64::new(u.cos(), u.sin()));
            let step = (next * prev.conj()).arg();
            phi.push(phi[k - 1] + step);
            prev = next;
        }
        CircleHomeo::from_lift(phi)
    }

    fn from_validated(phi: Vec<f64>) -> Self {
        let m = phi.len() - 1;
        let spacing = TAU / m as f64;
        let secant: Vec<f64> = phi.windows(2).map(|w| (w[1] - w[0]) / spacing).collect();
        let slopes = (0..m)
            .map(|k| {
                let left = secant[(k + m - 1) % m];
                let right = secant[k];
                // harmonic mean keeps the Hermite interpolant monotone
                2.0 * left * right / (left + right)
            })
            .collect();
        CircleHomeo { phi, slopes }
    }

    /// Number of grid cells `M`.
    pub fn grid_size(&self) -> usize {
        self.phi.len() - 1
    }

    /// `φ(u_k)`, `k = 0..=M`.
    pub fn lift(&self) -> &[f64] {
        &self.phi
    }

    pub fn node(&self, k: usize) -> f64 {
        quadrature::node(k, self.grid_size())
    }

    /// `φ(u)` for any real `u`, extended by `φ(u + 2π) = φ(u) + 2π`.
    pub fn lift_at(&self, u: f64) -> f64 {
        let m = self.grid_size();
        let spacing = TAU / m as f64;
        let turns = (u / TAU).floor();
        let reduced = u - turns * TAU;
        let pos = reduced / spacing;
        let k = (pos.floor() as usize).min(m - 1);
        let s = pos - k as f64;
        let (p0, p1) = (self.phi[k], self.phi[k + 1]);
        let (d0, d1) = (self.slopes[k], self.slopes[(k + 1) % m]);
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        turns * TAU + h00 * p0 + h10 * spacing * d0 + h01 * p1 + h11 * spacing * d1
    }

    /// `h(e^{iu})`.
    pub fn eval(&self, u: f64) -> Complex64 {
        let phi = self.lift_at(u);
        Complex64::new(phi.cos(), phi.sin())
    }

    /// `h` at the point `ζ` of the unit circle.
    pub fn apply(&self, zeta: Complex64) -> Complex64 {
        self.eval(zeta.arg())
    }

    /// `h(e^{iu_k})` at the nodes of `rule`; grid values are used directly
    /// when the rule matches the stored grid.
    pub fn samples(&self, rule: &PeriodicRule) -> Vec<Complex64> {
        let m = self.grid_size();
        if rule.points() == m {
            self.phi[..m].iter().map(|p| Complex64::new(p.cos(), p.sin())).collect()
        } else {
            rule.nodes().map(|u| self.eval(u)).collect()
        }
    }

    /// Rows `(u_k, φ(u_k))`.
    pub fn rows(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.phi.iter().enumerate().map(|(k, p)| (self.node(k), *p))
    }
}

/// The flow `h_t` generated by a mean-zero direction `b`, on `grid` cells.
///
/// The periodic part of `φ_t(u) − u` is integrated spectrally: the sampled
/// integrand is transformed and each Fourier mode integrated exactly, which
/// keeps the lift accurate to round-off for smooth `b`.
pub fn flow_homeo(b: &TrigPolynomial, t: f64, grid: usize) -> Result<CircleHomeo> {
    if !b.is_mean_zero() {
        return Err(Error::NotMeanZero { b0: b.b0() });
    }
    if grid < 4 {
        return Err(Error::InvalidInput("circle map needs at least 4 grid cells"));
    }
    if t == 0.0 {
        return Ok(CircleHomeo::identity(grid));
    }
    let rule = PeriodicRule::new(grid)?;
    let c = normalizer_c(b, t, &rule)?;
    let mut modes: Vec<Complex64> = b
        .samples(grid)
        .iter()
        .map(|v| Complex64::new((t * v - t * c).exp() - 1.0, 0.0))
        .collect();
    quadrature::dft(&mut modes);
    let m = grid as i64;
    for (k, mode) in modes.iter_mut().enumerate() {
        let n = if (k as i64) <= m / 2 { k as i64 } else { k as i64 - m };
        if n == 0 || (grid.is_multiple_of(2) && n == m / 2) {
            *mode = Complex64::new(0.0, 0.0);
        } else {
            *mode /= Complex64::new(0.0, n as f64) * grid as f64;
        }
    }
    quadrature::idft(&mut modes);
    let origin = modes[0].re;
    let mut phi: Vec<f64> = (0..grid)
        .map(|k| quadrature::node(k, grid) + (modes[k].re - origin))
        .collect();
    phi.push(TAU);
    CircleHomeo::from_lift(phi)
}

/// Dyadic estimate of the BMO norm of a circle function sampled at `M`
/// equispaced nodes.
///
/// Takes the largest mean oscillation `(1/|I|)∫_I |f − f_I|` over the arcs
/// of length `2π/2^j` starting at every node, for every `j` with at least two
/// samples per arc. This is a lower estimate of the true norm.
pub fn bmo_norm(samples: &[f64]) -> f64 {
    let m = samples.len();
    if m < 2 {
        return 0.0;
    }
    let mut best = 0.0f64;
    let mut parts = 1usize;
    while m.is_multiple_of(parts) && m / parts >= 2 {
        let len = m / parts;
        for start in 0..m {
            let arc = || (0..len).map(|i| samples[(start + i) % m]);
            let mean = arc().sum::<f64>() / len as f64;
            let osc = arc().map(|v| (v - mean).abs()).sum::<f64>() / len as f64;
            best = best.max(osc);
        }
        parts *= 2;
    }
    best
}

/// `F(z) = −i Σ_{n>0} (b_n / n) zⁿ`, the analytic part of `B`:
/// `B(u) = 2 Re(F(e^{iu}) − F(1))`.
pub fn cauchy_primitive(b: &TrigPolynomial) -> Result<LaurentSeries> {
    if !b.is_mean_zero() {
        return Err(Error::NotMeanZero { b0: b.b0() });
    }
    let mut coeffs = Vec::with_capacity(b.degree() + 1);
    coeffs.push(Complex64::new(0.0, 0.0));
    for (k, c) in b.coeffs().iter().enumerate() {
        coeffs.push(Complex64::new(0.0, -1.0) * c / (k + 1) as f64);
    }
    Ok(LaurentSeries::polynomial(coeffs))
}
