//! First variation of the dilatation of the barycentric extension at the
//! identity.
//!
//! Along the flow `h_t` generated by a mean-zero direction `b`, the
//! dilatation `μ_t` of `E(h_t)` satisfies `μ_t = t·de(b) + o(t)` with
//!
//! ```text
//! de(b)(z) = −(1 − |z|²)² / (2πi) ∫₀^{2π} 3 e^{2iu} B(u) / (1 − z̄ e^{iu})⁴ du,
//! ```
//!
//! `B` the antiderivative of `b`. Two evaluations are provided: quadrature
//! of the integral, and a closed form through the analytic primitive `F` of
//! `b`, `de(b)(z) = (i/2)(1 − |z|²)² conj(G(z))`, `G = (zF)'''`.

use crate::barycentric::{BoundaryData, SolverConfig};
use crate::carleson::RadialGridMeasure;
use crate::circle_maps::{self, TrigPolynomial};
use crate::error::{Error, Result};
use crate::grid::PolarGrid;
use crate::prelude::*;
use crate::quadrature::PeriodicRule;
use crate::series::{Domain, LaurentSeries};

/// Quadrature size needed near the boundary: `n ≥ C / (1 − |z|)²`.
pub const QUADRATURE_SCALE: f64 = 8.0;

fn check_point(z: Complex64) -> Result<()> {
    let modulus = z.norm();
    if !(modulus < 1.0) {
        return Err(Error::OutOfDomain {
            what: "z",
            modulus,
            limit: 1.0,
        });
    }
    Ok(())
}

/// Smallest admissible quadrature size for the direct route at `|z|`.
pub fn required_points(modulus: f64) -> usize {
    let gap = 1.0 - modulus;
    (QUADRATURE_SCALE / (gap * gap)).ceil() as usize
}

/// `de(b)(z)` by periodic quadrature of the defining integral.
pub fn gateaux_direct(b: &TrigPolynomial, z: Complex64, rule: &PeriodicRule) -> Result<Complex64> {
    check_point(z)?;
    if !b.is_mean_zero() {
        return Err(Error::NotMeanZero { b0: b.b0() });
    }
    let required = required_points(z.norm());
    if rule.points() < required {
        return Err(Error::QuadratureTooCoarse {
            points: rule.points(),
            required,
        });
    }
    let antiderivative = circle_maps::antiderivative(b, rule.points());
    let zbar = z.conj();
    let mut k = 0;
    let mean = rule.mean_complex(|u| {
        let e = Complex64::new(u.cos(), u.sin());
        let denom = (1.0 - zbar * e).powi(4);
        let v = 3.0 * e * e * antiderivative.at_node(k) / denom;
        k += 1;
        v
    });
    let s = 1.0 - z.norm_sqr();
    // −(1/2πi)·2π·mean = i·mean
    Ok(Complex64::new(0.0, 1.0) * s * s * mean)
}

/// `G = ((zF)')''` for the analytic primitive `F` of `b`.
pub fn fourier_kernel(b: &TrigPolynomial) -> Result<LaurentSeries> {
    let f = circle_maps::cauchy_primitive(b)?;
    Ok(f.shift(1).derivative().derivative().derivative())
}

/// `de(b)(z)` from `I₂ = conj((π/3) G(z))`, the Cauchy-integral evaluation
/// of the defining integral (its holomorphic half vanishes).
pub fn gateaux_fourier(b: &TrigPolynomial, z: Complex64) -> Result<Complex64> {
    check_point(z)?;
    let g = fourier_kernel(b)?;
    Ok(from_kernel_value(g.eval(z), z))
}

fn from_kernel_value(g: Complex64, z: Complex64) -> Complex64 {
    let s = 1.0 - z.norm_sqr();
    let i2 = (g * (PI / 3.0)).conj();
    -(3.0 * s * s / Complex64::new(0.0, TAU)) * i2
}

/// Slopes `μ_t/t` against the closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteDiffReport {
    pub z: Complex64,
    pub t: Vec<f64>,
    pub mu_over_t: Vec<Complex64>,
    /// Polynomial extrapolation of the slopes to `t = 0`.
    pub extrapolated: Complex64,
    pub closed_form: Complex64,
    pub abs_error: f64,
    /// `log(e₁/e₂) / log(t₁/t₂)` over the two smallest `t`, with `e` the
    /// slope error; `None` when it cannot be formed.
    pub observed_order: Option<f64>,
}

/// Neville extrapolation of `values` sampled at `ts` to `t = 0`.
pub fn richardson(ts: &[f64], values: &[Complex64]) -> Complex64 {
    let mut table = values.to_vec();
    let n = table.len();
    for level in 1..n {
        for i in 0..n - level {
            let (ti, tj) = (ts[i], ts[i + level]);
            table[i] = (table[i + 1] * ti - table[i] * tj) / (ti - tj);
        }
    }
    table.first().copied().unwrap_or(Complex64::new(0.0, 0.0))
}

/// Compares `μ_t(z)/t` for the flow of `b` with the closed form.
///
/// The homeomorphisms are built on the solver's quadrature grid, so the
/// barycenter integrals use exact node values.
pub fn finite_diff_check(
    b: &TrigPolynomial,
    z: Complex64,
    t_list: &[f64],
    config: SolverConfig,
) -> Result<FiniteDiffReport> {
    if t_list.is_empty() {
        return Err(Error::InvalidInput("need at least one t"));
    }
    if t_list.iter().any(|t| !(*t > 0.0 && *t <= 0.05)) {
        return Err(Error::InvalidInput("t values must lie in (0, 0.05]"));
    }
    if t_list.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidInput("t values must be strictly decreasing"));
    }
    let rule = PeriodicRule::new(config.quad_points)?;
    let closed_form = gateaux_direct(b, z, &rule)?;
    let mut slopes = Vec::with_capacity(t_list.len());
    for &t in t_list {
        let h = circle_maps::flow_homeo(b, t, config.quad_points)?;
        let mu = BoundaryData::new(&h, config)?.dilatation(z)?;
        slopes.push(mu / t);
    }
    let extrapolated = richardson(t_list, &slopes);
    let observed_order = match slopes.len() {
        0 | 1 => None,
        n => {
            let e1 = (slopes[n - 2] - closed_form).norm();
            let e2 = (slopes[n - 1] - closed_form).norm();
            let order = (e1 / e2).ln() / (t_list[n - 2] / t_list[n - 1]).ln();
            order.is_finite().then_some(order)
        }
    };
    Ok(FiniteDiffReport {
        z,
        t: t_list.to_vec(),
        mu_over_t: slopes,
        extrapolated,
        closed_form,
        abs_error: (extrapolated - closed_form).norm(),
        observed_order,
    })
}

/// The measure `|de(b)|² / (1 − |z|²) dxdy` together with the largest
/// node-wise gap to `(1/4)|G|² (1 − |z|²)³`.
#[derive(Debug, Clone, PartialEq)]
pub struct FeffermanStein {
    pub measure: RadialGridMeasure,
    pub max_discrepancy: f64,
}

pub fn fefferman_stein_density(b: &TrigPolynomial, grid: &PolarGrid, rule: &PeriodicRule) -> Result<FeffermanStein> {
    let g = fourier_kernel(b)?;
    let mut density = Vec::with_capacity(grid.len());
    let mut max_discrepancy = 0.0f64;
    for z in grid.points() {
        let s = 1.0 - z.norm_sqr();
        let de = gateaux_direct(b, z, rule)?;
        let direct = de.norm_sqr() / s;
        let closed = 0.25 * g.eval(z).norm_sqr() * s * s * s;
        max_discrepancy = max_discrepancy.max((direct - closed).abs());
        density.push(direct);
    }
    Ok(FeffermanStein {
        measure: RadialGridMeasure::new(Domain::Disk, *grid, density)?,
        max_discrepancy,
    })
}
