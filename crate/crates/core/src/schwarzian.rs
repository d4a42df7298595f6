//! Schwarzian derivatives and the norms on holomorphic quadratic
//! differentials.
//!
//! Hyperbolic densities: `ρ_𝔻(z) = (1 − |z|²)⁻¹` on the disk and
//! `ρ_{𝔻*}(z) = (|z|² − 1)⁻¹` on the exterior disk. Under this convention a
//! quadratic differential `φ` on `𝔻*` and the disk polynomial
//! `p(w) = conj(φ(1/w̄)) w⁻⁴` have identical norms, and every computation on
//! `𝔻*` is carried out through `p`.

use crate::carleson::{self, CarlesonConfig, RadialGridMeasure};
use crate::error::{Error, Result};
use crate::grid::PolarGrid;
use crate::prelude::*;
use crate::series::{Domain, LaurentSeries};

/// Below this `|f'|` the Schwarzian is not evaluated.
pub const CRITICAL_DERIVATIVE: f64 = 1e-12;

/// `f'''/f' − (3/2)(f''/f')²` from the three derivative values.
pub fn schwarzian_from_derivatives(d1: Complex64, d2: Complex64, d3: Complex64) -> Complex64 {
    let ratio = d2 / d1;
    d3 / d1 - 1.5 * ratio * ratio
}

pub fn schwarzian(f: &LaurentSeries, z: Complex64) -> Result<Complex64> {
    let d1 = f.derivative();
    let d2 = d1.derivative();
    let d3 = d2.derivative();
    let v1 = d1.eval(z);
    if !(v1.norm() >= CRITICAL_DERIVATIVE) {
        return Err(Error::CriticalPoint { z, modulus: v1.norm() });
    }
    Ok(schwarzian_from_derivatives(v1, d2.eval(z), d3.eval(z)))
}

/// The disk series carrying the same norms as `phi`.
///
/// For a disk series this is `phi` itself. For `φ = Σ c_n zⁿ` on `𝔻*` it is
/// `p(w) = Σ conj(c_n) w^{−n−4}`, so that `|p(w)| = |φ(1/w̄)| |w|⁻⁴`.
pub fn disk_representative(phi: &LaurentSeries) -> LaurentSeries {
    match phi.domain() {
        Domain::Disk => phi.clone(),
        Domain::Exterior => {
            let mut out = LaurentSeries::zero(Domain::Disk);
            for (n, c) in phi.terms() {
                out = out.add(&LaurentSeries::monomial(Domain::Disk, -n - 4, c.conj()));
            }
            out
        }
    }
}

/// Polar sampling used by the supremum norms: rings at `sin(πj/2n)`,
/// `j = 0..n`, which includes the center and crowds toward the circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SupSampling {
    pub rings: usize,
    pub angles: usize,
}

impl Default for SupSampling {
    fn default() -> Self {
        SupSampling {
            rings: 400,
            angles: 512,
        }
    }
}

/// `‖φ‖_B = sup |φ(z)| ρ⁻²(z)`.
///
/// Infinite exactly when the disk representative has a pole at the origin
/// (for `𝔻*`: a term `zⁿ` with `n > −4`, which outgrows the weight at ∞).
pub fn hyp_sup_norm(phi: &LaurentSeries, sampling: SupSampling) -> f64 {
    let p = disk_representative(phi);
    if p.is_zero() {
        return 0.0;
    }
    if p.terms().any(|(n, _)| n < 0) {
        return f64::INFINITY;
    }
    let rings = sampling.rings.max(1);
    let angles = sampling.angles.max(1);
    let mut best = 0.0f64;
    for j in 0..rings {
        let r = (0.5 * PI * j as f64 / rings as f64).sin();
        let weight = (1.0 - r * r) * (1.0 - r * r);
        for k in 0..angles {
            let z = Complex64::from_polar(r, TAU * k as f64 / angles as f64);
            best = best.max(p.eval(z).norm() * weight);
        }
    }
    best
}

/// The measure `|φ(z)|² (|z|² − 1)³ dxdy` on `𝔻*` (or `|φ|²(1 − |z|²)³` on
/// `𝔻`), sampled on `grid`.
pub fn quadratic_differential_measure(phi: &LaurentSeries, grid: PolarGrid) -> Result<RadialGridMeasure> {
    match phi.domain() {
        Domain::Disk => RadialGridMeasure::on_disk(grid, |w| {
            let s = 1.0 - w.norm_sqr();
            phi.eval(w).norm_sqr() * s * s * s
        }),
        Domain::Exterior => {
            // λ(1/w̄)|w|⁻² = |p(w)|² (1 − |w|²)³, written through p to stay
            // finite at the origin
            let p = disk_representative(phi);
            let density = grid
                .points()
                .map(|w| {
                    let s = 1.0 - w.norm_sqr();
                    p.eval(w).norm_sqr() * s * s * s
                })
                .collect();
            RadialGridMeasure::new(Domain::Exterior, grid, density)
        }
    }
}

/// `‖φ‖_𝓑 = ‖λ_φ‖_c`, quadratic in `φ`.
pub fn curly_b_norm(phi: &LaurentSeries, grid: PolarGrid, config: &CarlesonConfig) -> Result<f64> {
    let p = disk_representative(phi);
    if p.is_zero() {
        return Ok(0.0);
    }
    // a pole at the origin gives infinite mass
    if p.terms().any(|(n, _)| n < 0) {
        return Ok(f64::INFINITY);
    }
    let m = quadratic_differential_measure(phi, grid)?;
    Ok(carleson::carleson_norm(&m, config))
}

/// Dilatation of the Ahlfors–Weill extension for `φ` on `𝔻*`:
/// `μ(z) = −(1/2)(1 − |z|²)² φ(1/z̄) z̄⁻⁴`, `z ∈ 𝔻`.
pub fn ahlfors_weill_mu(phi: &LaurentSeries, z: Complex64) -> Result<Complex64> {
    if phi.domain() != Domain::Exterior {
        return Err(Error::InvalidInput(
            "Ahlfors-Weill dilatation needs a series on the exterior disk",
        ));
    }
    let modulus = z.norm();
    if !(modulus < 1.0) {
        return Err(Error::OutOfDomain {
            what: "z",
            modulus,
            limit: 1.0,
        });
    }
    let p = disk_representative(phi);
    if modulus == 0.0 && p.terms().any(|(n, _)| n < 0) {
        return Err(Error::OriginSingularity);
    }
    let s = 1.0 - z.norm_sqr();
    Ok(-0.5 * s * s * p.eval(z).conj())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn square_at_two() {
        let f = LaurentSeries::monomial(Domain::Disk, 2, c(1.0, 0.0));
        let s = schwarzian(&f, c(2.0, 0.0)).unwrap();
        assert!((s - c(-0.375, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn mobius_maps_are_annihilated() {
        let affine = LaurentSeries::polynomial(vec![c(0.3, 1.0), c(2.0, -1.0)]);
        let inversion = LaurentSeries::monomial(Domain::Exterior, -1, c(1.5, 0.0));
        for z in [c(0.2, 0.1), c(-1.5, 2.0), c(3.0, 0.0)] {
            assert!(schwarzian(&affine, z).unwrap().norm() < 1e-14);
            assert!(schwarzian(&inversion, z).unwrap().norm() < 1e-12);
        }
    }

    #[test]
    fn critical_points_are_rejected() {
        let f = LaurentSeries::monomial(Domain::Disk, 2, c(1.0, 0.0));
        assert!(matches!(schwarzian(&f, c(0.0, 0.0)), Err(Error::CriticalPoint { .. })));
    }

    #[test]
    fn representative_of_exterior_series() {
        let phi = LaurentSeries::new(Domain::Exterior, -6, vec![c(1.0, 2.0), c(0.0, 0.0), c(3.0, -1.0)]);
        let p = disk_representative(&phi);
        let w = c(0.3, -0.5);
        let lhs = p.eval(w).norm();
        let rhs = phi.eval(1.0 / w.conj()).norm() / w.norm().powi(4);
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn sup_norm_of_inverse_fourth_power() {
        let phi = LaurentSeries::monomial(Domain::Exterior, -4, c(1.0, 0.0));
        assert!((hyp_sup_norm(&phi, SupSampling::default()) - 1.0).abs() < 1e-15);
        assert_eq!(
            hyp_sup_norm(&LaurentSeries::zero(Domain::Exterior), SupSampling::default()),
            0.0
        );
        // z⁻² grows against the weight at ∞
        let slow = LaurentSeries::monomial(Domain::Exterior, -2, c(1.0, 0.0));
        assert_eq!(hyp_sup_norm(&slow, SupSampling::default()), f64::INFINITY);
    }

    #[test]
    fn ahlfors_weill_examples() {
        let zero = LaurentSeries::zero(Domain::Exterior);
        assert_eq!(ahlfors_weill_mu(&zero, c(0.3, 0.0)).unwrap(), c(0.0, 0.0));
        let k = c(0.4, -0.2);
        let phi = LaurentSeries::monomial(Domain::Exterior, -4, k);
        for z in [c(0.0, 0.0), c(0.5, 0.1), c(-0.2, -0.7)] {
            let s = 1.0 - z.norm_sqr();
            let expected = -0.5 * k * s * s;
            assert!((ahlfors_weill_mu(&phi, z).unwrap() - expected).norm() < 1e-15);
        }
        let slow = LaurentSeries::monomial(Domain::Exterior, -3, k);
        assert!(matches!(
            ahlfors_weill_mu(&slow, c(0.0, 0.0)),
            Err(Error::OriginSingularity)
        ));
        assert!(ahlfors_weill_mu(&slow, c(0.1, 0.0)).is_ok());
        let disk = LaurentSeries::monomial(Domain::Disk, 0, k);
        assert!(ahlfors_weill_mu(&disk, c(0.1, 0.0)).is_err());
    }
}
