//! Carleson box norms of measures on the disk.
//!
//! For a positive measure `λ` on the unit disk,
//! `‖λ‖_c = sup λ(𝔻 ∩ D(ζ, r)) / r` over `|ζ| = 1` and `0 < r ≤ 2`.
//! The supremum is approximated over a finite family of boundary centers and
//! a geometric ladder of radii; the result is a lower estimate that converges
//! as both families are refined.

use crate::error::{Error, Result};
use crate::grid::{DiskGrid, PolarGrid};
use crate::par;
use crate::prelude::*;
use crate::quadrature;
use crate::series::Domain;

/// Diameter of the disk, the top of every radius ladder.
pub const DIAMETER: f64 = 2.0;

/// Density sampled at the nodes of a [`PolarGrid`]; node masses are density
/// times cell area.
///
/// Measures on the exterior disk are stored after the inversion
/// `z = 1/w̄`: the density kept at `w ∈ 𝔻` is `λ(1/w̄)·|w|⁻²`, the pullback
/// under which boundary boxes correspond and Carleson norms are comparable.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGridMeasure {
    domain: Domain,
    grid: PolarGrid,
    density: Vec<f64>,
}

impl RadialGridMeasure {
    pub fn new(domain: Domain, grid: PolarGrid, density: Vec<f64>) -> Result<Self> {
        if density.len() != grid.len() {
            return Err(Error::InvalidInput("density count does not match grid"));
        }
        if density.iter().any(|d| !(d.is_finite() && *d >= 0.0)) {
            return Err(Error::InvalidInput("density must be finite and nonnegative"));
        }
        Ok(RadialGridMeasure { domain, grid, density })
    }

    /// Samples `density(w)` at the nodes, for a measure on the disk.
    pub fn on_disk<F: Fn(Complex64) -> f64>(grid: PolarGrid, density: F) -> Result<Self> {
        let values = grid.points().map(density).collect();
        RadialGridMeasure::new(Domain::Disk, grid, values)
    }

    /// A measure with density `density(z)`, `|z| > 1`, on the exterior disk,
    /// carried to the disk by `z = 1/w̄`.
    pub fn on_exterior<F: Fn(Complex64) -> f64>(grid: PolarGrid, density: F) -> Result<Self> {
        let values = grid.points().map(|w| density(1.0 / w.conj()) / w.norm_sqr()).collect();
        RadialGridMeasure::new(Domain::Exterior, grid, values)
    }

    /// Lebesgue area measure on the disk.
    pub fn area(grid: PolarGrid) -> Result<Self> {
        RadialGridMeasure::on_disk(grid, |_| 1.0)
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn grid(&self) -> &PolarGrid {
        &self.grid
    }

    pub fn density(&self) -> &[f64] {
        &self.density
    }

    pub fn mass(&self, index: usize) -> f64 {
        let (j, _) = self.grid.split(index);
        self.density[index] * self.grid.cell_area(j)
    }

    pub fn total_mass(&self) -> f64 {
        (0..self.density.len()).map(|i| self.mass(i)).sum()
    }

    pub fn scale(&self, a: f64) -> Result<Self> {
        RadialGridMeasure::new(self.domain, self.grid, self.density.iter().map(|d| a * d).collect())
    }

    /// Rows `(r, θ, density)`.
    pub fn rows(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.density.iter().enumerate().map(|(i, d)| {
            let (j, k) = self.grid.split(i);
            (self.grid.radius(j), self.grid.angle(k), *d)
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarlesonConfig {
    /// Number of equispaced boundary centers.
    pub centers: usize,
    /// Ratio between consecutive ladder radii.
    pub ratio: f64,
    /// Smallest ladder radius; defaults to `2(1 − outermost node radius)`.
    pub r_min: Option<f64>,
}

impl Default for CarlesonConfig {
    fn default() -> Self {
        CarlesonConfig {
            centers: 256,
            ratio: core::f64::consts::SQRT_2,
            r_min: None,
        }
    }
}

impl CarlesonConfig {
    /// Twice the centers and twice the radii per octave.
    pub fn refined(&self) -> Self {
        CarlesonConfig {
            centers: 2 * self.centers,
            ratio: self.ratio.sqrt(),
            r_min: self.r_min,
        }
    }

    /// Geometric radii from `r_min` up to and including the diameter.
    pub fn ladder(&self, grid: &PolarGrid) -> Vec<f64> {
        let r_min = self
            .r_min
            .unwrap_or(2.0 * (1.0 - grid.outer_radius()))
            .clamp(1e-6, DIAMETER);
        let mut radii = Vec::new();
        let mut r = r_min;
        while r < DIAMETER * (1.0 - 1e-12) {
            radii.push(r);
            r *= self.ratio;
        }
        radii.push(DIAMETER);
        radii
    }
}

/// `sup_ζ λ(𝔻 ∩ D(ζ, r)) / r` at each ladder radius.
#[derive(Debug, Clone, PartialEq)]
pub struct CarlesonProfile {
    pub radii: Vec<f64>,
    pub ratios: Vec<f64>,
}

impl CarlesonProfile {
    pub fn sup(&self) -> f64 {
        self.ratios.iter().copied().fold(0.0, f64::max)
    }
}

pub fn vanishing_profile(m: &RadialGridMeasure, config: &CarlesonConfig) -> CarlesonProfile {
    let radii = config.ladder(m.grid());
    let nodes: Vec<(Complex64, f64)> = (0..m.density.len())
        .map(|i| (m.grid.point(i), m.mass(i)))
        .filter(|(_, mass)| *mass > 0.0)
        .collect();
    let centers = config.centers.max(1);
    let per_center = par::map_indexed(centers, |c| {
        let angle = quadrature::node(c, centers);
        let zeta = Complex64::new(angle.cos(), angle.sin());
        let mut bins = vec![0.0; radii.len()];
        for (p, mass) in &nodes {
            let d = (p - zeta).norm();
            // smallest radius whose open disk contains the node
            let slot = radii.partition_point(|r| *r <= d);
            if slot < bins.len() {
                bins[slot] += mass;
            }
        }
        let mut acc = 0.0;
        bins.iter()
            .zip(&radii)
            .map(|(b, r)| {
                acc += b;
                acc / r
            })
            .collect::<Vec<f64>>()
    });
    let mut ratios = vec![0.0f64; radii.len()];
    for row in per_center {
        for (best, v) in ratios.iter_mut().zip(row) {
            *best = best.max(v);
        }
    }
    CarlesonProfile { radii, ratios }
}

pub fn carleson_norm(m: &RadialGridMeasure, config: &CarlesonConfig) -> f64 {
    vanishing_profile(m, config).sup()
}

/// `|μ(z)|² / (1 − |z|²)` on the nodes of a dilatation field.
pub fn dilatation_measure(field: &DiskGrid) -> Result<RadialGridMeasure> {
    let mut density = Vec::with_capacity(field.values().len());
    for (r, _, mu) in field.rows() {
        let modulus = mu.norm();
        if !(modulus < 1.0) {
            return Err(Error::InvalidDilatation { modulus });
        }
        density.push(mu.norm_sqr() / (1.0 - r * r));
    }
    RadialGridMeasure::new(Domain::Disk, *field.grid(), density)
}

/// `λ̃(z) = ∬ (1−|z|²)^α (1−|w|²)^β / |1 − z̄w|^{α+β+2} dλ(w)` at every node.
pub fn kernel_transform(m: &RadialGridMeasure, alpha: f64, beta: f64) -> Result<RadialGridMeasure> {
    if !(alpha > 0.0 && beta > 0.0) {
        return Err(Error::InvalidInput("kernel exponents must be positive"));
    }
    if m.domain() != Domain::Disk {
        return Err(Error::InvalidInput("kernel transform acts on disk measures"));
    }
    let grid = *m.grid();
    let sources: Vec<(Complex64, f64)> = (0..m.density.len())
        .map(|i| {
            let w = grid.point(i);
            (w, m.mass(i) * (1.0 - w.norm_sqr()).powf(beta))
        })
        .filter(|(_, weight)| *weight > 0.0)
        .collect();
    let power = 0.5 * (alpha + beta + 2.0);
    let density = par::map_indexed(grid.len(), |i| {
        let z = grid.point(i);
        let zbar = z.conj();
        let outer = (1.0 - z.norm_sqr()).powf(alpha);
        let sum: f64 = sources
            .iter()
            .map(|(w, weight)| weight / (1.0 - zbar * w).norm_sqr().powf(power))
            .sum();
        outer * sum
    });
    RadialGridMeasure::new(Domain::Disk, grid, density)
}
