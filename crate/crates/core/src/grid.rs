//! Polar sampling of the unit disk.
//!
//! A [`PolarGrid`] splits the disk of radius `r_max` into `nr` rings of equal
//! width and `ntheta` equal sectors. Nodes sit at the ring mid-radii and at
//! the sector angles `2πk/ntheta`; each node owns the annular cell around it.

use crate::error::{Error, Result};
use crate::prelude::*;
use crate::quadrature;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarGrid {
    r_max: f64,
    nr: usize,
    ntheta: usize,
}

impl PolarGrid {
    pub fn new(r_max: f64, nr: usize, ntheta: usize) -> Result<Self> {
        if !(r_max > 0.0 && r_max <= 1.0) {
            return Err(Error::InvalidInput("grid radius must lie in (0, 1]"));
        }
        if nr == 0 || ntheta == 0 {
            return Err(Error::InvalidInput("grid needs at least one node"));
        }
        Ok(PolarGrid { r_max, nr, ntheta })
    }

    /// The whole closed disk.
    pub fn unit(nr: usize, ntheta: usize) -> Result<Self> {
        PolarGrid::new(1.0, nr, ntheta)
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn nr(&self) -> usize {
        self.nr
    }

    pub fn ntheta(&self) -> usize {
        self.ntheta
    }

    pub fn len(&self) -> usize {
        self.nr * self.ntheta
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Inner edge of ring `j` (`j = nr` gives `r_max`).
    pub fn edge(&self, j: usize) -> f64 {
        self.r_max * j as f64 / self.nr as f64
    }

    /// Mid-radius of ring `j`.
    pub fn radius(&self, j: usize) -> f64 {
        self.r_max * (j as f64 + 0.5) / self.nr as f64
    }

    pub fn angle(&self, k: usize) -> f64 {
        quadrature::node(k, self.ntheta)
    }

    /// Area of one cell of ring `j`.
    pub fn cell_area(&self, j: usize) -> f64 {
        let (a, b) = (self.edge(j), self.edge(j + 1));
        0.5 * (b * b - a * a) * TAU / self.ntheta as f64
    }

    /// `(ring, sector)` of a flat node index.
    pub fn split(&self, index: usize) -> (usize, usize) {
        (index / self.ntheta, index % self.ntheta)
    }

    pub fn point(&self, index: usize) -> Complex64 {
        let (j, k) = self.split(index);
        Complex64::from_polar(self.radius(j), self.angle(k))
    }

    /// Radius of the outermost node.
    pub fn outer_radius(&self) -> f64 {
        self.radius(self.nr - 1)
    }

    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        (0..self.len()).map(move |i| self.point(i))
    }
}

/// Complex values on the nodes of a [`PolarGrid`] strictly inside the disk.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskGrid {
    grid: PolarGrid,
    values: Vec<Complex64>,
}

impl DiskGrid {
    pub fn new(grid: PolarGrid, values: Vec<Complex64>) -> Result<Self> {
        if grid.r_max() >= 1.0 {
            return Err(Error::InvalidInput("disk grid radius must be below 1"));
        }
        if values.len() != grid.len() {
            return Err(Error::InvalidInput("value count does not match grid"));
        }
        Ok(DiskGrid { grid, values })
    }

    /// Grid with every value zero.
    pub fn zeros(grid: PolarGrid) -> Result<Self> {
        DiskGrid::new(grid, vec![Complex64::new(0.0, 0.0); grid.len()])
    }

    /// Grid holding its own node positions.
    pub fn positions(grid: PolarGrid) -> Result<Self> {
        DiskGrid::new(grid, grid.points().collect())
    }

    pub fn grid(&self) -> &PolarGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn map<F: Fn(Complex64, Complex64) -> Complex64>(&self, f: F) -> DiskGrid {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| f(self.grid.point(i), *v))
            .collect();
        DiskGrid {
            grid: self.grid,
            values,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Rows `(r, θ, value)`.
    pub fn rows(&self) -> impl Iterator<Item = (f64, f64, Complex64)> + '_ {
        self.values.iter().enumerate().map(|(i, v)| {
            let (j, k) = self.grid.split(i);
            (self.grid.radius(j), self.grid.angle(k), *v)
        })
    }
}
