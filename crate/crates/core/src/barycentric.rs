//! The barycentric (Douady–Earle) extension.
//!
//! For a circle homeomorphism `h` and `z` in the disk, `E(h)(z)` is the
//! unique `w` in the disk with
//!
//! ```text
//! F_h(z, w) = (1/2π) ∫ (h(e^{iu}) − w) / (1 − w̄ h(e^{iu})) · P(z, u) du = 0,
//! P(z, u)   = (1 − |z|²) / |z − e^{iu}|².
//! ```
//!
//! The root is found by damped Newton iteration on the equivalent real 2×2
//! system; the complex dilatation of `E(h)` then follows from the implicit
//! function theorem applied to the four first partials of `F`.

use crate::circle_maps::CircleHomeo;
use crate::error::{Error, Result};
use crate::grid::{DiskGrid, PolarGrid};
use crate::par;
use crate::prelude::*;
use crate::quadrature::{PeriodicRule, DEFAULT_POINTS};

/// Points with `|w|` at or beyond this bound are treated as on the circle.
pub const W_LIMIT: f64 = 1.0 - 1e-9;

/// Below this `|D|` the dilatation quotient is rejected.
pub const DEGENERATE_DET: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub quad_points: usize,
    pub newton_tol: f64,
    pub max_iter: usize,
    pub r_max: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            quad_points: DEFAULT_POINTS,
            newton_tol: 1e-12,
            max_iter: 50,
            r_max: 0.95,
        }
    }
}

/// `∂F/∂z`, `∂F/∂z̄`, `∂F/∂w`, `∂F/∂w̄` at one `(z, w)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarycenterDerivatives {
    pub fz: Complex64,
    pub fzbar: Complex64,
    pub fw: Complex64,
    pub fwbar: Complex64,
}

impl BarycenterDerivatives {
    /// `μ = (conj(F_z) F_w̄ − F_z̄ conj(F_w)) / (conj(F_z̄) F_w̄ − F_z conj(F_w))`,
    /// returned as `(numerator, denominator)`.
    pub fn dilatation_parts(&self) -> (Complex64, Complex64) {
        let n = self.fz.conj() * self.fwbar - self.fzbar * self.fw.conj();
        let d = self.fzbar.conj() * self.fwbar - self.fz * self.fw.conj();
        (n, d)
    }
}

/// Boundary values of `h` at the quadrature nodes, ready for repeated
/// evaluation of the barycenter integral.
#[derive(Debug, Clone)]
pub struct BoundaryData {
    config: SolverConfig,
    unit: Vec<Complex64>,
    values: Vec<Complex64>,
}

impl BoundaryData {
    pub fn new(h: &CircleHomeo, config: SolverConfig) -> Result<Self> {
        if !(config.r_max > 0.0 && config.r_max < 1.0) {
            return Err(Error::InvalidInput("r_max must lie in (0, 1)"));
        }
        if !(config.newton_tol > 0.0) || config.max_iter == 0 {
            return Err(Error::InvalidInput(
                "Newton tolerance and iteration cap must be positive",
            ));
        }
        let rule = PeriodicRule::new(config.quad_points)?;
        Ok(BoundaryData {
            config,
            unit: rule.unit_nodes(),
            values: h.samples(&rule),
        })
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    fn check_z(&self, z: Complex64) -> Result<()> {
        let modulus = z.norm();
        if !(modulus <= self.config.r_max) {
            return Err(Error::OutOfDomain {
                what: "z",
                modulus,
                limit: self.config.r_max,
            });
        }
        Ok(())
    }

    fn check_w(w: Complex64) -> Result<()> {
        let modulus = w.norm();
        if !(modulus < W_LIMIT) {
            return Err(Error::OutOfDomain {
                what: "w",
                modulus,
                limit: W_LIMIT,
            });
        }
        Ok(())
    }

    fn poisson(&self, z: Complex64) -> Vec<f64> {
        let scale = 1.0 - z.norm_sqr();
        self.unit.iter().map(|e| scale / (z - e).norm_sqr()).collect()
    }

    /// `(F, F_w, F_w̄)` for a precomputed Poisson kernel.
    fn newton_terms(&self, poisson: &[f64], w: Complex64) -> (Complex64, Complex64, Complex64) {
        let wbar = w.conj();
        let one = Complex64::new(1.0, 0.0);
        let mut f = Complex64::new(0.0, 0.0);
        let mut fw = Complex64::new(0.0, 0.0);
        let mut fwbar = Complex64::new(0.0, 0.0);
        for (h, p) in self.values.iter().zip(poisson) {
            let inv = one / (one - wbar * h);
            let q = (h - w) * inv * p;
            f += q;
            fw -= inv * p;
            fwbar += h * q * inv;
        }
        let n = self.values.len() as f64;
        (f / n, fw / n, fwbar / n)
    }

    pub fn residual(&self, z: Complex64, w: Complex64) -> Result<Complex64> {
        self.check_z(z)?;
        Self::check_w(w)?;
        let p = self.poisson(z);
        Ok(self.newton_terms(&p, w).0)
    }

    pub fn derivatives(&self, z: Complex64, w: Complex64) -> Result<BarycenterDerivatives> {
        self.check_z(z)?;
        Self::check_w(w)?;
        let scale = 1.0 - z.norm_sqr();
        let wbar = w.conj();
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let (mut fz, mut fzbar, mut fw, mut fwbar) = (zero, zero, zero, zero);
        for (h, e) in self.values.iter().zip(&self.unit) {
            let gap = z - e;
            let p = scale / gap.norm_sqr();
            // ∂P/∂z = e/(z − e)², ∂P/∂z̄ is its conjugate
            let kernel = e / (gap * gap);
            let inv = one / (one - wbar * h);
            let q = (h - w) * inv;
            fz += q * kernel;
            fzbar += q * kernel.conj();
            fw -= inv * p;
            fwbar += h * q * inv * p;
        }
        let n = self.values.len() as f64;
        Ok(BarycenterDerivatives {
            fz: fz / n,
            fzbar: fzbar / n,
            fw: fw / n,
            fwbar: fwbar / n,
        })
    }

    /// `E(h)(z)`.
    pub fn extend(&self, z: Complex64) -> Result<Complex64> {
        self.check_z(z)?;
        let p = self.poisson(z);
        let n = self.values.len() as f64;
        // harmonic extension of h as the starting point
        let mut w = self.values.iter().zip(&p).map(|(h, p)| h * p).sum::<Complex64>() / n;
        Self::check_w(w)?;
        let tol = self.config.newton_tol;
        let (mut f, mut fw, mut fwbar) = self.newton_terms(&p, w);
        for _ in 0..self.config.max_iter {
            if f.norm() < tol {
                return Ok(w);
            }
            let det = fw.norm_sqr() - fwbar.norm_sqr();
            if !(det.abs() > 0.0) || !det.is_finite() {
                break;
            }
            // solve F_w δ + F_w̄ δ̄ = −F
            let step = (fwbar * f.conj() - f * fw.conj()) / det;
            let mut lambda = 1.0;
            let mut accepted = false;
            for _ in 0..40 {
                let candidate = w + step * lambda;
                if candidate.norm() < W_LIMIT {
                    let terms = self.newton_terms(&p, candidate);
                    if terms.0.norm() < f.norm() {
                        w = candidate;
                        (f, fw, fwbar) = terms;
                        accepted = true;
                        break;
                    }
                }
                lambda *= 0.5;
            }
            if !accepted {
                break;
            }
        }
        if f.norm() < tol {
            return Ok(w);
        }
        Err(Error::NonConvergence { z, residual: f.norm() })
    }

    /// Complex dilatation `μ = ∂_z̄ E(h) / ∂_z E(h)` at `z`.
    pub fn dilatation(&self, z: Complex64) -> Result<Complex64> {
        let w = self.extend(z)?;
        let (n, d) = self.derivatives(z, w)?.dilatation_parts();
        if d.norm() < DEGENERATE_DET {
            return Err(Error::DegenerateJacobian { z, det: d.norm() });
        }
        Ok(n / d)
    }

    pub fn extension_field(&self, grid: &PolarGrid) -> Result<DiskGrid> {
        self.field(grid, |z| self.extend(z))
    }

    pub fn dilatation_field(&self, grid: &PolarGrid) -> Result<DiskGrid> {
        self.field(grid, |z| self.dilatation(z))
    }

    fn field<F>(&self, grid: &PolarGrid, f: F) -> Result<DiskGrid>
    where
        F: Fn(Complex64) -> Result<Complex64> + Sync + Send,
    {
        let results = par::map_indexed(grid.len(), |i| f(grid.point(i)));
        let total = results.len();
        let mut values = Vec::with_capacity(total);
        let mut failed = 0;
        let mut first = None;
        for r in results {
            match r {
                Ok(v) => values.push(v),
                Err(e) => {
                    failed += 1;
                    first.get_or_insert(e);
                    values.push(Complex64::new(f64::NAN, f64::NAN));
                }
            }
        }
        if let Some(first) = first {
            return Err(Error::Field {
                failed,
                total,
                first: Box::new(first),
            });
        }
        DiskGrid::new(*grid, values)
    }
}

/// `F_h(z, w)`.
pub fn residual(h: &CircleHomeo, z: Complex64, w: Complex64, config: SolverConfig) -> Result<Complex64> {
    BoundaryData::new(h, config)?.residual(z, w)
}

pub fn derivatives_at(
    h: &CircleHomeo,
    z: Complex64,
    w: Complex64,
    config: SolverConfig,
) -> Result<BarycenterDerivatives> {
    BoundaryData::new(h, config)?.derivatives(z, w)
}

pub fn extend(h: &CircleHomeo, z: Complex64, config: SolverConfig) -> Result<Complex64> {
    BoundaryData::new(h, config)?.extend(z)
}

pub fn dilatation(h: &CircleHomeo, z: Complex64, config: SolverConfig) -> Result<Complex64> {
    BoundaryData::new(h, config)?.dilatation(z)
}

/// Dilatation at every node of `grid`; fails if any node fails.
pub fn dilatation_field(h: &CircleHomeo, grid: &PolarGrid, config: SolverConfig) -> Result<DiskGrid> {
    BoundaryData::new(h, config)?.dilatation_field(grid)
}
