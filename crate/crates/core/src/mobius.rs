//! Automorphisms of the unit disk.

use crate::error::{Error, Result};
use crate::prelude::*;

/// `z ↦ λ (z − a) / (1 − ā z)` with `|λ| = 1`, `|a| < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskMobius {
    rotation: Complex64,
    center: Complex64,
}

impl DiskMobius {
    pub fn new(rotation: Complex64, center: Complex64) -> Result<Self> {
        if center.norm() >= 1.0 {
            return Err(Error::OutOfDomain {
                what: "a",
                modulus: center.norm(),
                limit: 1.0,
            });
        }
        let r = rotation.norm();
        if (r - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput("Mobius rotation must have modulus 1"));
        }
        Ok(DiskMobius {
            rotation: rotation / r,
            center,
        })
    }

    pub fn identity() -> Self {
        DiskMobius {
            rotation: Complex64::new(1.0, 0.0),
            center: Complex64::new(0.0, 0.0),
        }
    }

    /// The automorphism sending `a` to `0` and fixing `1`.
    pub fn fixing_one(center: Complex64) -> Result<Self> {
        let one = Complex64::new(1.0, 0.0);
        let rotation = (one - center.conj()) / (one - center);
        DiskMobius::new(rotation, center)
    }

    pub fn rotation(&self) -> Complex64 {
        self.rotation
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        self.rotation * (z - self.center) / (1.0 - self.center.conj() * z)
    }

    pub fn inverse(&self) -> DiskMobius {
        // w = λ(z − a)/(1 − āz)  ⇔  z = λ̄(w + λa)/(1 + λ̄ā w)
        DiskMobius {
            rotation: self.rotation.conj(),
            center: -self.rotation * self.center,
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &DiskMobius) -> DiskMobius {
        let center = other.inverse().apply(self.center);
        let g = |z: Complex64| self.apply(other.apply(z));
        // g(z) = λ(z − c)/(1 − c̄z), so g(0) = −λc, and g(z) = λz when c = 0
        let rotation = if center.norm() > 1e-8 {
            -g(Complex64::new(0.0, 0.0)) / center
        } else {
            let probe = Complex64::new(0.5, 0.0);
            g(probe) * (1.0 - center.conj() * probe) / (probe - center)
        };
        DiskMobius {
            rotation: rotation / rotation.norm(),
            center,
        }
    }
}
