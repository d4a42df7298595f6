#![allow(dead_code)]

use bary_core::{CircleHomeo, Complex64, DiskMobius};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random disk automorphism fixing 1 with `|a| ≤ radius`.
pub fn random_mobius(rng: &mut ChaCha8Rng, radius: f64) -> DiskMobius {
    let r = radius * rng.gen::<f64>().sqrt();
    let theta = rng.gen_range(0.0..std::f64::consts::TAU);
    DiskMobius::fixing_one(Complex64::from_polar(r, theta)).unwrap()
}

pub fn mobius_homeo(m: &DiskMobius, grid: usize) -> CircleHomeo {
    CircleHomeo::from_circle_map(grid, |z| m.apply(z)).unwrap()
}

/// `τ ∘ h ∘ α` on the circle.
pub fn conjugated(tau: &DiskMobius, h: &CircleHomeo, alpha: &DiskMobius, grid: usize) -> CircleHomeo {
    CircleHomeo::from_circle_map(grid, |z| tau.apply(h.apply(alpha.apply(z)))).unwrap()
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
