//! Numerical toolkit for the barycentric (Douady–Earle) extension of circle
//! homeomorphisms.
//!
//! The crate computes the extension `E(h)` by solving the barycenter equation
//! on a periodic quadrature grid, its complex dilatation, the first-order
//! variation of the dilatation along the flow `h_t` generated by a band-limited
//! direction `b`, and the Carleson/BMO style diagnostics that go with it.
//!
//! Everything here is pure computation. The crate is `no_std` (with `alloc`)
//! when built without the default `std` feature; file formats and the command
//! line live in the companion `bary-cli` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod barycentric;
pub mod carleson;
pub mod circle_maps;
pub mod error;
pub mod gateaux;
pub mod grid;
pub mod mobius;
pub mod quadrature;
pub mod schwarzian;
pub mod series;

mod par;

pub use barycentric::{BarycenterDerivatives, BoundaryData, SolverConfig};
pub use carleson::{CarlesonConfig, CarlesonProfile, RadialGridMeasure};
pub use circle_maps::{Antiderivative, CircleHomeo, TrigPolynomial};
pub use error::{Error, Result};
pub use gateaux::{FeffermanStein, FiniteDiffReport};
pub use grid::{DiskGrid, PolarGrid};
pub use mobius::DiskMobius;
pub use num_complex::Complex64;
pub use quadrature::PeriodicRule;
pub use series::{Domain, LaurentSeries};

pub(crate) mod prelude {
    pub(crate) use alloc::boxed::Box;
    pub(crate) use alloc::vec;
    pub(crate) use alloc::vec::Vec;
    pub(crate) use core::f64::consts::{PI, TAU};
    pub(crate) use num_complex::Complex64;
    // Inherent float methods are unavailable without std; the trait supplies
    // them through libm.
    #[allow(unused_imports)]
    pub(crate) use num_traits::Float;
}
