//! Construction and measurement of the classical geometric fractals:
//! Cantor-type sets on the line, the Cantor function, Sierpinski
//! triangle/carpet and their 3D relatives, plus the machinery built on
//! top of them — multifractal spectra, empirical dimension estimators,
//! lacunarity/order measures and percolation renormalization on the
//! carpet lattice.
//!
//! One-dimensional constructions use exact rational arithmetic
//! throughout; everything derived from limits (dimensions, spectra,
//! fixed points) is `f64`.

pub mod cantor;
pub mod error;
pub mod estimators;
pub mod grid;
pub mod measures;
pub mod multifractal;
pub mod percolation;
pub mod rat;
pub mod reproduce;
pub mod rng;
pub mod sierpinski;
pub mod staircase;

pub use error::{Error, Result};
pub use rng::SplitMix64;
