//! Delta expansion with minimal-sensitivity tuning for turning-point
//! integrals `∫ [F - f(x)]^ν g(x) dx`, and its applications: anharmonic
//! oscillator periods, Schwarzschild light bending and perihelion shift,
//! WKB spectra of the quartic oscillator, and accelerated series for ζ(s).

// `!(x > 0.0)` is used deliberately so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
mod error;
pub mod gr;
pub mod method;
pub mod oscillators;
pub mod quad;
pub mod selftest;
pub mod specfun;
pub mod wkb;
pub mod zeta;

pub use error::{Error, Result};
pub use num_complex::Complex64;
