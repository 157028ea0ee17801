//! Numerical toolkit for the classical (Mayer-field) picture of
//! wave–particle duality.
//!
//! The crate covers two largely independent halves:
//!
//! * planar optics: the closed-form two-slit Gaussian field ([`beam`]), its
//!   Madelung velocity field, Bohmian trajectory integration
//!   ([`trajectory`]), paraxial Fresnel propagation ([`fresnel`]) and
//!   residual evaluators for the real/imaginary splittings of the Helmholtz,
//!   Schrödinger and short-wave equations ([`eikonal`]);
//! * relativistic checks: finite-difference tensor calculus on periodic 4D
//!   Minkowski lattices ([`lattice`]), Carathéodory's fundamental equations
//!   for the free particle ([`variational`]) and recovery of a velocity field
//!   from a probability four-current ([`inversion`]).
//!
//! Units are dimensionless with `c = 1`; lengths default to multiples of the
//! beam waist `W0`.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod beam;
pub mod eikonal;
pub mod error;
pub mod fresnel;
pub mod grid;
pub mod inversion;
pub mod lattice;
pub mod minkowski;
pub mod residual;
pub mod trajectory;
pub mod variational;

pub use error::{Error, Result};
pub use residual::ResidualReport;

/// Complex sample type used by the field evaluators.
pub type ComplexValue = num_complex::Complex64;
