//! Arithmetic statistics of quadratic fields: class groups, fundamental
//! units, ray class groups for rational moduli, closed-form predictions for
//! their distributions, bulk empirical surveys, and the classical bridge
//! from narrow ideal classes to closed geodesics on the modular surface.
//!
//! The crate is organized as a library with one thin command-line binary;
//! the `examples/` directory has one runnable example per major capability.

pub mod abelian;
pub mod arith;
pub mod bigfloat;
pub mod extensions;
pub mod measures;
pub mod snf;
