//! Exact computational machinery for Grassmannians, Fano schemes of
//! hypersurfaces and the numeric bounds of unirationality theorems.
//!
//! Everything here is pure and allocation-only (`no_std` + `alloc`): exact
//! fields ([`field`]), dense matrices ([`matrix`]), sparse polynomials
//! ([`poly`]), Plücker/Semple geometry ([`grassmann`]), planes on
//! hypersurfaces and families ([`fano`]) and integer bound certificates
//! ([`bounds`]). IO, JSON and the command line live in the `fanokit` crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod combinatorics;
pub mod error;
pub mod fano;
pub mod field;
pub mod grassmann;
pub mod matrix;
pub mod poly;

pub use error::{Error, ErrorKind, Result};
pub use field::{FieldElement, FieldSpec};
pub use matrix::ExactMatrix;
pub use poly::{Homogeneity, Poly, Ring};

/// Default budget for exhaustive searches, in elementary evaluations.
pub const DEFAULT_BUDGET: u128 = 100_000_000;
