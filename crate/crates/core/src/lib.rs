//! Exact lattice computations, sphere-packing bounds and the supporting
//! Fourier, modular-form and root-system machinery.

// `!(x > 0.0)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod codes;
pub mod coxeter;
pub mod error;
pub mod exact;
pub mod geometry;
pub mod harmonic;
pub mod lattice;
pub mod lpbound;
pub mod modular;

pub use error::{Error, Result};
