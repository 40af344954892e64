//! Generalized equiangular measurements and the uncertainty relations they
//! satisfy.
//!
//! A generalized equiangular measurement (GEAM) is a collection of rescaled
//! POVMs `Q_{μ,j} = γ_μ E_{μ,j}` whose elements have equal traces, equal
//! Hilbert-Schmidt norms within each group, and fixed overlaps. From those
//! few parameters the crate derives weighted estimates of the index of
//! coincidence and, through diagram functions, lower bounds on Tsallis and
//! Rényi entropies and upper bounds on outcome probabilities.
//!
//! The crate is `no_std` with `alloc`. Enable the `serde` feature for
//! serializable reports.

#![no_std]
// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod bounds;
pub mod catalog;
pub mod diagrams;
pub mod eigen;
pub mod entropies;
pub mod error;
pub mod linalg;
pub mod measurements;
pub mod sampling;

pub use error::{Condition, Error, Result};
pub use linalg::{BlochVector, DensityMatrix, HermitianOperator, Matrix, C64};
pub use measurements::{EquiangularMeasurement, Povm, SymmetricMeasurementSet};
