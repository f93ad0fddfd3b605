//! Thermal quantum correlations of two gravitationally coupled qubits.
//!
//! The [`model`] module builds the Hamiltonian and its Gibbs state in closed
//! form, [`correlations`] evaluates steering, concurrence and trace-norm
//! geometric discord on any two-qubit X state, [`oracles`] holds brute-force
//! 4×4 linear algebra that cross-checks the closed forms, and [`sweep`] drives
//! parameter scans and threshold searches.
//!
//! The physics is generic over [`Real`] (`f32` or `f64`); the aliases below
//! fix the common `f64` instantiations.

// `!(x > 0)` is the NaN-rejecting form throughout.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod correlations;
pub mod error;
pub mod linalg;
pub mod model;
pub mod oracles;
pub mod scalar;
pub mod sweep;

pub use error::{Error, Result};
pub use scalar::Real;

pub type ModelParams64 = model::ModelParams<f64>;
pub type XState64 = model::XState<f64>;
pub type EigenSystem64 = model::EigenSystem<f64>;
pub type PhysicalGeometry64 = model::PhysicalGeometry<f64>;
pub type CorrelationReport64 = correlations::CorrelationReport<f64>;
pub type DensityMatrix64 = oracles::DensityMatrix4<f64>;

pub type ModelParams32 = model::ModelParams<f32>;
pub type XState32 = model::XState<f32>;
