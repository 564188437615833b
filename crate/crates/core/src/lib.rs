//! Quantum metrics on truncated AF algebras.
//!
//! - [`algebra`]: filtered algebras, conditional expectations, the `L_β`
//!   seminorm and domain diagnostics.
//! - [`mk`]: states and Monge-Kantorovich distances by linear programming.
//! - [`instances`]: the quantized interval, the Cantor space and the `2^∞`
//!   UHF algebra.
//! - [`verify`]: named check suites with pass/fail reporting.

#![forbid(unsafe_code)]

pub mod algebra;
pub mod error;
pub mod instances;
pub mod mk;
pub mod numerics;
pub mod verify;

pub use algebra::{
    lip_seminorm, BetaSequence, Filtration, PartitionAlgebra, PointFunction, SeminormReport,
    TensorAlgebra,
};
pub use error::{Error, Result};
pub use instances::{
    CantorModel, Instance, IntervalModel, IntervalPoint, QuantizedInterval, SampledFunction,
    UhfModel,
};
pub use mk::{mk_distance, sandwich_bounds, DistanceReport, PointState};
