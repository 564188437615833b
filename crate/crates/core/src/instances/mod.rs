//! The worked instances: the quantized interval, the Cantor space and the
//! `2^∞` UHF algebra.

mod cantor;
mod continuum;
mod interval;
mod uhf;

pub use cantor::CantorModel;
pub use continuum::{QuantizedInterval, SampledFunction};
pub use interval::{is_zero, IntervalModel, IntervalPoint, TAIL_LABEL};
pub use uhf::UhfModel;

use crate::algebra::PartitionAlgebra;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Instance {
    Interval(IntervalModel),
    Cantor(CantorModel),
    Uhf(UhfModel),
}

impl Instance {
    /// The commutative algebra behind the instance; matrix instances have none.
    pub fn partition_algebra(&self) -> Result<&PartitionAlgebra> {
        match self {
            Instance::Interval(m) => Ok(m.algebra()),
            Instance::Cantor(m) => Ok(m.algebra()),
            Instance::Uhf(_) => Err(Error::MatrixKindUnsupported),
        }
    }
}
