//! Truncated filtered algebras with a faithful tracial state, their
//! trace-preserving conditional expectations, and the seminorm
//! `L_β(a) = sup_n ‖a - E_n(a)‖ / β(n)` built from them.
//!
//! Levels are numbered `1..=N`. Level 1 is always the scalars and level `N`
//! is the whole truncation.

mod beta;
mod domain;
mod matrix;
mod partition;
mod seminorm;

pub use beta::BetaSequence;
pub use domain::{
    beta_from_element, beta_from_element_with_threshold, beta_squared_from_element,
    domain_separation_report, residual_decay, DomainSeparation,
};
pub use matrix::TensorAlgebra;
pub use partition::{Partition, PartitionAlgebra, PointFunction};
pub use seminorm::{lip_seminorm, SeminormReport};

use crate::error::{Error, Result};

/// A finite filtration `A_1 ⊆ A_2 ⊆ … ⊆ A_N` with a faithful trace and the
/// trace-preserving conditional expectations onto each level.
pub trait Filtration {
    type Element: Clone;

    /// Number of levels `N`.
    fn top_level(&self) -> usize;

    fn unit(&self) -> Self::Element;

    /// `E_level(a)`.
    fn expectation(&self, level: usize, a: &Self::Element) -> Result<Self::Element>;

    /// C*-norm of `a`.
    fn norm(&self, a: &Self::Element) -> Result<f64>;

    /// Real part of the tracial state.
    fn trace(&self, a: &Self::Element) -> f64;

    /// `alpha * a + beta * b`.
    fn combine(&self, a: &Self::Element, alpha: f64, b: &Self::Element, beta: f64)
        -> Self::Element;

    fn product(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;

    fn is_self_adjoint(&self, a: &Self::Element) -> bool;

    fn check_level(&self, level: usize) -> Result<()> {
        if level == 0 || level > self.top_level() {
            Err(Error::LevelOutOfRange {
                level,
                max: self.top_level(),
            })
        } else {
            Ok(())
        }
    }

    /// `‖a - E_level(a)‖`.
    fn residual(&self, level: usize, a: &Self::Element) -> Result<f64> {
        let e = self.expectation(level, a)?;
        self.norm(&self.combine(a, 1.0, &e, -1.0))
    }
}
