//! Dense linear algebra, exact dyadic arithmetic, a simplex solver and a
//! spectral-norm routine.

mod complex;
mod dense;
mod lp;
mod lp_family;
pub mod rational;
mod spectral;
mod sum;

pub use complex::ComplexMatrix;
pub use dense::DenseMatrix;
pub use lp::{solve_lp, LpProblem, LpSolution, LpStatus};
pub use lp_family::LpFamily;
pub use spectral::{spectral_norm, spectral_norm_complex, POWER_ITERATION_CAP};
pub use sum::{compensated_sum, weighted_mean};

/// Feasibility tolerance used by the LP solver and its post-checks.
pub const FEASIBILITY_TOL: f64 = 1e-9;

/// Tolerance for identities that hold exactly in real arithmetic.
pub const IDENTITY_TOL: f64 = 1e-12;
