use serde::Serialize;

use super::{BetaSequence, Filtration};
use crate::error::{Error, Result};
use crate::numerics::IDENTITY_TOL;

/// `L_β(a)` over the levels of a truncation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeminormReport {
    /// Max of `terms`.
    pub value: f64,
    /// `‖a - E_n(a)‖ / β(n)` for `n = 1..=N`.
    pub terms: Vec<f64>,
    /// The residual at the top level vanishes, so the truncated supremum is
    /// the supremum over the full filtration.
    pub exact: bool,
}

impl SeminormReport {
    /// Running maxima of the terms.
    pub fn running(&self) -> Vec<f64> {
        self.terms
            .iter()
            .scan(0.0_f64, |m, t| {
                *m = m.max(*t);
                Some(*m)
            })
            .collect()
    }
}

pub fn lip_seminorm<A: Filtration>(
    alg: &A,
    beta: &BetaSequence,
    a: &A::Element,
) -> Result<SeminormReport> {
    if !alg.is_self_adjoint(a) {
        return Err(Error::NotSelfAdjoint);
    }
    let mut terms = Vec::with_capacity(alg.top_level());
    let mut last_residual = 0.0;
    for n in 1..=alg.top_level() {
        last_residual = alg.residual(n, a)?;
        terms.push(last_residual / beta.at(n)?);
    }
    let value = terms.iter().copied().fold(0.0, f64::max);
    Ok(SeminormReport {
        value,
        terms,
        exact: last_residual <= IDENTITY_TOL,
    })
}
