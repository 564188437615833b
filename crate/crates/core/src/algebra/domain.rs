use serde::Serialize;

use super::{BetaSequence, Filtration};
use crate::error::{Error, Result};
use crate::numerics::IDENTITY_TOL;

/// `‖a - E_n(a)‖` for `n = 1..=levels`.
pub fn residual_decay<A: Filtration>(alg: &A, a: &A::Element, levels: usize) -> Result<Vec<f64>> {
    alg.check_level(levels)?;
    (1..=levels).map(|n| alg.residual(n, a)).collect()
}

/// `β_a(n) = ‖a - E_n(a)‖`, rejecting elements that already lie in one of
/// the first `levels` levels.
pub fn beta_from_element<A: Filtration>(
    alg: &A,
    a: &A::Element,
    levels: usize,
) -> Result<BetaSequence> {
    beta_from_element_with_threshold(alg, a, levels, IDENTITY_TOL)
}

pub fn beta_from_element_with_threshold<A: Filtration>(
    alg: &A,
    a: &A::Element,
    levels: usize,
    zero_threshold: f64,
) -> Result<BetaSequence> {
    BetaSequence::from_values(nonzero_residuals(alg, a, levels, zero_threshold)?)
}

/// `β_a(n)^2`.
pub fn beta_squared_from_element<A: Filtration>(
    alg: &A,
    a: &A::Element,
    levels: usize,
) -> Result<BetaSequence> {
    let r = nonzero_residuals(alg, a, levels, IDENTITY_TOL)?;
    BetaSequence::from_values(r.into_iter().map(|x| x * x).collect())
}

fn nonzero_residuals<A: Filtration>(
    alg: &A,
    a: &A::Element,
    levels: usize,
    zero_threshold: f64,
) -> Result<Vec<f64>> {
    let residuals = residual_decay(alg, a, levels)?;
    if let Some(n) = residuals.iter().position(|r| *r <= zero_threshold) {
        return Err(Error::ZeroResidual {
            level: n + 1,
            residual: residuals[n],
        });
    }
    Ok(residuals)
}

/// Running seminorm values of `a` under `β_a` and `β_a²`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DomainSeparation {
    pub beta_a: Vec<f64>,
    pub beta_a_squared: Vec<f64>,
    /// `max_{m<=n} ‖a - E_m(a)‖ / β_a(m)`; identically 1.
    pub running_beta_a: Vec<f64>,
    /// `max_{m<=n} ‖a - E_m(a)‖ / β_a(m)²`; grows without bound.
    pub running_beta_a_squared: Vec<f64>,
    /// Ratio of the last two entries of `running_beta_a_squared`.
    pub growth_ratio: f64,
}

impl DomainSeparation {
    pub fn last_squared(&self) -> f64 {
        self.running_beta_a_squared.last().copied().unwrap_or(0.0)
    }
}

pub fn domain_separation_report<A: Filtration>(
    alg: &A,
    a: &A::Element,
    levels: usize,
) -> Result<DomainSeparation> {
    let beta = beta_from_element(alg, a, levels)?;
    let beta_sq = beta_squared_from_element(alg, a, levels)?;
    let residuals = residual_decay(alg, a, levels)?;

    let running = |b: &BetaSequence| -> Result<Vec<f64>> {
        let mut acc = 0.0_f64;
        residuals
            .iter()
            .enumerate()
            .map(|(i, r)| {
                acc = acc.max(r / b.at(i + 1)?);
                Ok(acc)
            })
            .collect()
    };
    let running_beta_a = running(&beta)?;
    let running_beta_a_squared = running(&beta_sq)?;
    let growth_ratio = match running_beta_a_squared.as_slice() {
        [.., prev, last] => last / prev,
        _ => 1.0,
    };
    Ok(DomainSeparation {
        beta_a: beta.values(levels)?,
        beta_a_squared: beta_sq.values(levels)?,
        running_beta_a,
        running_beta_a_squared,
        growth_ratio,
    })
}
