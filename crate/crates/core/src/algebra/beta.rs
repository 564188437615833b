use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Rule {
    Geometric(f64),
    Harmonic,
    Table(Vec<f64>),
}

/// A positive sequence `β(n)`, `n >= 1`, tending to zero, used to weight
/// the levels of the seminorm.
#[derive(Debug, Clone, PartialEq)]
pub struct BetaSequence {
    rule: Rule,
    monotone: bool,
}

impl BetaSequence {
    /// `β(n) = r^n` for `r ∈ (0, 1)`.
    pub fn geometric(ratio: f64) -> Result<Self> {
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(Error::InvalidBeta(format!(
                "geometric ratio {ratio} outside (0, 1)"
            )));
        }
        Ok(Self {
            rule: Rule::Geometric(ratio),
            monotone: true,
        })
    }

    /// `β(n) = 1/n`.
    pub fn harmonic() -> Self {
        Self {
            rule: Rule::Harmonic,
            monotone: true,
        }
    }

    /// `β(n) = values[n-1]` for `n <= values.len()`. The monotone flag is set
    /// when the table is non-increasing.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidBeta("empty table".into()));
        }
        if let Some(i) = values.iter().position(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::InvalidBeta(format!(
                "beta({}) = {} is not positive",
                i + 1,
                values[i]
            )));
        }
        let monotone = values.windows(2).all(|w| w[1] <= w[0]);
        Ok(Self {
            rule: Rule::Table(values),
            monotone,
        })
    }

    pub fn is_monotone(&self) -> bool {
        self.monotone
    }

    /// Largest `n` at which the sequence is defined, if finite.
    pub fn defined_up_to(&self) -> Option<usize> {
        match &self.rule {
            Rule::Table(v) => Some(v.len()),
            _ => None,
        }
    }

    pub fn at(&self, n: usize) -> Result<f64> {
        if n == 0 {
            return Err(Error::InvalidBeta("beta is indexed from n = 1".into()));
        }
        match &self.rule {
            Rule::Geometric(r) => Ok(r.powi(n as i32)),
            Rule::Harmonic => Ok(1.0 / n as f64),
            Rule::Table(v) => v.get(n - 1).copied().ok_or_else(|| {
                Error::InvalidBeta(format!(
                    "beta({n}) requested but only {} values are known",
                    v.len()
                ))
            }),
        }
    }

    pub fn values(&self, up_to: usize) -> Result<Vec<f64>> {
        (1..=up_to).map(|n| self.at(n)).collect()
    }

    /// Checks positivity, the monotone flag, and visible decay up to `level`.
    pub fn validate(&self, level: usize) -> Result<()> {
        let v = self.values(level.max(1))?;
        if v.iter().any(|b| !(b.is_finite() && *b > 0.0)) {
            return Err(Error::InvalidBeta("non-positive value".into()));
        }
        if self.monotone && v.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::InvalidBeta("flagged monotone but increases".into()));
        }
        if v.len() > 1 && v[v.len() - 1] >= v[0] {
            return Err(Error::InvalidBeta(format!(
                "no decay through level {level}"
            )));
        }
        Ok(())
    }
}
