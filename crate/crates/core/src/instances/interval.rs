//! Truncation of `C(N̄)` at level `N`: the points `1, 1/2, …, 1/2^{N-2}`
//! kept separately, and everything at or below `1/2^{N-1}` (including 0)
//! merged into a single tail point.

use num_traits::Zero;

use crate::algebra::{BetaSequence, Filtration, PartitionAlgebra, PointFunction};
use crate::error::{Error, Result};
use crate::numerics::rational::{self, Rational};
use crate::numerics::DenseMatrix;

pub const TAIL_LABEL: &str = "0";

/// A point of `N̄`: either `2^{1-k}` for `k >= 1`, or 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IntervalPoint {
    Dyadic(usize),
    Zero,
}

impl IntervalPoint {
    pub fn label(&self) -> String {
        match *self {
            IntervalPoint::Dyadic(1) => "1".to_string(),
            IntervalPoint::Dyadic(k) => format!("1/{}", 1u64 << (k - 1)),
            IntervalPoint::Zero => TAIL_LABEL.to_string(),
        }
    }

    pub fn value(&self) -> f64 {
        match *self {
            IntervalPoint::Dyadic(k) => 2f64.powi(1 - k as i32),
            IntervalPoint::Zero => 0.0,
        }
    }

    /// `1 - log2(x)`, with `None` for `x = 0`.
    pub fn level_index(&self) -> Option<usize> {
        match *self {
            IntervalPoint::Dyadic(k) => Some(k),
            IntervalPoint::Zero => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntervalModel {
    level: usize,
    algebra: PartitionAlgebra,
}

impl IntervalModel {
    pub const MAX_LEVEL: usize = 60;

    /// Truncation at level `N >= 2` with the weights `v_k = 2^{-k}`.
    pub fn new(level: usize) -> Result<Self> {
        Self::check_size(level)?;
        let mut weights: Vec<f64> = (1..level).map(|k| 2f64.powi(-(k as i32))).collect();
        weights.push(2f64.powi(1 - level as i32));
        Self::with_weights(level, weights)
    }

    /// Same filtration with arbitrary point weights; the last weight is the
    /// tail mass.
    pub fn with_weights(level: usize, weights: Vec<f64>) -> Result<Self> {
        Self::check_size(level)?;
        let labels = Self::points(level)
            .iter()
            .map(IntervalPoint::label)
            .collect();
        let assignments = (1..=level)
            .map(|n| {
                (0..level)
                    .map(|i| if i + 1 < n { i } else { n - 1 })
                    .collect()
            })
            .collect();
        let algebra = PartitionAlgebra::new(labels, weights, assignments)?;
        Ok(Self { level, algebra })
    }

    fn check_size(level: usize) -> Result<()> {
        if !(2..=Self::MAX_LEVEL).contains(&level) {
            return Err(Error::InvalidAlgebra(format!(
                "interval level {level} outside 2..={}",
                Self::MAX_LEVEL
            )));
        }
        Ok(())
    }

    /// The `N` points, tail last.
    pub fn points(level: usize) -> Vec<IntervalPoint> {
        (1..level)
            .map(IntervalPoint::Dyadic)
            .chain(std::iter::once(IntervalPoint::Zero))
            .collect()
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn algebra(&self) -> &PartitionAlgebra {
        &self.algebra
    }

    pub fn point_index(&self, p: IntervalPoint) -> Result<usize> {
        match p {
            IntervalPoint::Dyadic(k) if (1..self.level).contains(&k) => Ok(k - 1),
            IntervalPoint::Zero => Ok(self.level - 1),
            _ => Err(Error::UnknownPoint(p.label())),
        }
    }

    fn check_index(&self, n: usize, lo: usize) -> Result<()> {
        if n < lo || n >= self.level {
            return Err(Error::InvalidArgument(format!(
                "index {n} outside {lo}..={}",
                self.level - 1
            )));
        }
        Ok(())
    }

    fn exact_to_float(v: &[Rational]) -> PointFunction {
        PointFunction::new(
            v.iter()
                .map(|r| *r.numer() as f64 / *r.denom() as f64)
                .collect(),
        )
    }

    pub fn chi_exact(&self, n: usize) -> Result<Vec<Rational>> {
        if n == 0 {
            return Ok(rational::zeros(self.level));
        }
        self.check_index(n, 1)?;
        Ok((0..self.level)
            .map(|i| rational::from_int((i + 1 == n) as i64))
            .collect())
    }

    pub fn chi_tail_exact(&self, n: usize) -> Result<Vec<Rational>> {
        self.check_index(n, 1)?;
        Ok((0..self.level)
            .map(|i| rational::from_int((i + 1 >= n) as i64))
            .collect())
    }

    pub fn phi_exact(&self, n: usize) -> Result<Vec<Rational>> {
        if n == 0 {
            return Ok(vec![rational::from_int(1); self.level]);
        }
        self.check_index(n, 1)?;
        Ok((0..self.level)
            .map(|i| {
                let k = i + 1;
                rational::from_int(if k < n {
                    0
                } else if k == n {
                    -1
                } else {
                    1
                })
            })
            .collect())
    }

    /// Indicator `χ_n` of the point `1/2^{n-1}`; `χ_0 = 0`.
    pub fn chi(&self, n: usize) -> Result<PointFunction> {
        self.chi_exact(n).map(|v| Self::exact_to_float(&v))
    }

    /// Indicator of `{x <= 1/2^{n-1}}`.
    pub fn chi_tail(&self, n: usize) -> Result<PointFunction> {
        self.chi_tail_exact(n).map(|v| Self::exact_to_float(&v))
    }

    /// `φ_0 = 1`; for `n >= 1`, 0 above `1/2^{n-1}`, -1 at it, 1 below.
    pub fn phi(&self, n: usize) -> Result<PointFunction> {
        self.phi_exact(n).map(|v| Self::exact_to_float(&v))
    }

    /// Right side of `χ_n = 2^{-(n+1)}(φ_0 - 2^{n+1} φ_n) + Σ_{k=0}^n 2^{-(k+1)} φ_{n-k}`.
    pub fn chi_expansion(&self, n: usize) -> Result<Vec<Rational>> {
        if n + 2 > 62 {
            return Err(Error::InvalidArgument(format!(
                "index {n} too large for exact dyadics"
            )));
        }
        let phi_n = self.phi_exact(n)?;
        let head: Vec<Rational> = self
            .phi_exact(0)?
            .iter()
            .zip(&phi_n)
            .map(|(p0, pn)| {
                rational::inv_pow2(n as u32 + 1) * (p0 - rational::from_int(1 << (n + 1)) * pn)
            })
            .collect();
        (0..=n).try_fold(head, |acc, k| {
            Ok(rational::axpy(
                rational::inv_pow2(k as u32 + 1),
                &self.phi_exact(n - k)?,
                &acc,
            ))
        })
    }

    /// Exact pointwise check of the `χ_n` expansion in the `φ` basis.
    pub fn chi_expansion_check(&self, n: usize) -> Result<bool> {
        Ok(self.chi_expansion(n)? == self.chi_exact(n)?)
    }

    /// `φ_n φ_m` equals `φ_max(n,m)` when `n != m` and the tail indicator
    /// when `n = m` (the unit when `n = m = 0`).
    pub fn product_table_check(&self, n: usize, m: usize) -> Result<bool> {
        let (a, b) = (self.phi_exact(n)?, self.phi_exact(m)?);
        let prod: Vec<Rational> = a.iter().zip(&b).map(|(x, y)| x * y).collect();
        let expected = match (n, m) {
            (0, 0) => self.phi_exact(0)?,
            _ if n == m => self.chi_tail_exact(n)?,
            _ => self.phi_exact(n.max(m))?,
        };
        Ok(prod == expected)
    }

    /// `τ(φ_n φ_m)` for `n != m`.
    pub fn orthogonality_check(&self, n: usize, m: usize) -> Result<f64> {
        if n == m {
            return Err(Error::InvalidArgument(
                "orthogonality check needs n != m".into(),
            ));
        }
        let alg = &self.algebra;
        Ok(alg.trace(&alg.product(&self.phi(n)?, &self.phi(m)?)))
    }

    /// Gram matrix `τ(φ_i φ_j)` for `0 <= i, j < count`.
    pub fn gram_matrix(&self, count: usize) -> Result<DenseMatrix> {
        let phis = (0..count)
            .map(|i| self.phi(i))
            .collect::<Result<Vec<_>>>()?;
        let alg = &self.algebra;
        let mut g = DenseMatrix::zeros(count, count);
        for i in 0..count {
            for j in 0..count {
                g[(i, j)] = alg.trace(&alg.product(&phis[i], &phis[j]));
            }
        }
        Ok(g)
    }

    /// Change of basis from `{φ_0, …, φ_{n-1}}` to the block indicators of
    /// level `n`. Returns its infinity-norm condition number, or `None` when
    /// it is singular.
    pub fn span_condition(&self, n: usize) -> Result<Option<f64>> {
        let partition = self.algebra.partition(n)?;
        let phis = (0..n)
            .map(|j| self.phi_exact(j))
            .collect::<Result<Vec<_>>>()?;
        let rows: Vec<Vec<Rational>> = partition
            .blocks()
            .iter()
            .map(|block| {
                let rep = block[0];
                if block
                    .iter()
                    .any(|&p| phis.iter().any(|phi| phi[p] != phi[rep]))
                {
                    return Err(Error::InvalidArgument(
                        "phi not constant on a level block".into(),
                    ));
                }
                Ok(phis.iter().map(|phi| phi[rep]).collect())
            })
            .collect::<Result<_>>()?;
        let Some(inv) = rational::invert(&rows) else {
            return Ok(None);
        };
        let inf_norm = |m: &[Vec<Rational>]| {
            m.iter()
                .map(|r| {
                    r.iter()
                        .map(|x| (*x.numer() as f64 / *x.denom() as f64).abs())
                        .sum::<f64>()
                })
                .fold(0.0, f64::max)
        };
        Ok(Some(inf_norm(&rows) * inf_norm(&inv)))
    }

    /// `2 β(min{1 - log2 x, 1 - log2 y})`, with `log2 0 = -∞`.
    pub fn closed_form_mk(
        &self,
        beta: &BetaSequence,
        x: IntervalPoint,
        y: IntervalPoint,
    ) -> Result<f64> {
        if x == y {
            return Err(Error::InvalidArgument(
                "closed form needs distinct points".into(),
            ));
        }
        self.point_index(x)?;
        self.point_index(y)?;
        if !beta.is_monotone() {
            return Err(Error::InvalidBeta(
                "closed form needs a non-increasing beta".into(),
            ));
        }
        let n = match (x.level_index(), y.level_index()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => unreachable!("distinct points"),
        };
        Ok(2.0 * beta.at(n)?)
    }
}

/// True when every entry is zero.
pub fn is_zero(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}
