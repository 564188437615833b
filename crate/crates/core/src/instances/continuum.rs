//! The full algebra `C(N̄)` of convergent sequences on
//! `N̄ = {1, 1/2, 1/4, …} ∪ {0}`, with `τ(f) = Σ_k 2^{-k} f(2^{1-k})`.
//!
//! Elements are stored as explicit samples at `k = 1..=K` plus a polynomial
//! tail `f(k) = Σ_j c_j x^j` with `x = 2^{1-k}` for `k > K`; the limit at 0
//! is `c_0`. Expectations, traces and norms are computed from the
//! closed-form geometric tail sums, so nothing is truncated.

use serde::{Deserialize, Serialize};

use crate::algebra::Filtration;
use crate::error::{Error, Result};
use crate::numerics::compensated_sum;

// Tail points evaluated explicitly when taking a sup; the remainder of a
// degree-d tail past this is below |c_j| 2^{-TAIL_SCAN}.
const TAIL_SCAN: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledFunction {
    head: Vec<f64>,
    tail: Vec<f64>,
}

impl SampledFunction {
    /// Samples `values[k-1] = f(2^{1-k})` with limit `limit` at 0. With
    /// `affine`, the unsampled points follow the line through the last
    /// sample and the limit (exact for `p_1(x) = x`); otherwise they are
    /// taken equal to `limit`.
    pub fn from_samples(values: Vec<f64>, limit: f64, affine: bool) -> Result<Self> {
        if values
            .iter()
            .chain(std::iter::once(&limit))
            .any(|v| !v.is_finite())
        {
            return Err(Error::NonFinite);
        }
        let slope = match values.last() {
            Some(&last) if affine => (last - limit) / x_at(values.len()),
            _ => 0.0,
        };
        let tail = if slope == 0.0 {
            vec![limit]
        } else {
            vec![limit, slope]
        };
        Ok(Self { head: values, tail })
    }

    pub fn constant(c: f64) -> Self {
        Self {
            head: Vec::new(),
            tail: vec![c],
        }
    }

    /// `p_1(x) = x`, sampled at `cutoff` points.
    pub fn p1(cutoff: usize) -> Self {
        Self {
            head: (1..=cutoff).map(x_at).collect(),
            tail: vec![0.0, 1.0],
        }
    }

    pub fn cutoff(&self) -> usize {
        self.head.len()
    }

    pub fn limit(&self) -> f64 {
        self.tail[0]
    }

    /// `f(2^{1-k})` for `k >= 1`.
    pub fn value_at(&self, k: usize) -> f64 {
        assert!(k >= 1, "points are indexed from 1");
        match self.head.get(k - 1) {
            Some(v) => *v,
            None => eval_poly(&self.tail, x_at(k)),
        }
    }

    /// `Σ_{k >= m} 2^{-k} f(2^{1-k})` for `m > cutoff`.
    fn tail_mass(&self, m: usize) -> f64 {
        debug_assert!(m > self.head.len());
        compensated_sum(self.tail.iter().enumerate().map(|(j, c)| {
            let j = j as i32;
            c * 2f64.powi(j) * 2f64.powi(-(m as i32) * (j + 1)) / (1.0 - 2f64.powi(-(j + 1)))
        }))
    }

    /// Weighted sum over the block `{k >= m} ∪ {0}`, smallest weights first.
    fn block_mass(&self, m: usize) -> f64 {
        let start = m.max(self.head.len() + 1);
        let tail = self.tail_mass(start);
        let explicit = (m..start)
            .rev()
            .map(|k| 2f64.powi(-(k as i32)) * self.head[k - 1]);
        compensated_sum(std::iter::once(tail).chain(explicit))
    }

    /// Largest `|f - c|` over the block `{k >= m} ∪ {0}`.
    fn block_sup_deviation(&self, m: usize, c: f64) -> f64 {
        let scan_end = m.max(self.head.len() + 1) + TAIL_SCAN;
        (m..scan_end)
            .map(|k| (self.value_at(k) - c).abs())
            .fold((self.limit() - c).abs(), f64::max)
    }

    fn combine(&self, alpha: f64, other: &Self, beta: f64) -> Self {
        let k = self.head.len().max(other.head.len());
        let head = (1..=k)
            .map(|i| alpha * self.value_at(i) + beta * other.value_at(i))
            .collect();
        let d = self.tail.len().max(other.tail.len());
        let tail = (0..d)
            .map(|j| {
                alpha * self.tail.get(j).unwrap_or(&0.0) + beta * other.tail.get(j).unwrap_or(&0.0)
            })
            .collect();
        Self { head, tail }
    }

    fn product(&self, other: &Self) -> Self {
        let k = self.head.len().max(other.head.len());
        let head = (1..=k)
            .map(|i| self.value_at(i) * other.value_at(i))
            .collect();
        let mut tail = vec![0.0; self.tail.len() + other.tail.len() - 1];
        for (i, a) in self.tail.iter().enumerate() {
            for (j, b) in other.tail.iter().enumerate() {
                tail[i + j] += a * b;
            }
        }
        Self { head, tail }
    }
}

fn x_at(k: usize) -> f64 {
    2f64.powi(1 - k as i32)
}

fn eval_poly(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, cj| acc * x + cj)
}

/// `C(N̄)` with its filtration `C_1 ⊆ C_2 ⊆ …`, viewed through the first
/// `levels` levels. No level is the whole algebra, so residuals of elements
/// outside every `C_n` stay positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuantizedInterval {
    levels: usize,
}

impl QuantizedInterval {
    pub fn new(levels: usize) -> Result<Self> {
        if levels == 0 || levels > 1000 {
            return Err(Error::InvalidAlgebra(format!(
                "working level {levels} outside 1..=1000"
            )));
        }
        Ok(Self { levels })
    }
}

impl Filtration for QuantizedInterval {
    type Element = SampledFunction;

    fn top_level(&self) -> usize {
        self.levels
    }

    fn unit(&self) -> SampledFunction {
        SampledFunction::constant(1.0)
    }

    /// Keeps `f` on the points `1, …, 2^{2-n}` and replaces it on
    /// `{x <= 2^{1-n}}` by its `τ`-weighted mean there.
    fn expectation(&self, level: usize, a: &SampledFunction) -> Result<SampledFunction> {
        self.check_level(level)?;
        let mean = a.block_mass(level) / 2f64.powi(1 - level as i32);
        let head = (1..level).map(|k| a.value_at(k)).collect();
        Ok(SampledFunction {
            head,
            tail: vec![mean],
        })
    }

    fn norm(&self, a: &SampledFunction) -> Result<f64> {
        let head = a.head.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        Ok(head.max(a.block_sup_deviation(a.head.len() + 1, 0.0)))
    }

    fn trace(&self, a: &SampledFunction) -> f64 {
        a.block_mass(1)
    }

    fn combine(
        &self,
        a: &SampledFunction,
        alpha: f64,
        b: &SampledFunction,
        beta: f64,
    ) -> SampledFunction {
        a.combine(alpha, b, beta)
    }

    fn product(&self, a: &SampledFunction, b: &SampledFunction) -> SampledFunction {
        a.product(b)
    }

    fn is_self_adjoint(&self, a: &SampledFunction) -> bool {
        a.head.iter().chain(&a.tail).all(|v| v.is_finite())
    }

    /// Computed blockwise: outside the tail block the residual is zero.
    fn residual(&self, level: usize, a: &SampledFunction) -> Result<f64> {
        self.check_level(level)?;
        let mean = a.block_mass(level) / 2f64.powi(1 - level as i32);
        Ok(a.block_sup_deviation(level, mean))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p1_trace_is_two_thirds() {
        // Σ 2^{-k} 2^{1-k} = 2 Σ 4^{-k} = 2/3
        let space = QuantizedInterval::new(5).unwrap();
        let p = SampledFunction::p1(7);
        assert!((space.trace(&p) - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(space.norm(&p).unwrap(), 1.0);
    }

    #[test]
    fn affine_samples_reproduce_p1() {
        let values: Vec<f64> = (1..=5).map(x_at).collect();
        let f = SampledFunction::from_samples(values, 0.0, true).unwrap();
        let p = SampledFunction::p1(3);
        for k in 1..40 {
            assert!((f.value_at(k) - p.value_at(k)).abs() < 1e-18);
        }
    }

    #[test]
    fn non_affine_tail_is_constant() {
        let f = SampledFunction::from_samples(vec![1.0, 2.0], 5.0, false).unwrap();
        assert_eq!(f.value_at(3), 5.0);
        assert_eq!(f.value_at(100), 5.0);
    }

    #[test]
    fn residual_matches_generic_route() {
        let space = QuantizedInterval::new(12).unwrap();
        let p = SampledFunction::p1(6);
        for n in 1..=12 {
            let e = space.expectation(n, &p).unwrap();
            let generic = space.norm(&space.combine(&p, 1.0, &e, -1.0)).unwrap();
            assert!((generic - space.residual(n, &p).unwrap()).abs() < 1e-15);
        }
    }

    #[test]
    fn product_of_tails_is_polynomial() {
        let space = QuantizedInterval::new(3).unwrap();
        let p = SampledFunction::p1(2);
        let sq = space.product(&p, &p);
        // Σ 2^{-k} 4^{1-k} = 4 Σ 8^{-k} = 4/7
        assert!((space.trace(&sq) - 4.0 / 7.0).abs() < 1e-15);
        assert!((sq.value_at(10) - x_at(10).powi(2)).abs() < 1e-20);
    }
}
