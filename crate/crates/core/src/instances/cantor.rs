//! Truncation of `C({0,1}^ℕ)` at word length `D`, with the uniform
//! (Bernoulli 1/2) trace. Level `n` holds the functions of the first
//! `n - 1` letters.

use crate::algebra::{BetaSequence, PartitionAlgebra, PointFunction};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct CantorModel {
    depth: usize,
    algebra: PartitionAlgebra,
}

impl CantorModel {
    pub const MAX_DEPTH: usize = 16;

    pub fn new(depth: usize) -> Result<Self> {
        if !(1..=Self::MAX_DEPTH).contains(&depth) {
            return Err(Error::InvalidAlgebra(format!(
                "cantor depth {depth} outside 1..={}",
                Self::MAX_DEPTH
            )));
        }
        let size = 1usize << depth;
        let labels = (0..size).map(|i| word(i, depth)).collect();
        let weights = vec![1.0 / size as f64; size];
        let assignments = (1..=depth + 1)
            .map(|n| (0..size).map(|i| i >> (depth - (n - 1))).collect())
            .collect();
        let algebra = PartitionAlgebra::new(labels, weights, assignments)?;
        Ok(Self { depth, algebra })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn algebra(&self) -> &PartitionAlgebra {
        &self.algebra
    }

    /// Letter `k` (1-based) of the word at `index`.
    pub fn letter(&self, index: usize, k: usize) -> u8 {
        ((index >> (self.depth - k)) & 1) as u8
    }

    /// `r_k(w) = 1 - 2 w_k`.
    pub fn rademacher(&self, k: usize) -> Result<PointFunction> {
        if !(1..=self.depth).contains(&k) {
            return Err(Error::InvalidArgument(format!(
                "rademacher index {k} outside 1..={}",
                self.depth
            )));
        }
        Ok(PointFunction::new(
            (0..self.algebra.len())
                .map(|i| 1.0 - 2.0 * self.letter(i, k) as f64)
                .collect(),
        ))
    }

    /// Length of the longest common prefix of two words.
    pub fn prefix_len(&self, x: usize, y: usize) -> usize {
        (1..=self.depth)
            .take_while(|&k| self.letter(x, k) == self.letter(y, k))
            .count()
    }

    /// `2 β(p + 1)` for distinct words sharing a prefix of length `p`.
    pub fn prefix_distance(&self, beta: &BetaSequence, x: usize, y: usize) -> Result<f64> {
        if x == y {
            return Err(Error::InvalidArgument(
                "prefix distance needs distinct words".into(),
            ));
        }
        Ok(2.0 * beta.at(self.prefix_len(x, y) + 1)?)
    }
}

fn word(index: usize, depth: usize) -> String {
    (1..=depth)
        .map(|k| {
            if (index >> (depth - k)) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}
