use rand::Rng;
use serde::{Deserialize, Serialize};

use super::Filtration;
use crate::error::{Error, Result};
use crate::numerics::{compensated_sum, weighted_mean, IDENTITY_TOL};

/// A real function on the points of a commutative truncation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointFunction(Vec<f64>);

impl PointFunction {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn constant(len: usize, c: f64) -> Self {
        Self(vec![c; len])
    }

    pub fn indicator(len: usize, support: impl IntoIterator<Item = usize>) -> Self {
        let mut v = vec![0.0; len];
        support.into_iter().for_each(|i| v[i] = 1.0);
        Self(v)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl From<Vec<f64>> for PointFunction {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

/// One level of the filtration: a partition of the point set. Each block's
/// members are stored in order of increasing weight.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    block_of: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn block_of(&self, point: usize) -> usize {
        self.block_of[point]
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    fn refines(&self, coarser: &Partition) -> bool {
        self.blocks.iter().all(|b| {
            b.iter()
                .all(|&p| coarser.block_of[p] == coarser.block_of[b[0]])
        })
    }
}

/// Finite-dimensional commutative filtered algebra `C(X)` on a labelled
/// point set, with tracial state given by point weights and level `n`
/// the functions constant on the blocks of the `n`-th partition.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionAlgebra {
    labels: Vec<String>,
    weights: Vec<f64>,
    levels: Vec<Partition>,
}

impl PartitionAlgebra {
    /// `assignments[n-1][p]` is the block id of point `p` at level `n`.
    /// Block ids only need to be consistent within a level.
    pub fn new(
        labels: Vec<String>,
        weights: Vec<f64>,
        assignments: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n_points = labels.len();
        if n_points == 0 {
            return Err(Error::InvalidAlgebra("empty point set".into()));
        }
        if weights.len() != n_points {
            return Err(Error::ShapeMismatch {
                expected: n_points,
                found: weights.len(),
            });
        }
        if weights.iter().any(|w| !w.is_finite() || *w <= 0.0) {
            return Err(Error::InvalidAlgebra(
                "weights must be strictly positive (faithful trace)".into(),
            ));
        }
        let total = compensated_sum(weights.iter().copied());
        if (total - 1.0).abs() > IDENTITY_TOL {
            return Err(Error::InvalidAlgebra(format!(
                "weights sum to {total}, not 1"
            )));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::InvalidAlgebra(format!("duplicate label {l:?}")));
            }
        }
        if assignments.is_empty() {
            return Err(Error::InvalidAlgebra("no filtration levels".into()));
        }

        let mut levels = Vec::with_capacity(assignments.len());
        for (idx, assignment) in assignments.into_iter().enumerate() {
            if assignment.len() != n_points {
                return Err(Error::ShapeMismatch {
                    expected: n_points,
                    found: assignment.len(),
                });
            }
            levels.push(Self::build_partition(&weights, assignment, idx + 1)?);
        }
        if levels[0].len() != 1 {
            return Err(Error::InvalidAlgebra("level 1 must be the scalars".into()));
        }
        if levels.last().map(Partition::len) != Some(n_points) {
            return Err(Error::InvalidAlgebra(
                "top level must separate all points".into(),
            ));
        }
        for n in 1..levels.len() {
            if !levels[n].refines(&levels[n - 1]) {
                return Err(Error::InvalidAlgebra(format!(
                    "level {} does not refine level {}",
                    n + 1,
                    n
                )));
            }
        }
        Ok(Self {
            labels,
            weights,
            levels,
        })
    }

    fn build_partition(weights: &[f64], assignment: Vec<usize>, level: usize) -> Result<Partition> {
        // relabel block ids densely in order of first appearance
        let mut ids: Vec<usize> = Vec::new();
        let mut block_of = Vec::with_capacity(assignment.len());
        for raw in &assignment {
            let id = match ids.iter().position(|x| x == raw) {
                Some(i) => i,
                None => {
                    ids.push(*raw);
                    ids.len() - 1
                }
            };
            block_of.push(id);
        }
        if ids.is_empty() {
            return Err(Error::InvalidAlgebra(format!(
                "level {level} has no blocks"
            )));
        }
        let mut blocks = vec![Vec::new(); ids.len()];
        for (p, &b) in block_of.iter().enumerate() {
            blocks[b].push(p);
        }
        for b in &mut blocks {
            b.sort_by(|&i, &j| weights[i].total_cmp(&weights[j]).then(i.cmp(&j)));
        }
        Ok(Partition { block_of, blocks })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownPoint(label.to_string()))
    }

    pub fn partition(&self, level: usize) -> Result<&Partition> {
        self.check_level(level)?;
        Ok(&self.levels[level - 1])
    }

    pub fn element(&self, values: Vec<f64>) -> Result<PointFunction> {
        if values.len() != self.len() {
            return Err(Error::ShapeMismatch {
                expected: self.len(),
                found: values.len(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(PointFunction(values))
    }

    /// Indicators of the level's blocks; a basis of that level.
    pub fn block_indicators(&self, level: usize) -> Result<Vec<PointFunction>> {
        let p = self.partition(level)?;
        Ok(p.blocks
            .iter()
            .map(|b| PointFunction::indicator(self.len(), b.iter().copied()))
            .collect())
    }

    /// True when `a` is constant on every block of the level, within `tol`.
    pub fn lies_in_level(&self, level: usize, a: &PointFunction, tol: f64) -> Result<bool> {
        let p = self.partition(level)?;
        Ok(p.blocks
            .iter()
            .all(|b| b.iter().all(|&i| (a.0[i] - a.0[b[0]]).abs() <= tol)))
    }

    /// Uniformly random values in `[-1, 1]`, constant on the blocks of `level`.
    pub fn random_element<R: Rng + ?Sized>(
        &self,
        level: usize,
        rng: &mut R,
    ) -> Result<PointFunction> {
        let p = self.partition(level)?;
        let block_values: Vec<f64> = (0..p.len()).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        Ok(PointFunction(
            p.block_of.iter().map(|&b| block_values[b]).collect(),
        ))
    }
}

impl Filtration for PartitionAlgebra {
    type Element = PointFunction;

    fn top_level(&self) -> usize {
        self.levels.len()
    }

    fn unit(&self) -> PointFunction {
        PointFunction::constant(self.len(), 1.0)
    }

    fn expectation(&self, level: usize, a: &PointFunction) -> Result<PointFunction> {
        let p = self.partition(level)?;
        if a.len() != self.len() {
            return Err(Error::ShapeMismatch {
                expected: self.len(),
                found: a.len(),
            });
        }
        let means: Vec<f64> = p
            .blocks
            .iter()
            .map(|b| weighted_mean(&self.weights, &a.0, b))
            .collect();
        Ok(PointFunction(
            p.block_of.iter().map(|&b| means[b]).collect(),
        ))
    }

    fn norm(&self, a: &PointFunction) -> Result<f64> {
        Ok(a.0.iter().fold(0.0, |m, v| m.max(v.abs())))
    }

    fn trace(&self, a: &PointFunction) -> f64 {
        compensated_sum(self.weights.iter().zip(&a.0).map(|(w, v)| w * v))
    }

    fn combine(
        &self,
        a: &PointFunction,
        alpha: f64,
        b: &PointFunction,
        beta: f64,
    ) -> PointFunction {
        PointFunction(
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| alpha * x + beta * y)
                .collect(),
        )
    }

    fn product(&self, a: &PointFunction, b: &PointFunction) -> PointFunction {
        PointFunction(a.0.iter().zip(&b.0).map(|(x, y)| x * y).collect())
    }

    fn is_self_adjoint(&self, a: &PointFunction) -> bool {
        a.len() == self.len() && a.0.iter().all(|v| v.is_finite())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_points() -> PartitionAlgebra {
        PartitionAlgebra::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![0.5, 0.25, 0.25],
            vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]],
        )
        .unwrap()
    }

    #[test]
    fn expectation_averages_blocks_with_weights() {
        let alg = three_points();
        let a = alg.element(vec![1.0, 2.0, 4.0]).unwrap();
        assert_eq!(alg.expectation(2, &a).unwrap().values(), &[1.0, 3.0, 3.0]);
        // level 1 is the scalar tau(a)
        assert_eq!(alg.expectation(1, &a).unwrap().values(), &[2.0, 2.0, 2.0]);
        assert_eq!(alg.expectation(3, &a).unwrap(), a);
        assert_eq!(alg.trace(&a), 2.0);
    }

    #[test]
    fn level_out_of_range() {
        let alg = three_points();
        let a = alg.unit();
        assert_eq!(
            alg.expectation(0, &a),
            Err(Error::LevelOutOfRange { level: 0, max: 3 })
        );
        assert_eq!(
            alg.expectation(4, &a),
            Err(Error::LevelOutOfRange { level: 4, max: 3 })
        );
    }

    #[test]
    fn rejects_invalid_filtrations() {
        let labels = || vec!["a".to_string(), "b".to_string()];
        let ok = vec![vec![0, 0], vec![0, 1]];
        assert!(PartitionAlgebra::new(labels(), vec![0.5, 0.5], ok.clone()).is_ok());
        assert!(PartitionAlgebra::new(labels(), vec![1.0, 0.0], ok.clone()).is_err());
        assert!(PartitionAlgebra::new(labels(), vec![0.5, 0.6], ok.clone()).is_err());
        assert!(PartitionAlgebra::new(labels(), vec![0.5, 0.5], vec![vec![0, 1]]).is_err());
        assert!(
            PartitionAlgebra::new(labels(), vec![0.5, 0.5], vec![vec![0, 1], vec![0, 1]]).is_err()
        );
        assert!(
            PartitionAlgebra::new(labels(), vec![0.5, 0.5], vec![vec![0, 0], vec![0, 0]]).is_err()
        );
        assert!(PartitionAlgebra::new(vec!["a".into(), "a".into()], vec![0.5, 0.5], ok).is_err());
    }

    #[test]
    fn rejects_non_refining_chain() {
        let labels: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let err = PartitionAlgebra::new(
            labels,
            vec![0.25; 4],
            vec![
                vec![0, 0, 0, 0],
                vec![0, 0, 1, 1],
                vec![0, 1, 0, 1],
                vec![0, 1, 2, 3],
            ],
        );
        assert!(matches!(err, Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn lies_in_level_and_indicators() {
        let alg = three_points();
        let ind = alg.block_indicators(2).unwrap();
        assert_eq!(ind.len(), 2);
        assert!(ind.iter().all(|f| alg.lies_in_level(2, f, 0.0).unwrap()));
        assert!(!alg.lies_in_level(1, &ind[0], 0.0).unwrap());
    }
}
