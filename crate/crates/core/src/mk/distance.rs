use rayon::prelude::*;
use serde::Serialize;

use super::state::{PointState, StateSpace};
use crate::algebra::{lip_seminorm, BetaSequence, Filtration, PartitionAlgebra, PointFunction};
use crate::error::{Error, Result};
use crate::numerics::{solve_lp, DenseMatrix, LpFamily, LpProblem};

const AGREEMENT_TOL: f64 = 1e-10;
const WITNESS_TOL: f64 = 1e-9;

/// An mk distance with the element that attains it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceReport {
    pub value: f64,
    pub witness: PointFunction,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub agreement_level: Option<usize>,
}

impl DistanceReport {
    pub fn with_bounds(mut self, lower: f64, upper: f64, level: usize) -> Self {
        self.lower = Some(lower);
        self.upper = Some(upper);
        self.agreement_level = Some(level);
        self
    }
}

/// The constraint rows `±(a_i - E_n(a)_i) <= β(n)` over every point `i` in
/// a non-singleton block of every level `n`.
fn unit_ball_rows(
    alg: &PartitionAlgebra,
    beta: &BetaSequence,
) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
    let weights = alg.weights();
    let mut rows = Vec::new();
    let mut bounds = Vec::new();
    for n in 1..=alg.top_level() {
        let b = beta.at(n)?;
        for block in alg.partition(n)?.blocks() {
            if block.len() < 2 {
                continue;
            }
            let mass: f64 = block.iter().map(|&j| weights[j]).sum();
            for &i in block {
                let mut row = vec![0.0; alg.len()];
                for &j in block {
                    row[j] -= weights[j] / mass;
                }
                row[i] += 1.0;
                rows.push(row.iter().map(|x| -x).collect());
                rows.push(row);
                bounds.push(b);
                bounds.push(b);
            }
        }
    }
    Ok((rows, bounds))
}

/// `mk(μ, ν) = sup { |μ(a) - ν(a)| : L_β(a) <= 1 }` over the truncation,
/// as a linear program with the gauge `a(point 0) = 0`.
pub fn mk_distance(
    alg: &PartitionAlgebra,
    beta: &BetaSequence,
    mu: &PointState,
    nu: &PointState,
) -> Result<DistanceReport> {
    mk_distance_with_reference(alg, beta, mu, nu, 0)
}

/// As [`mk_distance`] with the gauge fixed at `reference`.
pub fn mk_distance_with_reference(
    alg: &PartitionAlgebra,
    beta: &BetaSequence,
    mu: &PointState,
    nu: &PointState,
    reference: usize,
) -> Result<DistanceReport> {
    let n = alg.len();
    if mu.weights().len() != n || nu.weights().len() != n {
        return Err(Error::ShapeMismatch {
            expected: n,
            found: mu.weights().len().min(nu.weights().len()),
        });
    }
    if reference >= n {
        return Err(Error::UnknownPoint(reference.to_string()));
    }
    let free: Vec<usize> = (0..n).filter(|&i| i != reference).collect();
    if free.is_empty() {
        return Ok(DistanceReport {
            value: 0.0,
            witness: PointFunction::constant(n, 0.0),
            lower: None,
            upper: None,
            agreement_level: None,
        });
    }
    let (rows, bounds) = unit_ball_rows(alg, beta)?;
    let reduced: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| free.iter().map(|&j| r[j]).collect())
        .collect();
    let constraints = DenseMatrix::from_row_major(reduced.len(), free.len(), reduced.concat())?;
    let objective: Vec<f64> = free
        .iter()
        .map(|&i| mu.weights()[i] - nu.weights()[i])
        .collect();
    let solution = solve_lp(&LpProblem::new(objective, constraints, bounds)?).into_optimal()?;

    let mut witness = vec![0.0; n];
    for (&i, x) in free.iter().zip(&solution.argmax) {
        witness[i] = *x;
    }
    Ok(DistanceReport {
        value: solution.value.max(0.0),
        witness: PointFunction::new(witness),
        lower: None,
        upper: None,
        agreement_level: None,
    })
}

/// `β(n)|μ(w) - ν(w)| <= mk(μ, ν) <= 2β(n)` for states agreeing on level
/// `n` and a witness `w` with `L_β(w) = 1/β(n)`.
pub fn sandwich_bounds<A: StateSpace>(
    alg: &A,
    beta: &BetaSequence,
    mu: &A::State,
    nu: &A::State,
    witness: &A::Element,
    level: usize,
) -> Result<(f64, f64)> {
    let deviation = alg.level_discrepancy(mu, nu, level)?;
    if deviation > AGREEMENT_TOL {
        return Err(Error::AgreementViolated { level, deviation });
    }
    let b = beta.at(level)?;
    let expected = 1.0 / b;
    let observed = lip_seminorm(alg, beta, witness)?.value;
    if (observed - expected).abs() > WITNESS_TOL * expected.max(1.0) {
        return Err(Error::WitnessMismatch { expected, observed });
    }
    let gap = (alg.evaluate(mu, witness)? - alg.evaluate(nu, witness)?).abs();
    Ok((b * gap, 2.0 * b))
}

/// LP distances between all pure states, symmetric with zero diagonal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceMatrix {
    pub labels: Vec<String>,
    pub values: Vec<Vec<f64>>,
}

// Pairs per warm-started batch; each batch starts cold.
const PAIR_BATCH: usize = 4096;

/// Every pair shares the unit-ball polytope (gauge at point 0), so batches
/// of pairs are solved as one objective family.
pub fn pure_distance_matrix(alg: &PartitionAlgebra, beta: &BetaSequence) -> Result<DistanceMatrix> {
    let n = alg.len();
    let mut m = vec![vec![0.0; n]; n];
    if n < 2 {
        return Ok(DistanceMatrix {
            labels: alg.labels().to_vec(),
            values: m,
        });
    }
    let (rows, bounds) = unit_ball_rows(alg, beta)?;
    let reduced: Vec<f64> = rows.iter().flat_map(|r| r[1..].iter().copied()).collect();
    let family = LpFamily::new(
        DenseMatrix::from_row_major(rows.len(), n - 1, reduced)?,
        bounds,
    )?;

    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let values: Vec<Vec<f64>> = pairs
        .par_chunks(PAIR_BATCH)
        .map(|batch| {
            let objectives: Vec<Vec<f64>> = batch
                .iter()
                .map(|&(i, j)| {
                    let mut c = vec![0.0; n];
                    c[i] = 1.0;
                    c[j] = -1.0;
                    c[1..].to_vec()
                })
                .collect();
            family
                .solve_all(&objectives)?
                .into_iter()
                .map(|s| s.into_optimal().map(|s| s.value.max(0.0)))
                .collect()
        })
        .collect::<Result<_>>()?;
    for (&(i, j), v) in pairs.iter().zip(values.into_iter().flatten()) {
        m[i][j] = v;
        m[j][i] = v;
    }
    Ok(DistanceMatrix {
        labels: alg.labels().to_vec(),
        values: m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{IntervalModel, IntervalPoint};
    use crate::mk::{pure_state, random_state};

    #[test]
    fn equal_states_have_zero_distance() {
        let m = IntervalModel::new(6).unwrap();
        let beta = BetaSequence::geometric(0.5).unwrap();
        let mu = random_state(m.algebra(), 9);
        assert_eq!(
            mk_distance(m.algebra(), &beta, &mu, &mu).unwrap().value,
            0.0
        );
    }

    #[test]
    fn interval_examples() {
        let m = IntervalModel::new(10).unwrap();
        let alg = m.algebra();
        let beta = BetaSequence::geometric(0.5).unwrap();
        let d = |x: &str, y: &str| {
            mk_distance(
                alg,
                &beta,
                &pure_state(alg, x).unwrap(),
                &pure_state(alg, y).unwrap(),
            )
        };
        assert!((d("1", "0").unwrap().value - 1.0).abs() < 1e-9);
        assert!((d("1/2", "1/4").unwrap().value - 0.5).abs() < 1e-9);
    }

    #[test]
    fn sandwich_on_pure_pair_is_tight() {
        let m = IntervalModel::new(8).unwrap();
        let alg = m.algebra();
        let beta = BetaSequence::geometric(0.5).unwrap();
        for n in 1..8 {
            let x = pure_state(alg, &IntervalPoint::Dyadic(n).label()).unwrap();
            let y = pure_state(alg, "0").unwrap();
            let (lo, hi) = sandwich_bounds(alg, &beta, &x, &y, &m.phi(n).unwrap(), n).unwrap();
            assert_eq!(lo, hi);
            assert_eq!(hi, 2.0 * beta.at(n).unwrap());
        }
    }

    #[test]
    fn sandwich_rejects_bad_hypotheses() {
        let m = IntervalModel::new(6).unwrap();
        let alg = m.algebra();
        let beta = BetaSequence::geometric(0.5).unwrap();
        let x = pure_state(alg, "1").unwrap();
        let y = pure_state(alg, "0").unwrap();
        // δ_1 and δ_0 disagree on level 2
        assert!(matches!(
            sandwich_bounds(alg, &beta, &x, &y, &m.phi(2).unwrap(), 2),
            Err(Error::AgreementViolated { level: 2, .. })
        ));
        // φ_2 has L_β = 4, not 1/β(1) = 2
        assert!(matches!(
            sandwich_bounds(alg, &beta, &x, &y, &m.phi(2).unwrap(), 1),
            Err(Error::WitnessMismatch { .. })
        ));
        let (lo, hi) = sandwich_bounds(alg, &beta, &x, &x, &m.phi(3).unwrap(), 3).unwrap();
        assert_eq!((lo, hi), (0.0, 0.25));
    }

    #[test]
    fn matrix_matches_pairwise_solves() {
        use crate::instances::CantorModel;
        use crate::mk::pure_state_at;
        let weights: Vec<f64> = (1..=7).map(|k| k as f64).collect();
        let total: f64 = weights.iter().sum();
        let interval =
            IntervalModel::with_weights(7, weights.iter().map(|w| w / total).collect()).unwrap();
        let cantor = CantorModel::new(3).unwrap();
        for (alg, beta) in [
            (interval.algebra(), BetaSequence::harmonic()),
            (
                cantor.algebra(),
                BetaSequence::from_values(vec![0.9, 0.2, 0.5, 0.1]).unwrap(),
            ),
        ] {
            let m = pure_distance_matrix(alg, &beta).unwrap();
            for i in 0..alg.len() {
                for j in 0..alg.len() {
                    let mu = pure_state_at(alg, i).unwrap();
                    let nu = pure_state_at(alg, j).unwrap();
                    let single = mk_distance(alg, &beta, &mu, &nu).unwrap().value;
                    assert!(
                        (m.values[i][j] - single).abs() <= 1e-9,
                        "{i} {j}: {} vs {single}",
                        m.values[i][j]
                    );
                }
            }
        }
    }
}
