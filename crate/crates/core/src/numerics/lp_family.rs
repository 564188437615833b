//! Many objectives over one polytope `{x : A x <= b}`.
//!
//! Each objective is solved through the dual `minimize b·y s.t. Aᵀ y = c,
//! y >= 0`. Its feasible set changes with `c` but its reduced costs do not,
//! so the optimal basis of one objective is dual feasible for the next and a
//! few dual-simplex pivots re-optimize it. Every answer is certified against
//! the primal (feasibility of the recovered `x` and `c·x = b·y`); anything
//! that fails the check is re-solved cold, then by [`solve_lp`].
//!
//! Cold starts use a fixed generic objective: objectives like `e_i - e_j`
//! make the dual rhs mostly zero, and Bland's rule crawls through that
//! degeneracy.

use super::lp::{Step, Tableau, MAX_PIVOTS, PIVOT_EPS};
use super::{solve_lp, DenseMatrix, LpProblem, LpSolution, LpStatus, FEASIBILITY_TOL};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct LpFamily {
    constraints: DenseMatrix,
    bounds: Vec<f64>,
}

impl LpFamily {
    pub fn new(constraints: DenseMatrix, bounds: Vec<f64>) -> Result<Self> {
        if constraints.cols() == 0 {
            return Err(Error::InvalidArgument(
                "LP needs at least one variable".into(),
            ));
        }
        if constraints.rows() != bounds.len() {
            return Err(Error::ShapeMismatch {
                expected: constraints.rows(),
                found: bounds.len(),
            });
        }
        if bounds
            .iter()
            .chain(constraints.as_slice())
            .any(|x| !x.is_finite())
        {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            constraints,
            bounds,
        })
    }

    pub fn vars(&self) -> usize {
        self.constraints.cols()
    }

    /// Solves `maximize c·x s.t. A x <= b` for each `c`, in order.
    pub fn solve_all(&self, objectives: &[Vec<f64>]) -> Result<Vec<LpSolution>> {
        let n = self.vars();
        for c in objectives {
            if c.len() != n {
                return Err(Error::ShapeMismatch {
                    expected: n,
                    found: c.len(),
                });
            }
            if c.iter().any(|x| !x.is_finite()) {
                return Err(Error::NonFinite);
            }
        }
        let mut warm: Option<DualTableau> = None;
        let mut out = Vec::with_capacity(objectives.len());
        for c in objectives {
            let mut solved = warm
                .as_mut()
                .and_then(|t| t.reoptimize(self, c))
                .filter(|s| self.certified(c, s));
            if solved.is_none() {
                warm = DualTableau::cold(self, &generic(n));
                solved = warm
                    .as_mut()
                    .and_then(|t| t.reoptimize(self, c))
                    .filter(|s| self.certified(c, s));
            }
            if solved.is_none() {
                warm = DualTableau::cold(self, c);
                solved = warm
                    .as_ref()
                    .and_then(|t| t.solution(self, c))
                    .filter(|s| self.certified(c, s));
            }
            let solution = match solved {
                Some(s) => s,
                None => {
                    warm = None;
                    solve_lp(&LpProblem::new(
                        c.clone(),
                        self.constraints.clone(),
                        self.bounds.clone(),
                    )?)
                }
            };
            out.push(solution);
        }
        Ok(out)
    }

    fn certified(&self, c: &[f64], s: &LpSolution) -> bool {
        let scale = 1.0 + self.bounds.iter().fold(0.0_f64, |m, b| m.max(b.abs()));
        let violation = self
            .constraints
            .mul_vec(&s.argmax)
            .iter()
            .zip(&self.bounds)
            .map(|(ax, b)| ax - b)
            .fold(0.0, f64::max);
        let primal: f64 = c.iter().zip(&s.argmax).map(|(a, b)| a * b).sum();
        violation <= FEASIBILITY_TOL * scale
            && (primal - s.value).abs() <= FEASIBILITY_TOL * (1.0 + s.value.abs())
    }
}

fn generic(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| 1.0 + ((i + 1) as f64 * 0.618_033_988_749_895).fract())
        .collect()
}

/// Tableau of the dual, one row per primal variable. Columns are the `m`
/// dual variables followed by `n` artificials, whose columns hold `B⁻¹`.
struct DualTableau {
    t: Tableau,
    signs: Vec<f64>,
    m: usize,
}

impl DualTableau {
    fn cold(family: &LpFamily, c: &[f64]) -> Option<Self> {
        let a = &family.constraints;
        let (m, n) = (a.rows(), a.cols());
        let width = m + n + 1;
        let signs: Vec<f64> = c
            .iter()
            .map(|x| if *x < 0.0 { -1.0 } else { 1.0 })
            .collect();
        let mut cells = vec![0.0; n * width];
        for i in 0..n {
            let row = &mut cells[i * width..(i + 1) * width];
            for j in 0..m {
                row[j] = signs[i] * a[(j, i)];
            }
            row[m + i] = 1.0;
            row[width - 1] = signs[i] * c[i];
        }
        let mut t = Tableau {
            rows: n,
            width,
            cells,
            objective: Vec::new(),
            basis: (m..m + n).collect(),
        };
        let mut budget = MAX_PIVOTS;

        let mut costs = vec![0.0; m + n];
        costs[m..].iter_mut().for_each(|x| *x = -1.0);
        t.set_objective(&costs);
        if !matches!(t.run(m + n, &mut budget), Step::Optimal) {
            return None;
        }
        let scale = 1.0 + c.iter().fold(0.0_f64, |s, x| s.max(x.abs()));
        let infeasibility: f64 = (0..n)
            .filter(|&r| t.basis[r] >= m)
            .map(|r| t.at(r, width - 1))
            .sum();
        if infeasibility > FEASIBILITY_TOL * scale {
            return None;
        }
        for r in 0..n {
            if t.basis[r] >= m {
                let c = (0..m).find(|&c| t.at(r, c).abs() > PIVOT_EPS)?;
                t.pivot(r, c);
            }
        }

        let mut costs = vec![0.0; m + n];
        for (cost, b) in costs.iter_mut().zip(&family.bounds) {
            *cost = -b;
        }
        t.set_objective(&costs);
        if !matches!(t.run(m, &mut budget), Step::Optimal) {
            return None;
        }
        Some(Self { t, signs, m })
    }

    fn reoptimize(&mut self, family: &LpFamily, c: &[f64]) -> Option<LpSolution> {
        let (m, n) = (self.m, self.t.rows);
        let rhs = self.t.rhs();
        let target: Vec<f64> = c.iter().zip(&self.signs).map(|(x, s)| s * x).collect();
        for r in 0..n {
            let v = (0..n).map(|k| self.t.at(r, m + k) * target[k]).sum();
            self.t.cells[r * self.t.width + rhs] = v;
        }
        let mut budget = MAX_PIVOTS;
        match self.t.run_dual(m, &mut budget) {
            Step::Optimal => self.solution(family, c),
            _ => None,
        }
    }

    fn solution(&self, family: &LpFamily, c: &[f64]) -> Option<LpSolution> {
        let (m, n) = (self.m, self.t.rows);
        let rhs = self.t.rhs();
        let value: f64 = (0..n)
            .map(|r| {
                let b = self.t.basis[r];
                if b < m {
                    family.bounds[b] * self.t.at(r, rhs).max(0.0)
                } else {
                    0.0
                }
            })
            .sum();
        // Simplex multipliers of the dual rows are the primal point.
        let argmax: Vec<f64> = (0..n)
            .map(|k| self.signs[k] * self.t.objective[m + k])
            .collect();
        debug_assert_eq!(argmax.len(), c.len());
        Some(LpSolution {
            status: LpStatus::Optimal,
            value,
            argmax,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn family(rows: &[Vec<f64>], b: Vec<f64>) -> LpFamily {
        LpFamily::new(DenseMatrix::from_rows(rows).unwrap(), b).unwrap()
    }

    #[test]
    fn box_objectives() {
        let rows = [
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![-1.0, 0.0],
            vec![0.0, -1.0],
        ];
        let f = family(&rows, vec![1.0, 2.0, 3.0, 4.0]);
        let objs = vec![
            vec![1.0, 1.0],
            vec![-1.0, 1.0],
            vec![-1.0, -1.0],
            vec![0.0, 0.0],
            vec![2.0, -0.5],
        ];
        let want = [3.0, 5.0, 7.0, 0.0, 4.0];
        for (s, w) in f.solve_all(&objs).unwrap().iter().zip(want) {
            assert_eq!(s.status, LpStatus::Optimal);
            assert!((s.value - w).abs() < 1e-12, "{} vs {w}", s.value);
        }
    }

    #[test]
    fn unbounded_objective_falls_back() {
        let f = family(&[vec![1.0, 0.0], vec![-1.0, 0.0]], vec![1.0, 1.0]);
        let s = f
            .solve_all(&[vec![1.0, 0.0], vec![0.0, 1.0], vec![-1.0, 0.0]])
            .unwrap();
        assert_eq!(s[0].status, LpStatus::Optimal);
        assert_eq!(s[1].status, LpStatus::Unbounded);
        assert_eq!(s[2].status, LpStatus::Optimal);
        assert!((s[2].value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_malformed_input() {
        let m = DenseMatrix::from_rows(&[vec![1.0]]).unwrap();
        assert!(LpFamily::new(m.clone(), vec![1.0, 2.0]).is_err());
        assert!(LpFamily::new(m.clone(), vec![f64::NAN]).is_err());
        let f = LpFamily::new(m, vec![1.0]).unwrap();
        assert!(f.solve_all(&[vec![1.0, 2.0]]).is_err());
    }

    fn polytope() -> impl Strategy<Value = (Vec<Vec<f64>>, Vec<f64>, Vec<Vec<f64>>)> {
        (2usize..5).prop_flat_map(|n| {
            let rows = prop::collection::vec(prop::collection::vec(-3.0..3.0f64, n), 1..8);
            let b = prop::collection::vec(0.1..2.0f64, 8 + 2 * n);
            let objs = prop::collection::vec(prop::collection::vec(-2.0..2.0f64, n), 1..12);
            (rows, b, objs).prop_map(move |(mut rows, b, objs)| {
                // a bounding box keeps every objective bounded
                for i in 0..n {
                    let mut e = vec![0.0; n];
                    e[i] = 1.0;
                    rows.push(e.clone());
                    e[i] = -1.0;
                    rows.push(e);
                }
                let b = b[..rows.len()].to_vec();
                (rows, b, objs)
            })
        })
    }

    proptest! {
        #[test]
        fn matches_independent_solves((rows, b, objs) in polytope()) {
            let f = family(&rows, b.clone());
            let batch = f.solve_all(&objs).unwrap();
            for (c, s) in objs.iter().zip(&batch) {
                let single = solve_lp(&LpProblem::new(c.clone(), DenseMatrix::from_rows(&rows).unwrap(), b.clone()).unwrap());
                prop_assert_eq!(s.status, single.status);
                prop_assert!((s.value - single.value).abs() <= 1e-9 * (1.0 + single.value.abs()));
            }
        }
    }
}
