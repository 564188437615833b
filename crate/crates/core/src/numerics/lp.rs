//! Dense-tableau two-phase simplex with Bland's rule.
//!
//! Problems have the form `maximize c·x subject to A x <= b` with `x` free.
//! Free variables are split as `x = x⁺ - x⁻`; rows with `b_i < 0` get an
//! artificial variable for phase one.

use serde::{Deserialize, Serialize};

use super::DenseMatrix;
use super::FEASIBILITY_TOL;
use crate::error::{Error, Result};

pub(super) const PIVOT_EPS: f64 = 1e-11;
pub(super) const MAX_PIVOTS: usize = 200_000;

#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    objective: Vec<f64>,
    constraints: DenseMatrix,
    bounds: Vec<f64>,
}

impl LpProblem {
    pub fn new(objective: Vec<f64>, constraints: DenseMatrix, bounds: Vec<f64>) -> Result<Self> {
        if objective.is_empty() {
            return Err(Error::InvalidArgument(
                "LP needs at least one variable".into(),
            ));
        }
        if constraints.cols() != objective.len() {
            return Err(Error::ShapeMismatch {
                expected: objective.len(),
                found: constraints.cols(),
            });
        }
        if constraints.rows() != bounds.len() {
            return Err(Error::ShapeMismatch {
                expected: constraints.rows(),
                found: bounds.len(),
            });
        }
        if objective.iter().chain(&bounds).any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            objective,
            constraints,
            bounds,
        })
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn constraints(&self) -> &DenseMatrix {
        &self.constraints
    }

    pub fn bounds(&self) -> &[f64] {
        &self.bounds
    }

    /// Largest constraint violation `max_i (A x - b)_i`, or 0 when all rows hold.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        self.constraints
            .mul_vec(x)
            .iter()
            .zip(&self.bounds)
            .map(|(ax, b)| ax - b)
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    /// Pivot budget exhausted; only reachable through floating-point cycling.
    IterationLimit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub value: f64,
    pub argmax: Vec<f64>,
}

impl LpSolution {
    pub(super) fn failed(status: LpStatus, n: usize) -> Self {
        Self {
            status,
            value: f64::NAN,
            argmax: vec![f64::NAN; n],
        }
    }

    pub fn into_optimal(self) -> Result<Self> {
        match self.status {
            LpStatus::Optimal => Ok(self),
            s => Err(Error::LpNotOptimal(s)),
        }
    }
}

pub(super) struct Tableau {
    pub(super) rows: usize,
    pub(super) width: usize, // columns including rhs
    pub(super) cells: Vec<f64>,
    pub(super) objective: Vec<f64>,
    pub(super) basis: Vec<usize>,
}

pub(super) enum Step {
    Optimal,
    Unbounded,
    Limit,
}

impl Tableau {
    pub(super) fn rhs(&self) -> usize {
        self.width - 1
    }

    pub(super) fn at(&self, r: usize, c: usize) -> f64 {
        self.cells[r * self.width + c]
    }

    pub(super) fn pivot(&mut self, r: usize, c: usize) {
        let w = self.width;
        let p = self.at(r, c);
        for v in &mut self.cells[r * w..(r + 1) * w] {
            *v /= p;
        }
        let pivot_row: Vec<f64> = self.cells[r * w..(r + 1) * w].to_vec();
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let f = self.cells[i * w + c];
            if f == 0.0 {
                continue;
            }
            for (dst, src) in self.cells[i * w..(i + 1) * w].iter_mut().zip(&pivot_row) {
                *dst -= f * src;
            }
            self.cells[i * w + c] = 0.0;
        }
        let f = self.objective[c];
        if f != 0.0 {
            for (dst, src) in self.objective.iter_mut().zip(&pivot_row) {
                *dst -= f * src;
            }
            self.objective[c] = 0.0;
        }
        self.basis[r] = c;
    }

    /// Loads `costs` (one per column) as the objective and prices out the basis.
    pub(super) fn set_objective(&mut self, costs: &[f64]) {
        let rhs = self.rhs();
        self.objective = costs.to_vec();
        self.objective.push(0.0);
        for r in 0..self.rows {
            let cb = costs[self.basis[r]];
            if cb != 0.0 {
                for c in 0..=rhs {
                    self.objective[c] -= cb * self.at(r, c);
                }
            }
        }
    }

    pub(super) fn run(&mut self, allowed: usize, budget: &mut usize) -> Step {
        let rhs = self.rhs();
        loop {
            // Bland: lowest-index improving column.
            let Some(enter) = (0..allowed).find(|&c| self.objective[c] > PIVOT_EPS) else {
                return Step::Optimal;
            };
            let mut leave: Option<(usize, f64)> = None;
            for r in 0..self.rows {
                let a = self.at(r, enter);
                if a <= PIVOT_EPS {
                    continue;
                }
                let ratio = self.at(r, rhs) / a;
                leave = match leave {
                    None => Some((r, ratio)),
                    Some((best, best_ratio)) => {
                        let tie =
                            (ratio - best_ratio).abs() <= PIVOT_EPS * (1.0 + best_ratio.abs());
                        if ratio < best_ratio && !tie || tie && self.basis[r] < self.basis[best] {
                            Some((r, ratio))
                        } else {
                            Some((best, best_ratio))
                        }
                    }
                };
            }
            let Some((r, _)) = leave else {
                return Step::Unbounded;
            };
            if *budget == 0 {
                return Step::Limit;
            }
            *budget -= 1;
            self.pivot(r, enter);
        }
    }
}

impl Tableau {
    /// Dual simplex from a dual-feasible basis until the rhs is nonnegative.
    /// Leaves on the infeasible row with the lowest basic index and enters
    /// on the lowest-index column among ratio ties. `Unbounded` means the
    /// primal rows admit no nonnegative solution.
    pub(super) fn run_dual(&mut self, allowed: usize, budget: &mut usize) -> Step {
        let rhs = self.rhs();
        loop {
            let leave = (0..self.rows)
                .filter(|&r| self.at(r, rhs) < -PIVOT_EPS)
                .min_by_key(|&r| self.basis[r]);
            let Some(r) = leave else {
                return Step::Optimal;
            };
            let mut enter: Option<(usize, f64)> = None;
            for c in 0..allowed {
                let a = self.at(r, c);
                if a >= -PIVOT_EPS {
                    continue;
                }
                let ratio = (-self.objective[c]).max(0.0) / -a;
                match enter {
                    Some((_, best)) if ratio >= best - PIVOT_EPS * (1.0 + best.abs()) => {}
                    _ => enter = Some((c, ratio)),
                }
            }
            let Some((c, _)) = enter else {
                return Step::Unbounded;
            };
            if *budget == 0 {
                return Step::Limit;
            }
            *budget -= 1;
            self.pivot(r, c);
        }
    }
}

/// Solves `maximize c·x s.t. A x <= b` over free `x`.
pub fn solve_lp(problem: &LpProblem) -> LpSolution {
    let a = &problem.constraints;
    let (m, n) = (a.rows(), a.cols());
    let negative_rows: Vec<usize> = (0..m).filter(|&i| problem.bounds[i] < 0.0).collect();
    let n_art = negative_rows.len();
    let slack0 = 2 * n;
    let art0 = slack0 + m;
    let width = art0 + n_art + 1;

    let mut cells = vec![0.0; m * width];
    let mut basis = vec![0; m];
    let mut art_index = 0;
    for i in 0..m {
        let row = &mut cells[i * width..(i + 1) * width];
        let sign = if problem.bounds[i] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..n {
            row[j] = sign * a[(i, j)];
            row[n + j] = -sign * a[(i, j)];
        }
        row[slack0 + i] = sign;
        row[width - 1] = sign * problem.bounds[i];
        if sign < 0.0 {
            row[art0 + art_index] = 1.0;
            basis[i] = art0 + art_index;
            art_index += 1;
        } else {
            basis[i] = slack0 + i;
        }
    }
    let mut t = Tableau {
        rows: m,
        width,
        cells,
        objective: Vec::new(),
        basis,
    };
    let mut budget = MAX_PIVOTS;

    if n_art > 0 {
        let mut costs = vec![0.0; width - 1];
        costs[art0..].iter_mut().for_each(|c| *c = -1.0);
        t.set_objective(&costs);
        match t.run(width - 1, &mut budget) {
            Step::Optimal => {}
            Step::Limit => return LpSolution::failed(LpStatus::IterationLimit, n),
            // Phase one is bounded by zero; unreachable in exact arithmetic.
            Step::Unbounded => return LpSolution::failed(LpStatus::Infeasible, n),
        }
        let scale = 1.0 + problem.bounds.iter().fold(0.0_f64, |s, b| s.max(b.abs()));
        let infeasibility: f64 = (0..m)
            .filter(|&r| t.basis[r] >= art0)
            .map(|r| t.at(r, width - 1))
            .sum();
        if infeasibility > FEASIBILITY_TOL * scale {
            return LpSolution::failed(LpStatus::Infeasible, n);
        }
        for r in 0..m {
            if t.basis[r] >= art0 {
                if let Some(c) = (0..art0).find(|&c| t.at(r, c).abs() > PIVOT_EPS) {
                    t.pivot(r, c);
                }
            }
        }
    }

    let mut costs = vec![0.0; width - 1];
    for j in 0..n {
        costs[j] = problem.objective[j];
        costs[n + j] = -problem.objective[j];
    }
    t.set_objective(&costs);
    match t.run(art0, &mut budget) {
        Step::Optimal => {}
        Step::Unbounded => return LpSolution::failed(LpStatus::Unbounded, n),
        Step::Limit => return LpSolution::failed(LpStatus::IterationLimit, n),
    }

    let mut argmax = vec![0.0; n];
    for r in 0..m {
        let b = t.basis[r];
        let v = t.at(r, width - 1);
        if b < n {
            argmax[b] += v;
        } else if b < 2 * n {
            argmax[b - n] -= v;
        }
    }
    let value = argmax
        .iter()
        .zip(&problem.objective)
        .map(|(x, c)| x * c)
        .sum();
    LpSolution {
        status: LpStatus::Optimal,
        value,
        argmax,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(c: Vec<f64>, rows: &[Vec<f64>], b: Vec<f64>) -> LpProblem {
        LpProblem::new(c, DenseMatrix::from_rows(rows).unwrap(), b).unwrap()
    }

    #[test]
    fn single_active_constraint() {
        let s = solve_lp(&lp(vec![1.0], &[vec![1.0], vec![-1.0]], vec![3.0, 0.0]));
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.value - 3.0).abs() < 1e-12);
    }

    #[test]
    fn box_corner() {
        let rows = [
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![-1.0, 0.0],
            vec![0.0, -1.0],
        ];
        let s = solve_lp(&lp(vec![1.0, 1.0], &rows, vec![1.0, 1.0, 0.0, 0.0]));
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.value - 2.0).abs() < 1e-12);
        assert_eq!(s.argmax, vec![1.0, 1.0]);
    }

    #[test]
    fn unbounded_reported() {
        let s = solve_lp(&lp(vec![1.0], &[vec![-1.0]], vec![0.0]));
        assert_eq!(s.status, LpStatus::Unbounded);
    }

    #[test]
    fn infeasible_reported() {
        // x <= -1 and -x <= -1 (x >= 1)
        let s = solve_lp(&lp(vec![1.0], &[vec![1.0], vec![-1.0]], vec![-1.0, -1.0]));
        assert_eq!(s.status, LpStatus::Infeasible);
        assert!(s.clone().into_optimal().is_err());
    }

    #[test]
    fn phase_one_reaches_shifted_region() {
        // 2 <= x <= 5, 1 <= y <= 4, x + y <= 7; maximize x + 2y
        let rows = [
            vec![1.0, 0.0],
            vec![-1.0, 0.0],
            vec![0.0, 1.0],
            vec![0.0, -1.0],
            vec![1.0, 1.0],
        ];
        let s = solve_lp(&lp(vec![1.0, 2.0], &rows, vec![5.0, -2.0, 4.0, -1.0, 7.0]));
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.value - 11.0).abs() < 1e-9, "{}", s.value);
    }

    #[test]
    fn redundant_equalities_are_handled() {
        // x + y = 1 written twice as two-sided inequalities, maximize x - y with y >= 0.25
        let rows = [
            vec![1.0, 1.0],
            vec![-1.0, -1.0],
            vec![2.0, 2.0],
            vec![-2.0, -2.0],
            vec![0.0, -1.0],
            vec![-1.0, 0.0],
        ];
        let s = solve_lp(&lp(
            vec![1.0, -1.0],
            &rows,
            vec![1.0, -1.0, 2.0, -2.0, -0.25, 0.0],
        ));
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.value - 0.5).abs() < 1e-9);
    }

    #[test]
    fn rejects_malformed_problems() {
        let a = DenseMatrix::zeros(2, 2);
        assert!(LpProblem::new(vec![], DenseMatrix::zeros(0, 0), vec![]).is_err());
        assert!(LpProblem::new(vec![1.0, 1.0], a.clone(), vec![1.0]).is_err());
        assert!(LpProblem::new(vec![1.0], a, vec![1.0, 1.0]).is_err());
    }

    fn symmetric_polytope() -> impl Strategy<Value = (Vec<f64>, Vec<Vec<f64>>, Vec<f64>)> {
        (1usize..5, 1usize..6).prop_flat_map(|(n, k)| {
            (
                proptest::collection::vec(-3.0..3.0f64, n),
                proptest::collection::vec(proptest::collection::vec(-2.0..2.0f64, n), k),
                proptest::collection::vec(0.1..4.0f64, k),
            )
        })
    }

    proptest! {
        // Box plus random symmetric slabs |g·x| <= h: feasible, bounded, symmetric under x -> -x.
        #[test]
        fn symmetric_feasible_sets_give_symmetric_values((c, g, h) in symmetric_polytope()) {
            let n = c.len();
            let mut rows = Vec::new();
            let mut b = Vec::new();
            for j in 0..n {
                let mut e = vec![0.0; n];
                e[j] = 1.0;
                rows.push(e.clone());
                b.push(5.0);
                e[j] = -1.0;
                rows.push(e);
                b.push(5.0);
            }
            for (gi, hi) in g.iter().zip(&h) {
                rows.push(gi.clone());
                b.push(*hi);
                rows.push(gi.iter().map(|x| -x).collect());
                b.push(*hi);
            }
            let p = lp(c.clone(), &rows, b.clone());
            let neg = lp(c.iter().map(|x| -x).collect(), &rows, b);
            let s = solve_lp(&p);
            let t = solve_lp(&neg);
            prop_assert_eq!(s.status, LpStatus::Optimal);
            prop_assert_eq!(t.status, LpStatus::Optimal);
            prop_assert!(p.max_violation(&s.argmax) <= FEASIBILITY_TOL);
            prop_assert!((s.value - t.value).abs() <= 1e-9 * (1.0 + s.value.abs()));
        }

        #[test]
        fn optimum_dominates_random_feasible_points(
            (c, g, h) in symmetric_polytope(),
            probe in proptest::collection::vec(-1.0..1.0f64, 5),
        ) {
            let n = c.len();
            let mut rows = Vec::new();
            let mut b = Vec::new();
            for (gi, hi) in g.iter().zip(&h) {
                rows.push(gi.clone());
                b.push(*hi);
            }
            for j in 0..n {
                let mut e = vec![0.0; n];
                e[j] = 1.0;
                rows.push(e.clone());
                b.push(1.0);
                e[j] = -1.0;
                rows.push(e);
                b.push(1.0);
            }
            let p = lp(c.clone(), &rows, b);
            let s = solve_lp(&p);
            prop_assert_eq!(s.status, LpStatus::Optimal);
            let x: Vec<f64> = probe[..n].to_vec();
            if p.max_violation(&x) <= 0.0 {
                let v: f64 = x.iter().zip(&c).map(|(a, b)| a * b).sum();
                prop_assert!(v <= s.value + 1e-9);
            }
        }
    }
}
