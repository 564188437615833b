use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Filtration, PartitionAlgebra, PointFunction, TensorAlgebra};
use crate::error::{Error, Result};
use crate::numerics::{compensated_sum, ComplexMatrix, IDENTITY_TOL};

/// A state given by probability weights on the points of a commutative
/// truncation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointState {
    weights: Vec<f64>,
}

impl PointState {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidState(
                "weights must be finite and nonnegative".into(),
            ));
        }
        let total = compensated_sum(weights.iter().copied());
        if (total - 1.0).abs() > IDENTITY_TOL {
            return Err(Error::InvalidState(format!("weights sum to {total}")));
        }
        Ok(Self { weights })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// A density matrix: Hermitian, positive, unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    pub fn new(rho: ComplexMatrix) -> Result<Self> {
        if !rho.is_hermitian(IDENTITY_TOL) {
            return Err(Error::InvalidState(
                "density matrix must be Hermitian".into(),
            ));
        }
        if (rho.trace() - Complex64::new(1.0, 0.0)).norm() > IDENTITY_TOL {
            return Err(Error::InvalidState(
                "density matrix must have unit trace".into(),
            ));
        }
        if !is_positive_semidefinite(&rho, 1e-12) {
            return Err(Error::InvalidState(
                "density matrix must be positive".into(),
            ));
        }
        Ok(Self(rho))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }
}

/// Cholesky of `m + tol·1` succeeds iff `m` is positive up to `tol`.
fn is_positive_semidefinite(m: &ComplexMatrix, tol: f64) -> bool {
    let n = m.dim();
    let mut l = ComplexMatrix::zeros(n);
    for j in 0..n {
        let mut d = m[(j, j)].re + tol;
        for k in 0..j {
            d -= l[(j, k)].norm_sqr();
        }
        if d <= 0.0 {
            return false;
        }
        let djj = d.sqrt();
        l[(j, j)] = Complex64::new(djj, 0.0);
        for i in j + 1..n {
            let mut s = m[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / djj;
        }
    }
    true
}

/// Algebras whose states can be evaluated and compared level by level.
pub trait StateSpace: Filtration {
    type State;

    fn evaluate(&self, state: &Self::State, a: &Self::Element) -> Result<f64>;

    /// Largest disagreement of the two states on a basis of `level`.
    fn level_discrepancy(&self, mu: &Self::State, nu: &Self::State, level: usize) -> Result<f64>;
}

impl StateSpace for PartitionAlgebra {
    type State = PointState;

    fn evaluate(&self, state: &PointState, a: &PointFunction) -> Result<f64> {
        if state.weights.len() != self.len() || a.len() != self.len() {
            return Err(Error::ShapeMismatch {
                expected: self.len(),
                found: state.weights.len().min(a.len()),
            });
        }
        Ok(compensated_sum(
            state.weights.iter().zip(a.values()).map(|(w, v)| w * v),
        ))
    }

    /// Compared on the block indicators of the level.
    fn level_discrepancy(&self, mu: &PointState, nu: &PointState, level: usize) -> Result<f64> {
        let p = self.partition(level)?;
        Ok(p.blocks()
            .iter()
            .map(|b| {
                let m = compensated_sum(b.iter().map(|&i| mu.weights[i]));
                let n = compensated_sum(b.iter().map(|&i| nu.weights[i]));
                (m - n).abs()
            })
            .fold(0.0, f64::max))
    }
}

impl StateSpace for TensorAlgebra {
    type State = DensityMatrix;

    fn evaluate(&self, state: &DensityMatrix, a: &ComplexMatrix) -> Result<f64> {
        if state.0.dim() != self.dim() || a.dim() != self.dim() {
            return Err(Error::ShapeMismatch {
                expected: self.dim(),
                found: state.0.dim().min(a.dim()),
            });
        }
        Ok(state.0.matmul(a).trace().re)
    }

    /// Compared through the reduced density matrices on the leading factor,
    /// i.e. on the matrix units of the level.
    fn level_discrepancy(
        &self,
        mu: &DensityMatrix,
        nu: &DensityMatrix,
        level: usize,
    ) -> Result<f64> {
        let traced = self.dim() / self.level_dim(level)?;
        let a = mu.0.partial_trace_trailing(traced)?;
        let b = nu.0.partial_trace_trailing(traced)?;
        Ok(a.max_abs_diff(&b))
    }
}

/// Unit mass at the labelled point.
pub fn pure_state(alg: &PartitionAlgebra, label: &str) -> Result<PointState> {
    pure_state_at(alg, alg.index_of(label)?)
}

pub fn pure_state_at(alg: &PartitionAlgebra, index: usize) -> Result<PointState> {
    if index >= alg.len() {
        return Err(Error::UnknownPoint(index.to_string()));
    }
    let mut w = vec![0.0; alg.len()];
    w[index] = 1.0;
    PointState::new(w)
}

/// Strictly positive weights from a seeded generator.
pub fn random_state(alg: &PartitionAlgebra, seed: u64) -> PointState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<f64> = (0..alg.len()).map(|_| rng.gen_range(0.01..1.0)).collect();
    let total = compensated_sum(raw.iter().copied());
    let mut weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
    fix_total(&mut weights);
    PointState { weights }
}

/// `G Gᴴ / tr(G Gᴴ)` for a seeded complex Gaussian-like `G`.
pub fn random_density(alg: &TensorAlgebra, seed: u64) -> DensityMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = ComplexMatrix::from_fn(alg.dim(), |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    let rho = g.matmul(&g.adjoint());
    let tr = rho.trace().re;
    let mut rho = rho.scaled(1.0 / tr);
    // symmetrize away rounding
    rho = rho.combine(0.5, &rho.adjoint(), 0.5);
    DensityMatrix(rho)
}

/// Rescales `nu` inside each block of `level` so that both states give the
/// blocks the same mass as `mu`; `nu`'s conditional distribution inside a
/// block is kept (or `mu`'s, where `nu` gives the block no mass).
pub fn push_agreement(
    alg: &PartitionAlgebra,
    mu: &PointState,
    nu: &PointState,
    level: usize,
) -> Result<(PointState, PointState)> {
    if mu.weights.len() != alg.len() || nu.weights.len() != alg.len() {
        return Err(Error::ShapeMismatch {
            expected: alg.len(),
            found: mu.weights.len().min(nu.weights.len()),
        });
    }
    let p = alg.partition(level)?;
    let mut adjusted = nu.weights.clone();
    for block in p.blocks() {
        let target = compensated_sum(block.iter().map(|&i| mu.weights[i]));
        let current = compensated_sum(block.iter().map(|&i| nu.weights[i]));
        if current > 0.0 {
            let scale = target / current;
            block
                .iter()
                .for_each(|&i| adjusted[i] = nu.weights[i] * scale);
        } else {
            block.iter().for_each(|&i| adjusted[i] = mu.weights[i]);
        }
    }
    if level == alg.top_level() {
        adjusted.clone_from(&mu.weights);
    }
    fix_total(&mut adjusted);
    Ok((mu.clone(), PointState::new(adjusted)?))
}

// Put the rounding residue of a normalization onto the largest weight.
fn fix_total(w: &mut [f64]) {
    let total = compensated_sum(w.iter().copied());
    if let Some(i) = (0..w.len()).max_by(|&a, &b| w[a].total_cmp(&w[b])) {
        w[i] += 1.0 - total;
    }
}
