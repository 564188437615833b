use num_complex::Complex64;

use super::{ComplexMatrix, DenseMatrix};
use crate::error::{Error, Result};

pub const POWER_ITERATION_CAP: usize = 10_000;

const CONVERGED_REL: f64 = 4e-16;
// Accepted at the cap when the Rayleigh quotient is still moving slowly.
const STALLED_REL: f64 = 1e-11;
const SQUARINGS: usize = 6;

/// Largest singular value of a real square matrix.
pub fn spectral_norm(m: &DenseMatrix) -> Result<f64> {
    if m.rows() != m.cols() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let cm = ComplexMatrix::from_fn(n, |i, j| Complex64::new(m[(i, j)], 0.0));
    spectral_norm_complex(&cm)
}

/// Largest singular value, by power iteration on the Gram matrix `MᴴM`
/// from a fixed start vector.
///
/// The iteration runs on `G^(2^s)` (rescaled after each squaring) so that
/// nearly tied top singular values still separate within the cap; the
/// returned value is the Rayleigh quotient of `G` itself at the final vector.
pub fn spectral_norm_complex(m: &ComplexMatrix) -> Result<f64> {
    let n = m.dim();
    if n == 0 {
        return Ok(0.0);
    }
    let gram = m.adjoint().matmul(m);
    let scale = max_abs(&gram);
    if scale == 0.0 {
        return Ok(0.0);
    }
    let mut accelerated = gram.scaled(1.0 / scale);
    for _ in 0..SQUARINGS {
        let sq = accelerated.matmul(&accelerated);
        let s = max_abs(&sq);
        if s == 0.0 {
            break;
        }
        accelerated = sq.scaled(1.0 / s);
    }

    let mut v: Vec<Complex64> = (0..n)
        .map(|i| Complex64::new(1.0 + ((i + 1) as f64 * 0.618_033_988_749_895).fract(), 0.0))
        .collect();
    normalize(&mut v);

    let rayleigh = |v: &[Complex64]| -> f64 {
        let w = gram.mul_vec(v);
        v.iter().zip(&w).map(|(a, b)| (a.conj() * b).re).sum()
    };
    let mut prev = rayleigh(&v);
    for _ in 0..POWER_ITERATION_CAP {
        let mut w = accelerated.mul_vec(&v);
        if norm(&w) == 0.0 {
            // start vector orthogonal to the range; fall back to G itself
            w = gram.mul_vec(&v);
            if norm(&w) == 0.0 {
                return Ok(0.0);
            }
        }
        normalize(&mut w);
        v = w;
        let r = rayleigh(&v);
        if (r - prev).abs() <= CONVERGED_REL * r.abs() {
            return Ok(r.max(0.0).sqrt());
        }
        prev = r;
    }
    let last = rayleigh(&v);
    if (last - prev).abs() <= STALLED_REL * last.abs() {
        Ok(last.max(0.0).sqrt())
    } else {
        Err(Error::PowerIterationCap(POWER_ITERATION_CAP))
    }
}

fn max_abs(m: &ComplexMatrix) -> f64 {
    m.entries().iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(v: &mut [Complex64]) {
    let n = norm(v);
    v.iter_mut().for_each(|z| *z /= n);
}
