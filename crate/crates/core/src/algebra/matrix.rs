use num_complex::Complex64;
use rand::Rng;

use super::Filtration;
use crate::error::{Error, Result};
use crate::numerics::{spectral_norm_complex, ComplexMatrix, IDENTITY_TOL};

/// `M_2^{⊗K}` filtered by the leading tensor factors: level `n` is
/// `M_{2^{n-1}} ⊗ 1`, so level 1 is the scalars and level `K+1` is
/// everything. The trace is the normalized matrix trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TensorAlgebra {
    sites: usize,
}

impl TensorAlgebra {
    pub const MAX_SITES: usize = 10;

    pub fn new(sites: usize) -> Result<Self> {
        if sites == 0 || sites > Self::MAX_SITES {
            return Err(Error::InvalidAlgebra(format!(
                "site count {sites} outside 1..={}",
                Self::MAX_SITES
            )));
        }
        Ok(Self { sites })
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn dim(&self) -> usize {
        1 << self.sites
    }

    /// Dimension of the leading factor `M_{2^{n-1}}` that carries level `n`.
    pub fn level_dim(&self, level: usize) -> Result<usize> {
        self.check_level(level)?;
        Ok(1 << (level - 1))
    }

    /// Embeds `x ∈ M_{2^{n-1}}` as `x ⊗ 1`.
    pub fn embed(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        let d = x.dim();
        if d == 0 || !self.dim().is_multiple_of(d) || !d.is_power_of_two() {
            return Err(Error::ShapeMismatch {
                expected: self.dim(),
                found: d,
            });
        }
        Ok(x.kron(&ComplexMatrix::identity(self.dim() / d)))
    }

    /// `Tr_trailing(a) / 2^{K-n+1}`, the leading-factor part of `E_n(a)`.
    pub fn reduced(&self, level: usize, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        let kept = self.level_dim(level)?;
        self.check_dim(a)?;
        let traced = self.dim() / kept;
        Ok(a.partial_trace_trailing(traced)?
            .scaled(1.0 / traced as f64))
    }

    fn check_dim(&self, a: &ComplexMatrix) -> Result<()> {
        if a.dim() != self.dim() {
            return Err(Error::ShapeMismatch {
                expected: self.dim(),
                found: a.dim(),
            });
        }
        Ok(())
    }

    /// Random Hermitian element of `level` with entries of modulus at most 1.
    pub fn random_hermitian<R: Rng + ?Sized>(
        &self,
        level: usize,
        rng: &mut R,
    ) -> Result<ComplexMatrix> {
        let d = self.level_dim(level)?;
        let mut x = ComplexMatrix::zeros(d);
        for i in 0..d {
            x[(i, i)] = Complex64::new(rng.gen_range(-1.0..=1.0), 0.0);
            for j in i + 1..d {
                let z = Complex64::new(rng.gen_range(-0.7..=0.7), rng.gen_range(-0.7..=0.7));
                x[(i, j)] = z;
                x[(j, i)] = z.conj();
            }
        }
        self.embed(&x)
    }

    /// Random (generally non-normal) element of `level`.
    pub fn random_matrix<R: Rng + ?Sized>(
        &self,
        level: usize,
        rng: &mut R,
    ) -> Result<ComplexMatrix> {
        let d = self.level_dim(level)?;
        let x = ComplexMatrix::from_fn(d, |_, _| {
            Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))
        });
        self.embed(&x)
    }
}

impl Filtration for TensorAlgebra {
    type Element = ComplexMatrix;

    fn top_level(&self) -> usize {
        self.sites + 1
    }

    fn unit(&self) -> ComplexMatrix {
        ComplexMatrix::identity(self.dim())
    }

    fn expectation(&self, level: usize, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.embed(&self.reduced(level, a)?)
    }

    fn norm(&self, a: &ComplexMatrix) -> Result<f64> {
        spectral_norm_complex(a)
    }

    fn trace(&self, a: &ComplexMatrix) -> f64 {
        a.trace().re / a.dim() as f64
    }

    fn combine(
        &self,
        a: &ComplexMatrix,
        alpha: f64,
        b: &ComplexMatrix,
        beta: f64,
    ) -> ComplexMatrix {
        a.combine(alpha, b, beta)
    }

    fn product(&self, a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
        a.matmul(b)
    }

    fn is_self_adjoint(&self, a: &ComplexMatrix) -> bool {
        a.dim() == self.dim() && a.is_hermitian(IDENTITY_TOL)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn level_one_is_normalized_trace() {
        let alg = TensorAlgebra::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = alg.random_hermitian(4, &mut rng).unwrap();
        let e = alg.expectation(1, &a).unwrap();
        let expected = alg.unit().scaled(alg.trace(&a));
        assert!(e.max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn top_level_is_identity_map() {
        let alg = TensorAlgebra::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = alg.random_matrix(3, &mut rng).unwrap();
        assert!(alg.expectation(3, &a).unwrap().max_abs_diff(&a) < 1e-15);
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(TensorAlgebra::new(0).is_err());
        let alg = TensorAlgebra::new(2).unwrap();
        assert!(alg.expectation(1, &ComplexMatrix::identity(2)).is_err());
        assert!(alg.expectation(4, &alg.unit()).is_err());
    }
}
