use crate::algebra::TensorAlgebra;
use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;

/// `M_2^{⊗K}`, the level-`K+1` truncation of the `2^∞` UHF algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UhfModel {
    algebra: TensorAlgebra,
}

impl UhfModel {
    pub fn new(sites: usize) -> Result<Self> {
        Ok(Self {
            algebra: TensorAlgebra::new(sites)?,
        })
    }

    pub fn algebra(&self) -> &TensorAlgebra {
        &self.algebra
    }

    pub fn sites(&self) -> usize {
        self.algebra.sites()
    }

    /// `σ_x` at site `k` (1-based, counted from the leading factor).
    pub fn pauli_site(&self, k: usize) -> Result<ComplexMatrix> {
        let sites = self.sites();
        if !(1..=sites).contains(&k) {
            return Err(Error::InvalidArgument(format!(
                "site {k} outside 1..={sites}"
            )));
        }
        let sigma_x = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]])?;
        let before = ComplexMatrix::identity(1 << (k - 1));
        let after = ComplexMatrix::identity(1 << (sites - k));
        Ok(before.kron(&sigma_x).kron(&after))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Filtration;

    #[test]
    fn pauli_site_structure() {
        let m = UhfModel::new(3).unwrap();
        let alg = m.algebra();
        for k in 1..=3 {
            let p = m.pauli_site(k).unwrap();
            assert!(alg.is_self_adjoint(&p));
            assert_eq!(alg.trace(&p), 0.0);
            assert!((alg.norm(&p).unwrap() - 1.0).abs() < 1e-12);
            for level in 1..=k {
                assert!(
                    alg.expectation(level, &p)
                        .unwrap()
                        .max_abs_diff(&ComplexMatrix::zeros(8))
                        < 1e-15
                );
            }
            assert!(alg.expectation(k + 1, &p).unwrap().max_abs_diff(&p) < 1e-15);
        }
        assert!(m.pauli_site(4).is_err());
    }
}
