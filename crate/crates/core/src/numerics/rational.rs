//! Exact small-rational arithmetic for identity checks on dyadic data.

use num_rational::Ratio;
use num_traits::{One, Zero};

pub type Rational = Ratio<i64>;

/// `2^{-k}` as an exact rational. Panics past `k = 62`.
pub fn inv_pow2(k: u32) -> Rational {
    assert!(k < 63, "2^-{k} does not fit in an i64 denominator");
    Rational::new(1, 1_i64 << k)
}

pub fn from_int(v: i64) -> Rational {
    Rational::from_integer(v)
}

/// Pointwise `alpha * f + g` on exact vectors.
pub fn axpy(alpha: Rational, f: &[Rational], g: &[Rational]) -> Vec<Rational> {
    f.iter().zip(g).map(|(a, b)| alpha * a + b).collect()
}

pub fn zeros(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

/// Exact inverse of a square matrix by Gauss-Jordan elimination;
/// `None` when singular.
pub fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for j in 0..n {
                    let (ac, ic) = (a[col][j], inv[col][j]);
                    a[r][j] -= f * ac;
                    inv[r][j] -= f * ic;
                }
            }
        }
    }
    Some(inv)
}
