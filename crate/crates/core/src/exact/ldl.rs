//! Exact `LDLᵀ` with symmetric (diagonal) pivoting for real symmetric matrices.

use std::fmt;

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::matrix::DenseMatrix;
use crate::error::{Error, Result};

/// Display tolerance for floating-point eigenvalue reports. Verdicts never use it.
pub const EIGEN_DISPLAY_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Definiteness {
    PositiveDefinite,
    /// All pivots non-negative with at least one zero pivot.
    Singular,
    Indefinite,
}

impl fmt::Display for Definiteness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Definiteness::PositiveDefinite => "positive definite",
            Definiteness::Singular => "positive semidefinite (singular)",
            Definiteness::Indefinite => "indefinite",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Ldl {
    /// Diagonal of `D`, in elimination order.
    pub pivots: Vec<BigRational>,
    /// Original row/column index eliminated at each step.
    pub order: Vec<usize>,
    pub definiteness: Definiteness,
}

impl Ldl {
    pub fn is_positive_definite(&self) -> bool {
        self.definiteness == Definiteness::PositiveDefinite
    }
}

/// Converts a Hermitian matrix with real entries to rationals.
pub fn real_symmetric(a: &DenseMatrix) -> Result<Vec<Vec<BigRational>>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("LDL of non-square matrix".into()));
    }
    let n = a.rows();
    let mut out = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let x = a.get(i, j);
            if !x.is_real() || x != a.get(j, i) {
                return Err(Error::DimensionMismatch(format!(
                    "matrix is not real symmetric at ({i}, {j})"
                )));
            }
            out[i][j] = x.re.clone();
        }
    }
    Ok(out)
}

/// Runs the factorization. At each step the largest remaining diagonal entry is
/// taken as pivot; elimination stops at the first non-positive pivot.
pub fn ldlt(a: &DenseMatrix) -> Result<Ldl> {
    let mut s = real_symmetric(a)?;
    let n = s.len();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut pivots = Vec::with_capacity(n);
    let mut order = Vec::with_capacity(n);

    while !remaining.is_empty() {
        let (pos, &p) = remaining
            .iter()
            .enumerate()
            .max_by(|(_, &i), (_, &j)| s[i][i].cmp(&s[j][j]).then(j.cmp(&i)))
            .expect("non-empty");
        let d = s[p][p].clone();
        if !d.is_positive() {
            let definiteness = if d.is_negative() {
                Definiteness::Indefinite
            } else if remaining
                .iter()
                .all(|&i| remaining.iter().all(|&j| s[i][j].is_zero()))
            {
                Definiteness::Singular
            } else {
                Definiteness::Indefinite
            };
            if definiteness == Definiteness::Singular {
                order.extend(remaining.iter().copied());
                pivots.extend(remaining.iter().map(|_| BigRational::zero()));
            } else {
                order.push(p);
                pivots.push(d);
            }
            return Ok(Ldl {
                pivots,
                order,
                definiteness,
            });
        }
        remaining.remove(pos);
        for &i in &remaining {
            if s[i][p].is_zero() {
                continue;
            }
            let l = &s[i][p] / &d;
            for &j in &remaining {
                if !s[p][j].is_zero() {
                    let delta = &l * &s[p][j];
                    s[i][j] -= delta;
                }
            }
        }
        order.push(p);
        pivots.push(d);
    }
    Ok(Ldl {
        pivots,
        order,
        definiteness: Definiteness::PositiveDefinite,
    })
}

/// Smallest eigenvalue of the `f64` image of a real symmetric matrix. Display only.
pub fn min_eigenvalue_f64(a: &DenseMatrix) -> Result<f64> {
    let s = real_symmetric(a)?;
    let n = s.len();
    if n == 0 {
        return Ok(f64::NAN);
    }
    let m = DMatrix::from_fn(n, n, |i, j| s[i][j].to_f64().unwrap_or(f64::NAN));
    let eig = m.symmetric_eigen();
    Ok(eig
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::gaussian::{int, GaussianRational};

    fn mat(rows: &[&[i64]]) -> DenseMatrix {
        DenseMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| GaussianRational::from_int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn positive_definite_pivots() {
        let a = mat(&[&[4, 2], &[2, 3]]);
        let f = ldlt(&a).unwrap();
        assert!(f.is_positive_definite());
        assert_eq!(f.pivots, vec![int(4), int(2)]);
        let prod: BigRational = f.pivots.iter().product();
        assert_eq!(prod, int(8));
    }

    #[test]
    fn singular_and_indefinite() {
        assert_eq!(
            ldlt(&mat(&[&[1, 0], &[0, 0]])).unwrap().definiteness,
            Definiteness::Singular
        );
        assert_eq!(
            ldlt(&mat(&[&[0, 1], &[1, 0]])).unwrap().definiteness,
            Definiteness::Indefinite
        );
        assert_eq!(
            ldlt(&mat(&[&[1, 2], &[2, 1]])).unwrap().definiteness,
            Definiteness::Indefinite
        );
    }

    #[test]
    fn rejects_non_symmetric() {
        assert!(ldlt(&mat(&[&[1, 2], &[0, 1]])).is_err());
        let h = DenseMatrix::from_rows(vec![
            vec![GaussianRational::one(), GaussianRational::i()],
            vec![-GaussianRational::i(), GaussianRational::one()],
        ])
        .unwrap();
        assert!(ldlt(&h).is_err());
    }

    #[test]
    fn float_min_eigenvalue() {
        let a = mat(&[&[2, 1], &[1, 2]]);
        assert!((min_eigenvalue_f64(&a).unwrap() - 1.0).abs() < EIGEN_DISPLAY_TOL);
    }
}
