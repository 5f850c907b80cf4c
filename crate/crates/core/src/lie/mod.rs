//! Matrix realization of so(n,2) on ℂ^{n+2}.
//!
//! Coordinates `1..=n` are spatial, `n+1` and `n+2` temporal. The basis is
//!
//! * `R_j = ρ_{j,n+2} + i ρ_{j,n+1}` and `L_j = ρ_{j,n+2} − i ρ_{j,n+1}`,
//! * `ρ₀ = 2i ρ_{n+1,n+2}`,
//! * the spatial rotations `ρ_{jk}`, `j < k`,
//!
//! where `ρ_{kl} = E_{kl} − E_{lk}`. The observables are the conjugates of
//! the raising operators under `exp(L₁)`:
//! `X₁ = R₁ + L₁ + ρ₀` and `X_j = −i(R_j − L_j − 2ρ_{1j})`.

mod printed;
mod relations;
mod words;

use std::fmt;

use serde::Serialize;

use crate::error::{require_dimension, Error, Result};
use crate::exact::json::ToJson;
use crate::exact::{DenseMatrix, GaussianRational};

pub use printed::reference_matrices_n3;
pub use relations::{
    conjugation_check, relation_list, verify_observables, verify_relations, Relation,
};
pub use words::{formal_adjoint, formal_adjoint_expr, Generator, OperatorExpr, OperatorWord};

/// `ρ_{kl} = E_{kl} − E_{lk}` as an `(n+2)×(n+2)` matrix; indices are 1-based.
pub fn build_rho(n: usize, k: usize, l: usize) -> Result<DenseMatrix> {
    let size = n + 2;
    if k == l || k == 0 || l == 0 || k > size || l > size {
        return Err(Error::InvalidIndex(format!("rho_({k},{l}) with n = {n}")));
    }
    let mut m = DenseMatrix::zeros(size, size);
    m.set(k - 1, l - 1, GaussianRational::one());
    m.set(l - 1, k - 1, GaussianRational::from_int(-1));
    Ok(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Label {
    R(usize),
    L(usize),
    Rho0,
    /// Spatial rotation with `j < k`.
    Rho(usize, usize),
    X(usize),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::R(j) => write!(f, "R{j}"),
            Label::L(j) => write!(f, "L{j}"),
            Label::Rho0 => write!(f, "rho0"),
            Label::Rho(j, k) => write!(f, "rho{j}{k}"),
            Label::X(j) => write!(f, "X{j}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LieBasisElement {
    pub label: Label,
    pub matrix: DenseMatrix,
}

/// The basis of so(n,2) in canonical order `R₁..R_n, L₁..L_n, ρ₀, ρ₁₂, ρ₁₃, …`.
#[derive(Clone, Debug)]
pub struct SoAlgebra {
    n: usize,
    basis: Vec<LieBasisElement>,
}

impl SoAlgebra {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[LieBasisElement] {
        &self.basis
    }

    pub fn size(&self) -> usize {
        self.n + 2
    }

    fn find(&self, label: Label) -> Result<&DenseMatrix> {
        self.basis
            .iter()
            .find(|e| e.label == label)
            .map(|e| &e.matrix)
            .ok_or_else(|| Error::InvalidIndex(format!("{label} not in so({},2)", self.n)))
    }

    pub fn r(&self, j: usize) -> &DenseMatrix {
        self.find(Label::R(j)).expect("R_j index in range")
    }

    pub fn l(&self, j: usize) -> &DenseMatrix {
        self.find(Label::L(j)).expect("L_j index in range")
    }

    pub fn rho0(&self) -> &DenseMatrix {
        self.find(Label::Rho0).expect("rho0 present")
    }

    /// `ρ_{jk}` for any `j ≠ k` in `1..=n`, using `ρ_{kj} = −ρ_{jk}`.
    pub fn rho(&self, j: usize, k: usize) -> Result<DenseMatrix> {
        match j.cmp(&k) {
            std::cmp::Ordering::Less => self.find(Label::Rho(j, k)).cloned(),
            std::cmp::Ordering::Greater => {
                let m = self.find(Label::Rho(k, j))?;
                Ok(-m)
            }
            std::cmp::Ordering::Equal => Err(Error::InvalidIndex(format!("rho_({j},{j})"))),
        }
    }

    pub fn matrix(&self, label: Label) -> Result<DenseMatrix> {
        match label {
            Label::X(j) => observable_matrix(self, j),
            Label::Rho(j, k) => self.rho(j, k),
            other => self.find(other).cloned(),
        }
    }

    /// Coordinates of `m` in the basis, or `None` when `m` is outside the span.
    pub fn decompose(&self, m: &DenseMatrix) -> Option<Vec<(Label, GaussianRational)>> {
        let n = self.n;
        let (a, b) = (n, n + 1);
        let half = GaussianRational::from_ratio(1, 2);
        let i = GaussianRational::i();
        let mut coords = Vec::new();
        for j in 0..n {
            let (mb, ma) = (m.get(j, b), m.get(j, a));
            coords.push((Label::R(j + 1), &(mb - &(&i * ma)) * &half));
        }
        for j in 0..n {
            let (mb, ma) = (m.get(j, b), m.get(j, a));
            coords.push((Label::L(j + 1), &(mb + &(&i * ma)) * &half));
        }
        coords.push((Label::Rho0, m.get(a, b) * &(&half * &(-&i))));
        for j in 0..n {
            for k in j + 1..n {
                coords.push((Label::Rho(j + 1, k + 1), m.get(j, k).clone()));
            }
        }
        let mut rebuilt = DenseMatrix::zeros(n + 2, n + 2);
        for (label, c) in &coords {
            if !c.is_zero() {
                rebuilt = &rebuilt + &self.matrix(*label).ok()?.scale(c);
            }
        }
        (&rebuilt == m).then(|| coords.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }
}

impl ToJson for SoAlgebra {
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.basis
                .iter()
                .map(|e| serde_json::json!({ "label": e.label.to_string(), "matrix": e.matrix.to_json() }))
                .collect(),
        )
    }
}

pub fn build_algebra(n: usize) -> Result<SoAlgebra> {
    require_dimension(n, 1)?;
    let (a, b) = (n + 1, n + 2);
    let i = GaussianRational::i();
    let mut basis = Vec::with_capacity(2 * n + 1 + n * (n - 1) / 2);
    let mut rs = Vec::new();
    let mut ls = Vec::new();
    for j in 1..=n {
        let rb = build_rho(n, j, b)?;
        let ra = build_rho(n, j, a)?.scale(&i);
        rs.push(LieBasisElement {
            label: Label::R(j),
            matrix: &rb + &ra,
        });
        ls.push(LieBasisElement {
            label: Label::L(j),
            matrix: &rb - &ra,
        });
    }
    basis.extend(rs);
    basis.extend(ls);
    basis.push(LieBasisElement {
        label: Label::Rho0,
        matrix: build_rho(n, a, b)?.scale(&GaussianRational::from_parts((0, 1), (2, 1))),
    });
    for j in 1..=n {
        for k in j + 1..=n {
            basis.push(LieBasisElement {
                label: Label::Rho(j, k),
                matrix: build_rho(n, j, k)?,
            });
        }
    }
    Ok(SoAlgebra { n, basis })
}

fn observable_matrix(alg: &SoAlgebra, j: usize) -> Result<DenseMatrix> {
    if j == 0 || j > alg.n {
        return Err(Error::InvalidIndex(format!("X{j} with n = {}", alg.n)));
    }
    if j == 1 {
        return Ok(&(alg.r(1) + alg.l(1)) + alg.rho0());
    }
    let inner = &(alg.r(j) - alg.l(j)) - &alg.rho(1, j)?.scale(&GaussianRational::from_int(2));
    Ok(inner.scale(&-GaussianRational::i()))
}

/// The commuting observables `X₁, …, X_n`.
pub fn build_observables(n: usize) -> Result<Vec<LieBasisElement>> {
    let alg = build_algebra(n)?;
    (1..=n)
        .map(|j| {
            Ok(LieBasisElement {
                label: Label::X(j),
                matrix: observable_matrix(&alg, j)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::commutator;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_parts((re, 1), (im, 1))
    }

    #[test]
    fn rho_definition() {
        let r = build_rho(1, 1, 2).unwrap();
        assert_eq!(r.rows(), 3);
        assert_eq!(*r.get(0, 1), g(1, 0));
        assert_eq!(*r.get(1, 0), g(-1, 0));
        let nonzero = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .filter(|&(i, j)| !r.get(i, j).is_zero());
        assert_eq!(nonzero.count(), 2);
        assert!((&build_rho(3, 2, 4).unwrap() + &build_rho(3, 4, 2).unwrap()).is_zero());
    }

    #[test]
    fn rho_index_errors() {
        assert!(matches!(build_rho(2, 1, 1), Err(Error::InvalidIndex(_))));
        assert!(matches!(build_rho(2, 0, 1), Err(Error::InvalidIndex(_))));
        assert!(matches!(build_rho(2, 1, 5), Err(Error::InvalidIndex(_))));
    }

    #[test]
    fn rho0_is_temporal_part_of_x1() {
        let alg = build_algebra(3).unwrap();
        let x1 = alg.matrix(Label::X(1)).unwrap();
        let rho0 = build_rho(3, 4, 5).unwrap().scale(&g(0, 2));
        assert_eq!(&x1 - &(alg.r(1) + alg.l(1)), rho0);
    }

    #[test]
    fn basis_sizes() {
        for n in 1..=5 {
            let alg = build_algebra(n).unwrap();
            assert_eq!(alg.basis().len(), 2 * n + 1 + n * (n - 1) / 2);
            let mut labels: Vec<_> = alg.basis().iter().map(|e| e.label).collect();
            labels.dedup();
            assert_eq!(labels.len(), alg.basis().len());
        }
        let one = build_algebra(1).unwrap();
        let labels: Vec<_> = one.basis().iter().map(|e| e.label).collect();
        assert_eq!(labels, vec![Label::R(1), Label::L(1), Label::Rho0]);
        assert_eq!(
            build_algebra(0).unwrap_err(),
            Error::InvalidDimension { got: 0, min: 1 }
        );
    }

    #[test]
    fn l2_r1_gives_twice_rho12() {
        let alg = build_algebra(2).unwrap();
        let c = commutator(alg.l(2), alg.r(1)).unwrap();
        assert_eq!(c, alg.rho(1, 2).unwrap().scale(&g(2, 0)));
    }

    #[test]
    fn printed_matrices_reproduced() {
        let alg = build_algebra(3).unwrap();
        for (label, m) in reference_matrices_n3() {
            assert_eq!(alg.matrix(label).unwrap(), m, "{label}");
        }
    }

    #[test]
    fn observables_commute_and_are_nilpotent() {
        let xs = build_observables(3).unwrap();
        assert!(commutator(&xs[1].matrix, &xs[2].matrix).unwrap().is_zero());
        for x in &xs {
            assert!(x.matrix.pow(3).unwrap().is_zero());
        }
    }

    #[test]
    fn conjugate_transpose_is_not_the_ladder_adjoint() {
        // The Hermitian adjoint of the defining matrices sends R_j to −L_j, so
        // the pairing with R* = L cannot be the standard one on ℂ^{n+2}.
        let alg = build_algebra(2).unwrap();
        for j in 1..=2 {
            assert_eq!(alg.r(j).conj_transpose(), -alg.l(j));
        }
    }

    #[test]
    fn decompose_commutators() {
        let alg = build_algebra(2).unwrap();
        let c = commutator(alg.l(1), alg.r(1)).unwrap();
        assert_eq!(alg.decompose(&c).unwrap(), vec![(Label::Rho0, g(1, 0))]);
        assert!(alg.decompose(&DenseMatrix::identity(4)).is_none());
    }
}
