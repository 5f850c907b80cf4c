//! Sparse operator matrices on a truncated Fock space.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{FockSpace, WeylElement};
use crate::error::{Error, Result};
use crate::exact::{MultiPoly, PolyMatrix, Scalar};

/// Column-sparse matrix with polynomial entries on a [`FockSpace`].
///
/// Column `j` is the image of the `j`-th basis vector. When the image has a
/// component of degree above the truncation, that component is dropped and
/// column `j` is flagged as touching the boundary. Flags propagate through
/// products, so an unflagged column is exact.
#[derive(Clone, Debug, PartialEq)]
pub struct FockMatrix {
    space: Arc<FockSpace>,
    cols: Vec<BTreeMap<usize, MultiPoly>>,
    boundary: Vec<bool>,
}

impl FockMatrix {
    pub fn zeros(space: Arc<FockSpace>) -> Self {
        let len = space.len();
        FockMatrix {
            space,
            cols: vec![BTreeMap::new(); len],
            boundary: vec![false; len],
        }
    }

    pub fn identity(space: Arc<FockSpace>) -> Self {
        let mut m = Self::zeros(space);
        for (j, col) in m.cols.iter_mut().enumerate() {
            col.insert(j, MultiPoly::one());
        }
        m
    }

    pub fn from_weyl(space: Arc<FockSpace>, op: &WeylElement) -> Self {
        let mut m = Self::zeros(space.clone());
        for (j, k) in space.basis().iter().enumerate() {
            for (target, c) in op.apply_basis(k) {
                match space.index_of(&target) {
                    Some(i) => add_into(&mut m.cols[j], i, &c),
                    None => m.boundary[j] = true,
                }
            }
        }
        m
    }

    pub fn space(&self) -> &Arc<FockSpace> {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> MultiPoly {
        self.cols[j]
            .get(&i)
            .cloned()
            .unwrap_or_else(MultiPoly::zero)
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = (usize, &MultiPoly)> {
        self.cols[j].iter().map(|(i, c)| (*i, c))
    }

    pub fn touches_boundary(&self, j: usize) -> bool {
        self.boundary[j]
    }

    fn same_space(&self, other: &FockMatrix) -> Result<()> {
        if self.space != other.space {
            return Err(Error::DimensionMismatch(
                "Fock matrices on different spaces".into(),
            ));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &FockMatrix) -> Result<FockMatrix> {
        self.same_space(other)?;
        let mut out = Self::zeros(self.space.clone());
        for j in 0..self.len() {
            let mut flagged = other.boundary[j];
            for (&k, b) in &other.cols[j] {
                flagged |= self.boundary[k];
                for (&i, a) in &self.cols[k] {
                    add_into(&mut out.cols[j], i, &(a * b));
                }
            }
            out.boundary[j] = flagged;
        }
        Ok(out)
    }

    fn combine(&self, other: &FockMatrix, sign: i64) -> Result<FockMatrix> {
        self.same_space(other)?;
        let mut out = self.clone();
        let s = MultiPoly::from_int(sign);
        for j in 0..self.len() {
            for (&i, c) in &other.cols[j] {
                add_into(&mut out.cols[j], i, &(c * &s));
            }
            out.boundary[j] |= other.boundary[j];
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &FockMatrix) -> Result<FockMatrix> {
        self.combine(other, 1)
    }

    pub fn try_sub(&self, other: &FockMatrix) -> Result<FockMatrix> {
        self.combine(other, -1)
    }

    pub fn scale(&self, c: &MultiPoly) -> FockMatrix {
        let mut out = self.clone();
        for col in &mut out.cols {
            *col = col
                .iter()
                .map(|(i, x)| (*i, x * c))
                .filter(|(_, x)| !x.is_zero())
                .collect();
        }
        out
    }

    pub fn commutator(&self, other: &FockMatrix) -> Result<FockMatrix> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    /// Compares the blocks with rows and columns of degree `≤ max_degree`.
    ///
    /// Returns one message per mismatching entry, and one per interior column
    /// of either side that touches the boundary.
    pub fn compare_interior(&self, other: &FockMatrix, max_degree: u32) -> Result<Vec<String>> {
        self.same_space(other)?;
        let range = self.space.up_to_degree(max_degree);
        let basis = self.space.basis();
        let mut problems = Vec::new();
        for j in range.clone() {
            if self.boundary[j] || other.boundary[j] {
                problems.push(format!(
                    "column {} touches the truncation boundary",
                    basis[j]
                ));
            }
            for i in range.clone() {
                let (a, b) = (self.get(i, j), other.get(i, j));
                if a != b {
                    problems.push(format!("entry ({}, {}): {a} vs {b}", basis[i], basis[j]));
                }
            }
        }
        Ok(problems)
    }

    /// Dense copy, row `i` column `j` = `⟨i| M |j⟩` coefficient.
    pub fn to_dense(&self) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(self.len(), self.len());
        for (j, col) in self.cols.iter().enumerate() {
            for (&i, c) in col {
                m.set(i, j, c.clone());
            }
        }
        m
    }
}

fn add_into(col: &mut BTreeMap<usize, MultiPoly>, i: usize, c: &MultiPoly) {
    if c.is_zero() {
        return;
    }
    let sum = match col.get(&i) {
        Some(x) => x.plus(c),
        None => c.clone(),
    };
    if sum.is_zero() {
        col.remove(&i);
    } else {
        col.insert(i, sum);
    }
}
