//! Degree-truncated Fock space on multi-indices, the combinatorial operators
//! `𝓡_j`, `𝓥_j`, the hat-representation and Gram matrices.
//!
//! `|k⟩` stands for `R̂₁^{k₁}⋯R̂_n^{k_n}Ω`. `𝓡_j` raises `k_j` by one and
//! `𝓥_j|k⟩ = k_j|k − e_j⟩`.

mod gram;
mod hat;
mod matrix;
mod weyl;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Range;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{require_dimension, Error, Result};
use crate::exact::{factorial, GaussianRational, MultiPoly};

pub use gram::{
    gram_from_operators, gram_matrix, positivity_probe, verify_adjointness, verify_gram,
    BlockPivots, GramMatrix, PositivityProbe,
};
pub use hat::{
    build_combinatorial, build_hat, hat_operators, verify_hat_relations, Combinatorial,
    HatMatrices, HatOperators,
};
pub use matrix::FockMatrix;
pub use weyl::{DiffOperator, WeylElement};

/// `k = (k₁, …, k_n)` with `k_j ≥ 0`.
///
/// Ordered by total degree, then lexicographically descending, so the basis
/// runs `(0,0), (1,0), (0,1), (2,0), (1,1), (0,2), …`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(k: Vec<u32>) -> Self {
        MultiIndex(k)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// `e_j`, 1-based.
    pub fn unit(n: usize, j: usize) -> Self {
        let mut k = vec![0; n];
        k[j - 1] = 1;
        MultiIndex(k)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// `k_j`, 1-based.
    pub fn get(&self, j: usize) -> u32 {
        self.0[j - 1]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// `k! = k₁!⋯k_n!`.
    pub fn factorial(&self) -> BigRational {
        self.0.iter().map(|&k| factorial(k)).product()
    }

    /// `Π_j k_j!/(k_j − b_j)!`, or `None` when some `b_j > k_j`.
    pub fn falling(&self, b: &MultiIndex) -> Option<BigInt> {
        let mut acc = BigInt::from(1);
        for (&k, &bj) in self.0.iter().zip(&b.0) {
            if bj > k {
                return None;
            }
            for t in (k - bj + 1)..=k {
                acc *= t;
            }
        }
        Some(acc)
    }

    /// All multi-indices of total degree `d`, in basis order.
    pub fn of_degree(n: usize, d: u32) -> Vec<MultiIndex> {
        fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if n == 1 {
                prefix.push(d);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for first in (0..=d).rev() {
                prefix.push(first);
                rec(n - 1, d - first, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, d, &mut Vec::with_capacity(n), &mut out);
        out
    }

    /// All multi-indices with degree `≤ max_degree`, in basis order.
    pub fn up_to(n: usize, max_degree: u32) -> Vec<MultiIndex> {
        (0..=max_degree)
            .flat_map(|d| Self::of_degree(n, d))
            .collect()
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The span of `|k⟩` with `degree(k) ≤ max_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockSpace {
    n: usize,
    max_degree: u32,
    basis: Vec<MultiIndex>,
    position: HashMap<MultiIndex, usize>,
}

impl FockSpace {
    pub fn new(n: usize, max_degree: u32) -> Result<Self> {
        require_dimension(n, 1)?;
        let basis = MultiIndex::up_to(n, max_degree);
        let position = basis
            .iter()
            .enumerate()
            .map(|(i, k)| (k.clone(), i))
            .collect();
        Ok(FockSpace {
            n,
            max_degree,
            basis,
            position,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn basis(&self) -> &[MultiIndex] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn index_of(&self, k: &MultiIndex) -> Option<usize> {
        self.position.get(k).copied()
    }

    /// Positions of the basis vectors of degree `≤ d`; a prefix of the basis.
    pub fn up_to_degree(&self, d: u32) -> Range<usize> {
        0..self.basis.iter().take_while(|k| k.degree() <= d).count()
    }

    /// Positions of the basis vectors of degree exactly `d`.
    pub fn degree_block(&self, d: u32) -> Range<usize> {
        let start = self.basis.iter().take_while(|k| k.degree() < d).count();
        start..self.up_to_degree(d).end
    }
}

/// A finitely supported vector `Σ c_k |k⟩`, coefficients polynomial.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct FockVector {
    terms: BTreeMap<MultiIndex, MultiPoly>,
}

impl FockVector {
    pub fn zero() -> Self {
        FockVector::default()
    }

    pub fn basis(k: MultiIndex) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(k, MultiPoly::one());
        FockVector { terms }
    }

    pub fn vacuum(n: usize) -> Self {
        Self::basis(MultiIndex::zero(n))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &MultiPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: &MultiIndex) -> MultiPoly {
        self.terms.get(k).cloned().unwrap_or_else(MultiPoly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, k: MultiIndex, c: &MultiPoly) {
        if c.is_zero() {
            return;
        }
        let sum = &self.coeff(&k) + c;
        if sum.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, sum);
        }
    }

    pub fn plus(&self, other: &FockVector) -> FockVector {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &MultiPoly) -> FockVector {
        let mut out = FockVector::zero();
        for (k, x) in &self.terms {
            out.add_term(k.clone(), &(x * c));
        }
        out
    }

    pub fn scale_gaussian(&self, c: &GaussianRational) -> FockVector {
        self.scale(&MultiPoly::constant(c.clone()))
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(MultiIndex::degree).max().unwrap_or(0)
    }
}

pub(crate) fn check_degree(d: u32, min: u32, what: &str) -> Result<()> {
    if d < min {
        return Err(Error::InvalidIndex(format!(
            "{what} needs truncation degree D >= {min}, got {d}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(xs: &[u32]) -> MultiIndex {
        MultiIndex::new(xs.to_vec())
    }

    #[test]
    fn enumeration_order() {
        let basis = MultiIndex::up_to(2, 2);
        assert_eq!(
            basis,
            vec![
                k(&[0, 0]),
                k(&[1, 0]),
                k(&[0, 1]),
                k(&[2, 0]),
                k(&[1, 1]),
                k(&[0, 2])
            ]
        );
        let mut sorted = basis.clone();
        sorted.sort();
        assert_eq!(sorted, basis);
        assert_eq!(MultiIndex::of_degree(3, 2).len(), 6);
        assert_eq!(
            MultiIndex::up_to(1, 3),
            vec![k(&[0]), k(&[1]), k(&[2]), k(&[3])]
        );
    }

    #[test]
    fn space_blocks() {
        let space = FockSpace::new(2, 3).unwrap();
        assert_eq!(space.len(), 10);
        assert_eq!(space.up_to_degree(1), 0..3);
        assert_eq!(space.degree_block(2), 3..6);
        assert_eq!(space.index_of(&k(&[0, 2])), Some(5));
        assert_eq!(space.index_of(&k(&[4, 0])), None);
        assert!(FockSpace::new(0, 2).is_err());
    }

    #[test]
    fn falling_factorials() {
        assert_eq!(k(&[3, 2]).falling(&k(&[2, 1])), Some(BigInt::from(12)));
        assert_eq!(k(&[1, 0]).falling(&k(&[0, 1])), None);
        assert_eq!(k(&[2, 3]).factorial(), BigRational::from_integer(12.into()));
    }

    #[test]
    fn vector_cancellation() {
        let mut v = FockVector::basis(k(&[1]));
        v.add_term(k(&[1]), &MultiPoly::from_int(-1));
        assert!(v.is_zero());
    }
}
