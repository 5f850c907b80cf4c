//! Normal-ordered polynomials in `𝓡_j`, `𝓥_j` with `[𝓥_j, 𝓡_k] = δ_{jk}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{FockVector, MultiIndex};
use crate::exact::{GaussianRational, MultiPoly, Var};

/// `Σ c_{ab} 𝓡^a 𝓥^b` with every `𝓡` to the left of every `𝓥`.
///
/// Coefficients are polynomials, normally in `τ` alone.
#[derive(Clone, PartialEq)]
pub struct WeylElement {
    n: usize,
    terms: BTreeMap<(MultiIndex, MultiIndex), MultiPoly>,
}

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

fn falling(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i))
}

impl WeylElement {
    pub fn zero(n: usize) -> Self {
        WeylElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: MultiPoly) -> Self {
        Self::monomial(MultiIndex::zero(n), MultiIndex::zero(n), c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, MultiPoly::one())
    }

    /// `𝓡^a 𝓥^b · c`.
    pub fn monomial(a: MultiIndex, b: MultiIndex, c: MultiPoly) -> Self {
        let mut out = WeylElement::zero(a.n());
        out.add_term(a, b, &c);
        out
    }

    /// `𝓡_j`, 1-based.
    pub fn raising(n: usize, j: usize) -> Self {
        Self::monomial(
            MultiIndex::unit(n, j),
            MultiIndex::zero(n),
            MultiPoly::one(),
        )
    }

    /// `𝓥_j`, 1-based.
    pub fn lowering(n: usize, j: usize) -> Self {
        Self::monomial(
            MultiIndex::zero(n),
            MultiIndex::unit(n, j),
            MultiPoly::one(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &MultiIndex, &MultiPoly)> {
        self.terms.iter().map(|((a, b), c)| (a, b, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, a: MultiIndex, b: MultiIndex, c: &MultiPoly) {
        if c.is_zero() {
            return;
        }
        let key = (a, b);
        let sum = match self.terms.get(&key) {
            Some(x) => x + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    pub fn scale(&self, c: &MultiPoly) -> Self {
        let mut out = WeylElement::zero(self.n);
        for ((a, b), x) in &self.terms {
            out.add_term(a.clone(), b.clone(), &(x * c));
        }
        out
    }

    pub fn scale_gaussian(&self, c: &GaussianRational) -> Self {
        self.scale(&MultiPoly::constant(c.clone()))
    }

    /// Normal-ordered product, using `𝓥^b 𝓡^c = Σ_i C(b,i)·c!/(c−i)!·𝓡^{c−i} 𝓥^{b−i}` per coordinate.
    pub fn times(&self, other: &WeylElement) -> WeylElement {
        let mut out = WeylElement::zero(self.n);
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &other.terms {
                let xy = x * y;
                // (left exponents of 𝓡, right exponents of 𝓥, integer weight)
                let mut partial: Vec<(Vec<u32>, Vec<u32>, BigInt)> =
                    vec![(Vec::new(), Vec::new(), BigInt::from(1))];
                for j in 0..self.n {
                    let (bj, cj) = (b.parts()[j], c.parts()[j]);
                    let mut next = Vec::new();
                    for (ra, vb, wgt) in &partial {
                        for i in 0..=bj.min(cj) {
                            let mut ra = ra.clone();
                            let mut vb = vb.clone();
                            ra.push(a.parts()[j] + cj - i);
                            vb.push(bj - i + d.parts()[j]);
                            next.push((ra, vb, wgt * binomial(bj, i) * falling(cj, i)));
                        }
                    }
                    partial = next;
                }
                for (ra, vb, wgt) in partial {
                    let coeff = xy.scale_rational(&BigRational::from_integer(wgt));
                    out.add_term(MultiIndex::new(ra), MultiIndex::new(vb), &coeff);
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &WeylElement) -> WeylElement {
        &self.times(other) - &other.times(self)
    }

    pub fn pow(&self, e: u32) -> WeylElement {
        (0..e).fold(WeylElement::one(self.n), |acc, _| acc.times(self))
    }

    /// `𝓡^a𝓥^b|k⟩ = (Π k_j!/(k_j−b_j)!) |k − b + a⟩`.
    pub fn apply_basis(&self, k: &MultiIndex) -> Vec<(MultiIndex, MultiPoly)> {
        let mut out = Vec::new();
        for ((a, b), c) in &self.terms {
            if let (Some(f), Some(rest)) = (k.falling(b), k.checked_sub(b)) {
                out.push((rest.add(a), c.scale_rational(&BigRational::from_integer(f))));
            }
        }
        out
    }

    pub fn apply(&self, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for (k, x) in v.terms() {
            for (target, c) in self.apply_basis(k) {
                out.add_term(target, &(&c * x));
            }
        }
        out
    }

    /// Largest net degree change `deg a − deg b` over all terms.
    pub fn max_raise(&self) -> i64 {
        self.terms
            .keys()
            .map(|(a, b)| a.degree() as i64 - b.degree() as i64)
            .max()
            .unwrap_or(0)
    }

    /// Largest number of `𝓥` factors in a term.
    pub fn max_lowering(&self) -> u32 {
        self.terms
            .keys()
            .map(|(_, b)| b.degree())
            .max()
            .unwrap_or(0)
    }

    /// Replaces `τ` by a number in every coefficient.
    pub fn evaluate_tau(&self, tau: &GaussianRational) -> WeylElement {
        let mut out = WeylElement::zero(self.n);
        for ((a, b), c) in &self.terms {
            out.add_term(
                a.clone(),
                b.clone(),
                &c.evaluate(&[(Var::Tau, tau.clone())]),
            );
        }
        out
    }

    /// The action on coherent states `ψ_v = Σ v^k/k! |k⟩`: since
    /// `𝓥_jψ_v = v_jψ_v` and `𝓡_jψ_v = ∂ψ_v/∂v_j`, the term `𝓡^a𝓥^b`
    /// becomes `v^b ∂^a`.
    pub fn to_differential_operator(&self) -> DiffOperator {
        DiffOperator {
            n: self.n,
            terms: self.terms.clone(),
        }
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for ((a, b), c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            for (name, e) in [("R", a), ("V", b)] {
                for (j, &p) in e.parts().iter().enumerate() {
                    match p {
                        0 => {}
                        1 => factors.push(format!("{name}{}", j + 1)),
                        _ => factors.push(format!("{name}{}^{p}", j + 1)),
                    }
                }
            }
            let body = factors.join(" ");
            parts.push(match (c.is_one(), body.is_empty()) {
                (_, true) => format!("({c})"),
                (true, false) => body,
                (false, false) => format!("({c}) {body}"),
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'b> Add<&'b WeylElement> for &WeylElement {
    type Output = WeylElement;
    fn add(self, rhs: &'b WeylElement) -> WeylElement {
        let mut out = self.clone();
        for ((a, b), c) in &rhs.terms {
            out.add_term(a.clone(), b.clone(), c);
        }
        out
    }
}

impl<'b> Sub<&'b WeylElement> for &WeylElement {
    type Output = WeylElement;
    fn sub(self, rhs: &'b WeylElement) -> WeylElement {
        self + &(-rhs)
    }
}

impl Neg for &WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        self.scale(&MultiPoly::from_int(-1))
    }
}

impl<'b> Mul<&'b WeylElement> for &WeylElement {
    type Output = WeylElement;
    fn mul(self, rhs: &'b WeylElement) -> WeylElement {
        self.times(rhs)
    }
}

/// `Σ c_{ab} v^b ∂_v^a`, acting on polynomials in `v₁..v_n`.
#[derive(Clone, PartialEq, Debug)]
pub struct DiffOperator {
    n: usize,
    terms: BTreeMap<(MultiIndex, MultiIndex), MultiPoly>,
}

impl DiffOperator {
    pub fn zero(n: usize) -> Self {
        DiffOperator {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// Adds `c·v^b ∂^a`.
    pub fn add_term(&mut self, a: MultiIndex, b: MultiIndex, c: &MultiPoly) {
        let mut w = WeylElement {
            n: self.n,
            terms: std::mem::take(&mut self.terms),
        };
        w.add_term(a, b, c);
        self.terms = w.terms;
    }

    /// `(∂-exponent a, v-exponent b, coefficient)` for each term `c·v^b ∂^a`.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &MultiIndex, &MultiPoly)> {
        self.terms.iter().map(|((a, b), c)| (a, b, c))
    }

    /// Reads `v^b ∂^a` back as `𝓡^a 𝓥^b`.
    pub fn to_weyl_element(&self) -> WeylElement {
        WeylElement {
            n: self.n,
            terms: self.terms.clone(),
        }
    }

    pub fn apply(&self, f: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for ((a, b), c) in &self.terms {
            let mut g = f.clone();
            for (j, &p) in a.parts().iter().enumerate() {
                for _ in 0..p {
                    g = g.derivative(Var::V(j as u8 + 1));
                }
            }
            if g.is_zero() {
                continue;
            }
            let mono = crate::exact::Monomial::from_pairs(
                b.parts()
                    .iter()
                    .enumerate()
                    .map(|(j, &p)| (Var::V(j as u8 + 1), p)),
            );
            out = out + (c * &g).mul_monomial(&mono);
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::v;

    fn k(xs: &[u32]) -> MultiIndex {
        MultiIndex::new(xs.to_vec())
    }

    #[test]
    fn canonical_commutator() {
        for n in 1..=3 {
            for j in 1..=n {
                for l in 1..=n {
                    let c = WeylElement::lowering(n, j).commutator(&WeylElement::raising(n, l));
                    let expect = if j == l {
                        WeylElement::one(n)
                    } else {
                        WeylElement::zero(n)
                    };
                    assert_eq!(c, expect);
                }
            }
        }
    }

    #[test]
    fn reordering_formula() {
        // 𝓥² 𝓡² = 𝓡²𝓥² + 4𝓡𝓥 + 2
        let r = WeylElement::raising(1, 1);
        let vv = WeylElement::lowering(1, 1);
        let lhs = &vv.pow(2) * &r.pow(2);
        let mut expect = WeylElement::monomial(k(&[2]), k(&[2]), MultiPoly::one());
        expect.add_term(k(&[1]), k(&[1]), &MultiPoly::from_int(4));
        expect.add_term(k(&[0]), k(&[0]), &MultiPoly::from_int(2));
        assert_eq!(lhs, expect);
    }

    #[test]
    fn action_on_basis() {
        let v1 = WeylElement::lowering(2, 1);
        assert!(v1.apply(&FockVector::vacuum(2)).is_zero());
        let out = v1.apply(&FockVector::basis(k(&[2, 0])));
        assert_eq!(
            out,
            FockVector::basis(k(&[1, 0])).scale(&MultiPoly::from_int(2))
        );
    }

    #[test]
    fn product_matches_composition_of_actions() {
        let n = 2;
        let a = &WeylElement::raising(n, 1) + &WeylElement::lowering(n, 2).pow(2);
        let b = &WeylElement::lowering(n, 1).times(&WeylElement::raising(n, 2))
            + &WeylElement::raising(n, 2);
        let ab = a.times(&b);
        for kk in MultiIndex::up_to(n, 4) {
            let e = FockVector::basis(kk);
            assert_eq!(ab.apply(&e), a.apply(&b.apply(&e)));
        }
    }

    #[test]
    fn differential_reading() {
        // 𝓡₁𝓥₁ ↦ v₁ ∂₁
        let op = WeylElement::raising(1, 1)
            .times(&WeylElement::lowering(1, 1))
            .to_differential_operator();
        let f = &v(1) * &v(1);
        assert_eq!(op.apply(&f), f.scale(&GaussianRational::from_int(2)));
    }
}
