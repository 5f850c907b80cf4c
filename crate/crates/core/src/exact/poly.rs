//! Sparse multivariate polynomials over the Gaussian rationals.
//!
//! Indeterminates come from a fixed alphabet: the coherent-state coordinates
//! `v_i`, `w_i`, the observable parameters `z_i`, the spectral variables `x_i`
//! and the vacuum weight `τ`. Terms are kept in a `BTreeMap` under graded
//! lexicographic order, so iteration (and therefore every export) is canonical.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::Zero;

use super::gaussian::GaussianRational;
use crate::error::{Error, Result};

/// An indeterminate. Indices are 1-based. The derived order (`v < w < z < x < τ`,
/// then by index) is the fixed name order used for graded-lex comparison.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    V(u8),
    W(u8),
    Z(u8),
    X(u8),
    Tau,
}

/// Variable groups that can carry independent truncation bounds. `τ` is never truncated.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Group {
    V,
    W,
    Z,
    X,
}

impl Var {
    pub fn group(self) -> Option<Group> {
        match self {
            Var::V(_) => Some(Group::V),
            Var::W(_) => Some(Group::W),
            Var::Z(_) => Some(Group::Z),
            Var::X(_) => Some(Group::X),
            Var::Tau => None,
        }
    }

    /// Name used in exported data (`v1`, `w2`, `tau`, ...).
    pub fn name(self) -> String {
        match self {
            Var::V(i) => format!("v{i}"),
            Var::W(i) => format!("w{i}"),
            Var::Z(i) => format!("z{i}"),
            Var::X(i) => format!("x{i}"),
            Var::Tau => "tau".to_string(),
        }
    }

    /// Name used in human-readable output; `τ` prints as `t`.
    pub fn display_name(self) -> String {
        match self {
            Var::Tau => "t".to_string(),
            other => other.name(),
        }
    }

    pub fn parse(s: &str) -> Result<Var> {
        if s == "tau" || s == "t" {
            return Ok(Var::Tau);
        }
        let bad = || Error::Parse(format!("unknown indeterminate `{s}`"));
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(bad)?;
        let idx: u8 = chars.as_str().parse().map_err(|_| bad())?;
        if idx == 0 {
            return Err(bad());
        }
        match head {
            'v' => Ok(Var::V(idx)),
            'w' => Ok(Var::W(idx)),
            'z' => Ok(Var::Z(idx)),
            'x' => Ok(Var::X(idx)),
            _ => Err(bad()),
        }
    }
}

/// A power product, stored as `(var, exponent)` pairs sorted by `Var` with
/// positive exponents only.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut acc: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *acc.entry(v).or_insert(0) += e;
        }
        Monomial(acc.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    /// Total degree excluding `τ`.
    pub fn spatial_degree(&self) -> u32 {
        self.0
            .iter()
            .filter(|(v, _)| *v != Var::Tau)
            .map(|&(_, e)| e)
            .sum()
    }

    pub fn group_degree(&self, g: Group) -> u32 {
        self.0
            .iter()
            .filter(|(v, _)| v.group() == Some(g))
            .map(|&(_, e)| e)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Drops the variable `v`, returning its exponent alongside the remainder.
    pub fn split_off(&self, v: Var) -> (u32, Monomial) {
        let e = self.exponent(v);
        (
            e,
            Monomial(self.0.iter().copied().filter(|(w, _)| *w != v).collect()),
        )
    }

    fn with_exponent(&self, v: Var, e: u32) -> Monomial {
        let mut pairs: Vec<(Var, u32)> = self.0.iter().copied().filter(|(w, _)| *w != v).collect();
        if e > 0 {
            pairs.push((v, e));
            pairs.sort_by_key(|p| p.0);
        }
        Monomial(pairs)
    }

    fn fmt_with(&self, name: fn(Var) -> String) -> String {
        self.0
            .iter()
            .map(|&(v, e)| {
                if e == 1 {
                    name(v)
                } else {
                    format!("{}^{e}", name(v))
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the exponent of the
    /// earliest variable in name order where the two differ.
    fn cmp(&self, other: &Self) -> Ordering {
        let by_degree = self.total_degree().cmp(&other.total_degree());
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => {
                    let c = a[i].1.cmp(&b[j].1);
                    if c != Ordering::Equal {
                        return c;
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        (a.len() - i).cmp(&(b.len() - j))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            write!(f, "1")
        } else {
            write!(f, "{}", self.fmt_with(Var::display_name))
        }
    }
}

/// Degree bounds applied after multiplication. A monomial is kept when its
/// non-`τ` total degree is within `total` and every bounded group is within
/// its own bound. The retained set is an order ideal, so truncated products
/// agree with untruncated ones on every retained coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Truncation {
    total: Option<u32>,
    groups: BTreeMap<Group, u32>,
}

impl Truncation {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn total(d: u32) -> Self {
        Truncation {
            total: Some(d),
            groups: BTreeMap::new(),
        }
    }

    pub fn with_group(mut self, g: Group, d: u32) -> Self {
        self.groups.insert(g, d);
        self
    }

    pub fn groups(bounds: &[(Group, u32)]) -> Self {
        bounds
            .iter()
            .fold(Self::none(), |t, &(g, d)| t.with_group(g, d))
    }

    pub fn is_none(&self) -> bool {
        self.total.is_none() && self.groups.is_empty()
    }

    pub fn keeps(&self, m: &Monomial) -> bool {
        if let Some(d) = self.total {
            if m.spatial_degree() > d {
                return false;
            }
        }
        self.groups.iter().all(|(&g, &d)| m.group_degree(g) <= d)
    }

    /// Whether powers of `m` eventually leave the retained set.
    pub fn bounds(&self, m: &Monomial) -> bool {
        (self.total.is_some() && m.spatial_degree() > 0)
            || self.groups.keys().any(|&g| m.group_degree(g) > 0)
    }
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::term(GaussianRational::one(), Monomial::var(v))
    }

    pub fn tau() -> Self {
        Self::var(Var::Tau)
    }

    pub fn term(c: GaussianRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, GaussianRational)>) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussianRational {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn constant_term(&self) -> GaussianRational {
        self.coeff(&Monomial::one())
    }

    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 if self.terms.contains_key(&Monomial::one()) => Some(self.constant_term()),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn scale_rational(&self, r: &BigRational) -> MultiPoly {
        self.scale(&GaussianRational::real(r.clone()))
    }

    pub fn conj(&self) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.conj()))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn mul_truncated(&self, other: &MultiPoly, trunc: &Truncation) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            if !trunc.keeps(ma) {
                continue;
            }
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                if trunc.keeps(&m) {
                    out.add_term(m, &(ca * cb));
                }
            }
        }
        out
    }

    pub fn truncate(&self, trunc: &Truncation) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| trunc.keeps(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        self.pow_truncated(e, &Truncation::none())
    }

    pub fn pow_truncated(&self, e: u32, trunc: &Truncation) -> MultiPoly {
        let mut acc = MultiPoly::one().truncate(trunc);
        for _ in 0..e {
            acc = acc.mul_truncated(self, trunc);
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e > 0 {
                out.add_term(
                    m.with_exponent(v, e - 1),
                    &(c * &GaussianRational::from_int(e as i64)),
                );
            }
        }
        out
    }

    /// Replaces `v` by the polynomial `value` everywhere.
    pub fn substitute(&self, v: Var, value: &MultiPoly) -> MultiPoly {
        let mut powers: Vec<MultiPoly> = vec![MultiPoly::one()];
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            while powers.len() <= e as usize {
                let next = &powers[powers.len() - 1] * value;
                powers.push(next);
            }
            out = out + powers[e as usize].mul_monomial(&rest).scale(c);
        }
        out
    }

    /// Substitutes a constant for each listed variable.
    pub fn evaluate(&self, assignment: &[(Var, GaussianRational)]) -> MultiPoly {
        assignment.iter().fold(self.clone(), |p, (v, val)| {
            p.substitute(*v, &MultiPoly::constant(val.clone()))
        })
    }

    /// Coefficient of `∏ vars[i]^exps[i]` as a polynomial in the remaining variables.
    pub fn extract(&self, vars: &[Var], exps: &[u32]) -> MultiPoly {
        debug_assert_eq!(vars.len(), exps.len());
        let mut out = MultiPoly::zero();
        'terms: for (m, c) in &self.terms {
            let mut rest = m.clone();
            for (&v, &e) in vars.iter().zip(exps) {
                let (have, r) = rest.split_off(v);
                if have != e {
                    continue 'terms;
                }
                rest = r;
            }
            out.add_term(rest, c);
        }
        out
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|p| p.0))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn group_degree(&self, g: Group) -> u32 {
        self.terms
            .keys()
            .map(|m| m.group_degree(g))
            .max()
            .unwrap_or(0)
    }

    /// Every term has the same total degree in `v` (ignoring zero polynomials).
    pub fn homogeneous_degree_in(&self, v: Var) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.exponent(v));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    fn fmt_with(&self, name: fn(Var) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let term = if m.is_one() {
                c.to_string()
            } else {
                let mono = m.fmt_with(name);
                if c.is_one() {
                    mono
                } else if (-c).is_one() {
                    format!("-{mono}")
                } else if c.is_real() || c.re.is_zero() {
                    format!("{c}*{mono}")
                } else {
                    format!("({c})*{mono}")
                }
            };
            if idx == 0 {
                out.push_str(&term);
            } else if let Some(stripped) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(stripped);
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        out
    }

    /// Rendering with export names (`tau` rather than `t`).
    pub fn to_export_string(&self) -> String {
        self.fmt_with(Var::name)
    }
}

impl fmt::Display for MultiPoly {
    /// Terms in descending graded-lex order; `τ` prints as `t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(Var::display_name))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<GaussianRational> for MultiPoly {
    fn from(c: GaussianRational) -> Self {
        MultiPoly::constant(c)
    }
}

impl<'b> Add<&'b MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'b MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, &c);
        }
        self
    }
}

impl<'b> Sub<&'b MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'b MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &(-c));
        }
        out
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl<'b> Mul<&'b MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'b MultiPoly) -> MultiPoly {
        self.mul_truncated(rhs, &Truncation::none())
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

/// Shorthand constructors used throughout the crate.
pub fn v(i: usize) -> MultiPoly {
    MultiPoly::var(Var::V(i as u8))
}

pub fn w(i: usize) -> MultiPoly {
    MultiPoly::var(Var::W(i as u8))
}

pub fn z(i: usize) -> MultiPoly {
    MultiPoly::var(Var::Z(i as u8))
}

pub fn x(i: usize) -> MultiPoly {
    MultiPoly::var(Var::X(i as u8))
}

pub fn c(p: i64) -> MultiPoly {
    MultiPoly::from_int(p)
}

pub fn cq(p: i64, q: i64) -> MultiPoly {
    MultiPoly::constant(GaussianRational::from_ratio(p, q))
}

pub fn ci(p: i64) -> MultiPoly {
    MultiPoly::constant(GaussianRational::from_parts((0, 1), (p, 1)))
}

/// `Σ_j a_j b_j` for equally long slices.
pub fn dot(a: &[MultiPoly], b: &[MultiPoly]) -> MultiPoly {
    a.iter()
        .zip(b)
        .fold(MultiPoly::zero(), |acc, (x, y)| acc + x * y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let x1 = Monomial::var(Var::X(1));
        let t = Monomial::var(Var::Tau);
        let v1sq = Monomial::from_pairs([(Var::V(1), 2)]);
        let v1v2 = Monomial::from_pairs([(Var::V(1), 1), (Var::V(2), 1)]);
        let v2sq = Monomial::from_pairs([(Var::V(2), 2)]);
        assert!(Monomial::one() < t);
        assert!(t < x1);
        assert!(x1 < v2sq);
        assert!(v2sq < v1v2);
        assert!(v1v2 < v1sq);
    }

    #[test]
    fn display_matches_basis_polynomial_text() {
        let p = x(1) - MultiPoly::tau();
        assert_eq!(p.to_string(), "x1 - t");
        assert_eq!(p.to_export_string(), "x1 - tau");
        let q = &(&MultiPoly::tau() * &MultiPoly::tau()).scale(&GaussianRational::from_int(2))
            + &MultiPoly::tau().scale(&GaussianRational::from_int(2));
        assert_eq!(q.to_string(), "2*t^2 + 2*t");
        assert_eq!((ci(2) * v(1)).to_string(), "2i*v1");
        assert_eq!(MultiPoly::zero().to_string(), "0");
    }

    #[test]
    fn no_zero_coefficients() {
        let p = &(v(1) + w(1)) - &v(1);
        assert_eq!(p, w(1));
        assert_eq!((&v(1) - &v(1)).len(), 0);
    }

    #[test]
    fn derivative_and_substitution() {
        let p = &(&v(1) * &v(1)) * &w(2);
        assert_eq!(p.derivative(Var::V(1)), &(&c(2) * &v(1)) * &w(2));
        assert!(p.derivative(Var::Z(1)).is_zero());
        let s = p.substitute(Var::V(1), &(c(1) + z(1)));
        assert_eq!(s, &(&(c(1) + z(1)) * &(c(1) + z(1))) * &w(2));
    }

    #[test]
    fn extract_coefficient() {
        let p = &(&v(1) * &w(1)) * &MultiPoly::tau() + v(1);
        assert_eq!(
            p.extract(&[Var::V(1), Var::W(1)], &[1, 1]),
            MultiPoly::tau()
        );
        assert_eq!(p.extract(&[Var::V(1), Var::W(1)], &[1, 0]), c(1));
    }

    #[test]
    fn truncation_per_group() {
        let t = Truncation::groups(&[(Group::V, 1), (Group::W, 2)]);
        let p = (v(1) + w(1)).pow(3);
        let q = p.truncate(&t);
        for (m, _) in q.terms() {
            assert!(m.group_degree(Group::V) <= 1 && m.group_degree(Group::W) <= 2);
        }
        assert_eq!(
            q.coeff(&Monomial::from_pairs([(Var::V(1), 1), (Var::W(1), 2)])),
            GaussianRational::from_int(3)
        );
    }

    #[test]
    fn var_names_round_trip() {
        for v in [Var::V(1), Var::W(3), Var::Z(2), Var::X(4), Var::Tau] {
            assert_eq!(Var::parse(&v.name()).unwrap(), v);
        }
        assert!(Var::parse("q1").is_err());
        assert!(Var::parse("v0").is_err());
    }
}
