//! Formal words in the generators and the ladder involution `R_j* = L_j`.

use std::fmt;

use super::SoAlgebra;
use crate::error::{Error, Result};
use crate::exact::{parse_rational, DenseMatrix, GaussianRational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    R(usize),
    L(usize),
    Rho0,
    /// Spatial rotation, stored with `j < k`.
    Rho(usize, usize),
}

impl Generator {
    /// Parses `R1`, `L2`, `rho0`, `rho12` or `rho1_2`. A reversed rotation
    /// (`rho21`) is returned as `ρ₁₂` with sign `−1`.
    pub fn parse(s: &str) -> Result<(i64, Generator)> {
        let unknown = || Error::UnknownGenerator(s.to_string());
        let index = |t: &str| {
            t.parse::<usize>()
                .ok()
                .filter(|&j| j > 0)
                .ok_or_else(unknown)
        };
        if s == "rho0" {
            return Ok((1, Generator::Rho0));
        }
        if let Some(rest) = s.strip_prefix("rho") {
            let (j, k) = match rest.split_once('_') {
                Some((a, b)) => (index(a)?, index(b)?),
                None if rest.len() == 2 => (index(&rest[..1])?, index(&rest[1..])?),
                None => return Err(unknown()),
            };
            return match j.cmp(&k) {
                std::cmp::Ordering::Less => Ok((1, Generator::Rho(j, k))),
                std::cmp::Ordering::Greater => Ok((-1, Generator::Rho(k, j))),
                std::cmp::Ordering::Equal => Err(unknown()),
            };
        }
        if let Some(rest) = s.strip_prefix('R') {
            return Ok((1, Generator::R(index(rest)?)));
        }
        if let Some(rest) = s.strip_prefix('L') {
            return Ok((1, Generator::L(index(rest)?)));
        }
        Err(unknown())
    }

    /// Largest spatial index mentioned.
    pub fn max_index(self) -> usize {
        match self {
            Generator::R(j) | Generator::L(j) => j,
            Generator::Rho0 => 0,
            Generator::Rho(j, k) => j.max(k),
        }
    }

    pub fn matrix(self, alg: &SoAlgebra) -> Result<DenseMatrix> {
        if self.max_index() > alg.n() {
            return Err(Error::InvalidIndex(format!("{self} with n = {}", alg.n())));
        }
        Ok(match self {
            Generator::R(j) => alg.r(j).clone(),
            Generator::L(j) => alg.l(j).clone(),
            Generator::Rho0 => alg.rho0().clone(),
            Generator::Rho(j, k) => alg.rho(j, k)?,
        })
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::R(j) => write!(f, "R{j}"),
            Generator::L(j) => write!(f, "L{j}"),
            Generator::Rho0 => write!(f, "rho0"),
            Generator::Rho(j, k) => write!(f, "rho{j}{k}"),
        }
    }
}

/// `coeff · g₁ g₂ ⋯ g_m`; the empty product is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorWord {
    pub coeff: GaussianRational,
    pub factors: Vec<Generator>,
}

impl OperatorWord {
    pub fn identity() -> Self {
        OperatorWord {
            coeff: GaussianRational::one(),
            factors: Vec::new(),
        }
    }

    pub fn generator(g: Generator) -> Self {
        OperatorWord {
            coeff: GaussianRational::one(),
            factors: vec![g],
        }
    }

    pub fn new(coeff: GaussianRational, factors: Vec<Generator>) -> Self {
        OperatorWord { coeff, factors }
    }

    /// Whitespace- or `*`-separated tokens; an optional leading coefficient
    /// (`3/2`, `i`, `-i`, `-`) precedes the generators.
    pub fn parse(s: &str) -> Result<Self> {
        let mut word = OperatorWord::identity();
        for (idx, tok) in s
            .split(|c: char| c.is_whitespace() || c == '*')
            .filter(|t| !t.is_empty())
            .enumerate()
        {
            if idx == 0 {
                let coeff = match tok {
                    "i" => Some(GaussianRational::i()),
                    "-i" => Some(-GaussianRational::i()),
                    "-" => Some(GaussianRational::from_int(-1)),
                    t => parse_rational(t).ok().map(GaussianRational::real),
                };
                if let Some(c) = coeff {
                    word.coeff = c;
                    continue;
                }
            }
            let (sign, g) = Generator::parse(tok)?;
            word.coeff = &word.coeff * &GaussianRational::from_int(sign);
            word.factors.push(g);
        }
        Ok(word)
    }

    pub fn then(&self, other: &OperatorWord) -> OperatorWord {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        OperatorWord {
            coeff: &self.coeff * &other.coeff,
            factors,
        }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

impl fmt::Display for OperatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.factors.iter().map(Generator::to_string).collect();
        let body = if body.is_empty() {
            "1".to_string()
        } else {
            body.join(" ")
        };
        if self.coeff.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({}) {body}", self.coeff)
        }
    }
}

/// A finite linear combination of words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OperatorExpr {
    pub terms: Vec<OperatorWord>,
}

impl OperatorExpr {
    pub fn word(w: OperatorWord) -> Self {
        OperatorExpr { terms: vec![w] }
    }

    pub fn generator(g: Generator) -> Self {
        Self::word(OperatorWord::generator(g))
    }

    pub fn identity() -> Self {
        Self::word(OperatorWord::identity())
    }

    pub fn plus(&self, other: &OperatorExpr) -> OperatorExpr {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        OperatorExpr { terms }
    }

    pub fn scale(&self, c: &GaussianRational) -> OperatorExpr {
        OperatorExpr {
            terms: self
                .terms
                .iter()
                .map(|w| OperatorWord::new(&w.coeff * c, w.factors.clone()))
                .collect(),
        }
    }

    pub fn then(&self, other: &OperatorExpr) -> OperatorExpr {
        OperatorExpr {
            terms: self
                .terms
                .iter()
                .flat_map(|a| other.terms.iter().map(move |b| a.then(b)))
                .collect(),
        }
    }

    pub fn commutator(&self, other: &OperatorExpr) -> OperatorExpr {
        self.then(other)
            .plus(&other.then(self).scale(&GaussianRational::from_int(-1)))
    }

    /// Longest word length.
    pub fn max_len(&self) -> usize {
        self.terms.iter().map(OperatorWord::len).max().unwrap_or(0)
    }

    pub fn max_index(&self) -> usize {
        self.terms
            .iter()
            .flat_map(|w| w.factors.iter().map(|g| g.max_index()))
            .max()
            .unwrap_or(0)
    }

    /// `X₁ = R₁ + L₁ + ρ₀`, `X_j = −i R_j + i L_j + 2i ρ_{1j}`.
    pub fn observable(j: usize) -> OperatorExpr {
        let i = GaussianRational::i();
        if j == 1 {
            return Self::generator(Generator::R(1))
                .plus(&Self::generator(Generator::L(1)))
                .plus(&Self::generator(Generator::Rho0));
        }
        Self::generator(Generator::R(j))
            .scale(&-&i)
            .plus(&Self::generator(Generator::L(j)).scale(&i))
            .plus(
                &Self::generator(Generator::Rho(1, j))
                    .scale(&GaussianRational::from_parts((0, 1), (2, 1))),
            )
    }

    /// Evaluates the expression in any associative realization.
    pub fn realize<M>(
        &self,
        identity: &M,
        generator: impl Fn(Generator) -> Result<M>,
        mul: impl Fn(&M, &M) -> Result<M>,
        add: impl Fn(&M, &M) -> Result<M>,
        scale: impl Fn(&M, &GaussianRational) -> M,
        zero: M,
    ) -> Result<M> {
        let mut total = zero;
        for w in &self.terms {
            let mut prod = scale(identity, &w.coeff);
            for &g in &w.factors {
                prod = mul(&prod, &generator(g)?)?;
            }
            total = add(&total, &prod)?;
        }
        Ok(total)
    }

    /// The expression as an `(n+2)×(n+2)` matrix.
    pub fn matrix(&self, alg: &SoAlgebra) -> Result<DenseMatrix> {
        let size = alg.size();
        self.realize(
            &DenseMatrix::identity(size),
            |g| g.matrix(alg),
            |a, b| a.try_mul(b),
            |a, b| a.try_add(b),
            |a, c| a.scale(c),
            DenseMatrix::zeros(size, size),
        )
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(OperatorWord::to_string).collect();
        write!(
            f,
            "{}",
            if parts.is_empty() {
                "0".to_string()
            } else {
                parts.join(" + ")
            }
        )
    }
}

/// The involution `R_j ↔ L_j`, `ρ₀ ↦ ρ₀`, `ρ_{jk} ↦ −ρ_{jk}`, extended
/// anti-multiplicatively with complex conjugation of the coefficient.
pub fn formal_adjoint(word: &OperatorWord) -> OperatorWord {
    let mut coeff = word.coeff.conj();
    let factors = word
        .factors
        .iter()
        .rev()
        .map(|g| match *g {
            Generator::R(j) => Generator::L(j),
            Generator::L(j) => Generator::R(j),
            Generator::Rho0 => Generator::Rho0,
            Generator::Rho(j, k) => {
                coeff = -&coeff;
                Generator::Rho(j, k)
            }
        })
        .collect();
    OperatorWord { coeff, factors }
}

pub fn formal_adjoint_expr(expr: &OperatorExpr) -> OperatorExpr {
    OperatorExpr {
        terms: expr.terms.iter().map(formal_adjoint).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::build_algebra;
    use proptest::prelude::*;

    #[test]
    fn raising_and_lowering_are_adjoint() {
        let r1 = OperatorWord::generator(Generator::R(1));
        assert_eq!(
            formal_adjoint(&r1),
            OperatorWord::generator(Generator::L(1))
        );
    }

    #[test]
    fn rho0_as_commutator_is_self_adjoint() {
        let l1 = OperatorExpr::generator(Generator::L(1));
        let r1 = OperatorExpr::generator(Generator::R(1));
        let rho0 = l1.commutator(&r1);
        let adj = formal_adjoint_expr(&rho0);
        let alg = build_algebra(2).unwrap();
        assert_eq!(adj.matrix(&alg).unwrap(), rho0.matrix(&alg).unwrap());
        assert_eq!(rho0.matrix(&alg).unwrap(), *alg.rho0());
    }

    #[test]
    fn i_times_rotation_is_symmetric() {
        let w = OperatorWord::parse("i rho12").unwrap();
        assert_eq!(formal_adjoint(&w), w);
    }

    #[test]
    fn parsing() {
        let w = OperatorWord::parse("3/2*R1*rho21*L2").unwrap();
        assert_eq!(w.coeff, GaussianRational::from_ratio(-3, 2));
        assert_eq!(
            w.factors,
            vec![Generator::R(1), Generator::Rho(1, 2), Generator::L(2)]
        );
        assert!(matches!(
            OperatorWord::parse("R1 Q2"),
            Err(Error::UnknownGenerator(_))
        ));
        assert!(matches!(
            OperatorWord::parse("rho11"),
            Err(Error::UnknownGenerator(_))
        ));
        assert!(matches!(
            OperatorWord::parse("R0"),
            Err(Error::UnknownGenerator(_))
        ));
    }

    #[test]
    fn observable_exprs_match_matrices() {
        let alg = build_algebra(3).unwrap();
        for j in 1..=3 {
            assert_eq!(
                OperatorExpr::observable(j).matrix(&alg).unwrap(),
                alg.matrix(crate::lie::Label::X(j)).unwrap()
            );
        }
    }

    fn arb_generator() -> impl Strategy<Value = Generator> {
        prop_oneof![
            (1usize..4).prop_map(Generator::R),
            (1usize..4).prop_map(Generator::L),
            Just(Generator::Rho0),
            (1usize..3)
                .prop_flat_map(|j| (Just(j), j + 1..4))
                .prop_map(|(j, k)| Generator::Rho(j, k)),
        ]
    }

    fn arb_word() -> impl Strategy<Value = OperatorWord> {
        (
            -4i64..4,
            -4i64..4,
            proptest::collection::vec(arb_generator(), 0..5),
        )
            .prop_map(|(a, b, f)| {
                OperatorWord::new(GaussianRational::from_parts((a, 1), (b, 1)), f)
            })
    }

    proptest! {
        #[test]
        fn adjoint_is_an_involution(w in arb_word()) {
            prop_assert_eq!(formal_adjoint(&formal_adjoint(&w)), w);
        }

        #[test]
        fn adjoint_reverses_products(a in arb_word(), b in arb_word()) {
            prop_assert_eq!(formal_adjoint(&a.then(&b)), formal_adjoint(&b).then(&formal_adjoint(&a)));
        }
    }
}
