//! Gram matrices `G[k][m] = ⟨k|m⟩ = k!·m!·[w^k v^m] Υ_{wv}`, adjointness of
//! the hat operators, and exact positivity probes.

use std::sync::Arc;

use num_rational::BigRational;
use serde::Serialize;

use super::{check_degree, FockSpace, FockVector, MultiIndex, WeylElement};
use crate::coherent::leibniz_closed_form;
use crate::error::{Error, Result};
use crate::exact::ldl::min_eigenvalue_f64;
use crate::exact::{
    ldlt, Definiteness, DenseMatrix, GaussianRational, Ldl, Monomial, MultiPoly, PolyMatrix, Var,
};
use crate::fock::hat::{build_hat, hat_operators, HatOperators};
use crate::lie::{formal_adjoint, Generator, OperatorExpr, OperatorWord};
use crate::report::Report;
use crate::sample::Sampler;

/// The Gram matrix on the degree-`≤ D` Fock space; entries are polynomials in `τ`.
#[derive(Clone, Debug, PartialEq)]
pub struct GramMatrix {
    pub space: Arc<FockSpace>,
    pub entries: PolyMatrix,
}

impl GramMatrix {
    pub fn n(&self) -> usize {
        self.space.n()
    }

    pub fn max_degree(&self) -> u32 {
        self.space.max_degree()
    }

    pub fn get(&self, k: &MultiIndex, m: &MultiIndex) -> Option<&MultiPoly> {
        Some(
            self.entries
                .get(self.space.index_of(k)?, self.space.index_of(m)?),
        )
    }

    /// Entries with `τ` replaced by a number.
    pub fn evaluate(&self, tau: &GaussianRational) -> Result<DenseMatrix> {
        let size = self.space.len();
        let mut out = DenseMatrix::zeros(size, size);
        for i in 0..size {
            for j in 0..size {
                let p = self.entries.get(i, j).evaluate(&[(Var::Tau, tau.clone())]);
                let c = p.as_constant().ok_or_else(|| {
                    Error::Inconsistent(format!("Gram entry {p} is not a polynomial in t alone"))
                })?;
                out.set(i, j, c);
            }
        }
        Ok(out)
    }

    /// The degree-`d` diagonal block.
    pub fn block(&self, m: &DenseMatrix, d: u32) -> DenseMatrix {
        let range = self.space.degree_block(d);
        let rows = range
            .clone()
            .map(|i| range.clone().map(|j| m.get(i, j).clone()).collect())
            .collect();
        DenseMatrix::from_rows(rows).expect("square block")
    }

    /// `⟨a, b⟩ = Σ conj(a_k) G[k][m] b_m` over the truncated space, with `τ` real.
    pub fn pair(&self, a: &FockVector, b: &FockVector) -> MultiPoly {
        let mut total = MultiPoly::zero();
        for (k, x) in a.terms() {
            let Some(i) = self.space.index_of(k) else {
                continue;
            };
            let xc = x.conj();
            for (m, y) in b.terms() {
                let Some(j) = self.space.index_of(m) else {
                    continue;
                };
                let g = self.entries.get(i, j);
                if !g.is_zero() {
                    total = total + &(&xc * g) * y;
                }
            }
        }
        total
    }
}

/// Splits `w^k v^m τ^e` into `(k, m, τ^e)`.
fn split_wv(n: usize, mono: &Monomial) -> (MultiIndex, MultiIndex, Monomial) {
    let mut k = vec![0; n];
    let mut m = vec![0; n];
    let mut rest = Vec::new();
    for &(var, e) in mono.pairs() {
        match var {
            Var::W(i) => k[i as usize - 1] = e,
            Var::V(i) => m[i as usize - 1] = e,
            other => rest.push((other, e)),
        }
    }
    (
        MultiIndex::new(k),
        MultiIndex::new(m),
        Monomial::from_pairs(rest),
    )
}

/// Gram matrix read off the Leibniz series truncated at bidegree `(D, D)`.
pub fn gram_matrix(n: usize, max_degree: u32) -> Result<GramMatrix> {
    let space = Arc::new(FockSpace::new(n, max_degree)?);
    let (_, series) = leibniz_closed_form(n, max_degree)?;
    let mut entries = PolyMatrix::zeros(space.len(), space.len());
    for (mono, c) in series.terms() {
        let (k, m, rest) = split_wv(n, mono);
        let (Some(i), Some(j)) = (space.index_of(&k), space.index_of(&m)) else {
            return Err(Error::Inconsistent(format!(
                "series term {mono:?} outside the Fock space"
            )));
        };
        let weight = GaussianRational::real(k.factorial() * m.factorial());
        let entry = entries.get(i, j) + &MultiPoly::term(c * &weight, rest);
        entries.set(i, j, entry);
    }
    Ok(GramMatrix { space, entries })
}

/// `G[k][m] = ⟨Ω, L̂^k R̂^m Ω⟩`, using only the hat operators and the vacuum axioms.
pub fn gram_from_operators(n: usize, max_degree: u32) -> Result<GramMatrix> {
    let space = Arc::new(FockSpace::new(n, max_degree)?);
    let ops = hat_operators(n)?;
    let zero = MultiIndex::zero(n);
    let mut entries = PolyMatrix::zeros(space.len(), space.len());
    for (j, m) in space.basis().iter().enumerate() {
        for (i, k) in space.basis().iter().enumerate() {
            if k.degree() != m.degree() {
                continue;
            }
            let mut vec = FockVector::basis(m.clone());
            for l in 1..=n {
                for _ in 0..k.get(l) {
                    vec = ops.l(l).apply(&vec);
                }
            }
            entries.set(i, j, vec.coeff(&zero));
        }
    }
    Ok(GramMatrix { space, entries })
}

fn restrict(m: &PolyMatrix, end: usize) -> PolyMatrix {
    let rows = (0..end)
        .map(|i| (0..end).map(|j| m.get(i, j).clone()).collect())
        .collect();
    PolyMatrix::from_rows(rows).expect("square restriction")
}

/// Checks `M(adj w)^† G = sign · G M(w)` on rows and columns of degree `≤ limit`.
fn adjoint_identity(
    gram: &GramMatrix,
    adj: &WeylElement,
    op: &WeylElement,
    sign: i64,
    limit: u32,
) -> Result<bool> {
    let space = gram.space.clone();
    let m_adj = super::FockMatrix::from_weyl(space.clone(), adj).to_dense();
    let m_op = super::FockMatrix::from_weyl(space.clone(), op).to_dense();
    let end = space.up_to_degree(limit).end;
    let lhs = m_adj.conj_transpose().try_mul(&gram.entries)?;
    let rhs = gram
        .entries
        .try_mul(&m_op)?
        .scale(&GaussianRational::from_int(sign));
    Ok(restrict(&lhs, end) == restrict(&rhs, end))
}

fn all_generators(n: usize) -> Vec<Generator> {
    let mut gens: Vec<Generator> = (1..=n)
        .map(Generator::R)
        .chain((1..=n).map(Generator::L))
        .collect();
    gens.push(Generator::Rho0);
    for j in 1..=n {
        for k in j + 1..=n {
            gens.push(Generator::Rho(j, k));
        }
    }
    gens
}

fn word_op(ops: &HatOperators, w: &OperatorWord) -> Result<WeylElement> {
    ops.expr(&OperatorExpr::word(w.clone()))
}

/// `R̂_j^† = L̂_j`, `ρ̂₀^† = ρ̂₀`, `ρ̂_{jk}^† = −ρ̂_{jk}` with respect to the Gram
/// form, plus the same identity for formal adjoints of every word of length 2
/// and a family of length-3 words with complex coefficients.
pub fn verify_adjointness(n: usize, max_degree: u32) -> Result<Report> {
    check_degree(max_degree, 2, "verify_adjointness")?;
    let gram = gram_matrix(n, max_degree)?;
    let hat = build_hat(n, max_degree)?;
    let ops = &hat.ops;
    let d = max_degree;
    let mut report = Report::new(format!("adjointness n={n} D={d}"));

    for j in 1..=n {
        let ok = adjoint_identity(&gram, ops.l(j), ops.r(j), 1, d - 1)?;
        report.check(format!("L{j}^T G = G R{j} on degree <= {}", d - 1), ok);
        let ok = adjoint_identity(&gram, ops.r(j), ops.l(j), 1, d - 1)?;
        report.check(format!("R{j}^T G = G L{j} on degree <= {}", d - 1), ok);
    }
    let ok = adjoint_identity(&gram, ops.rho0(), ops.rho0(), 1, d)?;
    report.check(format!("rho0^T G = G rho0 on degree <= {d}"), ok);
    for j in 1..=n {
        for k in j + 1..=n {
            let rho = ops.rho(j, k)?;
            let ok = adjoint_identity(&gram, &rho, &rho, -1, d)?;
            report.check(format!("rho{j}{k}^T G = -G rho{j}{k} on degree <= {d}"), ok);
        }
    }

    let gens = all_generators(n);
    let mut words = Vec::new();
    for &a in &gens {
        for &b in &gens {
            words.push(OperatorWord::new(GaussianRational::one(), vec![a, b]));
        }
    }
    let i = GaussianRational::i();
    for &a in &gens {
        words.push(OperatorWord::new(
            i.clone(),
            vec![a, Generator::R(1), Generator::L(n)],
        ));
    }
    let mut failures = Vec::new();
    for w in &words {
        let limit = d.saturating_sub(w.len() as u32);
        let ok = adjoint_identity(
            &gram,
            &word_op(ops, &formal_adjoint(w))?,
            &word_op(ops, w)?,
            1,
            limit,
        )?;
        if !ok {
            failures.push(w.to_string());
        }
    }
    report.check_detail(
        format!(
            "formal adjoint of {} words is the Gram adjoint",
            words.len()
        ),
        failures.is_empty(),
        failures.join(", "),
    );
    Ok(report)
}

/// Structure of the Gram matrix, agreement of the series and operator
/// routes, and the duality `⟨ψ_w, ψ_v⟩_G = Υ_{wv}` through the truncation.
pub fn verify_gram(
    n: usize,
    max_degree: u32,
    samples: usize,
    seed: u64,
    height: i64,
) -> Result<Report> {
    let gram = gram_matrix(n, max_degree)?;
    let space = gram.space.clone();
    let d = max_degree;
    let mut report = Report::new(format!("gram n={n} D={d}"));
    let size = space.len();
    let g = &gram.entries;

    report.check("G[0][0] = 1", g.get(0, 0).is_one());
    report.check("G is symmetric", g.transpose() == *g);
    let block_diag = (0..size).all(|i| {
        (0..size).all(|j| {
            space.basis()[i].degree() == space.basis()[j].degree() || g.get(i, j).is_zero()
        })
    });
    report.check("G is block diagonal by degree", block_diag);
    report.check(
        "series route equals <0| L^k R^m |0>",
        gram_from_operators(n, d)? == gram,
    );

    let (_, series) = leibniz_closed_form(n, d)?;
    let mut sampler = Sampler::new(seed, height);
    let mut mismatches = 0;
    for _ in 0..samples {
        let w = sampler.real_vector(n);
        let v = sampler.real_vector(n);
        let psi = |x: &[GaussianRational]| {
            let mut out = FockVector::zero();
            for k in space.basis() {
                let mut c =
                    GaussianRational::real(BigRational::from_integer(1.into()) / k.factorial());
                for (l, xl) in x.iter().enumerate() {
                    c = &c * &xl.pow(k.parts()[l]);
                }
                out.add_term(k.clone(), &MultiPoly::constant(c));
            }
            out
        };
        let lhs = gram.pair(&psi(&w), &psi(&v));
        let mut point: Vec<(Var, GaussianRational)> = Vec::new();
        for l in 0..n {
            point.push((Var::W(l as u8 + 1), w[l].clone()));
            point.push((Var::V(l as u8 + 1), v[l].clone()));
        }
        if lhs != series.evaluate(&point) {
            mismatches += 1;
        }
    }
    report.check(
        format!("<psi_w, psi_v>_G = truncated Leibniz series at {samples} random points"),
        mismatches == 0,
    );
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockPivots {
    pub degree: u32,
    /// Exact pivots as `p/q` strings.
    pub pivots: Vec<String>,
    pub definiteness: Definiteness,
}

/// Exact `LDLᵀ` verdict for the Gram matrix at a rational `τ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PositivityProbe {
    pub n: usize,
    pub max_degree: u32,
    pub tau: String,
    pub definiteness: Definiteness,
    pub blocks: Vec<BlockPivots>,
    /// Floating-point minimum eigenvalue of the full matrix, for display only.
    pub min_eigenvalue: f64,
}

impl PositivityProbe {
    pub fn is_positive_definite(&self) -> bool {
        self.definiteness == Definiteness::PositiveDefinite
    }
}

/// Factors each per-degree block of the Gram matrix at `τ = tau` exactly.
///
/// The overall verdict is indefinite if any block is, else singular if any
/// block has a zero pivot, else positive definite.
pub fn positivity_probe(n: usize, max_degree: u32, tau: &BigRational) -> Result<PositivityProbe> {
    let gram = gram_matrix(n, max_degree)?;
    let g = gram.evaluate(&GaussianRational::real(tau.clone()))?;
    let mut blocks = Vec::new();
    let mut overall = Definiteness::PositiveDefinite;
    for d in 0..=max_degree {
        let Ldl {
            pivots,
            definiteness,
            ..
        } = ldlt(&gram.block(&g, d))?;
        overall = match (overall, definiteness) {
            (Definiteness::Indefinite, _) | (_, Definiteness::Indefinite) => {
                Definiteness::Indefinite
            }
            (Definiteness::Singular, _) | (_, Definiteness::Singular) => Definiteness::Singular,
            _ => Definiteness::PositiveDefinite,
        };
        let pivots = pivots
            .iter()
            .map(crate::exact::gaussian::rational_to_string)
            .collect();
        blocks.push(BlockPivots {
            degree: d,
            pivots,
            definiteness,
        });
    }
    Ok(PositivityProbe {
        n,
        max_degree,
        tau: crate::exact::gaussian::rational_to_string(tau),
        definiteness: overall,
        blocks,
        min_eigenvalue: min_eigenvalue_f64(&g)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{pochhammer, rat};

    fn k(xs: &[u32]) -> MultiIndex {
        MultiIndex::new(xs.to_vec())
    }

    #[test]
    fn n1_diagonal_is_factorial_times_pochhammer() {
        let gram = gram_matrix(1, 5).unwrap();
        for kk in 0..=5u32 {
            let expect =
                pochhammer(&MultiPoly::tau(), kk).scale_rational(&crate::exact::factorial(kk));
            assert_eq!(gram.get(&k(&[kk]), &k(&[kk])).unwrap(), &expect);
        }
        assert!(gram.get(&k(&[1]), &k(&[2])).unwrap().is_zero());
    }

    #[test]
    fn n2_off_diagonal_entry() {
        let gram = gram_matrix(2, 3).unwrap();
        let e = gram.get(&k(&[2, 0]), &k(&[0, 2])).unwrap();
        assert_eq!(e, &MultiPoly::tau().scale(&GaussianRational::from_int(-2)));
        assert!(gram.get(&k(&[0, 0]), &k(&[0, 0])).unwrap().is_one());
    }

    #[test]
    fn operator_route_matches_series() {
        for (n, d) in [(1, 5), (2, 4), (3, 3)] {
            assert_eq!(
                gram_from_operators(n, d).unwrap(),
                gram_matrix(n, d).unwrap()
            );
        }
    }

    #[test]
    fn adjointness_passes() {
        for (n, d) in [(1, 4), (2, 3)] {
            let report = verify_adjointness(n, d).unwrap();
            assert!(report.all_passed(), "{report}");
        }
    }

    #[test]
    fn gram_suite_passes() {
        let report = verify_gram(2, 3, 5, 1, 7).unwrap();
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn positivity_examples() {
        let p = positivity_probe(1, 5, &rat(3, 1)).unwrap();
        assert!(p.is_positive_definite());
        assert!(p.min_eigenvalue > 0.0);
        let p = positivity_probe(1, 2, &rat(0, 1)).unwrap();
        assert_eq!(p.definiteness, Definiteness::Singular);
        assert_eq!(p.blocks[1].pivots, vec!["0/1".to_string()]);
        assert!(positivity_probe(2, 3, &rat(3, 1))
            .unwrap()
            .is_positive_definite());
        let p = positivity_probe(2, 2, &rat(-1, 1)).unwrap();
        assert_eq!(p.definiteness, Definiteness::Indefinite);
    }
}
