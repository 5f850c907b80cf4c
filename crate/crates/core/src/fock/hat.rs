//! The hat-representation on Fock space:
//!
//! * `R̂_j = 𝓡_j`
//! * `L̂_j = τ𝓥_j + 2(𝓡_l𝓥_l)𝓥_j − 𝓡_j𝓥²`
//! * `ρ̂₀ = τ + 2𝓡_l𝓥_l`
//! * `ρ̂_{jk} = 𝓡_j𝓥_k − 𝓡_k𝓥_j`
//!
//! with summation over `l` and `𝓥² = Σ_l 𝓥_l²`.

use std::sync::Arc;

use super::{check_degree, FockMatrix, FockSpace, FockVector, MultiIndex, WeylElement};
use crate::error::{require_dimension, Error, Result};
use crate::exact::{GaussianRational, MultiPoly};
use crate::lie::{build_algebra, relation_list, Generator, OperatorExpr};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Combinatorial {
    /// `𝓡_j`
    Raising(usize),
    /// `𝓥_j`
    Lowering(usize),
}

fn check_index(n: usize, j: usize) -> Result<()> {
    if j == 0 || j > n {
        return Err(Error::InvalidIndex(format!("index {j} with n = {n}")));
    }
    Ok(())
}

/// `𝓡_j` or `𝓥_j` as a matrix on the degree-`≤ D` space.
pub fn build_combinatorial(n: usize, max_degree: u32, which: Combinatorial) -> Result<FockMatrix> {
    check_degree(max_degree, 1, "build_combinatorial")?;
    let space = Arc::new(FockSpace::new(n, max_degree)?);
    let op = match which {
        Combinatorial::Raising(j) => {
            check_index(n, j)?;
            WeylElement::raising(n, j)
        }
        Combinatorial::Lowering(j) => {
            check_index(n, j)?;
            WeylElement::lowering(n, j)
        }
    };
    Ok(FockMatrix::from_weyl(space, &op))
}

/// The hat operators as exact, untruncated elements of the Weyl algebra.
#[derive(Clone, Debug)]
pub struct HatOperators {
    n: usize,
    r: Vec<WeylElement>,
    l: Vec<WeylElement>,
    rho0: WeylElement,
}

fn tau_elem(n: usize) -> WeylElement {
    WeylElement::constant(n, MultiPoly::tau())
}

/// `Σ_l 𝓡_l𝓥_l`.
fn number_operator(n: usize) -> WeylElement {
    (1..=n).fold(WeylElement::zero(n), |acc, l| {
        &acc + &WeylElement::monomial(
            MultiIndex::unit(n, l),
            MultiIndex::unit(n, l),
            MultiPoly::one(),
        )
    })
}

/// `Σ_l 𝓥_l²`.
fn v_squared(n: usize) -> WeylElement {
    (1..=n).fold(WeylElement::zero(n), |acc, l| {
        &acc + &WeylElement::lowering(n, l).pow(2)
    })
}

pub fn hat_operators(n: usize) -> Result<HatOperators> {
    require_dimension(n, 1)?;
    let two = MultiPoly::from_int(2);
    let num = number_operator(n);
    let vsq = v_squared(n);
    let r: Vec<_> = (1..=n).map(|j| WeylElement::raising(n, j)).collect();
    let l = (1..=n)
        .map(|j| {
            let vj = WeylElement::lowering(n, j);
            let first = tau_elem(n).times(&vj);
            let second = num.times(&vj).scale(&two);
            let third = r[j - 1].times(&vsq);
            &(&first + &second) - &third
        })
        .collect();
    let rho0 = &tau_elem(n) + &num.scale(&two);
    Ok(HatOperators { n, r, l, rho0 })
}

impl HatOperators {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self, j: usize) -> &WeylElement {
        &self.r[j - 1]
    }

    pub fn l(&self, j: usize) -> &WeylElement {
        &self.l[j - 1]
    }

    pub fn rho0(&self) -> &WeylElement {
        &self.rho0
    }

    /// `ρ̂_{jk} = 𝓡_j𝓥_k − 𝓡_k𝓥_j`, for any `j ≠ k`.
    pub fn rho(&self, j: usize, k: usize) -> Result<WeylElement> {
        check_index(self.n, j)?;
        check_index(self.n, k)?;
        if j == k {
            return Err(Error::InvalidIndex(format!("rho_({j},{j})")));
        }
        let n = self.n;
        let a = WeylElement::raising(n, j).times(&WeylElement::lowering(n, k));
        let b = WeylElement::raising(n, k).times(&WeylElement::lowering(n, j));
        Ok(&a - &b)
    }

    /// `ρ̂₀𝓥_j − 𝓡_j𝓥²`.
    pub fn bessel_l(&self, j: usize) -> WeylElement {
        let n = self.n;
        &self.rho0.times(&WeylElement::lowering(n, j)) - &self.r(j).times(&v_squared(n))
    }

    pub fn generator(&self, g: Generator) -> Result<WeylElement> {
        match g {
            Generator::R(j) => check_index(self.n, j).map(|_| self.r(j).clone()),
            Generator::L(j) => check_index(self.n, j).map(|_| self.l(j).clone()),
            Generator::Rho0 => Ok(self.rho0.clone()),
            Generator::Rho(j, k) => self.rho(j, k),
        }
    }

    pub fn expr(&self, e: &OperatorExpr) -> Result<WeylElement> {
        let n = self.n;
        e.realize(
            &WeylElement::one(n),
            |g| self.generator(g),
            |a, b| Ok(a.times(b)),
            |a, b| Ok(a + b),
            |a, c| a.scale_gaussian(c),
            WeylElement::zero(n),
        )
    }

    /// `X̂_j`, the hat image of the observable `X_j`.
    pub fn observable(&self, j: usize) -> Result<WeylElement> {
        check_index(self.n, j)?;
        self.expr(&OperatorExpr::observable(j))
    }
}

/// The hat operators as matrices on the degree-`≤ D` Fock space.
#[derive(Clone, Debug)]
pub struct HatMatrices {
    pub space: Arc<FockSpace>,
    pub ops: HatOperators,
    pub r: Vec<FockMatrix>,
    pub l: Vec<FockMatrix>,
    pub rho0: FockMatrix,
}

impl HatMatrices {
    pub fn n(&self) -> usize {
        self.ops.n
    }

    pub fn max_degree(&self) -> u32 {
        self.space.max_degree()
    }

    pub fn of(&self, op: &WeylElement) -> FockMatrix {
        FockMatrix::from_weyl(self.space.clone(), op)
    }

    pub fn generator(&self, g: Generator) -> Result<FockMatrix> {
        match g {
            Generator::R(j) => check_index(self.n(), j).map(|_| self.r[j - 1].clone()),
            Generator::L(j) => check_index(self.n(), j).map(|_| self.l[j - 1].clone()),
            Generator::Rho0 => Ok(self.rho0.clone()),
            Generator::Rho(j, k) => Ok(self.of(&self.ops.rho(j, k)?)),
        }
    }

    /// Realizes an expression by multiplying truncated matrices.
    pub fn expr(&self, e: &OperatorExpr) -> Result<FockMatrix> {
        e.realize(
            &FockMatrix::identity(self.space.clone()),
            |g| self.generator(g),
            |a, b| a.try_mul(b),
            |a, b| a.try_add(b),
            |a, c| a.scale(&MultiPoly::constant(c.clone())),
            FockMatrix::zeros(self.space.clone()),
        )
    }
}

/// Builds `R̂_j`, `L̂_j`, `ρ̂₀` on the degree-`≤ D` space and checks that
/// `L̂_j` agrees with its Bessel form `ρ̂₀𝓥_j − 𝓡_j𝓥²`.
pub fn build_hat(n: usize, max_degree: u32) -> Result<HatMatrices> {
    check_degree(max_degree, 2, "build_hat")?;
    let ops = hat_operators(n)?;
    for j in 1..=n {
        if ops.bessel_l(j) != *ops.l(j) {
            return Err(Error::Inconsistent(format!("Bessel form of L{j} differs")));
        }
    }
    let space = Arc::new(FockSpace::new(n, max_degree)?);
    let mat = |op: &WeylElement| FockMatrix::from_weyl(space.clone(), op);
    let r = (1..=n).map(|j| mat(ops.r(j))).collect();
    let l = (1..=n).map(|j| mat(ops.l(j))).collect();
    let rho0 = mat(ops.rho0());
    Ok(HatMatrices {
        space,
        ops,
        r,
        l,
        rho0,
    })
}

fn record(report: &mut Report, name: String, problems: Result<Vec<String>>) {
    match problems {
        Ok(p) => {
            let detail = p.iter().take(3).cloned().collect::<Vec<_>>().join("; ");
            report.check_detail(name, p.is_empty(), detail);
        }
        Err(e) => report.error(name, e),
    }
}

/// Checks the hat-representation on the degree-`≤ D` Fock space.
///
/// Every relation is checked twice: exactly in the Weyl algebra, and as a
/// product of truncated matrices restricted to degrees `≤ D − 2`.
pub fn verify_hat_relations(n: usize, max_degree: u32) -> Result<Report> {
    check_degree(max_degree, 3, "verify_hat_relations")?;
    let hat = build_hat(n, max_degree)?;
    let ops = &hat.ops;
    let space = hat.space.clone();
    let d = max_degree;
    let mut report = Report::new(format!("hat n={n} D={d}"));

    let id = FockMatrix::identity(space.clone());
    let zero = FockMatrix::zeros(space.clone());
    for j in 1..=n {
        let vj = FockMatrix::from_weyl(space.clone(), &WeylElement::lowering(n, j));
        for k in 1..=n {
            let rk = FockMatrix::from_weyl(space.clone(), &WeylElement::raising(n, k));
            let target = if j == k { &id } else { &zero };
            let name = format!("[V{j},R{k}] = {} on degree <= {}", u8::from(j == k), d - 1);
            record(
                &mut report,
                name,
                vj.commutator(&rk)
                    .and_then(|c| c.compare_interior(target, d - 1)),
            );
        }
    }

    for j in 1..=n {
        let bessel = ops.bessel_l(j);
        report.check(
            format!("L{j} = rho0 V{j} - R{j} V^2 in the Weyl algebra"),
            bessel == *ops.l(j),
        );
        let vj = FockMatrix::from_weyl(space.clone(), &WeylElement::lowering(n, j));
        let vsq = FockMatrix::from_weyl(space.clone(), &v_squared(n));
        let via_products = hat
            .rho0
            .try_mul(&vj)
            .and_then(|a| a.try_sub(&hat.r[j - 1].try_mul(&vsq)?));
        record(
            &mut report,
            format!("L{j} = rho0 V{j} - R{j} V^2 as Fock matrices"),
            via_products.and_then(|m| m.compare_interior(&hat.l[j - 1], d)),
        );
    }

    for rel in relation_list(n) {
        let exact = ops
            .expr(&rel.lhs)
            .and_then(|a| Ok(a == ops.expr(&rel.rhs)?));
        match exact {
            Ok(ok) => {
                report.check(format!("{} (Weyl algebra)", rel.name), ok);
            }
            Err(e) => report.error(format!("{} (Weyl algebra)", rel.name), e),
        }
        let interior = d - rel.max_len() as u32;
        let cmp = hat
            .expr(&rel.lhs)
            .and_then(|a| a.compare_interior(&hat.expr(&rel.rhs)?, interior));
        record(
            &mut report,
            format!("{} on degree <= {interior}", rel.name),
            cmp,
        );
    }

    let omega = FockVector::vacuum(n);
    for j in 1..=n {
        report.check(format!("L{j} |0> = 0"), ops.l(j).apply(&omega).is_zero());
        for k in j + 1..=n {
            report.check(
                format!("rho{j}{k} |0> = 0"),
                ops.rho(j, k)?.apply(&omega).is_zero(),
            );
        }
    }
    let rho0_omega = ops.rho0().apply(&omega);
    report.check(
        "rho0 |0> = t |0>",
        rho0_omega == omega.scale(&MultiPoly::tau()),
    );
    let at_minus_two = ops
        .rho0()
        .evaluate_tau(&GaussianRational::from_int(-2))
        .apply(&omega);
    report.check(
        "rho0 |0> = -2 |0> at t = -2",
        at_minus_two == omega.scale(&MultiPoly::from_int(-2)),
    );

    let graded = space.basis().iter().all(|k| {
        let eig = &MultiPoly::tau() + &MultiPoly::from_int(2 * k.degree() as i64);
        ops.rho0().apply(&FockVector::basis(k.clone())) == FockVector::basis(k.clone()).scale(&eig)
    });
    report.check(format!("rho0 |k> = (t + 2|k|) |k> for |k| <= {d}"), graded);

    let alg = build_algebra(n)?;
    let matrix_ok = relation_list(n).iter().all(
        |rel| matches!((rel.lhs.matrix(&alg), rel.rhs.matrix(&alg)), (Ok(a), Ok(b)) if a == b),
    );
    report.check(
        "the same relations hold in the matrix realization (t = -2)",
        matrix_ok,
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(xs: &[u32]) -> MultiIndex {
        MultiIndex::new(xs.to_vec())
    }

    #[test]
    fn combinatorial_examples() {
        let v1 = build_combinatorial(2, 3, Combinatorial::Lowering(1)).unwrap();
        let space = v1.space().clone();
        assert_eq!(v1.column(0).count(), 0);
        let col = space.index_of(&k(&[2, 0])).unwrap();
        let target = space.index_of(&k(&[1, 0])).unwrap();
        assert_eq!(
            v1.column(col).collect::<Vec<_>>(),
            vec![(target, &MultiPoly::from_int(2))]
        );
        assert!(build_combinatorial(2, 0, Combinatorial::Raising(1)).is_err());
        assert!(build_combinatorial(2, 2, Combinatorial::Raising(3)).is_err());
    }

    #[test]
    fn hat_examples() {
        let ops = hat_operators(2).unwrap();
        let e1 = FockVector::basis(k(&[1, 0]));
        let e2 = FockVector::basis(k(&[0, 1]));
        assert_eq!(
            ops.l(1).apply(&e1),
            FockVector::vacuum(2).scale(&MultiPoly::tau())
        );
        assert_eq!(
            ops.rho0().apply(&FockVector::vacuum(2)),
            FockVector::vacuum(2).scale(&MultiPoly::tau())
        );
        assert_eq!(ops.rho(1, 2).unwrap().apply(&e2), e1);
        assert_eq!(ops.rho(2, 1).unwrap(), -&ops.rho(1, 2).unwrap());
    }

    #[test]
    fn l_hat_by_hand_n1() {
        // L̂|k⟩ = (τk + 2k(k−1) − k(k−1))|k−1⟩ = k(τ + k − 1)|k−1⟩
        let ops = hat_operators(1).unwrap();
        for kk in 1..6u32 {
            let out = ops.l(1).apply(&FockVector::basis(k(&[kk])));
            let c = &MultiPoly::tau().scale(&GaussianRational::from_int(kk as i64))
                + &MultiPoly::from_int((kk * (kk - 1)) as i64);
            assert_eq!(out, FockVector::basis(k(&[kk - 1])).scale(&c));
        }
    }

    #[test]
    fn relations_pass() {
        for (n, d) in [(1, 4), (2, 5), (3, 4)] {
            let report = verify_hat_relations(n, d).unwrap();
            assert!(report.all_passed(), "{report}");
        }
        assert!(verify_hat_relations(2, 2).is_err());
    }

    #[test]
    fn observables_commute_in_the_weyl_algebra() {
        let ops = hat_operators(3).unwrap();
        for i in 1..=3 {
            for j in i + 1..=3 {
                let c = ops
                    .observable(i)
                    .unwrap()
                    .commutator(&ops.observable(j).unwrap());
                assert!(c.is_zero(), "[X{i},X{j}] = {c}");
            }
        }
    }
}
