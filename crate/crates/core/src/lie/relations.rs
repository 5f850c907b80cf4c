use num_traits::One;

use super::words::{Generator, OperatorExpr};
use super::{build_algebra, build_observables, reference_matrices_n3, Label, SoAlgebra};
use crate::error::{require_dimension, Result};
use crate::exact::{commutator, exp_nilpotent, DenseMatrix, GaussianRational};
use crate::report::Report;

fn two() -> GaussianRational {
    GaussianRational::from_int(2)
}

fn is_gaussian_integer(c: &GaussianRational) -> bool {
    c.re.denom().is_one() && c.im.denom().is_one()
}

fn check_eq(report: &mut Report, name: String, lhs: Result<DenseMatrix>, rhs: &DenseMatrix) {
    match lhs {
        Ok(m) if &m == rhs => {
            report.check(name, true);
        }
        Ok(m) => {
            report.check_detail(name, false, format!("got\n{m:?}expected\n{rhs:?}"));
        }
        Err(e) => report.error(name, e),
    }
}

/// Checks the root-space relations, the ladder commutation relations,
/// abelianness of the raising and lowering subalgebras, nilpotency of `R_j`,
/// and closure of the basis under brackets.
pub fn verify_relations(alg: &SoAlgebra) -> Report {
    let n = alg.n();
    let mut report = Report::new(format!("lie n={n}"));
    let zero = DenseMatrix::zeros(alg.size(), alg.size());
    let rho0 = alg.rho0();

    for j in 1..=n {
        check_eq(
            &mut report,
            format!("[rho0,R{j}] = 2 R{j}"),
            commutator(rho0, alg.r(j)),
            &alg.r(j).scale(&two()),
        );
        check_eq(
            &mut report,
            format!("[L{j},rho0] = 2 L{j}"),
            commutator(alg.l(j), rho0),
            &alg.l(j).scale(&two()),
        );
        check_eq(
            &mut report,
            format!("[L{j},R{j}] = rho0"),
            commutator(alg.l(j), alg.r(j)),
            rho0,
        );
        check_eq(&mut report, format!("R{j}^3 = 0"), alg.r(j).pow(3), &zero);
        check_eq(&mut report, format!("L{j}^3 = 0"), alg.l(j).pow(3), &zero);
    }
    for j in 1..=n {
        for k in 1..=n {
            if j == k {
                continue;
            }
            let rho_jk = alg.rho(j, k).expect("j != k");
            check_eq(
                &mut report,
                format!("[L{k},R{j}] = 2 rho{j}{k}"),
                commutator(alg.l(k), alg.r(j)),
                &rho_jk.scale(&two()),
            );
            check_eq(
                &mut report,
                format!("[rho{j}{k},L{k}] = L{j}"),
                commutator(&rho_jk, alg.l(k)),
                alg.l(j),
            );
            if j < k {
                check_eq(
                    &mut report,
                    format!("[rho{j}{k},rho0] = 0"),
                    commutator(&rho_jk, rho0),
                    &zero,
                );
                check_eq(
                    &mut report,
                    format!("[R{j},R{k}] = 0"),
                    commutator(alg.r(j), alg.r(k)),
                    &zero,
                );
                check_eq(
                    &mut report,
                    format!("[L{j},L{k}] = 0"),
                    commutator(alg.l(j), alg.l(k)),
                    &zero,
                );
            }
        }
    }

    let mut closure_failures = Vec::new();
    for (ia, a) in alg.basis().iter().enumerate() {
        for b in &alg.basis()[ia + 1..] {
            let ok = commutator(&a.matrix, &b.matrix)
                .ok()
                .and_then(|c| alg.decompose(&c))
                .is_some_and(|coords| coords.iter().all(|(_, c)| is_gaussian_integer(c)));
            if !ok {
                closure_failures.push(format!("[{},{}]", a.label, b.label));
            }
        }
    }
    report.check_detail(
        "brackets of basis elements are Gaussian-integer combinations of the basis",
        closure_failures.is_empty(),
        closure_failures.join(", "),
    );
    report
}

/// Pairwise commutation, nilpotency `X_j³ = 0`, and the reference `n = 3` matrices.
pub fn verify_observables(n: usize) -> Result<Report> {
    let xs = build_observables(n)?;
    let size = n + 2;
    let zero = DenseMatrix::zeros(size, size);
    let mut report = Report::new(format!("observables n={n}"));
    for (i, xi) in xs.iter().enumerate() {
        for xj in &xs[i + 1..] {
            check_eq(
                &mut report,
                format!("[{},{}] = 0", xi.label, xj.label),
                commutator(&xi.matrix, &xj.matrix),
                &zero,
            );
        }
        check_eq(
            &mut report,
            format!("{}^3 = 0", xi.label),
            xi.matrix.pow(3),
            &zero,
        );
    }
    if n == 3 {
        report.extend(verify_printed_matrices()?);
    }
    Ok(report)
}

pub fn verify_printed_matrices() -> Result<Report> {
    let alg = build_algebra(3)?;
    let mut report = Report::new("printed n=3 matrices");
    for (label, printed) in reference_matrices_n3() {
        check_eq(
            &mut report,
            format!("{label} matches the reference matrix"),
            alg.matrix(label),
            &printed,
        );
    }
    Ok(report)
}

/// `exp(L₁) R_j exp(−L₁)` equals `X₁` for `j = 1` and `i X_j` for `j ≥ 2`.
///
/// Also checks the terminating BCH sum `R_j + [L₁,R_j] + ½[L₁,[L₁,R_j]]`
/// against the same targets.
pub fn conjugation_check(n: usize) -> Result<Report> {
    require_dimension(n, 2)?;
    let alg = build_algebra(n)?;
    let mut report = Report::new(format!("conjugation n={n}"));
    let l1 = alg.l(1);
    let e_plus = exp_nilpotent(l1)?;
    let e_minus = exp_nilpotent(&-l1)?;
    check_eq(
        &mut report,
        "exp(L1) exp(-L1) = I".into(),
        e_plus.try_mul(&e_minus),
        &DenseMatrix::identity(n + 2),
    );
    let half = GaussianRational::from_ratio(1, 2);
    for j in 1..=n {
        let target = if j == 1 {
            alg.matrix(Label::X(1))?
        } else {
            alg.matrix(Label::X(j))?.scale(&GaussianRational::i())
        };
        let name = if j == 1 {
            "X1".to_string()
        } else {
            format!("i X{j}")
        };
        let conj = e_plus.try_mul(alg.r(j)).and_then(|m| m.try_mul(&e_minus));
        check_eq(
            &mut report,
            format!("exp(L1) R{j} exp(-L1) = {name}"),
            conj,
            &target,
        );

        let c1 = commutator(l1, alg.r(j))?;
        let c2 = commutator(l1, &c1)?;
        let c3 = commutator(l1, &c2)?;
        let bch = &(alg.r(j) + &c1) + &c2.scale(&half);
        check_eq(
            &mut report,
            format!("BCH series for R{j} = {name}"),
            Ok(bch),
            &target,
        );
        check_eq(
            &mut report,
            format!("ad(L1)^3 R{j} = 0"),
            Ok(c3),
            &DenseMatrix::zeros(n + 2, n + 2),
        );
    }
    Ok(report)
}

/// An identity `lhs = rhs` between operator expressions.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub lhs: OperatorExpr,
    pub rhs: OperatorExpr,
}

impl Relation {
    /// Longest word on either side.
    pub fn max_len(&self) -> usize {
        self.lhs.max_len().max(self.rhs.max_len())
    }
}

/// The root-space relations, the ladder commutation relations and the
/// abelianness of the raising and lowering subalgebras, as operator words.
pub fn relation_list(n: usize) -> Vec<Relation> {
    let g = OperatorExpr::generator;
    let two = two();
    let zero = OperatorExpr::default();
    let mut out = Vec::new();
    let mut push =
        |name: String, lhs: OperatorExpr, rhs: OperatorExpr| out.push(Relation { name, lhs, rhs });
    for j in 1..=n {
        let (r, l) = (g(Generator::R(j)), g(Generator::L(j)));
        let rho0 = g(Generator::Rho0);
        push(
            format!("[rho0,R{j}] = 2 R{j}"),
            rho0.commutator(&r),
            r.scale(&two),
        );
        push(
            format!("[L{j},rho0] = 2 L{j}"),
            l.commutator(&rho0),
            l.scale(&two),
        );
        push(
            format!("[L{j},R{j}] = rho0"),
            l.commutator(&r),
            rho0.clone(),
        );
    }
    for j in 1..=n {
        for k in 1..=n {
            if j == k {
                continue;
            }
            let rho_jk = g(Generator::Rho(j, k));
            let (rj, lj, lk) = (g(Generator::R(j)), g(Generator::L(j)), g(Generator::L(k)));
            push(
                format!("[L{k},R{j}] = 2 rho{j}{k}"),
                lk.commutator(&rj),
                rho_jk.scale(&two),
            );
            push(
                format!("[rho{j}{k},L{k}] = L{j}"),
                rho_jk.commutator(&lk),
                lj.clone(),
            );
            if j < k {
                let rk = g(Generator::R(k));
                push(
                    format!("[rho{j}{k},rho0] = 0"),
                    rho_jk.commutator(&g(Generator::Rho0)),
                    zero.clone(),
                );
                push(format!("[R{j},R{k}] = 0"), rj.commutator(&rk), zero.clone());
                push(format!("[L{j},L{k}] = 0"), lj.commutator(&lk), zero.clone());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_hold_for_small_n() {
        for n in 1..=4 {
            let report = verify_relations(&build_algebra(n).unwrap());
            assert!(report.all_passed(), "{report}");
        }
    }

    #[test]
    fn observables_hold_for_small_n() {
        for n in 1..=4 {
            let report = verify_observables(n).unwrap();
            assert!(report.all_passed(), "{report}");
        }
    }

    #[test]
    fn conjugation_reproduces_observables() {
        for n in 2..=3 {
            let report = conjugation_check(n).unwrap();
            assert!(report.all_passed(), "{report}");
        }
        assert!(conjugation_check(1).is_err());
    }

    #[test]
    fn relation_words_hold_in_the_matrices() {
        for n in 1..=3 {
            let alg = build_algebra(n).unwrap();
            for rel in relation_list(n) {
                assert_eq!(
                    rel.lhs.matrix(&alg).unwrap(),
                    rel.rhs.matrix(&alg).unwrap(),
                    "{}",
                    rel.name
                );
            }
        }
    }

    #[test]
    fn report_flags_a_wrong_relation() {
        let alg = build_algebra(2).unwrap();
        let mut report = Report::new("negative");
        check_eq(
            &mut report,
            "[L1,R1] = 2 rho0".into(),
            commutator(alg.l(1), alg.r(1)),
            &alg.rho0().scale(&two()),
        );
        assert!(!report.all_passed());
    }
}
