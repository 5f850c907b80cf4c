//! Vacuum, coherent states and the Leibniz function in the matrix realization.
//!
//! In ℂ^{n+2} the vacuum is `Ω = (0̄, 1, i)`. A vector `s = (v₀, a, b)` in the
//! scaled orbit `λ·exp(v·R)Ω` is read through the functional
//! `⟨Ω, s⟩ = ½ conj(Ω)ᵀ s = ½(a − i b)`, which returns `λ`. The matrix
//! realization has `ρ₀Ω = −2Ω`, so it sits at `τ = −2`.

use crate::error::{require_dimension, Error, Result};
use crate::exact::{
    exp_nilpotent, series_power, Exponent, GaussianRational, Group, Matrix, MultiPoly, Scalar,
    Truncation, Var,
};
use crate::lie::{build_algebra, SoAlgebra};
use crate::report::Report;
use crate::sample::Sampler;

/// A vector of ℂ^{n+2} (or of polynomials), split as `(v₀, a, b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T> {
    entries: Vec<T>,
}

impl<T: Scalar> StateVector<T> {
    pub fn new(entries: Vec<T>) -> Result<Self> {
        if entries.len() < 3 {
            return Err(Error::DimensionMismatch(format!(
                "state vector of length {}",
                entries.len()
            )));
        }
        Ok(StateVector { entries })
    }

    pub fn n(&self) -> usize {
        self.entries.len() - 2
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn v0(&self) -> &[T] {
        &self.entries[..self.n()]
    }

    pub fn a(&self) -> &T {
        &self.entries[self.n()]
    }

    pub fn b(&self) -> &T {
        &self.entries[self.n() + 1]
    }

    pub fn scale(&self, c: &T) -> Self {
        StateVector {
            entries: self.entries.iter().map(|x| x.times(c)).collect(),
        }
    }

    pub fn apply(&self, m: &Matrix<T>) -> Result<Self> {
        Ok(StateVector {
            entries: m.mul_vec(&self.entries)?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(T::is_zero)
    }
}

fn lift<T: Scalar>(c: GaussianRational) -> T {
    T::from_gaussian(&c)
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc.plus(&x.times(y)))
}

/// `Ω = (0, …, 0, 1, i)`.
///
/// Checks `L_jΩ = 0`, `ρ_{jk}Ω = 0` and `ρ₀Ω = −2Ω` before returning.
pub fn vacuum<T: Scalar>(n: usize) -> Result<StateVector<T>> {
    let alg = build_algebra(n)?;
    let omega = raw_vacuum(n);
    let failures: Vec<_> = vacuum_report(&alg, &omega)
        .failures()
        .map(|c| c.name.clone())
        .collect();
    if !failures.is_empty() {
        return Err(Error::Inconsistent(format!(
            "vacuum axioms: {}",
            failures.join(", ")
        )));
    }
    StateVector::new(omega.entries.iter().map(T::from_gaussian).collect())
}

fn raw_vacuum(n: usize) -> StateVector<GaussianRational> {
    let mut entries = vec![GaussianRational::zero(); n + 2];
    entries[n] = GaussianRational::one();
    entries[n + 1] = GaussianRational::i();
    StateVector { entries }
}

fn vacuum_report(alg: &SoAlgebra, omega: &StateVector<GaussianRational>) -> Report {
    let n = alg.n();
    let mut report = Report::new(format!("vacuum n={n}"));
    let apply = |m: &Matrix<GaussianRational>| omega.apply(m).expect("square (n+2) matrix");
    for j in 1..=n {
        report.check(format!("L{j} Omega = 0"), apply(alg.l(j)).is_zero());
        report.check(format!("R{j} Omega != 0"), !apply(alg.r(j)).is_zero());
        for k in j + 1..=n {
            let rho = alg.rho(j, k).expect("j < k");
            report.check(format!("rho{j}{k} Omega = 0"), apply(&rho).is_zero());
        }
    }
    let minus_two = GaussianRational::from_int(-2);
    report.check(
        "rho0 Omega = -2 Omega",
        apply(alg.rho0()) == omega.scale(&minus_two),
    );
    report
}

/// `⟨Ω, s⟩ = ½(a − i b)`.
pub fn vacuum_pairing<T: Scalar>(s: &StateVector<T>) -> T {
    let i_b = s.b().scale_by(&GaussianRational::i());
    s.a()
        .minus(&i_b)
        .scale_by(&GaussianRational::from_ratio(1, 2))
}

/// `(2i v, 1 + v², i(1 − v²))`.
pub fn coherent_state_closed_form<T: Scalar>(v: &[T]) -> Result<StateVector<T>> {
    require_dimension(v.len(), 1)?;
    let i = GaussianRational::i();
    let v2 = dot(v, v);
    let mut entries: Vec<T> = v
        .iter()
        .map(|x| x.scale_by(&(&i * &GaussianRational::from_int(2))))
        .collect();
    entries.push(T::one().plus(&v2));
    entries.push(T::one().minus(&v2).scale_by(&i));
    StateVector::new(entries)
}

fn span<T: Scalar>(
    coeffs: &[T],
    mats: impl Fn(usize) -> Matrix<GaussianRational>,
    size: usize,
) -> Matrix<T> {
    coeffs
        .iter()
        .enumerate()
        .fold(Matrix::zeros(size, size), |acc, (j, c)| {
            if c.is_zero() {
                acc
            } else {
                &acc + &mats(j + 1).map(|e| lift::<T>(e.clone())).scale_entries(c)
            }
        })
}

/// `exp(v·R)Ω`, computed with [`exp_nilpotent`] and checked against the closed form.
pub fn coherent_state<T: Scalar>(v: &[T]) -> Result<StateVector<T>> {
    let n = v.len();
    let alg = build_algebra(n)?;
    let omega: StateVector<T> = vacuum(n)?;
    let via_exp = omega.apply(&exp_nilpotent(&span(v, |j| alg.r(j).clone(), n + 2))?)?;
    let closed = coherent_state_closed_form(v)?;
    if via_exp != closed {
        return Err(Error::Inconsistent(
            "exp(v.R) Omega disagrees with the closed form".into(),
        ));
    }
    Ok(closed)
}

/// Orbit coordinates of `s = λ·exp(v·R)Ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coordinates {
    pub v: Vec<GaussianRational>,
    /// The scale `λ = e^{−2u}`.
    pub lambda: GaussianRational,
}

/// Recovers `(v, λ)` from a vector in the scaled coherent-state orbit.
///
/// Uses `λ = (a − i b)/2` and `v = v₀/(b + i a)`; the quotient
/// `λ = −½ v₀ᵀv₀/(a + i b)` is also checked wherever it is defined.
pub fn recover_coordinates(s: &StateVector<GaussianRational>) -> Result<Coordinates> {
    let lambda = vacuum_pairing(s);
    if lambda.is_zero() {
        return Err(Error::NotInOrbit("a - i b = 0".into()));
    }
    let i = GaussianRational::i();
    let d = s.b() + &(&i * s.a());
    let d_inv = d
        .inv()
        .map_err(|_| Error::NotInOrbit("b + i a = 0".into()))?;
    let v: Vec<_> = s.v0().iter().map(|x| x * &d_inv).collect();
    if &coherent_state_closed_form(&v)?.scale(&lambda) != s {
        return Err(Error::NotInOrbit(format!("no v with s = {lambda} * psi_v")));
    }
    let v0_sq = dot(s.v0(), s.v0());
    let a_ib = s.a() + &(&i * s.b());
    if !v0_sq.is_zero() && !a_ib.is_zero() {
        let quotient = (&v0_sq * &GaussianRational::from_ratio(-1, 2)).checked_div(&a_ib)?;
        if quotient != lambda {
            return Err(Error::Inconsistent(format!(
                "quotient formula gives {quotient}, expected {lambda}"
            )));
        }
    }
    Ok(Coordinates { v, lambda })
}

/// Exact test that `s` lies in the scaled orbit, without dividing.
///
/// With `λ = ⟨Ω, s⟩` this checks `b + i a = 2iλ`,
/// `−4λ²·a = λ(v₀ᵀv₀ − 4λ²)` and `−4λ²·b = iλ(−4λ² − v₀ᵀv₀)`,
/// which are the orbit equations multiplied through by `(b + i a)²`.
pub fn in_scaled_orbit<T: Scalar>(s: &StateVector<T>) -> bool {
    let i = GaussianRational::i();
    let lambda = vacuum_pairing(s);
    let d = s.b().plus(&s.a().scale_by(&i));
    if d != lambda.scale_by(&(&i * &GaussianRational::from_int(2))) {
        return false;
    }
    let m4l2 = lambda
        .times(&lambda)
        .scale_by(&GaussianRational::from_int(-4));
    let v0_sq = dot(s.v0(), s.v0());
    m4l2.times(s.a()) == lambda.times(&v0_sq.plus(&m4l2))
        && m4l2.times(s.b()) == lambda.times(&m4l2.minus(&v0_sq)).scale_by(&i)
}

/// `1 − 2wᵀv + w²v²` evaluated in the scalar ring of `w` and `v`.
pub fn leibniz_base_value<T: Scalar>(w: &[T], v: &[T]) -> T {
    let two = GaussianRational::from_int(2);
    T::one()
        .minus(&dot(w, v).scale_by(&two))
        .plus(&dot(w, w).times(&dot(v, v)))
}

/// `⟨Ω, exp(w·L) exp(v·R) Ω⟩` through the matrix realization.
///
/// The image is checked to lie in the scaled orbit, and, when the scale is
/// nonzero and the entries are numbers, coordinates are recovered explicitly.
/// The value is asserted equal to `1 − 2wᵀv + w²v²`.
pub fn leibniz_from_matrices<T: Scalar>(w: &[T], v: &[T]) -> Result<T> {
    if w.len() != v.len() {
        return Err(Error::DimensionMismatch(format!(
            "w has {} entries, v has {}",
            w.len(),
            v.len()
        )));
    }
    let n = v.len();
    let alg = build_algebra(n)?;
    let psi = coherent_state(v)?;
    let s = psi.apply(&exp_nilpotent(&span(w, |j| alg.l(j).clone(), n + 2))?)?;
    if !in_scaled_orbit(&s) {
        return Err(Error::NotInOrbit("exp(w.L) psi_v".into()));
    }
    let lambda = vacuum_pairing(&s);
    let expected = leibniz_base_value(w, v);
    if lambda != expected {
        return Err(Error::Inconsistent(
            "matrix Leibniz value disagrees with 1 - 2w.v + w^2 v^2".into(),
        ));
    }
    Ok(lambda)
}

/// Numeric variant that also runs [`recover_coordinates`] on the image when
/// the scale is nonzero.
pub fn leibniz_numeric(w: &[GaussianRational], v: &[GaussianRational]) -> Result<GaussianRational> {
    let lambda = leibniz_from_matrices(w, v)?;
    if !lambda.is_zero() {
        let n = v.len();
        let alg = build_algebra(n)?;
        let s = coherent_state(v)?.apply(&exp_nilpotent(&span(w, |j| alg.l(j).clone(), n + 2))?)?;
        let coords = recover_coordinates(&s)?;
        if coords.lambda != lambda {
            return Err(Error::Inconsistent(
                "recovered scale differs from the pairing".into(),
            ));
        }
    }
    Ok(lambda)
}

/// The Leibniz function `Υ_{wv} = base^{exponent}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LeibnizValue {
    pub n: usize,
    pub base: MultiPoly,
    pub exponent: Exponent,
}

impl LeibnizValue {
    /// `(1 − 2wᵀv + w²v²)^{−τ/2}`.
    pub fn symbolic(n: usize) -> Result<Self> {
        Ok(LeibnizValue {
            n,
            base: leibniz_base(n)?,
            exponent: Exponent::neg_half_tau(),
        })
    }

    pub fn series(&self, trunc: &Truncation) -> Result<MultiPoly> {
        series_power(&self.base, &self.exponent, trunc)
    }
}

fn symbols(n: usize, var: fn(u8) -> Var) -> Vec<MultiPoly> {
    (1..=n).map(|i| MultiPoly::var(var(i as u8))).collect()
}

pub fn symbolic_v(n: usize) -> Vec<MultiPoly> {
    symbols(n, Var::V)
}

pub fn symbolic_w(n: usize) -> Vec<MultiPoly> {
    symbols(n, Var::W)
}

/// `1 − 2wᵀv + w²v²` as a polynomial in `w₁..w_n, v₁..v_n`.
pub fn leibniz_base(n: usize) -> Result<MultiPoly> {
    require_dimension(n, 1)?;
    Ok(leibniz_base_value(&symbolic_w(n), &symbolic_v(n)))
}

/// The truncation keeping `deg_w ≤ degree` and `deg_v ≤ degree`.
pub fn bidegree_truncation(degree: u32) -> Truncation {
    Truncation::groups(&[(Group::W, degree), (Group::V, degree)])
}

/// The symbolic Leibniz function and its double series through bidegree `(degree, degree)`.
pub fn leibniz_closed_form(n: usize, degree: u32) -> Result<(LeibnizValue, MultiPoly)> {
    let value = LeibnizValue::symbolic(n)?;
    let series = value.series(&bidegree_truncation(degree))?;
    Ok((value, series))
}

fn swap_wv(p: &MultiPoly) -> MultiPoly {
    MultiPoly::from_terms(p.terms().map(|(m, c)| {
        let swapped = m.pairs().iter().map(|&(var, e)| {
            let s = match var {
                Var::V(i) => Var::W(i),
                Var::W(i) => Var::V(i),
                other => other,
            };
            (s, e)
        });
        (crate::exact::Monomial::from_pairs(swapped), c.clone())
    }))
}

/// Vacuum axioms, coherent-state construction, orbit recovery and the
/// Leibniz theorem on `samples` seeded random pairs, plus symbolic checks
/// when `symbolic` is set.
pub fn verify_coherent(
    n: usize,
    samples: usize,
    seed: u64,
    height: i64,
    symbolic: bool,
) -> Result<Report> {
    let alg = build_algebra(n)?;
    let mut report = Report::new(format!("coherent n={n}"));
    report.extend(vacuum_report(&alg, &raw_vacuum(n)));

    let mut sampler = Sampler::new(seed, height);
    let mut leibniz_fail = Vec::new();
    let mut symmetry_fail = 0;
    let mut recovery_fail = 0;
    for k in 0..samples {
        let w = sampler.real_vector(n);
        let v = sampler.real_vector(n);
        match (leibniz_numeric(&w, &v), leibniz_numeric(&v, &w)) {
            (Ok(a), Ok(b)) => {
                if a != b {
                    symmetry_fail += 1;
                }
            }
            (Err(e), _) | (_, Err(e)) => leibniz_fail.push(format!("#{k}: {e}")),
        }
        let lambda = GaussianRational::real(sampler.nonzero_rational());
        let ok = coherent_state(&v)
            .and_then(|psi| recover_coordinates(&psi.scale(&lambda)))
            .is_ok_and(|c| c.v == v && c.lambda == lambda);
        if !ok {
            recovery_fail += 1;
        }
    }
    report.check_detail(
        format!("matrix Leibniz = 1 - 2w.v + w^2 v^2 on {samples} random pairs"),
        leibniz_fail.is_empty(),
        leibniz_fail.join("; "),
    );
    report.check(
        format!("Leibniz symmetric in (w, v) on {samples} random pairs"),
        symmetry_fail == 0,
    );
    report.check(
        format!("recover(lambda psi_v) = (v, lambda) on {samples} random points"),
        recovery_fail == 0,
    );

    let zero = vec![GaussianRational::zero(); n];
    let v = sampler.real_vector(n);
    report.check(
        "Leibniz at w = 0 is 1",
        leibniz_numeric(&zero, &v).is_ok_and(|x| x.is_one()),
    );

    let base = leibniz_base(n)?;
    report.check(
        "base polynomial is symmetric under v <-> w",
        swap_wv(&base) == base,
    );
    report.check(
        "base polynomial has constant term 1",
        base.constant_term().is_one(),
    );

    if symbolic {
        let name = "symbolic matrix Leibniz = 1 - 2w.v + w^2 v^2";
        match leibniz_from_matrices(&symbolic_w(n), &symbolic_v(n)) {
            Ok(p) => {
                report.check(name, p == base);
            }
            Err(e) => report.error(name, e),
        }
        let name = "symbolic exp(v.R) Omega matches the closed form";
        match coherent_state(&symbolic_v(n)) {
            Ok(_) => {
                report.check(name, true);
            }
            Err(e) => report.error(name, e),
        }
    }
    Ok(report)
}
