//! Coherent-state symbols `⟨Q⟩_{wv} = ⟨ψ_w, Qψ_v⟩/Υ_{wv}` and the
//! first-order system in `w` satisfied by `Υ = P^{−τ/2}`,
//! `P = 1 − 2wᵀv + w²v²`.
//!
//! Throughout, `w` stands for the antiholomorphic argument: `Υ` is a
//! polynomial expression in `w` and `v` with no conjugation.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::coherent::{coherent_state, leibniz_base, symbolic_v, symbolic_w, vacuum_pairing};
use crate::error::{require_dimension, Error, Result};
use crate::exact::{
    exp_nilpotent, series_power, Exponent, GaussianRational, Matrix, Monomial, MultiPoly, Scalar,
    Truncation, Var,
};
use crate::fock::{
    build_hat, check_degree, gram_matrix, hat_operators, DiffOperator, FockVector, MultiIndex,
};
use crate::lie::{build_algebra, Generator, OperatorExpr, OperatorWord, SoAlgebra};
use crate::report::Report;

fn half() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(2))
}

/// `−τ/2 − s`.
fn exponent_poly(s: u32) -> MultiPoly {
    &MultiPoly::tau().scale_rational(&-half()) - &MultiPoly::from_int(s as i64)
}

/// `Σ_s c_s · P^{−τ/2 − s}` with polynomial coefficients `c_s`.
///
/// Closed under `∂/∂w_j`, `∂/∂v_j` and multiplication by polynomials, so
/// every derivative of `Υ` is represented exactly.
#[derive(Clone, Debug)]
pub struct LeibnizForm {
    n: usize,
    base: MultiPoly,
    terms: BTreeMap<u32, MultiPoly>,
}

impl LeibnizForm {
    /// `Υ` itself.
    pub fn upsilon(n: usize) -> Result<Self> {
        Self::single(n, 0, MultiPoly::one())
    }

    /// `c · P^{−τ/2 − s}`.
    pub fn single(n: usize, s: u32, c: MultiPoly) -> Result<Self> {
        let mut out = LeibnizForm {
            n,
            base: leibniz_base(n)?,
            terms: BTreeMap::new(),
        };
        out.add(s, c);
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &MultiPoly)> {
        self.terms.iter().map(|(s, c)| (*s, c))
    }

    fn add(&mut self, s: u32, c: MultiPoly) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&s) {
            Some(x) => x + &c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&s);
        } else {
            self.terms.insert(s, sum);
        }
    }

    fn empty_like(&self) -> Self {
        LeibnizForm {
            n: self.n,
            base: self.base.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn plus(&self, other: &LeibnizForm) -> LeibnizForm {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add(*s, c.clone());
        }
        out
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> LeibnizForm {
        let mut out = self.empty_like();
        for (s, c) in &self.terms {
            out.add(*s, c * p);
        }
        out
    }

    /// `∂(c P^e) = (∂c) P^e + e·c·(∂P)·P^{e−1}`.
    pub fn derivative(&self, var: Var) -> LeibnizForm {
        let dp = self.base.derivative(var);
        let mut out = self.empty_like();
        for (s, c) in &self.terms {
            out.add(*s, c.derivative(var));
            out.add(s + 1, &(c * &exponent_poly(*s)) * &dp);
        }
        out
    }

    /// `Σ c·v^b ∂_v^a` applied term by term.
    pub fn apply(&self, op: &DiffOperator) -> LeibnizForm {
        let mut out = self.empty_like();
        for (a, b, c) in op.terms() {
            let mut g = self.clone();
            for (j, &p) in a.parts().iter().enumerate() {
                for _ in 0..p {
                    g = g.derivative(Var::V(j as u8 + 1));
                }
            }
            let vb = Monomial::from_pairs(
                b.parts()
                    .iter()
                    .enumerate()
                    .map(|(j, &p)| (Var::V(j as u8 + 1), p)),
            );
            out = out.plus(&g.mul_poly(&c.mul_monomial(&vb)));
        }
        out
    }

    /// Largest `s` present, `0` for the zero form.
    pub fn depth(&self) -> u32 {
        self.terms.keys().next_back().copied().unwrap_or(0)
    }

    /// `Σ c_s P^{depth − s}`, the form times `P^{τ/2 + depth}`.
    pub fn cleared(&self, depth: u32) -> Result<MultiPoly> {
        if depth < self.depth() {
            return Err(Error::InvalidIndex(format!(
                "clearing depth {depth} below {}",
                self.depth()
            )));
        }
        Ok(self.terms.iter().fold(MultiPoly::zero(), |acc, (s, c)| {
            &acc + &(c * &self.base.pow(depth - s))
        }))
    }

    /// Equality as functions, by clearing both to a common power of `P`.
    pub fn equals(&self, other: &LeibnizForm) -> Result<bool> {
        let d = self.depth().max(other.depth());
        Ok(self.cleared(d)? == other.cleared(d)?)
    }

    /// Power series of the form under `trunc`.
    pub fn series(&self, trunc: &Truncation) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero();
        for (s, c) in &self.terms {
            let power = series_power(
                &self.base,
                &Exponent::affine(-half(), BigRational::from_integer((-(*s as i64)).into())),
                trunc,
            )?;
            out = &out + &c.mul_truncated(&power, trunc);
        }
        Ok(out)
    }

    /// The form divided by `Υ`: `Σ c_s P^{−s}`.
    pub fn over_upsilon(&self) -> BerezinSymbol {
        let power = self.depth();
        let numerator = self.cleared(power).expect("depth is the maximum");
        BerezinSymbol {
            n: self.n,
            numerator,
            power,
        }
    }

    /// `Σ c_s(τ₀) P^{−τ₀/2 − s}` with `τ₀ = −2` and denominators cleared:
    /// the value times `P^{depth − 1}`, valid when `depth ≥ 1`.
    fn at_matrix_tau(&self, depth: u32) -> MultiPoly {
        let t = GaussianRational::from_int(-2);
        self.terms.iter().fold(MultiPoly::zero(), |acc, (s, c)| {
            &acc + &(&c.evaluate(&[(Var::Tau, t.clone())]) * &self.base.pow(depth - s))
        })
    }
}

/// `numerator / P^power`, a rational function of `w`, `v` and `τ`.
#[derive(Clone, Debug)]
pub struct BerezinSymbol {
    pub n: usize,
    pub numerator: MultiPoly,
    pub power: u32,
}

impl BerezinSymbol {
    pub fn equals(&self, other: &BerezinSymbol) -> Result<bool> {
        let p = leibniz_base(self.n)?;
        Ok(&self.numerator * &p.pow(other.power) == &other.numerator * &p.pow(self.power))
    }

    /// Value at numeric `(w, v)`, polynomial in `τ`.
    pub fn evaluate(&self, w: &[GaussianRational], v: &[GaussianRational]) -> Result<MultiPoly> {
        let assignment = point_assignment(self.n, w, v)?;
        let p = leibniz_base(self.n)?.evaluate(&assignment).constant_term();
        let num = self.numerator.evaluate(&assignment);
        if self.power == 0 {
            return Ok(num);
        }
        if p.is_zero() {
            return Err(Error::Pole(format!(
                "1 - 2 w.v + w^2 v^2 = 0 at w = {}, v = {}",
                fmt_point(w),
                fmt_point(v)
            )));
        }
        Ok(num.scale(&p.pow(self.power).inv()?))
    }
}

impl std::fmt::Display for BerezinSymbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.power {
            0 => write!(f, "{}", self.numerator),
            1 => write!(f, "({}) / P", self.numerator),
            p => write!(f, "({}) / P^{p}", self.numerator),
        }
    }
}

fn fmt_point(x: &[GaussianRational]) -> String {
    let parts: Vec<String> = x.iter().map(GaussianRational::to_string).collect();
    format!("({})", parts.join(", "))
}

fn point_assignment(
    n: usize,
    w: &[GaussianRational],
    v: &[GaussianRational],
) -> Result<Vec<(Var, GaussianRational)>> {
    if w.len() != n || v.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "expected w, v of length {n}, got {} and {}",
            w.len(),
            v.len()
        )));
    }
    let mut out: Vec<(Var, GaussianRational)> = w
        .iter()
        .enumerate()
        .map(|(j, x)| (Var::W(j as u8 + 1), x.clone()))
        .collect();
    out.extend(
        v.iter()
            .enumerate()
            .map(|(j, x)| (Var::V(j as u8 + 1), x.clone())),
    );
    Ok(out)
}

/// `⟨ψ_w, Qψ_v⟩` by the Wick recipe: normal-order `Q` in the
/// hat-representation and let `𝓥_j ↦ v_j`, `𝓡_j ↦ ∂/∂v_j` act on `Υ`.
pub fn berezin_numerator(n: usize, q: &OperatorExpr) -> Result<LeibnizForm> {
    let op = hat_operators(n)?.expr(q)?.to_differential_operator();
    Ok(LeibnizForm::upsilon(n)?.apply(&op))
}

/// `⟨Q⟩_{wv}` at symbolic `w`, `v`, `τ`.
pub fn berezin_transform(n: usize, q: &OperatorExpr) -> Result<BerezinSymbol> {
    Ok(berezin_numerator(n, q)?.over_upsilon())
}

/// `⟨Ω, exp(w·L) Q exp(v·R) Ω⟩` in the `(n+2)`-dimensional realization, where `τ = −2`.
pub fn matrix_numerator<T: Scalar>(
    alg: &SoAlgebra,
    q: &OperatorExpr,
    w: &[T],
    v: &[T],
) -> Result<T> {
    let n = alg.n();
    if w.len() != n || v.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "expected w, v of length {n}"
        )));
    }
    let size = n + 2;
    let qm = q.matrix(alg)?.map(T::from_gaussian);
    let mut wl: Matrix<T> = Matrix::zeros(size, size);
    for (j, wj) in w.iter().enumerate() {
        wl = wl.try_add(&alg.l(j + 1).map(T::from_gaussian).scale_entries(wj))?;
    }
    let s = coherent_state(v)?.apply(&qm)?.apply(&exp_nilpotent(&wl)?)?;
    Ok(vacuum_pairing(&s))
}

/// `⟨Q⟩_{wv}` at a numeric point, polynomial in `τ`.
///
/// At `τ = −2` the value is checked against the matrix realization.
pub fn berezin_at(
    n: usize,
    q: &OperatorExpr,
    w: &[GaussianRational],
    v: &[GaussianRational],
) -> Result<MultiPoly> {
    let symbol = berezin_transform(n, q)?;
    let value = symbol.evaluate(w, v)?;
    let alg = build_algebra(n)?;
    let p = crate::coherent::leibniz_base_value(w, v);
    let at_matrix_tau = value
        .evaluate(&[(Var::Tau, GaussianRational::from_int(-2))])
        .constant_term();
    if &at_matrix_tau * &p != matrix_numerator(&alg, q, w, v)? {
        return Err(Error::Inconsistent(format!(
            "Berezin symbol of {q} disagrees with the matrix realization"
        )));
    }
    Ok(value)
}

/// `Σ_{|k|,|m| ≤ D} w^k v^m/(k! m!) ⟨k| Q |m⟩`, the numerator through the Fock
/// space and the Gram matrix, truncated at bidegree `(D, D)`.
pub fn fock_numerator_series(n: usize, q: &OperatorExpr, degree: u32) -> Result<MultiPoly> {
    let op = hat_operators(n)?.expr(q)?;
    let gram = gram_matrix(n, degree)?;
    let index = MultiIndex::up_to(n, degree);
    let mut out = MultiPoly::zero();
    for m in &index {
        let image = op.apply(&FockVector::basis(m.clone()));
        if image.is_zero() {
            continue;
        }
        for k in &index {
            let c = gram.pair(&FockVector::basis(k.clone()), &image);
            if c.is_zero() {
                continue;
            }
            let mono = Monomial::from_pairs(
                k.parts()
                    .iter()
                    .enumerate()
                    .map(|(j, &e)| (Var::W(j as u8 + 1), e))
                    .chain(
                        m.parts()
                            .iter()
                            .enumerate()
                            .map(|(j, &e)| (Var::V(j as u8 + 1), e)),
                    ),
            );
            let weight = BigRational::from_integer(1.into()) / (k.factorial() * m.factorial());
            out = &out + &c.scale_rational(&weight).mul_monomial(&mono);
        }
    }
    Ok(out)
}

/// `R_j, L_j, ρ₀, ρ_{jk}` for `j < k`.
pub fn generators(n: usize) -> Vec<Generator> {
    let mut out: Vec<Generator> = (1..=n).map(Generator::R).collect();
    out.extend((1..=n).map(Generator::L));
    out.push(Generator::Rho0);
    for j in 1..=n {
        for k in j + 1..=n {
            out.push(Generator::Rho(j, k));
        }
    }
    out
}

/// Every word in the generators of length `1..=max_len`.
pub fn words(n: usize, max_len: usize) -> Vec<OperatorExpr> {
    let gens = generators(n);
    let mut layer: Vec<Vec<Generator>> = vec![Vec::new()];
    let mut out = Vec::new();
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                gens.iter().map(move |&g| {
                    let mut next = w.clone();
                    next.push(g);
                    next
                })
            })
            .collect();
        out.extend(
            layer
                .iter()
                .map(|f| OperatorExpr::word(OperatorWord::new(GaussianRational::one(), f.clone()))),
        );
    }
    out
}

fn bidegree(degree: u32) -> Truncation {
    crate::coherent::bidegree_truncation(degree)
}

/// `τ(w_j − v_j w²)`, so that `⟨R̂_j⟩ = τ(w_j − v_j w²)/P`.
pub fn raising_symbol_numerator(n: usize, j: usize) -> MultiPoly {
    let w = symbolic_w(n);
    let v = symbolic_v(n);
    let w2 = w.iter().fold(MultiPoly::zero(), |acc, x| &acc + &(x * x));
    &MultiPoly::tau() * &(&w[j - 1] - &(&v[j - 1] * &w2))
}

/// Checks the symbol of the identity, `ρ̂₀` and `R̂_j` at the origin and
/// symbolically, the Wick recipe against the Fock-space series for all words
/// of length `≤ max_len` through bidegree `degree`, and the Wick recipe at
/// `τ = −2` against the matrix realization, symbolically in `w`, `v`.
pub fn verify_berezin(n: usize, degree: u32, max_len: usize) -> Result<Report> {
    require_dimension(n, 1)?;
    let mut report = Report::new(format!("berezin n={n}"));
    let origin = vec![GaussianRational::zero(); n];
    let identity = berezin_transform(n, &OperatorExpr::identity())?;
    report.check(
        "<1> = 1",
        identity.equals(&BerezinSymbol {
            n,
            numerator: MultiPoly::one(),
            power: 0,
        })?,
    );
    let rho0 = berezin_at(
        n,
        &OperatorExpr::generator(Generator::Rho0),
        &origin,
        &origin,
    )?;
    report.check("<rho0> at w = v = 0 is t", rho0 == MultiPoly::tau());
    for j in 1..=n {
        let r = OperatorExpr::generator(Generator::R(j));
        report.check(
            format!("<R{j}> at w = v = 0 is 0"),
            berezin_at(n, &r, &origin, &origin)?.is_zero(),
        );
        let expected = BerezinSymbol {
            n,
            numerator: raising_symbol_numerator(n, j),
            power: 1,
        };
        report.check(
            format!("<R{j}> = t(w{j} - v{j} w^2)/P"),
            berezin_transform(n, &r)?.equals(&expected)?,
        );
    }

    let all = words(n, max_len);
    let trunc = bidegree(degree);
    let mut wick_fock = Vec::new();
    for q in &all {
        let wick = berezin_numerator(n, q)?.series(&trunc)?;
        if wick != fock_numerator_series(n, q, degree)? {
            wick_fock.push(q.to_string());
        }
    }
    report.check_detail(
        format!(
            "Wick recipe = Fock pairing for {} words of length <= {max_len}, bidegree <= {degree}",
            all.len()
        ),
        wick_fock.is_empty(),
        wick_fock.join(", "),
    );

    let alg = build_algebra(n)?;
    let (w, v) = (symbolic_w(n), symbolic_v(n));
    let p = leibniz_base(n)?;
    let mut wick_matrix = Vec::new();
    for q in std::iter::once(OperatorExpr::identity()).chain(all.iter().cloned()) {
        let form = berezin_numerator(n, &q)?;
        let depth = form.depth().max(1);
        let lhs = &matrix_numerator(&alg, &q, &w, &v)? * &p.pow(depth - 1);
        if lhs != form.at_matrix_tau(depth) {
            wick_matrix.push(q.to_string());
        }
    }
    report.check_detail(
        format!("Wick recipe at t = -2 = matrix realization for words of length <= {max_len}"),
        wick_matrix.is_empty(),
        wick_matrix.join(", "),
    );
    Ok(report)
}

/// `Υ·⟨R̂_j⟩ = ∂Υ/∂v_j`, with `⟨R̂_j⟩` read three ways: the closed form
/// `τ(w_j − v_j w²)/P`, the Wick recipe, and the Fock-space series.
pub fn verify_raising_identity(n: usize, degree: u32) -> Result<Report> {
    require_dimension(n, 1)?;
    let mut report = Report::new(format!("raising identity n={n}"));
    let upsilon = LeibnizForm::upsilon(n)?;
    let trunc = bidegree(degree);
    for j in 1..=n {
        let dv = upsilon.derivative(Var::V(j as u8));
        let closed = LeibnizForm::single(n, 1, raising_symbol_numerator(n, j))?;
        report.check(
            format!("t(w{j} - v{j} w^2) P^(-t/2-1) = dU/dv{j}"),
            closed.equals(&dv)?,
        );
        let r = OperatorExpr::generator(Generator::R(j));
        report.check(
            format!("Wick <psi_w, R{j} psi_v> = dU/dv{j}"),
            berezin_numerator(n, &r)?.equals(&dv)?,
        );
        report.check(
            format!("Fock <psi_w, R{j} psi_v> = dU/dv{j} through bidegree {degree}"),
            fock_numerator_series(n, &r, degree)? == dv.series(&trunc)?,
        );
        let w0: Vec<(Var, GaussianRational)> = (1..=n)
            .map(|k| (Var::W(k as u8), GaussianRational::zero()))
            .collect();
        report.check(
            format!("dU/dv{j} = 0 at w = 0"),
            dv.cleared(dv.depth())?.evaluate(&w0).is_zero(),
        );
    }
    Ok(report)
}

/// `τv_j + 2v_j Σ_l v_l ∂_l − v²∂_j`, the right side of
/// `∂Υ/∂w_j = τv_jΥ + 2v_j v_l ∂Υ/∂v_l − v²∂Υ/∂v_j`.
pub fn pde_operator(n: usize, j: usize) -> Result<DiffOperator> {
    check_degree(j as u32, 1, "PDE index")?;
    if j > n {
        return Err(Error::InvalidIndex(format!("PDE index {j} with n = {n}")));
    }
    let e = |k: usize| MultiIndex::unit(n, k);
    let zero = MultiIndex::zero(n);
    let mut op = DiffOperator::zero(n);
    op.add_term(zero, e(j), &MultiPoly::tau());
    for l in 1..=n {
        op.add_term(e(l), e(j).add(&e(l)), &MultiPoly::from_int(2));
        op.add_term(e(j), e(l).add(&e(l)), &MultiPoly::from_int(-1));
    }
    Ok(op)
}

/// `(lhs, rhs)` of `−(τ/2)∂P/∂w_j = τv_jP − τv_j v_l∂P/∂v_l + (τ/2)v²∂P/∂v_j`,
/// the system with `P^{−τ/2−1}` cleared.
pub fn pde_polynomial_identity(n: usize, j: usize) -> Result<(MultiPoly, MultiPoly)> {
    let p = leibniz_base(n)?;
    let v = symbolic_v(n);
    let tau = MultiPoly::tau();
    let half_tau = tau.scale_rational(&half());
    let v2 = v.iter().fold(MultiPoly::zero(), |acc, x| &acc + &(x * x));
    let euler = v
        .iter()
        .enumerate()
        .fold(MultiPoly::zero(), |acc, (l, vl)| {
            &acc + &(vl * &p.derivative(Var::V(l as u8 + 1)))
        });
    let vj = &v[j - 1];
    let lhs = -(&half_tau * &p.derivative(Var::W(j as u8)));
    let rhs = &(&(&(&tau * vj) * &p) - &(&(&tau * vj) * &euler))
        + &(&(&half_tau * &v2) * &p.derivative(Var::V(j as u8)));
    Ok((lhs, rhs))
}

fn tau_homogeneous_of_degree_one(p: &MultiPoly) -> bool {
    p.terms().all(|(m, _)| m.exponent(Var::Tau) == 1)
}

/// The first-order system for `Υ` in three forms (derivatives of the closed
/// form, the cleared polynomial identity, `τ`-homogeneity), and the operator
/// read off its right side equals `L̂_j`.
pub fn verify_pde_system(n: usize) -> Result<Report> {
    require_dimension(n, 1)?;
    let mut report = Report::new(format!("PDE system n={n}"));
    let upsilon = LeibnizForm::upsilon(n)?;
    let ops = hat_operators(n)?;
    for j in 1..=n {
        let op = pde_operator(n, j)?;
        let lhs = upsilon.derivative(Var::W(j as u8));
        report.check(
            format!("dU/dw{j} = (t v{j} + 2 v{j} v.d - v^2 d{j}) U"),
            lhs.equals(&upsilon.apply(&op))?,
        );
        let (a, b) = pde_polynomial_identity(n, j)?;
        report.check(
            format!("cleared identity for j = {j} holds as polynomials"),
            a == b,
        );
        report.check(
            format!("both sides for j = {j} are homogeneous of degree 1 in t"),
            !a.is_zero() && tau_homogeneous_of_degree_one(&a) && tau_homogeneous_of_degree_one(&b),
        );
        report.check(
            format!("operator read off for j = {j} is L{j}"),
            op.to_weyl_element() == *ops.l(j),
        );
    }
    Ok(report)
}

/// `L̂_j = τ𝓥_j + 2N𝓥_j − 𝓡_j𝓥²` against `ρ̂₀𝓥_j − 𝓡_j𝓥²`, as normal-ordered
/// elements and as matrices on degrees `≤ D`.
pub fn bessel_form_check(n: usize, max_degree: u32) -> Result<Report> {
    check_degree(max_degree, 2, "Bessel form truncation")?;
    let hat = build_hat(n, max_degree)?;
    let ops = hat_operators(n)?;
    let mut report = Report::new(format!("Bessel form n={n} D={max_degree}"));
    for j in 1..=n {
        let bessel = ops.bessel_l(j);
        report.check(
            format!("L{j} = rho0 V{j} - R{j} V^2 (Weyl)"),
            bessel == *ops.l(j),
        );
        let problems = hat
            .of(ops.l(j))
            .compare_interior(&hat.of(&bessel), max_degree)?;
        report.check_detail(
            format!("L{j} = rho0 V{j} - R{j} V^2 (matrices)"),
            problems.is_empty(),
            problems.join("; "),
        );
        let vac = FockVector::vacuum(n);
        report.check(
            format!("both forms of L{j} kill |0>"),
            ops.l(j).apply(&vac).is_zero() && bessel.apply(&vac).is_zero(),
        );
    }
    Ok(report)
}

fn latex_var(v: Var) -> String {
    match v {
        Var::V(i) => format!("v_{{{i}}}"),
        Var::W(i) => format!("w_{{{i}}}"),
        Var::Z(i) => format!("z_{{{i}}}"),
        Var::X(i) => format!("x_{{{i}}}"),
        Var::Tau => "\\tau".to_string(),
    }
}

/// LaTeX rendering of a polynomial, terms in the canonical order.
pub fn latex_poly(p: &MultiPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (m, c)) in p.terms().rev().enumerate() {
        let mono: Vec<String> = m
            .pairs()
            .iter()
            .map(|&(v, e)| {
                if e == 1 {
                    latex_var(v)
                } else {
                    format!("{}^{{{e}}}", latex_var(v))
                }
            })
            .collect();
        let mono = mono.join(" ");
        let (neg, mag) = if c.is_real() && c.re < BigRational::from_integer(0.into()) {
            (true, -c)
        } else {
            (false, c.clone())
        };
        let coeff = if mag.is_real() {
            let r = &mag.re;
            if r.is_integer() {
                r.numer().to_string()
            } else {
                format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
            }
        } else {
            format!("({mag})")
        };
        let body = match (mono.is_empty(), mag.is_one()) {
            (true, _) => coeff,
            (false, true) => mono,
            (false, false) => format!("{coeff} {mono}"),
        };
        match (idx, neg) {
            (0, true) => out.push_str(&format!("-{body}")),
            (0, false) => out.push_str(&body),
            (_, true) => out.push_str(&format!(" - {body}")),
            (_, false) => out.push_str(&format!(" + {body}")),
        }
    }
    out
}

/// LaTeX display of the identities checked by [`verify_pde_system`] and
/// [`verify_raising_identity`] at this `n`.
pub fn latex_identities(n: usize) -> Result<Vec<String>> {
    require_dimension(n, 1)?;
    let mut out = vec![format!("P = {}", latex_poly(&leibniz_base(n)?))];
    for j in 1..=n {
        out.push(format!(
            "\\langle \\hat R_{{{j}}} \\rangle_{{wv}} = \\frac{{{}}}{{P}}",
            latex_poly(&raising_symbol_numerator(n, j))
        ));
        let (lhs, rhs) = pde_polynomial_identity(n, j)?;
        out.push(format!("{} = {}", latex_poly(&lhs), latex_poly(&rhs)));
    }
    Ok(out)
}
