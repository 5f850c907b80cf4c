//! The commuting observables `X_j` on the vacuum, the `z ↔ v` coordinate
//! change, the spectral transform `h^{−τ}`, joint moments, and the basis
//! polynomials generated by
//! `exp((x₁(v₁+v²) + i(x·v − x₁v₁))/(1+2v₁+v²))·(1+2v₁+v²)^{−τ/2}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::coherent::{coherent_state, recover_coordinates, StateVector};
use crate::error::{require_dimension, Error, Result};
use crate::exact::gaussian::rational_to_string;
use crate::exact::ldl::min_eigenvalue_f64;
use crate::exact::{
    exp_nilpotent, factorial, ldlt, pochhammer, series_exp, series_power, Definiteness,
    DenseMatrix, Exponent, GaussianRational, Group, Matrix, Monomial, MultiPoly, Scalar,
    Truncation, Var,
};
use crate::fock::{gram_matrix, hat_operators, FockVector, MultiIndex, WeylElement};
use crate::lie::{build_algebra, Label};
use crate::report::Report;
use crate::sample::Sampler;

/// `ζ² = z₁² − Σ_{j≥2} z_j²`.
pub fn zeta_squared<T: Scalar>(z: &[T]) -> T {
    z.iter().enumerate().fold(T::zero(), |acc, (j, zj)| {
        let sq = zj.times(zj);
        if j == 0 {
            acc.plus(&sq)
        } else {
            acc.minus(&sq)
        }
    })
}

/// `h² = (1 − z₁)² − Σ_{j≥2} z_j²`.
pub fn h_squared<T: Scalar>(z: &[T]) -> T {
    let one_minus = T::one().minus(&z[0]);
    z[1..].iter().fold(one_minus.times(&one_minus), |acc, zj| {
        acc.minus(&zj.times(zj))
    })
}

/// `z`, `ζ²` and `h²` together.
#[derive(Clone, Debug, PartialEq)]
pub struct ZCoordinates<T> {
    pub z: Vec<T>,
    pub zeta2: T,
    pub h2: T,
}

impl<T: Scalar> ZCoordinates<T> {
    pub fn new(z: Vec<T>) -> Result<Self> {
        require_dimension(z.len(), 1)?;
        let zeta2 = zeta_squared(&z);
        let h2 = h_squared(&z);
        Ok(ZCoordinates { z, zeta2, h2 })
    }
}

/// `(2i(z₁−ζ²), 2z₂, …, 2z_n, 1−2z₁+2ζ², i(1−2z₁))`.
pub fn exp_zx_vacuum_closed_form<T: Scalar>(z: &[T]) -> Result<StateVector<T>> {
    let c = ZCoordinates::new(z.to_vec())?;
    let i = GaussianRational::i();
    let two = GaussianRational::from_int(2);
    let two_z1 = z[0].scale_by(&two);
    let mut entries = vec![z[0].minus(&c.zeta2).scale_by(&(&i * &two))];
    entries.extend(z[1..].iter().map(|zj| zj.scale_by(&two)));
    entries.push(T::one().minus(&two_z1).plus(&c.zeta2.scale_by(&two)));
    entries.push(T::one().minus(&two_z1).scale_by(&i));
    StateVector::new(entries)
}

/// `exp(z·X)Ω` by [`exp_nilpotent`], checked against the closed form.
pub fn exp_zx_vacuum<T: Scalar>(z: &[T]) -> Result<StateVector<T>> {
    let n = z.len();
    let alg = build_algebra(n)?;
    let mut m: Matrix<T> = Matrix::zeros(n + 2, n + 2);
    for (j, zj) in z.iter().enumerate() {
        let x = alg.matrix(Label::X(j + 1))?.map(T::from_gaussian);
        m = m.try_add(&x.scale_entries(zj))?;
    }
    let omega: StateVector<T> = crate::coherent::vacuum(n)?;
    let via_exp = omega.apply(&exp_nilpotent(&m)?)?;
    let closed = exp_zx_vacuum_closed_form(z)?;
    if via_exp != closed {
        return Err(Error::Inconsistent(
            "exp(z.X) Omega disagrees with the closed form".into(),
        ));
    }
    Ok(closed)
}

/// `v₁ = (1 − z₁ − h²)/h²`, `v_k = −i z_k/h²` and `e^{−2u} = h²`.
///
/// The result is checked against coordinate recovery from `exp(z·X)Ω`.
pub fn z_to_v(z: &[GaussianRational]) -> Result<(Vec<GaussianRational>, GaussianRational)> {
    let c = ZCoordinates::new(z.to_vec())?;
    if c.h2.is_zero() {
        return Err(Error::SingularCoordinates(format!(
            "h^2 = 0 at z = {}",
            fmt_vec(z)
        )));
    }
    let inv = c.h2.inv()?;
    let mut v = vec![&(&(&GaussianRational::one() - &z[0]) - &c.h2) * &inv];
    let minus_i = -GaussianRational::i();
    v.extend(z[1..].iter().map(|zk| &(&minus_i * zk) * &inv));
    let recovered = recover_coordinates(&exp_zx_vacuum(z)?)?;
    if recovered.v != v || recovered.lambda != c.h2 {
        return Err(Error::Inconsistent(format!(
            "z_to_v disagrees with coordinate recovery at z = {}",
            fmt_vec(z)
        )));
    }
    Ok((v, c.h2))
}

/// `h² = (1 + 2v₁ + v²)^{−1}`, `z₁ = 1 − h²(1 + v₁)`, `z_k = i h² v_k`.
///
/// The round trip `z_to_v(v_to_z(v)) = v` is checked.
pub fn v_to_z(v: &[GaussianRational]) -> Result<(Vec<GaussianRational>, GaussianRational)> {
    require_dimension(v.len(), 1)?;
    let one = GaussianRational::one();
    let v2 = v
        .iter()
        .fold(GaussianRational::zero(), |acc, x| &acc + &(x * x));
    let den = &(&one + &(&v[0] * &GaussianRational::from_int(2))) + &v2;
    if den.is_zero() {
        return Err(Error::SingularCoordinates(format!(
            "1 + 2 v1 + v^2 = 0 at v = {}",
            fmt_vec(v)
        )));
    }
    let h2 = den.inv()?;
    let mut z = vec![&one - &(&h2 * &(&one + &v[0]))];
    let i_h2 = &GaussianRational::i() * &h2;
    z.extend(v[1..].iter().map(|vk| &i_h2 * vk));
    let (back, _) = z_to_v(&z)?;
    if back != v {
        return Err(Error::Inconsistent(format!(
            "z_to_v(v_to_z(v)) != v at v = {}",
            fmt_vec(v)
        )));
    }
    Ok((z, h2))
}

fn fmt_vec(x: &[GaussianRational]) -> String {
    let parts: Vec<String> = x.iter().map(GaussianRational::to_string).collect();
    format!("({})", parts.join(", "))
}

/// `N = (1 − z₁ − h², −i z₂, …, −i z_n)`, so that `v = N/h²`.
fn v_numerator(z: &[MultiPoly], h2: &MultiPoly) -> Vec<MultiPoly> {
    let mut out = vec![&(&MultiPoly::one() - &z[0]) - h2];
    out.extend(z[1..].iter().map(|zk| zk.scale(&-GaussianRational::i())));
    out
}

/// Checks `exp(z·X)Ω = h²·ψ_{v(z)}` with symbolic `z`, multiplied through by
/// `h²` so that both sides are polynomial:
/// `h²·exp(z·X)Ω = (2i h² N, h⁴ + NᵀN, i(h⁴ − NᵀN))`.
pub fn coordinate_duality_symbolic(n: usize) -> Result<bool> {
    let z: Vec<MultiPoly> = (1..=n).map(|j| MultiPoly::var(Var::Z(j as u8))).collect();
    let c = ZCoordinates::new(z.clone())?;
    let lhs = exp_zx_vacuum(&z)?.scale(&c.h2);
    let num = v_numerator(&z, &c.h2);
    let nn = num.iter().fold(MultiPoly::zero(), |acc, x| &acc + &(x * x));
    let h4 = &c.h2 * &c.h2;
    let i = GaussianRational::i();
    let mut rhs: Vec<MultiPoly> = num
        .iter()
        .map(|x| (&c.h2 * x).scale(&(&i * &GaussianRational::from_int(2))))
        .collect();
    rhs.push(&h4 + &nn);
    rhs.push((&h4 - &nn).scale(&i));
    Ok(lhs.entries() == rhs.as_slice())
}

/// `z_to_v`, `v_to_z` and the duality `exp(z·X)Ω = h²ψ_{v(z)}` on seeded
/// rational points, and symbolically when `symbolic` is set.
pub fn verify_coordinates(
    n: usize,
    samples: usize,
    seed: u64,
    height: i64,
    symbolic: bool,
) -> Result<Report> {
    require_dimension(n, 1)?;
    let mut report = Report::new(format!("coordinates n={n}"));
    let mut sampler = Sampler::new(seed, height);
    let (mut tried, mut failed) = (0, Vec::new());
    while tried < samples {
        let z = sampler.real_vector(n);
        if h_squared(&z).is_zero() {
            continue;
        }
        tried += 1;
        let outcome = z_to_v(&z).and_then(|(v, h2)| {
            let (z_back, h2_back) = v_to_z(&v)?;
            let dual = exp_zx_vacuum(&z)? == coherent_state(&v)?.scale(&h2);
            Ok(z_back == z && h2_back == h2 && dual)
        });
        match outcome {
            Ok(true) => {}
            Ok(false) => failed.push(fmt_vec(&z)),
            Err(e) => failed.push(format!("{}: {e}", fmt_vec(&z))),
        }
    }
    report.check_detail(
        format!(
            "v_to_z(z_to_v(z)) = z and exp(z.X) Omega = h^2 psi_v(z) on {samples} random points"
        ),
        failed.is_empty(),
        failed.join("; "),
    );
    let zero = vec![GaussianRational::zero(); n];
    report.check(
        "z = 0 gives v = 0, h^2 = 1",
        z_to_v(&zero).is_ok_and(|(v, h2)| v == zero && h2.is_one()),
    );
    if n >= 2 {
        let mut z = zero.clone();
        z[1] = GaussianRational::one();
        report.check(
            "h^2 = 0 is reported as singular",
            matches!(z_to_v(&z), Err(Error::SingularCoordinates(_))),
        );
    }
    if symbolic {
        let name = "h^2 exp(z.X) Omega = h^4 psi_v(z) symbolically";
        match coordinate_duality_symbolic(n) {
            Ok(ok) => {
                report.check(name, ok);
            }
            Err(e) => report.error(name, e),
        }
    }
    Ok(report)
}

fn z_truncation(degree: u32) -> Truncation {
    Truncation::groups(&[(Group::Z, degree)])
}

/// `h^{−τ} = ((1−z₁)² − Σ_{j≥2} z_j²)^{−τ/2}` through total `z`-degree `degree`.
pub fn spectral_transform(n: usize, degree: u32) -> Result<MultiPoly> {
    require_dimension(n, 1)?;
    let z: Vec<MultiPoly> = (1..=n).map(|j| MultiPoly::var(Var::Z(j as u8))).collect();
    series_power(
        &h_squared(&z),
        &Exponent::neg_half_tau(),
        &z_truncation(degree),
    )
}

/// `φ(s) = h^{−τ}` at `z = i s`, through total degree `degree`. The variable
/// `s_j` is carried by the indeterminate `z_j`.
pub fn characteristic_function(n: usize, degree: u32) -> Result<MultiPoly> {
    let t = spectral_transform(n, degree)?;
    let i = GaussianRational::i();
    Ok(MultiPoly::from_terms(t.terms().map(|(m, c)| {
        let zdeg: u32 = m.group_degree(Group::Z);
        (m.clone(), c * &i.pow(zdeg))
    })))
}

/// Joint moments `E[x^k]`, coefficients polynomial in `τ` (or numbers when
/// `τ` has been substituted).
#[derive(Clone, Debug, PartialEq)]
pub struct MomentTable {
    pub n: usize,
    pub max_degree: u32,
    pub tau: Option<BigRational>,
    pub entries: Vec<(MultiIndex, MultiPoly)>,
}

impl MomentTable {
    pub fn get(&self, k: &MultiIndex) -> Option<&MultiPoly> {
        self.entries.iter().find(|(m, _)| m == k).map(|(_, c)| c)
    }

    pub fn evaluate(&self, tau: &BigRational) -> MomentTable {
        let t = GaussianRational::real(tau.clone());
        MomentTable {
            n: self.n,
            max_degree: self.max_degree,
            tau: Some(tau.clone()),
            entries: self
                .entries
                .iter()
                .map(|(k, c)| (k.clone(), c.evaluate(&[(Var::Tau, t.clone())])))
                .collect(),
        }
    }

    /// `E[f(x)]` for a polynomial `f` in `x₁..x_n` (other indeterminates ride along).
    pub fn expectation(&self, f: &MultiPoly) -> Result<MultiPoly> {
        let mut total = MultiPoly::zero();
        for (mono, c) in f.terms() {
            let mut k = vec![0u32; self.n];
            let mut rest = Vec::new();
            for &(var, e) in mono.pairs() {
                match var {
                    Var::X(j) if (j as usize) <= self.n => k[j as usize - 1] = e,
                    other => rest.push((other, e)),
                }
            }
            let k = MultiIndex::new(k);
            let moment = self.get(&k).ok_or_else(|| {
                Error::InvalidIndex(format!(
                    "moment {k} beyond the table degree {}",
                    self.max_degree
                ))
            })?;
            total = &total + &(moment * &MultiPoly::term(c.clone(), Monomial::from_pairs(rest)));
        }
        Ok(total)
    }
}

/// `E[x^k] = k!·[z^k] h^{−τ}` for `|k| ≤ max_degree`.
pub fn moments(n: usize, max_degree: u32) -> Result<MomentTable> {
    let t = spectral_transform(n, max_degree)?;
    let zvars: Vec<Var> = (1..=n).map(|j| Var::Z(j as u8)).collect();
    let entries = MultiIndex::up_to(n, max_degree)
        .into_iter()
        .map(|k| {
            let c = t.extract(&zvars, k.parts()).scale_rational(&k.factorial());
            (k, c)
        })
        .collect();
    Ok(MomentTable {
        n,
        max_degree,
        tau: None,
        entries,
    })
}

/// `⟨Ω, X̂^kΩ⟩` in the hat-representation, paired through the Gram matrix.
pub fn fock_moment(n: usize, k: &MultiIndex) -> Result<MultiPoly> {
    let ops = hat_operators(n)?;
    let xs: Vec<WeylElement> = (1..=n).map(|j| ops.observable(j)).collect::<Result<_>>()?;
    let mut vec = FockVector::vacuum(n);
    for j in 1..=n {
        for _ in 0..k.get(j) {
            vec = xs[j - 1].apply(&vec);
        }
    }
    let gram = gram_matrix(n, k.degree().max(1))?;
    Ok(gram.pair(&FockVector::vacuum(n), &vec))
}

/// Moments from the transform against `⟨Ω, X̂^kΩ⟩`, plus `E[1] = 1`.
pub fn verify_moments(n: usize, max_degree: u32) -> Result<Report> {
    let table = moments(n, max_degree)?;
    let mut report = Report::new(format!("moments n={n} degree<={max_degree}"));
    report.check(
        "E[1] = 1",
        table
            .get(&MultiIndex::zero(n))
            .is_some_and(MultiPoly::is_one),
    );
    let mut failures = Vec::new();
    for (k, m) in &table.entries {
        if fock_moment(n, k)? != *m {
            failures.push(k.to_string());
        }
    }
    report.check_detail(
        format!("k![z^k] h^-t = <Omega, X^k Omega> for |k| <= {max_degree}"),
        failures.is_empty(),
        failures.join(", "),
    );
    if n == 1 {
        let ok = table
            .entries
            .iter()
            .all(|(k, m)| *m == pochhammer(&MultiPoly::tau(), k.get(1)));
        report.check("n = 1 moments are (t)_k", ok);
    }
    Ok(report)
}

/// Exact verdict on the moment matrix `M[k][m] = E[x^{k+m}]`, `|k|, |m| ≤ degree`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentProbe {
    pub n: usize,
    pub degree: u32,
    pub tau: String,
    pub definiteness: Definiteness,
    pub pivots: Vec<String>,
    /// Floating-point minimum eigenvalue, for display only.
    pub min_eigenvalue: f64,
}

/// Empirical positivity probe of the moment functional at a rational `τ`.
/// A positive verdict is evidence, not a proof, that the transform is that of
/// a positive measure.
pub fn moment_positivity_probe(n: usize, tau: &BigRational, degree: u32) -> Result<MomentProbe> {
    let table = moments(n, 2 * degree)?.evaluate(tau);
    let index = MultiIndex::up_to(n, degree);
    let mut rows = Vec::with_capacity(index.len());
    for k in &index {
        let mut row = Vec::with_capacity(index.len());
        for m in &index {
            let p = table.get(&k.add(m)).expect("moment within degree");
            row.push(
                p.as_constant()
                    .ok_or_else(|| Error::Inconsistent(format!("moment {p} not numeric")))?,
            );
        }
        rows.push(row);
    }
    let m = DenseMatrix::from_rows(rows)?;
    let ldl = ldlt(&m)?;
    Ok(MomentProbe {
        n,
        degree,
        tau: rational_to_string(tau),
        definiteness: ldl.definiteness,
        pivots: ldl.pivots.iter().map(rational_to_string).collect(),
        min_eigenvalue: min_eigenvalue_f64(&m)?,
    })
}

/// `|k⟩` written as a polynomial in the spectral variables `x₁..x_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisPolynomial {
    pub k: MultiIndex,
    pub poly: MultiPoly,
}

/// `p_k(x) = k!·[v^k]` of the generating function, for `|k| ≤ max_degree`.
pub fn basis_polynomials(n: usize, max_degree: u32) -> Result<Vec<BasisPolynomial>> {
    require_dimension(n, 1)?;
    let trunc = Truncation::groups(&[(Group::V, max_degree)]);
    let v: Vec<MultiPoly> = (1..=n).map(|j| MultiPoly::var(Var::V(j as u8))).collect();
    let x: Vec<MultiPoly> = (1..=n).map(|j| MultiPoly::var(Var::X(j as u8))).collect();
    let v2 = v
        .iter()
        .fold(MultiPoly::zero(), |acc, vj| &acc + &(vj * vj));
    let q = &(&MultiPoly::one() + &v[0].scale(&GaussianRational::from_int(2))) + &v2;
    let q_inv = series_power(&q, &Exponent::integer(-1), &trunc)?;
    let x_dot_v = x
        .iter()
        .zip(&v)
        .fold(MultiPoly::zero(), |acc, (a, b)| &acc + &(a * b));
    let cross = (&x_dot_v - &(&x[0] * &v[0])).scale(&GaussianRational::i());
    let numerator = &(&x[0] * &(&v[0] + &v2)) + &cross;
    let exponent = numerator.mul_truncated(&q_inv, &trunc);
    let generating = series_exp(&exponent, &trunc)?.mul_truncated(
        &series_power(&q, &Exponent::neg_half_tau(), &trunc)?,
        &trunc,
    );
    let vvars: Vec<Var> = (1..=n).map(|j| Var::V(j as u8)).collect();
    Ok(MultiIndex::up_to(n, max_degree)
        .into_iter()
        .map(|k| {
            let poly = generating
                .extract(&vvars, k.parts())
                .scale_rational(&k.factorial());
            BasisPolynomial { k, poly }
        })
        .collect())
}

/// `k!·(−1)^k·L_k^{(τ−1)}(x₁)` for `k ≤ kmax`, from
/// `(k+1)L_{k+1} = (2k+1+α−x)L_k − (k+α)L_{k−1}`.
pub fn laguerre_oracle(kmax: u32) -> Vec<MultiPoly> {
    let x = MultiPoly::var(Var::X(1));
    let alpha = &MultiPoly::tau() - &MultiPoly::one();
    let mut lag = vec![MultiPoly::one(), &(&MultiPoly::one() + &alpha) - &x];
    for k in 1..kmax {
        let kk = MultiPoly::from_int(k as i64);
        let a = &(&(&MultiPoly::from_int(2 * k as i64 + 1) + &alpha) - &x) * &lag[k as usize];
        let b = &(&kk + &alpha) * &lag[k as usize - 1];
        let next =
            (&a - &b).scale_rational(&BigRational::new(BigInt::from(1), BigInt::from(k + 1)));
        lag.push(next);
    }
    lag.truncate(kmax as usize + 1);
    lag.into_iter()
        .enumerate()
        .map(|(k, l)| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            l.scale_rational(&(factorial(k as u32) * BigRational::from_integer(sign.into())))
        })
        .collect()
}

/// `p(X̂)Ω` for a polynomial `p` in `x₁..x_n` with coefficients in `τ`.
pub fn polynomial_on_vacuum(n: usize, p: &MultiPoly) -> Result<FockVector> {
    let ops = hat_operators(n)?;
    let xs: Vec<WeylElement> = (1..=n).map(|j| ops.observable(j)).collect::<Result<_>>()?;
    let mut out = FockVector::zero();
    for (mono, c) in p.terms() {
        let mut vec = FockVector::vacuum(n);
        let mut rest = Vec::new();
        for &(var, e) in mono.pairs() {
            match var {
                Var::X(j) => {
                    for _ in 0..e {
                        vec = xs[j as usize - 1].apply(&vec);
                    }
                }
                other => rest.push((other, e)),
            }
        }
        out = out.plus(&vec.scale(&MultiPoly::term(c.clone(), Monomial::from_pairs(rest))));
    }
    Ok(out)
}

/// `p_k(X̂)Ω = |k⟩` for every basis polynomial with `|k| ≤ max_degree`, and
/// `E[p_k] = 0` for `k ≠ 0`.
pub fn verify_basis(n: usize, max_degree: u32) -> Result<Report> {
    let polys = basis_polynomials(n, max_degree)?;
    let table = moments(n, max_degree)?;
    let mut report = Report::new(format!("basis n={n} degree<={max_degree}"));
    report.check("p_0 = 1", polys[0].poly.is_one());
    let mut on_vacuum = Vec::new();
    let mut mean = Vec::new();
    let mut degree = Vec::new();
    for b in &polys {
        if polynomial_on_vacuum(n, &b.poly)? != FockVector::basis(b.k.clone()) {
            on_vacuum.push(b.k.to_string());
        }
        if b.k.degree() > 0 && !table.expectation(&b.poly)?.is_zero() {
            mean.push(b.k.to_string());
        }
        if b.poly.group_degree(Group::X) > b.k.degree() {
            degree.push(b.k.to_string());
        }
    }
    report.check_detail(
        "p_k(X) Omega = |k>",
        on_vacuum.is_empty(),
        on_vacuum.join(", "),
    );
    report.check_detail("E[p_k] = 0 for k != 0", mean.is_empty(), mean.join(", "));
    report.check_detail("deg_x p_k <= |k|", degree.is_empty(), degree.join(", "));
    if n == 1 {
        let oracle = laguerre_oracle(max_degree);
        let ok = polys.iter().zip(&oracle).all(|(b, o)| b.poly == *o);
        report.check(
            format!("p_k = k! (-1)^k L_k^(t-1)(x) for k <= {max_degree}"),
            ok,
        );
    }
    Ok(report)
}

/// `⟨p_k, p_m⟩` three ways at a rational `τ`: (a) the Gram matrix,
/// (b) the moment functional `E[conj(p_k) p_m]`, and, for `n = 1`,
/// (c) the closed form `δ_{km} k!(τ)_k`.
pub fn orthogonality_check(n: usize, tau: &BigRational, kmax: u32) -> Result<Report> {
    let t = GaussianRational::real(tau.clone());
    let gram = gram_matrix(n, kmax)?.evaluate(&t)?;
    let polys = basis_polynomials(n, kmax)?;
    let table = moments(n, 2 * kmax)?.evaluate(tau);
    let at_tau = |p: &MultiPoly| p.evaluate(&[(Var::Tau, t.clone())]);
    let mut report = Report::new(format!(
        "orthogonality n={n} t={} k<={kmax}",
        rational_to_string(tau)
    ));
    let mut bad_b = Vec::new();
    let mut bad_c = Vec::new();
    for (i, pk) in polys.iter().enumerate() {
        for (j, pm) in polys.iter().enumerate() {
            let a = MultiPoly::constant(gram.get(i, j).clone());
            let b = table.expectation(&(&at_tau(&pk.poly).conj() * &at_tau(&pm.poly)))?;
            if a != b {
                bad_b.push(format!("({}, {}): {a} vs {b}", pk.k, pm.k));
            }
            if n == 1 {
                let c = if pk.k == pm.k {
                    let kk = pk.k.get(1);
                    at_tau(&pochhammer(&MultiPoly::tau(), kk).scale_rational(&factorial(kk)))
                } else {
                    MultiPoly::zero()
                };
                if a != c {
                    bad_c.push(format!("({}, {}): {a} vs {c}", pk.k, pm.k));
                }
            }
        }
    }
    report.check_detail(
        "Gram (a) = moment functional (b)",
        bad_b.is_empty(),
        bad_b.join("; "),
    );
    if n == 1 {
        report.check_detail(
            "Gram (a) = closed form (c)",
            bad_c.is_empty(),
            bad_c.join("; "),
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::coherent_state_closed_form;
    use crate::exact::poly::{c, ci, x, z};
    use crate::exact::rat;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_parts((re, 1), (im, 1))
    }

    fn q(p: i64, d: i64) -> GaussianRational {
        GaussianRational::from_ratio(p, d)
    }

    #[test]
    fn exp_zx_examples() {
        let omega: StateVector<GaussianRational> = crate::coherent::vacuum(2).unwrap();
        assert_eq!(exp_zx_vacuum(&[g(0, 0), g(0, 0)]).unwrap(), omega);
        assert_eq!(
            exp_zx_vacuum(&[g(0, 0), g(1, 0)]).unwrap().entries(),
            &[g(0, 2), g(2, 0), g(-1, 0), g(0, 1)]
        );
        let t = z(1);
        let s = exp_zx_vacuum(std::slice::from_ref(&t)).unwrap();
        let t2 = &t * &t;
        assert_eq!(s.entries()[0], (&t - &t2).scale(&g(0, 2)));
        assert_eq!(
            s.entries()[1],
            &(&c(1) - &t.scale(&g(2, 0))) + &t2.scale(&g(2, 0))
        );
        assert_eq!(s.entries()[2], (&c(1) - &t.scale(&g(2, 0))).scale(&g(0, 1)));
    }

    #[test]
    fn z_to_v_examples() {
        let (v, h2) = z_to_v(&[g(0, 0), g(0, 0)]).unwrap();
        assert_eq!((v, h2), (vec![g(0, 0), g(0, 0)], g(1, 0)));
        let (v, h2) = z_to_v(&[q(1, 2)]).unwrap();
        assert_eq!((v, h2), (vec![g(1, 0)], q(1, 4)));
        assert!(matches!(
            z_to_v(&[g(0, 0), g(1, 0)]),
            Err(Error::SingularCoordinates(_))
        ));
    }

    #[test]
    fn v_to_z_examples() {
        let (z, h2) = v_to_z(&[g(0, 0)]).unwrap();
        assert_eq!((z, h2), (vec![g(0, 0)], g(1, 0)));
        let (z, h2) = v_to_z(&[g(1, 0)]).unwrap();
        assert_eq!((z, h2), (vec![q(1, 2)], q(1, 4)));
        assert!(matches!(
            v_to_z(&[g(-1, 0)]),
            Err(Error::SingularCoordinates(_))
        ));
    }

    #[test]
    fn n1_matrix_oracle_fixes_the_sign() {
        // exp(zX₁)Ω = (1−z)²·ψ_{z/(1−z)}
        for (p, d) in [(1, 3), (-2, 5), (3, 7)] {
            let zz = q(p, d);
            let one_minus = &GaussianRational::one() - &zz;
            let v = zz.checked_div(&one_minus).unwrap();
            let rhs = coherent_state_closed_form(&[v])
                .unwrap()
                .scale(&(&one_minus * &one_minus));
            assert_eq!(exp_zx_vacuum(&[zz]).unwrap(), rhs);
        }
    }

    #[test]
    fn symbolic_duality() {
        for n in 1..=3 {
            assert!(coordinate_duality_symbolic(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn transform_coefficients() {
        let t = spectral_transform(1, 6).unwrap();
        assert!(t.constant_term().is_one());
        for k in 0..=6u32 {
            let c = t.extract(&[Var::Z(1)], &[k]);
            let expect = pochhammer(&MultiPoly::tau(), k)
                .scale_rational(&(BigRational::from_integer(1.into()) / factorial(k)));
            assert_eq!(c, expect);
        }
        let t2 = spectral_transform(2, 2).unwrap();
        assert_eq!(
            t2.extract(&[Var::Z(1), Var::Z(2)], &[0, 2]),
            MultiPoly::tau().scale(&q(1, 2))
        );
    }

    #[test]
    fn characteristic_function_is_transform_at_is() {
        let phi = characteristic_function(1, 3).unwrap();
        // φ(s) = (1 − is)^{−τ}: [s] = iτ
        assert_eq!(
            phi.extract(&[Var::Z(1)], &[1]),
            MultiPoly::tau().scale(&g(0, 1))
        );
    }

    #[test]
    fn moment_examples() {
        let m1 = moments(1, 2).unwrap();
        let t = MultiPoly::tau();
        assert!(m1.get(&MultiIndex::new(vec![0])).unwrap().is_one());
        assert_eq!(m1.get(&MultiIndex::new(vec![1])).unwrap(), &t);
        assert_eq!(
            m1.get(&MultiIndex::new(vec![2])).unwrap(),
            &(&t * &(&t + &c(1)))
        );
        let m2 = moments(2, 2).unwrap();
        assert!(m2.get(&MultiIndex::new(vec![0, 1])).unwrap().is_zero());
        assert_eq!(m2.get(&MultiIndex::new(vec![0, 2])).unwrap(), &t);
        let at2 = m1.evaluate(&rat(2, 1));
        let vals: Vec<_> = at2
            .entries
            .iter()
            .map(|(_, c)| c.as_constant().unwrap())
            .collect();
        assert_eq!(vals, vec![g(1, 0), g(2, 0), g(6, 0)]);
    }

    #[test]
    fn moments_match_fock() {
        for (n, d) in [(1, 4), (2, 3)] {
            let report = verify_moments(n, d).unwrap();
            assert!(report.all_passed(), "{report}");
        }
    }

    #[test]
    fn moment_probe_examples() {
        assert_eq!(
            moment_positivity_probe(1, &rat(2, 1), 3)
                .unwrap()
                .definiteness,
            Definiteness::PositiveDefinite
        );
        assert_eq!(
            moment_positivity_probe(1, &rat(0, 1), 1)
                .unwrap()
                .definiteness,
            Definiteness::Singular
        );
        assert_eq!(
            moment_positivity_probe(2, &rat(3, 1), 2)
                .unwrap()
                .definiteness,
            Definiteness::PositiveDefinite
        );
    }

    #[test]
    fn basis_examples() {
        let b = basis_polynomials(1, 1).unwrap();
        assert!(b[0].poly.is_one());
        assert_eq!(b[1].poly, &x(1) - &MultiPoly::tau());
        assert_eq!(b[1].poly.to_string(), "x1 - t");
        let b2 = basis_polynomials(2, 1).unwrap();
        // p_{e₂} = i x₂
        assert_eq!(b2[2].poly, &x(2) * &ci(1));
    }

    #[test]
    fn laguerre_reduction() {
        let polys = basis_polynomials(1, 10).unwrap();
        let oracle = laguerre_oracle(10);
        for (b, o) in polys.iter().zip(&oracle) {
            assert_eq!(&b.poly, o, "k = {}", b.k);
        }
    }

    #[test]
    fn basis_suite() {
        for (n, d) in [(1, 5), (2, 3)] {
            let report = verify_basis(n, d).unwrap();
            assert!(report.all_passed(), "{report}");
        }
    }

    #[test]
    fn orthogonality_examples() {
        let report = orthogonality_check(1, &rat(3, 1), 5).unwrap();
        assert!(report.all_passed(), "{report}");
        let gram = gram_matrix(1, 2).unwrap().evaluate(&g(3, 0)).unwrap();
        assert_eq!(gram.get(2, 2), &g(24, 0));
        assert!(gram.get(1, 2).is_zero());
        let report = orthogonality_check(2, &rat(3, 1), 2).unwrap();
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn coordinates_suite() {
        for n in 1..=3 {
            let report = verify_coordinates(n, 20, 5, 7, n <= 2).unwrap();
            assert!(report.all_passed(), "{report}");
        }
    }
}
