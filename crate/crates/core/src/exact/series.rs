//! Truncated binomial and exponential series over [`MultiPoly`].

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gaussian::{int, parse_rational, GaussianRational};
use super::poly::{MultiPoly, Truncation};
use crate::error::{Error, Result};

/// An exponent of the form `a·τ + b` with rational `a`, `b`.
///
/// Rational exponents have `a = 0`; the vacuum-weight power used by the
/// Leibniz function and the spectral transform is `−τ/2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Exponent {
    pub tau_coeff: BigRational,
    pub constant: BigRational,
}

impl Exponent {
    pub fn rational(r: BigRational) -> Self {
        Exponent {
            tau_coeff: BigRational::zero(),
            constant: r,
        }
    }

    pub fn integer(k: i64) -> Self {
        Self::rational(int(k))
    }

    pub fn affine(tau_coeff: BigRational, constant: BigRational) -> Self {
        Exponent {
            tau_coeff,
            constant,
        }
    }

    /// `−τ/2`.
    pub fn neg_half_tau() -> Self {
        Self::affine(BigRational::new((-1).into(), 2.into()), BigRational::zero())
    }

    pub fn is_symbolic(&self) -> bool {
        !self.tau_coeff.is_zero()
    }

    pub fn as_poly(&self) -> MultiPoly {
        MultiPoly::tau().scale_rational(&self.tau_coeff)
            + MultiPoly::constant(GaussianRational::real(self.constant.clone()))
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        Exponent::affine(
            &self.tau_coeff + &other.tau_coeff,
            &self.constant + &other.constant,
        )
    }

    pub fn neg(&self) -> Exponent {
        Exponent::affine(-self.tau_coeff.clone(), -self.constant.clone())
    }
}

impl FromStr for Exponent {
    type Err = Error;

    /// Accepts `p/q`, `tau`, `-tau/2`, `p/q*tau`, and sums such as `-tau/2+1`.
    fn from_str(s: &str) -> Result<Self> {
        let src = s.replace(' ', "");
        if src.is_empty() {
            return Err(Error::InvalidExponent(s.to_string()));
        }
        let mut out = Exponent::rational(BigRational::zero());
        let mut pieces = Vec::new();
        let mut cur = String::new();
        for (i, ch) in src.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 {
                pieces.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        pieces.push(cur);
        for piece in pieces {
            let (sign, body) = match piece.strip_prefix('-') {
                Some(b) => (-BigRational::one(), b.to_string()),
                None => (
                    BigRational::one(),
                    piece.trim_start_matches('+').to_string(),
                ),
            };
            let bad = || Error::InvalidExponent(s.to_string());
            if body.contains("tau") {
                let coeff = if body == "tau" {
                    BigRational::one()
                } else if let Some(rest) = body.strip_prefix("tau/") {
                    BigRational::one() / parse_rational(rest).map_err(|_| bad())?
                } else if let Some(lead) = body.strip_suffix("*tau") {
                    parse_rational(lead).map_err(|_| bad())?
                } else {
                    return Err(bad());
                };
                out.tau_coeff += sign * coeff;
            } else {
                out.constant += sign * parse_rational(&body).map_err(|_| bad())?;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_poly())
    }
}

/// Rising factorial `(a)_m = a(a+1)…(a+m−1)` of a polynomial argument.
pub fn pochhammer(a: &MultiPoly, m: u32) -> MultiPoly {
    (0..m).fold(MultiPoly::one(), |acc, i| {
        &acc * &(a + &MultiPoly::from_int(i as i64))
    })
}

pub fn factorial(m: u32) -> BigRational {
    (1..=m as i64).fold(BigRational::one(), |acc, k| acc * int(k))
}

/// `P^e` as the binomial series `Σ_m (−e)_m (1−P)^m / m!`, truncated.
///
/// `P` must have constant term 1 and every other term must be cut off by
/// `trunc`, so that the sum is finite.
pub fn series_power(p: &MultiPoly, exponent: &Exponent, trunc: &Truncation) -> Result<MultiPoly> {
    let c0 = p.constant_term();
    if !c0.is_one() {
        return Err(Error::ConstantTermNotOne(c0.to_string()));
    }
    let q = &MultiPoly::one() - p;
    check_bounded(&q, trunc)?;
    let neg_e = exponent.neg().as_poly();
    let mut sum = MultiPoly::one().truncate(trunc);
    let mut q_pow = MultiPoly::one();
    let mut poch = MultiPoly::one();
    let mut m = 0u32;
    loop {
        q_pow = q_pow.mul_truncated(&q, trunc);
        if q_pow.is_zero() {
            break;
        }
        poch = &poch * &(&neg_e + &MultiPoly::from_int(m as i64));
        m += 1;
        let coeff = poch.scale_rational(&(BigRational::one() / factorial(m)));
        sum = sum + coeff.mul_truncated(&q_pow, trunc);
    }
    Ok(sum)
}

/// `exp(E) = Σ_m E^m / m!`, truncated. `E` must have no constant term.
pub fn series_exp(e: &MultiPoly, trunc: &Truncation) -> Result<MultiPoly> {
    let c0 = e.constant_term();
    if !c0.is_zero() {
        return Err(Error::ConstantTermNotOne(format!(
            "exp argument has constant term {c0}"
        )));
    }
    check_bounded(e, trunc)?;
    let mut sum = MultiPoly::one().truncate(trunc);
    let mut term = MultiPoly::one();
    let mut m = 0i64;
    loop {
        m += 1;
        term = term
            .mul_truncated(e, trunc)
            .scale_rational(&BigRational::new(1.into(), m.into()));
        if term.is_zero() {
            break;
        }
        sum = sum + term.clone();
    }
    Ok(sum)
}

fn check_bounded(q: &MultiPoly, trunc: &Truncation) -> Result<()> {
    match q.terms().find(|(m, _)| !trunc.bounds(m)) {
        Some((m, _)) => Err(Error::UnboundedSeries(format!("{m:?}"))),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::{c, v, w, Group, Monomial, Var};

    fn wv(k: u32) -> Monomial {
        Monomial::from_pairs([(Var::V(1), k), (Var::W(1), k)])
    }

    #[test]
    fn unit_base_gives_one() {
        let s = series_power(
            &MultiPoly::one(),
            &Exponent::neg_half_tau(),
            &Truncation::total(6),
        )
        .unwrap();
        assert_eq!(s, MultiPoly::one());
    }

    #[test]
    fn rejects_bad_constant_term() {
        let p = c(2) + v(1);
        assert!(matches!(
            series_power(&p, &Exponent::integer(2), &Truncation::total(3)),
            Err(Error::ConstantTermNotOne(_))
        ));
        let q = c(1) + MultiPoly::tau();
        assert!(matches!(
            series_power(&q, &Exponent::integer(2), &Truncation::total(3)),
            Err(Error::UnboundedSeries(_))
        ));
    }

    #[test]
    fn neg_tau_power_has_pochhammer_coefficients() {
        // Oracle: (τ)_{k+1} = (τ)_k (τ + k), divided by k!.
        let t = Truncation::groups(&[(Group::V, 8), (Group::W, 8)]);
        let base = &c(1) - &(&w(1) * &v(1));
        let s = series_power(&base, &Exponent::affine(int(-1), int(0)), &t).unwrap();
        let mut poch = MultiPoly::one();
        for k in 0..=8u32 {
            let expect = poch.scale_rational(&(BigRational::one() / factorial(k)));
            assert_eq!(
                s.extract(&[Var::V(1), Var::W(1)], &[k, k]),
                expect,
                "k = {k}"
            );
            poch = &poch * &(MultiPoly::tau() + c(k as i64));
        }
        assert!(s.coeff(&wv(9)).is_zero());
    }

    #[test]
    fn n1_leibniz_base_is_a_perfect_square() {
        let t = Truncation::groups(&[(Group::V, 6), (Group::W, 6)]);
        let wv1 = &w(1) * &v(1);
        let square = &(&c(1) - &(&c(2) * &wv1)) + &(&wv1 * &wv1);
        let lhs = series_power(&square, &Exponent::neg_half_tau(), &t).unwrap();
        let rhs = series_power(&(&c(1) - &wv1), &Exponent::affine(int(-1), int(0)), &t).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn exp_of_linear_term() {
        let t = Truncation::total(5);
        let e = series_exp(&v(1), &t).unwrap();
        for k in 0..=5u32 {
            let m = Monomial::from_pairs([(Var::V(1), k)]);
            assert_eq!(
                e.coeff(&m),
                GaussianRational::real(BigRational::one() / factorial(k))
            );
        }
    }

    #[test]
    fn exponent_parsing() {
        assert_eq!(
            "-tau/2".parse::<Exponent>().unwrap(),
            Exponent::neg_half_tau()
        );
        assert_eq!(
            "3/2".parse::<Exponent>().unwrap(),
            Exponent::rational(BigRational::new(3.into(), 2.into()))
        );
        assert_eq!(
            "-tau/2+1".parse::<Exponent>().unwrap(),
            Exponent::affine(BigRational::new((-1).into(), 2.into()), int(1))
        );
        assert_eq!(
            "2*tau".parse::<Exponent>().unwrap(),
            Exponent::affine(int(2), int(0))
        );
        assert!(matches!(
            "sqrt(2)".parse::<Exponent>(),
            Err(Error::InvalidExponent(_))
        ));
        assert!(matches!(
            "0.5".parse::<Exponent>(),
            Err(Error::InvalidExponent(_))
        ));
    }
}
