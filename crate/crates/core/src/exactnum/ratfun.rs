use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::linalg::nullspace_vector;
use super::poly::Poly;
use super::rational::Rational;
use super::series::TruncatedSeries;
use crate::{Error, Result};

/// Ratio of polynomials in one symbol, kept in canonical form: numerator and
/// denominator coprime, both with integer coefficients of joint content 1,
/// denominator leading coefficient positive.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFunction {
    numer: Poly,
    denom: Poly,
}

impl RationalFunction {
    pub fn new(numer: Poly, denom: Poly) -> Self {
        assert!(!denom.is_zero(), "rational function with zero denominator");
        Self::canonicalize(numer, denom)
    }

    fn canonicalize(numer: Poly, denom: Poly) -> Self {
        if numer.is_zero() {
            return RationalFunction { numer: Poly::zero(), denom: Poly::constant(Rational::one()) };
        }
        let g = numer.gcd(&denom);
        let (numer, r1) = numer.divrem(&g);
        debug_assert!(r1.is_zero());
        let (denom, r2) = denom.divrem(&g);
        debug_assert!(r2.is_zero());
        // joint integer-primitive scaling: scale both by the factor that makes
        // the denominator integer-primitive with positive leading coefficient,
        // then clear any remaining denominators of the numerator by moving the
        // common factor into both parts.
        let dp = denom.primitive_integer();
        let scale = dp.leading() / denom.leading(); // denom * scale = dp
        let numer = numer.scale(&scale);
        let np = numer.primitive_integer();
        if np.is_zero() {
            return RationalFunction { numer: Poly::zero(), denom: Poly::constant(Rational::one()) };
        }
        // numer = c * np with c rational; fold c = p/q as: numer' = p*np, denom' = q*dp
        let c = numer.leading() / np.leading();
        let p = Rational::from_integer(c.numer().clone());
        let q = Rational::from_integer(c.denom().clone());
        let mut numer = np.scale(&p);
        let mut denom = dp.scale(&q);
        // strip joint integer content
        let jn = numer.primitive_integer();
        let content = numer.leading() / jn.leading();
        numer = jn;
        denom = denom.scale(&(Rational::one() / &content));
        if denom.leading().is_negative() {
            numer = numer.scale(&-Rational::one());
            denom = denom.scale(&-Rational::one());
        }
        RationalFunction { numer, denom }
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction::new(p, Poly::constant(Rational::one()))
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        RationalFunction::from_poly(Poly::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn numer(&self) -> &Poly {
        &self.numer
    }

    pub fn denom(&self) -> &Poly {
        &self.denom
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalFunction::new(self.denom.clone(), self.numer.clone()))
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        RationalFunction::new(&self.numer * p, self.denom.clone())
    }

    /// Derivative by the quotient rule.
    pub fn derivative(&self) -> Self {
        let num = &(&self.numer.derivative() * &self.denom) - &(&self.numer * &self.denom.derivative());
        RationalFunction::new(num, &self.denom * &self.denom)
    }

    /// Exact evaluation; pole-at-point error when the denominator vanishes.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.denom.eval(x);
        if d.is_zero() {
            return Err(Error::PoleAt(x.to_string()));
        }
        Ok(self.numer.eval(x) / d)
    }

    /// Coefficients of `n^0, n^-1, ..., n^-(order-1)` in the expansion at
    /// infinity, computed by series division in `u = 1/n` (exact).
    ///
    /// Requires `deg numer <= deg denom`; a genuine polynomial part is
    /// reported as an error rather than silently truncated.
    pub fn laurent_at_infinity(&self, order: usize) -> Result<TruncatedSeries<Rational>> {
        if self.is_zero() {
            return Ok(TruncatedSeries::new("u", Rational::zero(), vec![Rational::zero(); order]));
        }
        let nd = self.numer.degree().unwrap();
        let dd = self.denom.degree().unwrap();
        if nd > dd {
            return Err(Error::PolynomialPart { num_degree: nd, den_degree: dd });
        }
        // reverse coefficients: p(n) = n^dd * p~(u), u = 1/n
        let rev = |p: &Poly| -> Vec<Rational> {
            let mut v = vec![Rational::zero(); dd + 1];
            for (i, c) in p.coeffs().iter().enumerate() {
                v[dd - i] = c.clone();
            }
            v
        };
        let num = TruncatedSeries::new("u", Rational::zero(), pad(rev(&self.numer), order));
        let den = TruncatedSeries::new("u", Rational::zero(), pad(rev(&self.denom), order));
        Ok(num.div(&den)?.truncate(order))
    }

    /// Reconstructs a rational function with the given degree bounds from
    /// point samples. Needs at least `num_deg + den_deg + 1` samples at
    /// distinct non-pole points.
    pub fn interpolate(
        samples: &[(Rational, Rational)],
        num_deg: usize,
        den_deg: usize,
    ) -> Result<Self> {
        let unknowns = num_deg + den_deg + 2;
        if samples.len() + 1 < unknowns {
            return Err(Error::Underdetermined { unknowns, rows: samples.len() });
        }
        // rows: sum_j a_j x^j - y * sum_j b_j x^j = 0
        let mut m = Vec::with_capacity(samples.len());
        for (x, y) in samples {
            let mut row = Vec::with_capacity(unknowns);
            let mut p = Rational::one();
            for _ in 0..=num_deg {
                row.push(p.clone());
                p *= x;
            }
            let mut p = Rational::one();
            for _ in 0..=den_deg {
                row.push(-(y * &p));
                p *= x;
            }
            m.push(row);
        }
        let v = nullspace_vector(&m).ok_or(Error::Underdetermined { unknowns, rows: samples.len() })?;
        let numer = Poly::new(v[..=num_deg].to_vec());
        let denom = Poly::new(v[num_deg + 1..].to_vec());
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalFunction::new(numer, denom))
    }

    pub fn display(&self, var: &str) -> String {
        if self.denom.degree() == Some(0) && self.denom.leading().is_one() {
            self.numer.display(var)
        } else {
            format!("({})/({})", self.numer.display(var), self.denom.display(var))
        }
    }
}

fn pad(mut v: Vec<Rational>, order: usize) -> Vec<Rational> {
    v.resize(v.len().max(order), Rational::zero());
    v
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("n"))
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            &(&self.numer * &rhs.denom) + &(&rhs.numer * &self.denom),
            &self.denom * &rhs.denom,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            &(&self.numer * &rhs.denom) - &(&rhs.numer * &self.denom),
            &self.denom * &rhs.denom,
        )
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.numer * &rhs.numer, &self.denom * &rhs.denom)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RationalFunction::new(&self.numer * &rhs.denom, &self.denom * &rhs.numer)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { numer: -&self.numer, denom: self.denom.clone() }
    }
}
