use num_traits::{FromPrimitive, One, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::rational::{rational_to_f64, Rational};
use crate::{Error, Result};

/// Coefficient carrier for [`TruncatedSeries`]: exact rationals for golden
/// coefficient work, floats for evaluation.
pub trait Coeff:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + FromPrimitive
{
}

impl Coeff for Rational {}
impl Coeff for f64 {}

/// Power series in one variable around `point`, truncated after `order()`
/// known coefficients (`coeffs[j]` multiplies `(x - point)^j`).
#[derive(Clone, PartialEq, Debug)]
pub struct TruncatedSeries<C> {
    var: String,
    point: C,
    coeffs: Vec<C>,
}

impl<C: Coeff> TruncatedSeries<C> {
    pub fn new(var: &str, point: C, coeffs: Vec<C>) -> Self {
        TruncatedSeries { var: var.to_string(), point, coeffs }
    }

    /// Constant series padded with explicit zero coefficients up to `order`.
    pub fn constant(var: &str, point: C, value: C, order: usize) -> Self {
        let mut coeffs = vec![C::zero(); order];
        if order > 0 {
            coeffs[0] = value;
        }
        TruncatedSeries { var: var.to_string(), point, coeffs }
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn point(&self) -> &C {
        &self.point
    }

    /// Number of retained coefficients.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    fn check_compatible(&self, rhs: &Self) {
        assert!(
            self.point == rhs.point,
            "series arithmetic requires equal expansion points"
        );
    }

    pub fn truncate(mut self, order: usize) -> Self {
        self.coeffs.truncate(order);
        self
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check_compatible(rhs);
        let n = self.order().min(rhs.order());
        let coeffs = (0..n).map(|i| self.coeffs[i].clone() + rhs.coeffs[i].clone()).collect();
        TruncatedSeries { var: self.var.clone(), point: self.point.clone(), coeffs }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.check_compatible(rhs);
        let n = self.order().min(rhs.order());
        let coeffs = (0..n).map(|i| self.coeffs[i].clone() - rhs.coeffs[i].clone()).collect();
        TruncatedSeries { var: self.var.clone(), point: self.point.clone(), coeffs }
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| -c.clone()).collect();
        TruncatedSeries { var: self.var.clone(), point: self.point.clone(), coeffs }
    }

    pub fn scale(&self, f: &C) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c.clone() * f.clone()).collect();
        TruncatedSeries { var: self.var.clone(), point: self.point.clone(), coeffs }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.check_compatible(rhs);
        let n = self.order().min(rhs.order());
        let mut coeffs = vec![C::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n - i).enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        TruncatedSeries { var: self.var.clone(), point: self.point.clone(), coeffs }
    }

    /// Multiplicative inverse; errors when the constant term vanishes.
    pub fn reciprocal(&self) -> Result<Self> {
        if self.coeffs.is_empty() || self.coeffs[0].is_zero() {
            return Err(Error::ReciprocalZeroConstant);
        }
        let n = self.order();
        let mut out = vec![C::zero(); n];
        let c0_inv = C::one() / self.coeffs[0].clone();
        out[0] = c0_inv.clone();
        for k in 1..n {
            let mut s = C::zero();
            for i in 1..=k {
                s = s + self.coeffs[i].clone() * out[k - i].clone();
            }
            out[k] = -(s * c0_inv.clone());
        }
        Ok(TruncatedSeries { var: self.var.clone(), point: self.point.clone(), coeffs: out })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.reciprocal()?))
    }

    /// Termwise derivative; one coefficient of knowledge is lost.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| c.clone() * C::from_u64(j as u64).expect("small int"))
            .collect();
        TruncatedSeries { var: self.var.clone(), point: self.point.clone(), coeffs }
    }

    /// Termwise antiderivative with zero constant term:
    /// `c_j x^j -> c_j x^(j+1) / (j+1)`.
    pub fn integrate_termwise(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.order() + 1);
        coeffs.push(C::zero());
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.clone() / C::from_u64(j as u64 + 1).expect("small int"));
        }
        TruncatedSeries { var: self.var.clone(), point: self.point.clone(), coeffs }
    }

    /// Divides by `(x - point)^k`; the first `k` coefficients must be zero.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        for (i, c) in self.coeffs.iter().take(k).enumerate() {
            if !c.is_zero() {
                return Err(Error::ValuationTooLow { expected: k, index: i });
            }
        }
        let coeffs = self.coeffs.iter().skip(k).cloned().collect();
        Ok(TruncatedSeries { var: self.var.clone(), point: self.point.clone(), coeffs })
    }

    /// Multiplies by `(x - point)^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        TruncatedSeries { var: self.var.clone(), point: self.point.clone(), coeffs }
    }

    /// Re-expands around `new_point`, treating the retained coefficients as a
    /// polynomial (exact only for polynomial content; a genuinely truncated
    /// series picks up the usual truncation error).
    pub fn shift_point(&self, new_point: C) -> Self {
        let delta = new_point.clone() - self.point.clone();
        let n = self.order();
        let mut out = vec![C::zero(); n];
        // out[k] = sum_{j>=k} c_j C(j,k) delta^(j-k)
        for k in 0..n {
            let mut acc = C::zero();
            let mut binom = C::one(); // C(k,k)
            let mut dpow = C::one();
            for j in k..n {
                if j > k {
                    // C(j,k) = C(j-1,k) * j/(j-k)
                    binom = binom * C::from_u64(j as u64).unwrap()
                        / C::from_u64((j - k) as u64).unwrap();
                    dpow = dpow * delta.clone();
                }
                acc = acc + self.coeffs[j].clone() * binom.clone() * dpow.clone();
            }
            out[k] = acc;
        }
        TruncatedSeries { var: self.var.clone(), point: new_point, coeffs: out }
    }

    /// Evaluates the truncated sum at `x` (absolute coordinate).
    pub fn eval(&self, x: C) -> C {
        let w = x - self.point.clone();
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * w.clone() + c.clone();
        }
        acc
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> TruncatedSeries<D> {
        TruncatedSeries {
            var: self.var.clone(),
            point: f(&self.point),
            coeffs: self.coeffs.iter().map(&f).collect(),
        }
    }
}

impl TruncatedSeries<Rational> {
    pub fn to_f64_series(&self) -> TruncatedSeries<f64> {
        self.map(rational_to_f64)
    }
}
