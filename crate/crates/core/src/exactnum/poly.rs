use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;

/// Dense univariate polynomial over [`Rational`], ascending powers, trailing
/// zeros stripped. The empty coefficient list is the zero polynomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    /// The monomial `c x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * Rational::from_integer((i as i64 + 1).into()))
                .collect(),
        )
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    ///
    /// Panics if `d` is zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let lead_inv = Rational::one() / d.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        while rem.len() > dd {
            let k = rem.len() - 1;
            let c = rem[k].clone() * &lead_inv;
            if !c.is_zero() {
                quot[k - dd] = c.clone();
                for (i, dc) in d.coeffs.iter().enumerate() {
                    let t = dc * &c;
                    rem[k - dd + i] -= t;
                }
            }
            rem.pop();
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Scales to integer coefficients with content 1 and positive leading
    /// coefficient. Returns the zero polynomial unchanged.
    pub fn primitive_integer(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * &lcm / c.denom()).collect();
        let mut content = BigInt::zero();
        for v in &ints {
            content = content.gcd(v);
        }
        if ints.last().unwrap().is_negative() {
            content = -content;
        }
        Poly::new(ints.into_iter().map(|v| Rational::from_integer(v / &content)).collect())
    }

    /// Primitive polynomial gcd (primitive-PRS over the integers). The result
    /// is integer-primitive with positive leading coefficient; `gcd(0, b)`
    /// is the primitive part of `b`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.primitive_integer();
        let mut b = other.primitive_integer();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            let r = a.pseudo_rem(&b).primitive_integer();
            if r.is_zero() {
                return b;
            }
            a = b;
            b = r;
        }
    }

    /// Pseudo-remainder of integer polynomials (`lc(d)^k * self mod d`).
    fn pseudo_rem(&self, d: &Poly) -> Poly {
        let dd = d.degree().expect("pseudo_rem by zero");
        let lead = d.leading();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let shift = dr - dd;
            let lr = r.leading();
            // r <- lc(d) * r - lc(r) * x^shift * d
            let mut next = r.scale(&lead);
            let sub = d.scale(&lr);
            for (i, c) in sub.coeffs.iter().enumerate() {
                let idx = i + shift;
                while next.coeffs.len() <= idx {
                    next.coeffs.push(Rational::zero());
                }
                next.coeffs[idx] -= c;
            }
            r = Poly::new(next.coeffs);
            if r.degree().map_or(true, |g| g < dr) {
                continue;
            }
            // degree must drop every round
            unreachable!("pseudo-remainder failed to reduce degree");
        }
        r
    }

    /// Renders with the given variable, descending powers, e.g. `3n^2+n-1`.
    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign_neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if sign_neg {
                    out.push('-');
                }
            } else {
                out.push(if sign_neg { '-' } else { '+' });
            }
            let unit = mag.is_one();
            if !unit || k == 0 {
                if mag.is_integer() {
                    out.push_str(&mag.numer().to_string());
                } else {
                    out.push_str(&format!("{}/{}", mag.numer(), mag.denom()));
                }
            }
            match k {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{k}")),
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("n"))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) + rhs.coeff(i));
        }
        Poly::new(v)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) - rhs.coeff(i));
        }
        Poly::new(v)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{rat, rat_i};

    #[test]
    fn degree_and_normalization() {
        assert_eq!(Poly::from_i64(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(Poly::from_i64(&[0, 0]).is_zero());
        assert_eq!(Poly::zero().degree(), None);
    }

    #[test]
    fn divrem_recombines() {
        let a = Poly::from_i64(&[2, 0, -3, 1, 5]);
        let d = Poly::from_i64(&[1, 1, 2]);
        let (q, r) = a.divrem(&d);
        assert_eq!(&(&q * &d) + &r, a);
        assert!(r.degree() < d.degree());
    }

    #[test]
    fn gcd_finds_common_factor() {
        let f = Poly::from_i64(&[-1, 1]); // x - 1
        let g = Poly::from_i64(&[2, 3]); // 3x + 2
        let h = Poly::from_i64(&[5, 0, 1]); // x^2 + 5
        let a = &f * &g;
        let b = &f * &h;
        assert_eq!(a.gcd(&b), f.primitive_integer());
        // coprime case
        assert_eq!(g.gcd(&h).degree(), Some(0));
    }

    #[test]
    fn display_matches_handwritten_forms() {
        let p = Poly::from_i64(&[-1, 1, 3]);
        assert_eq!(p.display("n"), "3n^2+n-1");
        let q = Poly::from_i64(&[-1, 2, 2]).scale(&rat_i(1));
        assert_eq!(q.display("n"), "2n^2+2n-1");
        assert_eq!(Poly::from_i64(&[0, -1]).display("n"), "-n");
        assert_eq!(Poly::constant(rat(1, 2)).display("n"), "1/2");
        assert_eq!(Poly::zero().display("n"), "0");
    }

    #[test]
    fn eval_horner() {
        let p = Poly::from_i64(&[-1, 1, 3]);
        assert_eq!(p.eval(&rat_i(2)), rat_i(13));
    }
}
