//! The (1+1)-EA improvement kernel on OneMax.
//!
//! From a string with `m` zeros out of `n` bits, one mutation step improves
//! the fitness by exactly `l` with probability
//!
//! ```text
//! lambda(n, m, l) = (1-1/n)^n (n-1)^{-l}
//!                   * sum_j C(n-m, j) C(m, j+l) (n-1)^{-2j}
//! ```
//!
//! (`j` flips among the ones, `j+l` among the zeros). The normalized kernel
//! divides out `e_n = (1-1/(n+1))^(n+1)` after an index shift, which removes
//! all `(1-1/n)` powers:
//!
//! ```text
//! lambda_star(n, m, l) = lambda(n+1, m, l) / e_n
//!                      = sum_j C(n+1-m, j) C(m, j+l) n^{-l-2j}
//! ```
//!
//! Both carriers are provided: exact rationals, and floats computed with
//! log-domain binomials so rows stay finite well past n = 300.

use std::io::Write;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactnum::{rat_i, rational_to_f64, Rational};
use crate::{Error, Result};

/// `e_n = (1 - 1/(n+1))^(n+1) = (n/(n+1))^(n+1)`, exact.
pub fn e_n(n: u64) -> Rational {
    let base = Rational::new(BigInt::from(n), BigInt::from(n + 1));
    pow_rat(&base, n as usize + 1)
}

fn pow_rat(base: &Rational, mut k: usize) -> Rational {
    let mut acc = Rational::one();
    let mut sq = base.clone();
    while k > 0 {
        if k & 1 == 1 {
            acc *= &sq;
        }
        sq = &sq * &sq;
        k >>= 1;
    }
    acc
}

fn binom_big(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn check_range(n: u64, m: u64, l: u64) -> Result<()> {
    if n == 0 || m == 0 || m > n || l == 0 {
        return Err(Error::OutOfRange(format!("need 1 <= l, 1 <= m <= n; got n={n}, m={m}, l={l}")));
    }
    Ok(())
}

/// Exact improvement probability `lambda(n, m, l)`; zero for `l > m`.
pub fn lambda(n: u64, m: u64, l: u64) -> Result<Rational> {
    check_range(n, m, l)?;
    if l > m {
        return Ok(Rational::zero());
    }
    if n == 1 {
        // single bit, m = l = 1: the flip always happens
        return Ok(Rational::one());
    }
    let nm1 = BigInt::from(n - 1);
    let nm1_sq = &nm1 * &nm1;
    let mut sum = Rational::zero();
    let jmax = (n - m).min(m - l);
    let mut denom_pow = Rational::one(); // (n-1)^{-2j}
    for j in 0..=jmax {
        if j > 0 {
            denom_pow /= Rational::from_integer(nm1_sq.clone());
        }
        let term = Rational::from_integer(binom_big(n - m, j) * binom_big(m, j + l));
        sum += term * &denom_pow;
    }
    let scale = pow_rat(&Rational::new(BigInt::from(n - 1), BigInt::from(n)), n as usize)
        / Rational::from_integer(nm1.pow(l as u32));
    Ok(scale * sum)
}

/// Exact normalized kernel `lambda_star(n, m, l) = lambda(n+1, m, l) / e_n`.
/// Defined for `1 <= m <= n+1` (it is the shifted kernel at n+1 bits).
pub fn lambda_star(n: u64, m: u64, l: u64) -> Result<Rational> {
    if n == 0 || m == 0 || m > n + 1 || l == 0 {
        return Err(Error::OutOfRange(format!(
            "need 1 <= l, 1 <= m <= n+1; got n={n}, m={m}, l={l}"
        )));
    }
    if l > m {
        return Ok(Rational::zero());
    }
    let nn = BigInt::from(n);
    let nn_sq = &nn * &nn;
    let mut sum = Rational::zero();
    let jmax = (n + 1 - m).min(m - l);
    let mut denom_pow = Rational::one() / Rational::from_integer(nn.pow(l as u32));
    for j in 0..=jmax {
        if j > 0 {
            denom_pow /= Rational::from_integer(nn_sq.clone());
        }
        let term = Rational::from_integer(binom_big(n + 1 - m, j) * binom_big(m, j + l));
        sum += term * &denom_pow;
    }
    Ok(sum)
}

/// Exact row sum `Lambda(n, m) = sum_l lambda(n, m, l)`.
pub fn row_sum(n: u64, m: u64) -> Result<Rational> {
    let mut s = Rational::zero();
    for l in 1..=m {
        s += lambda(n, m, l)?;
    }
    Ok(s)
}

/// Exact weighted normalized row sum `sum_l l^r lambda_star(n, m, l)`;
/// `r = 0` is the plain normalized row sum.
pub fn weighted_row_sum(n: u64, m: u64, r: u32) -> Result<Rational> {
    if r > 4 {
        return Err(Error::UnsupportedOrder(r));
    }
    let mut s = Rational::zero();
    for l in 1..=m {
        let w = rat_i((l as i64).pow(r));
        s += w * lambda_star(n, m, l)?;
    }
    Ok(s)
}

/// Cached `ln k!` table.
#[derive(Debug, Clone)]
pub struct LnFactorials {
    table: Vec<f64>,
}

impl LnFactorials {
    pub fn up_to(n: usize) -> Self {
        let mut table = Vec::with_capacity(n + 1);
        table.push(0.0);
        let mut acc = 0.0f64;
        for k in 1..=n {
            acc += (k as f64).ln();
            table.push(acc);
        }
        LnFactorials { table }
    }

    pub fn ln_factorial(&self, k: u64) -> f64 {
        self.table[k as usize]
    }

    pub fn ln_binom(&self, n: u64, k: u64) -> f64 {
        if k > n {
            return f64::NEG_INFINITY;
        }
        self.ln_factorial(n) - self.ln_factorial(k) - self.ln_factorial(n - k)
    }
}

/// Float improvement probability via log-domain binomials (all terms
/// positive, so the sum is stable).
pub fn lambda_f64(n: u64, m: u64, l: u64, lf: &LnFactorials) -> f64 {
    if l > m || m > n || l == 0 {
        return 0.0;
    }
    if n == 1 {
        return 1.0;
    }
    let nf = n as f64;
    let ln_one_minus = (1.0 - 1.0 / nf).ln();
    let mut sum = 0.0;
    for j in 0..=(n - m).min(m - l) {
        let ln_term = lf.ln_binom(n - m, j)
            + lf.ln_binom(m, j + l)
            - ((j + l) as f64 + j as f64) * nf.ln()
            + ((n - 2 * j - l) as f64) * ln_one_minus;
        sum += ln_term.exp();
    }
    sum
}

/// Float normalized kernel.
pub fn lambda_star_f64(n: u64, m: u64, l: u64, lf: &LnFactorials) -> f64 {
    if l > m || m > n || l == 0 {
        return 0.0;
    }
    let nf = n as f64;
    let mut sum = 0.0;
    for j in 0..=(n + 1 - m).min(m - l) {
        let ln_term =
            lf.ln_binom(n + 1 - m, j) + lf.ln_binom(m, j + l) - (l as f64 + 2.0 * j as f64) * nf.ln();
        sum += ln_term.exp();
    }
    sum
}

/// Float weighted normalized row sum.
pub fn weighted_row_sum_f64(n: u64, m: u64, r: u32, lf: &LnFactorials) -> Result<f64> {
    if r > 4 {
        return Err(Error::UnsupportedOrder(r));
    }
    let mut s = 0.0;
    for l in 1..=m {
        s += (l as f64).powi(r as i32) * lambda_star_f64(n, m, l, lf);
    }
    Ok(s)
}

/// Numeric carrier of a materialized kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Carrier {
    Exact,
    Float,
}

enum Rows {
    Exact(Vec<Vec<Rational>>),
    Float(Vec<Vec<f64>>),
}

/// Materialized kernel rows for one `n`: `row(m)[l-1] = lambda(n, m, l)` for
/// `1 <= l <= m <= m_max`, plus the row sums. Immutable once built, safe to
/// share across threads.
pub struct TransitionKernel {
    n: u64,
    rows: Rows,
    row_sums_f64: Vec<f64>,
}

impl TransitionKernel {
    pub fn build(n: u64, m_max: u64, carrier: Carrier) -> Result<Self> {
        if m_max > n || n == 0 {
            return Err(Error::OutOfRange(format!("m_max={m_max} must be within 1..=n={n}")));
        }
        let rows = match carrier {
            Carrier::Exact => {
                let mut rows = Vec::with_capacity(m_max as usize);
                for m in 1..=m_max {
                    rows.push((1..=m).map(|l| lambda(n, m, l)).collect::<Result<Vec<_>>>()?);
                }
                Rows::Exact(rows)
            }
            Carrier::Float => {
                let lf = LnFactorials::up_to(n as usize + 1);
                let mut rows = Vec::with_capacity(m_max as usize);
                for m in 1..=m_max {
                    rows.push((1..=m).map(|l| lambda_f64(n, m, l, &lf)).collect());
                }
                Rows::Float(rows)
            }
        };
        let row_sums_f64 = match &rows {
            Rows::Exact(rs) => rs
                .iter()
                .map(|row| {
                    let mut s = Rational::zero();
                    for v in row {
                        s += v;
                    }
                    rational_to_f64(&s)
                })
                .collect(),
            Rows::Float(rs) => rs.iter().map(|row| row.iter().sum()).collect(),
        };
        Ok(TransitionKernel { n, rows, row_sums_f64 })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn m_max(&self) -> u64 {
        match &self.rows {
            Rows::Exact(r) => r.len() as u64,
            Rows::Float(r) => r.len() as u64,
        }
    }

    pub fn carrier(&self) -> Carrier {
        match self.rows {
            Rows::Exact(_) => Carrier::Exact,
            Rows::Float(_) => Carrier::Float,
        }
    }

    /// `lambda(n, m, l)` as f64 regardless of carrier.
    pub fn prob_f64(&self, m: u64, l: u64) -> f64 {
        if l == 0 || l > m {
            return 0.0;
        }
        match &self.rows {
            Rows::Exact(r) => rational_to_f64(&r[m as usize - 1][l as usize - 1]),
            Rows::Float(r) => r[m as usize - 1][l as usize - 1],
        }
    }

    /// Exact entry; only available on the exact carrier.
    pub fn prob_exact(&self, m: u64, l: u64) -> Option<&Rational> {
        match &self.rows {
            Rows::Exact(r) => r.get(m as usize - 1).and_then(|row| row.get(l as usize - 1)),
            Rows::Float(_) => None,
        }
    }

    /// `Lambda(n, m)` as f64.
    pub fn row_sum_f64(&self, m: u64) -> f64 {
        self.row_sums_f64[m as usize - 1]
    }

    /// Writes the kernel as CSV: `(n, m, ell, lambda_numer, lambda_denom)`
    /// in exact mode, `(n, m, ell, lambda)` in float mode.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        match &self.rows {
            Rows::Exact(rows) => {
                writeln!(out, "n,m,ell,lambda_numer,lambda_denom")?;
                for (mi, row) in rows.iter().enumerate() {
                    for (li, v) in row.iter().enumerate() {
                        writeln!(out, "{},{},{},{},{}", self.n, mi + 1, li + 1, v.numer(), v.denom())?;
                    }
                }
            }
            Rows::Float(rows) => {
                writeln!(out, "n,m,ell,lambda")?;
                for (mi, row) in rows.iter().enumerate() {
                    for (li, v) in row.iter().enumerate() {
                        writeln!(out, "{},{},{},{:.17e}", self.n, mi + 1, li + 1, v)?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn single_flip_probability() {
        // lambda(n,1,1) = (1/n)(1-1/n)^(n-1); n = 4 gives 27/256
        assert_eq!(lambda(4, 1, 1).unwrap(), rat(27, 256));
    }

    #[test]
    fn normalized_full_jump_is_n_to_minus_m() {
        // lambda_star(n, m, m) = n^-m
        assert_eq!(lambda_star(5, 3, 3).unwrap(), rat(1, 125));
        assert_eq!(lambda_star(3, 1, 1).unwrap(), rat(1, 3));
    }

    #[test]
    fn rows_are_subdistributions() {
        for n in [2u64, 3, 6] {
            for m in 1..=n {
                let s = row_sum(n, m).unwrap();
                assert!(s <= Rational::one(), "Lambda({n},{m}) = {s} > 1");
                assert!(s > Rational::zero());
            }
        }
    }

    #[test]
    fn normalization_identity() {
        // lambda_star(n,m,l) * e_n = lambda(n+1,m,l) at (4,2,1)
        let lhs = lambda_star(4, 2, 1).unwrap() * e_n(4);
        assert_eq!(lhs, lambda(5, 2, 1).unwrap());
    }

    #[test]
    fn row_sum_lower_bound() {
        // normalized row sum >= m/n; un-normalized >= (m/n)(1-1/n)^(n-1)
        let s = weighted_row_sum(10, 7, 0).unwrap();
        assert!(s >= rat(7, 10));
        let n = 10u64;
        for m in 1..=n {
            let lhs = row_sum(n, m).unwrap();
            let bound = rat(m as i64, n as i64)
                * super::pow_rat(&rat(9, 10), 9);
            assert!(lhs >= bound, "m={m}");
        }
    }

    #[test]
    fn single_term_weighted_sum() {
        assert_eq!(weighted_row_sum(3, 1, 0).unwrap(), rat(1, 3));
        assert!(weighted_row_sum(3, 1, 5).is_err());
    }

    #[test]
    fn zero_above_diagonal_and_nonnegative() {
        for n in [3u64, 7] {
            for m in 1..=n {
                for l in 1..=m {
                    assert!(lambda(n, m, l).unwrap() >= Rational::zero());
                }
            }
        }
        assert!(lambda(5, 7, 1).is_err()); // m > n is out of range
    }

    #[test]
    fn float_matches_exact() {
        let lf = LnFactorials::up_to(40);
        for n in [5u64, 17, 30] {
            for m in [1u64, 2, n / 2, n] {
                for l in 1..=m.min(4) {
                    let ex = rational_to_f64(&lambda(n, m, l).unwrap());
                    let fl = lambda_f64(n, m, l, &lf);
                    assert!(
                        (ex - fl).abs() <= 1e-13 * ex.max(1e-300),
                        "n={n} m={m} l={l}: {ex} vs {fl}"
                    );
                    let exs = rational_to_f64(&lambda_star(n, m, l).unwrap());
                    let fls = lambda_star_f64(n, m, l, &lf);
                    assert!((exs - fls).abs() <= 1e-13 * exs.max(1e-300));
                }
            }
        }
    }

    #[test]
    fn float_carrier_survives_large_n() {
        let lf = LnFactorials::up_to(1002);
        let v = lambda_f64(1000, 500, 2, &lf);
        assert!(v.is_finite() && v > 0.0);
    }

    #[test]
    fn kernel_table_and_csv() {
        let k = TransitionKernel::build(6, 6, Carrier::Exact).unwrap();
        assert_eq!(k.prob_exact(1, 1).unwrap(), &lambda(6, 1, 1).unwrap());
        assert!(k.row_sum_f64(6) <= 1.0);
        let mut buf = Vec::new();
        k.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("n,m,ell,lambda_numer,lambda_denom"));
        assert_eq!(text.lines().count(), 1 + 21); // header + sum_{m<=6} m rows

        let kf = TransitionKernel::build(6, 3, Carrier::Float).unwrap();
        let mut buf = Vec::new();
        kf.write_csv(&mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("n,m,ell,lambda\n"));
    }
}
