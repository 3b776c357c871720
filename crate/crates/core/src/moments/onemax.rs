use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactnum::{Poly, Rational, RationalFunction, TruncatedSeries};
use crate::transition::{e_n, lambda, lambda_star, row_sum};
use crate::{Error, Result};

/// Exact `mu*_{n,m}` for m = 0..=m_max, solved upward in m
/// (defined through m = n+1, the full deficit range of the shifted kernel).
pub fn mu_star_table(n: u64, m_max: u64) -> Result<Vec<Rational>> {
    if m_max > n + 1 {
        return Err(Error::OutOfRange(format!("m_max={m_max} > n+1={}", n + 1)));
    }
    let inv_n = Rational::new(BigInt::one(), BigInt::from(n));
    let mut mu = Vec::with_capacity(m_max as usize + 1);
    mu.push(Rational::zero());
    for m in 1..=m_max {
        let mut acc = inv_n.clone();
        let mut lam_sum = Rational::zero();
        for l in 1..=m {
            let lam = lambda_star(n, m, l)?;
            acc += &lam * &mu[(m - l) as usize];
            lam_sum += lam;
        }
        mu.push(acc / lam_sum);
    }
    Ok(mu)
}

/// Exact `(mu*, V*)` tables for m = 0..=m_max.
pub fn v_star_table(n: u64, m_max: u64) -> Result<(Vec<Rational>, Vec<Rational>)> {
    if m_max > n + 1 {
        return Err(Error::OutOfRange(format!("m_max={m_max} > n+1={}", n + 1)));
    }
    let mu = mu_star_table(n, m_max)?;
    let mut vs: Vec<Rational> = Vec::with_capacity(m_max as usize + 1);
    vs.push(Rational::zero());
    for m in 1..=m_max {
        let mut acc = Rational::zero();
        let mut lam_sum = Rational::zero();
        for l in 1..=m {
            let lam = lambda_star(n, m, l)?;
            let d = &mu[m as usize] - &mu[(m - l) as usize];
            acc += &lam * (&d * &d + &vs[(m - l) as usize]);
            lam_sum += lam;
        }
        vs.push(acc / lam_sum);
    }
    Ok((mu, vs))
}

/// Normalization bookkeeping, centralized:
/// `mu_{n,m} = (n-1) mu*_{n-1,m} / e_{n-1}` (defined for n >= 2).
pub fn mu_from_mu_star(n: u64, mu_star_prev: &Rational) -> Rational {
    assert!(n >= 2);
    mu_star_prev * Rational::from_integer((n - 1).into()) / e_n(n - 1)
}

/// `sigma^2_{n,m} = (n-1)^2 V*_{n-1,m} / e_{n-1}^2 - mu_{n,m}` (n >= 2).
pub fn sigma2_from_v_star(n: u64, v_star_prev: &Rational, mu: &Rational) -> Rational {
    assert!(n >= 2);
    let scale = Rational::from_integer((n - 1).into()) / e_n(n - 1);
    v_star_prev * (&scale * &scale) - mu
}

/// Exact expected optimization time `E(X_{n,m})` from a fixed deficit m.
pub fn mean_onemax(n: u64, m: u64) -> Result<Rational> {
    if m > n || m == 0 && n == 0 {
        return Err(Error::OutOfRange(format!("need m <= n, got n={n} m={m}")));
    }
    if m == 0 {
        return Ok(Rational::zero());
    }
    if n == 1 {
        // the single zero bit flips with probability one
        return Ok(Rational::one());
    }
    let mu = mu_star_table(n - 1, m)?;
    Ok(mu_from_mu_star(n, &mu[m as usize]))
}

/// Exact variance `V(X_{n,m})` from a fixed deficit m.
pub fn variance_onemax(n: u64, m: u64) -> Result<Rational> {
    if m > n {
        return Err(Error::OutOfRange(format!("need m <= n, got n={n} m={m}")));
    }
    if m == 0 || n == 1 {
        return Ok(Rational::zero());
    }
    let (mu, vs) = v_star_table(n - 1, m)?;
    let mean = mu_from_mu_star(n, &mu[m as usize]);
    Ok(sigma2_from_v_star(n, &vs[m as usize], &mean))
}

/// Mean via the un-normalized recurrence
/// `mu_{n,m} = (1 + sum_l lambda mu_{n,m-l}) / Lambda_{n,m}` -- an
/// independent route used to pin the normalization bookkeeping.
pub fn mean_onemax_direct(n: u64, m_max: u64) -> Result<Vec<Rational>> {
    let mut mu = vec![Rational::zero()];
    for m in 1..=m_max {
        let mut acc = Rational::one();
        for l in 1..=m {
            acc += lambda(n, m, l)? * &mu[(m - l) as usize];
        }
        mu.push(acc / row_sum(n, m)?);
    }
    Ok(mu)
}

/// Variance via the un-normalized recurrence
/// `sum_l lambda (s2_m - s2_{m-l}) = -1 + sum_l lambda (mu_m - mu_{m-l})^2`.
pub fn variance_onemax_direct(n: u64, m_max: u64) -> Result<Vec<Rational>> {
    let mu = mean_onemax_direct(n, m_max)?;
    let mut s2 = vec![Rational::zero()];
    for m in 1..=m_max {
        let mut acc = -Rational::one();
        for l in 1..=m {
            let lam = lambda(n, m, l)?;
            let d = &mu[m as usize] - &mu[(m - l) as usize];
            acc += lam * (&d * &d + &s2[(m - l) as usize]);
        }
        s2.push(acc / row_sum(n, m)?);
    }
    Ok(s2)
}

// ---------------------------------------------------------------------------
// Laurent carrier: truncated series in u = 1/n
// ---------------------------------------------------------------------------

fn binom_u64(n: u64, k: u64) -> BigInt {
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

/// `lambda_star(n, m, l)` as a polynomial in u = 1/n, truncated to `order`
/// coefficients: `sum_j C(n+1-m, j) C(m, j+l) u^(l+2j)` with the binomial
/// expanded in powers of n.
fn lambda_star_u(m: u64, l: u64, order: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); order];
    for j in 0..=(m - l) {
        // C(n+1-m, j) = prod_{i=0}^{j-1} (n + (1-m-i)) / j!
        let mut poly: Vec<Rational> = vec![Rational::one()]; // coeffs in n, ascending
        for i in 0..j {
            let c = Rational::from_integer(BigInt::from(1i64 - m as i64 - i as i64));
            let mut next = vec![Rational::zero(); poly.len() + 1];
            for (d, pc) in poly.iter().enumerate() {
                next[d + 1] += pc;
                next[d] += pc * &c;
            }
            poly = next;
        }
        let mut jfact = BigInt::one();
        for i in 1..=j {
            jfact *= BigInt::from(i);
        }
        let cml = Rational::from_integer(binom_u64(m, j + l));
        for (i, pc) in poly.iter().enumerate() {
            // n^i / (n^(l+2j) j!) -> u^(l+2j-i)
            let p = (l + 2 * j) as usize - i;
            if p < order {
                out[p] += pc * &cml / Rational::from_integer(jfact.clone());
            }
        }
    }
    out
}

fn series(coeffs: Vec<Rational>) -> TruncatedSeries<Rational> {
    TruncatedSeries::new("u", Rational::zero(), coeffs)
}

/// Expansion of `mu*_{n,m}` in powers of u = 1/n for m = 0..=m_max;
/// coefficient k of entry m is the matched-asymptotics table value d_k(m).
pub fn mu_star_laurent(m_max: u64, order: usize) -> Vec<TruncatedSeries<Rational>> {
    let mut mu: Vec<TruncatedSeries<Rational>> = Vec::with_capacity(m_max as usize + 1);
    mu.push(series(vec![Rational::zero(); order]));
    for m in 1..=m_max {
        let lam: Vec<Vec<Rational>> = (1..=m).map(|l| lambda_star_u(m, l, order + 1)).collect();
        let mut num = vec![Rational::zero(); order + 1];
        num[1] = Rational::one(); // the u on the right-hand side
        let mut den = vec![Rational::zero(); order + 1];
        for (li, lam_l) in lam.iter().enumerate() {
            let prev = &mu[m as usize - 1 - li];
            // num += lam_l * prev: lam_l has valuation l >= 1, so coefficients
            // of u^1..u^order of the product are fully determined by `order`
            // known coefficients of prev.
            for (i, a) in lam_l.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for k in 0..(order + 1 - i).min(prev.order()) {
                    num[i + k] += a * &prev.coeff(k);
                }
            }
            for (i, a) in lam_l.iter().enumerate() {
                den[i] += a;
            }
        }
        // both numerator and row sum have valuation exactly 1
        let num = series(num).shift_down(1).expect("numerator valuation");
        let den = series(den).shift_down(1).expect("row-sum valuation");
        mu.push(num.div(&den).expect("row-sum leading coefficient m"). truncate(order));
    }
    mu
}

/// Expansions of `(mu*, V*)` in powers of u = 1/n; coefficient k of the V*
/// entry m is the variance table value d~_k(m).
pub fn v_star_laurent(
    m_max: u64,
    order: usize,
) -> (Vec<TruncatedSeries<Rational>>, Vec<TruncatedSeries<Rational>>) {
    let mu = mu_star_laurent(m_max, order);
    let mut vs: Vec<TruncatedSeries<Rational>> = Vec::with_capacity(m_max as usize + 1);
    vs.push(series(vec![Rational::zero(); order]));
    for m in 1..=m_max {
        let lam: Vec<Vec<Rational>> = (1..=m).map(|l| lambda_star_u(m, l, order + 1)).collect();
        let mut num = vec![Rational::zero(); order + 1];
        let mut den = vec![Rational::zero(); order + 1];
        for (li, lam_l) in lam.iter().enumerate() {
            let l = li + 1;
            let dmu = mu[m as usize].sub(&mu[m as usize - l]);
            let contrib = dmu.mul(&dmu).add(&vs[m as usize - l]);
            for (i, a) in lam_l.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for k in 0..(order + 1 - i).min(contrib.order()) {
                    num[i + k] += a * &contrib.coeff(k);
                }
            }
            for (i, a) in lam_l.iter().enumerate() {
                den[i] += a;
            }
        }
        let num = series(num).shift_down(1).expect("numerator valuation");
        let den = series(den).shift_down(1).expect("row-sum valuation");
        vs.push(num.div(&den).expect("row-sum leading coefficient m").truncate(order));
    }
    (mu, vs)
}

// ---------------------------------------------------------------------------
// Symbolic carrier: rational functions of n
// ---------------------------------------------------------------------------

/// Cap on symbolic m: numerator degree grows like m^2 and the expressions
/// become unwieldy past this point.
pub const SYMBOLIC_M_MAX: u64 = 8;

fn lambda_star_symbolic(m: u64, l: u64) -> RationalFunction {
    let mut acc = RationalFunction::zero();
    for j in 0..=(m - l) {
        let mut num = Poly::constant(Rational::from_integer(binom_u64(m, j + l)));
        for i in 0..j {
            let shift = Poly::new(vec![
                Rational::from_integer(BigInt::from(1i64 - m as i64 - i as i64)),
                Rational::one(),
            ]);
            num = &num * &shift;
        }
        let mut jfact = BigInt::one();
        for i in 1..=j {
            jfact *= BigInt::from(i);
        }
        num = num.scale(&Rational::new(BigInt::one(), jfact));
        let den = Poly::monomial(Rational::one(), (l + 2 * j) as usize);
        acc = &acc + &RationalFunction::new(num, den);
    }
    acc
}

/// `mu*_{n,m}` as rational functions of n for m = 0..=m_max (m_max <= 8).
pub fn mu_star_symbolic(m_max: u64) -> Result<Vec<RationalFunction>> {
    if m_max > SYMBOLIC_M_MAX {
        return Err(Error::OutOfRange(format!(
            "symbolic mode capped at m <= {SYMBOLIC_M_MAX}, got {m_max}"
        )));
    }
    let inv_n = RationalFunction::new(Poly::constant(Rational::one()), Poly::monomial(Rational::one(), 1));
    let mut mu = vec![RationalFunction::zero()];
    for m in 1..=m_max {
        let mut acc = inv_n.clone();
        let mut lam_sum = RationalFunction::zero();
        for l in 1..=m {
            let lam = lambda_star_symbolic(m, l);
            acc = &acc + &(&lam * &mu[(m - l) as usize]);
            lam_sum = &lam_sum + &lam;
        }
        mu.push(&acc / &lam_sum);
    }
    Ok(mu)
}

/// `V*_{n,m}` as rational functions of n for m = 0..=m_max (m_max <= 8).
pub fn v_star_symbolic(m_max: u64) -> Result<Vec<RationalFunction>> {
    let mu = mu_star_symbolic(m_max)?;
    let mut vs = vec![RationalFunction::zero()];
    for m in 1..=m_max {
        let mut acc = RationalFunction::zero();
        let mut lam_sum = RationalFunction::zero();
        for l in 1..=m {
            let lam = lambda_star_symbolic(m, l);
            let d = &mu[m as usize] - &mu[(m - l) as usize];
            acc = &acc + &(&lam * &(&(&d * &d) + &vs[(m - l) as usize]));
            lam_sum = &lam_sum + &lam;
        }
        vs.push(&acc / &lam_sum);
    }
    Ok(vs)
}
