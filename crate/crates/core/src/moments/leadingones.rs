use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactnum::Rational;
use crate::specfun::stirling2;
use crate::{Error, Result};

/// Problem parameters for the LeadingOnes analysis: n bits, per-bit mutation
/// probability p (exact), q = 1 - p.
#[derive(Debug, Clone, PartialEq)]
pub struct LeadingOnesParams {
    pub n: u64,
    pub p: Rational,
}

impl LeadingOnesParams {
    pub fn new(n: u64, p: Rational) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be positive".into()));
        }
        if p <= Rational::zero() || p >= Rational::one() {
            return Err(Error::InvalidParameter(format!("p must lie in (0,1), got {p}")));
        }
        Ok(LeadingOnesParams { n, p })
    }

    pub fn q(&self) -> Rational {
        Rational::one() - &self.p
    }

    /// `c = p n`, the scaled mutation rate.
    pub fn c(&self) -> Rational {
        &self.p * Rational::from_integer(self.n.into())
    }

    fn check_m(&self, m: u64) -> Result<()> {
        if m == 0 || m > self.n {
            return Err(Error::OutOfRange(format!("need 1 <= m <= n={}, got m={m}", self.n)));
        }
        Ok(())
    }
}

fn pow(base: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    let mut sq = base.clone();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            acc *= &sq;
        }
        sq = &sq * &sq;
        k >>= 1;
    }
    acc
}

/// Exact mean `nu_{n,m} = (1/(p q^(n-1))) ((1 - q^(m-1))/(2p) + q^(m-1))`.
pub fn lo_mean(params: &LeadingOnesParams, m: u64) -> Result<Rational> {
    params.check_m(m)?;
    let q = params.q();
    let qm1 = pow(&q, m - 1);
    let lead = (pow(&q, params.n - 1) * &params.p).recip();
    Ok(lead * ((Rational::one() - &qm1) / (&params.p + &params.p) + qm1))
}

/// Exact second raw moment of the optimization time.
pub fn lo_second_moment(params: &LeadingOnesParams, m: u64) -> Result<Rational> {
    params.check_m(m)?;
    let p = &params.p;
    let q = params.q();
    let nu = lo_mean(params, m)?;
    let two = Rational::from_integer(2.into());
    let num = &q * &q * (&two - &q) - (&q + Rational::one()) * pow(&q, m + 1) * (&two * &q - Rational::one())
        + (&two * &q - Rational::one()) * (&two * &q * &q - Rational::one()) * pow(&q, 2 * m);
    let den = &two * pow(p, 4) * (Rational::one() + &q) * pow(&q, 2 * params.n);
    Ok(num / den - nu)
}

/// Exact variance
/// `sigma^2 = -nu + (3q^2 - (4q^2-1) q^(2m)) / (4 p^3 (1+q) q^(2n))`.
pub fn lo_variance(params: &LeadingOnesParams, m: u64) -> Result<Rational> {
    params.check_m(m)?;
    let p = &params.p;
    let q = params.q();
    let nu = lo_mean(params, m)?;
    let three = Rational::from_integer(3.into());
    let four = Rational::from_integer(4.into());
    let num = &three * &q * &q - (&four * &q * &q - Rational::one()) * pow(&q, 2 * m);
    let den = four * pow(p, 3) * (Rational::one() + &q) * pow(&q, 2 * params.n);
    Ok(num / den - nu)
}

/// Exact third central moment.
pub fn lo_third_central(params: &LeadingOnesParams, m: u64) -> Result<Rational> {
    params.check_m(m)?;
    let q = params.q();
    let nu = lo_mean(params, m)?;
    let var = lo_variance(params, m)?;
    let q3 = &q * &q * &q;
    let seven = Rational::from_integer(7.into());
    let eight = Rational::from_integer(8.into());
    let num = &seven * &q3 - (&eight * &q3 - Rational::one()) * pow(&q, 3 * m);
    let pqn = &params.p * pow(&q, params.n);
    let den = Rational::from_integer(4.into()) * (Rational::one() - &q3) * pow(&pqn, 3);
    Ok(num / den
        - Rational::from_integer(3.into()) * var
        - Rational::from_integer(2.into()) * nu)
}

/// Exact fourth central moment.
pub fn lo_fourth_central(params: &LeadingOnesParams, m: u64) -> Result<Rational> {
    params.check_m(m)?;
    let q = params.q();
    let nu = lo_mean(params, m)?;
    let var = lo_variance(params, m)?;
    let third = lo_third_central(params, m)?;
    let q4 = pow(&q, 4);
    let num = Rational::from_integer(15.into()) * &q4
        - (Rational::from_integer(16.into()) * &q4 - Rational::one()) * pow(&q, 4 * m);
    let pqn = &params.p * pow(&q, params.n);
    let den = Rational::from_integer(8.into()) * (Rational::one() - &q4) * pow(&pqn, 4);
    let excess = Rational::from_integer(3.into()) * num / den
        - Rational::from_integer(6.into()) * third
        - Rational::from_integer(11.into()) * &var
        - Rational::from_integer(6.into()) * nu;
    Ok(excess + Rational::from_integer(3.into()) * &var * &var)
}

/// All four exact moments: (mean, variance, third central, fourth central).
pub fn lo_moments(
    params: &LeadingOnesParams,
    m: u64,
) -> Result<(Rational, Rational, Rational, Rational)> {
    Ok((
        lo_mean(params, m)?,
        lo_variance(params, m)?,
        lo_third_central(params, m)?,
        lo_fourth_central(params, m)?,
    ))
}

/// Independent oracle: the optimization time from deficit m decomposes into
/// a geometric Geo(p q^(n-m)) plus m-1 independent coin-flip/geometric
/// mixtures, so its cumulants are sums of component cumulants.
pub fn lo_moments_by_decomposition(
    params: &LeadingOnesParams,
    m: u64,
) -> Result<(Rational, Rational, Rational, Rational)> {
    params.check_m(m)?;
    let q = params.q();
    let mut k1 = Rational::zero();
    let mut k2 = Rational::zero();
    let mut k3 = Rational::zero();
    let mut k4 = Rational::zero();

    // plain geometric component with success probability p q^(n-m)
    let rho = &params.p * pow(&q, params.n - m);
    let rb = Rational::one() - &rho;
    k1 += rho.recip();
    k2 += &rb / (&rho * &rho);
    k3 += &rb * (Rational::from_integer(2.into()) - &rho) / pow(&rho, 3);
    k4 += &rb * (&rho * &rho - Rational::from_integer(6.into()) * &rho + Rational::from_integer(6.into()))
        / pow(&rho, 4);

    // mixture components j = 1..m-1: PGF (1/2)(1-(1-2r)t)/(1-(1-r)t)
    for j in 1..m {
        let r = &params.p * pow(&q, params.n - j);
        let b = Rational::one() - &r;
        // factorial moments f_k = k! b^(k-1) / (2 r^k), raw moments via
        // Stirling numbers, cumulants from raw moments
        let mut fact = Rational::one();
        let mut f = vec![Rational::one()]; // f_0
        for k in 1..=4u64 {
            fact *= Rational::from_integer(k.into());
            f.push(&fact * pow(&b, k - 1) / (Rational::from_integer(2.into()) * pow(&r, k)));
        }
        let raw = |r_ord: u32| -> Rational {
            let mut acc = Rational::zero();
            for k in 0..=r_ord {
                acc += Rational::from_integer(BigInt::from(stirling2(r_ord, k))) * &f[k as usize];
            }
            acc
        };
        let m1 = raw(1);
        let m2 = raw(2);
        let m3 = raw(3);
        let m4 = raw(4);
        k1 += &m1;
        k2 += &m2 - &m1 * &m1;
        k3 += &m3 - Rational::from_integer(3.into()) * &m1 * &m2
            + Rational::from_integer(2.into()) * pow(&m1, 3);
        k4 += &m4 - Rational::from_integer(4.into()) * &m3 * &m1
            - Rational::from_integer(3.into()) * &m2 * &m2
            + Rational::from_integer(12.into()) * &m2 * &m1 * &m1
            - Rational::from_integer(6.into()) * pow(&m1, 4);
    }
    let fourth = &k4 + Rational::from_integer(3.into()) * &k2 * &k2;
    Ok((k1, k2, k3, fourth))
}

/// Exact random-start (fair coin) mean and variance:
/// `nu_n = (q/(2p^2))(q^-n - 1)`,
/// `sigma_n^2 = (3q^2/(4p^3(1+q)))(q^-2n - 1) - nu_n`.
pub fn lo_random_start(params: &LeadingOnesParams) -> (Rational, Rational) {
    let p = &params.p;
    let q = params.q();
    let qn_inv = pow(&q, params.n).recip();
    let nu = &q / (Rational::from_integer(2.into()) * p * p) * (&qn_inv - Rational::one());
    let var = Rational::from_integer(3.into()) * &q * &q
        / (Rational::from_integer(4.into()) * pow(p, 3) * (Rational::one() + &q))
        * (&qn_inv * &qn_inv - Rational::one())
        - &nu;
    (nu, var)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_i};

    fn params(n: u64, p: Rational) -> LeadingOnesParams {
        LeadingOnesParams::new(n, p).unwrap()
    }

    #[test]
    fn single_deficit_is_geometric() {
        // m=1: nu = 1/(p q^(n-1)), variance = nu^2 - nu
        let pr = params(6, rat(1, 6));
        let nu = lo_mean(&pr, 1).unwrap();
        let rho = rat(1, 6) * pow(&rat(5, 6), 5);
        assert_eq!(nu, rho.recip());
        let var = lo_variance(&pr, 1).unwrap();
        assert_eq!(var, &nu * &nu - &nu);
    }

    #[test]
    fn tiny_case_exact() {
        // n=1, m=1, p=1/2: Geo(1/2): mean 2, variance 2
        let pr = params(1, rat(1, 2));
        assert_eq!(lo_mean(&pr, 1).unwrap(), rat_i(2));
        assert_eq!(lo_variance(&pr, 1).unwrap(), rat_i(2));
    }

    #[test]
    fn decomposition_oracle_agrees_exactly() {
        for (n, m, p) in [(5u64, 3u64, rat(1, 5)), (6, 6, rat(1, 6)), (8, 4, rat(1, 8)), (7, 2, rat(2, 7))] {
            let pr = params(n, p);
            let direct = lo_moments(&pr, m).unwrap();
            let oracle = lo_moments_by_decomposition(&pr, m).unwrap();
            assert_eq!(direct.0, oracle.0, "mean n={n} m={m}");
            assert_eq!(direct.1, oracle.1, "variance n={n} m={m}");
            assert_eq!(direct.2, oracle.2, "third n={n} m={m}");
            assert_eq!(direct.3, oracle.3, "fourth n={n} m={m}");
        }
    }

    #[test]
    fn mean_decomposes_into_geometric_means() {
        // nu = 1/(p q^(n-m)) + (1/2) sum_{1<=j<m} 1/(p q^(n-j))
        let pr = params(9, rat(1, 9));
        let q = pr.q();
        for m in 1..=9 {
            let mut want = (&pr.p * pow(&q, 9 - m)).recip();
            for j in 1..m {
                want += (&pr.p * pow(&q, 9 - j)).recip() / rat_i(2);
            }
            assert_eq!(lo_mean(&pr, m).unwrap(), want, "m={m}");
        }
    }

    #[test]
    fn second_moment_consistent_with_variance() {
        let pr = params(7, rat(1, 7));
        for m in 1..=7 {
            let nu = lo_mean(&pr, m).unwrap();
            let s = lo_second_moment(&pr, m).unwrap();
            assert_eq!(lo_variance(&pr, m).unwrap(), s - &nu * &nu, "m={m}");
        }
    }

    #[test]
    fn random_start_closed_forms() {
        // p=1/2, n=2: nu_n = (1/2/(2*1/4))(4-1) = 3
        let pr = params(2, rat(1, 2));
        let (nu, _) = lo_random_start(&pr);
        assert_eq!(nu, rat_i(3));
    }

    #[test]
    fn random_start_matches_mixture_exactly() {
        // nu_n = sum_m 2^(m-n-1) nu_{n,m}; same for the second moment
        let n = 12u64;
        let pr = params(n, rat(1, 12));
        let (nu, var) = lo_random_start(&pr);
        let mut mix_mean = Rational::zero();
        let mut mix_second = Rational::zero();
        for m in 1..=n {
            let w = rat_i(2).recip() * pow(&rat(1, 2), n - m);
            mix_mean += &w * lo_mean(&pr, m).unwrap();
            mix_second += &w * lo_second_moment(&pr, m).unwrap();
        }
        assert_eq!(nu, mix_mean);
        assert_eq!(var, mix_second - &nu * &nu);
    }

    #[test]
    fn scaled_limit_of_random_start_mean() {
        // c = 1 (p = 1/n): nu_n / n^2 -> (e-1)/2
        let n = 3000u64;
        let pr = params(n, rat(1, n as i64));
        let (nu, _) = lo_random_start(&pr);
        let v = crate::exactnum::rational_to_f64(&nu) / (n as f64 * n as f64);
        let want = (std::f64::consts::E - 1.0) / 2.0;
        assert!((v - want).abs() < 2e-3, "{v} vs {want}");
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(LeadingOnesParams::new(5, rat_i(1)).is_err());
        assert!(LeadingOnesParams::new(5, rat_i(0)).is_err());
        assert!(lo_mean(&params(5, rat(1, 5)), 6).is_err());
        assert!(lo_mean(&params(5, rat(1, 5)), 0).is_err());
    }
}
