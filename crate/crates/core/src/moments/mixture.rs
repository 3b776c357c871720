use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactnum::Rational;
use crate::{Error, Result};

use super::onemax::{mu_from_mu_star, sigma2_from_v_star, v_star_table};

/// Binomial start weights: the initial deficit (number of zeros) is
/// Binomial(n, rho), `pi_m = C(n,m) rho^m (1-rho)^(n-m)`.
#[derive(Debug, Clone)]
pub struct MixtureWeights {
    pub n: u64,
    pub rho: Rational,
    pub weights: Vec<Rational>,
}

/// Exact binomial weights, index m = number of zeros.
pub fn binomial_weights(n: u64, rho: &Rational) -> Result<MixtureWeights> {
    if *rho <= Rational::zero() || *rho >= Rational::one() {
        return Err(Error::InvalidParameter(format!("rho must lie in (0,1), got {rho}")));
    }
    let rb = Rational::one() - rho;
    let mut weights = Vec::with_capacity(n as usize + 1);
    let mut binom = BigInt::one();
    for m in 0..=n {
        if m > 0 {
            binom = binom * BigInt::from(n - m + 1) / BigInt::from(m);
        }
        let mut w = Rational::from_integer(binom.clone());
        for _ in 0..m {
            w *= rho;
        }
        for _ in 0..(n - m) {
            w *= &rb;
        }
        weights.push(w);
    }
    Ok(MixtureWeights { n, rho: rho.clone(), weights })
}

/// Exact mean and variance of the optimization time with a Binomial(n, rho)
/// deficit start: `E = sum pi mu`, `V = sum pi (sigma^2 + mu^2) - E^2`.
pub fn random_start_moments(n: u64, rho: &Rational) -> Result<(Rational, Rational)> {
    let w = binomial_weights(n, rho)?;
    if n == 1 {
        // deficit 1 with probability rho, hitting time identically 1
        let mean = w.weights[1].clone();
        let second = w.weights[1].clone();
        let var = second - &mean * &mean;
        return Ok((mean, var));
    }
    let (mu_star, v_star) = v_star_table(n - 1, n)?;
    let mut mean = Rational::zero();
    let mut second = Rational::zero();
    for m in 1..=n {
        let mu = mu_from_mu_star(n, &mu_star[m as usize]);
        let s2 = sigma2_from_v_star(n, &v_star[m as usize], &mu);
        mean += &w.weights[m as usize] * &mu;
        second += &w.weights[m as usize] * (s2 + &mu * &mu);
    }
    let var = second - &mean * &mean;
    Ok((mean, var))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rational_to_f64};

    #[test]
    fn weights_sum_to_one() {
        let w = binomial_weights(20, &rat(1, 3)).unwrap();
        let total: Rational = w.weights.iter().sum();
        assert!(total.is_one());
    }

    #[test]
    fn weights_concentrate_at_zero_for_small_rho() {
        let w = binomial_weights(10, &rat(1, 1000)).unwrap();
        assert!(rational_to_f64(&w.weights[0]) > 0.99);
        // and the mixture mean goes to 0 with rho
        let (mean, _) = random_start_moments(10, &rat(1, 1000)).unwrap();
        let (mean_smaller, _) = random_start_moments(10, &rat(1, 100000)).unwrap();
        assert!(mean_smaller < mean);
        assert!(rational_to_f64(&mean_smaller) < 0.01);
    }

    #[test]
    fn rho_out_of_range_rejected() {
        assert!(binomial_weights(5, &rat(1, 1).into()).is_err());
        assert!(binomial_weights(5, &rat(-1, 2)).is_err());
    }

    #[test]
    fn mixture_mean_matches_direct_average() {
        // brute-force check against the per-m exact moments at small n
        let n = 6u64;
        let rho = rat(1, 2);
        let (mean, var) = random_start_moments(n, &rho).unwrap();
        let w = binomial_weights(n, &rho).unwrap();
        let mut mean2 = Rational::zero();
        let mut second = Rational::zero();
        for m in 1..=n {
            let mu = crate::moments::mean_onemax(n, m).unwrap();
            let s2 = crate::moments::variance_onemax(n, m).unwrap();
            mean2 += &w.weights[m as usize] * &mu;
            second += &w.weights[m as usize] * (&s2 + &mu * &mu);
        }
        assert_eq!(mean, mean2);
        assert_eq!(var, second - &mean2 * &mean2);
    }
}
