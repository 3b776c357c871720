//! LeadingOnes optimization-time distribution. Three exact routes to the
//! same law: the PGF recurrence over deficits, its closed product form, and
//! the convolution of one geometric with m-1 coin/geometric mixtures. The
//! lattice CDF comes from the convolution route, which runs in O(m t_max)
//! via the geometric smoothing recursion.

use num_traits::{One, Zero};

use crate::exactnum::{rational_to_f64, Rational};
use crate::moments::LeadingOnesParams;
use crate::{Error, Result};

use super::phase_type::DiscreteCdf;

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

/// Success probability of the jump out of deficit j: `p q^(n-j)`.
fn rho(params: &LeadingOnesParams, j: u64) -> Rational {
    &params.p * pow(&params.q(), params.n - j)
}

/// PGF by the deficit recurrence
/// `Q_m(t) = G_m(t) (2^(1-m) + sum_{l<m} Q_l(t) / 2^(m-l))`,
/// `G_m(t) = rho_m t / (1 - (1-rho_m) t)`, evaluated exactly at rational t.
pub fn lo_pgf_recurrence(params: &LeadingOnesParams, m: u64, t: &Rational) -> Result<Rational> {
    if m == 0 || m > params.n {
        return Err(Error::OutOfRange(format!("need 1 <= m <= n, got m={m}")));
    }
    let mut q_vals: Vec<Rational> = Vec::with_capacity(m as usize + 1);
    q_vals.push(Rational::one()); // Q_0 unused below, placeholder
    let half = Rational::new(1.into(), 2.into());
    for d in 1..=m {
        let r = rho(params, d);
        let g = &r * t / (Rational::one() - (Rational::one() - &r) * t);
        let mut acc = pow(&half, d - 1);
        for l in 1..d {
            acc += &q_vals[l as usize] * pow(&half, d - l);
        }
        q_vals.push(g * acc);
    }
    Ok(q_vals.pop().unwrap())
}

/// PGF by the closed product form: with `w = (1 - 1/t)`,
/// `Q_m(t) = 1/(1 - w/rho_m) prod_{1<=j<m} (1 - w/(2 rho_j)) / (1 - w/rho_j)`.
pub fn lo_pgf_product(params: &LeadingOnesParams, m: u64, t: &Rational) -> Result<Rational> {
    if m == 0 || m > params.n {
        return Err(Error::OutOfRange(format!("need 1 <= m <= n, got m={m}")));
    }
    if t.is_zero() {
        return Ok(Rational::zero());
    }
    let w = Rational::one() - t.recip();
    let mut acc = (Rational::one() - &w / rho(params, m)).recip();
    for j in 1..m {
        let rj = rho(params, j);
        acc *= (Rational::one() - &w / (Rational::from_integer(2.into()) * &rj))
            / (Rational::one() - &w / rj);
    }
    Ok(acc)
}

/// PGF by the convolution decomposition:
/// `Geo(rho_m)` times `prod_j (1/2)(1 - (1-2 rho_j)t)/(1 - (1-rho_j)t)`.
pub fn lo_pgf_convolution(params: &LeadingOnesParams, m: u64, t: &Rational) -> Result<Rational> {
    if m == 0 || m > params.n {
        return Err(Error::OutOfRange(format!("need 1 <= m <= n, got m={m}")));
    }
    let r0 = rho(params, m);
    let mut acc = &r0 * t / (Rational::one() - (Rational::one() - &r0) * t);
    let half = Rational::new(1.into(), 2.into());
    for j in 1..m {
        let rj = rho(params, j);
        let two_rj = Rational::from_integer(2.into()) * &rj;
        acc *= &half * (Rational::one() - (Rational::one() - two_rj) * t)
            / (Rational::one() - (Rational::one() - &rj) * t);
    }
    Ok(acc)
}

/// Exact lattice CDF from deficit m by iterative convolution, truncated at
/// `t_max` with the tail mass tracked implicitly (1 - last value).
///
/// Convolving with `Geo(r)` uses `g_t = (1-r) g_(t-1) + r f_(t-1)`, so the
/// whole build is O(m t_max) rational (or float) operations.
pub fn lo_cdf(
    params: &LeadingOnesParams,
    m: u64,
    t_max: u64,
    float: bool,
) -> Result<DiscreteCdf> {
    if m == 0 || m > params.n {
        return Err(Error::OutOfRange(format!("need 1 <= m <= n, got m={m}")));
    }
    let work = t_max.saturating_mul(m);
    if work > 200_000_000 {
        return Err(Error::BudgetExceeded { needed: work, budget: 200_000_000 });
    }
    let len = t_max as usize;
    if float {
        // pmf of Geo(rho_m) on 1..=t_max
        let r0 = rational_to_f64(&rho(params, m));
        let mut pmf = vec![0.0f64; len + 1];
        let mut mass = r0;
        for t in 1..=len {
            pmf[t] = mass;
            mass *= 1.0 - r0;
        }
        for j in 1..m {
            let r = rational_to_f64(&rho(params, j));
            let mut conv = vec![0.0f64; len + 1];
            let mut g = 0.0f64;
            for t in 1..=len {
                g = (1.0 - r) * g + r * pmf[t - 1];
                conv[t] = 0.5 * pmf[t] + 0.5 * g;
            }
            pmf = conv;
        }
        let mut cums = Vec::with_capacity(len);
        let mut acc = 0.0;
        for t in 1..=len {
            acc += pmf[t];
            cums.push(acc);
        }
        Ok(DiscreteCdf::from_f64(1, cums))
    } else {
        let r0 = rho(params, m);
        let mut pmf = vec![Rational::zero(); len + 1];
        let mut mass = r0.clone();
        let stay0 = Rational::one() - &r0;
        for t in 1..=len {
            pmf[t] = mass.clone();
            mass *= &stay0;
        }
        let half = Rational::new(1.into(), 2.into());
        for j in 1..m {
            let r = rho(params, j);
            let stay = Rational::one() - &r;
            let mut conv = vec![Rational::zero(); len + 1];
            let mut g = Rational::zero();
            for t in 1..=len {
                g = &stay * &g + &r * &pmf[t - 1];
                conv[t] = &half * (&pmf[t] + &g);
            }
            pmf = conv;
        }
        let mut cums = Vec::with_capacity(len);
        let mut acc = Rational::zero();
        for t in 1..=len {
            acc += &pmf[t];
            cums.push(acc.clone());
        }
        Ok(DiscreteCdf::from_exact(1, cums))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::moments::{lo_mean, lo_variance};

    fn params(n: u64, num: i64, den: i64) -> LeadingOnesParams {
        LeadingOnesParams::new(n, rat(num, den)).unwrap()
    }

    #[test]
    fn three_pgf_routes_agree_exactly() {
        for (n, m) in [(5u64, 3u64), (6, 6), (8, 4)] {
            let pr = params(n, 1, n as i64);
            for i in [1i64, 3, 5, 7, 9] {
                let t = rat(i, 10);
                let a = lo_pgf_recurrence(&pr, m, &t).unwrap();
                let b = lo_pgf_product(&pr, m, &t).unwrap();
                let c = lo_pgf_convolution(&pr, m, &t).unwrap();
                assert_eq!(a, b, "recurrence vs product at n={n} m={m} t={t}");
                assert_eq!(b, c, "product vs convolution at n={n} m={m} t={t}");
            }
        }
    }

    #[test]
    fn single_deficit_cdf_is_geometric() {
        let pr = params(6, 1, 6);
        let cdf = lo_cdf(&pr, 1, 40, false).unwrap();
        let r = &pr.p * pow(&pr.q(), 5);
        let mut acc = Rational::zero();
        let mut mass = r.clone();
        for t in 0..40usize {
            acc += &mass;
            mass *= Rational::one() - &r;
            assert_eq!(cdf.cum_exact(t).unwrap(), &acc, "t={}", t + 1);
        }
    }

    #[test]
    fn cdf_moments_match_closed_forms() {
        // tail-closed first/second moments from the exact pmf: the geometric
        // tail beyond t_max is summed in closed form per remaining mass
        let pr = params(6, 1, 6);
        let m = 4u64;
        let t_max = 400u64;
        let cdf = lo_cdf(&pr, m, t_max, false).unwrap();
        let mean = lo_mean(&pr, m).unwrap();
        // E X = sum_{t>=0} P(X > t); the exact partial sum sits below the
        // closed-form mean by the (tiny) truncated tail
        let mut partial = Rational::zero();
        for t in 0..t_max as usize {
            partial += Rational::one() - cdf.cum_exact(t).unwrap();
        }
        assert!(partial.clone() <= mean.clone());
        let gap = rational_to_f64(&(&mean - &partial));
        assert!(gap >= 0.0 && gap < 1e-8, "truncated tail too large: {gap}");
        // float CDF first/second moments against the closed forms
        let cdf_f = lo_cdf(&pr, m, 3000, true).unwrap();
        let (mut mf, mut sf, mut prev) = (0.0, 0.0, 0.0);
        for t in 0..cdf_f.len() {
            let c = cdf_f.cum_f64(t);
            let tt = (t + 1) as f64;
            mf += tt * (c - prev);
            sf += tt * tt * (c - prev);
            prev = c;
        }
        let mean_f = rational_to_f64(&mean);
        let var_f = rational_to_f64(&lo_variance(&pr, m).unwrap());
        assert!((mf - mean_f).abs() / mean_f < 1e-9, "{mf} vs {mean_f}");
        assert!((sf - mf * mf - var_f).abs() / var_f < 1e-9);
    }

    #[test]
    fn pgf_derivative_matches_mean() {
        // numeric derivative of the exact PGF at 1 equals the closed mean
        let pr = params(6, 1, 6);
        for m in [1u64, 3, 6] {
            let h = rat(1, 1_000_000);
            let tp = Rational::one() + &h;
            let tm = Rational::one() - &h;
            let d = (lo_pgf_product(&pr, m, &tp).unwrap() - lo_pgf_product(&pr, m, &tm).unwrap())
                / (Rational::from_integer(2.into()) * &h);
            let mean = lo_mean(&pr, m).unwrap();
            let err = rational_to_f64(&(&d - &mean)).abs();
            assert!(err < 1e-4 * rational_to_f64(&mean), "m={m}: {err}");
        }
    }
}
