//! OneMax optimization-time distribution as the absorption time of the
//! deficit chain: the state vector over deficits 0..m is pushed through the
//! improvement kernel one step at a time (O(m^2) per step on the triangular
//! kernel), in exact rationals or floats.

use num_traits::{One, Zero};

use crate::exactnum::{rational_to_f64, Poly, Rational, RationalFunction};
use crate::moments::binomial_weights;
pub use crate::transition::Carrier;
use crate::transition::TransitionKernel;
use crate::{Error, Result};

/// Work guard: steps * active states must stay within this budget.
const WORK_BUDGET: u64 = 100_000_000;

/// Lattice CDF of a hitting time: cumulative probabilities at consecutive
/// integer step counts starting at `first`, plus the unresolved tail mass.
#[derive(Debug, Clone)]
pub struct DiscreteCdf {
    first: u64,
    values: CdfValues,
}

#[derive(Debug, Clone)]
enum CdfValues {
    Exact(Vec<Rational>),
    Float(Vec<f64>),
}

impl DiscreteCdf {
    pub fn from_f64(first: u64, cums: Vec<f64>) -> Self {
        DiscreteCdf { first, values: CdfValues::Float(cums) }
    }

    pub fn from_exact(first: u64, cums: Vec<Rational>) -> Self {
        DiscreteCdf { first, values: CdfValues::Exact(cums) }
    }

    pub fn first(&self) -> u64 {
        self.first
    }

    pub fn len(&self) -> usize {
        match &self.values {
            CdfValues::Exact(v) => v.len(),
            CdfValues::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Cumulative probability at step `first + i`, as f64.
    pub fn cum_f64(&self, i: usize) -> f64 {
        match &self.values {
            CdfValues::Exact(v) => rational_to_f64(&v[i]),
            CdfValues::Float(v) => v[i],
        }
    }

    /// Exact cumulative value (exact carrier only).
    pub fn cum_exact(&self, i: usize) -> Option<&Rational> {
        match &self.values {
            CdfValues::Exact(v) => v.get(i),
            CdfValues::Float(_) => None,
        }
    }

    pub fn cums_f64(&self) -> Vec<f64> {
        match &self.values {
            CdfValues::Exact(v) => v.iter().map(rational_to_f64).collect(),
            CdfValues::Float(v) => v.clone(),
        }
    }

    /// `1 - CDF(t_max)`.
    pub fn tail_mass(&self) -> f64 {
        match &self.values {
            CdfValues::Exact(v) => v
                .last()
                .map(|x| rational_to_f64(&(Rational::one() - x)))
                .unwrap_or(1.0),
            CdfValues::Float(v) => v.last().map(|x| 1.0 - x).unwrap_or(1.0),
        }
    }

    /// Nondecreasing and within [0, 1].
    pub fn is_monotone(&self) -> bool {
        let mut prev = 0.0;
        for i in 0..self.len() {
            let v = self.cum_f64(i);
            if v < prev - 1e-12 || v > 1.0 + 1e-9 {
                return false;
            }
            prev = v;
        }
        true
    }
}

/// Default horizon: `ceil(8 e n (H_m + 1))` keeps the float tail below ~1e-6.
pub fn default_t_max(n: u64, m: u64) -> u64 {
    let h = crate::moments::harmonic_f64(m, 1);
    (8.0 * std::f64::consts::E * n as f64 * (h + 1.0)).ceil() as u64
}

fn check_budget(t_max: u64, m: u64) -> Result<()> {
    let needed = t_max.saturating_mul(m);
    if needed > WORK_BUDGET {
        return Err(Error::BudgetExceeded { needed, budget: WORK_BUDGET });
    }
    Ok(())
}

/// Exact or float CDF of the optimization time from deficit `m_start`.
pub fn onemax_cdf(n: u64, m_start: u64, t_max: u64, carrier: Carrier) -> Result<DiscreteCdf> {
    if m_start == 0 || m_start > n {
        return Err(Error::OutOfRange(format!("need 1 <= m_start <= n, got {m_start}")));
    }
    check_budget(t_max, m_start)?;
    let kernel = TransitionKernel::build(n, m_start, carrier)?;
    match carrier {
        Carrier::Exact => {
            let mut v = vec![Rational::zero(); m_start as usize + 1];
            v[m_start as usize] = Rational::one();
            let mut cums = Vec::with_capacity(t_max as usize);
            for _ in 1..=t_max {
                step_exact(&kernel, &mut v);
                cums.push(v[0].clone());
            }
            Ok(DiscreteCdf { first: 1, values: CdfValues::Exact(cums) })
        }
        Carrier::Float => {
            let mut v = vec![0.0f64; m_start as usize + 1];
            v[m_start as usize] = 1.0;
            let mut cums = Vec::with_capacity(t_max as usize);
            for _ in 1..=t_max {
                step_float(&kernel, &mut v);
                cums.push(v[0]);
            }
            Ok(DiscreteCdf { first: 1, values: CdfValues::Float(cums) })
        }
    }
}

/// CDF of the optimization time with a Binomial(n, rho) deficit start; the
/// atom at zero steps (already optimal) is included, so `first` is 0.
pub fn onemax_mixed_cdf(n: u64, rho: f64, t_max: u64, carrier: Carrier) -> Result<DiscreteCdf> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::InvalidParameter(format!("rho must lie in (0,1), got {rho}")));
    }
    check_budget(t_max, n)?;
    let kernel = TransitionKernel::build(n, n, carrier)?;
    match carrier {
        Carrier::Exact => {
            let rho_q = crate::exactnum::parse_rational(&format!(
                "{}/{}",
                (rho * 1_000_000.0).round() as i64,
                1_000_000
            ))?;
            let mut v = binomial_weights(n, &rho_q)?.weights;
            let mut cums = Vec::with_capacity(t_max as usize + 1);
            cums.push(v[0].clone());
            for _ in 1..=t_max {
                step_exact(&kernel, &mut v);
                cums.push(v[0].clone());
            }
            Ok(DiscreteCdf { first: 0, values: CdfValues::Exact(cums) })
        }
        Carrier::Float => {
            let mut v = binomial_weights_f64(n, rho);
            let mut cums = Vec::with_capacity(t_max as usize + 1);
            cums.push(v[0]);
            for _ in 1..=t_max {
                step_float(&kernel, &mut v);
                cums.push(v[0]);
            }
            Ok(DiscreteCdf { first: 0, values: CdfValues::Float(cums) })
        }
    }
}

fn binomial_weights_f64(n: u64, rho: f64) -> Vec<f64> {
    // log-domain for stability at larger n
    let lf = crate::transition::LnFactorials::up_to(n as usize);
    (0..=n)
        .map(|m| {
            (lf.ln_binom(n, m) + m as f64 * rho.ln() + (n - m) as f64 * (1.0 - rho).ln()).exp()
        })
        .collect()
}

fn step_exact(kernel: &TransitionKernel, v: &mut [Rational]) {
    let m_max = v.len() - 1;
    let mut next = vec![Rational::zero(); v.len()];
    next[0] = v[0].clone();
    for d in 1..=m_max {
        if v[d].is_zero() {
            continue;
        }
        let mut stay = v[d].clone();
        for l in 1..=d {
            let lam = kernel.prob_exact(d as u64, l as u64).expect("exact kernel");
            let move_mass = &v[d] * lam;
            stay -= &move_mass;
            next[d - l] += move_mass;
        }
        next[d] += stay;
    }
    v.clone_from_slice(&next);
}

fn step_float(kernel: &TransitionKernel, v: &mut [f64]) {
    let m_max = v.len() - 1;
    let mut next = vec![0.0f64; v.len()];
    next[0] = v[0];
    for d in 1..=m_max {
        let mass = v[d];
        if mass == 0.0 {
            continue;
        }
        let mut stay = mass;
        for l in 1..=d {
            let move_mass = mass * kernel.prob_f64(d as u64, l as u64);
            stay -= move_mass;
            next[d - l] += move_mass;
        }
        next[d] += stay;
    }
    v.copy_from_slice(&next);
}

/// Exact probability generating function of the optimization time from
/// deficit m, as a rational function of the generating variable:
/// `P_m(t) = t sum_l lambda_l P_{m-l}(t) / (1 - (1 - Lambda_m) t)`.
pub fn onemax_pgf(n: u64, m: u64) -> Result<RationalFunction> {
    if m > n {
        return Err(Error::OutOfRange(format!("need m <= n, got n={n} m={m}")));
    }
    let kernel = TransitionKernel::build(n, m, Carrier::Exact)?;
    let t = Poly::monomial(Rational::one(), 1);
    let mut pgf = vec![RationalFunction::constant(Rational::one())];
    for d in 1..=m {
        let mut num = RationalFunction::zero();
        let mut lam_sum = Rational::zero();
        for l in 1..=d {
            let lam = kernel.prob_exact(d, l).unwrap();
            num = &num + &pgf[(d - l) as usize]
                .mul_poly(&Poly::constant(lam.clone()));
            lam_sum += lam;
        }
        // denominator 1 - (1 - Lambda) t
        let den = Poly::new(vec![Rational::one(), lam_sum - Rational::one()]);
        let num = num.mul_poly(&t);
        pgf.push(&num / &RationalFunction::from_poly(den));
    }
    Ok(pgf.pop().unwrap())
}

/// Exact mean and variance from the PGF derivatives at 1:
/// `E = P'(1)`, `V = P''(1) + P'(1) - P'(1)^2`.
pub fn onemax_pgf_moments(n: u64, m: u64) -> Result<(Rational, Rational)> {
    let pgf = onemax_pgf(n, m)?;
    let one = Rational::one();
    let d1 = pgf.derivative();
    let d2 = d1.derivative();
    let mean = d1.eval(&one)?;
    let second_fact = d2.eval(&one)?;
    let var = &second_fact + &mean - &mean * &mean;
    Ok((mean, var))
}

/// Exact mean and variance through the CDF machinery: masses absorbed up to
/// `t_cut` are summed directly and the remaining state is closed with the
/// per-deficit expected absorption times solved from the raw kernel. An
/// independent route from the normalized-moment tables.
pub fn onemax_cdf_moments_exact(n: u64, m_start: u64, t_cut: u64) -> Result<(Rational, Rational)> {
    if m_start == 0 || m_start > n {
        return Err(Error::OutOfRange(format!("need 1 <= m_start <= n, got {m_start}")));
    }
    check_budget(t_cut, m_start)?;
    let kernel = TransitionKernel::build(n, m_start, Carrier::Exact)?;
    // per-deficit expected time and second moment, raw-kernel recurrences
    let mut e1 = vec![Rational::zero()];
    let mut e2 = vec![Rational::zero()];
    for d in 1..=m_start as usize {
        let mut acc = Rational::one();
        let mut lam_sum = Rational::zero();
        for l in 1..=d {
            let lam = kernel.prob_exact(d as u64, l as u64).unwrap();
            acc += lam * &e1[d - l];
            lam_sum += lam;
        }
        e1.push(acc / &lam_sum);
        let mut acc2 = Rational::one()
            + (Rational::one() - &lam_sum) * Rational::from_integer(2.into()) * &e1[d];
        for l in 1..=d {
            let lam = kernel.prob_exact(d as u64, l as u64).unwrap();
            acc2 += lam * (Rational::from_integer(2.into()) * &e1[d - l] + &e2[d - l]);
        }
        e2.push(acc2 / lam_sum);
    }
    // push the state vector t_cut steps, accumulating absorbed mass moments
    let mut v = vec![Rational::zero(); m_start as usize + 1];
    v[m_start as usize] = Rational::one();
    let mut sum_t = Rational::zero();
    let mut sum_t2 = Rational::zero();
    let mut absorbed = Rational::zero();
    for t in 1..=t_cut {
        step_exact(&kernel, &mut v);
        let p_t = &v[0] - &absorbed;
        let tf = Rational::from_integer(t.into());
        sum_t += &p_t * &tf;
        sum_t2 += &p_t * &tf * &tf;
        absorbed = v[0].clone();
    }
    let t_cut_r = Rational::from_integer(t_cut.into());
    let mut mean = sum_t;
    let mut second = sum_t2;
    for d in 1..=m_start as usize {
        if v[d].is_zero() {
            continue;
        }
        mean += &v[d] * (&t_cut_r + &e1[d]);
        second += &v[d]
            * (&t_cut_r * &t_cut_r
                + Rational::from_integer(2.into()) * &t_cut_r * &e1[d]
                + &e2[d]);
    }
    let var = second - &mean * &mean;
    Ok((mean, var))
}
