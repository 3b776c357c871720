use super::incgamma::{reg_lower_gamma, std_normal_cdf};

/// The four limit laws of the normalized optimization times.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LimitLaw {
    /// `(1 - e^-x)^m`: sum of independent Exp(1), ..., Exp(m); the OneMax
    /// law at fixed deficit m.
    SumOfExponentials(u64),
    /// `exp(-e^-x)`: the OneMax law for growing deficit.
    Gumbel,
    /// `2^(1-m) sum_j C(m-1,j) P(j+1, x)`: binomial mixture of Gamma laws;
    /// the LeadingOnes law at fixed deficit m.
    GammaMixture(u64),
    /// Standard normal; the LeadingOnes law for growing deficit.
    Normal,
}

impl LimitLaw {
    pub fn name(&self) -> String {
        match self {
            LimitLaw::SumOfExponentials(m) => format!("sum-exp:{m}"),
            LimitLaw::Gumbel => "gumbel".to_string(),
            LimitLaw::GammaMixture(m) => format!("gamma-mixture:{m}"),
            LimitLaw::Normal => "normal".to_string(),
        }
    }
}

/// CDF of the law at `x`; accurate to ~1e-12.
pub fn limit_cdf(law: LimitLaw, x: f64) -> f64 {
    match law {
        LimitLaw::SumOfExponentials(m) => {
            assert!(m >= 1);
            if x <= 0.0 {
                0.0
            } else {
                (1.0 - (-x).exp()).powi(m as i32)
            }
        }
        LimitLaw::Gumbel => (-(-x).exp()).exp(),
        LimitLaw::GammaMixture(m) => {
            assert!(m >= 1);
            if x <= 0.0 {
                return 0.0;
            }
            let mut acc = 0.0;
            let mut binom = 1.0f64;
            for j in 0..m {
                if j > 0 {
                    binom = binom * (m - j) as f64 / j as f64;
                }
                acc += binom * reg_lower_gamma(j as f64 + 1.0, x);
            }
            acc * 2f64.powi(1 - m as i32)
        }
        LimitLaw::Normal => std_normal_cdf(x),
    }
}
