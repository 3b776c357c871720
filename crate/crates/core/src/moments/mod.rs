//! Exact first and second moments of the optimization time.
//!
//! OneMax works through the normalized recurrences: with
//! `mu*_{n,m} = (e_n/n) mu_{n+1,m}` and
//! `V*_{n,m} = e_n^2 (sigma^2_{n+1,m} + mu_{n+1,m}) / n^2`,
//!
//! ```text
//! sum_l lambda_star(n,m,l) (mu*_{n,m} - mu*_{n,m-l}) = 1/n
//! sum_l lambda_star(n,m,l) (V*_{n,m}  - V*_{n,m-l})  = T*_{n,m}
//! T*_{n,m} = sum_l lambda_star(n,m,l) (mu*_{n,m} - mu*_{n,m-l})^2
//! ```
//!
//! solved upward in m in three carriers: exact rationals at fixed n,
//! rational functions of the symbol n (small m), and truncated Laurent
//! series in u = 1/n (the source of the matched-asymptotics tables).
//! LeadingOnes has closed forms throughout.

mod leadingones;
mod mixture;
mod onemax;

use std::io::Write;

use crate::exactnum::{rational_to_f64, Rational};

pub use leadingones::{
    lo_fourth_central, lo_mean, lo_moments, lo_moments_by_decomposition, lo_random_start,
    lo_second_moment, lo_third_central, lo_variance, LeadingOnesParams,
};
pub use mixture::{binomial_weights, random_start_moments, MixtureWeights};
pub use onemax::{
    mean_onemax, mean_onemax_direct, mu_from_mu_star, mu_star_laurent, mu_star_symbolic,
    mu_star_table, sigma2_from_v_star, v_star_laurent, v_star_symbolic, v_star_table,
    variance_onemax, variance_onemax_direct,
};

/// Exact harmonic numbers `H_m` (order 1) and `H_m^(2)` (order 2); `H_0 = 0`.
pub fn harmonic(m: u64, order: u32) -> Rational {
    assert!(order == 1 || order == 2, "harmonic order must be 1 or 2");
    let mut acc = Rational::from_integer(0.into());
    for j in 1..=m {
        let j = Rational::from_integer(j.into());
        acc += if order == 1 { j.recip() } else { (&j * &j).recip() };
    }
    acc
}

/// `H_m` as f64 (exact summation; m stays small enough that this is fine).
pub fn harmonic_f64(m: u64, order: u32) -> f64 {
    assert!(order == 1 || order == 2);
    (1..=m)
        .map(|j| {
            let j = j as f64;
            if order == 1 {
                1.0 / j
            } else {
                1.0 / (j * j)
            }
        })
        .sum()
}

/// Which moment a [`MomentTable`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentKind {
    OneMaxMuStar,
    OneMaxVStar,
    LeadingOnesMean,
    LeadingOnesVariance,
}

impl MomentKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            MomentKind::OneMaxMuStar => "onemax_mu_star",
            MomentKind::OneMaxVStar => "onemax_V_star",
            MomentKind::LeadingOnesMean => "leadingones_mean",
            MomentKind::LeadingOnesVariance => "leadingones_var",
        }
    }
}

/// Exact per-m moment values for one n, `values[m]` for m = 0..=m_max.
#[derive(Debug, Clone)]
pub struct MomentTable {
    pub n: u64,
    pub kind: MomentKind,
    pub values: Vec<Rational>,
}

impl MomentTable {
    pub fn m_max(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    /// CSV export: `(n, m, value_numer, value_denom)` exact, or
    /// `(n, m, value)` when `float` is set.
    pub fn write_csv<W: Write>(&self, out: &mut W, float: bool) -> std::io::Result<()> {
        if float {
            writeln!(out, "n,m,value")?;
            for (m, v) in self.values.iter().enumerate() {
                writeln!(out, "{},{},{:.17e}", self.n, m, rational_to_f64(v))?;
            }
        } else {
            writeln!(out, "n,m,value_numer,value_denom")?;
            for (m, v) in self.values.iter().enumerate() {
                writeln!(out, "{},{},{},{}", self.n, m, v.numer(), v.denom())?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_i};

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(0, 1), rat_i(0));
        assert_eq!(harmonic(3, 1), rat(11, 6));
        assert_eq!(harmonic(5, 1), rat(137, 60));
        assert_eq!(harmonic(4, 2), rat(205, 144));
        assert_eq!(harmonic(3, 2), rat(49, 36));
        assert_eq!(harmonic(0, 2), rat_i(0));
    }

    #[test]
    fn harmonic_difference_identity() {
        // H_m - H_{m-l} = sum_{k=1}^m l(l-1)...(l-k+1) / (k m(m-1)...(m-k+1))
        for m in 0u64..=12 {
            for l in 0..=m {
                let lhs = harmonic(m, 1) - harmonic(m - l, 1);
                let mut rhs = rat_i(0);
                for k in 1..=m {
                    let mut num = rat_i(1);
                    let mut den = Rational::from_integer(k.into());
                    for i in 0..k {
                        num *= Rational::from_integer(l.into()) - Rational::from_integer(i.into());
                        den *= Rational::from_integer(m.into()) - Rational::from_integer(i.into());
                    }
                    rhs += num / den;
                }
                assert_eq!(lhs, rhs, "m={m} l={l}");
            }
        }
    }
}
