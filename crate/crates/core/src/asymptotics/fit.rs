//! Matched-asymptotics coefficient fitting.
//!
//! The Laurent data `d_k(m)` (coefficient of n^-k in mu*_{n,m}, and its
//! variance analogue) follows the pattern
//!
//! ```text
//! d_k(m)  = b_k H_m + c_k H2_m + sum_j w_{k,j} m^j
//! ```
//!
//! exactly for all m above a small threshold, with isolated Iverson-bracket
//! corrections below it. Fitting the unknowns on the largest-m rows and
//! scanning downward recovers the published tables and, reading the
//! polynomial parts across k, the Taylor coefficients of the correction
//! functions that no closed form is carried for (phi_3 in particular:
//! its z^j coefficient is the m^j coefficient of row k = j + 2).

use num_traits::Zero;

use crate::exactnum::{solve_linear, Rational, TruncatedSeries};
use crate::moments::{harmonic, mu_star_laurent, v_star_laurent};
use crate::{Error, Result};

/// Which Laurent family to fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitTarget {
    MuStar,
    VStar,
}

/// One fitted table row `d_k(m)`.
#[derive(Debug, Clone)]
pub struct FitRow {
    pub k: usize,
    /// coefficient of `H_m`
    pub h_coeff: Rational,
    /// coefficient of `H_m^(2)`
    pub h2_coeff: Rational,
    /// polynomial part, ascending powers of m
    pub poly: Vec<Rational>,
    /// smallest m from which the row holds exactly
    pub valid_from: u64,
    /// Iverson corrections `(m, d_k(m) - row(m))` below `valid_from`
    pub corrections: Vec<(u64, Rational)>,
}

impl FitRow {
    pub fn eval(&self, m: u64) -> Rational {
        let mut acc = &self.h_coeff * harmonic(m, 1) + &self.h2_coeff * harmonic(m, 2);
        let mf = Rational::from_integer(m.into());
        let mut p = Rational::from_integer(1.into());
        for c in &self.poly {
            acc += c * &p;
            p *= &mf;
        }
        acc
    }
}

/// Fits rows k = 0..=k_max against Laurent data computed up to `m_max`.
///
/// Per row, the unknowns (H, H2, and the polynomial part of degree k for the
/// mean family, k-1 for the variance family) are solved exactly on the
/// largest-m rows, verified downward, and the residuals below the validity
/// threshold are reported as corrections.
pub fn fit_dk(target: FitTarget, k_max: usize, m_max: u64) -> Result<Vec<FitRow>> {
    let order = k_max + 1;
    let data: Vec<TruncatedSeries<Rational>> = match target {
        FitTarget::MuStar => mu_star_laurent(m_max, order),
        FitTarget::VStar => v_star_laurent(m_max, order).1,
    };
    let mut rows = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let poly_deg = match target {
            FitTarget::MuStar => k,
            FitTarget::VStar => k.saturating_sub(1),
        };
        let unknowns = 2 + poly_deg + 1;
        if (m_max as usize) < unknowns {
            return Err(Error::Underdetermined { unknowns, rows: m_max as usize });
        }
        // solve on the top rows
        let top: Vec<u64> = ((m_max - unknowns as u64 + 1)..=m_max).collect();
        let mut a = Vec::with_capacity(unknowns);
        let mut b = Vec::with_capacity(unknowns);
        for &m in &top {
            let mut row = vec![harmonic(m, 1), harmonic(m, 2)];
            let mf = Rational::from_integer(m.into());
            let mut p = Rational::from_integer(1.into());
            for _ in 0..=poly_deg {
                row.push(p.clone());
                p *= &mf;
            }
            a.push(row);
            b.push(data[m as usize].coeff(k));
        }
        let x = solve_linear(&a, &b).ok_or(Error::Underdetermined {
            unknowns,
            rows: top.len(),
        })?;
        let mut fr = FitRow {
            k,
            h_coeff: x[0].clone(),
            h2_coeff: x[1].clone(),
            poly: x[2..].to_vec(),
            valid_from: 0,
            corrections: vec![],
        };
        // scan downward for the validity threshold
        let mut valid_from = top[0];
        for m in (0..top[0]).rev() {
            if fr.eval(m) == data[m as usize].coeff(k) {
                valid_from = m;
            } else {
                break;
            }
        }
        fr.valid_from = valid_from;
        for m in 0..valid_from {
            let diff = data[m as usize].coeff(k) - fr.eval(m);
            if !diff.is_zero() {
                fr.corrections.push((m, diff));
            }
        }
        rows.push(fr);
    }
    Ok(rows)
}

/// Taylor series of `phi_3` at 0, recovered from the mean Laurent tables:
/// the z^j coefficient is the m^j polynomial coefficient of row k = j + 2.
pub fn phi3_series(terms: usize) -> TruncatedSeries<Rational> {
    let k_max = terms + 1;
    // validity threshold is ~2*ceil(k/2) and each row needs k+3 sample rows
    let m_max = (2 * k_max.div_ceil(2) + k_max + 4) as u64;
    let rows = fit_dk(FitTarget::MuStar, k_max, m_max).expect("phi3 fit");
    let coeffs: Vec<Rational> = (0..terms).map(|j| rows[j + 2].poly[j].clone()).collect();
    TruncatedSeries::new("z", Rational::zero(), coeffs)
}

/// Cross-route extraction of `psi_k` coefficients from the variance Laurent
/// tables (k = 1, 2): the z^j coefficient of psi_k sits in row k + j.
pub fn psi_series_from_fit(k: u32, terms: usize) -> TruncatedSeries<Rational> {
    assert!(k == 1 || k == 2);
    let k_max = terms + k as usize - 1;
    let m_max = (2 * k_max.div_ceil(2) + k_max + 4) as u64;
    let rows = fit_dk(FitTarget::VStar, k_max, m_max).expect("psi fit");
    let coeffs: Vec<Rational> = (0..terms)
        .map(|j| {
            let row = &rows[k as usize + j];
            row.poly.get(j).cloned().unwrap_or_else(Rational::zero)
        })
        .collect();
    TruncatedSeries::new("z", Rational::zero(), coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_i};

    #[test]
    fn mu_rows_match_published_tables() {
        let rows = fit_dk(FitTarget::MuStar, 2, 8).unwrap();
        // d_0 = H_m, m >= 0
        assert_eq!(rows[0].h_coeff, rat_i(1));
        assert_eq!(rows[0].h2_coeff, rat_i(0));
        assert_eq!(rows[0].poly, vec![rat_i(0)]);
        assert_eq!(rows[0].valid_from, 0);
        assert!(rows[0].corrections.is_empty());
        // d_1 = H_m + 1/2 - (3/2)m, m >= 1, correction -1/2 at m=0
        assert_eq!(rows[1].h_coeff, rat_i(1));
        assert_eq!(rows[1].poly, vec![rat(1, 2), rat(-3, 2)]);
        assert_eq!(rows[1].valid_from, 1);
        assert_eq!(rows[1].corrections, vec![(0, rat(-1, 2))]);
        // d_2 = (2/3)H_m + 1/12 - (7/4)m + (11/12)m^2, m >= 2,
        // corrections -1/12 at m=0 and 1/12 at m=1
        assert_eq!(rows[2].h_coeff, rat(2, 3));
        assert_eq!(rows[2].h2_coeff, rat_i(0));
        assert_eq!(rows[2].poly, vec![rat(1, 12), rat(-7, 4), rat(11, 12)]);
        assert_eq!(rows[2].valid_from, 2);
        assert_eq!(rows[2].corrections, vec![(0, rat(-1, 12)), (1, rat(1, 12))]);
    }

    #[test]
    fn mu_rows_d3_d4() {
        let rows = fit_dk(FitTarget::MuStar, 4, 14).unwrap();
        assert_eq!(rows[3].h_coeff, rat(1, 2));
        assert_eq!(rows[3].poly, vec![rat(7, 24), rat(-575, 432), rat(23, 18), rat(-283, 432)]);
        assert_eq!(rows[4].h_coeff, rat(5, 18));
        assert_eq!(
            rows[4].poly,
            vec![rat(-59, 720), rat(-3439, 3456), rat(15101, 11520), rat(-19951, 17280), rat(5759, 11520)]
        );
    }

    #[test]
    fn v_rows_match_published_tables() {
        let rows = fit_dk(FitTarget::VStar, 2, 9).unwrap();
        // d~_0 = H2_m
        assert_eq!(rows[0].h_coeff, rat_i(0));
        assert_eq!(rows[0].h2_coeff, rat_i(1));
        // d~_1 = -2 H_m + 2 H2_m, m >= 0
        assert_eq!(rows[1].h_coeff, rat_i(-2));
        assert_eq!(rows[1].h2_coeff, rat_i(2));
        assert_eq!(rows[1].valid_from, 0);
        assert!(rows[1].corrections.is_empty());
        // d~_2 = -(11/2) H_m + (7/3) H2_m + 7/12 + (11/4) m, m >= 2
        assert_eq!(rows[2].h_coeff, rat(-11, 2));
        assert_eq!(rows[2].h2_coeff, rat(7, 3));
        assert_eq!(rows[2].poly, vec![rat(7, 12), rat(11, 4)]);
        assert_eq!(rows[2].valid_from, 2);
        assert_eq!(rows[2].corrections.len(), 2);
    }

    #[test]
    fn v_rows_d3_d4() {
        let rows = fit_dk(FitTarget::VStar, 4, 14).unwrap();
        assert_eq!(rows[3].h_coeff, rat(-73, 9));
        assert_eq!(rows[3].h2_coeff, rat(7, 3));
        assert_eq!(rows[3].poly, vec![rat(1, 6), rat(239, 36), rat(-49, 36)]);
        assert_eq!(rows[4].h_coeff, rat(-1349, 144));
        assert_eq!(rows[4].h2_coeff, rat_i(2));
        assert_eq!(
            rows[4].poly,
            vec![rat(197, 144), rat(14135, 1728), rat(-6283, 2880), rat(2473, 4320)]
        );
    }

    #[test]
    fn phi3_series_matches_published_terms() {
        let s = phi3_series(6);
        let want = [
            rat(1, 12),
            rat(-575, 432),
            rat(15101, 11520),
            rat(-8827, 5400),
            rat(2229089, 1036800),
            rat(-361022171, 127008000),
        ];
        for (j, w) in want.iter().enumerate() {
            assert_eq!(&s.coeff(j), w, "phi3 z^{j}");
        }
    }

    #[test]
    fn fitted_psi_matches_ode_series() {
        // two fully independent routes to the same Taylor coefficients
        for k in [1u32, 2] {
            let fitted = psi_series_from_fit(k, 5);
            let ode = crate::specfun::psi_series(k);
            for j in 0..5 {
                assert_eq!(fitted.coeff(j), ode.coeff(j), "psi_{k} z^{j}");
            }
        }
    }

    #[test]
    fn underdetermined_is_an_error() {
        assert!(matches!(
            fit_dk(FitTarget::MuStar, 4, 5),
            Err(Error::Underdetermined { .. })
        ));
    }
}
