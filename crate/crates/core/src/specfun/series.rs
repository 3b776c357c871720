//! Series construction for the kernel-sum functions and their integrated
//! correction functions.
//!
//! Exact rational Taylor coefficients at 0 feed the golden-coefficient tests
//! and the small-argument evaluation branch; float re-expansions at 1 give
//! the stable evaluation branch near alpha = 1, where the 0-series of the
//! reciprocal-of-S_1 integrands converges slowly (S_1 vanishes at
//! x ~ -1.0288, so that series has radius barely above 1).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactnum::{rat, Rational, TruncatedSeries};

/// Exact Taylor coefficients of `S_r` at 0:
/// `S_r(z) = sum_{l>=1} z^l/l! sum_{0<=j<l} (l-j)^r (1-z)^j / j!`.
pub fn s_series_exact(r: u32, order: usize) -> TruncatedSeries<Rational> {
    let mut fact = Vec::with_capacity(order + 1);
    fact.push(BigInt::one());
    for k in 1..=order {
        fact.push(&fact[k - 1] * BigInt::from(k));
    }
    let mut c = vec![Rational::zero(); order];
    for l in 1..order {
        for j in 0..l {
            let weight = Rational::new(
                BigInt::from(((l - j) as u64).pow(r)),
                &fact[l] * &fact[j],
            );
            // (1-z)^j = sum_i C(j,i) (-z)^i contributes at z^(l+i)
            let mut binom = BigInt::one();
            for i in 0..=j.min(order - 1 - l) {
                if i > 0 {
                    binom = binom * BigInt::from(j - i + 1) / BigInt::from(i);
                }
                let sign = if i % 2 == 0 { 1 } else { -1 };
                c[l + i] += &weight * Rational::from_integer(&binom * BigInt::from(sign));
            }
        }
    }
    TruncatedSeries::new("z", Rational::zero(), c)
}

/// In-place truncated multiplication by the linear factor `c0 + c1 w`.
fn mul_linear(p: &mut [f64], c0: f64, c1: f64) {
    for k in (0..p.len()).rev() {
        let lower = if k > 0 { p[k - 1] } else { 0.0 };
        p[k] = c0 * p[k] + c1 * lower;
    }
}

/// Float Taylor coefficients of `S_r` around an arbitrary point `a`
/// (coefficients of `w^k`, `w = z - a`). The defining double sum is
/// truncated where `(|a|+1)^l / l!` is negligible.
pub fn s_series_f64(r: u32, a: f64, order: usize) -> Vec<f64> {
    let lmax = 70usize;
    let mut acc = vec![0.0; order];
    let mut pow_z = vec![0.0; order];
    pow_z[0] = 1.0;
    let mut inv_fact_l = 1.0f64;
    let mut b = vec![0.0; order];
    let mut pow_m = vec![0.0; order];
    for l in 1..=lmax {
        mul_linear(&mut pow_z, a, 1.0);
        inv_fact_l /= l as f64;
        // B(w) = sum_{j<l} (l-j)^r (1-a-w)^j / j!
        b.iter_mut().for_each(|x| *x = 0.0);
        pow_m.iter_mut().for_each(|x| *x = 0.0);
        pow_m[0] = 1.0;
        let mut inv_fact_j = 1.0f64;
        for j in 0..l {
            if j > 0 {
                mul_linear(&mut pow_m, 1.0 - a, -1.0);
                inv_fact_j /= j as f64;
            }
            let w = ((l - j) as f64).powi(r as i32) * inv_fact_j;
            for k in 0..order {
                b[k] += w * pow_m[k];
            }
        }
        for i in 0..order {
            let zi = pow_z[i];
            if zi == 0.0 {
                continue;
            }
            let f = inv_fact_l * zi;
            for k in 0..order - i {
                acc[i + k] += f * b[k];
            }
        }
    }
    acc
}

/// Exact series pipeline for the correction functions at 0. All five series
/// come out of one construction so the shared `S_r` data is built once.
pub struct ZeroSeries {
    pub phi1: TruncatedSeries<Rational>,
    pub phi2: TruncatedSeries<Rational>,
    pub psi1: TruncatedSeries<Rational>,
    pub psi2: TruncatedSeries<Rational>,
}

/// Builds phi_1, phi_2, psi_1, psi_2 exactly at 0 with `order` retained
/// coefficients, by series division against `S_1(z)/z` (unit constant term)
/// and termwise integration. The pole counterterms cancel exactly; the
/// cancellation is asserted, not assumed.
pub fn correction_series_exact(order: usize) -> ZeroSeries {
    let w = order + 8; // slack for the valuation shifts below
    let s0 = s_series_exact(0, w + 1);
    let s1 = s_series_exact(1, w + 1);
    let s2 = s_series_exact(2, w + 1);
    let s3 = s_series_exact(3, w + 1);
    // a_i = S_i / z, unit constant term
    let a0 = s0.shift_down(1).unwrap();
    let a1 = s1.shift_down(1).unwrap();
    let a2 = s2.shift_down(1).unwrap();
    let a3 = s3.shift_down(1).unwrap();
    let s1d = s1.derivative();
    let s2d = s2.derivative();

    let inv_a1 = a1.reciprocal().unwrap();
    let inv_a1_2 = inv_a1.mul(&inv_a1);
    let inv_a1_3 = inv_a1_2.mul(&inv_a1);
    let inv_a1_4 = inv_a1_3.mul(&inv_a1);
    let inv_a1_5 = inv_a1_4.mul(&inv_a1);

    let one = |v: Rational| TruncatedSeries::constant("z", Rational::zero(), v, w);

    // phi_1' = 1/S_1 - 1/z = (1/a_1 - 1)/z
    let phi1_d = inv_a1.sub(&one(Rational::one())).shift_down(1).unwrap();
    let phi1 = phi1_d.integrate_termwise().truncate(order);

    // z^2 phi_2' = -S_1' a_2 / (2 a_1^3) + z a_0 / a_1^2 + z / (2 a_1) + 1/2 - z
    let t = s1d
        .mul(&a2)
        .mul(&inv_a1_3)
        .scale(&rat(-1, 2))
        .add(&a0.mul(&inv_a1_2).shift_up(1))
        .add(&inv_a1.scale(&rat(1, 2)).shift_up(1))
        .add(&one(rat(1, 2)))
        .sub(&one(Rational::one()).shift_up(1));
    let phi2_d = t.shift_down(2).expect("phi_2 pole counterterms must cancel");
    let mut phi2 = phi2_d.integrate_termwise();
    phi2 = TruncatedSeries::new(
        "z",
        Rational::zero(),
        {
            let mut v = phi2.coeffs().to_vec();
            v[0] = rat(1, 2);
            v
        },
    )
    .truncate(order);

    // z^2 psi_1' = a_2 / a_1^3 - 1 + 2 z
    let t = a2
        .mul(&inv_a1_3)
        .sub(&one(Rational::one()))
        .add(&one(rat(2, 1)).shift_up(1));
    let psi1_d = t.shift_down(2).expect("psi_1 pole counterterms must cancel");
    let psi1 = psi1_d.integrate_termwise().truncate(order);

    // z^3 psi_2' = -5 a_2^2 S_1'/(2 a_1^5) + a_3 S_1'/a_1^4 + 3 z a_2 a_0/a_1^4
    //              + a_2 S_2'/(2 a_1^4) + z a_0/a_1^3 - 2 z/a_1^2 + 1 - 3z + (11/2) z^2
    let t = a2
        .mul(&a2)
        .mul(&s1d)
        .mul(&inv_a1_5)
        .scale(&rat(-5, 2))
        .add(&a3.mul(&s1d).mul(&inv_a1_4))
        .add(&a2.mul(&a0).mul(&inv_a1_4).scale(&rat(3, 1)).shift_up(1))
        .add(&a2.mul(&s2d).mul(&inv_a1_4).scale(&rat(1, 2)))
        .add(&a0.mul(&inv_a1_3).shift_up(1))
        .add(&inv_a1_2.scale(&rat(-2, 1)).shift_up(1))
        .add(&one(Rational::one()))
        .sub(&one(rat(3, 1)).shift_up(1))
        .add(&one(rat(11, 2)).shift_up(2));
    let psi2_d = t.shift_down(3).expect("psi_2 pole counterterms must cancel");
    let mut psi2 = psi2_d.integrate_termwise();
    let psi2 = TruncatedSeries::new(
        "z",
        Rational::zero(),
        {
            let mut v = psi2.coeffs().to_vec();
            v[0] = rat(7, 12);
            v.truncate(order);
            v
        },
    );

    ZeroSeries { phi1, phi2, psi1, psi2 }
}

/// Series of `z^-k` around `z = 1` (coefficients of `w^j`, `w = z - 1`):
/// `(1+w)^-k = sum_j (-1)^j C(j+k-1, k-1) w^j`.
pub fn inv_power_series_at_one(k: u32, order: usize) -> Vec<f64> {
    let mut c = vec![0.0; order];
    let mut binom = 1.0f64;
    for j in 0..order {
        if j > 0 {
            binom = binom * (j as f64 + k as f64 - 1.0) / j as f64;
        }
        c[j] = if j % 2 == 0 { binom } else { -binom };
    }
    c
}

pub fn series_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len().min(b.len());
    let mut out = vec![0.0; n];
    for i in 0..n {
        if a[i] == 0.0 {
            continue;
        }
        for j in 0..n - i {
            out[i + j] += a[i] * b[j];
        }
    }
    out
}

pub fn series_recip(a: &[f64]) -> Vec<f64> {
    assert!(a[0] != 0.0);
    let n = a.len();
    let mut out = vec![0.0; n];
    out[0] = 1.0 / a[0];
    for k in 1..n {
        let mut s = 0.0;
        for i in 1..=k {
            s += a[i] * out[k - i];
        }
        out[k] = -s / a[0];
    }
    out
}

pub fn series_deriv(a: &[f64]) -> Vec<f64> {
    a.iter().enumerate().skip(1).map(|(j, c)| j as f64 * c).collect()
}

pub fn series_integrate(a: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(a.len() + 1);
    out.push(0.0);
    for (j, c) in a.iter().enumerate() {
        out.push(c / (j as f64 + 1.0));
    }
    out
}

pub fn series_eval(a: &[f64], w: f64) -> f64 {
    let mut acc = 0.0;
    for c in a.iter().rev() {
        acc = acc * w + c;
    }
    acc
}

/// Float integrand (= derivative) series around 1 of the four ODE-backed
/// correction functions phi_1, phi_2, psi_1, psi_2, in that order.
pub fn integrand_series_at_one(order: usize) -> [Vec<f64>; 4] {
    let s0 = s_series_f64(0, 1.0, order);
    let s1 = s_series_f64(1, 1.0, order);
    let s2 = s_series_f64(2, 1.0, order);
    let s3 = s_series_f64(3, 1.0, order);
    let s1d = {
        let mut d = series_deriv(&s1);
        d.resize(order, 0.0);
        d
    };
    let s2d = {
        let mut d = series_deriv(&s2);
        d.resize(order, 0.0);
        d
    };
    let iz1 = inv_power_series_at_one(1, order);
    let iz2 = inv_power_series_at_one(2, order);
    let iz3 = inv_power_series_at_one(3, order);
    let inv_s1 = series_recip(&s1);
    let inv_s1_2 = series_mul(&inv_s1, &inv_s1);
    let inv_s1_3 = series_mul(&inv_s1_2, &inv_s1);
    let inv_s1_4 = series_mul(&inv_s1_3, &inv_s1);
    let inv_s1_5 = series_mul(&inv_s1_4, &inv_s1);

    let mut phi1 = vec![0.0; order];
    for k in 0..order {
        phi1[k] = inv_s1[k] - iz1[k];
    }

    let t1 = series_mul(&series_mul(&s1d, &s2), &inv_s1_3);
    let t2 = series_mul(&s0, &inv_s1_2);
    let mut phi2 = vec![0.0; order];
    for k in 0..order {
        phi2[k] = -0.5 * t1[k] + t2[k] + 0.5 * inv_s1[k] + 0.5 * iz2[k] - iz1[k];
    }

    let t = series_mul(&s2, &inv_s1_3);
    let mut psi1 = vec![0.0; order];
    for k in 0..order {
        psi1[k] = t[k] - iz2[k] + 2.0 * iz1[k];
    }

    let u1 = series_mul(&series_mul(&series_mul(&s2, &s2), &s1d), &inv_s1_5);
    let u2 = series_mul(&series_mul(&s3, &s1d), &inv_s1_4);
    let u3 = series_mul(&series_mul(&s2, &s0), &inv_s1_4);
    let u4 = series_mul(&series_mul(&s2, &s2d), &inv_s1_4);
    let u5 = series_mul(&s0, &inv_s1_3);
    let mut psi2 = vec![0.0; order];
    for k in 0..order {
        psi2[k] = -2.5 * u1[k] + u2[k] + 3.0 * u3[k] + 0.5 * u4[k] + u5[k] - 2.0 * inv_s1_2[k]
            + iz3[k] - 3.0 * iz2[k] + 5.5 * iz1[k];
    }

    [phi1, phi2, psi1, psi2]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_i};

    #[test]
    fn s1_series_leading_terms() {
        let s = s_series_exact(1, 6);
        assert_eq!(s.coeff(0), rat_i(0));
        assert_eq!(s.coeff(1), rat_i(1));
        assert_eq!(s.coeff(2), rat(3, 2));
        assert_eq!(s.coeff(3), rat(5, 12));
    }

    #[test]
    fn s_series_small_z_quadratic_term() {
        // S_r(z) = z + (2^r+1)/2 z^2 + O(z^3)
        for r in 0..=4 {
            let s = s_series_exact(r, 4);
            assert_eq!(s.coeff(1), rat_i(1), "r={r}");
            assert_eq!(s.coeff(2), rat(2i64.pow(r) + 1, 2), "r={r}");
        }
    }

    #[test]
    fn float_series_at_zero_matches_exact() {
        for r in 0..=3 {
            let ex = s_series_exact(r, 12).to_f64_series();
            let fl = s_series_f64(r, 0.0, 12);
            for k in 0..12 {
                assert!((ex.coeff(k) - fl[k]).abs() < 1e-12, "r={r} k={k}");
            }
        }
    }

    #[test]
    fn float_series_at_one_sums_to_point_values() {
        // constant term of the series at 1 is S_r(1) = {e-1, e, 2e, 5e}
        let e = std::f64::consts::E;
        for (r, v) in [(0u32, e - 1.0), (1, e), (2, 2.0 * e), (3, 5.0 * e)] {
            let s = s_series_f64(r, 1.0, 8);
            assert!((s[0] - v).abs() < 1e-12, "r={r}: {} vs {v}", s[0]);
        }
    }

    #[test]
    fn inv_powers_at_one() {
        let c = inv_power_series_at_one(2, 5);
        assert_eq!(c, vec![1.0, -2.0, 3.0, -4.0, 5.0]);
        // evaluate 1/z^3 at z = 1.2 through the series
        let c3 = inv_power_series_at_one(3, 60);
        let v = series_eval(&c3, 0.2);
        assert!((v - 1.2f64.powi(-3)).abs() < 1e-12);
    }
}
