//! Exact optimization-time distributions (phase-type iteration for OneMax,
//! product/convolution forms for LeadingOnes) and the four limit laws with
//! Kolmogorov-Smirnov distances.

mod incgamma;
mod leadingones;
mod limit_laws;
mod phase_type;

pub use leadingones::{
    lo_cdf, lo_pgf_convolution, lo_pgf_product, lo_pgf_recurrence,
};
pub use limit_laws::{limit_cdf, LimitLaw};
pub use phase_type::{
    onemax_cdf, onemax_mixed_cdf, onemax_pgf, onemax_pgf_moments, Carrier, DiscreteCdf,
};

use std::io::Write;

use serde::Serialize;

use crate::{Error, Result};

/// Affine normalization mapping a step count t to the limit-law coordinate
/// `x = t / scale - center`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Normalization {
    pub scale: f64,
    pub center: f64,
}

impl Normalization {
    pub fn apply(&self, t: f64) -> f64 {
        t / self.scale - self.center
    }
}

/// Kolmogorov-Smirnov distance between a lattice CDF (values `cdf[i]` at
/// steps `t = first + i`) and a continuous law under `norm`. On each lattice
/// interval the step function is constant while the law moves, so the sup is
/// attained at interval endpoints; the tail beyond the last step contributes
/// `max(|F_last - L|, tail at +inf)`.
pub fn ks_distance_lattice(
    first: u64,
    cdf: &[f64],
    tail_mass: f64,
    law: impl Fn(f64) -> f64,
    norm: Normalization,
) -> Result<f64> {
    if cdf.is_empty() {
        return Err(Error::InsufficientSample { need: 1, got: 0 });
    }
    let mut d = 0.0f64;
    let mut prev = 0.0f64;
    for (i, &f) in cdf.iter().enumerate() {
        let x = norm.apply((first + i as u64) as f64);
        let l = law(x);
        d = d.max((f - l).abs()).max((prev - l).abs());
        prev = f;
    }
    // beyond the grid the law keeps rising toward 1 while F stays at its
    // last value until the (unresolved) tail; the gap there is at least
    // the tail mass
    d = d.max(tail_mass);
    Ok(d)
}

/// KS report emitted by the CLI (`schema_version` travels with it).
#[derive(Debug, Clone, Serialize)]
pub struct KsReport {
    pub law: String,
    pub n: u64,
    pub m: Option<u64>,
    pub normalization: Normalization,
    pub ks: f64,
    pub sample_size: u64,
}

/// CDF CSV export: `(t_or_x, cdf)`.
pub fn write_cdf_csv<W: Write>(
    out: &mut W,
    first: u64,
    cdf: &[f64],
) -> std::io::Result<()> {
    writeln!(out, "t,cdf")?;
    for (i, v) in cdf.iter().enumerate() {
        writeln!(out, "{},{:.17e}", first + i as u64, v)?;
    }
    Ok(())
}
