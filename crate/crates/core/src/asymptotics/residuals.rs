//! Residual grids: exact moments minus truncated expansions, with the
//! order-normalization `|residual| n^(K+1) / H_m` whose boundedness in n is
//! the checkable content of the O(n^-(K+1)) error claims.

use std::io::Write;

use crate::exactnum::rational_to_f64;
use crate::exec::{map_indexed, ExecMode};
use crate::moments::{harmonic_f64, mu_star_table, v_star_table};
use crate::Result;

use super::expansions::{mu_star_expansion, v_star_expansion};

/// Which exact-vs-expansion family the grid covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidualTarget {
    MuStar,
    VStar,
}

impl ResidualTarget {
    pub fn as_str(&self) -> &'static str {
        match self {
            ResidualTarget::MuStar => "mu-star",
            ResidualTarget::VStar => "v-star",
        }
    }

    /// Smallest m covered (the variance expansion is asserted from m = 2).
    fn m_min(&self, k: u32) -> u64 {
        match self {
            ResidualTarget::MuStar => 1,
            ResidualTarget::VStar => {
                if k >= 2 {
                    2
                } else {
                    1
                }
            }
        }
    }
}

/// One grid cell.
#[derive(Debug, Clone)]
pub struct ResidualCell {
    pub n: u64,
    pub m: u64,
    pub residual: f64,
    pub normalized: f64,
}

/// Exact-vs-expansion residuals over a grid of n, all admissible m.
#[derive(Debug, Clone)]
pub struct ResidualReport {
    pub target: ResidualTarget,
    pub k: u32,
    pub cells: Vec<ResidualCell>,
    /// max normalized residual per n, in grid order
    pub max_per_n: Vec<(u64, f64)>,
    /// true when no later grid point exceeds 1.5x the first one
    pub verdict: bool,
}

/// Builds the residual grid in exact arithmetic, one column per n
/// (columns are independent and run in parallel under `mode`).
pub fn residual_report(
    target: ResidualTarget,
    k: u32,
    ns: &[u64],
    mode: ExecMode,
) -> Result<ResidualReport> {
    let columns: Vec<Result<Vec<ResidualCell>>> = map_indexed(ns.len(), mode, |i| {
        let n = ns[i];
        let m_min = target.m_min(k);
        let mut cells = Vec::with_capacity((n - m_min + 1) as usize);
        match target {
            ResidualTarget::MuStar => {
                let mu = mu_star_table(n, n)?;
                for m in m_min..=n {
                    let exact = rational_to_f64(&mu[m as usize]);
                    let resid = exact - mu_star_expansion(n, m, k);
                    cells.push(cell(n, m, k, resid));
                }
            }
            ResidualTarget::VStar => {
                let (_, vs) = v_star_table(n, n)?;
                for m in m_min..=n {
                    let exact = rational_to_f64(&vs[m as usize]);
                    let resid = exact - v_star_expansion(n, m, k);
                    cells.push(cell(n, m, k, resid));
                }
            }
        }
        Ok(cells)
    });
    let mut cells = Vec::new();
    let mut max_per_n = Vec::with_capacity(ns.len());
    for (i, col) in columns.into_iter().enumerate() {
        let col = col?;
        let max = col.iter().map(|c| c.normalized).fold(0.0f64, f64::max);
        max_per_n.push((ns[i], max));
        cells.extend(col);
    }
    let first = max_per_n.first().map(|&(_, v)| v).unwrap_or(0.0);
    let verdict = max_per_n.iter().all(|&(_, v)| v <= 1.5 * first);
    Ok(ResidualReport { target, k, cells, max_per_n, verdict })
}

fn cell(n: u64, m: u64, k: u32, residual: f64) -> ResidualCell {
    let normalized = residual.abs() * (n as f64).powi(k as i32 + 1) / harmonic_f64(m, 1);
    ResidualCell { n, m, residual, normalized }
}

impl ResidualReport {
    /// CSV export: `(n, m, residual, normalized_residual)`.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "n,m,residual,normalized_residual")?;
        for c in &self.cells {
            writeln!(out, "{},{},{:.17e},{:.17e}", c.n, c.m, c.residual, c.normalized)?;
        }
        Ok(())
    }
}
