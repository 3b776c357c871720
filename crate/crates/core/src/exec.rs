//! Parallel/sequential execution of independent grid cells.
//!
//! Everything funnels through [`map_indexed`], which computes `f(0..len)`
//! into a `Vec` in index order. The parallel path assigns cell `i` the same
//! inputs as the sequential path, so results are bit-identical; only wall
//! time differs.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How to execute a batch of independent cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecMode {
    /// Plain serial loop.
    Sequential,
    /// Rayon work-stealing pool. Falls back to the serial loop when the
    /// `parallel` feature is disabled.
    Parallel,
}

impl Default for ExecMode {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            ExecMode::Parallel
        } else {
            ExecMode::Sequential
        }
    }
}

/// Maps `f` over `0..len`, returning results in index order.
#[cfg(feature = "parallel")]
pub fn map_indexed<T, F>(len: usize, mode: ExecMode, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match mode {
        ExecMode::Sequential => (0..len).map(f).collect(),
        ExecMode::Parallel => (0..len).into_par_iter().map(f).collect(),
    }
}

/// Maps `f` over `0..len`, returning results in index order.
#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T, F>(len: usize, _mode: ExecMode, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..len).map(f).collect()
}
