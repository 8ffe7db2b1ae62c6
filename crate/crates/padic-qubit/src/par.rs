//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature the [`Exec::Parallel`] strategy runs on the rayon
//! pool; without it both strategies run sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::linalg::CMatrix;

/// Execution strategy for group summations and per-element sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

/// Maps `f` over `0..n`, preserving order.
pub fn map_range<R, F>(exec: Exec, n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => (0..n).into_par_iter().map(f).collect(),
        _ => (0..n).map(f).collect(),
    }
}

/// Maps `f` over a slice, preserving order.
pub fn map<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

/// Sums the matrices `f(0), …, f(n−1)`.
///
/// Partial sums are taken over fixed chunks and combined in index order, so the
/// result is bitwise identical for both strategies.
pub fn sum_matrices<F>(exec: Exec, n: usize, rows: usize, cols: usize, f: F) -> CMatrix
where
    F: Fn(usize) -> CMatrix + Sync + Send,
{
    let chunks = n.div_ceil(SUM_CHUNK);
    let partial = |c: usize| {
        (c * SUM_CHUNK..((c + 1) * SUM_CHUNK).min(n)).fold(CMatrix::zeros(rows, cols), |acc, i| acc + f(i))
    };
    map_range(exec, chunks, partial)
        .into_iter()
        .fold(CMatrix::zeros(rows, cols), |acc, m| acc + m)
}

const SUM_CHUNK: usize = 64;

/// First index in `0..n` where `f` returns `Some`, by index order.
pub fn find_first<R, F>(exec: Exec, n: usize, f: F) -> Option<R>
where
    R: Send,
    F: Fn(usize) -> Option<R> + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => (0..n).into_par_iter().find_map_first(f),
        _ => (0..n).find_map(f),
    }
}
