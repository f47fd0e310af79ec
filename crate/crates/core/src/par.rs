//! Execution strategy switch.
//!
//! With the `parallel` feature (on by default) the hot loops fan out over
//! rayon's global pool; without it every strategy runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How data-parallel loops are executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// True when this strategy will actually use worker threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

// below this many touched scalars per elimination step, threads cost more than they save
#[cfg(feature = "parallel")]
const MIN_PARALLEL_WORK: usize = 1 << 14;

/// Applies `f(row_index, row)` to every `cols`-wide row of `data`.
pub(crate) fn for_each_row_mut<T, F>(exec: Exec, data: &mut [T], cols: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    if cols == 0 {
        return;
    }
    #[cfg(feature = "parallel")]
    if exec.is_parallel() && data.len() >= MIN_PARALLEL_WORK {
        data.par_chunks_mut(cols)
            .enumerate()
            .for_each(|(i, row)| f(i, row));
        return;
    }
    let _ = exec;
    data.chunks_mut(cols).enumerate().for_each(|(i, row)| f(i, row));
}

/// Maps `f` over `items`, preserving order.
pub fn map<I, O, F>(exec: Exec, items: &[I], f: F) -> Vec<O>
where
    I: Sync,
    O: Send,
    F: Fn(&I) -> O + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Maps `f` over `0..n`, preserving order.
pub fn map_range<O, F>(exec: Exec, n: usize, f: F) -> Vec<O>
where
    O: Send,
    F: Fn(usize) -> O + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}
