//! Trial dispatch. Uses rayon when the `parallel` feature is enabled and
//! falls back to a plain loop otherwise; results always come back in trial
//! order.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this build can actually run trials in parallel.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

/// Evaluates `f(0), ..., f(count - 1)` and returns the results in index order.
pub fn map_trials<T, F>(exec: Execution, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..count).into_par_iter().map(f).collect()
        }
        _ => (0..count).map(f).collect(),
    }
}

/// Splits `count` trials into contiguous chunks, maps each chunk with `f`
/// (given its index range) and returns the chunk results in order.
///
/// Useful when each trial is cheap and per-trial allocation would dominate.
pub fn map_chunks<T, F>(exec: Execution, count: usize, chunk: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(std::ops::Range<usize>) -> T + Sync + Send,
{
    let chunk = chunk.max(1);
    let chunks = count.div_ceil(chunk);
    map_trials(exec, chunks, |c| {
        let start = c * chunk;
        f(start..(start + chunk).min(count))
    })
}

/// Configures the global worker pool size. Has no effect without the
/// `parallel` feature or if the pool was already initialised.
pub fn configure_threads(threads: usize) {
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        for exec in [Execution::Sequential, Execution::Parallel] {
            let v = map_trials(exec, 100, |i| i * i);
            assert_eq!(v, (0..100).map(|i| i * i).collect::<Vec<_>>());
            let c = map_chunks(exec, 10, 3, |r| r.len());
            assert_eq!(c, vec![3, 3, 3, 1]);
        }
    }
}
