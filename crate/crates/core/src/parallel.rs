//! Data-parallel sweep helpers.
//!
//! Grid sweeps in this crate are embarrassingly parallel: each grid point is
//! evaluated independently and the results are collected in input order, so
//! the output is bitwise identical whether the sweep runs sequentially or on
//! a thread pool. The `parallel` feature (default) routes [`map_slice`]
//! through rayon; without it the sequential path is used. [`map_slice_seq`]
//! is always available so benchmarks can compare the two directly.
//!
//! The `WEIGHTCONJ_THREADS` environment variable caps rayon's global pool;
//! it is applied by [`init_thread_cap`], which binaries call once at startup.

/// Sequential reference implementation of the sweep.
pub fn map_slice_seq<T: Sync, U: Send, F: Fn(&T) -> U + Sync>(items: &[T], f: F) -> Vec<U> {
    items.iter().map(f).collect()
}

/// Maps `f` over `items`, preserving order. Parallel when the `parallel`
/// feature is enabled, sequential otherwise.
#[cfg(feature = "parallel")]
pub fn map_slice<T: Sync, U: Send, F: Fn(&T) -> U + Sync + Send>(items: &[T], f: F) -> Vec<U> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

/// Maps `f` over `items`, preserving order. Parallel when the `parallel`
/// feature is enabled, sequential otherwise.
#[cfg(not(feature = "parallel"))]
pub fn map_slice<T: Sync, U: Send, F: Fn(&T) -> U + Sync>(items: &[T], f: F) -> Vec<U> {
    map_slice_seq(items, f)
}

/// Applies the `WEIGHTCONJ_THREADS` cap to the global thread pool.
///
/// Call once at process startup, before any parallel work. Errors (already
/// initialized pool, unparseable value) are ignored: the cap is advisory.
pub fn init_thread_cap() {
    #[cfg(feature = "parallel")]
    if let Ok(val) = std::env::var("WEIGHTCONJ_THREADS") {
        if let Ok(n) = val.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree_bitwise() {
        let xs: Vec<f64> = (0..1000).map(|i| i as f64 * 0.37).collect();
        let f = |x: &f64| (x.sin() * x.exp()).to_bits();
        assert_eq!(map_slice(&xs, f), map_slice_seq(&xs, f));
    }
}
