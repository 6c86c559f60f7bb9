//! Data-parallel helpers with a sequential fallback when the `parallel` feature is off.

/// Maps `0..n` through `f` and folds with the associative `reduce`.
/// Results do not depend on scheduling as long as `reduce` is associative.
pub fn map_reduce<T, F, R>(n: usize, identity: impl Fn() -> T + Sync + Send, f: F, reduce: R) -> T
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).reduce(identity, reduce)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).fold(identity(), reduce)
    }
}

/// Order-preserving parallel map.
pub fn map_collect<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Runs `f` inside a pool of `threads` workers (no-op without the feature).
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    #[cfg(feature = "parallel")]
    {
        if let Some(t) = threads {
            if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build() {
                return pool.install(f);
            }
        }
        f()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        f()
    }
}
