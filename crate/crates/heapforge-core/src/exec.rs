//! Execution helpers for the data-parallel inner loops.
//!
//! With the `parallel` feature (on by default) the hot scans run on rayon;
//! without it the same helpers fall back to plain sequential iteration.
//! Results are identical either way: maps preserve index order and witness
//! searches always return the lowest-index hit.
//!
//! Cheap per-item scans (the n^5 tuple checks, permutation builds) are
//! chunked so task overhead stays negligible, and every helper falls back
//! to the plain loop when the pool has a single thread or the range fits in
//! one chunk.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Minimum chunk for scans whose per-item work is a few comparisons.
const CHEAP_CHUNK: usize = 4096;

#[cfg(feature = "parallel")]
fn pool_is_serial() -> bool {
    rayon::current_num_threads() <= 1
}

/// Applies `f` to every index in `0..n`, collecting results in index order.
/// Meant for heavy `f`; splits at item granularity.
pub fn map_indices<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if !pool_is_serial() {
        return (0..n).into_par_iter().map(f).collect();
    }
    (0..n).map(f).collect()
}

/// As [`map_indices`], chunked for cheap `f` over large ranges.
pub fn map_indices_chunked<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if n > CHEAP_CHUNK && !pool_is_serial() {
        return (0..n)
            .into_par_iter()
            .with_min_len(CHEAP_CHUNK)
            .map(f)
            .collect();
    }
    (0..n).map(f).collect()
}

/// First index in `0..n` satisfying `pred`. Meant for heavy predicates.
pub fn find_first<F>(n: usize, pred: F) -> Option<usize>
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if !pool_is_serial() {
        return (0..n).into_par_iter().find_first(|&i| pred(i));
    }
    (0..n).find(|&i| pred(i))
}

/// As [`find_first`], chunked for cheap predicates over large tuple spaces.
pub fn find_first_chunked<F>(n: usize, pred: F) -> Option<usize>
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if n > CHEAP_CHUNK && !pool_is_serial() {
        return (0..n)
            .into_par_iter()
            .with_min_len(CHEAP_CHUNK)
            .find_first(|&i| pred(i));
    }
    (0..n).find(|&i| pred(i))
}

/// Flat-maps `f` over items, preserving item order in the concatenation.
pub fn flat_map_vec<I, T, F>(items: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> Vec<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if items.len() > 32 && !pool_is_serial() {
        return items.par_iter().with_min_len(32).flat_map_iter(&f).collect();
    }
    items.iter().flat_map(|x| f(x)).collect()
}
