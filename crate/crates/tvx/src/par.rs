//! Data-parallel helpers with a sequential fallback.
//!
//! With the default `parallel` feature, [`map_vec`] fans out over rayon and
//! collects in input order, so results are bit-identical to the sequential
//! path; without it, it degrades to [`map_vec_seq`]. The benches compare the
//! two entry points directly.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map over items, in parallel when enabled; output order follows input order.
#[cfg(feature = "parallel")]
pub fn map_vec<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_vec<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    map_vec_seq(items, f)
}

/// Always-sequential map, kept available for benchmarking against [`map_vec`].
pub fn map_vec_seq<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}
