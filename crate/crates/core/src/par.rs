//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature the helpers fan out over rayon's pool; without
//! it, or inside [`sequential`], they run in order on the calling thread.
//! Results are always returned in index order, so callers see the same output
//! either way.

use std::cell::Cell;

thread_local! {
    static FORCE_SEQUENTIAL: Cell<bool> = const { Cell::new(false) };
}

/// Runs `f` with every helper in this module forced onto the sequential path.
pub fn sequential<R>(f: impl FnOnce() -> R) -> R {
    let previous = FORCE_SEQUENTIAL.with(|flag| flag.replace(true));
    let out = f();
    FORCE_SEQUENTIAL.with(|flag| flag.set(previous));
    out
}

/// True when the helpers will use the parallel path on this thread.
pub fn is_parallel() -> bool {
    cfg!(feature = "parallel") && !FORCE_SEQUENTIAL.with(|flag| flag.get())
}

/// `(0..len).map(f).collect()`, possibly in parallel.
pub fn map_range<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        use rayon::prelude::*;
        return (0..len).into_par_iter().map(f).collect();
    }
    (0..len).map(f).collect()
}

/// `(0..len).filter_map(f).collect()`, possibly in parallel, keeping index order.
pub fn filter_map_range<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        use rayon::prelude::*;
        return (0..len).into_par_iter().filter_map(f).collect();
    }
    (0..len).filter_map(f).collect()
}

/// Calls `f` for every index, possibly in parallel.
pub fn for_each_range<F>(len: usize, f: F)
where
    F: Fn(usize) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        use rayon::prelude::*;
        (0..len).into_par_iter().for_each(f);
        return;
    }
    (0..len).for_each(f)
}

/// Smallest index `i < len` with `f(i)` returning `Some`, together with the value.
pub fn find_first<T, F>(len: usize, f: F) -> Option<(usize, T)>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        use rayon::prelude::*;
        return (0..len)
            .into_par_iter()
            .filter_map(|i| f(i).map(|v| (i, v)))
            .min_by_key(|(i, _)| *i);
    }
    (0..len).find_map(|i| f(i).map(|v| (i, v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paths_agree() {
        let f = |i: usize| if i % 3 == 0 { Some(i * i) } else { None };
        let par = filter_map_range(100, f);
        let seq = sequential(|| filter_map_range(100, f));
        assert_eq!(par, seq);
        assert_eq!(find_first(100, |i| (i > 40 && i % 7 == 0).then_some(i)), Some((42, 42)));
        assert!(!sequential(is_parallel));
    }
}
