//! Data-parallel batch evaluation with a sequential fallback.
//!
//! Every randomized corpus sweep in the crate funnels through `run`, which
//! fans out on rayon when the `parallel` feature is on. `run_sequential`
//! always exists so benches can compare both paths in one build.

pub fn run_sequential<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn run<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn run<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    run_sequential(items, f)
}
