//! Chunked execution with a fixed reduction order.
//!
//! Work is split into chunks whose boundaries depend only on the problem size,
//! never on the worker count. Each chunk returns a value and results are
//! returned in chunk order, so any fold over them is reproducible.

/// How to run chunked work.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Serial,
    /// Runs on the rayon pool when the `parallel` feature is enabled,
    /// serially otherwise.
    #[default]
    Parallel,
}

/// Maps `f` over `0..n_chunks` and returns results in chunk order.
pub fn map_chunks<T, F>(n_chunks: u64, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    match exec {
        Execution::Serial => (0..n_chunks).map(f).collect(),
        Execution::Parallel => parallel_map(n_chunks, f),
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T, F>(n_chunks: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n_chunks).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, F>(n_chunks: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    (0..n_chunks).map(f).collect()
}
