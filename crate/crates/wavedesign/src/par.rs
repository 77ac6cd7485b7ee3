//! Execution policy: data-parallel over independent work items via rayon, or a
//! plain sequential loop. Results always come back in item order, and any
//! reduction happens afterwards in that order, so both policies give bitwise
//! identical numbers.

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Exec {
    #[default]
    Sequential,
    Parallel,
}

impl Exec {
    /// Whether `Parallel` actually fans out in this build.
    pub const fn parallel_enabled() -> bool {
        cfg!(feature = "parallel")
    }

    pub fn name(self) -> &'static str {
        match self {
            Exec::Sequential => "sequential",
            Exec::Parallel => "parallel",
        }
    }
}

/// Maps `f` over `0..n`, collecting results in index order.
pub fn map_range<R, F>(exec: Exec, n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel if n > 1 => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(f).collect()
        }
        _ => (0..n).map(f).collect(),
    }
}

/// Maps `f` over a slice, collecting results in slice order.
pub fn map_slice<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    map_range(exec, items.len(), |i| f(&items[i]))
}
