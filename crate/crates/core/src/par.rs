//! Execution strategy switch.
//!
//! With the `parallel` feature the hot loops fan out over rayon; without it,
//! or when `Exec::Sequential` is requested explicitly, they run in order.
//! Both paths produce identical results.

use std::sync::atomic::{AtomicU8, Ordering};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

static DEFAULT: AtomicU8 = AtomicU8::new(if cfg!(feature = "parallel") { 1 } else { 0 });

impl Exec {
    /// Process-wide default; `Parallel` when the feature is enabled.
    pub fn current() -> Exec {
        match DEFAULT.load(Ordering::Relaxed) {
            1 => Exec::Parallel,
            _ => Exec::Sequential,
        }
    }

    /// Change the process-wide default. Requests for `Parallel` are ignored
    /// when the crate was built without the `parallel` feature.
    pub fn set_current(exec: Exec) {
        let v = match exec {
            Exec::Parallel if cfg!(feature = "parallel") => 1,
            _ => 0,
        };
        DEFAULT.store(v, Ordering::Relaxed);
    }

    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Apply `f` to every chunk of `stride` words.
pub(crate) fn for_each_chunk<F>(exec: Exec, data: &mut [u64], stride: usize, f: F)
where
    F: Fn(usize, &mut [u64]) + Sync + Send,
{
    if stride == 0 {
        return;
    }
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        data.par_chunks_mut(stride).enumerate().for_each(|(i, c)| f(i, c));
        return;
    }
    let _ = exec;
    data.chunks_mut(stride).enumerate().for_each(|(i, c)| f(i, c));
}

/// Order-preserving map.
pub(crate) fn map<T, U, F>(exec: Exec, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}
