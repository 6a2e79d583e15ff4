//! Data-parallel execution of independent per-item work.
//!
//! With the `parallel` feature (on by default) the helpers below fan out over
//! rayon's global pool; without it they compile to plain sequential loops.
//! [`set_enabled`] is a runtime switch on top of the compile-time gate so the
//! benchmark suite can compare both paths in one binary. Results are
//! collected in input order, so outputs are identical either way.

use std::sync::atomic::{AtomicBool, Ordering};

static ENABLED: AtomicBool = AtomicBool::new(true);

/// Turn the data-parallel paths on or off at runtime. No-op (always
/// sequential) when the `parallel` feature is compiled out.
pub fn set_enabled(enabled: bool) {
    ENABLED.store(enabled, Ordering::Relaxed);
}

/// Whether parallel execution is compiled in and currently enabled.
pub fn is_enabled() -> bool {
    cfg!(feature = "parallel") && ENABLED.load(Ordering::Relaxed)
}

/// `(0..n).map(f)` collected in order, parallel when enabled.
pub(crate) fn map_indexed<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_enabled() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    (0..n).map(f).collect()
}

/// `items.iter().map(f)` collected in order, parallel when enabled.
pub(crate) fn map_slice<'a, T, R, F>(items: &'a [T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&'a T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_enabled() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}
