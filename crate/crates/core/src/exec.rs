//! Parallel or sequential execution of independent verification jobs.

/// How independent jobs are scheduled. Without the `parallel` feature both
/// variants run sequentially.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    #[default]
    Parallel,
    Sequential,
}

impl Execution {
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            _ => items.iter().map(f).collect(),
        }
    }
}

/// Caps the global worker pool at `ORBIFUSION_THREADS` when set. Returns the
/// cap that was applied, if any. Only the first call has an effect.
pub fn configure_threads_from_env() -> Option<usize> {
    let n = std::env::var("ORBIFUSION_THREADS").ok()?.trim().parse::<usize>().ok().filter(|&n| n > 0)?;
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Some(n)
}
