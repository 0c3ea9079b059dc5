//! Order-preserving fan-out for scans.
//!
//! With the `parallel` feature, work runs on a rayon pool sized by [`Jobs`];
//! without it, or with `Jobs::sequential()`, it runs on the calling thread.
//! Either way results come back in input order, so reports do not depend on
//! the thread count.

use std::sync::atomic::{AtomicUsize, Ordering};

/// Requested degree of parallelism. `None` means "all available cores".
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Jobs(Option<usize>);

impl Jobs {
    pub fn all() -> Self {
        Jobs(None)
    }

    pub fn sequential() -> Self {
        Jobs(Some(1))
    }

    /// `0` is treated as "all cores".
    pub fn new(n: usize) -> Self {
        Jobs((n > 0).then_some(n))
    }

    pub fn get(&self) -> Option<usize> {
        self.0
    }

    pub fn is_sequential(&self) -> bool {
        self.0 == Some(1) || !cfg!(feature = "parallel")
    }
}

/// Maps `f` over `items`, returning results in the same order.
pub fn map_ordered<T, R, F>(items: &[T], jobs: Jobs, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    if jobs.is_sequential() {
        return items.iter().map(f).collect();
    }
    parallel_map(items, jobs, f)
}

#[cfg(feature = "parallel")]
fn parallel_map<T, R, F>(items: &[T], jobs: Jobs, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    match jobs.get() {
        None => items.par_iter().map(f).collect(),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .expect("failed to build thread pool");
            pool.install(|| items.par_iter().map(f).collect())
        }
    }
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, R, F>(items: &[T], _jobs: Jobs, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

/// Calls a hook every `interval` completed work items. Shared across
/// workers; the hook sees the running count.
pub struct Progress<'a> {
    done: AtomicUsize,
    interval: usize,
    hook: Option<&'a (dyn Fn(usize) + Sync)>,
}

impl<'a> Progress<'a> {
    pub fn new(interval: usize, hook: &'a (dyn Fn(usize) + Sync)) -> Self {
        Progress {
            done: AtomicUsize::new(0),
            interval: interval.max(1),
            hook: Some(hook),
        }
    }

    pub fn silent() -> Self {
        Progress {
            done: AtomicUsize::new(0),
            interval: usize::MAX,
            hook: None,
        }
    }

    pub fn tick(&self) {
        let n = self.done.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(hook) = self.hook {
            if n.is_multiple_of(self.interval) {
                hook(n);
            }
        }
    }

    pub fn count(&self) -> usize {
        self.done.load(Ordering::Relaxed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Mutex;

    #[test]
    fn order_is_preserved_for_any_job_count() {
        let items: Vec<u64> = (0..1000).collect();
        let expect: Vec<u64> = items.iter().map(|x| x * x).collect();
        for jobs in [Jobs::sequential(), Jobs::new(2), Jobs::new(4), Jobs::all()] {
            assert_eq!(map_ordered(&items, jobs, |x| x * x), expect);
        }
    }

    #[test]
    fn zero_jobs_means_all() {
        assert_eq!(Jobs::new(0), Jobs::all());
    }

    #[test]
    fn progress_fires_at_interval() {
        let seen = Mutex::new(Vec::new());
        let hook = |n: usize| seen.lock().unwrap().push(n);
        let progress = Progress::new(10, &hook);
        for _ in 0..35 {
            progress.tick();
        }
        assert_eq!(progress.count(), 35);
        assert_eq!(*seen.lock().unwrap(), vec![10, 20, 30]);
    }
}
