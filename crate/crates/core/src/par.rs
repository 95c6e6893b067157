use std::ops::Range;
use std::thread;

/// Splits `0..units` into at most `workers` contiguous ranges and runs `f` on
/// each in its own scoped thread. Results come back in range order, so any
/// order-sensitive reduction over them is independent of `workers`.
pub(crate) fn map_ranges<T, F>(units: usize, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<usize>) -> T + Sync,
{
    let workers = workers.clamp(1, units.max(1));
    if workers == 1 {
        return vec![f(0..units)];
    }
    let chunk = units.div_ceil(workers);
    let f = &f;
    thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let start = (w * chunk).min(units);
                let end = ((w + 1) * chunk).min(units);
                scope.spawn(move || f(start..end))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

/// Default worker count: the machine's available parallelism.
pub fn default_workers() -> usize {
    thread::available_parallelism().map_or(1, |n| n.get())
}
