//! Deterministic fan-out over index ranges.

use std::ops::Range;

/// Worker count: WMK_THREADS if set to a positive integer, else the
/// available parallelism.
pub fn worker_count() -> usize {
    std::env::var("WMK_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Splits 0..len into contiguous chunks, runs `f` on each concurrently and
/// returns the results in chunk order.
pub fn map_chunks<T, F>(len: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<u64>) -> T + Sync,
{
    let workers = (worker_count() as u64).clamp(1, len.max(1));
    let chunk = len.div_ceil(workers).max(1);
    let ranges: Vec<Range<u64>> =
        (0..workers).map(|w| (w * chunk).min(len)..((w + 1) * chunk).min(len)).collect();
    if ranges.len() == 1 {
        return vec![f(ranges[0].clone())];
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = ranges.into_iter().map(|r| scope.spawn(|| f(r))).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunks_cover_range() {
        let sums = map_chunks(1000, |r| r.sum::<u64>());
        assert_eq!(sums.iter().sum::<u64>(), 999 * 1000 / 2);
        assert_eq!(map_chunks(0, |r| r.count()), vec![0]);
    }
}
