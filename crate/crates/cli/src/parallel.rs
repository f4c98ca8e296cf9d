//! Enumeration split over scoped threads.

use std::thread;

use wpos_core::equilibria::{check_enumerable, enumerate_range, finish, AnalysisReport, RangeSummary};
use wpos_core::{AnalysisError, Game};

/// Below this many profiles a single thread is used.
const MIN_PARALLEL: u128 = 1 << 12;

/// Same result as `enumerate_analysis`, computed on up to `threads` workers.
/// Ranges are merged in rank order, so ties resolve exactly as in the
/// sequential scan and the output does not depend on the thread count.
pub fn enumerate_parallel(game: &Game, alpha: f64, cap: u64, threads: usize) -> Result<AnalysisReport, AnalysisError> {
    let count = check_enumerable(game, alpha, cap)?;
    let threads = threads.max(1) as u128;
    if threads == 1 || count < MIN_PARALLEL {
        return Ok(finish(alpha, enumerate_range(game, alpha, 0, count)));
    }
    let chunk = count.div_ceil(threads);
    let parts: Vec<RangeSummary> = thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|k| k * chunk)
            .take_while(|&start| start < count)
            .map(|start| {
                let len = chunk.min(count - start);
                s.spawn(move || enumerate_range(game, alpha, start, len))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("enumeration worker panicked")).collect()
    });
    let summary = parts.into_iter().reduce(RangeSummary::merge).expect("at least one range");
    Ok(finish(alpha, summary))
}

pub fn default_threads() -> usize {
    thread::available_parallelism().map_or(1, |n| n.get())
}
