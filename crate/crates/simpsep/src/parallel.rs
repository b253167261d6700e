//! Per-degree work spread over scoped threads.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use simpsep_core::separation::{DegreeEvidence, ProbeReport, Setup};
use simpsep_core::Q;

pub fn default_jobs() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// Runs `work(i)` for `i < count` on up to `jobs` threads, results in order.
pub fn map_indexed<T, F>(count: usize, jobs: usize, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let next = AtomicUsize::new(0);
    let out: Mutex<Vec<Option<T>>> = Mutex::new((0..count).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..jobs.max(1).min(count.max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= count {
                    break;
                }
                let v = work(i);
                out.lock().unwrap()[i] = Some(v);
            });
        }
    });
    out.into_inner().unwrap().into_iter().map(|v| v.expect("every index is processed")).collect()
}

pub fn analyze(setup: &Setup, jobs: usize) -> simpsep_core::Result<Vec<DegreeEvidence>> {
    map_indexed(setup.kmax + 1, jobs, |k| setup.analyze_degree(k)).into_iter().collect()
}

pub fn probe_all(setup: &Setup, count: usize, eta: &Q, seed: u64, jobs: usize) -> simpsep_core::Result<Vec<ProbeReport>> {
    map_indexed(setup.kmax + 1, jobs, |k| setup.probe(k, count, eta, seed)).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_order() {
        let v = map_indexed(100, 7, |i| i * i);
        assert_eq!(v, (0..100).map(|i| i * i).collect::<Vec<_>>());
        assert!(map_indexed(0, 4, |i| i).is_empty());
    }
}
