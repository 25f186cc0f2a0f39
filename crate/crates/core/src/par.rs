//! Ordered parallel map over independent work items.

use std::thread;

/// Worker cap from `KRONWEBS_THREADS` (at least 1), else the available parallelism.
pub fn default_threads() -> usize {
    std::env::var("KRONWEBS_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .map(|n| n.max(1))
        .unwrap_or_else(|| thread::available_parallelism().map_or(1, usize::from))
}

/// `items.iter().map(f)` using up to `threads` workers; output order matches input.
pub fn par_map<T, R, F>(items: &[T], threads: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let threads = threads.clamp(1, items.len().max(1));
    if threads == 1 {
        return items.iter().map(f).collect();
    }
    let f = &f;
    let mut slots: Vec<Option<R>> = (0..items.len()).map(|_| None).collect();
    thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|w| {
                s.spawn(move || {
                    (w..items.len())
                        .step_by(threads)
                        .map(|i| (i, f(&items[i])))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("worker panicked") {
                slots[i] = Some(r);
            }
        }
    });
    slots.into_iter().map(|r| r.expect("every slot filled")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let xs: Vec<u64> = (0..37).collect();
        let seq: Vec<u64> = xs.iter().map(|x| x * x).collect();
        for t in [1, 2, 5, 64] {
            assert_eq!(par_map(&xs, t, |x| x * x), seq);
        }
        assert!(par_map(&[] as &[u64], 4, |x| *x).is_empty());
    }
}
