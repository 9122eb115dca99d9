//! Deterministic fan-out over a fixed work list.
//!
//! Results are assembled by item index, so the output is identical for any
//! worker count. Workers pull items from a shared counter; there is no
//! other shared state.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

/// Apply `f` to every item using up to `workers` threads, preserving input
/// order in the output. `workers <= 1` runs inline.
pub fn ordered_map<T, R, F>(items: &[T], workers: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    if workers <= 1 || items.len() <= 1 {
        return items.iter().map(&f).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..workers.min(items.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                slots.lock().unwrap()[i] = Some(r);
            });
        }
    });
    slots
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|slot| slot.expect("every slot filled"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_order_for_any_worker_count() {
        let items: Vec<u64> = (0..100).collect();
        let serial = ordered_map(&items, 1, |&x| x * x);
        for workers in [2, 3, 8] {
            assert_eq!(ordered_map(&items, workers, |&x| x * x), serial);
        }
    }

    #[test]
    fn empty_input() {
        let items: Vec<u64> = Vec::new();
        assert!(ordered_map(&items, 4, |&x| x).is_empty());
    }
}
