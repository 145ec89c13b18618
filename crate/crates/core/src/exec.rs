//! Execution of independent trials.

use alloc::vec::Vec;

/// Maps a function over trial indices `0..count` and returns the results in
/// index order. Implementations may run trials concurrently; they must not
/// change the results.
pub trait TrialRunner: Sync {
    fn map<T, F>(&self, count: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl TrialRunner for Sequential {
    fn map<T, F>(&self, count: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        (0..count).map(f).collect()
    }
}
