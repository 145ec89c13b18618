use fixdist_core::exec::TrialRunner;
use rayon::prelude::*;

/// Runs trials on a dedicated rayon pool. Results come back in index order,
/// so they do not depend on the number of threads.
#[derive(Debug)]
pub struct Rayon {
    pool: rayon::ThreadPool,
}

impl Rayon {
    /// `threads = 0` uses one thread per available core.
    pub fn new(threads: usize) -> std::io::Result<Self> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(std::io::Error::other)?;
        Ok(Rayon { pool })
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl TrialRunner for Rayon {
    fn map<T, F>(&self, count: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        self.pool.install(|| (0..count).into_par_iter().map(f).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fixdist_core::exec::Sequential;

    #[test]
    fn matches_sequential_order() {
        let f = |i: u64| fixdist_core::stream::derive(3, i);
        for threads in [1, 3, 8] {
            assert_eq!(Rayon::new(threads).unwrap().map(1000, f), Sequential.map(1000, f));
        }
    }
}
