//! Thread-count control for the parallel parts of the crate.

use std::sync::OnceLock;

use rayon::{ThreadPool, ThreadPoolBuilder};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "GB2KIT_THREADS";

fn pool() -> &'static Option<ThreadPool> {
    static POOL: OnceLock<Option<ThreadPool>> = OnceLock::new();
    POOL.get_or_init(|| {
        let cap = std::env::var(THREADS_ENV)
            .ok()?
            .trim()
            .parse::<usize>()
            .ok()?;
        ThreadPoolBuilder::new()
            .num_threads(cap.max(1))
            .build()
            .ok()
    })
}

/// Runs `op` on a pool limited to `GB2KIT_THREADS` workers when that
/// variable holds a positive integer, otherwise on rayon's global pool.
pub fn install<R: Send>(op: impl FnOnce() -> R + Send) -> R {
    match pool() {
        Some(p) => p.install(op),
        None => op(),
    }
}

/// Number of worker threads `install` will use.
pub fn thread_count() -> usize {
    match pool() {
        Some(p) => p.current_num_threads(),
        None => rayon::current_num_threads(),
    }
}
