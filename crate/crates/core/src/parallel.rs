//! Worker pool sizing.

use rayon::{ThreadPool, ThreadPoolBuildError, ThreadPoolBuilder};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "ATOMFORGE_THREADS";

/// Parses a thread cap; `None` when unset, `Err` when not a positive integer.
pub fn parse_thread_limit(value: Option<&str>) -> Result<Option<usize>, String> {
    match value {
        None => Ok(None),
        Some(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(format!(
                "{THREADS_ENV} must be a positive integer, got `{v}`"
            )),
        },
    }
}

pub fn thread_limit_from_env() -> Result<Option<usize>, String> {
    parse_thread_limit(std::env::var(THREADS_ENV).ok().as_deref())
}

/// A pool with `limit` workers, or one per available core.
pub fn build_pool(limit: Option<usize>) -> Result<ThreadPool, ThreadPoolBuildError> {
    let mut builder = ThreadPoolBuilder::new();
    if let Some(n) = limit {
        builder = builder.num_threads(n);
    }
    builder.build()
}
