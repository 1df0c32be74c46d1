//! Worker pool sized by `CHARSUM_THREADS`.
//!
//! Results never depend on the worker count: every parallel path merges
//! integer accumulators or collects in index order.

use std::sync::OnceLock;

use rayon::{ThreadPool, ThreadPoolBuilder};

use crate::error::{Error, Result};

pub const THREADS_ENV: &str = "CHARSUM_THREADS";

/// The requested worker count, `None` when unset.
pub fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(raw) => parse_threads(&raw).map(Some),
    }
}

pub fn parse_threads(raw: &str) -> Result<usize> {
    match raw.trim().parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(Error::Parse(format!(
            "{THREADS_ENV} must be a positive integer, got {raw:?}"
        ))),
    }
}

fn pool() -> Option<&'static ThreadPool> {
    static POOL: OnceLock<Option<ThreadPool>> = OnceLock::new();
    POOL.get_or_init(|| {
        let threads = threads_from_env().ok().flatten()?;
        ThreadPoolBuilder::new().num_threads(threads).build().ok()
    })
    .as_ref()
}

/// Runs `f` on the sized pool, or on rayon's global pool when unset.
pub fn install<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    match pool() {
        Some(p) => p.install(f),
        None => f(),
    }
}
