//! Execution policy and resource caps.
//!
//! Data-parallel loops go through [`Exec::map`]. With the `parallel` feature
//! disabled every policy runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    pub fn from_workers(workers: usize) -> Self {
        if workers <= 1 {
            Exec::Sequential
        } else {
            Exec::Parallel
        }
    }

    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Order-preserving map over a slice.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Order-preserving map over `0..n`.
    pub fn map_range<R, F>(self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }

    /// Run `f` on a pool of `workers` threads (or inline when sequential).
    pub fn install<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> R {
        #[cfg(feature = "parallel")]
        if workers > 1 {
            if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
                return pool.install(f);
            }
        }
        let _ = workers;
        f()
    }
}

pub const DEFAULT_ELEMENT_CAP: usize = 200_000;
pub const DEFAULT_SUBGROUP_CAP: usize = 1_000_000;
pub const ELEMENT_CAP_ENV: &str = "HGS_ELEMENT_CAP";
pub const SUBGROUP_CAP_ENV: &str = "HGS_SUBGROUP_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest group that may be materialised.
    pub elements: usize,
    /// Largest subgroup list that may be enumerated.
    pub subgroups: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            elements: DEFAULT_ELEMENT_CAP,
            subgroups: DEFAULT_SUBGROUP_CAP,
        }
    }
}

impl Caps {
    /// Defaults, overridden by `HGS_ELEMENT_CAP` / `HGS_SUBGROUP_CAP` when set.
    pub fn from_env() -> Self {
        let read = |key: &str, default: usize| {
            std::env::var(key)
                .ok()
                .and_then(|v| v.trim().parse().ok())
                .filter(|&v: &usize| v > 0)
                .unwrap_or(default)
        };
        Caps {
            elements: read(ELEMENT_CAP_ENV, DEFAULT_ELEMENT_CAP),
            subgroups: read(SUBGROUP_CAP_ENV, DEFAULT_SUBGROUP_CAP),
        }
    }
}
