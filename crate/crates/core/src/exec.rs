//! Data-parallel helpers over index ranges.
//!
//! Every enumerative check in the crate goes through [`Execution`], so the
//! same code path runs either on the rayon pool or on the calling thread.
//! Results never depend on the execution mode.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// True when `f` holds for every index in `0..n`.
    pub fn all<F>(self, n: usize, f: F) -> bool
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => (0..n).into_par_iter().all(f),
            _ => (0..n).all(f),
        }
    }

    /// Smallest index in `0..n` satisfying `f`.
    pub fn find_first<F>(self, n: usize, f: F) -> Option<usize>
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => (0..n).into_par_iter().find_first(|&i| f(i)),
            _ => (0..n).find(|&i| f(i)),
        }
    }

    /// Smallest index whose `f` yields `Some`, with that value.
    pub fn find_map_first<T, F>(self, n: usize, f: F) -> Option<T>
    where
        T: Send,
        F: Fn(usize) -> Option<T> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => (0..n).into_par_iter().find_map_first(f),
            _ => (0..n).find_map(f),
        }
    }

    pub fn count<F>(self, n: usize, f: F) -> usize
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => (0..n).into_par_iter().filter(|&i| f(i)).count(),
            _ => (0..n).filter(|&i| f(i)).count(),
        }
    }

    /// `f` applied to `0..n`, in index order.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => (0..n).into_par_iter().map(f).collect(),
            _ => (0..n).map(f).collect(),
        }
    }

    /// Indices in `0..n` satisfying `f`, ascending.
    pub fn filter<F>(self, n: usize, f: F) -> Vec<usize>
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => (0..n).into_par_iter().filter(|&i| f(i)).collect(),
            _ => (0..n).filter(|&i| f(i)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        for mode in [Execution::Sequential, Execution::Parallel] {
            assert!(mode.all(100, |i| i < 100));
            assert_eq!(mode.find_first(100, |i| i * i > 50), Some(8));
            assert_eq!(mode.count(10, |i| i % 3 == 0), 4);
            assert_eq!(mode.map(4, |i| i * 2), vec![0, 2, 4, 6]);
            assert_eq!(mode.filter(10, |i| i % 4 == 1), vec![1, 5, 9]);
            assert_eq!(mode.find_map_first(10, |i| (i > 6).then_some(i * 10)), Some(70));
        }
    }
}
