//! Execution mode for the data-parallel inner loops.
//!
//! Every exhaustive sweep in the crate (witness searches, homomorphism and
//! associativity checks, block assembly) goes through [`Exec`]. With the
//! `parallel` feature the parallel mode is backed by rayon; without it both
//! modes run the same sequential loop. Results never depend on the mode:
//! searches return the least index that satisfies the predicate.

use std::ops::Range;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Least `i` in `range` with `pred(i)`.
    pub fn find_first<F>(self, range: Range<usize>, pred: F) -> Option<usize>
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                range.into_par_iter().find_first(|&i| pred(i))
            }
            _ => range.into_iter().find(|&i| pred(i)),
        }
    }

    /// Least `(i, value)` for which `f(i)` is `Some`.
    pub fn find_map_first<T, F>(self, range: Range<usize>, f: F) -> Option<T>
    where
        T: Send,
        F: Fn(usize) -> Option<T> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                range.into_par_iter().find_map_first(f)
            }
            _ => range.into_iter().find_map(f),
        }
    }

    pub fn all<F>(self, range: Range<usize>, pred: F) -> bool
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        self.find_first(range, |i| !pred(i)).is_none()
    }

    pub fn count<F>(self, range: Range<usize>, pred: F) -> usize
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                range.into_par_iter().filter(|&i| pred(i)).count()
            }
            _ => range.into_iter().filter(|&i| pred(i)).count(),
        }
    }

    /// `f` applied to every index, results in index order.
    pub fn map<T, F>(self, range: Range<usize>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                range.into_par_iter().map(f).collect()
            }
            _ => range.into_iter().map(f).collect(),
        }
    }

    /// Parallel map over a slice, order preserved.
    pub fn map_slice<S, T, F>(self, items: &[S], f: F) -> Vec<T>
    where
        S: Sync,
        T: Send,
        F: Fn(&S) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            _ => items.iter().map(f).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert_eq!(exec.find_first(0..1000, |i| i * i > 500), Some(23));
            assert_eq!(exec.find_first(0..10, |_| false), None);
            assert_eq!(exec.count(0..100, |i| i % 3 == 0), 34);
            assert!(exec.all(0..50, |i| i < 50));
            assert_eq!(exec.map(0..5, |i| i * 2), vec![0, 2, 4, 6, 8]);
            assert_eq!(
                exec.find_map_first(0..100, |i| (i > 40 && i % 7 == 0).then_some(i * 10)),
                Some(420)
            );
        }
    }
}
