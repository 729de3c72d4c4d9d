//! Execution strategy for the data-parallel inner loops.
//!
//! Heavy loops (quadrature batches, verification waves, pairwise overlap
//! scans) run through [`map_collect`], which preserves input order so that
//! results are bitwise independent of the scheduling choice.  The `parallel`
//! feature enables the rayon backend; the sequential path is always
//! available and is the reference semantics.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    #[cfg(feature = "parallel")]
    Rayon,
}

impl Default for Parallelism {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        {
            Parallelism::Rayon
        }
        #[cfg(not(feature = "parallel"))]
        {
            Parallelism::Sequential
        }
    }
}

/// Apply `f` to every item, returning results in input order.
pub fn map_collect<T, U, F>(mode: Parallelism, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match mode {
        Parallelism::Sequential => items.iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        Parallelism::Rayon => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
    }
}

/// Apply `f` to every index in `0..n`, returning results in index order.
pub fn map_indices<U, F>(mode: Parallelism, n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    match mode {
        Parallelism::Sequential => (0..n).map(f).collect(),
        #[cfg(feature = "parallel")]
        Parallelism::Rayon => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(f).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequential_and_parallel_agree() {
        let items: Vec<u64> = (0..1000).collect();
        let seq = map_collect(Parallelism::Sequential, &items, |&x| x * x + 1);
        #[cfg(feature = "parallel")]
        {
            let par = map_collect(Parallelism::Rayon, &items, |&x| x * x + 1);
            assert_eq!(seq, par);
        }
        assert_eq!(seq[10], 101);
    }
}
