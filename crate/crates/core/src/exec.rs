//! Sequential or data-parallel evaluation of verification sweeps.
//!
//! Results always come back in input order, so reports do not depend on the
//! strategy. Without the `parallel` feature, [`Strategy::Parallel`] runs
//! sequentially.

use std::ops::Range;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

pub fn map<T, R, F>(strategy: Strategy, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

pub fn filter_map_range<R, F>(strategy: Strategy, range: Range<u64>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64) -> Option<R> + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => {
            use rayon::prelude::*;
            range.into_par_iter().filter_map(f).collect()
        }
        _ => range.filter_map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree_and_keep_order() {
        let xs: Vec<u64> = (0..1000).collect();
        let seq = map(Strategy::Sequential, &xs, |x| x * x);
        let par = map(Strategy::Parallel, &xs, |x| x * x);
        assert_eq!(seq, par);
        let odd = |x: u64| (x % 2 == 1).then_some(x);
        assert_eq!(
            filter_map_range(Strategy::Sequential, 0..500, odd),
            filter_map_range(Strategy::Parallel, 0..500, odd)
        );
    }
}
