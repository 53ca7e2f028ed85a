//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) the [`Execution::Parallel`] mode
//! dispatches to rayon; without it both modes run on the calling thread.
//! Results are identical in either mode: every element is computed by the
//! same pure function and collected in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// `true` when this mode actually fans out across threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Maps `f` over `items`, preserving order.
pub fn map<T, U, F>(mode: Execution, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = mode;
    items.iter().map(f).collect()
}

/// Fallible map; the first error in input order wins.
pub fn try_map<T, U, E, F>(mode: Execution, items: &[T], f: F) -> Result<Vec<U>, E>
where
    T: Sync,
    U: Send,
    E: Send,
    F: Fn(&T) -> Result<U, E> + Sync + Send,
{
    map(mode, items, f).into_iter().collect()
}

/// Runs two closures, concurrently when parallel.
pub fn join<A, B, RA, RB>(mode: Execution, a: A, b: B) -> (RA, RB)
where
    A: FnOnce() -> RA + Send,
    B: FnOnce() -> RB + Send,
    RA: Send,
    RB: Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        return rayon::join(a, b);
    }
    let _ = mode;
    (a(), b())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let xs: Vec<f64> = (0..1000).map(|k| k as f64 * 0.01).collect();
        let seq = map(Execution::Sequential, &xs, |x| x.sin() * x.exp());
        let par = map(Execution::Parallel, &xs, |x| x.sin() * x.exp());
        assert_eq!(seq, par);
    }

    #[test]
    fn try_map_reports_first_error() {
        let xs = [1, 2, 3, 4];
        let r: Result<Vec<i32>, i32> = try_map(Execution::Parallel, &xs, |&x| {
            if x >= 3 {
                Err(x)
            } else {
                Ok(x)
            }
        });
        assert_eq!(r, Err(3));
    }
}
