//! Order-preserving batch evaluation.
//!
//! With the `parallel` feature the records are spread over a rayon pool;
//! without it (or with one thread) they are processed in sequence. Output
//! order always matches input order, so both paths give identical results.

/// How many worker threads to use. `None` lets rayon decide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BatchConfig {
    pub threads: Option<usize>,
}

impl BatchConfig {
    pub const SEQUENTIAL: BatchConfig = BatchConfig { threads: Some(1) };

    pub fn with_threads(threads: usize) -> Self {
        BatchConfig {
            threads: Some(threads.max(1)),
        }
    }
}

pub fn map_sequential<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_records<T, R, F>(items: &[T], config: BatchConfig, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    match config.threads {
        Some(1) => map_sequential(items, f),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
            Err(err) => {
                log::warn!("could not build a {n}-thread pool ({err}); running sequentially");
                map_sequential(items, f)
            }
        },
        None => items.par_iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn map_records<T, R, F>(items: &[T], _config: BatchConfig, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    map_sequential(items, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let items: Vec<u64> = (0..1000).collect();
        let squares = map_records(&items, BatchConfig::with_threads(4), |x| x * x);
        assert_eq!(squares, map_sequential(&items, |x| x * x));
        assert_eq!(
            map_records(&items, BatchConfig::default(), |x| x + 1)[999],
            1000
        );
    }
}
