//! Worker-pool plumbing. Results never depend on the worker count: work is
//! split into a fixed list of tasks whose outputs are merged in task order.

use rayon::prelude::*;

/// Runs `f` on every task with `workers` threads (0 = rayon default) and
/// returns the outputs in task order.
pub(crate) fn map_tasks<T, R, F>(workers: usize, tasks: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Send + Sync,
{
    if workers == 1 {
        return tasks.into_iter().map(f).collect();
    }
    let run = || tasks.into_par_iter().map(&f).collect();
    if workers == 0 {
        return run();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    }
}
