//! Data-parallel column iteration with a sequential fallback.
//!
//! Hot loops in this crate are written per output column so that each
//! element is produced by exactly one task with a fixed summation order;
//! results are therefore bit-identical whether they run on the rayon pool,
//! sequentially below the work threshold, or with the `parallel` feature
//! disabled.

use std::sync::atomic::{AtomicBool, Ordering};

static FORCE_SEQUENTIAL: AtomicBool = AtomicBool::new(false);

/// Force all column loops onto the sequential path at runtime.
///
/// Intended for benchmarks and for tests that assert the parallel and
/// sequential paths agree bit-for-bit.
pub fn force_sequential(on: bool) {
    FORCE_SEQUENTIAL.store(on, Ordering::Relaxed);
}

pub fn sequential_forced() -> bool {
    FORCE_SEQUENTIAL.load(Ordering::Relaxed)
}

/// Below this many f64 multiply-adds the rayon dispatch overhead dominates.
const MIN_PAR_WORK: usize = 64 * 1024;

/// Runs `f(col_index, column_slice)` over the `cols` columns of a
/// column-major buffer (`col_len` rows each, starting at `col0`).
pub(crate) fn for_each_col_mut<F>(
    data: &mut [f64],
    col_len: usize,
    col0: usize,
    cols: usize,
    work_per_col: usize,
    f: F,
) where
    F: Fn(usize, &mut [f64]) + Sync + Send,
{
    let slice = &mut data[col0 * col_len..(col0 + cols) * col_len];
    #[cfg(feature = "parallel")]
    {
        if !sequential_forced() && cols * work_per_col >= MIN_PAR_WORK && cols > 1 {
            use rayon::prelude::*;
            slice
                .par_chunks_mut(col_len)
                .enumerate()
                .for_each(|(j, col)| f(col0 + j, col));
            return;
        }
    }
    let _ = work_per_col;
    for (j, col) in slice.chunks_mut(col_len).enumerate() {
        f(col0 + j, col);
    }
}

/// Fills `out[i] = f(i)` for `i < out.len()`, in parallel when worthwhile.
pub(crate) fn fill_indexed<F>(out: &mut [f64], work_per_item: usize, f: F)
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if !sequential_forced() && out.len() * work_per_item >= MIN_PAR_WORK && out.len() > 1 {
            use rayon::prelude::*;
            out.par_iter_mut().enumerate().for_each(|(i, v)| *v = f(i));
            return;
        }
    }
    let _ = work_per_item;
    for (i, v) in out.iter_mut().enumerate() {
        *v = f(i);
    }
}
