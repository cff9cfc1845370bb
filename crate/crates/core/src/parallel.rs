//! Reductions whose result is independent of the thread count: inputs are
//! cut into fixed-size chunks, each chunk is summed sequentially in input
//! order, and the chunk totals are combined by a fixed pairwise tree.

use rayon::prelude::*;

pub const CHUNK: usize = 4096;

fn tree_sum(v: &[f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1 => v[0],
        n => {
            let (l, r) = v.split_at(n / 2);
            tree_sum(l) + tree_sum(r)
        }
    }
}

pub fn ordered_sum<T, F>(items: &[T], f: F) -> f64
where
    T: Sync,
    F: Fn(&T) -> f64 + Sync,
{
    let partials: Vec<f64> = items
        .par_chunks(CHUNK)
        .map(|chunk| chunk.iter().fold(0.0, |acc, it| acc + f(it)))
        .collect();
    tree_sum(&partials)
}

/// `width` simultaneous sums; `f` adds one item's contributions into the
/// accumulator slice.
pub fn ordered_sums<T, F>(items: &[T], width: usize, f: F) -> Vec<f64>
where
    T: Sync,
    F: Fn(&T, &mut [f64]) + Sync,
{
    let partials: Vec<Vec<f64>> = items
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut acc = vec![0.0; width];
            for it in chunk {
                f(it, &mut acc);
            }
            acc
        })
        .collect();
    (0..width)
        .map(|k| {
            let column: Vec<f64> = partials.iter().map(|p| p[k]).collect();
            tree_sum(&column)
        })
        .collect()
}
