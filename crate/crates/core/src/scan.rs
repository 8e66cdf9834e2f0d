//! Blocked parallel exclusive prefix sums.

use rayon::prelude::*;

const MIN_BLOCK: usize = 4096;

fn block_len(n: usize) -> usize {
    let parts = rayon::current_num_threads() * 4;
    n.div_ceil(parts).max(MIN_BLOCK)
}

/// Exclusive prefix sum of `f(i)` over `0..n`, returned with the total
/// appended, so `out.len() == n + 1` and `out[n]` is the sum.
pub fn exclusive_scan_with<F>(n: usize, f: F) -> Vec<usize>
where
    F: Fn(usize) -> usize + Sync,
{
    let block = block_len(n);
    let mut out = vec![0usize; n + 1];
    let sums: Vec<usize> = (0..n.div_ceil(block))
        .into_par_iter()
        .map(|b| (b * block..((b + 1) * block).min(n)).map(&f).sum())
        .collect();
    let mut carry = Vec::with_capacity(sums.len());
    let mut acc = 0usize;
    for s in &sums {
        carry.push(acc);
        acc += s;
    }
    out[n] = acc;
    out[..n]
        .par_chunks_mut(block)
        .zip(carry.par_iter())
        .enumerate()
        .for_each(|(b, (chunk, &base))| {
            let mut acc = base;
            for (i, slot) in chunk.iter_mut().enumerate() {
                *slot = acc;
                acc += f(b * block + i);
            }
        });
    out
}

pub fn exclusive_scan(values: &[usize]) -> Vec<usize> {
    exclusive_scan_with(values.len(), |i| values[i])
}

/// Indices `i < n` with `keep(i)`, in order. `prefix` must be the exclusive
/// scan of `keep` as produced by [`exclusive_scan_with`].
pub fn pack_indices<F>(n: usize, prefix: &[usize], keep: F) -> Vec<u32>
where
    F: Fn(usize) -> bool + Sync,
{
    let mut out = vec![0u32; prefix[n]];
    let block = block_len(n);
    let bounds: Vec<usize> = (0..n).step_by(block).chain(std::iter::once(n)).collect();
    let mut pieces = Vec::with_capacity(bounds.len());
    let mut rest = out.as_mut_slice();
    for w in bounds.windows(2) {
        let (head, tail) = rest.split_at_mut(prefix[w[1]] - prefix[w[0]]);
        pieces.push((w[0]..w[1], head));
        rest = tail;
    }
    pieces.into_par_iter().for_each(|(range, piece)| {
        let mut slots = piece.iter_mut();
        for i in range.filter(|&i| keep(i)) {
            *slots.next().expect("prefix disagrees with keep") = i as u32;
        }
    });
    out
}

/// Calls `fill(i, segment_i)` in parallel for the disjoint segments
/// `data[offsets[i]..offsets[i + 1]]`.
pub fn par_fill_segments<T, F>(data: &mut [T], offsets: &[usize], fill: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync,
{
    let n = offsets.len() - 1;
    let block = block_len(n).min(1 << 14);
    let mut pieces = Vec::with_capacity(n.div_ceil(block.max(1)));
    let mut rest = &mut data[offsets[0]..offsets[n]];
    let mut start = 0;
    while start < n {
        let end = (start + block).min(n);
        let (head, tail) = rest.split_at_mut(offsets[end] - offsets[start]);
        pieces.push((start, end, head));
        rest = tail;
        start = end;
    }
    pieces.into_par_iter().for_each(|(start, end, mut piece)| {
        for i in start..end {
            let (seg, tail) = piece.split_at_mut(offsets[i + 1] - offsets[i]);
            fill(i, seg);
            piece = tail;
        }
    });
}
