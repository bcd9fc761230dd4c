//! Deterministic enumeration of the k-dimensional subcubes of `Q_n`:
//! star masks in increasing integer order, fixed values in increasing order
//! within each mask. Every consumer that reports a "first" counterexample
//! refers to this order.

use super::Subcube;
use crate::bits::{self, MaskCombinations};

/// Number of k-dimensional subcubes of `Q_n`: `C(n, n-k) * 2^(n-k)`.
pub fn subcube_count(n: u32, k: u32) -> u128 {
    assert!(k <= n && n <= 63);
    bits::binomial(n as u64, (n - k) as u64) << (n - k)
}

/// Streaming iterator over all k-subcubes of `Q_n` in canonical order.
pub struct SubcubeIter {
    n: u32,
    masks: MaskCombinations,
    cur_mask: Option<u64>,
    nonstar: u64,
    fixed_index: u64,
    fixed_limit: u64,
}

impl SubcubeIter {
    pub fn new(n: u32, k: u32) -> SubcubeIter {
        assert!(k <= n && (1..=63).contains(&n));
        let mut masks = MaskCombinations::new(n, k);
        let cur_mask = masks.next();
        let nonstar = cur_mask.map_or(0, |m| bits::mask(n) & !m);
        SubcubeIter {
            n,
            masks,
            cur_mask,
            nonstar,
            fixed_index: 0,
            fixed_limit: 1u64 << (n - k),
        }
    }
}

impl Iterator for SubcubeIter {
    type Item = Subcube;

    fn next(&mut self) -> Option<Subcube> {
        let mask = self.cur_mask?;
        let fixed = bits::scatter(self.fixed_index, self.nonstar);
        let sub = Subcube::new_unchecked(self.n, mask, fixed);
        self.fixed_index += 1;
        if self.fixed_index == self.fixed_limit {
            self.fixed_index = 0;
            self.cur_mask = self.masks.next();
            if let Some(m) = self.cur_mask {
                self.nonstar = bits::mask(self.n) & !m;
            }
        }
        Some(sub)
    }
}

/// The star masks of width `n` with popcount `k`, for callers that shard
/// enumeration by mask (each mask owns `2^(n-k)` subcubes).
pub fn star_masks(n: u32, k: u32) -> Vec<u64> {
    assert!(k <= n && (1..=63).contains(&n));
    MaskCombinations::new(n, k).collect()
}

/// All subcubes with the given star mask, in increasing fixed-value order.
pub fn subcubes_of_mask(n: u32, mask: u64) -> impl Iterator<Item = Subcube> {
    let nonstar = bits::mask(n) & !mask;
    let limit = 1u64 << nonstar.count_ones();
    (0..limit).map(move |i| Subcube::new_unchecked(n, mask, bits::scatter(i, nonstar)))
}
