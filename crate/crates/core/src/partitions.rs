//! Indexed partitions of the even- and odd-parity vertex classes of `Q_n`.
//!
//! The rotating constructions select a v-bin strategy from the sum of cell
//! labels over the other bins, so they need partitions of both parity
//! classes into `m` cells such that every subcube above a certain dimension
//! meets every cell. Two recursive constructions provide these:
//!
//! * [`half_plus1`]: partitions of the classes of `Q_{2^k}` into `2^k`
//!   cells, every subcube of dimension `2^(k-1) + 1` meets each cell;
//! * [`partition_even_odd`]: partitions of the classes of `Q_{c^n}` into
//!   `(2^(c-1))^n` cells, every subcube of dimension `c^n - c^(n-1) + 1`
//!   meets each cell.
//!
//! Cell labels are 0-based everywhere. Base cases order singleton cells by
//! the integer value of their element; the worked `Q(9,4)` rotation instead
//! indexes by lexicographic rank of the bitstring, exposed here as
//! [`IndexOrder::Lex`].

use std::sync::OnceLock;

use rayon::prelude::*;

use crate::bits;
use crate::cube::{star_masks, subcubes_of_mask, Parity, Subcube, Vertex};
use crate::error::{Error, Result};

/// How singleton base cells are ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexOrder {
    /// By the integer value of the vertex word (coordinate 1 least
    /// significant).
    Value,
    /// By the lexicographic rank of the bitstring (coordinate 1 most
    /// significant), the indexing used in the worked rotation example.
    Lex,
}

#[derive(Debug, Clone)]
enum Labeling {
    HalfPlus1 { k: u32 },
    EvenOdd { c: u32, levels: u32 },
    Singletons { order: IndexOrder },
    Whole,
}

/// An indexed partition of one parity class of `Q_n`, with the subcube
/// dimension at which every cell is guaranteed hit.
#[derive(Debug)]
pub struct PartitionFamily {
    n: u32,
    side: Parity,
    cell_count: u64,
    hit_dimension: u32,
    labeling: Labeling,
    cache: OnceLock<Vec<u32>>,
}

impl Clone for PartitionFamily {
    fn clone(&self) -> Self {
        PartitionFamily {
            n: self.n,
            side: self.side,
            cell_count: self.cell_count,
            hit_dimension: self.hit_dimension,
            labeling: self.labeling.clone(),
            cache: OnceLock::new(),
        }
    }
}

/// Dimension cap for materializing label tables and cell lists.
const CACHE_MAX_DIM: u32 = 24;

/// Count of same-parity values below `x` among `n`-bit words, i.e. the rank
/// of `x` within its parity class under integer order.
fn parity_rank(x: u64, n: u32) -> u64 {
    let target = x.count_ones() & 1;
    let mut count = 0u64;
    let mut prefix_parity = 0u32;
    for i in (0..n).rev() {
        if x >> i & 1 == 1 {
            if i >= 1 {
                count += 1u64 << (i - 1);
            } else if prefix_parity == target {
                count += 1;
            }
            prefix_parity ^= 1;
        }
    }
    count
}

/// Label of `bits` (width `2^k`) in the half-plus-one partition of its own
/// parity class. Even side: products of like-labeled halves summed mod m,
/// even-even blocks first; odd side: even-odd blocks first.
fn hp_label(bits: u64, k: u32) -> u64 {
    if k == 1 {
        // width 2, singleton cells in value order:
        // even 00,11 -> 0,1 ; odd 10,01 -> 0,1
        return match bits {
            0b00 | 0b01 => 0,
            _ => 1,
        };
    }
    let half_width = 1u32 << (k - 1);
    let m = 1u64 << (k - 1); // cells per side one level down
    let lo = bits & bits::mask(half_width);
    let hi = bits >> half_width;
    let (la, lb) = (hp_label(lo, k - 1), hp_label(hi, k - 1));
    let sum = (la + lb) % m;
    match (lo.count_ones() & 1, hi.count_ones() & 1) {
        (0, 0) => sum,     // even side, first block
        (1, 1) => m + sum, // even side, second block
        (0, 1) => sum,     // odd side, first block
        _ => m + sum,      // odd side, second block
    }
}

/// Label of `bits` (width `c^levels`) in the even/odd partition of its own
/// parity class: the rank of the per-block parity vector, then the sum of
/// block labels mod the cell count one level down.
fn eo_label(bits: u64, c: u32, levels: u32) -> u64 {
    if levels == 1 {
        return parity_rank(bits, c);
    }
    let block_width = (c as u64).pow(levels - 1) as u32;
    let m = (1u64 << (c - 1)).pow(levels - 1);
    let mut parity_vec = 0u64;
    let mut sum = 0u64;
    for j in 0..c {
        let block = (bits >> (j * block_width)) & bits::mask(block_width);
        parity_vec |= ((block.count_ones() & 1) as u64) << j;
        sum = (sum + eo_label(block, c, levels - 1)) % m;
    }
    parity_rank(parity_vec, c) * m + sum
}

impl PartitionFamily {
    fn build(
        n: u32,
        side: Parity,
        cell_count: u64,
        hit_dimension: u32,
        labeling: Labeling,
    ) -> PartitionFamily {
        PartitionFamily {
            n,
            side,
            cell_count,
            hit_dimension,
            labeling,
            cache: OnceLock::new(),
        }
    }

    /// The partition of one parity class of `Q_n` into singleton cells.
    /// Every cell is hit only by the whole cube, so `hit_dimension = n`.
    pub fn singletons(n: u32, side: Parity, order: IndexOrder) -> Result<PartitionFamily> {
        if n == 0 || n > 63 {
            return Err(Error::DimensionOutOfRange { n });
        }
        Ok(PartitionFamily::build(
            n,
            side,
            1u64 << (n - 1),
            n,
            Labeling::Singletons { order },
        ))
    }

    /// The one-cell partition (the whole parity class). Any subcube of
    /// dimension at least 1 contains vertices of both parities.
    pub fn whole_class(n: u32, side: Parity) -> Result<PartitionFamily> {
        if n == 0 || n > 63 {
            return Err(Error::DimensionOutOfRange { n });
        }
        Ok(PartitionFamily::build(n, side, 1, 1, Labeling::Whole))
    }

    pub fn dimension(&self) -> u32 {
        self.n
    }

    pub fn side(&self) -> Parity {
        self.side
    }

    pub fn cell_count(&self) -> u64 {
        self.cell_count
    }

    /// Subcube dimension at which every cell is guaranteed hit.
    pub fn hit_dimension(&self) -> u32 {
        self.hit_dimension
    }

    fn raw_label(&self, bits: u64) -> u64 {
        match &self.labeling {
            Labeling::HalfPlus1 { k } => hp_label(bits, *k),
            Labeling::Whole => 0,
            Labeling::EvenOdd { c, levels } => eo_label(bits, *c, *levels),
            Labeling::Singletons { order } => match order {
                IndexOrder::Value => parity_rank(bits, self.n),
                IndexOrder::Lex => parity_rank(bits.reverse_bits() >> (64 - self.n), self.n),
            },
        }
    }

    fn label_table(&self) -> Option<&Vec<u32>> {
        if self.n > CACHE_MAX_DIM || self.cell_count > u32::MAX as u64 {
            return None;
        }
        Some(self.cache.get_or_init(|| {
            (0..1u64 << self.n)
                .map(|bits| {
                    if Parity::of_bit(bits.count_ones() as u64) == self.side {
                        self.raw_label(bits) as u32
                    } else {
                        u32::MAX
                    }
                })
                .collect()
        }))
    }

    /// 0-based label of the cell containing `v`.
    pub fn index_of(&self, v: Vertex) -> Result<u64> {
        if v.dimension() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: v.dimension(),
            });
        }
        if v.parity() != self.side {
            return Err(Error::WrongParity {
                vertex: v.to_string(),
            });
        }
        Ok(self.raw_label(v.bits()))
    }

    /// Label lookup by raw bits for hot loops; caller guarantees membership
    /// in the partitioned class.
    #[inline]
    pub(crate) fn label_fast(&self, bits: u64, table: Option<&Vec<u32>>) -> u64 {
        match table {
            Some(t) => t[bits as usize] as u64,
            None => self.raw_label(bits),
        }
    }

    /// Materializes the cells as vertex lists, label order, value order
    /// within each cell.
    pub fn cells(&self) -> Result<Vec<Vec<Vertex>>> {
        if self.n > CACHE_MAX_DIM {
            return Err(Error::TooLargeToMaterialize {
                estimated: 1u128 << self.n,
                limit: 1 << CACHE_MAX_DIM,
            });
        }
        let mut cells = vec![Vec::new(); self.cell_count as usize];
        for bits in 0..1u64 << self.n {
            if Parity::of_bit(bits.count_ones() as u64) == self.side {
                cells[self.raw_label(bits) as usize].push(Vertex::new_unchecked(self.n, bits));
            }
        }
        Ok(cells)
    }

    /// Text export: one `label: bitstring` line per vertex, label order.
    pub fn render_text(&self) -> Result<String> {
        let mut out = String::new();
        for (label, cell) in self.cells()?.into_iter().enumerate() {
            for v in cell {
                out.push_str(&format!("{label}: {v}\n"));
            }
        }
        Ok(out)
    }
}

/// Partitions of the even and odd classes of `Q_{2^k}` into `2^k` cells
/// each, with every subcube of dimension `2^(k-1) + 1` meeting every cell.
pub fn half_plus1(k: u32) -> Result<(PartitionFamily, PartitionFamily)> {
    if k == 0 {
        return Err(Error::DimensionOutOfRange { n: 0 });
    }
    if k > 5 {
        // 2^k > 63
        return Err(Error::DimensionOutOfRange { n: 1 << k });
    }
    let n = 1u32 << k;
    let hit = (1u32 << (k - 1)) + 1;
    let make = |side| PartitionFamily::build(n, side, 1u64 << k, hit, Labeling::HalfPlus1 { k });
    Ok((make(Parity::Even), make(Parity::Odd)))
}

/// Partitions of the even and odd classes of `Q_{c^n}` into `(2^(c-1))^n`
/// cells each, with every subcube of dimension `c^n - c^(n-1) + 1` meeting
/// every cell.
pub fn partition_even_odd(c: u32, levels: u32) -> Result<(PartitionFamily, PartitionFamily)> {
    if c < 2 {
        return Err(Error::DimensionOutOfRange { n: c });
    }
    if levels == 0 {
        return Err(Error::DimensionOutOfRange { n: 0 });
    }
    let ambient = (c as u64).checked_pow(levels);
    let ambient = match ambient {
        Some(a) if a <= 63 => a as u32,
        _ => return Err(Error::DimensionOutOfRange { n: 64 }),
    };
    let cells = (1u64 << (c - 1)).pow(levels);
    let hit = ambient - (c as u64).pow(levels - 1) as u32 + 1;
    let make =
        |side| PartitionFamily::build(ambient, side, cells, hit, Labeling::EvenOdd { c, levels });
    Ok((make(Parity::Even), make(Parity::Odd)))
}

/// Checks that every `d`-subcube of `Q_n` contains at least one vertex of
/// every cell; returns the lexicographically first failing
/// `(subcube, cell)` pair in canonical enumeration order, or `None` when
/// the property holds. Parallel over star masks; the verdict and witness
/// are independent of thread count.
pub fn verify_hit_property(p: &PartitionFamily, d: u32) -> Option<(Subcube, u64)> {
    assert!(d <= p.n, "subcube dimension exceeds ambient dimension");
    assert!(
        p.cell_count <= 64,
        "hit check implemented for up to 64 cells"
    );
    let table = p.label_table();
    let full: u64 = if p.cell_count == 64 {
        u64::MAX
    } else {
        (1u64 << p.cell_count) - 1
    };
    let masks = star_masks(p.n, d);
    masks
        .par_iter()
        .filter_map(|&mask| {
            for s in subcubes_of_mask(p.n, mask) {
                let mut seen = 0u64;
                for v in s.vertices() {
                    if Parity::of_bit(v.bits().count_ones() as u64) == p.side {
                        seen |= 1 << p.label_fast(v.bits(), table);
                        if seen == full {
                            break;
                        }
                    }
                }
                if seen != full {
                    let missing = (!seen).trailing_zeros() as u64;
                    return Some((s, missing));
                }
            }
            None
        })
        .min_by_key(|(s, cell)| (s.star_mask(), s.fixed_bits(), *cell))
}

/// Double-coloring re-check: pairing even cell `l` with odd cell `l`, every
/// `d`-subcube must contain a vertex from both halves of every pair (hence
/// two from each combined class). Re-verification only; returns the first
/// failure as (subcube, pair label).
pub fn double_hit_check(
    even: &PartitionFamily,
    odd: &PartitionFamily,
    d: u32,
) -> Option<(Subcube, u64)> {
    assert_eq!(
        even.cell_count, odd.cell_count,
        "pairing needs equal counts"
    );
    assert_eq!(even.n, odd.n);
    match (verify_hit_property(even, d), verify_hit_property(odd, d)) {
        (None, None) => None,
        (Some(a), Some(b)) => Some(std::cmp::min_by_key(a, b, |(s, c)| {
            (s.star_mask(), s.fixed_bits(), *c)
        })),
        (Some(a), None) => Some(a),
        (None, Some(b)) => Some(b),
    }
}

/// Total vertex count of one parity class of `Q_n`.
pub fn class_size(n: u32) -> u64 {
    1u64 << (n - 1)
}
