//! Bin decompositions: a partition of the coordinates of `Q_n` into
//! consecutive blocks, with restriction of subcubes onto a bin, the
//! full/heavy/light classification, and gluing of per-bin vectors.

use super::{Edge, Subcube, Vertex};
use crate::bits;
use crate::error::{Error, Result};

/// Ordered partition of the coordinates `[0, n_total)` into consecutive
/// bins; bin `j` spans `offset_j .. offset_j + size_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinLayout {
    n_total: u32,
    sizes: Vec<u32>,
    offsets: Vec<u32>,
}

impl BinLayout {
    pub fn new(sizes: &[u32]) -> Result<BinLayout> {
        let sum: u32 = sizes.iter().sum();
        if sum == 0 || sum > 63 {
            return Err(Error::DimensionOutOfRange { n: sum });
        }
        if sizes.contains(&0) {
            return Err(Error::BadBinSizes { sum, expected: sum });
        }
        let mut offsets = Vec::with_capacity(sizes.len());
        let mut acc = 0;
        for &s in sizes {
            offsets.push(acc);
            acc += s;
        }
        Ok(BinLayout {
            n_total: sum,
            sizes: sizes.to_vec(),
            offsets,
        })
    }

    /// `count` equal bins of width `size`.
    pub fn uniform(count: u32, size: u32) -> Result<BinLayout> {
        BinLayout::new(&vec![size; count as usize])
    }

    pub fn total_dimension(&self) -> u32 {
        self.n_total
    }

    pub fn bin_count(&self) -> u32 {
        self.sizes.len() as u32
    }

    pub fn size(&self, j: u32) -> u32 {
        self.sizes[j as usize]
    }

    pub fn offset(&self, j: u32) -> u32 {
        self.offsets[j as usize]
    }

    fn check_bin(&self, j: u32) -> Result<()> {
        if j >= self.bin_count() {
            return Err(Error::BinOutOfRange {
                bin: j,
                bins: self.bin_count(),
            });
        }
        Ok(())
    }

    /// Projects a subcube of the full cube onto bin `j`.
    pub fn restrict(&self, s: &Subcube, j: u32) -> Result<Subcube> {
        if s.ambient_dimension() != self.n_total {
            return Err(Error::DimensionMismatch {
                expected: self.n_total,
                got: s.ambient_dimension(),
            });
        }
        self.check_bin(j)?;
        let off = self.offset(j);
        let w = self.size(j);
        let m = bits::mask(w);
        Ok(Subcube::new_unchecked(
            w,
            (s.star_mask() >> off) & m,
            (s.fixed_bits() >> off) & m,
        ))
    }

    /// Restriction of a full-cube vertex to bin `j`.
    pub fn restrict_vertex(&self, v: Vertex, j: u32) -> Result<Vertex> {
        if v.dimension() != self.n_total {
            return Err(Error::DimensionMismatch {
                expected: self.n_total,
                got: v.dimension(),
            });
        }
        self.check_bin(j)?;
        let w = self.size(j);
        Ok(Vertex::new_unchecked(
            w,
            (v.bits() >> self.offset(j)) & bits::mask(w),
        ))
    }

    /// Concatenates per-bin vectors into a vector of the full cube. At most
    /// one part may be an edge; the result is an edge exactly when one is,
    /// with the free coordinate offset into that bin.
    pub fn glue(&self, parts: &[GluePart]) -> Result<Glued> {
        if parts.len() as u32 != self.bin_count() {
            return Err(Error::BadBinSizes {
                sum: parts.len() as u32,
                expected: self.bin_count(),
            });
        }
        let edge_parts = parts
            .iter()
            .filter(|p| matches!(p, GluePart::Edge(_)))
            .count() as u32;
        if edge_parts > 1 {
            return Err(Error::MultipleEdgeParts { count: edge_parts });
        }
        let mut bits_acc = 0u64;
        let mut free = None;
        for (j, part) in parts.iter().enumerate() {
            let off = self.offset(j as u32);
            let w = self.size(j as u32);
            match part {
                GluePart::Vertex(v) => {
                    if v.dimension() != w {
                        return Err(Error::DimensionMismatch {
                            expected: w,
                            got: v.dimension(),
                        });
                    }
                    bits_acc |= v.bits() << off;
                }
                GluePart::Edge(e) => {
                    if e.dimension() != w {
                        return Err(Error::DimensionMismatch {
                            expected: w,
                            got: e.dimension(),
                        });
                    }
                    bits_acc |= e.base() << off;
                    free = Some(e.free_coord() + off);
                }
            }
        }
        Ok(match free {
            None => Glued::Vertex(Vertex::new_unchecked(self.n_total, bits_acc)),
            Some(c) => Glued::Edge(Edge::new_unchecked(self.n_total, bits_acc, c)),
        })
    }
}

/// One per-bin input to [`BinLayout::glue`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GluePart {
    Vertex(Vertex),
    Edge(Edge),
}

/// Result of gluing: a vertex, or an edge when one part was an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Glued {
    Vertex(Vertex),
    Edge(Edge),
}

/// Classification of a bin restriction by its number of fixed coordinates,
/// relative to the subcube dimension `k` blocked by the bin's strategy:
/// full = all fixed, heavy = at least `n_bin - k + 1` fixed, light at most
/// `n_bin - k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinClass {
    Full,
    Heavy,
    Light,
}

/// Classifies a bin restriction `r` for a bin strategy blocking
/// `k`-subcubes.
pub fn classify_bin(r: &Subcube, k: u32) -> BinClass {
    let n_bin = r.ambient_dimension();
    let fixed = r.fixed_count();
    if fixed == n_bin {
        BinClass::Full
    } else if fixed + k > n_bin {
        BinClass::Heavy
    } else {
        BinClass::Light
    }
}
