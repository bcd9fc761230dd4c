//! Bit-level vertices, edges, and subcubes of the boolean hypercube `Q_n`.
//!
//! Convention used everywhere: coordinate `i` (1-based, as written in
//! textual vectors) is bit `i-1` of the machine word, and the leftmost
//! character of a textual vector is coordinate 1. So the string `100`
//! denotes the vertex with bits value 1.

mod bins;
mod enumerate;
pub mod text;

pub use bins::{classify_bin, BinClass, BinLayout, GluePart, Glued};
pub use enumerate::{star_masks, subcube_count, subcubes_of_mask, SubcubeIter};

use crate::bits;
use crate::error::{Error, Result};

/// Vertex of `Q_n`, an `n`-bit point of `{0,1}^n` with `1 <= n <= 63`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    n: u32,
    bits: u64,
}

/// Parity class of a vertex: even parity vectors form one side of the
/// bipartition of `Q_n`, odd the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn of_bit(bit: u64) -> Parity {
        if bit & 1 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

fn check_dim(n: u32) -> Result<()> {
    if n == 0 || n > 63 {
        return Err(Error::DimensionOutOfRange { n });
    }
    Ok(())
}

impl Vertex {
    pub fn new(n: u32, bits: u64) -> Result<Vertex> {
        check_dim(n)?;
        if bits > bits::mask(n) {
            return Err(Error::BitsOutOfRange { bits, n });
        }
        Ok(Vertex { n, bits })
    }

    pub(crate) fn new_unchecked(n: u32, bits: u64) -> Vertex {
        debug_assert!((1..=63).contains(&n) && bits <= bits::mask(n));
        Vertex { n, bits }
    }

    pub fn dimension(&self) -> u32 {
        self.n
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn coord(&self, i: u32) -> u64 {
        debug_assert!(i < self.n);
        (self.bits >> i) & 1
    }

    pub fn parity(&self) -> Parity {
        Parity::of_bit(self.bits.count_ones() as u64)
    }

    /// Value of the vector read as a base-2 numeral with coordinate 1 most
    /// significant, i.e. the key under which bitstrings sort
    /// lexicographically.
    pub fn lex_value(&self) -> u64 {
        self.bits.reverse_bits() >> (64 - self.n)
    }
}

/// Edge of `Q_n` in canonical form: the endpoint with the free coordinate
/// at 0, plus the index of that free coordinate. The two endpoints differ
/// in exactly that coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    n: u32,
    free_coord: u32,
    base: u64,
}

impl Edge {
    pub fn new(n: u32, base: u64, free_coord: u32) -> Result<Edge> {
        check_dim(n)?;
        if free_coord >= n {
            return Err(Error::CoordOutOfRange {
                coord: free_coord,
                n,
            });
        }
        if base > bits::mask(n) {
            return Err(Error::BitsOutOfRange { bits: base, n });
        }
        if base & (1 << free_coord) != 0 {
            return Err(Error::NotCanonical {
                base,
                coord: free_coord,
            });
        }
        Ok(Edge {
            n,
            free_coord,
            base,
        })
    }

    pub(crate) fn new_unchecked(n: u32, base: u64, free_coord: u32) -> Edge {
        debug_assert!(free_coord < n && base <= bits::mask(n) && base & (1 << free_coord) == 0);
        Edge {
            n,
            free_coord,
            base,
        }
    }

    /// Canonical edge between two adjacent vertices.
    pub fn between(a: Vertex, b: Vertex) -> Result<Edge> {
        if a.n != b.n {
            return Err(Error::DimensionMismatch {
                expected: a.n,
                got: b.n,
            });
        }
        let diff = a.bits ^ b.bits;
        if diff.count_ones() != 1 {
            return Err(Error::NotAdjacent {
                count: diff.count_ones(),
            });
        }
        let free_coord = diff.trailing_zeros();
        Ok(Edge {
            n: a.n,
            free_coord,
            base: a.bits & !diff,
        })
    }

    pub fn dimension(&self) -> u32 {
        self.n
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn free_coord(&self) -> u32 {
        self.free_coord
    }

    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (
            Vertex::new_unchecked(self.n, self.base),
            Vertex::new_unchecked(self.n, self.base | (1 << self.free_coord)),
        )
    }

    /// Rotates every coordinate up by one (coordinate i -> i+1 mod n),
    /// carrying the free coordinate along.
    pub fn rotate(&self) -> Edge {
        let m = bits::mask(self.n);
        let base = ((self.base << 1) | (self.base >> (self.n - 1))) & m;
        let free_coord = (self.free_coord + 1) % self.n;
        debug_assert!(base & (1 << free_coord) == 0);
        Edge {
            n: self.n,
            free_coord,
            base,
        }
    }
}

/// Subcube of `Q_n`: free coordinates in `star_mask`, fixed values
/// `fixed_bits` on the complement. Dimension is the number of stars.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subcube {
    n: u32,
    star_mask: u64,
    fixed_bits: u64,
}

impl Subcube {
    pub fn new(n: u32, star_mask: u64, fixed_bits: u64) -> Result<Subcube> {
        check_dim(n)?;
        let m = bits::mask(n);
        if star_mask > m {
            return Err(Error::BitsOutOfRange { bits: star_mask, n });
        }
        if fixed_bits > m {
            return Err(Error::BitsOutOfRange {
                bits: fixed_bits,
                n,
            });
        }
        if fixed_bits & star_mask != 0 {
            return Err(Error::FixedOverlapsStars {
                fixed: fixed_bits,
                stars: star_mask,
            });
        }
        Ok(Subcube {
            n,
            star_mask,
            fixed_bits,
        })
    }

    pub(crate) fn new_unchecked(n: u32, star_mask: u64, fixed_bits: u64) -> Subcube {
        debug_assert!(
            star_mask <= bits::mask(n)
                && fixed_bits <= bits::mask(n)
                && fixed_bits & star_mask == 0
        );
        Subcube {
            n,
            star_mask,
            fixed_bits,
        }
    }

    /// The subcube consisting of a single vertex.
    pub fn point(v: Vertex) -> Subcube {
        Subcube {
            n: v.n,
            star_mask: 0,
            fixed_bits: v.bits,
        }
    }

    pub fn dimension(&self) -> u32 {
        self.star_mask.count_ones()
    }

    pub fn ambient_dimension(&self) -> u32 {
        self.n
    }

    pub fn star_mask(&self) -> u64 {
        self.star_mask
    }

    pub fn fixed_bits(&self) -> u64 {
        self.fixed_bits
    }

    pub fn fixed_count(&self) -> u32 {
        self.n - self.dimension()
    }

    /// Membership test for a vertex: the star-substitution rule.
    pub fn contains_vertex(&self, v: Vertex) -> bool {
        assert_eq!(self.n, v.n, "dimension mismatch");
        v.bits & !self.star_mask & bits::mask(self.n) == self.fixed_bits
    }

    /// True iff both endpoints of `e` lie in this subcube, i.e. the edge's
    /// free coordinate is starred and the base agrees off the stars.
    pub fn contains_edge(&self, e: &Edge) -> bool {
        assert_eq!(self.n, e.n, "dimension mismatch");
        self.star_mask & (1 << e.free_coord) != 0
            && e.base & !self.star_mask & bits::mask(self.n) == self.fixed_bits
    }

    /// Iterates the `2^dim` vertices of the subcube in increasing bit order
    /// of the star assignment.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        bits::Submasks::new(self.star_mask)
            .map(move |s| Vertex::new_unchecked(self.n, self.fixed_bits | s))
    }

    /// Iterates the `dim * 2^(dim-1)` edges lying inside the subcube.
    pub fn internal_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let stars: Vec<u32> = (0..self.n)
            .filter(|c| self.star_mask >> c & 1 == 1)
            .collect();
        stars.into_iter().flat_map(move |c| {
            let rest = self.star_mask & !(1u64 << c);
            bits::Submasks::new(rest)
                .map(move |t| Edge::new_unchecked(self.n, self.fixed_bits | t, c))
        })
    }
}

/// An edge handles a subcube when the subcube contains it.
pub fn handles(e: &Edge, s: &Subcube) -> bool {
    s.contains_edge(e)
}

/// A vertex is consistent with a subcube when it is an element of it.
pub fn consistent_vertex(v: Vertex, s: &Subcube) -> bool {
    s.contains_vertex(v)
}

/// An edge is consistent with a subcube when it is an element of it,
/// which for edges coincides with handling.
pub fn consistent_edge(e: &Edge, s: &Subcube) -> bool {
    s.contains_edge(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Vertex {
        s.parse().unwrap()
    }
    fn e(s: &str) -> Edge {
        s.parse().unwrap()
    }
    fn sc(s: &str) -> Subcube {
        s.parse().unwrap()
    }

    #[test]
    fn parity_examples() {
        assert_eq!(v("000").parity(), Parity::Even);
        assert_eq!(v("110").parity(), Parity::Even);
        assert_eq!(v("010").parity(), Parity::Odd);
    }

    #[test]
    fn handles_worked_examples() {
        // (1,0,1,v) handles (*,0,1,*) and exactly two more 2-subcubes
        let edge = e("101v");
        assert!(handles(&edge, &sc("*01*")));
        let handled: Vec<Subcube> = SubcubeIter::new(4, 2)
            .filter(|s| handles(&edge, s))
            .collect();
        assert_eq!(handled, vec![sc("*01*"), sc("1*1*"), sc("10**")]);

        // (v,0,0,0) does not handle (1,*,0,0): endpoint (0,0,0,0) is outside
        assert!(!handles(&e("v000"), &sc("1*00")));
    }

    #[test]
    fn consistency_worked_example() {
        let edge = e("0000101101v0");
        let s = sc("000*1*1*0**0");
        assert!(consistent_edge(&edge, &s));

        assert!(consistent_vertex(v("000"), &sc("000")));
        assert!(!consistent_vertex(v("100"), &sc("0**")));
    }

    #[test]
    fn contains_edge_matches_endpoint_membership_exhaustively() {
        for n in 1..=6u32 {
            let edges: Vec<Edge> = (0..n)
                .flat_map(|c| {
                    (0..1u64 << n)
                        .filter(move |b| b & (1 << c) == 0)
                        .map(move |b| Edge::new_unchecked(n, b, c))
                })
                .collect();
            for k in 0..=n {
                for s in SubcubeIter::new(n, k) {
                    for edge in &edges {
                        let (a, b) = edge.endpoints();
                        let by_membership = s.contains_vertex(a) && s.contains_vertex(b);
                        assert_eq!(s.contains_edge(edge), by_membership, "{edge} vs {s}");
                    }
                }
            }
        }
    }

    #[test]
    fn edges_handle_binomial_many_subcubes() {
        // every edge of Q_n handles exactly C(n-1, k-1) k-subcubes
        for n in 2..=8u32 {
            for k in 1..=n {
                let mut per_edge = std::collections::HashMap::new();
                for s in SubcubeIter::new(n, k) {
                    for e in s.internal_edges() {
                        *per_edge.entry(e).or_insert(0u64) += 1;
                    }
                }
                let want = crate::bits::binomial(n as u64 - 1, k as u64 - 1) as u64;
                assert_eq!(per_edge.len() as u64, (n as u64) << (n - 1));
                assert!(
                    per_edge.values().all(|&c| c == want),
                    "n={n} k={k}: some edge deviates from {want}"
                );
            }
        }
    }

    #[test]
    fn subcube_vertex_and_edge_counts() {
        let s = sc("*01*");
        assert_eq!(s.vertices().count(), 4);
        assert_eq!(s.internal_edges().count(), 4);
        let s = sc("***");
        assert_eq!(s.internal_edges().count(), 12);
        assert_eq!(Subcube::point(v("101")).internal_edges().count(), 0);
    }

    #[test]
    fn edge_rotation_carries_the_free_coordinate() {
        let mut cur = e("v01000");
        let expect = ["0v0100", "00v010", "000v01", "1000v0", "01000v", "v01000"];
        for want in expect {
            cur = cur.rotate();
            assert_eq!(cur, e(want));
        }
    }

    #[test]
    fn constructor_rejections() {
        assert!(Vertex::new(0, 0).is_err());
        assert!(Vertex::new(64, 0).is_err());
        assert!(Vertex::new(3, 8).is_err());
        assert!(Edge::new(3, 0b001, 0).is_err());
        assert!(Edge::new(3, 0, 3).is_err());
        assert!(Subcube::new(3, 0b001, 0b001).is_err());
        assert!(Edge::between(v("000"), v("011")).is_err());
        assert_eq!(Edge::between(v("100"), v("110")).unwrap(), e("1v0"));
    }

    #[test]
    fn lex_value_reads_leftmost_as_most_significant() {
        assert_eq!(v("011").lex_value(), 3);
        assert_eq!(v("100").lex_value(), 4);
        assert_eq!(v("110").lex_value(), 6);
    }
}
