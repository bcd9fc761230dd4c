//! Pairing strategies: sets of pairwise vertex-disjoint edges claimed to
//! block all k-subcubes of `Q_n`, plus families of strategies produced by
//! the recursive constructions.

use rustc_hash::{FxHashMap, FxHashSet};

use crate::bits;
use crate::cube::Edge;
use crate::error::{Error, Result};

/// A matching in `Q_n` together with the `(n, k)` it claims to block and a
/// provenance name. The matching property is checked at construction, never
/// assumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingStrategy {
    n: u32,
    k: u32,
    edges: Vec<Edge>,
    name: String,
}

impl PairingStrategy {
    /// Builds a strategy from edges, validating dimensions and disjointness.
    /// Edges are stored sorted by `(free_coord, base)`.
    pub fn new(n: u32, k: u32, mut edges: Vec<Edge>, name: impl Into<String>) -> Result<Self> {
        if n == 0 || n > 63 {
            return Err(Error::DimensionOutOfRange { n });
        }
        if k > n {
            return Err(Error::BlockDimensionOutOfRange { k, n });
        }
        for e in &edges {
            if e.dimension() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: e.dimension(),
                });
            }
        }
        edges.sort_unstable();
        let mut owner: FxHashMap<u64, Edge> = FxHashMap::default();
        owner.reserve(edges.len() * 2);
        for e in &edges {
            let (a, b) = e.endpoints();
            for v in [a, b] {
                if let Some(prev) = owner.insert(v.bits(), *e) {
                    return Err(Error::NotAMatching {
                        first: prev.to_string(),
                        second: e.to_string(),
                        vertex: v.to_string(),
                    });
                }
            }
        }
        Ok(PairingStrategy {
            n,
            k,
            edges,
            name: name.into(),
        })
    }

    pub fn dimension(&self) -> u32 {
        self.n
    }

    /// The subcube dimension this strategy claims to block.
    pub fn blocked_dimension(&self) -> u32 {
        self.k
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Edges in canonical `(free_coord, base)` order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    /// Partner map of the matching: vertex bits -> paired vertex bits.
    pub fn pair_map(&self) -> FxHashMap<u64, u64> {
        let mut map = FxHashMap::default();
        map.reserve(self.edges.len() * 2);
        for e in &self.edges {
            let (a, b) = e.endpoints();
            map.insert(a.bits(), b.bits());
            map.insert(b.bits(), a.bits());
        }
        map
    }

    pub fn edge_set(&self) -> EdgeSet {
        let mut set = EdgeSet::new(self.n);
        for e in &self.edges {
            set.insert(e);
        }
        set
    }
}

/// Constant-time edge membership for a fixed dimension. Dense bitmap over
/// the `n * 2^(n-1)` edge slots when that fits in memory, hash set beyond.
#[derive(Debug, Clone)]
pub struct EdgeSet {
    n: u32,
    repr: Repr,
}

#[derive(Debug, Clone)]
enum Repr {
    Dense(Vec<u64>),
    Sparse(FxHashSet<(u32, u64)>),
}

/// Largest dimension for which the dense bitmap is used (25 MiB at n = 24).
const DENSE_MAX_DIM: u32 = 24;

impl EdgeSet {
    pub fn new(n: u32) -> EdgeSet {
        assert!((1..=63).contains(&n));
        let repr = if n <= DENSE_MAX_DIM {
            let slots = (n as u64) << (n - 1);
            Repr::Dense(vec![0u64; slots.div_ceil(64) as usize])
        } else {
            Repr::Sparse(FxHashSet::default())
        };
        EdgeSet { n, repr }
    }

    #[inline]
    fn slot(&self, base: u64, free_coord: u32) -> u64 {
        ((free_coord as u64) << (self.n - 1)) | bits::remove_bit(base, free_coord)
    }

    pub fn insert(&mut self, e: &Edge) {
        debug_assert_eq!(e.dimension(), self.n);
        match &mut self.repr {
            Repr::Dense(words) => {
                let slot = ((e.free_coord() as u64) << (self.n - 1))
                    | bits::remove_bit(e.base(), e.free_coord());
                words[(slot >> 6) as usize] |= 1 << (slot & 63);
            }
            Repr::Sparse(set) => {
                set.insert((e.free_coord(), e.base()));
            }
        }
    }

    /// Membership by raw parts, for hot loops that avoid building an `Edge`.
    #[inline]
    pub fn contains_parts(&self, base: u64, free_coord: u32) -> bool {
        match &self.repr {
            Repr::Dense(words) => {
                let slot = self.slot(base, free_coord);
                words[(slot >> 6) as usize] >> (slot & 63) & 1 == 1
            }
            Repr::Sparse(set) => set.contains(&(free_coord, base)),
        }
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.contains_parts(e.base(), e.free_coord())
    }
}

/// A list of strategies sharing `(n, k)`, as produced by the recursive
/// family constructions.
#[derive(Debug, Clone)]
pub struct StrategyFamily {
    n: u32,
    k: u32,
    members: Vec<PairingStrategy>,
    provenance: String,
}

impl StrategyFamily {
    pub fn new(members: Vec<PairingStrategy>, provenance: impl Into<String>) -> Result<Self> {
        assert!(!members.is_empty(), "a family has at least one member");
        let n = members[0].dimension();
        let k = members[0].blocked_dimension();
        for m in &members {
            if m.dimension() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: m.dimension(),
                });
            }
        }
        Ok(StrategyFamily {
            n,
            k,
            members,
            provenance: provenance.into(),
        })
    }

    pub fn dimension(&self) -> u32 {
        self.n
    }

    pub fn blocked_dimension(&self) -> u32 {
        self.k
    }

    pub fn members(&self) -> &[PairingStrategy] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// Total edge count over all members.
    pub fn total_edges(&self) -> u64 {
        self.members.iter().map(|m| m.len() as u64).sum()
    }
}

/// All edges of `Q_n` in canonical order, for partition checks and oracles.
pub fn all_edges(n: u32) -> impl Iterator<Item = Edge> {
    assert!((1..=26).contains(&n), "edge enumeration capped");
    (0..n).flat_map(move |c| {
        (0..1u64 << n)
            .filter(move |b| b & (1 << c) == 0)
            .map(move |b| Edge::new_unchecked(n, b, c))
    })
}

/// `|E(Q_n)| = n * 2^(n-1)`.
pub fn edge_count(n: u32) -> u64 {
    (n as u64) << (n - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge(s: &str) -> Edge {
        s.parse().unwrap()
    }

    #[test]
    fn rejects_overlapping_edges() {
        let err = PairingStrategy::new(4, 2, vec![edge("v010"), edge("1v10")], "bad");
        match err {
            Err(Error::NotAMatching { vertex, .. }) => assert_eq!(vertex, "1010"),
            other => panic!("expected matching violation, got {other:?}"),
        }
    }

    #[test]
    fn empty_strategy_is_a_matching() {
        let ps = PairingStrategy::new(4, 2, vec![], "empty").unwrap();
        assert!(ps.is_empty());
    }

    #[test]
    fn edges_are_sorted_canonically() {
        let ps = PairingStrategy::new(4, 2, vec![edge("101v"), edge("v000"), edge("0v10")], "t")
            .unwrap();
        let rendered: Vec<String> = ps.edges().iter().map(|e| e.to_string()).collect();
        assert_eq!(rendered, vec!["v000", "0v10", "101v"]);
        assert!(ps.contains(&edge("0v10")));
        assert!(!ps.contains(&edge("00v1")));
    }

    #[test]
    fn pair_map_is_an_involution() {
        let ps = PairingStrategy::new(4, 2, vec![edge("v000"), edge("0v10")], "t").unwrap();
        let pm = ps.pair_map();
        for (&v, &w) in &pm {
            assert_eq!(pm[&w], v);
            assert_ne!(v, w);
        }
        assert_eq!(pm.len(), 4);
    }

    #[test]
    fn edge_set_dense_and_sparse_agree() {
        let make = |n: u32| {
            let mut rng = bits::SplitMix64::new(99);
            let mut edges = Vec::new();
            for _ in 0..200 {
                let c = (rng.next_u64() % n as u64) as u32;
                let base = rng.next_u64() & bits::mask(n) & !(1 << c);
                edges.push(Edge::new_unchecked(n, base, c));
            }
            edges
        };
        for n in [6u32, 30] {
            let edges = make(n);
            let mut set = EdgeSet::new(n);
            for e in &edges {
                set.insert(e);
            }
            for e in &edges {
                assert!(set.contains(e));
            }
            let mut rng = bits::SplitMix64::new(7);
            for _ in 0..500 {
                let c = (rng.next_u64() % n as u64) as u32;
                let base = rng.next_u64() & bits::mask(n) & !(1 << c);
                let e = Edge::new_unchecked(n, base, c);
                assert_eq!(set.contains(&e), edges.contains(&e));
            }
        }
    }

    #[test]
    fn all_edges_has_the_right_cardinality() {
        for n in 1..=8u32 {
            assert_eq!(all_edges(n).count() as u64, edge_count(n));
        }
        let edges: Vec<Edge> = all_edges(4).collect();
        let unique: std::collections::BTreeSet<Edge> = edges.iter().copied().collect();
        assert_eq!(unique.len(), edges.len());
    }
}
