//! Property tests for the invariants that hold across the whole input
//! space rather than at specific instances.

use proptest::prelude::*;

use cubepair_core::cube::{BinLayout, Edge, GluePart, Glued, Subcube, Vertex};
use cubepair_core::format::{parse_file, render_strategy, StrategySection};
use cubepair_core::strategy::{all_edges, PairingStrategy};
use cubepair_core::verify::{first_uncovered, first_uncovered_naive, first_uncovered_serial};

/// Random dimension, then a random edge and subcube of that dimension.
fn edge_and_subcube() -> impl Strategy<Value = (Edge, Subcube)> {
    (1u32..=16).prop_flat_map(|n| {
        let edge = (0..n, any::<u64>()).prop_map(move |(c, raw)| {
            let base = raw & ((1u64 << n) - 1) & !(1 << c);
            Edge::new(n, base, c).unwrap()
        });
        let subcube = (any::<u64>(), any::<u64>()).prop_map(move |(raw_stars, raw_fixed)| {
            let m = (1u64 << n) - 1;
            let stars = raw_stars & m;
            Subcube::new(n, stars, raw_fixed & m & !stars).unwrap()
        });
        (edge, subcube)
    })
}

/// Random greedy matching on `Q_n` for n in 2..=8.
fn matching() -> impl Strategy<Value = (u32, Vec<Edge>)> {
    (2u32..=8, any::<u64>(), 0usize..40).prop_map(|(n, seed, tries)| {
        let pool: Vec<Edge> = all_edges(n).collect();
        let mut rng = seed;
        let mut next = || {
            rng = rng
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            rng
        };
        let mut used = vec![false; 1 << n];
        let mut chosen = Vec::new();
        for _ in 0..tries {
            let e = pool[(next() % pool.len() as u64) as usize];
            let (a, b) = e.endpoints();
            if used[a.bits() as usize] || used[b.bits() as usize] {
                continue;
            }
            used[a.bits() as usize] = true;
            used[b.bits() as usize] = true;
            chosen.push(e);
        }
        (n, chosen)
    })
}

proptest! {
    /// An edge is inside a subcube exactly when both endpoints are.
    #[test]
    fn handles_iff_both_endpoints_are_members((edge, s) in edge_and_subcube()) {
        let (a, b) = edge.endpoints();
        prop_assert_eq!(
            s.contains_edge(&edge),
            s.contains_vertex(a) && s.contains_vertex(b)
        );
    }

    /// Gluing the bin restrictions of a fully fixed subcube reproduces its
    /// vertex, for arbitrary layouts.
    #[test]
    fn restrict_then_glue_roundtrips(
        raw_bits in any::<u64>(),
        sizes in proptest::collection::vec(1u32..=6, 1..=5)
    ) {
        let layout = BinLayout::new(&sizes).unwrap();
        let n = layout.total_dimension();
        let v = Vertex::new(n, raw_bits & ((1u64 << n) - 1)).unwrap();
        let s = Subcube::point(v);
        let parts: Vec<GluePart> = (0..layout.bin_count())
            .map(|j| {
                let r = layout.restrict(&s, j).unwrap();
                GluePart::Vertex(Vertex::new(r.ambient_dimension(), r.fixed_bits()).unwrap())
            })
            .collect();
        prop_assert_eq!(layout.glue(&parts).unwrap(), Glued::Vertex(v));
    }

    /// Restriction of an edge-through-glue keeps per-bin consistency: a
    /// glued edge is consistent with a subcube iff each bin part is
    /// consistent with the bin restriction.
    #[test]
    fn gluing_respects_per_bin_consistency(
        (edge, s) in edge_and_subcube(),
        split in 1u32..=15,
    ) {
        let n = edge.dimension();
        prop_assume!(n >= 2);
        let first = split.min(n - 1);
        let layout = BinLayout::new(&[first, n - first]).unwrap();
        let whole = s.contains_edge(&edge);
        let vee_bin = if edge.free_coord() < first { 0 } else { 1 };
        let mut per_bin = true;
        for j in 0..2u32 {
            let r = layout.restrict(&s, j).unwrap();
            let off = layout.offset(j);
            let w = layout.size(j);
            let m = (1u64 << w) - 1;
            if j == vee_bin {
                let part = Edge::new(w, (edge.base() >> off) & m, edge.free_coord() - off).unwrap();
                per_bin &= r.contains_edge(&part);
            } else {
                let part = Vertex::new(w, (edge.base() >> off) & m).unwrap();
                per_bin &= r.contains_vertex(part);
            }
        }
        prop_assert_eq!(whole, per_bin);
    }

    /// Strategy files round-trip: render then parse reproduces the
    /// section, and rendering is a fixpoint.
    #[test]
    fn strategy_file_roundtrip((n, edges) in matching()) {
        let ps = PairingStrategy::new(n, 2, edges, "random matching").unwrap();
        let text = render_strategy(&ps);
        let parsed = parse_file(&text).unwrap();
        prop_assert_eq!(parsed.len(), 1);
        prop_assert_eq!(&parsed[0], &StrategySection::from_strategy(&ps));
        prop_assert_eq!(render_strategy(&parsed[0].to_strategy().unwrap()), text);
    }

    /// Parallel, serial, and naive coverage scans agree on the verdict and
    /// on the first counterexample for arbitrary matchings.
    #[test]
    fn coverage_routes_agree((n, edges) in matching(), k in 0u32..=4) {
        prop_assume!(k <= n);
        let par = first_uncovered(n, k, &edges);
        let ser = first_uncovered_serial(n, k, &edges);
        let naive = first_uncovered_naive(n, k, &edges);
        prop_assert_eq!(&par, &ser);
        prop_assert_eq!(&par, &naive);
    }
}
