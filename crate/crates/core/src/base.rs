//! The hand-listed pairing strategies every construction starts from.
//!
//! The listings are embedded as text in the tuple notation and parsed at
//! load, so the data in this file can be audited character by character.

use std::collections::BTreeSet;

use crate::cube::text::parse_edge_listing;
use crate::cube::Edge;
use crate::strategy::PairingStrategy;

const PS_4_2_LISTING: [&str; 4] = [
    // j = 0 (also the plain PS(4,2))
    "(v,0,0,0), (0,v,1,0), (0,0,v,1), (0,1,0,v),
     (v,1,1,1), (1,v,0,1), (1,1,v,0), (1,0,1,v)",
    // j = 1
    "(v,0,1,1), (0,v,0,1), (0,0,v,0), (0,1,1,v),
     (v,1,0,0), (1,v,1,0), (1,1,v,1), (1,0,0,v)",
    // j = 2
    "(v,1,0,1), (0,v,1,1), (0,1,v,0), (0,0,0,v),
     (v,0,1,0), (1,v,0,0), (1,0,v,1), (1,1,1,v)",
    // j = 3
    "(v,1,1,0), (0,v,0,0), (0,1,v,1), (0,0,1,v),
     (v,0,0,1), (1,v,1,1), (1,0,v,0), (1,1,0,v)",
];

const PS_3_2_LISTING: [&str; 4] = [
    "(v,0,0), (1,v,1), (0,1,v)",
    "(v,0,1), (0,v,0), (1,1,v)",
    "(v,1,0), (0,v,1), (1,0,v)",
    "(v,1,1), (1,v,0), (0,0,v)",
];

const BV_3_LISTING: &str = "(v,0,1), (1,v,0), (0,1,v)";

const Q6_3_ORBIT_SEEDS: [&str; 4] = [
    "(v,0,1,0,0,0)",
    "(v,1,0,1,1,1)",
    "(v,0,1,1,0,0)",
    "(v,1,0,0,1,1)",
];

fn load(n: u32, k: u32, listing: &str, name: &str) -> PairingStrategy {
    let edges = parse_edge_listing(listing).expect("embedded listing parses");
    PairingStrategy::new(n, k, edges, name).expect("embedded listing is a matching")
}

/// The eight-edge strategy for `Q(4,2)`.
pub fn ps_4_2() -> PairingStrategy {
    load(4, 2, PS_4_2_LISTING[0], "PS(4,2)")
}

/// The four eight-edge strategies for `Q(4,2)` whose union partitions
/// `E(Q_4)`; `j = 0` is [`ps_4_2`].
pub fn ps_j_4_2(j: u32) -> PairingStrategy {
    assert!(j < 4, "j out of range");
    load(4, 2, PS_4_2_LISTING[j as usize], &format!("PS_{j}(4,2)"))
}

/// The four three-edge strategies for `Q(3,2)` whose union partitions
/// `E(Q_3)`.
pub fn ps_j_3_2(j: u32) -> PairingStrategy {
    assert!(j < 4, "j out of range");
    load(3, 2, PS_3_2_LISTING[j as usize], &format!("PS_{j}(3,2)"))
}

/// The three-edge strategy for `Q(3,2)` used as the v-bin of the
/// `Q(12,5)` bin product; distinct from every [`ps_j_3_2`].
pub fn bv_3() -> PairingStrategy {
    load(3, 2, BV_3_LISTING, "bv(3,2)")
}

/// Orbit of an edge under simultaneous cyclic rotation of all coordinates,
/// as a set (duplicates collapse).
pub fn cyclic_orbit(seed: &Edge) -> Vec<Edge> {
    let mut orbit = BTreeSet::new();
    let mut cur = *seed;
    for _ in 0..seed.dimension() {
        orbit.insert(cur);
        cur = cur.rotate();
    }
    orbit.into_iter().collect()
}

/// The 24-edge cyclic strategy for `Q(6,3)`: the union of the four orbits
/// of the listed seeds.
pub fn q6_3() -> PairingStrategy {
    let mut edges = Vec::new();
    for seed in Q6_3_ORBIT_SEEDS {
        let seed: Edge = seed.parse().expect("embedded seed parses");
        edges.extend(cyclic_orbit(&seed));
    }
    PairingStrategy::new(6, 3, edges, "Q(6,3) cyclic").expect("orbit union is a matching")
}
