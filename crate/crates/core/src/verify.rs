//! Exhaustive verification of every property a strategy is claimed to have:
//! matching, subcube coverage, edge partition, polychromatic proper
//! coloring, plus a tiny brute-force oracle for the smallest blockable
//! dimension.
//!
//! Coverage sweeps shard the subcube space by star mask across threads.
//! Workers report their local first counterexample and the merge takes the
//! minimum in canonical enumeration order, so verdicts and witnesses are
//! identical under any thread count. Reported counterexamples are
//! re-validated against the raw predicate before being returned.

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::bits::{self, SplitMix64};
use crate::cube::{
    star_masks, subcube_count, subcubes_of_mask, Edge, Subcube, SubcubeIter, Vertex,
};
use crate::error::{Error, Result};
use crate::strategy::{edge_count, EdgeSet, PairingStrategy, StrategyFamily};

/// Pair of edges sharing a vertex, disproving the matching property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingViolation {
    pub first: Edge,
    pub second: Edge,
    pub shared: Vertex,
}

/// True matching test on a raw edge list: no vertex occurs in two edges.
/// Returns the first offending pair in the given order.
pub fn is_matching(edges: &[Edge]) -> Option<MatchingViolation> {
    let mut owner: FxHashMap<u64, Edge> = FxHashMap::default();
    owner.reserve(edges.len() * 2);
    for e in edges {
        let (a, b) = e.endpoints();
        for v in [a, b] {
            if let Some(prev) = owner.get(&v.bits()) {
                return Some(MatchingViolation {
                    first: *prev,
                    second: *e,
                    shared: v,
                });
            }
        }
        owner.insert(a.bits(), *e);
        owner.insert(b.bits(), *e);
    }
    None
}

#[inline]
fn subcube_covered(s: &Subcube, set: &EdgeSet) -> bool {
    let star = s.star_mask();
    let fixed = s.fixed_bits();
    let mut c_bits = star;
    while c_bits != 0 {
        let c = c_bits.trailing_zeros();
        c_bits &= c_bits - 1;
        let rest = star & !(1u64 << c);
        let mut t = 0u64;
        loop {
            if set.contains_parts(fixed | t, c) {
                return true;
            }
            if t == rest {
                break;
            }
            t = t.wrapping_sub(rest) & rest;
        }
    }
    false
}

fn scan_mask_first(n: u32, mask: u64, set: &EdgeSet) -> Option<Subcube> {
    subcubes_of_mask(n, mask).find(|s| !subcube_covered(s, set))
}

/// First k-subcube (canonical order) containing no edge of the strategy,
/// or `None` when every k-subcube is covered. Parallel over star masks.
pub fn first_uncovered(n: u32, k: u32, edges: &[Edge]) -> Option<Subcube> {
    assert!(k <= n);
    let set = build_set(n, edges);
    let witness = star_masks(n, k)
        .par_iter()
        .filter_map(|&mask| scan_mask_first(n, mask, &set))
        .min_by_key(|s| (s.star_mask(), s.fixed_bits()));
    if let Some(s) = witness {
        revalidate_uncovered(&s, edges);
    }
    witness
}

/// Serial reference implementation of [`first_uncovered`]; the two must
/// agree on verdict and witness.
pub fn first_uncovered_serial(n: u32, k: u32, edges: &[Edge]) -> Option<Subcube> {
    assert!(k <= n);
    let set = build_set(n, edges);
    let witness = SubcubeIter::new(n, k).find(|s| !subcube_covered(s, &set));
    if let Some(s) = witness {
        revalidate_uncovered(&s, edges);
    }
    witness
}

/// Every uncovered k-subcube, in canonical order.
pub fn all_uncovered(n: u32, k: u32, edges: &[Edge]) -> Vec<Subcube> {
    assert!(k <= n);
    let set = build_set(n, edges);
    let mut found: Vec<Subcube> = star_masks(n, k)
        .par_iter()
        .flat_map_iter(|&mask| {
            subcubes_of_mask(n, mask)
                .filter(|s| !subcube_covered(s, &set))
                .collect::<Vec<_>>()
        })
        .collect();
    found.sort_unstable_by_key(|s| (s.star_mask(), s.fixed_bits()));
    found
}

fn build_set(n: u32, edges: &[Edge]) -> EdgeSet {
    let mut set = EdgeSet::new(n);
    for e in edges {
        set.insert(e);
    }
    set
}

fn revalidate_uncovered(s: &Subcube, edges: &[Edge]) {
    assert!(
        edges.iter().all(|e| !s.contains_edge(e)),
        "witness {s} is actually covered"
    );
}

/// True iff every k-subcube of `Q_n` contains an edge of the strategy.
pub fn covers_all(ps: &PairingStrategy, k: u32) -> bool {
    cover_witness(ps, k).is_none()
}

/// Coverage check returning the first counterexample.
pub fn cover_witness(ps: &PairingStrategy, k: u32) -> Option<Subcube> {
    first_uncovered(ps.dimension(), k, ps.edges())
}

/// Independent quadratic oracle for coverage: per subcube, scan the whole
/// edge list with the containment predicate. Test-grade speed only.
pub fn first_uncovered_naive(n: u32, k: u32, edges: &[Edge]) -> Option<Subcube> {
    SubcubeIter::new(n, k).find(|s| !edges.iter().any(|e| s.contains_edge(e)))
}

/// Deterministic sampled coverage check for boards whose subcube space is
/// too large to sweep: draws `samples` k-subcubes uniformly (seeded) and
/// returns the first uncovered one encountered.
pub fn sample_uncovered(
    n: u32,
    k: u32,
    edges: &[Edge],
    samples: u64,
    seed: u64,
) -> Option<Subcube> {
    let set = build_set(n, edges);
    let mut rng = SplitMix64::new(seed);
    let mask_count = bits::binomial(n as u64, k as u64);
    let mask_count = u64::try_from(mask_count).expect("mask count fits u64 for n <= 63");
    for _ in 0..samples {
        let mask = nth_mask(n, k, rng.below(mask_count));
        let nonstar = bits::mask(n) & !mask;
        let fixed = bits::scatter(rng.below(1 << (n - k)), nonstar);
        let s = Subcube::new_unchecked(n, mask, fixed);
        if !subcube_covered(&s, &set) {
            revalidate_uncovered(&s, edges);
            return Some(s);
        }
    }
    None
}

/// The `rank`-th (0-based) n-bit mask with popcount k, in increasing
/// integer order.
pub fn nth_mask(n: u32, k: u32, rank: u64) -> u64 {
    debug_assert!((rank as u128) < bits::binomial(n as u64, k as u64));
    let mut mask = 0u64;
    let mut rank = rank as u128;
    let mut k = k;
    for bit in (0..n).rev() {
        if k == 0 {
            break;
        }
        let without = bits::binomial(bit as u64, k as u64);
        if rank < without {
            continue;
        }
        rank -= without;
        mask |= 1 << bit;
        k -= 1;
    }
    mask
}

/// How a coverage claim was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CoverageMode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

/// Probe budget above which [`check_strategy`] falls back to sampling.
const EXHAUSTIVE_PROBE_LIMIT: u128 = 1 << 31;
const DEFAULT_SAMPLES: u64 = 100_000;
const DEFAULT_SAMPLE_SEED: u64 = 0x5eed_cafe;

/// Coverage check that picks its mode by budget: exhaustive when the
/// subcube sweep fits the probe limit, deterministic sampling beyond.
pub fn check_coverage_budgeted(n: u32, k: u32, edges: &[Edge]) -> Result<CoverageMode> {
    let probes = (subcube_count(n, k) * k as u128) << k.saturating_sub(1);
    let (witness, mode) = if probes <= EXHAUSTIVE_PROBE_LIMIT {
        (first_uncovered(n, k, edges), CoverageMode::Exhaustive)
    } else {
        (
            sample_uncovered(n, k, edges, DEFAULT_SAMPLES, DEFAULT_SAMPLE_SEED),
            CoverageMode::Sampled {
                samples: DEFAULT_SAMPLES,
                seed: DEFAULT_SAMPLE_SEED,
            },
        )
    };
    match witness {
        Some(s) => Err(Error::CoverageFailed {
            k,
            witness: s.to_string(),
        }),
        None => Ok(mode),
    }
}

/// Verifies a strategy blocks its claimed dimension; the matching property
/// is already enforced at construction.
pub fn check_strategy(ps: &PairingStrategy) -> Result<CoverageMode> {
    check_coverage_budgeted(ps.dimension(), ps.blocked_dimension(), ps.edges())
}

/// Why a family is not an edge partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionViolation {
    Duplicate {
        edge: Edge,
        first_member: usize,
        second_member: usize,
    },
    Missing {
        edge: Edge,
    },
}

/// True iff the members are pairwise edge-disjoint and their union is all
/// of `E(Q_n)`.
pub fn is_edge_partition(fam: &StrategyFamily) -> std::result::Result<(), PartitionViolation> {
    let n = fam.dimension();
    let mut owner: FxHashMap<(u32, u64), usize> = FxHashMap::default();
    owner.reserve(fam.total_edges() as usize);
    for (i, member) in fam.members().iter().enumerate() {
        for e in member.edges() {
            if let Some(&first) = owner.get(&(e.free_coord(), e.base())) {
                return Err(PartitionViolation::Duplicate {
                    edge: *e,
                    first_member: first,
                    second_member: i,
                });
            }
            owner.insert((e.free_coord(), e.base()), i);
        }
    }
    if owner.len() as u64 != edge_count(n) {
        let missing = crate::strategy::all_edges(n)
            .find(|e| !owner.contains_key(&(e.free_coord(), e.base())))
            .expect("some edge must be missing when the count is short");
        return Err(PartitionViolation::Missing { edge: missing });
    }
    Ok(())
}

/// Why a family is not a polychromatic proper coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyViolation {
    Partition(PartitionViolation),
    NotProper {
        member: usize,
        violation: MatchingViolation,
    },
    MissingColor {
        member: usize,
        subcube: Subcube,
    },
}

/// Reading the family as an edge coloring: every member must be a matching
/// (proper) and every d-subcube must contain an edge of every member
/// (polychromatic). Members are checked in order; within a member the
/// witness is the canonical-first uncovered subcube.
pub fn polychromatic_proper_check(
    fam: &StrategyFamily,
    d: u32,
) -> std::result::Result<(), PolyViolation> {
    is_edge_partition(fam).map_err(PolyViolation::Partition)?;
    for (i, member) in fam.members().iter().enumerate() {
        if let Some(violation) = is_matching(member.edges()) {
            return Err(PolyViolation::NotProper {
                member: i,
                violation,
            });
        }
        if let Some(s) = first_uncovered(fam.dimension(), d, member.edges()) {
            return Err(PolyViolation::MissingColor {
                member: i,
                subcube: s,
            });
        }
    }
    Ok(())
}

/// Count of edges whose removal leaves every k-subcube still covered.
/// A statistic only: none of the constructions claim minimality.
pub fn redundant_edge_count(ps: &PairingStrategy, k: u32) -> usize {
    let set = ps.edge_set();
    let n = ps.dimension();
    let essential: Vec<bool> = star_masks(n, k)
        .par_iter()
        .map(|&mask| {
            let mut essential = vec![false; ps.len()];
            for s in subcubes_of_mask(n, mask) {
                let mut only: Option<usize> = None;
                let mut count = 0;
                for e in s.internal_edges() {
                    if set.contains(&e) {
                        count += 1;
                        if count > 1 {
                            break;
                        }
                        only = ps.edges().binary_search(&e).ok();
                    }
                }
                if count == 1 {
                    if let Some(idx) = only {
                        essential[idx] = true;
                    }
                }
            }
            essential
        })
        .reduce(
            || vec![false; ps.len()],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x |= y;
                }
                a
            },
        );
    essential.iter().filter(|&&e| !e).count()
}

/// Smallest k for which any pairing strategy blocks all k-subcubes of
/// `Q_n`, found by exhaustive backtracking over matchings. Capped at
/// `n <= 4`; larger boards exceed the search budget this oracle is for.
pub fn brute_force_min_k(n: u32) -> Result<u32> {
    if n == 0 || n > 4 {
        return Err(Error::BudgetExceeded {
            reason: format!("brute force oracle is capped at n <= 4, got {n}"),
        });
    }
    for k in 1..=n {
        if search_cover(n, k) {
            return Ok(k);
        }
    }
    unreachable!("k = n is always blockable: the whole cube contains any edge")
}

fn search_cover(n: u32, k: u32) -> bool {
    let subcubes: Vec<Subcube> = SubcubeIter::new(n, k).collect();
    let mut used = vec![false; 1 << n];
    let mut chosen: Vec<Edge> = Vec::new();
    extend_cover(&subcubes, &mut used, &mut chosen)
}

fn extend_cover(subcubes: &[Subcube], used: &mut Vec<bool>, chosen: &mut Vec<Edge>) -> bool {
    let first_open = subcubes
        .iter()
        .find(|s| !chosen.iter().any(|e| s.contains_edge(e)));
    let Some(s) = first_open else {
        return true;
    };
    for e in s.internal_edges() {
        let (a, b) = e.endpoints();
        if used[a.bits() as usize] || used[b.bits() as usize] {
            continue;
        }
        used[a.bits() as usize] = true;
        used[b.bits() as usize] = true;
        chosen.push(e);
        if extend_cover(subcubes, used, chosen) {
            return true;
        }
        chosen.pop();
        used[a.bits() as usize] = false;
        used[b.bits() as usize] = false;
    }
    false
}

/// One verification check with its outcome, for reports.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub passed: bool,
    pub counterexample: Option<String>,
    pub items: u64,
    pub elapsed_ms: f64,
}

impl CheckResult {
    pub fn throughput_per_sec(&self) -> Option<f64> {
        (self.elapsed_ms > 0.0).then(|| self.items as f64 / (self.elapsed_ms / 1000.0))
    }
}

/// Machine-readable verification report: key-value text or JSON.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub subject: String,
    pub n: u32,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new(subject: impl Into<String>, n: u32) -> Report {
        Report {
            subject: subject.into(),
            n,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: CheckResult) {
        self.checks.push(check);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("subject={} n={}\n", self.subject, self.n);
        for c in &self.checks {
            out.push_str(&format!(
                "check={} pass={} items={} elapsed_ms={:.3}",
                c.check, c.passed, c.items, c.elapsed_ms
            ));
            if let Some(rate) = c.throughput_per_sec() {
                out.push_str(&format!(" per_sec={rate:.0}"));
            }
            if let Some(w) = &c.counterexample {
                out.push_str(&format!(" counterexample={w}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Times a matching check into a [`CheckResult`].
pub fn timed_matching_check(edges: &[Edge]) -> CheckResult {
    let start = std::time::Instant::now();
    let violation = is_matching(edges);
    CheckResult {
        check: "matching".into(),
        passed: violation.is_none(),
        counterexample: violation.map(|v| {
            format!(
                "edges {} and {} share vertex {}",
                v.first, v.second, v.shared
            )
        }),
        items: edges.len() as u64,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

/// Times a coverage check into a [`CheckResult`].
pub fn timed_coverage_check(n: u32, k: u32, edges: &[Edge]) -> CheckResult {
    let start = std::time::Instant::now();
    let witness = first_uncovered(n, k, edges);
    CheckResult {
        check: format!("coverage(k={k})"),
        passed: witness.is_none(),
        counterexample: witness.map(|s| s.to_string()),
        items: u64::try_from(subcube_count(n, k)).unwrap_or(u64::MAX),
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}
