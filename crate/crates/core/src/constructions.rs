//! Strategy-building machinery.
//!
//! Everything here produces [`PairingStrategy`] values and re-verifies its
//! own output (matching at construction, coverage exhaustively when the
//! sweep is affordable and by deterministic sampling beyond), so a
//! construction bug cannot silently propagate.
//!
//! * [`bin_ps`]: the four-bin product. Split `Q_{4n}` into four bins of
//!   width `n`; each edge of the eight-edge `Q(4,2)` pattern becomes a
//!   bin-form whose bins draw from the even class, the odd class, or a
//!   `Q(n,k)` strategy `bv` (at the pattern edge's `v` position). Blocks
//!   `b = max(4k-3, n+k)`.
//! * [`bin_ps_rotating`]: the same product where the v-bin draws from a
//!   pool of strategies selected by the shifted sum of the other bins'
//!   partition labels. With pools that jointly cover `E(Q_n)` and
//!   partitions hitting every cell at dimension `n-k+2`, this blocks
//!   `b = max(pk-(p-1), n+1)` for `p` bins.
//! * [`q4_family`] / [`q3_family`]: the recursive families of `4^(d+1)`
//!   disjoint strategies for `Q(4^(d+1), 4^d+1)` and `Q(3^(d+1), 3^d+1)`
//!   that partition all edges of the board.
//! * [`lift_plus1`] / [`truncate`]: dimension shifts `(n,k) -> (n+1,k+1)`
//!   and `(N,k) -> (n,k)` for boards between the anchor dimensions.
//! * [`best_strategy`]: the interval schedule giving the smallest blocked
//!   dimension this machinery reaches for any `3 <= n <= 63`, always at
//!   most `floor(3n/7) + 1`.

use std::fmt;

use rayon::prelude::*;

use crate::base;
use crate::bits;
use crate::cube::{BinLayout, Edge, Parity, Subcube, Vertex};
use crate::error::{Error, Result};
use crate::partitions::{verify_hit_property, IndexOrder, PartitionFamily};
use crate::strategy::{EdgeSet, PairingStrategy, StrategyFamily};
use crate::verify::{check_strategy, is_matching};

/// Hard cap on materialized strategy size.
pub const MAX_MATERIALIZE_EDGES: u64 = 1 << 24;

/// Role of one bin inside a bin-form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinTag {
    /// Even-parity vertex class.
    Even,
    /// Odd-parity vertex class.
    Odd,
    /// The strategy bin carrying the glued edge's free coordinate.
    Vee,
}

/// One bin-form: the per-bin roles derived from a pattern edge (0 -> even
/// class, 1 -> odd class, v -> strategy bin), plus the rotation shift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinForm {
    tags: Vec<BinTag>,
    shift: u64,
    source_edge: Edge,
}

impl BinForm {
    pub fn of(pattern_edge: Edge, shift: u64) -> BinForm {
        let tags = (0..pattern_edge.dimension())
            .map(|c| {
                if c == pattern_edge.free_coord() {
                    BinTag::Vee
                } else if pattern_edge.base() >> c & 1 == 0 {
                    BinTag::Even
                } else {
                    BinTag::Odd
                }
            })
            .collect();
        BinForm {
            tags,
            shift,
            source_edge: pattern_edge,
        }
    }

    pub fn tags(&self) -> &[BinTag] {
        &self.tags
    }

    pub fn shift(&self) -> u64 {
        self.shift
    }

    pub fn source_edge(&self) -> Edge {
        self.source_edge
    }

    pub fn vee_bin(&self) -> u32 {
        self.source_edge.free_coord()
    }
}

fn parity_class(n: u32, parity: Parity) -> Vec<u64> {
    (0..1u64 << n)
        .filter(|b| Parity::of_bit(b.count_ones() as u64) == parity)
        .collect()
}

fn class_for(tag: BinTag) -> Parity {
    match tag {
        BinTag::Even => Parity::Even,
        BinTag::Odd => Parity::Odd,
        BinTag::Vee => unreachable!("vee bin has no parity class"),
    }
}

/// Assembles the plain four-bin product for an arbitrary matching `bv`
/// without verifying `bv` first; `bin_ps` is the verified entry point.
pub(crate) fn assemble_bin_ps(bv: &PairingStrategy) -> Result<Vec<Edge>> {
    let n = bv.dimension();
    let n_out = 4 * n;
    if n_out > 63 {
        return Err(Error::DimensionOutOfRange { n: n_out });
    }
    let estimated = 8u128 * (1u128 << (n - 1)).pow(3) * bv.len() as u128;
    if estimated > MAX_MATERIALIZE_EDGES as u128 {
        return Err(Error::TooLargeToMaterialize {
            estimated,
            limit: MAX_MATERIALIZE_EDGES,
        });
    }
    let evens = parity_class(n, Parity::Even);
    let odds = parity_class(n, Parity::Odd);
    let mut edges = Vec::with_capacity(estimated as usize);
    for pattern_edge in base::ps_4_2().edges() {
        let form = BinForm::of(*pattern_edge, 0);
        let vee = form.vee_bin();
        let classes: Vec<&[u64]> = form
            .tags()
            .iter()
            .enumerate()
            .filter(|(j, _)| *j as u32 != vee)
            .map(|(_, tag)| match tag {
                BinTag::Even => evens.as_slice(),
                BinTag::Odd => odds.as_slice(),
                BinTag::Vee => unreachable!(),
            })
            .collect();
        let offsets: Vec<u32> = (0..4).filter(|j| *j != vee).map(|j| j * n).collect();
        let mut idx = [0usize; 3];
        loop {
            let mut bits_acc = 0u64;
            for (slot, &i) in idx.iter().enumerate() {
                bits_acc |= classes[slot][i] << offsets[slot];
            }
            for e in bv.edges() {
                edges.push(Edge::new_unchecked(
                    n_out,
                    bits_acc | (e.base() << (vee * n)),
                    e.free_coord() + vee * n,
                ));
            }
            // odometer over the three class bins
            let mut slot = 2;
            loop {
                idx[slot] += 1;
                if idx[slot] < classes[slot].len() {
                    break;
                }
                idx[slot] = 0;
                if slot == 0 {
                    break;
                }
                slot -= 1;
            }
            if idx == [0, 0, 0] {
                break;
            }
        }
    }
    Ok(edges)
}

/// Four-bin product strategy: verifies `bv` blocks `Q(n,k)`, then builds
/// the strategy on `Q_{4n}` blocking `b = max(4k-3, n+k)`-subcubes. The
/// result is matched-checked at construction and coverage-checked.
pub fn bin_ps(bv: &PairingStrategy) -> Result<PairingStrategy> {
    check_strategy(bv)?;
    let (n, k) = (bv.dimension(), bv.blocked_dimension());
    let b = (4 * k - 3).max(n + k);
    let edges = assemble_bin_ps(bv)?;
    let ps = PairingStrategy::new(
        4 * n,
        b,
        edges,
        format!("binps(4x{n},{b}) over {}", bv.name()),
    )?;
    check_strategy(&ps)?;
    Ok(ps)
}

/// Exact handling test for the four-bin product of `bv` without
/// materializing it: a bin-form contains an edge consistent with `s` iff
/// every bin-set contains an element consistent with the bin restriction.
/// Agrees with coverage of the materialized strategy wherever both are
/// computable.
pub fn bin_ps_handles(bv: &PairingStrategy, s: &Subcube) -> Result<bool> {
    let n = bv.dimension();
    if s.ambient_dimension() != 4 * n {
        return Err(Error::DimensionMismatch {
            expected: 4 * n,
            got: s.ambient_dimension(),
        });
    }
    let layout = BinLayout::uniform(4, n)?;
    let restrictions: Vec<Subcube> = (0..4).map(|j| layout.restrict(s, j).unwrap()).collect();
    for pattern_edge in base::ps_4_2().edges() {
        let form = BinForm::of(*pattern_edge, 0);
        let handled = form
            .tags()
            .iter()
            .zip(&restrictions)
            .all(|(tag, r)| match tag {
                BinTag::Vee => bv.edges().iter().any(|e| r.contains_edge(e)),
                BinTag::Even | BinTag::Odd => {
                    r.dimension() >= 1
                        || Parity::of_bit(r.fixed_bits().count_ones() as u64) == class_for(*tag)
                }
            });
        if handled {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Rotation machinery: a pool of strategies for the v-bin, selected per
/// glued edge by the shifted sum of the other bins' partition labels
/// modulo the pool size.
#[derive(Debug, Clone)]
pub struct RotationScheme {
    pool: Vec<PairingStrategy>,
    even_partition: PartitionFamily,
    odd_partition: PartitionFamily,
    shift: u64,
}

impl RotationScheme {
    /// Validates the rotation preconditions:
    /// every pool member blocks `Q(n,k)`, the pool union covers `E(Q_n)`,
    /// and both partitions have one cell per pool member with every cell
    /// hit at dimension `n-k+2`.
    pub fn new(
        pool: Vec<PairingStrategy>,
        even_partition: PartitionFamily,
        odd_partition: PartitionFamily,
        shift: u64,
    ) -> Result<RotationScheme> {
        if pool.is_empty() {
            return Err(Error::BadRotationScheme {
                reason: "empty pool".into(),
            });
        }
        let n = pool[0].dimension();
        let k = pool[0].blocked_dimension();
        if k == 0 {
            return Err(Error::BadRotationScheme {
                reason: "pool strategies must block a positive dimension".into(),
            });
        }
        for member in &pool {
            if member.dimension() != n || member.blocked_dimension() != k {
                return Err(Error::BadRotationScheme {
                    reason: format!(
                        "pool member {} is for Q({},{}), expected Q({n},{k})",
                        member.name(),
                        member.dimension(),
                        member.blocked_dimension()
                    ),
                });
            }
            check_strategy(member)?;
        }
        let m = pool.len() as u64;
        for (side, p) in [("even", &even_partition), ("odd", &odd_partition)] {
            if p.dimension() != n {
                return Err(Error::BadRotationScheme {
                    reason: format!(
                        "{side} partition lives on Q_{}, pool on Q_{n}",
                        p.dimension()
                    ),
                });
            }
            if p.cell_count() != m {
                return Err(Error::BadRotationScheme {
                    reason: format!(
                        "{side} partition has {} cells for a pool of {m}",
                        p.cell_count()
                    ),
                });
            }
            // subcubes above dimension n do not exist, so the requirement
            // degenerates to the whole cube for k < 2
            let hit_dim = (n - k + 2).min(n);
            if let Some((s, cell)) = verify_hit_property(p, hit_dim) {
                return Err(Error::HitPropertyFailed {
                    witness: s.to_string(),
                    cell: cell as u32,
                    dimension: hit_dim,
                });
            }
        }
        let mut union = EdgeSet::new(n);
        let mut total = 0u64;
        for member in &pool {
            for e in member.edges() {
                union.insert(e);
            }
            total += member.len() as u64;
        }
        // pool members may overlap; completeness is what matters
        let _ = total;
        for e in crate::strategy::all_edges(n) {
            if !union.contains(&e) {
                return Err(Error::PoolsDoNotCoverEdges {
                    witness: e.to_string(),
                });
            }
        }
        Ok(RotationScheme {
            pool,
            even_partition,
            odd_partition,
            shift,
        })
    }

    /// Same pools and partitions, different shift. Validity is
    /// shift-independent, so no re-verification happens.
    pub fn with_shift(&self, shift: u64) -> RotationScheme {
        RotationScheme {
            pool: self.pool.clone(),
            even_partition: self.even_partition.clone(),
            odd_partition: self.odd_partition.clone(),
            shift,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.pool.len() as u64
    }

    pub fn shift(&self) -> u64 {
        self.shift
    }

    pub fn pool(&self) -> &[PairingStrategy] {
        &self.pool
    }

    pub fn bin_dimension(&self) -> u32 {
        self.pool[0].dimension()
    }

    pub fn pool_blocked_dimension(&self) -> u32 {
        self.pool[0].blocked_dimension()
    }
}

/// Assembly of the rotated product; public path is [`bin_ps_rotating`].
pub(crate) fn assemble_rotating(
    scheme: &RotationScheme,
    pattern: &PairingStrategy,
) -> Result<Vec<Edge>> {
    let n = scheme.bin_dimension();
    let p = pattern.dimension();
    if p < 2 {
        return Err(Error::BadRotationScheme {
            reason: "pattern needs at least two bins".into(),
        });
    }
    let n_out = p * n;
    if n_out > 63 {
        return Err(Error::DimensionOutOfRange { n: n_out });
    }
    let m = scheme.modulus();
    let max_pool = scheme.pool.iter().map(|s| s.len()).max().unwrap_or(0) as u128;
    let estimated = pattern.len() as u128 * (1u128 << (n - 1)).pow(p - 1) * max_pool;
    if estimated > MAX_MATERIALIZE_EDGES as u128 {
        return Err(Error::TooLargeToMaterialize {
            estimated,
            limit: MAX_MATERIALIZE_EDGES,
        });
    }

    // per-class member lists with their partition labels
    let make_labelled = |parity: Parity, partition: &PartitionFamily| -> Vec<(u64, u64)> {
        parity_class(n, parity)
            .into_iter()
            .map(|bitsv| {
                let label = partition
                    .index_of(Vertex::new_unchecked(n, bitsv))
                    .expect("class member belongs to its partition");
                (bitsv, label)
            })
            .collect()
    };
    let evens = make_labelled(Parity::Even, &scheme.even_partition);
    let odds = make_labelled(Parity::Odd, &scheme.odd_partition);

    let mut edges = Vec::with_capacity(estimated as usize);
    for pattern_edge in pattern.edges() {
        let form = BinForm::of(*pattern_edge, scheme.shift);
        let vee = form.vee_bin();
        let classes: Vec<&[(u64, u64)]> = form
            .tags()
            .iter()
            .enumerate()
            .filter(|(j, _)| *j as u32 != vee)
            .map(|(_, tag)| match tag {
                BinTag::Even => evens.as_slice(),
                BinTag::Odd => odds.as_slice(),
                BinTag::Vee => unreachable!(),
            })
            .collect();
        let offsets: Vec<u32> = (0..p).filter(|j| *j != vee).map(|j| j * n).collect();
        let mut idx = vec![0usize; (p - 1) as usize];
        loop {
            let mut bits_acc = 0u64;
            let mut label_sum = scheme.shift;
            for (slot, &i) in idx.iter().enumerate() {
                let (member_bits, label) = classes[slot][i];
                bits_acc |= member_bits << offsets[slot];
                label_sum += label;
            }
            let selected = &scheme.pool[(label_sum % m) as usize];
            for e in selected.edges() {
                edges.push(Edge::new_unchecked(
                    n_out,
                    bits_acc | (e.base() << (vee * n)),
                    e.free_coord() + vee * n,
                ));
            }
            let mut slot = idx.len() - 1;
            loop {
                idx[slot] += 1;
                if idx[slot] < classes[slot].len() {
                    break;
                }
                idx[slot] = 0;
                if slot == 0 {
                    break;
                }
                slot -= 1;
            }
            if idx.iter().all(|&i| i == 0) {
                break;
            }
        }
    }
    Ok(edges)
}

/// Rotated bin product over a validated scheme. The pattern must itself be
/// a `Q(p,2)` pairing strategy (its edges become the bin-forms); the output
/// blocks `b = max(pk-(p-1), n+1)` on `Q_{pn}`.
pub fn bin_ps_rotating(
    scheme: &RotationScheme,
    pattern: &PairingStrategy,
) -> Result<PairingStrategy> {
    if let Some(v) = is_matching(pattern.edges()) {
        return Err(Error::NotAMatching {
            first: v.first.to_string(),
            second: v.second.to_string(),
            vertex: v.shared.to_string(),
        });
    }
    if pattern.blocked_dimension() != 2 {
        return Err(Error::BadRotationScheme {
            reason: format!(
                "pattern {} must block 2-subcubes of its bin index cube",
                pattern.name()
            ),
        });
    }
    check_strategy(pattern)?;
    let n = scheme.bin_dimension();
    let k = scheme.pool_blocked_dimension();
    let p = pattern.dimension();
    let b = (p * k - (p - 1)).max(n + 1);
    let edges = assemble_rotating(scheme, pattern)?;
    let ps = PairingStrategy::new(
        p * n,
        b,
        edges,
        format!(
            "rotbinps({p}x{n},{b}) pattern {} shift {}",
            pattern.name(),
            scheme.shift()
        ),
    )?;
    check_strategy(&ps)?;
    Ok(ps)
}

/// The worked three-bin rotation: pools `PS_j(3,2)`, lexicographic
/// singleton indexing of the parity classes of `Q_3`, shift `s`.
pub fn rotating_q9_4_scheme(shift: u64) -> Result<RotationScheme> {
    RotationScheme::new(
        (0..4).map(base::ps_j_3_2).collect(),
        PartitionFamily::singletons(3, Parity::Even, IndexOrder::Lex)?,
        PartitionFamily::singletons(3, Parity::Odd, IndexOrder::Lex)?,
        shift,
    )
}

/// The 144-edge rotating strategy for `Q(9,4)`.
pub fn rotating_q9_4_demo() -> PairingStrategy {
    let scheme = rotating_q9_4_scheme(0).expect("demo scheme is valid");
    bin_ps_rotating(&scheme, &base::bv_3())
        .expect("demo strategy verifies")
        .with_name("rotating Q(9,4)")
}

fn family(
    d: u32,
    base_members: fn(u32) -> PairingStrategy,
    bin_width: fn(u32) -> Option<u32>,
    partitions: fn(u32) -> Result<(PartitionFamily, PartitionFamily)>,
    label: &str,
) -> Result<StrategyFamily> {
    if d == 0 {
        return StrategyFamily::new(
            (0..4).map(base_members).collect(),
            format!("{label} family d=0"),
        );
    }
    let width = bin_width(d).ok_or(Error::DimensionOutOfRange { n: 64 })?;
    let prev = family(d - 1, base_members, bin_width, partitions, label)?;
    let m = prev.len() as u64;
    debug_assert_eq!(prev.dimension(), width);
    // the recursion needs the previous level to partition all edges, which
    // also gives the joint covering the rotation scheme checks again
    if let Err(violation) = crate::verify::is_edge_partition(&prev) {
        return Err(Error::BadRotationScheme {
            reason: format!("level {} is not an edge partition: {violation:?}", d - 1),
        });
    }
    let (even, odd) = partitions(d)?;
    let scheme0 = RotationScheme::new(prev.members().to_vec(), even, odd, 0)?;
    let jobs: Vec<(u32, u64)> = (0..4u32)
        .flat_map(|j| (0..m).map(move |s| (j, s)))
        .collect();
    let members: Result<Vec<PairingStrategy>> =
        jobs.par_iter()
            .map(|&(j, s)| {
                let scheme = scheme0.with_shift(s);
                let pattern = base_members(j);
                Ok(bin_ps_rotating(&scheme, &pattern)?
                    .with_name(format!("{label}(d={d}) j={j} s={s}")))
            })
            .collect();
    StrategyFamily::new(members?, format!("{label} family d={d}"))
}

/// The `4^(d+1)` strategies for `Q(4^(d+1), 4^d+1)` that partition
/// `E(Q_{4^(d+1)})`: level 0 is the `PS_j(4,2)` listing, level `d` rotates
/// level `d-1` through four-bin forms with half-plus-one partitions.
/// Only `d <= 1` fits in 63 coordinates.
pub fn q4_family(d: u32) -> Result<StrategyFamily> {
    family(
        d,
        base::ps_j_4_2,
        |d| {
            let width = 4u64.checked_pow(d)?;
            (width * 4 <= 63).then_some(width as u32)
        },
        |d| crate::partitions::half_plus1(2 * d),
        "q4",
    )
}

/// The `4^(d+1)` strategies for `Q(3^(d+1), 3^d+1)` that partition
/// `E(Q_{3^(d+1)})`: level 0 is the `PS_j(3,2)` listing, level `d` rotates
/// level `d-1` through three-bin forms with the even/odd partitions.
/// `d = 2` fits in 63 coordinates but its members are too large to
/// materialize under [`MAX_MATERIALIZE_EDGES`].
pub fn q3_family(d: u32) -> Result<StrategyFamily> {
    family(
        d,
        base::ps_j_3_2,
        |d| {
            let width = 3u64.checked_pow(d)?;
            (width * 3 <= 63).then_some(width as u32)
        },
        |d| crate::partitions::partition_even_odd(3, d),
        "q3",
    )
}

/// Lift `(n,k) -> (n+1,k+1)`: duplicate the strategy into both layers of
/// the new coordinate. A (k+1)-subcube with the new coordinate fixed at
/// `b` restricts to a (k+1)-subcube of `Q_n`, which contains a blocked
/// k-subcube, whose edge is present in layer `b`; one with the new
/// coordinate starred restricts to a k-subcube hit in layer 0. The output
/// is re-verified.
pub fn lift_plus1(ps: &PairingStrategy) -> Result<PairingStrategy> {
    let n = ps.dimension();
    if n + 1 > 63 {
        return Err(Error::DimensionOutOfRange { n: n + 1 });
    }
    if 2 * ps.len() as u64 > MAX_MATERIALIZE_EDGES {
        return Err(Error::TooLargeToMaterialize {
            estimated: 2 * ps.len() as u128,
            limit: MAX_MATERIALIZE_EDGES,
        });
    }
    let mut edges = Vec::with_capacity(2 * ps.len());
    for e in ps.edges() {
        edges.push(Edge::new_unchecked(n + 1, e.base(), e.free_coord()));
        edges.push(Edge::new_unchecked(
            n + 1,
            e.base() | (1 << n),
            e.free_coord(),
        ));
    }
    let lifted = PairingStrategy::new(
        n + 1,
        ps.blocked_dimension() + 1,
        edges,
        format!("lift({})", ps.name()),
    )?;
    check_strategy(&lifted)?;
    Ok(lifted)
}

/// Truncation `(N,k) -> (n,k)` for `n <= N`: keep the edges whose
/// coordinates beyond `n` are all fixed at 0 and drop those coordinates.
/// Pure filter; callers re-verify if desired.
pub fn truncate(ps: &PairingStrategy, n: u32) -> Result<PairingStrategy> {
    let big = ps.dimension();
    if n > big || n == 0 {
        return Err(Error::DimensionOutOfRange { n });
    }
    if n == big {
        return Ok(ps.clone());
    }
    let keep_mask = bits::mask(n);
    let edges: Vec<Edge> = ps
        .edges()
        .iter()
        .filter(|e| e.free_coord() < n && e.base() & !keep_mask == 0)
        .map(|e| Edge::new_unchecked(n, e.base(), e.free_coord()))
        .collect();
    PairingStrategy::new(
        n,
        ps.blocked_dimension(),
        edges,
        format!("truncate({}, {n})", ps.name()),
    )
}

/// A construction recipe: how to reach a strategy for some `Q(n,k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Route {
    /// `PS(4,2)` from the listing.
    Ps42,
    /// `bv(3,2)` from the listing.
    Bv3,
    /// The 24-edge cyclic `Q(6,3)` strategy.
    Q63,
    /// The rotating `Q(9,4)` strategy.
    RotQ94,
    /// Member `j=0, s=0` of the level-`d` q4 family.
    Q4Member { d: u32 },
    /// Four-bin product over the inner route's strategy.
    BinPs(Box<Route>),
    /// `times` successive lifts of the inner strategy.
    Lift { inner: Box<Route>, times: u32 },
    /// Truncation of the inner strategy to dimension `to`.
    Truncate { inner: Box<Route>, to: u32 },
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Route::Ps42 => write!(f, "PS(4,2)"),
            Route::Bv3 => write!(f, "bv(3,2)"),
            Route::Q63 => write!(f, "cyclic Q(6,3)"),
            Route::RotQ94 => write!(f, "rotating Q(9,4)"),
            Route::Q4Member { d } => write!(f, "q4-family(d={d}) member"),
            Route::BinPs(inner) => write!(f, "binps[{inner}]"),
            Route::Lift { inner, times } => write!(f, "lift^{times}[{inner}]"),
            Route::Truncate { inner, to } => write!(f, "truncate[{inner} -> {to}]"),
        }
    }
}

impl Route {
    /// Edge count the materialized strategy would have (upper bound for
    /// truncations).
    pub fn estimated_edges(&self) -> u128 {
        match self {
            Route::Ps42 => 8,
            Route::Bv3 => 3,
            Route::Q63 => 24,
            Route::RotQ94 => 144,
            Route::Q4Member { d } => 1u128 << (4u32.pow(d + 1) - 1),
            Route::BinPs(inner) => {
                let n = inner.board_dimension();
                8u128 * (1u128 << (n - 1)).pow(3) * inner.estimated_edges()
            }
            Route::Lift { inner, times } => inner.estimated_edges() << times,
            Route::Truncate { inner, .. } => inner.estimated_edges(),
        }
    }

    /// Board dimension of the strategy this route produces.
    pub fn board_dimension(&self) -> u32 {
        match self {
            Route::Ps42 => 4,
            Route::Bv3 => 3,
            Route::Q63 => 6,
            Route::RotQ94 => 9,
            Route::Q4Member { d } => 4u32.pow(d + 1),
            Route::BinPs(inner) => 4 * inner.board_dimension(),
            Route::Lift { inner, times } => inner.board_dimension() + times,
            Route::Truncate { to, .. } => *to,
        }
    }

    /// Materializes the strategy, verifying along the way. Errors with
    /// [`Error::TooLargeToMaterialize`] when the recipe exceeds
    /// [`MAX_MATERIALIZE_EDGES`].
    pub fn build(&self) -> Result<PairingStrategy> {
        if self.estimated_edges() > MAX_MATERIALIZE_EDGES as u128 {
            return Err(Error::TooLargeToMaterialize {
                estimated: self.estimated_edges(),
                limit: MAX_MATERIALIZE_EDGES,
            });
        }
        match self {
            Route::Ps42 => Ok(base::ps_4_2()),
            Route::Bv3 => Ok(base::bv_3()),
            Route::Q63 => Ok(base::q6_3()),
            Route::RotQ94 => Ok(rotating_q9_4_demo()),
            Route::Q4Member { d } => {
                if *d != 1 {
                    return Err(Error::DimensionOutOfRange { n: 4u32.pow(d + 1) });
                }
                let (even, odd) = crate::partitions::half_plus1(2)?;
                let scheme =
                    RotationScheme::new((0..4).map(base::ps_j_4_2).collect(), even, odd, 0)?;
                bin_ps_rotating(&scheme, &base::ps_j_4_2(0))
            }
            Route::BinPs(inner) => bin_ps(&inner.build()?),
            Route::Lift { inner, times } => {
                let mut ps = inner.build()?;
                for _ in 0..*times {
                    ps = lift_plus1(&ps)?;
                }
                Ok(ps)
            }
            Route::Truncate { inner, to } => {
                let ps = truncate(&inner.build()?, *to)?;
                check_strategy(&ps)?;
                Ok(ps)
            }
        }
    }
}

/// What the schedule achieves for a board dimension: the smallest blocked
/// subcube dimension `k` this machinery reaches, with the recipe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestStrategy {
    pub n: u32,
    pub k: u32,
    pub route: Route,
}

impl BestStrategy {
    /// Materializes the scheduled strategy when it fits the size cap.
    pub fn build(&self) -> Result<PairingStrategy> {
        let ps = self.route.build()?;
        debug_assert_eq!(ps.dimension(), self.n);
        debug_assert_eq!(ps.blocked_dimension(), self.k);
        Ok(ps)
    }
}

/// Anchors of the schedule at scale `m`: `(board, blocked, route)` for
/// `4^(m+1)`, `6*4^m`, and `9*4^m`.
fn anchor(pos: usize, m: u32) -> (u32, u32, Route) {
    let pow = 4u32.pow(m);
    match pos {
        0 => (
            4 * pow,
            pow + 1,
            if m == 0 {
                Route::Ps42
            } else {
                Route::Q4Member { d: m }
            },
        ),
        1 => (
            6 * pow,
            2 * pow + 1,
            if m == 0 {
                Route::Q63
            } else {
                Route::BinPs(Box::new(anchor(1, m - 1).2))
            },
        ),
        2 => (
            9 * pow,
            3 * pow + 1,
            if m == 0 {
                Route::RotQ94
            } else {
                Route::BinPs(Box::new(anchor(2, m - 1).2))
            },
        ),
        _ => unreachable!(),
    }
}

/// The interval schedule: locate `n` among the anchors
/// `4^(m+1) < 6*4^m < 9*4^m < 4^(m+2)`, lift from the anchor below for
/// offsets up to `4^m`, truncate from the anchor above beyond. The
/// returned `k` never exceeds `floor(3n/7) + 1`.
pub fn best_strategy(n: u32) -> Result<BestStrategy> {
    if !(3..=63).contains(&n) {
        return Err(Error::DimensionOutOfRange { n });
    }
    if n == 3 {
        return Ok(BestStrategy {
            n,
            k: 2,
            route: Route::Bv3,
        });
    }
    let m = if n < 16 { 0 } else { 1 };
    let ladder: [(u32, u32, Route); 4] =
        [anchor(0, m), anchor(1, m), anchor(2, m), anchor(0, m + 1)];
    let pow = 4u32.pow(m);
    for (i, &(anchor_n, anchor_k, ref route)) in ladder.iter().enumerate() {
        if n == anchor_n {
            return Ok(BestStrategy {
                n,
                k: anchor_k,
                route: route.clone(),
            });
        }
        if i + 1 < ladder.len() && n < ladder[i + 1].0 {
            let offset = n - anchor_n;
            return Ok(if offset <= pow {
                BestStrategy {
                    n,
                    k: anchor_k + offset,
                    route: Route::Lift {
                        inner: Box::new(route.clone()),
                        times: offset,
                    },
                }
            } else {
                let (_, up_k, up_route) = ladder[i + 1].clone();
                BestStrategy {
                    n,
                    k: up_k,
                    route: Route::Truncate {
                        inner: Box::new(up_route),
                        to: n,
                    },
                }
            });
        }
    }
    unreachable!("n <= 63 always falls inside the m <= 1 ladder")
}

/// `floor(3n/7) + 1`, the guarantee the schedule stays under.
pub fn schedule_bound(n: u32) -> u32 {
    3 * n / 7 + 1
}
