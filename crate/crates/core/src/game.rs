//! Maker-Breaker play on `Q(n,k)`: Maker tries to occupy all `2^k`
//! vertices of some k-subcube, Breaker answers each Maker move with the
//! paired vertex of a pairing strategy (falling back to the lowest free
//! vertex when no pair applies). Maker moves first and every playthrough
//! is deterministic given (strategy, policy, seed).

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::bits::{MaskCombinations, SplitMix64};
use crate::cube::{Subcube, SubcubeIter, Vertex};
use crate::error::{Error, Result};
use crate::strategy::PairingStrategy;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Player {
    Maker,
    Breaker,
}

/// How Maker picks her moves.
#[derive(Debug, Clone)]
pub enum MakerPolicy {
    /// Uniform over free vertices, seeded.
    Random { seed: u64 },
    /// Maximizes the number of still-winnable k-subcubes through the chosen
    /// vertex (no Breaker vertex inside), ties broken by lowest encoding.
    Greedy,
    /// Plays the listed vertices in order; errors on an illegal move.
    Scripted(Vec<Vertex>),
}

/// Final result of one playthrough.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub winner: Player,
    /// Fully Maker-occupied k-subcube when Maker wins.
    pub witness: Option<Subcube>,
    pub moves: u32,
}

/// Move list of a playthrough.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript(pub Vec<(Player, Vertex)>);

impl Transcript {
    /// One `M bitstring` / `B bitstring` line per move plus an outcome
    /// trailer.
    pub fn render(&self, outcome: &Outcome) -> String {
        let mut out = String::new();
        for (p, v) in &self.0 {
            let tag = match p {
                Player::Maker => "M",
                Player::Breaker => "B",
            };
            out.push_str(&format!("{tag} {v}\n"));
        }
        match (&outcome.winner, &outcome.witness) {
            (Player::Maker, Some(w)) => out.push_str(&format!(
                "winner=Maker witness={w} moves={}\n",
                outcome.moves
            )),
            _ => out.push_str(&format!("winner=Breaker moves={}\n", outcome.moves)),
        }
        out
    }
}

struct Board {
    n: u32,
    maker: Vec<u64>,
    breaker: Vec<u64>,
    occupied_count: u64,
}

impl Board {
    fn new(n: u32) -> Board {
        let words = (1usize << n).div_ceil(64);
        Board {
            n,
            maker: vec![0; words],
            breaker: vec![0; words],
            occupied_count: 0,
        }
    }

    #[inline]
    fn is_maker(&self, v: u64) -> bool {
        self.maker[(v >> 6) as usize] >> (v & 63) & 1 == 1
    }

    #[inline]
    fn is_breaker(&self, v: u64) -> bool {
        self.breaker[(v >> 6) as usize] >> (v & 63) & 1 == 1
    }

    #[inline]
    fn is_occupied(&self, v: u64) -> bool {
        self.is_maker(v) || self.is_breaker(v)
    }

    fn occupy(&mut self, player: Player, v: u64) {
        debug_assert!(!self.is_occupied(v));
        let slot = (v >> 6) as usize;
        let bit = 1u64 << (v & 63);
        match player {
            Player::Maker => self.maker[slot] |= bit,
            Player::Breaker => self.breaker[slot] |= bit,
        }
        self.occupied_count += 1;
    }

    fn is_full(&self) -> bool {
        self.occupied_count == 1u64 << self.n
    }

    fn lowest_free(&self) -> Option<u64> {
        for (i, (&m, &b)) in self.maker.iter().zip(&self.breaker).enumerate() {
            let free = !(m | b);
            if free != 0 {
                let v = (i as u64) * 64 + free.trailing_zeros() as u64;
                if v < 1u64 << self.n {
                    return Some(v);
                }
            }
        }
        None
    }
}

/// Live game: board occupancy, the strategy's pair map, and the running
/// transcript.
pub struct GameState {
    n: u32,
    k: u32,
    board: Board,
    pair: FxHashMap<u64, u64>,
    transcript: Vec<(Player, Vertex)>,
}

impl GameState {
    pub fn new(n: u32, k: u32, strategy: &PairingStrategy) -> Result<GameState> {
        if strategy.dimension() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: strategy.dimension(),
            });
        }
        if k > n || k == 0 {
            return Err(Error::BlockDimensionOutOfRange { k, n });
        }
        if n > 26 {
            return Err(Error::BudgetExceeded {
                reason: format!("game boards are capped at n <= 26, got {n}"),
            });
        }
        Ok(GameState {
            n,
            k,
            board: Board::new(n),
            pair: strategy.pair_map(),
            transcript: Vec::new(),
        })
    }

    pub fn dimension(&self) -> u32 {
        self.n
    }

    pub fn transcript(&self) -> &[(Player, Vertex)] {
        &self.transcript
    }

    pub fn is_free(&self, v: Vertex) -> bool {
        !self.board.is_occupied(v.bits())
    }

    fn occupy(&mut self, player: Player, v: Vertex) {
        self.board.occupy(player, v.bits());
        self.transcript.push((player, v));
    }

    /// Breaker's reply to Maker taking `x`: the paired vertex when defined
    /// and free, otherwise the lowest free vertex.
    pub fn breaker_respond(&self, x: Vertex) -> Result<Vertex> {
        if let Some(&partner) = self.pair.get(&x.bits()) {
            if !self.board.is_occupied(partner) {
                return Ok(Vertex::new_unchecked(self.n, partner));
            }
        }
        self.board
            .lowest_free()
            .map(|v| Vertex::new_unchecked(self.n, v))
            .ok_or(Error::BoardFull)
    }

    /// Win test after Maker takes `x`: scans the `C(n,k)` k-subcubes
    /// through `x` for one fully Maker-occupied.
    pub fn maker_win_check(&self, x: Vertex) -> Option<Subcube> {
        let xb = x.bits();
        for mask in MaskCombinations::new(self.n, self.k) {
            let fixed = xb & !mask;
            let mut all = true;
            let mut t = mask;
            loop {
                if !self.board.is_maker(fixed | t) {
                    all = false;
                    break;
                }
                if t == 0 {
                    break;
                }
                t = (t - 1) & mask;
            }
            if all {
                return Some(Subcube::new_unchecked(self.n, mask, fixed));
            }
        }
        None
    }

    /// Full-board scan validating [`Self::maker_win_check`] in tests.
    pub fn full_board_win_scan(&self) -> Option<Subcube> {
        SubcubeIter::new(self.n, self.k)
            .find(|s| s.vertices().all(|v| self.board.is_maker(v.bits())))
    }
}

struct FreeList {
    vertices: Vec<u64>,
    position: Vec<u32>,
}

impl FreeList {
    fn new(n: u32) -> FreeList {
        FreeList {
            vertices: (0..1u64 << n).collect(),
            position: (0..1u32 << n).collect(),
        }
    }

    fn remove(&mut self, v: u64) {
        let pos = self.position[v as usize] as usize;
        let last = *self.vertices.last().expect("nonempty");
        self.vertices.swap_remove(pos);
        if pos < self.vertices.len() {
            self.position[last as usize] = pos as u32;
        }
    }

    fn len(&self) -> u64 {
        self.vertices.len() as u64
    }
}

/// Plays one full game. The outcome carries the winner, Maker's witness
/// subcube if any, and the move count; the transcript lists every move.
pub fn play(
    n: u32,
    k: u32,
    strategy: &PairingStrategy,
    policy: &MakerPolicy,
) -> Result<(Outcome, Transcript)> {
    let mut state = GameState::new(n, k, strategy)?;
    let mut free = FreeList::new(n);
    let mut rng = match policy {
        MakerPolicy::Random { seed } => Some(SplitMix64::new(*seed)),
        _ => None,
    };
    let mut script = match policy {
        MakerPolicy::Scripted(moves) => Some(moves.iter()),
        _ => None,
    };

    loop {
        if state.board.is_full() {
            return finish_breaker(state);
        }
        let x = match policy {
            MakerPolicy::Random { .. } => {
                let rng = rng.as_mut().expect("rng for random policy");
                Vertex::new_unchecked(n, free.vertices[rng.below(free.len()) as usize])
            }
            MakerPolicy::Greedy => greedy_move(&state, &free),
            MakerPolicy::Scripted(_) => {
                let it = script.as_mut().expect("script iterator");
                let v = it.next().ok_or_else(|| Error::IllegalMove {
                    reason: "script exhausted before the game ended".into(),
                })?;
                if v.dimension() != n {
                    return Err(Error::IllegalMove {
                        reason: format!("scripted move {v} has wrong dimension"),
                    });
                }
                if !state.is_free(*v) {
                    return Err(Error::IllegalMove {
                        reason: format!("scripted move {v} is already occupied"),
                    });
                }
                *v
            }
        };
        state.occupy(Player::Maker, x);
        free.remove(x.bits());
        if let Some(witness) = state.maker_win_check(x) {
            let moves = state.transcript.len() as u32;
            return Ok((
                Outcome {
                    winner: Player::Maker,
                    witness: Some(witness),
                    moves,
                },
                Transcript(state.transcript),
            ));
        }
        if state.board.is_full() {
            return finish_breaker(state);
        }
        let y = state.breaker_respond(x)?;
        state.occupy(Player::Breaker, y);
        free.remove(y.bits());
    }
}

fn finish_breaker(state: GameState) -> Result<(Outcome, Transcript)> {
    let moves = state.transcript.len() as u32;
    Ok((
        Outcome {
            winner: Player::Breaker,
            witness: None,
            moves,
        },
        Transcript(state.transcript),
    ))
}

fn greedy_move(state: &GameState, free: &FreeList) -> Vertex {
    let mut best: Option<(u64, u64)> = None; // (count, vertex), lowest vertex wins ties
    for &v in &free.vertices {
        let mut count = 0u64;
        for mask in MaskCombinations::new(state.n, state.k) {
            let fixed = v & !mask;
            let mut winnable = true;
            let mut t = mask;
            loop {
                if state.board.is_breaker(fixed | t) {
                    winnable = false;
                    break;
                }
                if t == 0 {
                    break;
                }
                t = (t - 1) & mask;
            }
            if winnable {
                count += 1;
            }
        }
        let better = match best {
            None => true,
            Some((c, bv)) => count > c || (count == c && v < bv),
        };
        if better {
            best = Some((count, v));
        }
    }
    let (_, v) = best.expect("free vertex exists");
    Vertex::new_unchecked(state.n, v)
}

/// Tally from a batch of random-Maker games with per-game seeds
/// `seed, seed+1, ...`; games run in parallel, deterministically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchSummary {
    pub games: u64,
    pub breaker_wins: u64,
    pub maker_wins: u64,
    /// Seed of the first game Maker won, if any.
    pub first_maker_win_seed: Option<u64>,
}

pub fn play_random_batch(
    n: u32,
    k: u32,
    strategy: &PairingStrategy,
    games: u64,
    seed: u64,
) -> Result<BatchSummary> {
    GameState::new(n, k, strategy)?; // validate once up front
    let results: Vec<(u64, Player)> = (0..games)
        .into_par_iter()
        .map(|i| {
            let game_seed = seed.wrapping_add(i);
            let policy = MakerPolicy::Random { seed: game_seed };
            let (outcome, _) = play(n, k, strategy, &policy).expect("validated inputs");
            (game_seed, outcome.winner)
        })
        .collect();
    let maker_wins = results.iter().filter(|(_, w)| *w == Player::Maker).count() as u64;
    let first_maker_win_seed = results
        .iter()
        .find(|(_, w)| *w == Player::Maker)
        .map(|(s, _)| *s);
    Ok(BatchSummary {
        games,
        breaker_wins: games - maker_wins,
        maker_wins,
        first_maker_win_seed,
    })
}

/// Script targeting a subcube: its vertices in increasing encoding order.
pub fn script_for_subcube(s: &Subcube) -> Vec<Vertex> {
    let mut vs: Vec<Vertex> = s.vertices().collect();
    vs.sort_unstable();
    vs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base;
    use crate::verify;

    fn v(s: &str) -> Vertex {
        s.parse().unwrap()
    }

    #[test]
    fn breaker_answers_within_the_pair() {
        let state = GameState::new(4, 2, &base::ps_4_2()).unwrap();
        assert_eq!(state.breaker_respond(v("0000")).unwrap(), v("1000"));
    }

    #[test]
    fn fallback_takes_the_lowest_free_vertex() {
        let ps = PairingStrategy::new(3, 2, vec!["v01".parse().unwrap()], "tiny").unwrap();
        let mut state = GameState::new(3, 2, &ps).unwrap();
        // 010 is in no pair: fallback
        assert_eq!(state.breaker_respond(v("010")).unwrap(), v("000"));
        // partner already taken by Breaker: fallback
        state.occupy(Player::Breaker, v("101"));
        state.occupy(Player::Maker, v("000"));
        assert_eq!(state.breaker_respond(v("001")).unwrap(), v("100"));
    }

    #[test]
    fn win_check_scans_subcubes_through_the_move() {
        let ps = PairingStrategy::new(4, 2, vec![], "empty").unwrap();
        let mut state = GameState::new(4, 2, &ps).unwrap();
        assert_eq!(MaskCombinations::new(4, 2).count(), 6);
        for s in ["0000", "1000", "0100"] {
            state.occupy(Player::Maker, v(s));
            assert_eq!(state.maker_win_check(v(s)), None);
            assert_eq!(state.full_board_win_scan(), None);
        }
        state.occupy(Player::Maker, v("1100"));
        let win = state.maker_win_check(v("1100")).unwrap();
        assert_eq!(win.to_string(), "**00");
        assert_eq!(state.full_board_win_scan(), Some(win));
    }

    #[test]
    fn first_move_never_wins() {
        let ps = base::ps_4_2();
        let mut state = GameState::new(4, 2, &ps).unwrap();
        state.occupy(Player::Maker, v("0101"));
        assert_eq!(state.maker_win_check(v("0101")), None);
    }

    #[test]
    fn breaker_wins_every_random_game_with_a_verified_strategy() {
        for (ps, k) in [(base::ps_4_2(), 2), (base::q6_3(), 3), (base::bv_3(), 2)] {
            assert!(verify::covers_all(&ps, k));
            let n = ps.dimension();
            for seed in 0..30u64 {
                let (outcome, transcript) = play(n, k, &ps, &MakerPolicy::Random { seed }).unwrap();
                assert_eq!(outcome.winner, Player::Breaker, "{} seed {seed}", ps.name());
                assert_eq!(outcome.moves, 1 << n);
                assert_legal(&transcript, n);
            }
        }
    }

    #[test]
    fn greedy_maker_also_loses_on_verified_strategies() {
        for (ps, k) in [(base::ps_4_2(), 2), (base::bv_3(), 2), (base::q6_3(), 3)] {
            let n = ps.dimension();
            let (outcome, _) = play(n, k, &ps, &MakerPolicy::Greedy).unwrap();
            assert_eq!(outcome.winner, Player::Breaker);
        }
    }

    #[test]
    fn whole_cube_game_is_a_trivial_breaker_win() {
        let (outcome, _) = play(3, 3, &base::bv_3(), &MakerPolicy::Random { seed: 5 }).unwrap();
        assert_eq!(outcome.winner, Player::Breaker);
    }

    #[test]
    fn identical_seeds_give_identical_transcripts() {
        let ps = base::q6_3();
        let a = play(6, 3, &ps, &MakerPolicy::Random { seed: 1234 }).unwrap();
        let b = play(6, 3, &ps, &MakerPolicy::Random { seed: 1234 }).unwrap();
        assert_eq!(a.1, b.1);
        let c = play(6, 3, &ps, &MakerPolicy::Random { seed: 1235 }).unwrap();
        assert_ne!(a.1, c.1);
    }

    #[test]
    fn scripted_maker_steals_an_uncovered_subcube() {
        // drop (1,0,1,v): the 2-subcube (*,0,1,*) loses its only cover
        let mut edges = base::ps_4_2().edges().to_vec();
        edges.retain(|e| e.to_string() != "101v");
        let broken = PairingStrategy::new(4, 2, edges, "PS(4,2) minus 101v").unwrap();
        let witness = verify::first_uncovered(4, 2, broken.edges()).unwrap();
        assert_eq!(witness.to_string(), "*01*");
        let script = MakerPolicy::Scripted(script_for_subcube(&witness));
        let (outcome, transcript) = play(4, 2, &broken, &script).unwrap();
        assert_eq!(outcome.winner, Player::Maker);
        assert_eq!(outcome.witness, Some(witness));
        assert_legal(&transcript, 4);
    }

    #[test]
    fn scripted_illegal_moves_error() {
        let ps = base::ps_4_2();
        let script = MakerPolicy::Scripted(vec![v("0000"), v("0000")]);
        // Breaker answers 0000 with 1000; replaying 0000 is illegal
        assert!(matches!(
            play(4, 2, &ps, &script),
            Err(Error::IllegalMove { .. })
        ));
        let script = MakerPolicy::Scripted(vec![v("0000")]);
        assert!(matches!(
            play(4, 2, &ps, &script),
            Err(Error::IllegalMove { .. })
        ));
    }

    #[test]
    fn board_and_strategy_must_agree() {
        assert!(GameState::new(5, 2, &base::ps_4_2()).is_err());
        assert!(GameState::new(4, 0, &base::ps_4_2()).is_err());
    }

    #[test]
    fn batch_is_deterministic_and_breaker_sweeps() {
        let ps = base::q6_3();
        let a = play_random_batch(6, 3, &ps, 64, 99).unwrap();
        let b = play_random_batch(6, 3, &ps, 64, 99).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.breaker_wins, 64);
        assert_eq!(a.first_maker_win_seed, None);
    }

    #[test]
    fn transcript_renders_moves_and_trailer() {
        let (outcome, transcript) =
            play(3, 2, &base::bv_3(), &MakerPolicy::Random { seed: 0 }).unwrap();
        let text = transcript.render(&outcome);
        assert!(text.starts_with("M "));
        assert!(text.ends_with("winner=Breaker moves=8\n"));
        assert_eq!(text.lines().count(), 9);
    }

    fn assert_legal(transcript: &Transcript, n: u32) {
        let mut seen = std::collections::BTreeSet::new();
        for (i, (p, v)) in transcript.0.iter().enumerate() {
            let expect = if i % 2 == 0 {
                Player::Maker
            } else {
                Player::Breaker
            };
            assert_eq!(*p, expect, "alternation at move {i}");
            assert!(seen.insert(v.bits()), "vertex {v} occupied twice");
            assert_eq!(v.dimension(), n);
        }
    }
}
