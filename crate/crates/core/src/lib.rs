//! Pairing strategies for Maker-Breaker games on the boolean hypercube
//! `Q_n` where the winning sets are the `k`-dimensional subcubes.
//!
//! A pairing strategy is a matching in `Q_n` such that every `k`-subcube
//! contains a matched edge; Breaker answers Maker inside the pair and
//! therefore owns a vertex of every winning set. This crate provides:
//!
//! * bit-level cube primitives ([`cube`]): vertices, edges, subcubes,
//!   bin decompositions and exhaustive enumeration;
//! * the small hand-listed strategies ([`base`]) that seed everything else;
//! * indexed partitions of the even/odd vertex classes ([`partitions`])
//!   used by the rotating constructions;
//! * the strategy-building machinery ([`constructions`]): bin products,
//!   rotated bin products, the recursive `Q(4^{d+1}, 4^d+1)` and
//!   `Q(3^{d+1}, 3^d+1)` families, dimension lifts and truncations, and the
//!   best-known schedule for arbitrary `n`;
//! * exhaustive, parallel verification of every claimed property
//!   ([`verify`]), plus a tiny brute-force oracle;
//! * a game engine ([`game`]) that plays Breaker by a pairing strategy
//!   against pluggable Maker policies;
//! * the textual strategy file format ([`mod@format`]).
//!
//! ```
//! use cubepair_core::{base, constructions, game, verify};
//!
//! // the 1536-edge strategy blocking every 5-subcube of Q_12
//! let binps = constructions::bin_ps(&base::bv_3())?;
//! assert_eq!(binps.len(), 1536);
//! assert!(verify::covers_all(&binps, 5));
//!
//! // so Breaker wins any playthrough
//! let policy = game::MakerPolicy::Random { seed: 7 };
//! let (outcome, _) = game::play(12, 5, &binps, &policy)?;
//! assert_eq!(outcome.winner, game::Player::Breaker);
//!
//! // the schedule reaches k = 13 on Q_28 via a lift chain
//! let best = constructions::best_strategy(28)?;
//! assert_eq!(best.k, 13);
//! assert_eq!(best.route.to_string(), "lift^4[binps[cyclic Q(6,3)]]");
//! # Ok::<(), cubepair_core::Error>(())
//! ```

pub mod base;
mod bits;
pub mod constructions;
pub mod cube;
pub mod error;
pub mod format;
pub mod game;
pub mod partitions;
pub mod strategy;
pub mod verify;

pub use cube::{BinClass, BinLayout, Edge, GluePart, Glued, Parity, Subcube, Vertex};
pub use error::Error;
pub use strategy::{EdgeSet, PairingStrategy, StrategyFamily};
