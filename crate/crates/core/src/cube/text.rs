//! Textual vector syntax: strings over `{0,1,v,*}` of length `n`, leftmost
//! character = coordinate 1. `v` marks an edge's free coordinate (exactly
//! one), `*` marks a subcube's free coordinates. Parsing also accepts the
//! tuple spelling `(v,0,0,0)` so listings can be embedded verbatim.

use std::fmt;
use std::str::FromStr;

use super::{Edge, Subcube, Vertex};
use crate::error::{Error, Result};

fn strip_tuple_syntax(s: &str) -> String {
    s.chars()
        .filter(|c| !matches!(c, '(' | ')' | ',' | ' ' | '\t'))
        .collect()
}

fn parse_error(reason: impl Into<String>) -> Error {
    Error::Parse {
        reason: reason.into(),
    }
}

fn check_len(s: &str) -> Result<u32> {
    let len = s.chars().count();
    if len == 0 || len > 63 {
        return Err(parse_error(format!(
            "vector length {len} out of range (1..=63)"
        )));
    }
    Ok(len as u32)
}

impl FromStr for Vertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Vertex> {
        let s = strip_tuple_syntax(s);
        let n = check_len(&s)?;
        let mut bits = 0u64;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << i,
                other => return Err(parse_error(format!("unexpected '{other}' in vertex"))),
            }
        }
        Vertex::new(n, bits)
    }
}

impl FromStr for Edge {
    type Err = Error;

    fn from_str(s: &str) -> Result<Edge> {
        let s = strip_tuple_syntax(s);
        let n = check_len(&s)?;
        let mut bits = 0u64;
        let mut free = None;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << i,
                'v' => {
                    if free.replace(i as u32).is_some() {
                        return Err(parse_error("edge has more than one 'v'"));
                    }
                }
                other => return Err(parse_error(format!("unexpected '{other}' in edge"))),
            }
        }
        let free = free.ok_or_else(|| parse_error("edge has no 'v'"))?;
        Edge::new(n, bits, free)
    }
}

impl FromStr for Subcube {
    type Err = Error;

    fn from_str(s: &str) -> Result<Subcube> {
        let s = strip_tuple_syntax(s);
        let n = check_len(&s)?;
        let mut stars = 0u64;
        let mut fixed = 0u64;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => fixed |= 1 << i,
                '*' => stars |= 1 << i,
                other => return Err(parse_error(format!("unexpected '{other}' in subcube"))),
            }
        }
        Subcube::new(n, stars, fixed)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            f.write_str(if self.bits >> i & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            if i == self.free_coord {
                f.write_str("v")?;
            } else {
                f.write_str(if self.base >> i & 1 == 1 { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Subcube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            if self.star_mask >> i & 1 == 1 {
                f.write_str("*")?;
            } else {
                f.write_str(if self.fixed_bits >> i & 1 == 1 {
                    "1"
                } else {
                    "0"
                })?;
            }
        }
        Ok(())
    }
}

/// Splits a tuple-notation listing like `"(v,0,0,0), (0,v,1,0)"` (newlines ok)
/// into the edges it lists.
pub fn parse_edge_listing(listing: &str) -> Result<Vec<Edge>> {
    listing
        .split(')')
        .map(|chunk| chunk.trim_matches(|c: char| c.is_whitespace() || c == ',' || c == '('))
        .filter(|chunk| !chunk.is_empty())
        .map(|chunk| chunk.parse())
        .collect()
}
