//! Strategy file format.
//!
//! A strategy section is a header line
//! `#bps n=<int> k=<int> name=<string>` followed by one edge per line as a
//! length-`n` string over `{0,1,v}` with exactly one `v`. Family files
//! concatenate sections. Canonical line order is by
//! `(free_coord, base bits)`; rendering always emits it and parsing accepts
//! any order.
//!
//! Parsing does not require the edges to form a matching, so a damaged
//! file can still be loaded and fed to the verifier; converting to a
//! [`PairingStrategy`] enforces the matching invariant.

use crate::cube::Edge;
use crate::error::{Error, Result};
use crate::strategy::PairingStrategy;

/// One parsed strategy section: header fields plus raw edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategySection {
    pub n: u32,
    pub k: u32,
    pub name: String,
    pub edges: Vec<Edge>,
}

impl StrategySection {
    pub fn from_strategy(ps: &PairingStrategy) -> StrategySection {
        StrategySection {
            n: ps.dimension(),
            k: ps.blocked_dimension(),
            name: ps.name().to_string(),
            edges: ps.edges().to_vec(),
        }
    }

    /// Validates the section into a strategy (matching check included).
    pub fn to_strategy(&self) -> Result<PairingStrategy> {
        PairingStrategy::new(self.n, self.k, self.edges.clone(), self.name.clone())
    }

    /// Canonical text form: header plus sorted edge lines.
    pub fn render(&self) -> String {
        let mut edges = self.edges.clone();
        edges.sort_unstable();
        let mut out = format!("#bps n={} k={} name={}\n", self.n, self.k, self.name);
        for e in edges {
            out.push_str(&e.to_string());
            out.push('\n');
        }
        out
    }

    /// JSON form of the section.
    pub fn to_json(&self) -> serde_json::Value {
        let mut edges = self.edges.clone();
        edges.sort_unstable();
        serde_json::json!({
            "n": self.n,
            "k": self.k,
            "name": self.name,
            "edges": edges.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// Renders a multi-section family file.
pub fn render_file(sections: &[StrategySection]) -> String {
    sections.iter().map(StrategySection::render).collect()
}

/// Renders one strategy as a single-section file.
pub fn render_strategy(ps: &PairingStrategy) -> String {
    StrategySection::from_strategy(ps).render()
}

/// JSON export of a whole file.
pub fn render_json(sections: &[StrategySection]) -> String {
    let arr: Vec<serde_json::Value> = sections.iter().map(StrategySection::to_json).collect();
    serde_json::to_string_pretty(&arr).expect("sections serialize")
}

fn parse_header(line: &str, lineno: usize) -> Result<StrategySection> {
    let rest = line
        .strip_prefix("#bps")
        .ok_or_else(|| Error::Parse {
            reason: format!("line {lineno}: expected '#bps' header"),
        })?
        .trim_start();
    let name_at = rest.find("name=").ok_or_else(|| Error::Parse {
        reason: format!("line {lineno}: header missing name="),
    })?;
    let name = rest[name_at + 5..].trim_end().to_string();
    let mut n = None;
    let mut k = None;
    for token in rest[..name_at].split_whitespace() {
        if let Some(v) = token.strip_prefix("n=") {
            n = Some(v.parse::<u32>().map_err(|_| Error::Parse {
                reason: format!("line {lineno}: bad n value '{v}'"),
            })?);
        } else if let Some(v) = token.strip_prefix("k=") {
            k = Some(v.parse::<u32>().map_err(|_| Error::Parse {
                reason: format!("line {lineno}: bad k value '{v}'"),
            })?);
        } else {
            return Err(Error::Parse {
                reason: format!("line {lineno}: unexpected header token '{token}'"),
            });
        }
    }
    match (n, k) {
        (Some(n), Some(k)) => Ok(StrategySection {
            n,
            k,
            name,
            edges: Vec::new(),
        }),
        _ => Err(Error::Parse {
            reason: format!("line {lineno}: header needs both n= and k="),
        }),
    }
}

/// Parses a strategy file into its sections.
pub fn parse_file(text: &str) -> Result<Vec<StrategySection>> {
    let mut sections: Vec<StrategySection> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            sections.push(parse_header(line, lineno)?);
            continue;
        }
        let section = sections.last_mut().ok_or_else(|| Error::Parse {
            reason: format!("line {lineno}: edge before any #bps header"),
        })?;
        let edge: Edge = line.parse().map_err(|e| Error::Parse {
            reason: format!("line {lineno}: {e}"),
        })?;
        if edge.dimension() != section.n {
            return Err(Error::Parse {
                reason: format!(
                    "line {lineno}: edge has {} coordinates, section declares n={}",
                    edge.dimension(),
                    section.n
                ),
            });
        }
        section.edges.push(edge);
    }
    if sections.is_empty() {
        return Err(Error::Parse {
            reason: "no #bps section found".into(),
        });
    }
    Ok(sections)
}

/// Parses a file expected to hold exactly one section.
pub fn parse_single(text: &str) -> Result<StrategySection> {
    let mut sections = parse_file(text)?;
    if sections.len() != 1 {
        return Err(Error::Parse {
            reason: format!("expected one section, found {}", sections.len()),
        });
    }
    Ok(sections.pop().expect("checked nonempty"))
}
