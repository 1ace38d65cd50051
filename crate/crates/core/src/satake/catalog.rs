//! Catalog text format.
//!
//! ```text
//! # comment
//! name=su(2,1); type=A2; black={}; arrows={(1,2)}
//! name=so(4,1)
//! type=B; rank=2
//! black={2}
//! ```
//!
//! A catalog is a sequence of stanzas. Fields are `key=value` separated by
//! `;` or line breaks, and each `name=` field opens a new stanza. Keys:
//! `name` (required), `type` (required, either `A2` or a bare family letter
//! together with `rank`), `rank`, `black` (1-based node set, default `{}`),
//! `arrows` (set of unordered node pairs, default `{}`). Anything after `#`
//! is ignored.

use std::collections::{BTreeSet, HashSet};

use sha2::{Digest, Sha256};

use super::{classical_stanzas, SatakeDiagram, SatakeError};
use crate::rootsys::{CartanType, Family};

const EXCEPTIONAL: &str = include_str!("../../data/exceptional.cat");

/// Parsed catalog plus the hash of its source text.
#[derive(Debug, Clone)]
pub struct Catalog {
    pub entries: Vec<SatakeDiagram>,
    pub hash: String,
}

impl Catalog {
    pub fn get(&self, label: &str) -> Option<&SatakeDiagram> {
        self.entries.iter().find(|d| d.label == label)
    }

    pub fn labels(&self) -> Vec<&str> {
        self.entries.iter().map(|d| d.label.as_str()).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }
}

/// Hex SHA-256 of the catalog source.
pub fn catalog_hash(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Text of the shipped catalog: generated classical families followed by the
/// exceptional stanzas.
pub fn builtin_catalog_text() -> String {
    let mut text = String::from("# classical families up to rank 4\n");
    for sd in classical_stanzas() {
        text.push_str(&sd.to_stanza());
        text.push('\n');
    }
    text.push_str(EXCEPTIONAL);
    text
}

pub fn builtin_catalog() -> Catalog {
    let text = builtin_catalog_text();
    load_catalog(&text).expect("shipped catalog parses")
}

#[derive(Default)]
struct Pending {
    line: usize,
    name: String,
    ty: Option<(String, usize)>,
    rank: Option<(usize, usize)>,
    black: Option<(BTreeSet<usize>, usize)>,
    arrows: Option<(BTreeSet<(usize, usize)>, usize)>,
}

impl Pending {
    fn finish(self) -> Result<SatakeDiagram, SatakeError> {
        let (ty, ty_line) = self.ty.ok_or_else(|| SatakeError::Parse {
            line: self.line,
            reason: format!("stanza {:?} has no type", self.name),
        })?;
        let perr = |line: usize, reason: String| SatakeError::Parse { line, reason };
        let mut chars = ty.chars();
        let family = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| perr(ty_line, format!("unsupported Cartan type {ty:?}")))?;
        let digits = chars.as_str();
        let rank = match (digits.is_empty(), self.rank) {
            (true, None) => return Err(perr(ty_line, "type has no rank".into())),
            (true, Some((r, _))) => r,
            (false, rank_field) => {
                let r: usize = digits
                    .parse()
                    .map_err(|_| perr(ty_line, format!("unsupported Cartan type {ty:?}")))?;
                if let Some((rr, line)) = rank_field {
                    if rr != r {
                        return Err(perr(line, format!("rank {rr} disagrees with type {ty}")));
                    }
                }
                r
            }
        };
        let cartan_type =
            CartanType::new(family, rank).map_err(|e| perr(ty_line, e.to_string()))?;
        let to0 = |v: usize, line: usize| {
            v.checked_sub(1)
                .ok_or_else(|| perr(line, "node indices start at 1".into()))
        };
        let mut black = BTreeSet::new();
        if let Some((set, line)) = self.black {
            for b in set {
                black.insert(to0(b, line)?);
            }
        }
        let mut arrows = BTreeSet::new();
        if let Some((set, line)) = self.arrows {
            for (i, j) in set {
                let (i, j) = (to0(i, line)?, to0(j, line)?);
                arrows.insert((i.min(j), i.max(j)));
            }
        }
        Ok(SatakeDiagram {
            label: self.name,
            cartan_type,
            black,
            arrows,
        })
    }
}

/// Parses catalog text. Diagrams are returned unvalidated.
pub fn load_catalog(text: &str) -> Result<Catalog, SatakeError> {
    let mut entries = Vec::new();
    let mut labels = HashSet::new();
    let mut current: Option<Pending> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        for field in content.split(';') {
            let field = field.trim();
            if field.is_empty() {
                continue;
            }
            let (key, value) = field.split_once('=').ok_or_else(|| SatakeError::Parse {
                line,
                reason: format!("expected key=value, found {field:?}"),
            })?;
            let (key, value) = (key.trim(), value.trim());
            if key == "name" {
                if value.is_empty() {
                    return Err(SatakeError::Parse { line, reason: "empty name".into() });
                }
                if let Some(p) = current.take() {
                    entries.push(p.finish()?);
                }
                if !labels.insert(value.to_string()) {
                    return Err(SatakeError::Duplicate { line, label: value.to_string() });
                }
                current = Some(Pending {
                    line,
                    name: value.to_string(),
                    ..Pending::default()
                });
                continue;
            }
            let p = current.as_mut().ok_or_else(|| SatakeError::Parse {
                line,
                reason: format!("field {key:?} before any name="),
            })?;
            let dup = || SatakeError::Parse { line, reason: format!("repeated key {key:?}") };
            match key {
                "type" => {
                    if p.ty.replace((value.to_string(), line)).is_some() {
                        return Err(dup());
                    }
                }
                "rank" => {
                    let r = value.parse().map_err(|_| SatakeError::Parse {
                        line,
                        reason: format!("bad rank {value:?}"),
                    })?;
                    if p.rank.replace((r, line)).is_some() {
                        return Err(dup());
                    }
                }
                "black" => {
                    let set = parse_index_set(value).map_err(|reason| SatakeError::Parse { line, reason })?;
                    if p.black.replace((set, line)).is_some() {
                        return Err(dup());
                    }
                }
                "arrows" => {
                    let set = parse_arrows(value).map_err(|reason| SatakeError::Parse { line, reason })?;
                    if p.arrows.replace((set, line)).is_some() {
                        return Err(dup());
                    }
                }
                other => {
                    return Err(SatakeError::Parse {
                        line,
                        reason: format!("unknown key {other:?}"),
                    })
                }
            }
        }
    }
    if let Some(p) = current.take() {
        entries.push(p.finish()?);
    }
    Ok(Catalog {
        entries,
        hash: catalog_hash(text),
    })
}

fn strip_braces(s: &str) -> Result<&str, String> {
    s.trim()
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| format!("expected a set literal {{...}}, found {s:?}"))
}

/// Parses `{1,3}` into 1-based indices.
pub fn parse_index_set(s: &str) -> Result<BTreeSet<usize>, String> {
    let inner = strip_braces(s)?;
    let mut out = BTreeSet::new();
    for part in inner.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let v: usize = part.parse().map_err(|_| format!("bad node index {part:?}"))?;
        if !out.insert(v) {
            return Err(format!("node {v} listed twice"));
        }
    }
    Ok(out)
}

/// Parses `{(1,3),(2,4)}` into 1-based unordered pairs.
pub fn parse_arrows(s: &str) -> Result<BTreeSet<(usize, usize)>, String> {
    let inner = strip_braces(s)?.trim();
    let mut out = BTreeSet::new();
    let mut rest = inner;
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| format!("expected '(' in arrows at {rest:?}"))?;
        let (pair, after) = open
            .split_once(')')
            .ok_or_else(|| format!("unclosed pair in arrows {s:?}"))?;
        let (a, b) = pair
            .split_once(',')
            .ok_or_else(|| format!("arrow needs two nodes, found ({pair})"))?;
        let a: usize = a.trim().parse().map_err(|_| format!("bad node index {a:?}"))?;
        let b: usize = b.trim().parse().map_err(|_| format!("bad node index {b:?}"))?;
        out.insert((a.min(b), a.max(b)));
        rest = after.trim_start();
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }
    Ok(out)
}

/// Renders 0-based indices as a 1-based set literal.
pub fn format_index_set(set: &BTreeSet<usize>) -> String {
    let parts: Vec<String> = set.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Renders 0-based pairs as a 1-based arrow literal.
pub fn format_arrows(set: &BTreeSet<(usize, usize)>) -> String {
    let parts: Vec<String> = set
        .iter()
        .map(|(i, j)| format!("({},{})", i + 1, j + 1))
        .collect();
    format!("{{{}}}", parts.join(","))
}
