//! Element files: the canonical diagram text, several of them separated by
//! `---` lines.
//!
//! ```text
//! domain
//!   t.1
//!   t.2
//! range
//!   t.1
//!   t.2
//! sigma
//!   t.1 -> t.2
//!   t.2 -> t.1
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use rearr_core::{Address, Expansion, GraphPairDiagram, Rearrangement, ReplacementSystem};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Block {
    Domain,
    Range,
    Sigma,
}

fn parse_at(sys: &ReplacementSystem, text: &str, first_line: usize) -> Result<GraphPairDiagram> {
    let mut block = None;
    let mut domain = Vec::new();
    let mut range = Vec::new();
    let mut sigma = BTreeMap::new();
    let mut seen = Vec::new();
    let addr = |line: usize, s: &str| Address::parse(sys, s).map_err(|e| Error::parse(line, e.to_string()));
    for (idx, raw) in text.lines().enumerate() {
        let line = first_line + idx;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let header = match content {
            "domain" => Some(Block::Domain),
            "range" => Some(Block::Range),
            "sigma" => Some(Block::Sigma),
            _ => None,
        };
        if let Some(b) = header {
            if seen.contains(&b) {
                return Err(Error::parse(line, format!("duplicate `{content}` block")));
            }
            seen.push(b);
            block = Some(b);
            continue;
        }
        match block {
            None => return Err(Error::parse(line, "expected `domain`, `range` or `sigma`")),
            Some(Block::Domain) => domain.push(addr(line, content)?),
            Some(Block::Range) => range.push(addr(line, content)?),
            Some(Block::Sigma) => {
                let (a, b) =
                    content.split_once("->").ok_or_else(|| Error::parse(line, "expected `<leaf> -> <leaf>`"))?;
                let a = addr(line, a.trim())?;
                if sigma.insert(a.clone(), addr(line, b.trim())?).is_some() {
                    return Err(Error::parse(line, format!("second image for {}", a.display(sys))));
                }
            }
        }
    }
    if seen.len() != 3 {
        let end = first_line + text.lines().count().saturating_sub(1);
        return Err(Error::parse(end, "a diagram needs `domain`, `range` and `sigma` blocks"));
    }
    let d = Expansion::from_leaves(sys, &domain)?;
    let r = Expansion::from_leaves(sys, &range)?;
    Ok(GraphPairDiagram::new(sys, d, r, sigma)?)
}

/// A validated, possibly unreduced, diagram.
pub fn parse_diagram(sys: &ReplacementSystem, text: &str) -> Result<GraphPairDiagram> {
    parse_at(sys, text, 1)
}

/// The element represented by the diagram in `text`.
pub fn parse_element(sys: &Arc<ReplacementSystem>, text: &str) -> Result<Rearrangement> {
    Ok(Rearrangement::from_diagram(sys, parse_diagram(sys, text)?)?)
}

/// Diagrams separated by `---` lines.
pub fn parse_elements(sys: &Arc<ReplacementSystem>, text: &str) -> Result<Vec<Rearrangement>> {
    let mut out = Vec::new();
    let mut chunk = String::new();
    let mut start = 1;
    let mut flush = |chunk: &mut String, start: usize| -> Result<()> {
        if !chunk.trim().is_empty() {
            out.push(Rearrangement::from_diagram(sys, parse_at(sys, chunk, start)?)?);
        }
        chunk.clear();
        Ok(())
    };
    for (idx, line) in text.lines().enumerate() {
        if line.trim() == "---" {
            flush(&mut chunk, start)?;
            start = idx + 2;
        } else {
            chunk.push_str(line);
            chunk.push('\n');
        }
    }
    flush(&mut chunk, start)?;
    Ok(out)
}

pub fn serialize_elements(elements: &[Rearrangement]) -> String {
    elements.iter().map(Rearrangement::to_text).collect::<Vec<_>>().join("---\n")
}
