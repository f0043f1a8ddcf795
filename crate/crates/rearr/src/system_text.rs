//! The line-based replacement system format.
//!
//! ```text
//! system circle_T
//! base
//!   vertex x0
//!   edge t x0 x0 c0
//! replacement c0
//!   vertex vi m vt
//!   init vi
//!   term vt
//!   edge 1 vi m c0
//!   edge 2 m vt c0
//! ```
//!
//! `#` starts a comment. Edge ids may not contain `.`, `:`, `(` or `)`,
//! which the address syntax reserves.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rearr_core::system::builtin;
use rearr_core::{ReplacementSystem, SystemBuilder};

use crate::error::{Error, Result};

#[derive(Default)]
struct Section {
    header: usize,
    vertices: Vec<(usize, String)>,
    edges: Vec<(usize, [String; 4])>,
    init: Option<(usize, String)>,
    term: Option<(usize, String)>,
}

impl Section {
    fn check(&self, what: &str) -> Result<()> {
        let mut seen = BTreeSet::new();
        for (line, v) in &self.vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::parse(*line, format!("duplicate vertex `{v}`")));
            }
        }
        let declared = |line: usize, v: &str| {
            if seen.contains(v) {
                Ok(())
            } else {
                Err(Error::parse(line, format!("undeclared vertex `{v}` in {what}")))
            }
        };
        let mut ids = BTreeSet::new();
        for (line, [id, src, dst, _]) in &self.edges {
            if !ids.insert(id.as_str()) {
                return Err(Error::parse(*line, format!("duplicate edge id `{id}`")));
            }
            declared(*line, src)?;
            declared(*line, dst)?;
        }
        for (line, v) in self.init.iter().chain(&self.term) {
            declared(*line, v)?;
        }
        if self.edges.is_empty() {
            return Err(Error::parse(self.header, format!("{what} has no edges")));
        }
        Ok(())
    }

    fn fill(&self, mut b: rearr_core::system::SectionBuilder<'_>) {
        for (_, v) in &self.vertices {
            b = b.vertex(v);
        }
        if let Some((_, v)) = &self.init {
            b = b.init(v);
        }
        if let Some((_, v)) = &self.term {
            b = b.term(v);
        }
        for (_, [id, src, dst, color]) in &self.edges {
            b = b.edge(id, src, dst, color);
        }
    }
}

fn valid_edge_id(id: &str) -> bool {
    !id.contains(['.', ':', '(', ')'])
}

/// Parses the system format. Errors carry the offending line number.
pub fn parse_system(text: &str) -> Result<ReplacementSystem> {
    let mut name: Option<String> = None;
    let mut base: Option<Section> = None;
    let mut rules: Vec<(String, Section)> = Vec::new();
    // Which section receives content lines: None = base, Some(i) = rule i.
    let mut current: Option<Option<usize>> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some((&kw, args)) = tokens.split_first() else { continue };
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(Error::parse(line, format!("`{kw}` takes {n} argument(s), found {}", args.len())))
            }
        };
        match kw {
            "system" => {
                arity(1)?;
                if name.is_some() {
                    return Err(Error::parse(line, "second `system` line"));
                }
                name = Some(args[0].to_string());
                continue;
            }
            _ if name.is_none() => {
                return Err(Error::parse(line, "expected `system <name>` first"));
            }
            "base" => {
                arity(0)?;
                if base.is_some() {
                    return Err(Error::parse(line, "duplicate `base` section"));
                }
                base = Some(Section { header: line, ..Default::default() });
                current = Some(None);
                continue;
            }
            "replacement" => {
                arity(1)?;
                if rules.iter().any(|(c, _)| c == args[0]) {
                    return Err(Error::parse(line, format!("duplicate replacement for color `{}`", args[0])));
                }
                rules.push((args[0].to_string(), Section { header: line, ..Default::default() }));
                current = Some(Some(rules.len() - 1));
                continue;
            }
            _ => {}
        }
        let section = match current {
            None => return Err(Error::parse(line, format!("`{kw}` outside a section"))),
            Some(None) => base.as_mut().expect("base opened"),
            Some(Some(i)) => &mut rules[i].1,
        };
        let in_rule = current != Some(None);
        match kw {
            "vertex" => {
                if args.is_empty() {
                    return Err(Error::parse(line, "`vertex` needs at least one id"));
                }
                section.vertices.extend(args.iter().map(|v| (line, v.to_string())));
            }
            "edge" => {
                arity(4)?;
                if !valid_edge_id(args[0]) {
                    return Err(Error::parse(line, format!("edge id `{}` uses a reserved character", args[0])));
                }
                section.edges.push((line, [args[0], args[1], args[2], args[3]].map(String::from)));
            }
            "init" | "term" if in_rule => {
                arity(1)?;
                let slot = if kw == "init" { &mut section.init } else { &mut section.term };
                if slot.is_some() {
                    return Err(Error::parse(line, format!("second `{kw}` line")));
                }
                *slot = Some((line, args[0].to_string()));
            }
            _ => return Err(Error::parse(line, format!("unexpected `{kw}`"))),
        }
    }

    let last = text.lines().count().max(1);
    let name = name.ok_or_else(|| Error::parse(last, "missing `system <name>` line"))?;
    let base = base.ok_or_else(|| Error::parse(last, "missing `base` section"))?;
    base.check("base")?;
    for (color, s) in &rules {
        s.check(&format!("replacement `{color}`"))?;
        for (v, what) in [(&s.init, "init"), (&s.term, "term")] {
            if v.is_none() {
                return Err(Error::parse(s.header, format!("replacement `{color}` has no {what} vertex")));
            }
        }
    }
    let colors: BTreeSet<&str> = rules.iter().map(|(c, _)| c.as_str()).collect();
    for s in std::iter::once(&base).chain(rules.iter().map(|(_, s)| s)) {
        for (line, [_, _, _, color]) in &s.edges {
            if !colors.contains(color.as_str()) {
                return Err(Error::parse(*line, format!("undeclared color `{color}`")));
            }
        }
    }

    let mut b = SystemBuilder::new(&name);
    // Rules first, so colors are numbered in declaration order.
    for (color, s) in &rules {
        s.fill(b.rule(color));
    }
    base.fill(b.base());
    Ok(b.build()?)
}

/// Serializes in declaration order with single-space separated tokens.
pub fn serialize_system(sys: &ReplacementSystem) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "system {}", sys.name());
    let graph = |out: &mut String, g: &rearr_core::DirectedGraph, ends: Option<(usize, usize)>| {
        if !g.vertices.is_empty() {
            let _ = writeln!(out, "  vertex {}", g.vertices.join(" "));
        }
        if let Some((i, t)) = ends {
            let _ = writeln!(out, "  init {}", g.vertices[i]);
            let _ = writeln!(out, "  term {}", g.vertices[t]);
        }
        for e in &g.edges {
            let _ = writeln!(
                out,
                "  edge {} {} {} {}",
                e.id,
                g.vertices[e.src],
                g.vertices[e.dst],
                sys.color_name(e.color)
            );
        }
    };
    out.push_str("base\n");
    graph(&mut out, sys.base(), None);
    for (c, rule) in sys.rules() {
        let _ = writeln!(out, "replacement {}", sys.color_name(c));
        graph(&mut out, &rule.graph, Some((rule.init, rule.term)));
    }
    out
}

/// A built-in name, or else a path to a system file.
pub fn load_system(spec: &str) -> Result<ReplacementSystem> {
    if let Ok(sys) = builtin(spec) {
        return Ok(sys);
    }
    if !std::path::Path::new(spec).exists() {
        return Err(rearr_core::Error::UnknownSystem(spec.to_string()).into());
    }
    let text = std::fs::read_to_string(spec).map_err(|source| Error::Io { path: spec.into(), source })?;
    parse_system(&text)
}
