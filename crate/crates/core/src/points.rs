//! Gluing vertices and points of the limit space.
//!
//! A point with more than one address is a gluing vertex. Its addresses are
//! the runs of the vertex-address automaton over [`EndState`]s: starting
//! from an edge incident to the vertex, an address stays at the vertex by
//! always choosing a rule edge incident to the same designated end.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::address::{Address, LassoPoint};
use crate::expansion::Expansion;
use crate::system::{End, EndState, ReplacementSystem};

/// A vertex of some expansion, named by where it first appears: a base
/// vertex, or an inner vertex of the rule applied at a caret.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexId {
    Base(usize),
    Inner(Address, usize),
}

/// Where a point sits relative to a cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellMembership {
    Interior,
    /// A boundary vertex shared with a neighbouring cell.
    BoundaryOnly,
    Outside,
}

/// The vertex at the `end` of the edge `a`.
pub fn endpoint(sys: &ReplacementSystem, a: &Address, end: End) -> VertexId {
    let syms = a.syms();
    let mut len = syms.len();
    let mut end = end;
    loop {
        let edge = sys.sym_edge(syms[len - 1]);
        let w = edge.endpoint(end);
        if len == 1 {
            return VertexId::Base(w);
        }
        let parent_color = sys.sym_color(syms[len - 2]);
        let rule = sys.rule(parent_color);
        if w == rule.init {
            end = End::Init;
        } else if w == rule.term {
            end = End::Term;
        } else {
            return VertexId::Inner(Address::from_syms(syms[..len - 1].to_vec()), w);
        }
        len -= 1;
    }
}

/// Does the tail of `p` starting at position `k` stay at the `state` vertex
/// forever? Subset simulation; acceptance once the state set repeats at the
/// same cycle phase without ever becoming empty.
fn tail_stays(sys: &ReplacementSystem, p: &LassoPoint, k: usize, state: EndState) -> bool {
    let plen = p.prefix().len();
    let clen = p.cycle().len();
    let mut current: BTreeSet<EndState> = BTreeSet::from([state]);
    let mut seen: Vec<(usize, BTreeSet<EndState>)> = Vec::new();
    let mut i = k;
    loop {
        if i >= plen {
            let phase = (i - plen) % clen;
            if seen.iter().any(|(ph, s)| *ph == phase && *s == current) {
                return true;
            }
            seen.push((phase, current.clone()));
        }
        let sym = p.sym_at(i);
        let mut next = BTreeSet::new();
        for s in &current {
            for (label, to) in sys.transitions(*s) {
                if label == sym {
                    next.insert(to);
                }
            }
        }
        if next.is_empty() {
            return false;
        }
        current = next;
        i += 1;
    }
}

/// The gluing vertex `p` is an address of, or `None` for points with a
/// single address that is not a vertex address.
pub fn vertex_of(sys: &ReplacementSystem, p: &LassoPoint) -> Option<VertexId> {
    let limit = p.prefix().len() + p.cycle().len();
    for k in 1..=limit {
        let color = sys.sym_color(p.sym_at(k - 1));
        for end in End::BOTH {
            if tail_stays(sys, p, k, EndState { color, end }) {
                return Some(endpoint(sys, &p.truncate(k), end));
            }
        }
    }
    None
}

/// Both addresses project to the same point of the limit space.
pub fn point_eq(sys: &ReplacementSystem, p: &LassoPoint, q: &LassoPoint) -> bool {
    if p == q {
        return true;
    }
    match (vertex_of(sys, p), vertex_of(sys, q)) {
        (Some(a), Some(b)) => a == b,
        _ => false,
    }
}

/// Entry incidences of a vertex: the edge ends touching it in the graph
/// where it is created.
fn entry_states(sys: &ReplacementSystem, v: &VertexId) -> Vec<EndState> {
    let inc = match v {
        VertexId::Base(w) => sys.base_incidences(*w),
        VertexId::Inner(caret, w) => sys.rule_incidences(caret.color(sys), *w),
    };
    inc.into_iter().map(|(s, end)| EndState { color: sys.sym_color(s), end }).collect()
}

/// The vertex has a unique address (it lies in a single edge of every
/// expansion).
pub fn is_extreme(sys: &ReplacementSystem, v: &VertexId) -> bool {
    let states = entry_states(sys, v);
    states.len() == 1 && sys.extreme_ends().contains(&states[0])
}

/// The endpoint `v` of `cell` lies in the interior of `C(cell)`: every
/// other edge of the smallest expansion containing `cell` misses `v`, so
/// every address of `v` starts with `cell`.
pub fn boundary_in_interior(sys: &ReplacementSystem, v: &VertexId, cell: &Address) -> bool {
    Expansion::minimal_with(sys, cell)
        .iter()
        .filter(|a| *a != cell)
        .all(|a| End::BOTH.iter().all(|&end| endpoint(sys, a, end) != *v))
}

/// Membership of `p` in the cell `C(cell)` and its interior.
pub fn point_in_cell(sys: &ReplacementSystem, p: &LassoPoint, cell: &Address) -> CellMembership {
    match vertex_of(sys, p) {
        Some(v) => {
            let boundary = End::BOTH.iter().any(|&end| endpoint(sys, cell, end) == v);
            if boundary {
                if boundary_in_interior(sys, &v, cell) {
                    CellMembership::Interior
                } else {
                    CellMembership::BoundaryOnly
                }
            } else if matches!(&v, VertexId::Inner(c, _) if cell.is_prefix_of(c)) {
                CellMembership::Interior
            } else {
                CellMembership::Outside
            }
        }
        None => {
            if cell.is_prefix_of(&p.truncate(cell.len())) {
                CellMembership::Interior
            } else {
                CellMembership::Outside
            }
        }
    }
}

/// The point lies in the closed cell.
pub fn point_in_closed_cell(sys: &ReplacementSystem, p: &LassoPoint, cell: &Address) -> bool {
    point_in_cell(sys, p, cell) != CellMembership::Outside
}
