//! Expansions as caret forests over the base edges, their graphs, and finite
//! unions of cells.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use crate::address::{interiors_disjoint, Address};
use crate::points::VertexId;
use crate::system::{ColorId, End, ReplacementSystem};
use crate::{Error, Result};

/// An expansion of the base graph, stored as the set of expanded edges
/// (carets). Leaves of the forest are the edges of the expansion.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Expansion {
    carets: BTreeSet<Address>,
}

impl Expansion {
    /// The base graph itself.
    pub fn base() -> Self {
        Expansion::default()
    }

    /// Builds an expansion from its carets, checking that the set is closed
    /// under taking parents.
    pub fn from_carets(sys: &ReplacementSystem, carets: BTreeSet<Address>) -> Result<Self> {
        for c in &carets {
            if !c.is_valid(sys) {
                return Err(Error::InvalidAddress(format!("{}", c.display(sys))));
            }
            if let Some(p) = c.parent() {
                if !carets.contains(&p) {
                    return Err(Error::InvalidAddress(format!("caret {} has no parent caret", c.display(sys))));
                }
            }
        }
        Ok(Expansion { carets })
    }

    /// Builds the expansion whose leaves are exactly `leaves`.
    pub fn from_leaves(sys: &ReplacementSystem, leaves: &[Address]) -> Result<Self> {
        let mut carets = BTreeSet::new();
        for leaf in leaves {
            if !leaf.is_valid(sys) {
                return Err(Error::InvalidAddress(format!("{}", leaf.display(sys))));
            }
            for n in 1..leaf.len() {
                carets.insert(leaf.truncated(n));
            }
        }
        let e = Expansion { carets };
        let mut want: Vec<Address> = leaves.to_vec();
        want.sort();
        if e.leaves(sys) != want {
            return Err(Error::InvalidAddress("leaves do not form a complete antichain".into()));
        }
        Ok(e)
    }

    pub(crate) fn from_carets_unchecked(carets: BTreeSet<Address>) -> Self {
        Expansion { carets }
    }

    /// Uniform expansion: every edge replaced `n` times.
    pub fn full(sys: &ReplacementSystem, n: usize) -> Self {
        let mut carets = BTreeSet::new();
        let mut level: Vec<Address> = sys.base_syms().map(Address::root).collect();
        for _ in 0..n {
            let mut next = Vec::new();
            for a in level {
                for s in sys.rule_syms(a.color(sys)) {
                    next.push(a.child(s));
                }
                carets.insert(a);
            }
            level = next;
        }
        Expansion { carets }
    }

    pub fn carets(&self) -> &BTreeSet<Address> {
        &self.carets
    }

    pub fn caret_count(&self) -> usize {
        self.carets.len()
    }

    /// `a` is an interior node (expanded edge).
    pub fn is_internal(&self, a: &Address) -> bool {
        self.carets.contains(a)
    }

    /// `a` is a node of the forest: a base edge or a child of a caret.
    pub fn is_node(&self, a: &Address) -> bool {
        match a.parent() {
            None => true,
            Some(p) => self.carets.contains(&p),
        }
    }

    pub fn is_leaf(&self, a: &Address) -> bool {
        self.is_node(a) && !self.is_internal(a)
    }

    /// Leaves in lexicographic order.
    pub fn leaves(&self, sys: &ReplacementSystem) -> Vec<Address> {
        let mut out = Vec::new();
        let mut stack: Vec<Address> = sys.base_syms().rev().map(Address::root).collect();
        while let Some(a) = stack.pop() {
            if self.carets.contains(&a) {
                let kids: Vec<_> = sys.rule_syms(a.color(sys)).collect();
                for s in kids.into_iter().rev() {
                    stack.push(a.child(s));
                }
            } else {
                out.push(a);
            }
        }
        out
    }

    pub fn leaf_count(&self, sys: &ReplacementSystem) -> usize {
        let base = sys.base().edges.len();
        base + self.carets.iter().map(|c| sys.child_count(c.color(sys)) - 1).sum::<usize>()
    }

    /// The leaf that is a prefix of `a`, if `a` lies at or below a leaf.
    pub fn leaf_above(&self, a: &Address) -> Option<Address> {
        (1..=a.len()).map(|n| a.truncated(n)).find(|p| !self.carets.contains(p))
    }

    /// Leaves of the smallest expansion having `cell` as a leaf, in order.
    pub fn minimal_with(sys: &ReplacementSystem, cell: &Address) -> Vec<Address> {
        let carets = (1..cell.len()).map(|n| cell.truncated(n)).collect();
        Expansion { carets }.leaves(sys)
    }

    /// Simple expansion at `leaf`.
    pub fn expand(&self, sys: &ReplacementSystem, leaf: &Address) -> Result<Expansion> {
        if !leaf.is_valid(sys) || !self.is_leaf(leaf) {
            return Err(Error::NotALeaf(format!("{}", leaf.display(sys))));
        }
        let mut carets = self.carets.clone();
        carets.insert(leaf.clone());
        Ok(Expansion { carets })
    }

    /// Smallest expansion refining both (union of carets).
    pub fn common_refinement(&self, other: &Expansion) -> Expansion {
        Expansion { carets: self.carets.union(&other.carets).cloned().collect() }
    }

    /// Expansion graph with vertices identified by where they were created.
    pub fn graph(&self, sys: &ReplacementSystem) -> ExpansionGraph {
        let mut g = ExpansionGraph { vertices: Vec::new(), edges: Vec::new() };
        let mut index: BTreeMap<VertexId, usize> = BTreeMap::new();
        let mut intern = |v: VertexId, g: &mut ExpansionGraph| -> usize {
            *index.entry(v.clone()).or_insert_with(|| {
                g.vertices.push(v);
                g.vertices.len() - 1
            })
        };
        for v in 0..sys.base().vertices.len() {
            intern(VertexId::Base(v), &mut g);
        }
        let mut stack: Vec<(Address, usize, usize)> = sys
            .base_syms()
            .rev()
            .map(|s| {
                let e = sys.sym_edge(s);
                (Address::root(s), e.src, e.dst)
            })
            .collect();
        while let Some((a, src, dst)) = stack.pop() {
            let color = a.color(sys);
            if self.carets.contains(&a) {
                let rule = sys.rule(color);
                let mut local = Vec::with_capacity(rule.graph.vertices.len());
                for w in 0..rule.graph.vertices.len() {
                    local.push(if w == rule.init {
                        src
                    } else if w == rule.term {
                        dst
                    } else {
                        intern(VertexId::Inner(a.clone(), w), &mut g)
                    });
                }
                let kids: Vec<_> = sys.rule_syms(color).collect();
                for s in kids.into_iter().rev() {
                    let e = sys.sym_edge(s);
                    stack.push((a.child(s), local[e.src], local[e.dst]));
                }
            } else {
                g.edges.push(GraphEdge { address: a, src, dst, color });
            }
        }
        g
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphEdge {
    pub address: Address,
    pub src: usize,
    pub dst: usize,
    pub color: ColorId,
}

/// Graph of an expansion. Edges are the leaves in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionGraph {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<GraphEdge>,
}

impl ExpansionGraph {
    pub fn edge(&self, a: &Address) -> Option<&GraphEdge> {
        self.edges.iter().find(|e| &e.address == a)
    }

    /// Number of weakly connected components.
    pub fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut count = self.vertices.len();
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.src), find(&mut parent, e.dst));
            if a != b {
                parent[a] = b;
                count -= 1;
            }
        }
        count
    }

    pub fn endpoint(&self, e: &GraphEdge, end: End) -> &VertexId {
        match end {
            End::Init => &self.vertices[e.src],
            End::Term => &self.vertices[e.dst],
        }
    }
}

/// Whether a [`CellUnion`] stands for closed cells or their interiors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CellKind {
    Closed,
    Interior,
}

/// A finite union of cells, normalized to pairwise prefix-incomparable
/// addresses.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellUnion {
    addresses: BTreeSet<Address>,
    kind: CellKind,
}

impl CellUnion {
    /// Normalizes by dropping addresses that lie below another member.
    pub fn new(addresses: impl IntoIterator<Item = Address>, kind: CellKind) -> Self {
        let all: BTreeSet<Address> = addresses.into_iter().collect();
        let addresses = all.iter().filter(|a| !(1..a.len()).any(|n| all.contains(&a.truncated(n)))).cloned().collect();
        CellUnion { addresses, kind }
    }

    pub fn empty(kind: CellKind) -> Self {
        CellUnion { addresses: BTreeSet::new(), kind }
    }

    pub fn closed(addresses: impl IntoIterator<Item = Address>) -> Self {
        Self::new(addresses, CellKind::Closed)
    }

    pub fn interior(addresses: impl IntoIterator<Item = Address>) -> Self {
        Self::new(addresses, CellKind::Interior)
    }

    pub fn addresses(&self) -> &BTreeSet<Address> {
        &self.addresses
    }

    pub fn kind(&self) -> CellKind {
        self.kind
    }

    pub fn with_kind(mut self, kind: CellKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn is_empty(&self) -> bool {
        self.addresses.is_empty()
    }

    /// Every address lies at or below `cell`.
    pub fn is_inside(&self, cell: &Address) -> bool {
        self.addresses.iter().all(|a| cell.is_prefix_of(a))
    }

    /// Members are pairwise interior-disjoint.
    pub fn is_antichain(&self) -> bool {
        let v: Vec<_> = self.addresses.iter().collect();
        v.iter().enumerate().all(|(i, a)| v[i + 1..].iter().all(|b| interiors_disjoint(a, b)))
    }

    /// No member is prefix-comparable with a member of `other`.
    pub fn interiors_disjoint_from(&self, other: &CellUnion) -> bool {
        self.addresses.iter().all(|a| other.addresses.iter().all(|b| interiors_disjoint(a, b)))
    }

    /// Set-theoretic disjointness, honoring the kinds. Two closed unions
    /// with incomparable members can still meet in a shared boundary
    /// vertex; interiors never contain shared (non-extreme) boundary points.
    pub fn disjoint_from(&self, sys: &ReplacementSystem, other: &CellUnion) -> bool {
        if !self.interiors_disjoint_from(other) {
            return false;
        }
        if self.kind == CellKind::Interior || other.kind == CellKind::Interior {
            return true;
        }
        let ends = |u: &CellUnion| -> BTreeSet<VertexId> {
            u.addresses.iter().flat_map(|a| End::BOTH.map(|end| crate::points::endpoint(sys, a, end))).collect()
        };
        ends(self).is_disjoint(&ends(other))
    }

    /// The union covers the whole limit space.
    pub fn covers_everything(&self, sys: &ReplacementSystem) -> bool {
        fn covers(sys: &ReplacementSystem, set: &BTreeSet<Address>, node: &Address) -> bool {
            if set.contains(node) {
                return true;
            }
            let below = set.range(node.clone()..).next().is_some_and(|a| node.is_prefix_of(a));
            below && sys.rule_syms(node.color(sys)).all(|s| covers(sys, set, &node.child(s)))
        }
        !self.addresses.is_empty() && sys.base_syms().all(|s| covers(sys, &self.addresses, &Address::root(s)))
    }

    pub fn display<'a>(&'a self, sys: &'a ReplacementSystem) -> alloc::string::String {
        let parts: Vec<_> = self.addresses.iter().map(|a| format!("{}", a.display(sys))).collect();
        format!("{{{}}}", parts.join(", "))
    }
}
