//! Graph pair diagrams and rearrangements.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt::Write as _;

use crate::address::{Address, LassoPoint, Sym};
use crate::expansion::{CellUnion, Expansion};
use crate::system::ReplacementSystem;
use crate::{Error, Result};

/// A triple `(domain, range, sigma)`: two expansions and a color-preserving
/// bijection of their edges that induces a graph isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphPairDiagram {
    pub domain: Expansion,
    pub range: Expansion,
    /// Domain leaf -> range leaf.
    pub sigma: BTreeMap<Address, Address>,
}

impl GraphPairDiagram {
    pub fn identity(sys: &ReplacementSystem) -> Self {
        let sigma = sys.base_syms().map(|s| (Address::root(s), Address::root(s))).collect();
        GraphPairDiagram { domain: Expansion::base(), range: Expansion::base(), sigma }
    }

    /// Identity on an arbitrary expansion (a non-reduced representative of
    /// the identity when `e` is not the base).
    pub fn identity_on(sys: &ReplacementSystem, e: &Expansion) -> Self {
        let sigma = e.leaves(sys).into_iter().map(|a| (a.clone(), a)).collect();
        GraphPairDiagram { domain: e.clone(), range: e.clone(), sigma }
    }

    pub fn new(
        sys: &ReplacementSystem,
        domain: Expansion,
        range: Expansion,
        sigma: BTreeMap<Address, Address>,
    ) -> Result<Self> {
        let d = GraphPairDiagram { domain, range, sigma };
        d.validate(sys)?;
        Ok(d)
    }

    /// Checks bijectivity, colors, and that the induced vertex map is a
    /// well-defined bijection preserving orientation.
    pub fn validate(&self, sys: &ReplacementSystem) -> Result<()> {
        let dl = self.domain.leaves(sys);
        let rl = self.range.leaves(sys);
        let keys: Vec<_> = self.sigma.keys().cloned().collect();
        if keys != dl {
            return Err(Error::NotBijective("sigma is not defined exactly on the domain leaves".into()));
        }
        let mut values: Vec<_> = self.sigma.values().cloned().collect();
        values.sort();
        if values != rl {
            return Err(Error::NotBijective("sigma does not hit every range leaf exactly once".into()));
        }
        for (a, b) in &self.sigma {
            if a.color(sys) != b.color(sys) {
                return Err(Error::ColorMismatch {
                    domain: format!("{}", a.display(sys)),
                    range: format!("{}", b.display(sys)),
                });
            }
        }
        let dg = self.domain.graph(sys);
        let rg = self.range.graph(sys);
        if dg.vertices.len() != rg.vertices.len() {
            return Err(Error::NotIsomorphism("vertex counts differ".into()));
        }
        let mut fwd: Vec<Option<usize>> = alloc::vec![None; dg.vertices.len()];
        let mut bwd: Vec<Option<usize>> = alloc::vec![None; rg.vertices.len()];
        for e in &dg.edges {
            let f = rg.edge(&self.sigma[&e.address]).expect("range leaf has an edge");
            for (u, v) in [(e.src, f.src), (e.dst, f.dst)] {
                match (fwd[u], bwd[v]) {
                    (None, None) => {
                        fwd[u] = Some(v);
                        bwd[v] = Some(u);
                    }
                    (Some(x), Some(y)) if x == v && y == u => {}
                    _ => {
                        return Err(Error::NotIsomorphism(format!(
                            "vertex map inconsistent at edge {}",
                            e.address.display(sys)
                        )))
                    }
                }
            }
        }
        if fwd.iter().any(Option::is_none) {
            return Err(Error::NotIsomorphism("isolated vertex left unmapped".into()));
        }
        Ok(())
    }

    pub fn image(&self, leaf: &Address) -> Option<&Address> {
        self.sigma.get(leaf)
    }

    pub fn preimage(&self, leaf: &Address) -> Option<&Address> {
        self.sigma.iter().find(|(_, v)| *v == leaf).map(|(k, _)| k)
    }

    pub fn inverse(&self) -> Self {
        GraphPairDiagram {
            domain: self.range.clone(),
            range: self.domain.clone(),
            sigma: self.sigma.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
        }
    }

    /// Expands the domain leaf `leaf` and its image by one caret.
    pub fn expand_pair(&self, sys: &ReplacementSystem, leaf: &Address) -> Result<Self> {
        let image = self.sigma.get(leaf).ok_or_else(|| Error::NotALeaf(format!("{}", leaf.display(sys))))?.clone();
        let mut out = self.clone();
        out.domain = self.domain.expand(sys, leaf)?;
        out.range = self.range.expand(sys, &image)?;
        out.sigma.remove(leaf);
        for s in sys.rule_syms(leaf.color(sys)) {
            out.sigma.insert(leaf.child(s), image.child(s));
        }
        Ok(out)
    }

    /// Attaches the subtree `shape` (relative caret paths, containing the
    /// empty path) at the domain leaf `leaf` and at its image.
    pub fn expand_pair_by_shape(
        &self,
        sys: &ReplacementSystem,
        leaf: &Address,
        shape: &BTreeSet<Vec<Sym>>,
    ) -> Result<Self> {
        let mut out = self.clone();
        let mut order: Vec<&Vec<Sym>> = shape.iter().collect();
        order.sort_by_key(|p| p.len());
        for rel in order {
            let at = leaf.concat(rel);
            out = out.expand_pair(sys, &at)?;
        }
        Ok(out)
    }

    /// Domain carets whose children map, in order, onto the children of a
    /// single range caret; each can be collapsed.
    pub fn reduction_candidates(&self, sys: &ReplacementSystem) -> Vec<Address> {
        let mut out = Vec::new();
        for caret in self.domain.carets() {
            let mut target: Option<Address> = None;
            let mut ok = true;
            for s in sys.rule_syms(caret.color(sys)) {
                let child = caret.child(s);
                let Some(img) = self.sigma.get(&child) else {
                    ok = false;
                    break;
                };
                let Some(parent) = img.parent() else {
                    ok = false;
                    break;
                };
                if img.last() != s || target.as_ref().is_some_and(|t| *t != parent) {
                    ok = false;
                    break;
                }
                target = Some(parent);
            }
            if ok {
                out.push(caret.clone());
            }
        }
        out
    }

    /// Collapses the domain caret `caret` with its matching range caret.
    pub fn collapse(&self, sys: &ReplacementSystem, caret: &Address) -> Self {
        let first = caret.child(sys.rule_syms(caret.color(sys)).next().expect("rules have edges"));
        let target = self.sigma[&first].parent().expect("candidate image has a parent");
        let mut out = self.clone();
        let mut dc = out.domain.carets().clone();
        dc.remove(caret);
        let mut rc = out.range.carets().clone();
        rc.remove(&target);
        out.domain = Expansion::from_carets_unchecked(dc);
        out.range = Expansion::from_carets_unchecked(rc);
        for s in sys.rule_syms(caret.color(sys)) {
            out.sigma.remove(&caret.child(s));
        }
        out.sigma.insert(caret.clone(), target);
        out
    }

    /// Reduces with a caller-chosen order; `choose(n)` picks one of `n`
    /// available collapses.
    pub fn reduce_with(&self, sys: &ReplacementSystem, mut choose: impl FnMut(usize) -> usize) -> Self {
        let mut d = self.clone();
        loop {
            let cands = d.reduction_candidates(sys);
            if cands.is_empty() {
                return d;
            }
            let i = choose(cands.len()) % cands.len();
            d = d.collapse(sys, &cands[i]);
        }
    }

    pub fn reduce(&self, sys: &ReplacementSystem) -> Self {
        self.reduce_with(sys, |_| 0)
    }

    pub fn is_reduced(&self, sys: &ReplacementSystem) -> bool {
        self.reduction_candidates(sys).is_empty()
    }

    /// Canonical text: sorted domain leaves, sorted range leaves, and sigma
    /// lines sorted by source.
    pub fn to_text(&self, sys: &ReplacementSystem) -> String {
        let name = |a: &Address| format!("{}", a.display(sys));
        let mut dl: Vec<String> = self.sigma.keys().map(name).collect();
        dl.sort();
        let mut rl: Vec<String> = self.sigma.values().map(name).collect();
        rl.sort();
        let mut pairs: Vec<(String, String)> = self.sigma.iter().map(|(a, b)| (name(a), name(b))).collect();
        pairs.sort();
        let mut out = String::new();
        out.push_str("domain\n");
        for l in &dl {
            let _ = writeln!(out, "  {l}");
        }
        out.push_str("range\n");
        for l in &rl {
            let _ = writeln!(out, "  {l}");
        }
        out.push_str("sigma\n");
        for (a, b) in &pairs {
            let _ = writeln!(out, "  {a} -> {b}");
        }
        out
    }

    /// The prefix exchange is the identity on the cell `a`.
    pub fn fixes_pointwise(&self, a: &Address) -> bool {
        match self.domain.leaf_above(a) {
            Some(leaf) => self.sigma[&leaf] == leaf,
            None => self.sigma.iter().filter(|(d, _)| a.is_prefix_of(d)).all(|(d, r)| d == r),
        }
    }

    pub fn image_of_address(&self, a: &Address) -> Vec<Address> {
        if let Some(leaf) = self.domain.leaf_above(a) {
            let tail = leaf.suffix_in(a).expect("leaf is a prefix");
            alloc::vec![self.sigma[&leaf].concat(tail)]
        } else {
            self.sigma.iter().filter(|(d, _)| a.is_prefix_of(d)).map(|(_, r)| r.clone()).collect()
        }
    }
}

/// A rearrangement, held as its unique reduced graph pair diagram.
#[derive(Debug, Clone)]
pub struct Rearrangement {
    sys: Arc<ReplacementSystem>,
    diagram: GraphPairDiagram,
}

impl PartialEq for Rearrangement {
    fn eq(&self, other: &Self) -> bool {
        self.diagram == other.diagram && same_system(&self.sys, &other.sys)
    }
}

impl Eq for Rearrangement {}

fn same_system(a: &Arc<ReplacementSystem>, b: &Arc<ReplacementSystem>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Rearrangement {
    pub fn identity(sys: &Arc<ReplacementSystem>) -> Self {
        Rearrangement { sys: sys.clone(), diagram: GraphPairDiagram::identity(sys) }
    }

    /// Validates and reduces.
    pub fn new(
        sys: &Arc<ReplacementSystem>,
        domain: Expansion,
        range: Expansion,
        sigma: BTreeMap<Address, Address>,
    ) -> Result<Self> {
        let d = GraphPairDiagram::new(sys, domain, range, sigma)?;
        Ok(Self::from_valid(sys, d))
    }

    pub fn from_diagram(sys: &Arc<ReplacementSystem>, d: GraphPairDiagram) -> Result<Self> {
        d.validate(sys)?;
        Ok(Self::from_valid(sys, d))
    }

    pub(crate) fn from_valid(sys: &Arc<ReplacementSystem>, d: GraphPairDiagram) -> Self {
        Rearrangement { sys: sys.clone(), diagram: d.reduce(sys) }
    }

    pub fn system(&self) -> &Arc<ReplacementSystem> {
        &self.sys
    }

    pub fn diagram(&self) -> &GraphPairDiagram {
        &self.diagram
    }

    pub fn is_identity(&self) -> bool {
        self.diagram == GraphPairDiagram::identity(&self.sys)
    }

    pub fn to_text(&self) -> String {
        self.diagram.to_text(&self.sys)
    }

    /// `self` followed by `other`: `x -> other(self(x))`.
    pub fn compose(&self, other: &Rearrangement) -> Result<Rearrangement> {
        if !same_system(&self.sys, &other.sys) {
            return Err(Error::SystemMismatch);
        }
        let sys = &*self.sys;
        let mid = self.diagram.range.common_refinement(&other.diagram.domain);
        let mut g = self.diagram.clone();
        for c in mid.carets() {
            if !g.range.is_internal(c) {
                let d = g.preimage(c).expect("refinement caret is a range leaf").clone();
                g = g.expand_pair(sys, &d)?;
            }
        }
        let mut h = other.diagram.clone();
        for c in mid.carets() {
            if !h.domain.is_internal(c) {
                h = h.expand_pair(sys, c)?;
            }
        }
        debug_assert_eq!(g.range, h.domain);
        let sigma = g.sigma.iter().map(|(a, b)| (a.clone(), h.sigma[b].clone())).collect();
        let d = GraphPairDiagram { domain: g.domain, range: h.range, sigma };
        Ok(Rearrangement { sys: self.sys.clone(), diagram: d.reduce(sys) })
    }

    pub fn invert(&self) -> Rearrangement {
        Rearrangement { sys: self.sys.clone(), diagram: self.diagram.inverse() }
    }

    /// `self^k` by repeated squaring; negative `k` uses the inverse.
    pub fn power(&self, k: i64) -> Rearrangement {
        let mut base = if k < 0 { self.invert() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Rearrangement::identity(&self.sys);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base).expect("same system");
            }
            e >>= 1;
            if e > 0 {
                base = base.compose(&base).expect("same system");
            }
        }
        acc
    }

    /// `h^-1` then `self` then `h`.
    pub fn conjugate(&self, h: &Rearrangement) -> Result<Rearrangement> {
        h.invert().compose(self)?.compose(h)
    }

    /// Image of a finite union of cells.
    pub fn apply_cell(&self, cells: &CellUnion) -> CellUnion {
        let images = cells.addresses().iter().flat_map(|a| self.diagram.image_of_address(a));
        CellUnion::new(images, cells.kind())
    }

    /// Image of a point given by a lasso address.
    pub fn apply_point(&self, p: &LassoPoint) -> LassoPoint {
        let d = &self.diagram;
        let mut n = 1;
        while d.domain.is_internal(&p.truncate(n)) {
            n += 1;
        }
        let leaf = p.truncate(n);
        p.replace_head(&self.sys, n, &d.sigma[&leaf])
    }
}
