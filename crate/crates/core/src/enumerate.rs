//! Bounded enumeration of expansions, graph isomorphisms between them, and
//! group elements.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::Rng;

use crate::address::Address;
use crate::diagram::{GraphPairDiagram, Rearrangement};
use crate::expansion::{Expansion, ExpansionGraph};
use crate::system::{ColorId, ReplacementSystem};

/// All expansions with at most `max_carets` carets, ordered by caret count
/// and then by caret set.
pub fn expansions_up_to(sys: &ReplacementSystem, max_carets: usize) -> Vec<Expansion> {
    let mut out = alloc::vec![Expansion::base()];
    let mut level: BTreeSet<Expansion> = BTreeSet::from([Expansion::base()]);
    for _ in 0..max_carets {
        let mut next = BTreeSet::new();
        for e in &level {
            for leaf in e.leaves(sys) {
                next.insert(e.expand(sys, &leaf).expect("leaf"));
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// Cheap isomorphism invariant of an expansion graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GraphSignature {
    edges: usize,
    vertices: usize,
    colors: Vec<(ColorId, usize)>,
    degrees: Vec<(usize, usize)>,
}

pub fn signature(g: &ExpansionGraph) -> GraphSignature {
    let mut colors: BTreeMap<ColorId, usize> = BTreeMap::new();
    let mut deg = alloc::vec![(0usize, 0usize); g.vertices.len()];
    for e in &g.edges {
        *colors.entry(e.color).or_default() += 1;
        deg[e.src].0 += 1;
        deg[e.dst].1 += 1;
    }
    deg.sort();
    GraphSignature {
        edges: g.edges.len(),
        vertices: g.vertices.len(),
        colors: colors.into_iter().collect(),
        degrees: deg,
    }
}

/// Backtracking search for color- and orientation-preserving isomorphisms
/// between two expansion graphs.
pub struct IsoSearch<'a> {
    dg: &'a ExpansionGraph,
    rg: &'a ExpansionGraph,
    order: Vec<usize>,
}

impl<'a> IsoSearch<'a> {
    pub fn new(dg: &'a ExpansionGraph, rg: &'a ExpansionGraph) -> Self {
        // visit domain edges so that each one touches an earlier vertex when
        // possible, which makes the vertex map prune early
        let n = dg.edges.len();
        let mut order = Vec::with_capacity(n);
        let mut used = alloc::vec![false; n];
        let mut seen_v = alloc::vec![false; dg.vertices.len()];
        while order.len() < n {
            let next = (0..n)
                .filter(|&i| !used[i])
                .find(|&i| seen_v[dg.edges[i].src] || seen_v[dg.edges[i].dst])
                .or_else(|| (0..n).find(|&i| !used[i]))
                .expect("an unused edge remains");
            used[next] = true;
            seen_v[dg.edges[next].src] = true;
            seen_v[dg.edges[next].dst] = true;
            order.push(next);
        }
        IsoSearch { dg, rg, order }
    }

    /// Calls `visit` on each isomorphism (domain leaf -> range leaf) allowed
    /// by `allow`, in lexicographic order of range choices, until `visit`
    /// returns false.
    pub fn run(
        &self,
        allow: &dyn Fn(&Address, &Address) -> bool,
        visit: &mut dyn FnMut(BTreeMap<Address, Address>) -> bool,
    ) {
        if self.dg.edges.len() != self.rg.edges.len() || self.dg.vertices.len() != self.rg.vertices.len() {
            return;
        }
        let mut state = State {
            fwd: alloc::vec![None; self.dg.vertices.len()],
            bwd: alloc::vec![None; self.rg.vertices.len()],
            used: alloc::vec![false; self.rg.edges.len()],
            assign: alloc::vec![usize::MAX; self.dg.edges.len()],
        };
        self.step(0, &mut state, allow, visit);
    }

    fn step(
        &self,
        k: usize,
        st: &mut State,
        allow: &dyn Fn(&Address, &Address) -> bool,
        visit: &mut dyn FnMut(BTreeMap<Address, Address>) -> bool,
    ) -> bool {
        if k == self.order.len() {
            let map = st
                .assign
                .iter()
                .enumerate()
                .map(|(i, &j)| (self.dg.edges[i].address.clone(), self.rg.edges[j].address.clone()))
                .collect();
            return visit(map);
        }
        let i = self.order[k];
        let de = &self.dg.edges[i];
        for j in 0..self.rg.edges.len() {
            let re = &self.rg.edges[j];
            if st.used[j] || re.color != de.color || !allow(&de.address, &re.address) {
                continue;
            }
            let mut bound = Vec::new();
            let mut ok = true;
            for (u, v) in [(de.src, re.src), (de.dst, re.dst)] {
                match (st.fwd[u], st.bwd[v]) {
                    (None, None) => {
                        st.fwd[u] = Some(v);
                        st.bwd[v] = Some(u);
                        bound.push((u, v));
                    }
                    (Some(x), Some(y)) if x == v && y == u => {}
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                st.used[j] = true;
                st.assign[i] = j;
                if !self.step(k + 1, st, allow, visit) {
                    return false;
                }
                st.used[j] = false;
            }
            for (u, v) in bound {
                st.fwd[u] = None;
                st.bwd[v] = None;
            }
        }
        true
    }
}

struct State {
    fwd: Vec<Option<usize>>,
    bwd: Vec<Option<usize>>,
    used: Vec<bool>,
    assign: Vec<usize>,
}

/// Up to `limit` isomorphisms from the graph of `d` onto the graph of `r`.
pub fn isomorphisms(
    sys: &ReplacementSystem,
    d: &Expansion,
    r: &Expansion,
    limit: usize,
) -> Vec<BTreeMap<Address, Address>> {
    let dg = d.graph(sys);
    let rg = r.graph(sys);
    let mut out = Vec::new();
    IsoSearch::new(&dg, &rg).run(&|_, _| true, &mut |m| {
        out.push(m);
        out.len() < limit
    });
    out
}

/// Every element whose reduced diagram has at most `budget` carets in each
/// forest, deduplicated and sorted by canonical text.
pub fn enumerate_elements(sys: &Arc<ReplacementSystem>, budget: usize) -> Vec<Rearrangement> {
    let all = expansions_up_to(sys, budget);
    let graphs: Vec<ExpansionGraph> = all.iter().map(|e| e.graph(sys)).collect();
    let mut groups: BTreeMap<GraphSignature, Vec<usize>> = BTreeMap::new();
    for (i, g) in graphs.iter().enumerate() {
        groups.entry(signature(g)).or_default().push(i);
    }
    let mut found: BTreeMap<alloc::string::String, Rearrangement> = BTreeMap::new();
    for members in groups.values() {
        for &i in members {
            for &j in members {
                IsoSearch::new(&graphs[i], &graphs[j]).run(&|_, _| true, &mut |sigma| {
                    let d = GraphPairDiagram { domain: all[i].clone(), range: all[j].clone(), sigma };
                    if d.is_reduced(sys) {
                        let g = Rearrangement::from_valid(sys, d);
                        found.entry(g.to_text()).or_insert(g);
                    }
                    true
                });
            }
        }
    }
    found.into_values().collect()
}

/// Seeded sampler of random elements with at most `budget` carets per side.
pub struct ElementSampler {
    sys: Arc<ReplacementSystem>,
    expansions: Vec<Expansion>,
    graphs: Vec<ExpansionGraph>,
    group_of: Vec<usize>,
    groups: Vec<Vec<usize>>,
}

impl ElementSampler {
    pub fn new(sys: &Arc<ReplacementSystem>, budget: usize) -> Self {
        let expansions = expansions_up_to(sys, budget);
        let graphs: Vec<ExpansionGraph> = expansions.iter().map(|e| e.graph(sys)).collect();
        let mut by_sig: BTreeMap<GraphSignature, usize> = BTreeMap::new();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut group_of = Vec::with_capacity(graphs.len());
        for (i, g) in graphs.iter().enumerate() {
            let next = groups.len();
            let gi = *by_sig.entry(signature(g)).or_insert(next);
            if gi == groups.len() {
                groups.push(Vec::new());
            }
            groups[gi].push(i);
            group_of.push(gi);
        }
        ElementSampler { sys: sys.clone(), expansions, graphs, group_of, groups }
    }

    pub fn system(&self) -> &Arc<ReplacementSystem> {
        &self.sys
    }

    /// A random element: random domain expansion, random range expansion
    /// with the same graph invariants, random isomorphism between them.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Rearrangement {
        loop {
            let i = rng.gen_range(0..self.expansions.len());
            let group = &self.groups[self.group_of[i]];
            let j = group[rng.gen_range(0..group.len())];
            let mut isos = Vec::new();
            IsoSearch::new(&self.graphs[i], &self.graphs[j]).run(&|_, _| true, &mut |m| {
                isos.push(m);
                isos.len() < 64
            });
            if isos.is_empty() {
                continue;
            }
            let sigma = isos.swap_remove(rng.gen_range(0..isos.len()));
            let d = GraphPairDiagram { domain: self.expansions[i].clone(), range: self.expansions[j].clone(), sigma };
            return Rearrangement::from_valid(&self.sys, d);
        }
    }

    /// Like [`sample`](Self::sample) but never the identity.
    pub fn sample_nontrivial<R: Rng + ?Sized>(&self, rng: &mut R) -> Rearrangement {
        loop {
            let g = self.sample(rng);
            if !g.is_identity() {
                return g;
            }
        }
    }
}

/// A random representative of the same element: `extra` pair expansions at
/// random domain leaves.
pub fn random_representative<R: Rng + ?Sized>(
    sys: &ReplacementSystem,
    d: &GraphPairDiagram,
    extra: usize,
    rng: &mut R,
) -> GraphPairDiagram {
    let mut out = d.clone();
    for _ in 0..extra {
        let leaves: Vec<Address> = out.sigma.keys().cloned().collect();
        let leaf = &leaves[rng.gen_range(0..leaves.len())];
        out = out.expand_pair(sys, leaf).expect("domain leaf");
    }
    out
}
