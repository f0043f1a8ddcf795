//! Bounded witnesses for weak cell-transitivity and orbit evidence for
//! minimality of the action.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::address::Address;
use crate::diagram::{GraphPairDiagram, Rearrangement};
use crate::enumerate::{expansions_up_to, signature, IsoSearch};
use crate::expansion::{CellKind, CellUnion, Expansion};
use crate::system::ReplacementSystem;
use crate::{Error, Result};

/// Find `g` with `g(cells) ⊆ C(target)` using at most `budget` carets per
/// side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessQuery {
    pub cells: CellUnion,
    pub target: Address,
    pub budget: usize,
}

impl WitnessQuery {
    pub fn new(cells: CellUnion, target: Address, budget: usize) -> Self {
        WitnessQuery { cells: cells.with_kind(CellKind::Closed), target, budget }
    }

    pub fn validate(&self, sys: &ReplacementSystem) -> Result<()> {
        if self.cells.is_empty() {
            return Err(Error::Precondition("empty cell union".into()));
        }
        for a in self.cells.addresses().iter().chain([&self.target]) {
            if !a.is_valid(sys) {
                return Err(Error::InvalidAddress(format!("{}", a.display(sys))));
            }
        }
        if self.cells.covers_everything(sys) {
            return Err(Error::Precondition(format!("{} covers the whole space", self.cells.display(sys))));
        }
        Ok(())
    }
}

/// The least witness in the order (largest side, total carets, domain,
/// range, bijection). Enlarging the budget keeps earlier witnesses first.
pub fn find_witness(sys: &Arc<ReplacementSystem>, q: &WitnessQuery) -> Result<Option<Rearrangement>> {
    q.validate(sys)?;
    let all = expansions_up_to(sys, q.budget);
    let doms: Vec<usize> = (0..all.len()).filter(|&i| q.cells.addresses().iter().all(|a| all[i].is_node(a))).collect();
    let rans: Vec<usize> = (0..all.len()).filter(|&j| all[j].is_node(&q.target)).collect();
    let graphs: BTreeMap<usize, _> = doms.iter().chain(&rans).map(|&i| (i, all[i].graph(sys))).collect();
    let sigs: BTreeMap<usize, _> = graphs.iter().map(|(&i, g)| (i, signature(g))).collect();

    let mut pairs: Vec<(usize, usize, usize, usize)> = Vec::new();
    for &i in &doms {
        for &j in &rans {
            if sigs[&i] == sigs[&j] {
                let (a, b) = (all[i].caret_count(), all[j].caret_count());
                pairs.push((a.max(b), a + b, i, j));
            }
        }
    }
    pairs.sort();

    let inside_a = |d: &Address| q.cells.addresses().iter().any(|a| a.is_prefix_of(d));
    for (_, _, i, j) in pairs {
        let mut found = None;
        let allow = |d: &Address, r: &Address| !inside_a(d) || q.target.is_prefix_of(r);
        IsoSearch::new(&graphs[&i], &graphs[&j]).run(&allow, &mut |sigma| {
            found = Some(sigma);
            false
        });
        if let Some(sigma) = found {
            let d = GraphPairDiagram { domain: all[i].clone(), range: all[j].clone(), sigma };
            let g = Rearrangement::from_valid(sys, d);
            debug_assert!(verify_witness(&g, &q.cells, &q.target));
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// Every address of `g(cells)` lies below `target`.
pub fn verify_witness(g: &Rearrangement, cells: &CellUnion, target: &Address) -> bool {
    g.apply_cell(cells).addresses().iter().all(|a| target.is_prefix_of(a))
}

/// Cells with exactly `depth` levels below a base edge, in order.
pub fn cells_at_depth(sys: &ReplacementSystem, depth: usize) -> Vec<Address> {
    let e = Expansion::full(sys, depth);
    e.leaves(sys)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCoverage {
    pub start: Address,
    /// Distinct cell unions visited.
    pub orbit_size: usize,
    pub reached: Vec<Address>,
    pub missed: Vec<Address>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalityReport {
    pub depth: usize,
    pub steps: usize,
    pub coverage: Vec<OrbitCoverage>,
}

impl MinimalityReport {
    /// Every starting cell reaches every cell of the target depth.
    pub fn full(&self) -> bool {
        self.coverage.iter().all(|c| c.missed.is_empty())
    }
}

/// Breadth-first orbits of the depth-1 cells under the generators and
/// their inverses, recording which cells of depth `depth` they meet.
pub fn minimality_evidence(
    sys: &Arc<ReplacementSystem>,
    generators: &[Rearrangement],
    depth: usize,
    steps: usize,
) -> Result<MinimalityReport> {
    if generators.is_empty() {
        return Err(Error::Precondition("no generators".into()));
    }
    let mut letters: Vec<Rearrangement> = Vec::new();
    for g in generators {
        letters.push(g.clone());
        letters.push(g.invert());
    }
    let targets = cells_at_depth(sys, depth);
    let mut coverage = Vec::new();
    for start in cells_at_depth(sys, 1) {
        let first = CellUnion::closed([start.clone()]);
        let mut seen: BTreeSet<CellUnion> = BTreeSet::from([first.clone()]);
        let mut queue = VecDeque::from([(first, 0usize)]);
        let mut hit = alloc::vec![false; targets.len()];
        while let Some((u, dist)) = queue.pop_front() {
            for (t, h) in targets.iter().zip(hit.iter_mut()) {
                if u.addresses().iter().any(|a| a.is_prefix_of(t) || t.is_prefix_of(a)) {
                    *h = true;
                }
            }
            if dist == steps {
                continue;
            }
            for l in &letters {
                let v = l.apply_cell(&u);
                if seen.insert(v.clone()) {
                    queue.push_back((v, dist + 1));
                }
            }
        }
        let (reached, missed) = targets.iter().zip(&hit).fold((Vec::new(), Vec::new()), |(mut r, mut m), (t, &h)| {
            if h {
                r.push(t.clone());
            } else {
                m.push(t.clone());
            }
            (r, m)
        });
        coverage.push(OrbitCoverage { start, orbit_size: seen.len(), reached, missed });
    }
    Ok(MinimalityReport { depth, steps, coverage })
}
