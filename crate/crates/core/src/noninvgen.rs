//! The non-invariable-generation construction at desk scale.
//!
//! Cells `C_1 ⊇ C_2 ⊇ …` shrink to a point `p`. The sets
//! `I_n = int C_n \ C_{n+1}` are pairwise disjoint, and each element `g_i`
//! is conjugated so that the complement of `I_i` becomes weakly wandering.
//! Then the orbit of `p` under the conjugates stays inside
//! `{p} ∪ I_1 ∪ … ∪ I_k` and misses a cell inside `I_{k+1}`.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::address::{Address, LassoPoint};
use crate::diagram::Rearrangement;
use crate::expansion::{CellUnion, Expansion};
use crate::points::{point_in_cell, point_in_closed_cell, vertex_of, CellMembership, VertexId};
use crate::system::ReplacementSystem;
use crate::transitivity::{find_witness, WitnessQuery};
use crate::wandering::{
    cell_inside_interior, verify_set, wandering_cell, WanderingCertificate, WanderingKind, WanderingReport,
};
use crate::{Error, Result};

/// Depth of the search for a cell inside an interior.
const INSIDE_DEPTH: usize = 8;

#[derive(Debug, Clone)]
pub struct NigConfig {
    pub sys: Arc<ReplacementSystem>,
    pub point: LassoPoint,
    pub elements: Vec<Rearrangement>,
    pub word_bound: usize,
    pub witness_budget: usize,
    pub wander_bound: usize,
    /// Negative control: use the first element unconjugated.
    pub sabotage: bool,
}

impl NigConfig {
    pub fn new(sys: &Arc<ReplacementSystem>, point: LassoPoint, elements: Vec<Rearrangement>) -> Self {
        NigConfig {
            sys: sys.clone(),
            point,
            elements,
            word_bound: 4,
            witness_budget: 6,
            wander_bound: 20,
            sabotage: false,
        }
    }
}

/// `C_1, …, C_count`: the prefixes of `p` with 2 to `count + 1` symbols.
pub fn build_nested_cells(p: &LassoPoint, count: usize) -> Result<Vec<Address>> {
    if count < 2 {
        return Err(Error::Precondition("need at least two nested cells".into()));
    }
    Ok((1..=count).map(|n| p.truncate(n + 1)).collect())
}

/// Cells of the smallest expansion having `cell` as an edge, other than
/// `cell` itself.
pub fn partition_siblings(sys: &ReplacementSystem, cell: &Address) -> Vec<Address> {
    Expansion::minimal_with(sys, cell).into_iter().filter(|a| a != cell).collect()
}

/// The complement of `int C(cell) \ C(next)` as a closed union.
pub fn interior_complement(sys: &ReplacementSystem, cell: &Address, next: &Address) -> Result<CellUnion> {
    if !cell.is_proper_prefix_of(next) {
        return Err(Error::Precondition(format!("{} is not strictly below {}", next.display(sys), cell.display(sys))));
    }
    let mut cells = partition_siblings(sys, cell);
    cells.push(next.clone());
    Ok(CellUnion::closed(cells))
}

/// `gamma = conjugate(g, h^-1)` where `h` moves the given set inside the
/// weakly wandering set of `g`.
#[derive(Debug, Clone)]
pub struct Conjugator {
    pub gamma: Rearrangement,
    pub h: Rearrangement,
    pub certificate: WanderingCertificate,
    /// Cell inside the certificate's set receiving `h(A)`.
    pub target: Address,
    pub report: WanderingReport,
}

pub fn conjugate_into_wandering(
    g: &Rearrangement,
    set: &CellUnion,
    witness_budget: usize,
    wander_bound: usize,
) -> Result<Conjugator> {
    let sys = g.system();
    if set.is_empty() || set.covers_everything(sys) {
        return Err(Error::Precondition(format!("{} is not a proper union", set.display(sys))));
    }
    let certificate = wandering_cell(g)?;
    let cell = certificate.set.addresses().iter().next().expect("certificates name one cell").clone();
    let target = cell_inside_interior(sys, &cell, INSIDE_DEPTH)?;
    let h = find_witness(sys, &WitnessQuery::new(set.clone(), target.clone(), witness_budget))?
        .ok_or(Error::BudgetExhausted { what: "witness search", budget: witness_budget })?;
    let gamma = g.conjugate(&h.invert())?;
    let report = verify_set(&gamma, set, WanderingKind::WeaklyWandering, wander_bound);
    if !report.passed {
        return Err(Error::Inconsistent(format!("{} is not weakly wandering for the conjugate", set.display(sys))));
    }
    Ok(Conjugator { gamma, h, certificate, target, report })
}

/// A letter `gamma_index^sign`, with 1-based index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub index: usize,
    pub inverse: bool,
}

pub fn word_text(word: &[Letter]) -> String {
    if word.is_empty() {
        return String::from("1");
    }
    let parts: Vec<String> =
        word.iter().map(|l| if l.inverse { format!("g{}^-1", l.index) } else { format!("g{}", l.index) }).collect();
    parts.join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitEntry {
    /// Letters applied left to right; minimal among words reaching `point`.
    pub word: Vec<Letter>,
    pub point: LassoPoint,
    /// In `I_i` for the index of the last letter.
    pub in_expected: bool,
    pub touches_avoided: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum PointKey {
    Vertex(VertexId),
    Regular(LassoPoint),
}

fn key(sys: &ReplacementSystem, p: &LassoPoint) -> PointKey {
    match vertex_of(sys, p) {
        Some(v) => PointKey::Vertex(v),
        None => PointKey::Regular(p.clone()),
    }
}

/// The point lies in `int C_i \ C_{i+1}`.
pub fn in_i(sys: &ReplacementSystem, q: &LassoPoint, cells: &[Address], i: usize) -> bool {
    point_in_cell(sys, q, &cells[i - 1]) == CellMembership::Interior && !point_in_closed_cell(sys, q, &cells[i])
}

/// Breadth-first search over reduced words of length at most `word_bound`
/// in the letters `gammas[i]^±1`, recording each new orbit point with a
/// minimal word.
pub fn pingpong_check(
    sys: &ReplacementSystem,
    p: &LassoPoint,
    cells: &[Address],
    gammas: &[Rearrangement],
    avoided: &Address,
    word_bound: usize,
) -> (Vec<OrbitEntry>, bool) {
    let letters: Vec<(Letter, Rearrangement)> = gammas
        .iter()
        .enumerate()
        .flat_map(|(i, g)| {
            [(Letter { index: i + 1, inverse: false }, g.clone()), (Letter { index: i + 1, inverse: true }, g.invert())]
        })
        .collect();
    let mut seen: BTreeSet<PointKey> = BTreeSet::from([key(sys, p)]);
    let mut queue: VecDeque<(Vec<Letter>, LassoPoint)> = VecDeque::from([(Vec::new(), p.clone())]);
    let mut log = Vec::new();
    let mut passed = true;
    while let Some((word, q)) = queue.pop_front() {
        if word.len() == word_bound {
            continue;
        }
        for (l, g) in &letters {
            if word.last().is_some_and(|prev| prev.index == l.index && prev.inverse != l.inverse) {
                continue;
            }
            let image = g.apply_point(&q);
            if !seen.insert(key(sys, &image)) {
                continue;
            }
            let mut w = word.clone();
            w.push(*l);
            let in_expected = in_i(sys, &image, cells, l.index);
            let touches_avoided = point_in_closed_cell(sys, &image, avoided);
            passed &= in_expected && !touches_avoided;
            log.push(OrbitEntry { word: w.clone(), point: image.clone(), in_expected, touches_avoided });
            queue.push_back((w, image));
        }
    }
    (log, passed)
}

#[derive(Debug, Clone)]
pub struct NigResult {
    /// `C_1, …, C_{k+2}`.
    pub cells: Vec<Address>,
    /// Complements of `I_1, …, I_k`.
    pub complements: Vec<CellUnion>,
    pub conjugators: Vec<Conjugator>,
    /// The letters actually used by the ping-pong search.
    pub gammas: Vec<Rearrangement>,
    pub orbit: Vec<OrbitEntry>,
    pub avoided_cell: Address,
    pub passed: bool,
}

impl NigResult {
    pub fn first_failure(&self) -> Option<&OrbitEntry> {
        self.orbit.iter().find(|e| !e.in_expected || e.touches_avoided)
    }
}

/// Runs nested cells, complements, conjugators and the ping-pong check.
pub fn nig_report(cfg: &NigConfig) -> Result<NigResult> {
    let sys = &cfg.sys;
    let k = cfg.elements.len();
    if k == 0 {
        return Err(Error::Precondition("no elements".into()));
    }
    if cfg.elements.iter().any(Rearrangement::is_identity) {
        return Err(Error::Precondition("elements must be non-trivial".into()));
    }
    let cells = build_nested_cells(&cfg.point, k + 2)?;
    let mut complements = Vec::with_capacity(k);
    let mut conjugators = Vec::with_capacity(k);
    for (i, g) in cfg.elements.iter().enumerate() {
        let comp = interior_complement(sys, &cells[i], &cells[i + 1])?;
        conjugators.push(conjugate_into_wandering(g, &comp, cfg.witness_budget, cfg.wander_bound)?);
        complements.push(comp);
    }
    let sibling = partition_siblings(sys, &cells[k + 1])
        .into_iter()
        .find(|s| cells[k].is_proper_prefix_of(s))
        .ok_or_else(|| Error::Inconsistent("no sibling cell under the last nested cell".into()))?;
    let avoided_cell = cell_inside_interior(sys, &sibling, INSIDE_DEPTH)?;
    if point_in_closed_cell(sys, &cfg.point, &avoided_cell) {
        return Err(Error::Inconsistent("avoided cell contains the point".into()));
    }
    let mut gammas: Vec<Rearrangement> = conjugators.iter().map(|c| c.gamma.clone()).collect();
    if cfg.sabotage {
        gammas[0] = cfg.elements[0].clone();
    }
    let (orbit, passed) = pingpong_check(sys, &cfg.point, &cells[..=k], &gammas, &avoided_cell, cfg.word_bound);
    Ok(NigResult { cells, complements, conjugators, gammas, orbit, avoided_cell, passed })
}
