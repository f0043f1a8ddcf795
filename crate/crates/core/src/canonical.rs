//! Forest differences, expandable sequences and minimal representatives.
//!
//! A representative is canonical when no expandable sequence matches one
//! of three forbidden patterns. Each pattern comes with an iterated
//! expansion that lowers `(domain imbalance, components of D-R, components
//! of R-D)` lexicographically, so repeatedly removing the least violation
//! terminates.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use rand::Rng;

use crate::address::{Address, Sym};
use crate::diagram::{GraphPairDiagram, Rearrangement};
use crate::expansion::Expansion;
use crate::system::ReplacementSystem;
use crate::{Error, Result};

/// A maximal connected tree of carets in a forest difference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub root: Address,
    pub carets: BTreeSet<Address>,
    /// Children of the component's carets that are not carets of it.
    pub leaves: Vec<Address>,
}

impl Component {
    /// Caret paths relative to the root; always contains the empty path.
    pub fn shape(&self) -> BTreeSet<Vec<Sym>> {
        self.carets.iter().map(|c| self.root.suffix_in(c).expect("caret below root").to_vec()).collect()
    }

    pub fn contains(&self, caret: &Address) -> bool {
        self.carets.contains(caret)
    }
}

/// Carets of one forest that are missing from the other, split into
/// components.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ForestDelta {
    pub carets: BTreeSet<Address>,
    pub components: Vec<Component>,
}

impl ForestDelta {
    fn between(sys: &ReplacementSystem, this: &Expansion, other: &Expansion) -> Self {
        let carets: BTreeSet<Address> = this.carets().difference(other.carets()).cloned().collect();
        let mut components = Vec::new();
        for root in carets.iter().filter(|c| c.parent().is_none_or(|p| !carets.contains(&p))) {
            let mut members = BTreeSet::new();
            let mut leaves = Vec::new();
            let mut stack = alloc::vec![root.clone()];
            while let Some(c) = stack.pop() {
                for s in sys.rule_syms(c.color(sys)) {
                    let k = c.child(s);
                    if carets.contains(&k) {
                        stack.push(k);
                    } else {
                        leaves.push(k);
                    }
                }
                members.insert(c);
            }
            leaves.sort();
            components.push(Component { root: root.clone(), carets: members, leaves });
        }
        ForestDelta { carets, components }
    }

    pub fn imbalance(&self) -> usize {
        self.carets.len()
    }

    pub fn component_rooted_at(&self, root: &Address) -> Option<&Component> {
        self.components.iter().find(|c| &c.root == root)
    }

    pub fn component_containing(&self, caret: &Address) -> Option<&Component> {
        self.components.iter().find(|c| c.contains(caret))
    }
}

/// `(D - R, R - D)` for a diagram.
pub fn forest_delta(sys: &ReplacementSystem, d: &GraphPairDiagram) -> (ForestDelta, ForestDelta) {
    (ForestDelta::between(sys, &d.domain, &d.range), ForestDelta::between(sys, &d.range, &d.domain))
}

/// Domain imbalance minus range imbalance over `samples` random
/// representatives of `g`; errors if it is not constant.
pub fn imbalance_offset<R: Rng + ?Sized>(g: &Rearrangement, samples: usize, rng: &mut R) -> Result<i64> {
    let sys = g.system();
    let mut value = None;
    for i in 0..samples.max(1) {
        let extra = if i == 0 { 0 } else { rng.gen_range(1..=4) };
        let d = crate::enumerate::random_representative(sys, g.diagram(), extra, rng);
        let (dr, rd) = forest_delta(sys, &d);
        let off = dr.imbalance() as i64 - rd.imbalance() as i64;
        match value {
            None => value = Some(off),
            Some(v) if v != off => {
                return Err(Error::Inconsistent(format!("imbalance offsets {v} and {off} on one element")))
            }
            _ => {}
        }
    }
    Ok(value.expect("at least one sample"))
}

/// Leaves `u_1, …, u_n` of the domain with `u_{i+1} = sigma(u_i)` and
/// `u_1, …, u_n, sigma(u_n)` pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExpandableSequence {
    pub edges: Vec<Address>,
}

impl ExpandableSequence {
    pub fn first(&self) -> &Address {
        &self.edges[0]
    }

    pub fn last_image<'a>(&self, d: &'a GraphPairDiagram) -> &'a Address {
        &d.sigma[self.edges.last().expect("nonempty")]
    }

    pub fn validate(&self, sys: &ReplacementSystem, d: &GraphPairDiagram) -> Result<()> {
        let bad = |why: &str| Err(Error::InvalidSequence(why.into()));
        if self.edges.is_empty() {
            return bad("empty sequence");
        }
        let mut seen = BTreeSet::new();
        for (i, u) in self.edges.iter().enumerate() {
            let Some(img) = d.sigma.get(u) else {
                return Err(Error::InvalidSequence(format!("{} is not a domain leaf", u.display(sys))));
            };
            if !seen.insert(u.clone()) {
                return bad("repeated edge");
            }
            if let Some(next) = self.edges.get(i + 1) {
                if img != next {
                    return bad("consecutive edges are not related by sigma");
                }
            }
        }
        if seen.contains(self.last_image(d)) {
            return bad("image of the last edge repeats an edge");
        }
        Ok(())
    }
}

/// Every expandable sequence of `d`, grouped by first edge, shortest first.
pub fn expandable_sequences(d: &GraphPairDiagram) -> Vec<ExpandableSequence> {
    let mut out = Vec::new();
    for start in d.sigma.keys() {
        let mut edges = alloc::vec![start.clone()];
        loop {
            let img = &d.sigma[edges.last().expect("nonempty")];
            if edges.contains(img) {
                break;
            }
            out.push(ExpandableSequence { edges: edges.clone() });
            if !d.sigma.contains_key(img) {
                break;
            }
            edges.push(img.clone());
        }
    }
    out
}

/// A forbidden pattern found in a representative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    /// 1: `u_1` expanded in the range and `sigma(u_n)` expanded in the
    /// domain. 2 and 3: the one-sided patterns joining two components.
    pub pattern: u8,
    pub seq: ExpandableSequence,
}

fn classify(d: &GraphPairDiagram, dr: &ForestDelta, rd: &ForestDelta, seq: &ExpandableSequence) -> Option<u8> {
    let u1 = seq.first();
    let last = seq.last_image(d);
    if d.range.is_internal(u1) && d.domain.is_internal(last) {
        return Some(1);
    }
    if !d.range.is_node(u1) && d.domain.is_internal(last) {
        let u = dr.component_rooted_at(last).map(|c| &c.root);
        let v = u1.parent().and_then(|p| dr.component_containing(&p)).map(|c| &c.root);
        if u != v {
            return Some(2);
        }
    }
    if !d.domain.is_node(last) && d.range.is_internal(u1) {
        let v = rd.component_rooted_at(u1).map(|c| &c.root);
        let u = last.parent().and_then(|p| rd.component_containing(&p)).map(|c| &c.root);
        if u != v {
            return Some(3);
        }
    }
    None
}

/// All violations, sorted by pattern and then by sequence.
pub fn find_violations(sys: &ReplacementSystem, d: &GraphPairDiagram) -> Vec<Violation> {
    let (dr, rd) = forest_delta(sys, d);
    let mut out: Vec<Violation> = expandable_sequences(d)
        .into_iter()
        .filter_map(|seq| classify(d, &dr, &rd, &seq).map(|pattern| Violation { pattern, seq }))
        .collect();
    out.sort();
    out
}

/// Attaches `shape` at every `u_i` in the domain and at every `sigma(u_i)`
/// in the range.
pub fn iterated_expansion(
    sys: &ReplacementSystem,
    d: &GraphPairDiagram,
    seq: &ExpandableSequence,
    shape: &BTreeSet<Vec<Sym>>,
) -> Result<GraphPairDiagram> {
    seq.validate(sys, d)?;
    if !shape.contains(&Vec::new()) {
        return Err(Error::InvalidShape("shape must contain its root".into()));
    }
    let color = seq.first().color(sys);
    for rel in shape {
        if !crate::address::chain_valid(sys, Some(color), rel) {
            return Err(Error::InvalidShape("shape does not fit the sequence color".into()));
        }
        if let Some((_, init)) = rel.split_last() {
            if !shape.contains(init) {
                return Err(Error::InvalidShape("shape is not closed under parents".into()));
            }
        }
    }
    let mut out = d.clone();
    for u in &seq.edges {
        out = out.expand_pair_by_shape(sys, u, shape)?;
    }
    Ok(out)
}

/// Lexicographic measure lowered by every canonicalization step.
pub type Measure = (usize, usize, usize);

pub fn measure(sys: &ReplacementSystem, d: &GraphPairDiagram) -> Measure {
    let (dr, rd) = forest_delta(sys, d);
    (dr.imbalance(), dr.components.len(), rd.components.len())
}

/// A representative with no violations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalElement {
    pub diagram: GraphPairDiagram,
    pub domain_delta: ForestDelta,
    pub range_delta: ForestDelta,
    pub imbalance: (usize, usize),
    /// Iterated expansions applied, with the violation each one removed.
    pub steps: Vec<Violation>,
}

impl CanonicalElement {
    pub fn is_periodic(&self) -> bool {
        self.diagram.domain == self.diagram.range
    }
}

/// Fixes one violation using the component named by its pattern.
fn repair(sys: &ReplacementSystem, d: &GraphPairDiagram, v: &Violation) -> Result<GraphPairDiagram> {
    let (dr, rd) = forest_delta(sys, d);
    let comp = match v.pattern {
        1 | 2 => dr.component_rooted_at(v.seq.last_image(d)),
        _ => rd.component_rooted_at(v.seq.first()),
    }
    .ok_or_else(|| Error::Inconsistent("violation without its component".into()))?;
    iterated_expansion(sys, d, &v.seq, &comp.shape())
}

/// Removes violations, least first, starting from the reduced diagram.
pub fn canonicalize(g: &Rearrangement) -> Result<CanonicalElement> {
    let sys = &**g.system();
    let mut d = g.diagram().clone();
    let mut steps = Vec::new();
    let mut m = measure(sys, &d);
    while let Some(v) = find_violations(sys, &d).into_iter().next() {
        let next = repair(sys, &d, &v)?;
        let m2 = measure(sys, &next);
        if m2 >= m {
            return Err(Error::Inconsistent(format!(
                "canonicalization step did not lower the measure: {m:?} -> {m2:?}"
            )));
        }
        debug_assert_eq!(next.reduce(sys), *g.diagram());
        d = next;
        m = m2;
        steps.push(v);
    }
    let (domain_delta, range_delta) = forest_delta(sys, &d);
    let imbalance = (domain_delta.imbalance(), range_delta.imbalance());
    Ok(CanonicalElement { diagram: d, domain_delta, range_delta, imbalance, steps })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl core::fmt::Display for Order {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => f.write_str("infinite"),
        }
    }
}

pub fn is_periodic(g: &Rearrangement) -> Result<bool> {
    Ok(canonicalize(g)?.is_periodic())
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Lengths of the cycles of sigma on the leaves of a diagram with D = R.
pub fn cycle_lengths(d: &GraphPairDiagram) -> Vec<(Address, u64)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for start in d.sigma.keys() {
        if seen.contains(start) {
            continue;
        }
        let mut len = 0;
        let mut a = start;
        loop {
            seen.insert(a.clone());
            len += 1;
            a = &d.sigma[a];
            if a == start {
                break;
            }
        }
        out.push((start.clone(), len));
    }
    out
}

pub fn order_of(c: &CanonicalElement) -> Order {
    if !c.is_periodic() {
        return Order::Infinite;
    }
    Order::Finite(cycle_lengths(&c.diagram).iter().fold(1, |acc, &(_, l)| acc / gcd(acc, l) * l))
}

pub fn order(g: &Rearrangement) -> Result<Order> {
    Ok(order_of(&canonicalize(g)?))
}

/// Follows `r, sigma(r), …` through domain leaves until the image falls
/// strictly below `r`; returns the number of steps and that image.
pub fn return_below(sys: &ReplacementSystem, c: &CanonicalElement, r: &Address) -> Result<(usize, Address)> {
    let d = &c.diagram;
    if !d.domain.is_leaf(r) || !d.range.is_internal(r) {
        return Err(Error::Precondition(format!("{} is not a domain leaf expanded in the range", r.display(sys))));
    }
    let mut visited = BTreeSet::new();
    let mut u = r.clone();
    for n in 1..=d.sigma.len() {
        visited.insert(u.clone());
        let img = d.sigma[&u].clone();
        if r.is_proper_prefix_of(&img) {
            return Ok((n, img));
        }
        if !d.sigma.contains_key(&img) || visited.contains(&img) {
            return Err(Error::Inconsistent(format!(
                "orbit of {} left the domain leaves at {} without returning below it",
                r.display(sys),
                img.display(sys)
            )));
        }
        u = img;
    }
    Err(Error::Inconsistent(format!("orbit of {} does not return below it", r.display(sys))))
}
