#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, OnceLock};

use rand::Rng;
use rearr_core::enumerate::{expansions_up_to, ElementSampler};
use rearr_core::system::{builtin, BUILTIN_NAMES};
use rearr_core::{Address, CellUnion, GraphPairDiagram, LassoPoint, Rearrangement, ReplacementSystem};

pub fn system(name: &str) -> Arc<ReplacementSystem> {
    Arc::new(builtin(name).unwrap())
}

pub fn addr(sys: &ReplacementSystem, s: &str) -> Address {
    Address::parse(sys, s).unwrap()
}

/// One sampler per built-in system, budget 4.
pub fn samplers() -> &'static [ElementSampler] {
    static CELL: OnceLock<Vec<ElementSampler>> = OnceLock::new();
    CELL.get_or_init(|| BUILTIN_NAMES.iter().map(|n| ElementSampler::new(&system(n), 4)).collect())
}

pub fn random_cell<R: Rng>(sys: &ReplacementSystem, max_depth: usize, rng: &mut R) -> Address {
    let bases: Vec<_> = sys.base_syms().collect();
    let mut a = Address::root(bases[rng.gen_range(0..bases.len())]);
    for _ in 0..rng.gen_range(0..=max_depth) {
        let kids: Vec<_> = sys.rule_syms(a.color(sys)).collect();
        a = a.child(kids[rng.gen_range(0..kids.len())]);
    }
    a
}

pub fn random_point<R: Rng>(sys: &ReplacementSystem, rng: &mut R) -> LassoPoint {
    loop {
        let head = random_cell(sys, 3, rng);
        let mut color = head.color(sys);
        let mut cycle = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            let kids: Vec<_> = sys.rule_syms(color).collect();
            let s = kids[rng.gen_range(0..kids.len())];
            color = sys.sym_color(s);
            cycle.push(s);
        }
        if let Ok(p) = LassoPoint::new(sys, head.syms().to_vec(), cycle) {
            return p;
        }
    }
}

/// Unique form of a union of cells: complete sibling families merged into
/// their parent until none is left.
pub fn merged(sys: &ReplacementSystem, u: &CellUnion) -> BTreeSet<Address> {
    let mut set: BTreeSet<Address> = u.addresses().clone();
    loop {
        let parent = set
            .iter()
            .filter_map(Address::parent)
            .find(|p| sys.rule_syms(p.color(sys)).all(|s| set.contains(&p.child(s))));
        match parent {
            Some(p) => {
                for s in sys.rule_syms(p.color(sys)) {
                    set.remove(&p.child(s));
                }
                set.insert(p);
            }
            None => return set,
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Reduced elements with at most `budget` carets per side, found by trying
/// every bijection of leaves and keeping the valid diagrams.
pub fn brute_elements(sys: &Arc<ReplacementSystem>, budget: usize) -> BTreeSet<GraphPairDiagram> {
    let exps = expansions_up_to(sys, budget);
    let mut out = BTreeSet::new();
    for d in &exps {
        let dl = d.leaves(sys);
        for r in &exps {
            let rl = r.leaves(sys);
            if rl.len() != dl.len() {
                continue;
            }
            for p in permutations(dl.len()) {
                let sigma: BTreeMap<Address, Address> =
                    dl.iter().cloned().zip(p.iter().map(|&i| rl[i].clone())).collect();
                if let Ok(g) = GraphPairDiagram::new(sys, d.clone(), r.clone(), sigma) {
                    out.insert(g.reduce(sys));
                }
            }
        }
    }
    out
}

/// Least number of domain carets missing from the range over all
/// representatives of `g` with at most `max_carets` carets per side.
///
/// Representatives are the extensions of the reduced domain by carets
/// below its leaves; each is visited once by deciding, leaf by leaf in
/// discovery order, whether to expand it.
pub fn brute_min_domain_imbalance(g: &Rearrangement, max_carets: usize) -> usize {
    let sys = &**g.system();
    let d = g.diagram();
    let (dc, rc) = (d.domain.carets(), d.range.carets());
    let Some(extra) = max_carets.checked_sub(dc.len().max(rc.len())) else { return usize::MAX };

    struct Search<'a> {
        sys: &'a ReplacementSystem,
        d: &'a GraphPairDiagram,
        frontier: Vec<Address>,
        added: Vec<Address>,
        best: usize,
    }

    impl Search<'_> {
        fn image(&self, a: &Address) -> Address {
            let leaf = self.d.domain.leaf_above(a).expect("below a domain leaf");
            self.d.sigma[&leaf].concat(leaf.suffix_in(a).unwrap())
        }

        fn evaluate(&mut self) {
            let range: BTreeSet<Address> =
                self.d.range.carets().iter().cloned().chain(self.added.iter().map(|a| self.image(a))).collect();
            let missing = self.d.domain.carets().iter().chain(&self.added).filter(|c| !range.contains(*c)).count();
            self.best = self.best.min(missing);
        }

        fn run(&mut self, i: usize, left: usize) {
            if i == self.frontier.len() {
                self.evaluate();
                return;
            }
            self.run(i + 1, left);
            if left > 0 {
                let a = self.frontier[i].clone();
                let kids: Vec<Address> = self.sys.rule_syms(a.color(self.sys)).map(|s| a.child(s)).collect();
                let n = kids.len();
                self.frontier.extend(kids);
                self.added.push(a);
                self.run(i + 1, left - 1);
                self.added.pop();
                self.frontier.truncate(self.frontier.len() - n);
            }
        }
    }

    let mut s = Search { sys, d, frontier: d.sigma.keys().cloned().collect(), added: Vec::new(), best: usize::MAX };
    s.run(0, extra);
    s.best
}
