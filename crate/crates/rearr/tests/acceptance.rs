//! Acceptance criteria 1 to 10. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use common::{addr, brute_min_domain_imbalance, system};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rearr::{parse_system, serialize_system};
use rearr_core::canonical::{canonicalize, find_violations, forest_delta, is_periodic, order, Order};
use rearr_core::enumerate::{enumerate_elements, random_representative, ElementSampler};
use rearr_core::fixtures;
use rearr_core::noninvgen::{nig_report, word_text, NigConfig};
use rearr_core::points::is_extreme;
use rearr_core::system::{builtin, BUILTIN_NAMES};
use rearr_core::transitivity::{cells_at_depth, find_witness, verify_witness, WitnessQuery};
use rearr_core::wandering::{verify_wandering, wandering_cell, CertificateData};
use rearr_core::{CellUnion, End, EndState, Expansion, LassoPoint, Rearrangement, ReplacementSystem, VertexId};

const BUDGET: usize = 4;

type Check = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    outcome(false, detail)
}

fn samplers() -> Vec<ElementSampler> {
    BUILTIN_NAMES.iter().map(|n| ElementSampler::new(&system(n), BUDGET)).collect()
}

fn group_axioms() -> Outcome {
    let start = Instant::now();
    for (k, s) in samplers().iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(100 + k as u64);
        let sys = s.system();
        let id = Rearrangement::identity(sys);
        for i in 0..200 {
            let (a, b, c) = (s.sample(&mut rng), s.sample(&mut rng), s.sample(&mut rng));
            let assoc = a.compose(&b).unwrap().compose(&c).unwrap() == a.compose(&b.compose(&c).unwrap()).unwrap();
            let unit = a.compose(&id).unwrap() == a && id.compose(&a).unwrap() == a;
            let inv = a.compose(&a.invert()).unwrap().is_identity() && a.invert().compose(&a).unwrap().is_identity();
            if !(assoc && unit && inv) {
                return fail(format!("{} sample {i}: assoc {assoc} unit {unit} inverse {inv}", sys.name()));
            }
        }
    }
    let t = start.elapsed();
    outcome(t < Duration::from_secs(60), format!("5 systems x 200 triples in {t:.2?}"))
}

fn confluence() -> Outcome {
    let mut count = 0;
    for (k, s) in samplers().iter().enumerate() {
        let sys = &**s.system();
        let mut rng = ChaCha8Rng::seed_from_u64(200 + k as u64);
        for i in 0..100 {
            let g = s.sample(&mut rng);
            let extra = rng.gen_range(0..=3);
            let d = random_representative(sys, g.diagram(), extra, &mut rng);
            for _ in 0..5 {
                if d.reduce_with(sys, |n| rng.gen_range(0..n)) != *g.diagram() {
                    return fail(format!("{} diagram {i}: two reductions differ", sys.name()));
                }
                count += 1;
            }
        }
    }
    outcome(true, format!("{count} randomized reductions agree"))
}

fn imbalance() -> Outcome {
    for (k, s) in samplers().iter().enumerate() {
        let sys = &**s.system();
        let mut rng = ChaCha8Rng::seed_from_u64(300 + k as u64);
        for i in 0..50 {
            let g = s.sample(&mut rng);
            let mut offsets = Vec::new();
            for _ in 0..10 {
                let extra = rng.gen_range(0..=4);
                let (dr, rd) = forest_delta(sys, &random_representative(sys, g.diagram(), extra, &mut rng));
                offsets.push(dr.imbalance() as i64 - rd.imbalance() as i64);
            }
            if offsets.iter().any(|&o| o != offsets[0]) {
                return fail(format!("{} element {i}: offsets {offsets:?}", sys.name()));
            }
        }
    }
    outcome(true, "5 systems x 50 elements x 10 representatives")
}

fn canonical_forms() -> Outcome {
    let start = Instant::now();
    for (k, s) in samplers().iter().enumerate() {
        let sys = &**s.system();
        let mut rng = ChaCha8Rng::seed_from_u64(400 + k as u64);
        for i in 0..100 {
            let g = s.sample(&mut rng);
            match canonicalize(&g) {
                Ok(c) if find_violations(sys, &c.diagram).is_empty() => {}
                Ok(_) => return fail(format!("{} element {i}: violations remain", sys.name())),
                Err(e) => return fail(format!("{} element {i}: {e}", sys.name())),
            }
        }
    }
    let mut checked = 0;
    for name in BUILTIN_NAMES {
        let sys = system(name);
        for g in enumerate_elements(&sys, 3) {
            let c = canonicalize(&g).unwrap();
            // The search must reach the canonical diagram itself.
            let bound = c.diagram.domain.caret_count().max(c.diagram.range.caret_count()).max(6);
            let best = brute_min_domain_imbalance(&g, bound);
            if c.imbalance.0 != best {
                return fail(format!(
                    "{name}: canonical imbalance {} but {best} exists\n{}",
                    c.imbalance.0,
                    g.to_text()
                ));
            }
            checked += 1;
        }
    }
    let t = start.elapsed();
    outcome(
        t < Duration::from_secs(300),
        format!("500 random canonical forms clean; {checked} elements with <= 3 carets minimal; {t:.2?}"),
    )
}

fn first_identity_power(g: &Rearrangement, bound: u64) -> Option<u64> {
    let mut p = g.clone();
    for k in 1..=bound {
        if p.is_identity() {
            return Some(k);
        }
        p = p.compose(g).unwrap();
    }
    None
}

fn periodicity() -> Outcome {
    let sys = system("circle_T");
    let elements = enumerate_elements(&sys, 2);
    let (mut periodic, mut wandering) = (0, 0);
    for g in &elements {
        let truth = first_identity_power(g, 120);
        let claimed = is_periodic(g).unwrap();
        if claimed != truth.is_some() {
            return fail(format!("is_periodic {claimed} but power search says {truth:?}\n{}", g.to_text()));
        }
        match order(g).unwrap() {
            Order::Finite(n) => {
                if truth != Some(n) {
                    return fail(format!("order {n} but first identity power {truth:?}\n{}", g.to_text()));
                }
                periodic += 1;
            }
            Order::Infinite => {
                let cert = wandering_cell(g).unwrap();
                if !verify_wandering(g, &cert, 20).passed {
                    return fail(format!("certificate fails at M = 20\n{}", g.to_text()));
                }
                wandering += 1;
            }
        }
    }
    let r = fixtures::r(&sys).unwrap();
    let x = fixtures::x(&sys).unwrap();
    if order(&r).unwrap() != Order::Finite(2) || is_periodic(&x).unwrap() {
        return fail("fixtures r and x misclassified");
    }
    outcome(
        true,
        format!(
            "{} circle elements: {periodic} periodic, {wandering} non-periodic; r order 2, x non-periodic",
            elements.len()
        ),
    )
}

fn wandering_certificates() -> Outcome {
    for (k, s) in samplers().iter().enumerate() {
        let sys = &**s.system();
        let mut rng = ChaCha8Rng::seed_from_u64(600 + k as u64);
        for i in 0..100 {
            let g = s.sample_nontrivial(&mut rng);
            let cert = match wandering_cell(&g) {
                Ok(c) => c,
                Err(e) => return fail(format!("{} element {i}: {e}", sys.name())),
            };
            let m = match cert.data {
                CertificateData::Periodic { order, .. } => (2 * order as usize).max(20),
                CertificateData::NonPeriodic { .. } => 20,
            };
            if !verify_wandering(&g, &cert, m).passed {
                return fail(format!("{} element {i}: certificate fails\n{}", sys.name(), g.to_text()));
            }
        }
    }
    let circle = system("circle_T");
    let x = fixtures::x(&circle).unwrap();
    let expected = CertificateData::NonPeriodic {
        e: addr(&circle, "t.2"),
        e_star: addr(&circle, "t.2.2"),
        n: 1,
        f: addr(&circle, "t.2.1"),
    };
    let got = wandering_cell(&x).unwrap().data;
    if got != expected {
        return fail(format!("x certificate {got:?}"));
    }
    outcome(true, "500 certificates verified; x gives (t.2, t.2.2, 1, t.2.1)")
}

fn transitivity() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for name in ["circle_T", "cantor_V"] {
        let sys = system(name);
        let proper: Vec<_> = (1..=3).flat_map(|d| cells_at_depth(&sys, d)).collect();
        let targets: Vec<_> = (0..=3).flat_map(|d| cells_at_depth(&sys, d)).collect();
        for a in &proper {
            for c in &targets {
                let cells = CellUnion::closed([a.clone()]);
                let w = find_witness(&sys, &WitnessQuery::new(cells.clone(), c.clone(), BUDGET));
                match w {
                    Ok(Some(g)) if verify_witness(&g, &cells, c) => pairs += 1,
                    other => {
                        return fail(format!(
                            "{name}: {} into {}: {:?}",
                            a.display(&sys),
                            c.display(&sys),
                            other.map(|o| o.is_some())
                        ))
                    }
                }
            }
        }
    }
    let t = start.elapsed();
    outcome(t < Duration::from_secs(300), format!("{pairs} ordered pairs witnessed in {t:.2?}"))
}

fn nig_case(name: &str, point: &str) -> Result<String, String> {
    let sys = system(name);
    let p = LassoPoint::parse(&sys, point).map_err(|e| e.to_string())?;
    let elements = vec![fixtures::x(&sys).unwrap(), fixtures::r(&sys).unwrap()];
    let start = Instant::now();
    let mut cfg = NigConfig::new(&sys, p, elements);
    let res = nig_report(&cfg).map_err(|e| format!("{name}: {e}"))?;
    if !res.passed {
        let f = res.first_failure().unwrap();
        return Err(format!("{name}: {} -> {}", word_text(&f.word), f.point.display(&sys)));
    }
    cfg.sabotage = true;
    let bad = nig_report(&cfg).map_err(|e| format!("{name} sabotage: {e}"))?;
    let Some(f) = bad.first_failure().filter(|_| !bad.passed) else {
        return Err(format!("{name}: sabotage was not detected"));
    };
    let t = start.elapsed();
    if t > Duration::from_secs(300) {
        return Err(format!("{name}: {t:.2?}"));
    }
    Ok(format!(
        "{name}: {} orbit points ok, sabotage caught at {} -> {}",
        res.orbit.len(),
        word_text(&f.word),
        f.point.display(&sys)
    ))
}

fn non_generation() -> Outcome {
    let mut parts = Vec::new();
    for (name, point) in [("circle_T", "t:(1.2)"), ("cantor_V", "t:(1.2)")] {
        match nig_case(name, point) {
            Ok(s) => parts.push(s),
            Err(e) => return fail(e),
        }
    }
    outcome(true, parts.join("; "))
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_rearr"))
        .args(args)
        .current_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/../.."))
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

fn formats() -> Outcome {
    for name in BUILTIN_NAMES {
        let sys = builtin(name).unwrap();
        let text = serialize_system(&sys);
        let back = match parse_system(&text) {
            Ok(b) => b,
            Err(e) => return fail(format!("{name}: {e}")),
        };
        if back != sys || serialize_system(&back) != text {
            return fail(format!("{name}: round trip differs"));
        }
        let path = format!("{}/../../data/systems/{name}.rs.txt", env!("CARGO_MANIFEST_DIR"));
        match std::fs::read_to_string(&path) {
            Ok(file)
                if file == text
                    && parse_system(&file).map(|s| serialize_system(&s)).ok().as_deref() == Some(&file[..]) => {}
            _ => return fail(format!("{path} is not the serialized built-in")),
        }
    }
    let runs: [&[&str]; 6] = [
        &["enumerate", "--system", "airplane", "--budget", "3", "--sample", "25", "--seed", "7"],
        &["enumerate", "--system", "cantor_V", "--budget", "2", "--format", "json"],
        &["canonical", "--system", "circle_T", "--element", "data/elements/circle_T_x.gpd", "--format", "json"],
        &["wandering", "--system", "cantor_V", "--element", "data/elements/cantor_V_x.gpd"],
        &["nig-demo", "--system", "circle_T", "--point", "t:(1.2)", "--elements", "data/elements/circle_T_xr.elements"],
        &["dot", "--system", "airplane"],
    ];
    for args in runs {
        let first = match run_cli(args) {
            Ok(o) => o,
            Err(e) => return fail(e),
        };
        for _ in 0..2 {
            match run_cli(args) {
                Ok(o) if o == first => {}
                Ok(_) => return fail(format!("{args:?}: output differs between runs")),
                Err(e) => return fail(e),
            }
        }
    }
    outcome(true, "5 built-ins round-trip byte-exact; 6 CLI invocations identical over 3 runs")
}

/// A base vertex is extreme if it has degree one in every expansion.
fn degree_one_everywhere(sys: &ReplacementSystem, v: usize, depth: usize) -> bool {
    (0..=depth).all(|n| {
        let g = Expansion::full(sys, n).graph(sys);
        let at = g.vertices.iter().position(|x| *x == VertexId::Base(v)).unwrap();
        g.edges.iter().map(|e| (e.src == at) as usize + (e.dst == at) as usize).sum::<usize>() == 1
    })
}

fn extremes() -> Outcome {
    let interval = builtin("interval_F").unwrap();
    let circle = builtin("circle_T").unwrap();
    let plane = builtin("airplane").unwrap();
    let blue = plane.color_by_name("blue").unwrap();
    let mut checks = vec![
        ("interval_F v0 extreme", is_extreme(&interval, &VertexId::Base(0)), true),
        ("interval_F v1 extreme", is_extreme(&interval, &VertexId::Base(1)), true),
        ("circle_T x0 not extreme", is_extreme(&circle, &VertexId::Base(0)), false),
        (
            "airplane (blue, term) extreme",
            plane.extreme_ends().contains(&EndState { color: blue, end: End::Term }),
            true,
        ),
    ];
    let lt = plane.base().vertices.iter().position(|v| v == "lt").unwrap();
    checks.push(("airplane lt extreme", is_extreme(&plane, &VertexId::Base(lt)), true));
    let oracle = [
        degree_one_everywhere(&interval, 0, 4),
        degree_one_everywhere(&interval, 1, 4),
        degree_one_everywhere(&circle, 0, 4),
        degree_one_everywhere(&plane, lt, 3),
        degree_one_everywhere(&plane, lt, 3),
    ];
    for ((what, got, want), truth) in checks.iter().zip(oracle) {
        if got != want || *got != truth {
            return fail(format!("{what}: got {got}, expected {want}, degree oracle {truth}"));
        }
    }
    outcome(true, checks.iter().map(|c| c.0).collect::<Vec<_>>().join(", "))
}

fn main() -> ExitCode {
    let criteria: [Check; 10] = [
        ("group axioms", group_axioms),
        ("reduction confluence", confluence),
        ("imbalance invariance", imbalance),
        ("canonical form", canonical_forms),
        ("periodicity", periodicity),
        ("wandering certificates", wandering_certificates),
        ("transitivity witnesses", transitivity),
        ("non-generation demo", non_generation),
        ("formats", formats),
        ("extremes", extremes),
    ];
    let mut all = true;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        all &= o.passed;
        println!("criterion {:>2} {} {name}: {}", i + 1, if o.passed { "PASS" } else { "FAIL" }, o.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
