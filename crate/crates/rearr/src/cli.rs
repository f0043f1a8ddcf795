//! The `rearr` command line. [`execute`] returns the rendered output and
//! exit status, so every command can be driven from tests.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rearr_core::canonical::{canonicalize, find_violations, order, Component, ForestDelta};
use rearr_core::enumerate::{enumerate_elements, ElementSampler};
use rearr_core::noninvgen::{nig_report, word_text, NigConfig, NigResult};
use rearr_core::points::is_extreme;
use rearr_core::transitivity::{find_witness, minimality_evidence, verify_witness, WitnessQuery};
use rearr_core::wandering::{verify_wandering, wandering_cell, PowerOutcome};
use rearr_core::{
    Address, CellKind, CellUnion, CertificateData, End, Expansion, GraphPairDiagram, LassoPoint, Order, Rearrangement,
    ReplacementSystem, VertexId, WanderingKind,
};
use serde_json::{json, Value};

use crate::diagram_text::{parse_diagram, parse_element, parse_elements};
use crate::dot::{diagram_dot, expansion_dot, system_dot, vertex_name};
use crate::error::{Error, Result};
use crate::system_text::load_system;

#[derive(Debug, Parser)]
#[command(name = "rearr", version, about = "Rearrangement groups of replacement systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct SystemArg {
    /// Built-in name or path to a system file.
    #[arg(long)]
    pub system: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the expanding conditions and report extremes.
    Validate(SystemArg),
    /// Print an expansion graph.
    Expand {
        #[command(flatten)]
        sys: SystemArg,
        /// Full expansion of this depth.
        #[arg(long, conflicts_with = "cells")]
        depth: Option<usize>,
        /// Comma-separated leaves.
        #[arg(long)]
        cells: Option<String>,
    },
    /// `left` followed by `right`.
    Compose {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    Reduce {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long)]
        element: PathBuf,
    },
    /// Canonical representative with its forest differences.
    Canonical {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long)]
        element: PathBuf,
    },
    Order {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long)]
        element: PathBuf,
    },
    /// Wandering certificate and its check over powers.
    Wandering {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long)]
        element: PathBuf,
        #[arg(long, default_value_t = 20)]
        max_power: usize,
    },
    /// An element moving the cells into the target cell.
    Witness {
        #[command(flatten)]
        sys: SystemArg,
        /// Comma-separated cell addresses.
        #[arg(long)]
        cells: String,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 4)]
        budget: usize,
    },
    /// Orbits of depth-1 cells under the given generators.
    Minimality {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long)]
        elements: PathBuf,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = 6)]
        steps: usize,
    },
    /// Ping-pong check that conjugates of the elements miss an orbit.
    NigDemo {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long)]
        point: String,
        #[arg(long)]
        elements: PathBuf,
        #[arg(long, default_value_t = 4)]
        word_bound: usize,
        #[arg(long, default_value_t = 6)]
        budget: usize,
        #[arg(long, default_value_t = 20)]
        max_power: usize,
        /// Replace the first conjugate by the unconjugated element.
        #[arg(long)]
        sabotage: bool,
    },
    /// Graphviz text for the system, an expansion or an element.
    Dot {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long, conflicts_with_all = ["depth", "cells"])]
        element: Option<PathBuf>,
        #[arg(long, conflicts_with = "cells")]
        depth: Option<usize>,
        #[arg(long)]
        cells: Option<String>,
    },
    /// Reduced elements with at most `budget` carets per side.
    Enumerate {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long, default_value_t = 2)]
        budget: usize,
        /// Draw this many random elements instead of listing all.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::Expand { .. } => "expand",
            Command::Compose { .. } => "compose",
            Command::Reduce { .. } => "reduce",
            Command::Canonical { .. } => "canonical",
            Command::Order { .. } => "order",
            Command::Wandering { .. } => "wandering",
            Command::Witness { .. } => "witness",
            Command::Minimality { .. } => "minimality",
            Command::NigDemo { .. } => "nig-demo",
            Command::Dot { .. } => "dot",
            Command::Enumerate { .. } => "enumerate",
        }
    }

    fn system(&self) -> &str {
        match self {
            Command::Validate(s)
            | Command::Expand { sys: s, .. }
            | Command::Compose { sys: s, .. }
            | Command::Reduce { sys: s, .. }
            | Command::Canonical { sys: s, .. }
            | Command::Order { sys: s, .. }
            | Command::Wandering { sys: s, .. }
            | Command::Witness { sys: s, .. }
            | Command::Minimality { sys: s, .. }
            | Command::NigDemo { sys: s, .. }
            | Command::Dot { sys: s, .. }
            | Command::Enumerate { sys: s, .. } => &s.system,
        }
    }
}

/// Rendered output and exit status of one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: u8,
}

struct Report {
    text: String,
    json: Value,
    code: u8,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, code: 0 }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn element(sys: &Arc<ReplacementSystem>, path: &Path) -> Result<Rearrangement> {
    parse_element(sys, &read(path)?)
}

fn addresses(sys: &ReplacementSystem, list: &str) -> Result<Vec<Address>> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Address::parse(sys, s).map_err(Error::from))
        .collect()
}

fn name(sys: &ReplacementSystem, a: &Address) -> String {
    a.display(sys).to_string()
}

fn names(sys: &ReplacementSystem, v: impl IntoIterator<Item = impl std::borrow::Borrow<Address>>) -> Vec<String> {
    v.into_iter().map(|a| name(sys, a.borrow())).collect()
}

pub fn diagram_json(sys: &ReplacementSystem, d: &GraphPairDiagram) -> Value {
    let mut domain = names(sys, d.sigma.keys());
    domain.sort();
    let mut range = names(sys, d.sigma.values());
    range.sort();
    let mut sigma: Vec<(String, String)> = d.sigma.iter().map(|(a, b)| (name(sys, a), name(sys, b))).collect();
    sigma.sort();
    json!({
        "domain": domain,
        "range": range,
        "sigma": sigma.into_iter().map(|(a, b)| json!({"from": a, "to": b})).collect::<Vec<_>>(),
    })
}

fn cells_json(sys: &ReplacementSystem, u: &CellUnion) -> Value {
    let kind = match u.kind() {
        CellKind::Closed => "closed",
        CellKind::Interior => "interior",
    };
    json!({"kind": kind, "cells": names(sys, u.addresses())})
}

fn cells_text(sys: &ReplacementSystem, u: &CellUnion) -> String {
    let kind = match u.kind() {
        CellKind::Closed => "closed",
        CellKind::Interior => "interior",
    };
    format!("{kind} {}", u.display(sys))
}

fn end_name(end: End) -> &'static str {
    match end {
        End::Init => "init",
        End::Term => "term",
    }
}

fn validate(sys: &ReplacementSystem) -> Report {
    let violations = sys.validate_expanding();
    let extremes: Vec<String> =
        sys.extreme_ends().into_iter().map(|s| format!("({}, {})", sys.color_name(s.color), end_name(s.end))).collect();
    let extreme_vertices: Vec<String> = (0..sys.base().vertices.len())
        .filter(|&v| is_extreme(sys, &VertexId::Base(v)))
        .map(|v| sys.base().vertices[v].clone())
        .collect();
    let mut text = format!("system {}\n", sys.name());
    let _ = writeln!(text, "colors: {}", sys.colors().join(" "));
    let _ = writeln!(text, "base: {} vertices, {} edges", sys.base().vertices.len(), sys.base().edges.len());
    let _ = writeln!(text, "expanding: {}", if violations.is_empty() { "yes" } else { "no" });
    for v in &violations {
        let _ = writeln!(text, "  {v}");
    }
    let _ = writeln!(text, "extreme ends: {}", extremes.join(" "));
    let _ = writeln!(text, "extreme base vertices: {}", extreme_vertices.join(" "));
    let json = json!({
        "name": sys.name(),
        "colors": sys.colors(),
        "base_vertices": sys.base().vertices.len(),
        "base_edges": sys.base().edges.len(),
        "expanding": violations.is_empty(),
        "violations": violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "extreme_ends": extremes,
        "extreme_base_vertices": extreme_vertices,
    });
    Report { text, json, code: if violations.is_empty() { 0 } else { 1 } }
}

fn expansion_of(sys: &ReplacementSystem, depth: Option<usize>, cells: Option<&str>) -> Result<Expansion> {
    match cells {
        Some(list) => Ok(Expansion::from_leaves(sys, &addresses(sys, list)?)?),
        None => Ok(Expansion::full(sys, depth.unwrap_or(1))),
    }
}

fn expand(sys: &ReplacementSystem, e: &Expansion) -> Report {
    let g = e.graph(sys);
    let vertices: Vec<String> = g.vertices.iter().map(|v| vertex_name(sys, v)).collect();
    let edges: Vec<(String, String, String, String)> = g
        .edges
        .iter()
        .map(|x| {
            (
                name(sys, &x.address),
                vertices[x.src].clone(),
                vertices[x.dst].clone(),
                sys.color_name(x.color).to_string(),
            )
        })
        .collect();
    let mut text = format!("carets: {}\nvertices: {}\nedges:\n", e.caret_count(), vertices.join(" "));
    for (a, s, t, c) in &edges {
        let _ = writeln!(text, "  {a}: {s} -> {t} {c}");
    }
    let _ = writeln!(text, "components: {}", g.components());
    let json = json!({
        "carets": e.caret_count(),
        "vertices": vertices,
        "edges": edges.iter().map(|(a, s, t, c)| json!({"address": a, "src": s, "dst": t, "color": c})).collect::<Vec<_>>(),
        "components": g.components(),
    });
    Report::ok(text, json)
}

fn element_report(sys: &ReplacementSystem, g: &Rearrangement) -> Report {
    Report::ok(g.to_text(), diagram_json(sys, g.diagram()))
}

fn components_text(sys: &ReplacementSystem, out: &mut String, label: &str, delta: &ForestDelta) {
    let _ = writeln!(out, "{label}: {} carets", delta.imbalance());
    for c in &delta.components {
        let _ = writeln!(
            out,
            "  root {} carets {} leaves {}",
            name(sys, &c.root),
            c.carets.len(),
            names(sys, &c.leaves).join(" ")
        );
    }
}

fn component_json(sys: &ReplacementSystem, c: &Component) -> Value {
    json!({"root": name(sys, &c.root), "carets": names(sys, &c.carets), "leaves": names(sys, &c.leaves)})
}

fn canonical(g: &Rearrangement) -> Result<Report> {
    let sys = &**g.system();
    let c = canonicalize(g)?;
    let violations = find_violations(sys, &c.diagram);
    let mut text = c.diagram.to_text(sys);
    components_text(sys, &mut text, "domain minus range", &c.domain_delta);
    components_text(sys, &mut text, "range minus domain", &c.range_delta);
    let _ = writeln!(text, "imbalance: {} {}", c.imbalance.0, c.imbalance.1);
    let _ = writeln!(text, "steps: {}", c.steps.len());
    for s in &c.steps {
        let _ = writeln!(text, "  pattern {} at {}", s.pattern, names(sys, &s.seq.edges).join(" "));
    }
    let _ = writeln!(text, "violations: {}", violations.len());
    let _ = writeln!(text, "periodic: {}", if c.is_periodic() { "yes" } else { "no" });
    let json = json!({
        "diagram": diagram_json(sys, &c.diagram),
        "domain_delta": c.domain_delta.components.iter().map(|x| component_json(sys, x)).collect::<Vec<_>>(),
        "range_delta": c.range_delta.components.iter().map(|x| component_json(sys, x)).collect::<Vec<_>>(),
        "imbalance": [c.imbalance.0, c.imbalance.1],
        "steps": c.steps.iter().map(|s| json!({"pattern": s.pattern, "sequence": names(sys, &s.seq.edges)})).collect::<Vec<_>>(),
        "violations": violations.len(),
        "periodic": c.is_periodic(),
    });
    Ok(Report::ok(text, json))
}

fn order_report(g: &Rearrangement) -> Result<Report> {
    let o = order(g)?;
    let (text, json) = match o {
        Order::Finite(n) => (format!("periodic, order {n}\n"), json!({"periodic": true, "order": n})),
        Order::Infinite => ("non-periodic, infinite order\n".to_string(), json!({"periodic": false, "order": null})),
    };
    Ok(Report::ok(text, json))
}

fn outcome_name(o: PowerOutcome) -> &'static str {
    match o {
        PowerOutcome::Disjoint => "disjoint",
        PowerOutcome::FixedPointwise => "fixed pointwise",
        PowerOutcome::Meets => "MEETS",
    }
}

fn wandering(g: &Rearrangement, max_power: usize) -> Result<Report> {
    let sys = &**g.system();
    let cert = wandering_cell(g)?;
    let rep = verify_wandering(g, &cert, max_power);
    let kind = match cert.kind {
        WanderingKind::Wandering => "wandering",
        WanderingKind::WeaklyWandering => "weakly wandering",
    };
    let mut text = format!("kind: {kind}\nset: {}\n", cells_text(sys, &cert.set));
    let data = match &cert.data {
        CertificateData::NonPeriodic { e, e_star, n, f } => {
            let _ = writeln!(text, "e: {}\ne*: {}\nn: {n}\nf: {}", name(sys, e), name(sys, e_star), name(sys, f));
            json!({"e": name(sys, e), "e_star": name(sys, e_star), "n": n, "f": name(sys, f)})
        }
        CertificateData::Periodic { edge, orbit_length, order } => {
            let _ = writeln!(text, "edge: {}\norbit length: {orbit_length}\norder: {order}", name(sys, edge));
            json!({"edge": name(sys, edge), "orbit_length": orbit_length, "order": order})
        }
    };
    let _ = writeln!(text, "verified: {} (powers +-1..+-{max_power})", if rep.passed { "yes" } else { "no" });
    for c in &rep.checks {
        let _ = writeln!(text, "  m={}: {} {}", c.m, c.image.display(sys), outcome_name(c.outcome));
    }
    let json = json!({
        "kind": kind,
        "set": cells_json(sys, &cert.set),
        "data": data,
        "max_power": max_power,
        "passed": rep.passed,
        "checks": rep.checks.iter().map(|c| json!({"m": c.m, "image": cells_json(sys, &c.image), "outcome": outcome_name(c.outcome)})).collect::<Vec<_>>(),
    });
    Ok(Report { text, json, code: if rep.passed { 0 } else { 1 } })
}

fn witness(sys: &Arc<ReplacementSystem>, cells: &str, target: &str, budget: usize) -> Result<Report> {
    let cells = CellUnion::closed(addresses(sys, cells)?);
    let target = Address::parse(sys, target)?;
    let q = WitnessQuery::new(cells.clone(), target.clone(), budget);
    let g = find_witness(sys, &q)?.ok_or(rearr_core::Error::BudgetExhausted { what: "witness search", budget })?;
    let ok = verify_witness(&g, &cells, &target);
    let image = g.apply_cell(&cells);
    let text = format!("{}image: {}\nverified: {}\n", g.to_text(), image.display(sys), if ok { "yes" } else { "no" });
    let json = json!({"witness": diagram_json(sys, g.diagram()), "image": cells_json(sys, &image), "verified": ok});
    Ok(Report { text, json, code: if ok { 0 } else { 1 } })
}

fn minimality(sys: &Arc<ReplacementSystem>, gens: &[Rearrangement], depth: usize, steps: usize) -> Result<Report> {
    let rep = minimality_evidence(sys, gens, depth, steps)?;
    let mut text = format!("generators: {}\ndepth: {depth}\nsteps: {steps}\n", gens.len());
    for c in &rep.coverage {
        let total = c.reached.len() + c.missed.len();
        let _ = writeln!(
            text,
            "{}: orbit {} unions, reached {}/{total}",
            name(sys, &c.start),
            c.orbit_size,
            c.reached.len()
        );
        if !c.missed.is_empty() {
            let _ = writeln!(text, "  missed {}", names(sys, &c.missed).join(" "));
        }
    }
    let _ = writeln!(text, "full: {}", if rep.full() { "yes" } else { "no" });
    let json = json!({
        "depth": depth,
        "steps": steps,
        "coverage": rep.coverage.iter().map(|c| json!({
            "start": name(sys, &c.start),
            "orbit_size": c.orbit_size,
            "reached": names(sys, &c.reached),
            "missed": names(sys, &c.missed),
        })).collect::<Vec<_>>(),
        "full": rep.full(),
    });
    Ok(Report::ok(text, json))
}

fn lasso(sys: &ReplacementSystem, p: &LassoPoint) -> String {
    p.display(sys).to_string()
}

fn nig(cfg: &NigConfig) -> Result<Report> {
    let sys = &*cfg.sys;
    let res: NigResult = nig_report(cfg)?;
    let mut text = format!("point: {}\n", lasso(sys, &cfg.point));
    let _ = writeln!(text, "cells: {}", names(sys, &res.cells).join(" "));
    for (i, (comp, c)) in res.complements.iter().zip(&res.conjugators).enumerate() {
        let _ = writeln!(
            text,
            "g{}: complement {} into {} (certificate {})",
            i + 1,
            comp.display(sys),
            name(sys, &c.target),
            cells_text(sys, &c.certificate.set)
        );
    }
    let _ = writeln!(text, "avoided cell: {}", name(sys, &res.avoided_cell));
    let _ = writeln!(text, "orbit points: {}", res.orbit.len());
    for e in &res.orbit {
        let mut status = String::new();
        if !e.in_expected {
            status.push_str(" NOT IN I");
        }
        if e.touches_avoided {
            status.push_str(" TOUCHES AVOIDED");
        }
        let _ = writeln!(text, "  {} -> {}{status}", word_text(&e.word), lasso(sys, &e.point));
    }
    if let Some(f) = res.first_failure() {
        let _ = writeln!(text, "first failure: {} -> {}", word_text(&f.word), lasso(sys, &f.point));
    }
    let _ = writeln!(text, "passed: {}", if res.passed { "yes" } else { "no" });
    let json = json!({
        "point": lasso(sys, &cfg.point),
        "cells": names(sys, &res.cells),
        "complements": res.complements.iter().map(|c| cells_json(sys, c)).collect::<Vec<_>>(),
        "conjugators": res.conjugators.iter().map(|c| json!({
            "gamma": diagram_json(sys, c.gamma.diagram()),
            "h": diagram_json(sys, c.h.diagram()),
            "certificate_set": cells_json(sys, &c.certificate.set),
            "target": name(sys, &c.target),
            "verified_to": c.report.checks.len() / 2,
        })).collect::<Vec<_>>(),
        "gammas": res.gammas.iter().map(|g| diagram_json(sys, g.diagram())).collect::<Vec<_>>(),
        "orbit": res.orbit.iter().map(|e| json!({
            "word": word_text(&e.word),
            "point": lasso(sys, &e.point),
            "in_expected": e.in_expected,
            "touches_avoided": e.touches_avoided,
        })).collect::<Vec<_>>(),
        "avoided_cell": name(sys, &res.avoided_cell),
        "first_failure": res.first_failure().map(|f| word_text(&f.word)),
        "passed": res.passed,
    });
    Ok(Report::ok(text, json))
}

fn enumerate(sys: &Arc<ReplacementSystem>, budget: usize, sample: Option<usize>, seed: u64) -> Report {
    let elements: Vec<Rearrangement> = match sample {
        None => enumerate_elements(sys, budget),
        Some(n) => {
            let sampler = ElementSampler::new(sys, budget);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..n).map(|_| sampler.sample(&mut rng)).collect()
        }
    };
    let mut text = format!("# {} elements\n", elements.len());
    text.push_str(&crate::diagram_text::serialize_elements(&elements));
    let json = json!({
        "count": elements.len(),
        "elements": elements.iter().map(|g| diagram_json(sys, g.diagram())).collect::<Vec<_>>(),
    });
    Report::ok(text, json)
}

fn run_command(cmd: &Command) -> Result<Report> {
    let raw = load_system(cmd.system())?;
    if let Command::Validate(_) = cmd {
        return Ok(validate(&raw));
    }
    if !raw.is_expanding() {
        return Err(rearr_core::Error::Precondition(format!("system `{}` is not expanding", raw.name())).into());
    }
    let sys = Arc::new(raw);
    match cmd {
        Command::Validate(_) => unreachable!(),
        Command::Expand { depth, cells, .. } => Ok(expand(&sys, &expansion_of(&sys, *depth, cells.as_deref())?)),
        Command::Compose { left, right, .. } => {
            let g = element(&sys, left)?.compose(&element(&sys, right)?)?;
            Ok(element_report(&sys, &g))
        }
        Command::Reduce { element: path, .. } => {
            let d = parse_diagram(&sys, &read(path)?)?.reduce(&sys);
            Ok(Report::ok(d.to_text(&sys), diagram_json(&sys, &d)))
        }
        Command::Canonical { element: path, .. } => canonical(&element(&sys, path)?),
        Command::Order { element: path, .. } => order_report(&element(&sys, path)?),
        Command::Wandering { element: path, max_power, .. } => wandering(&element(&sys, path)?, *max_power),
        Command::Witness { cells, target, budget, .. } => witness(&sys, cells, target, *budget),
        Command::Minimality { elements, depth, steps, .. } => {
            minimality(&sys, &parse_elements(&sys, &read(elements)?)?, *depth, *steps)
        }
        Command::NigDemo { point, elements, word_bound, budget, max_power, sabotage, .. } => {
            let mut cfg =
                NigConfig::new(&sys, LassoPoint::parse(&sys, point)?, parse_elements(&sys, &read(elements)?)?);
            cfg.word_bound = *word_bound;
            cfg.witness_budget = *budget;
            cfg.wander_bound = *max_power;
            cfg.sabotage = *sabotage;
            nig(&cfg)
        }
        Command::Dot { element: path, depth, cells, .. } => {
            let text = match (path, depth, cells) {
                (Some(p), _, _) => diagram_dot(&sys, element(&sys, p)?.diagram()),
                (None, None, None) => system_dot(&sys),
                (None, d, c) => expansion_dot(&sys, &expansion_of(&sys, *d, c.as_deref())?.graph(&sys)),
            };
            let json = Value::String(text.clone());
            Ok(Report::ok(text, json))
        }
        Command::Enumerate { budget, sample, seed, .. } => Ok(enumerate(&sys, *budget, *sample, *seed)),
    }
}

/// Runs a parsed invocation. Errors are reported as `Err`; a result that
/// was computed but is negative (non-expanding system, failed check) comes
/// back with status 1.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let report = run_command(&cli.command)?;
    let output = match cli.format {
        Format::Text => report.text,
        Format::Json => {
            let doc = json!({
                "command": cli.command.name(),
                "system": cli.command.system(),
                "result": report.json,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("json values serialize");
            s.push('\n');
            s
        }
    };
    Ok(Outcome { output, code: report.code })
}

/// Parses `args` (including the program name) and runs them.
pub fn run<I, T>(args: I) -> Result<Outcome>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| Error::Usage(e.to_string()))?;
    execute(&cli)
}
