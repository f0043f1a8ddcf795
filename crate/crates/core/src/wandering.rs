//! Wandering and weakly wandering cells: synthesis from canonical
//! representatives and brute-force verification over powers.

use alloc::format;
use alloc::vec::Vec;

use crate::address::Address;
use crate::canonical::{canonicalize, cycle_lengths, order_of, return_below, Order};
use crate::diagram::Rearrangement;
use crate::expansion::{CellKind, CellUnion};
use crate::points::{boundary_in_interior, endpoint, VertexId};
use crate::system::{End, ReplacementSystem};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WanderingKind {
    /// Every nontrivial power moves the set off itself.
    Wandering,
    /// Every power either moves the set off itself or fixes it pointwise.
    WeaklyWandering,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateData {
    /// `e` is a domain leaf expanded in the range, `g^n(e) = e_star` lies
    /// below it, and `f` is another range leaf below `e`.
    NonPeriodic { e: Address, e_star: Address, n: usize, f: Address },
    /// `edge` is a leaf of a representative with equal forests whose orbit
    /// under sigma has `orbit_length` elements.
    Periodic { edge: Address, orbit_length: u64, order: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WanderingCertificate {
    pub kind: WanderingKind,
    pub set: CellUnion,
    pub data: CertificateData,
    /// Largest `M` such that powers `±1..=±M` were checked.
    pub verified_to: usize,
}

impl WanderingCertificate {
    /// The certificate for `conjugate(g, h)` obtained by moving the set
    /// with `h`.
    pub fn transported(&self, h: &Rearrangement) -> WanderingCertificate {
        WanderingCertificate { set: h.apply_cell(&self.set), verified_to: 0, ..self.clone() }
    }
}

/// Builds a certificate for `g`: wandering for non-periodic elements,
/// weakly wandering for periodic ones (including the identity).
pub fn wandering_cell(g: &Rearrangement) -> Result<WanderingCertificate> {
    let sys = &**g.system();
    let c = canonicalize(g)?;
    let d = &c.diagram;
    if let Order::Finite(order) = order_of(&c) {
        let (edge, orbit_length) = cycle_lengths(d).into_iter().next().expect("diagrams have leaves");
        return Ok(WanderingCertificate {
            kind: WanderingKind::WeaklyWandering,
            set: CellUnion::interior([edge.clone()]),
            data: CertificateData::Periodic { edge, orbit_length, order },
            verified_to: 0,
        });
    }
    let e = d
        .sigma
        .keys()
        .find(|u| d.range.is_internal(u))
        .ok_or_else(|| Error::Inconsistent("non-periodic canonical form without an expanded leaf".into()))?
        .clone();
    let (n, e_star) = return_below(sys, &c, &e)?;
    let f = d
        .range
        .leaves(sys)
        .into_iter()
        .find(|l| e.is_proper_prefix_of(l) && *l != e_star)
        .ok_or_else(|| Error::Inconsistent(format!("no second range leaf below {}", e.display(sys))))?;
    Ok(WanderingCertificate {
        kind: WanderingKind::Wandering,
        set: CellUnion::interior([f.clone()]),
        data: CertificateData::NonPeriodic { e, e_star, n, f },
        verified_to: 0,
    })
}

/// What a single power does to the set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PowerOutcome {
    Disjoint,
    FixedPointwise,
    Meets,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerCheck {
    pub m: i64,
    pub image: CellUnion,
    pub outcome: PowerOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WanderingReport {
    pub passed: bool,
    pub checks: Vec<PowerCheck>,
}

impl WanderingReport {
    pub fn first_failure(&self) -> Option<&PowerCheck> {
        self.checks.iter().find(|c| c.outcome == PowerOutcome::Meets)
    }
}

/// Checks `g^m` for `m = ±1, …, ±max_power` against `set`. Disjointness
/// honors the kind of `set`; a weakly wandering set may also be fixed
/// pointwise.
pub fn verify_set(g: &Rearrangement, set: &CellUnion, kind: WanderingKind, max_power: usize) -> WanderingReport {
    let sys = &**g.system();
    let mut checks = Vec::with_capacity(2 * max_power);
    let mut passed = true;
    for (sign, step) in [(1i64, g.clone()), (-1, g.invert())] {
        let mut p = Rearrangement::identity(g.system());
        for k in 1..=max_power {
            p = p.compose(&step).expect("same system");
            let image = p.apply_cell(set);
            let outcome = if image.disjoint_from(sys, set) {
                PowerOutcome::Disjoint
            } else if kind == WanderingKind::WeaklyWandering
                && set.addresses().iter().all(|a| p.diagram().fixes_pointwise(a))
            {
                PowerOutcome::FixedPointwise
            } else {
                passed = false;
                PowerOutcome::Meets
            };
            checks.push(PowerCheck { m: sign * k as i64, image, outcome });
        }
    }
    WanderingReport { passed, checks }
}

pub fn verify_wandering(g: &Rearrangement, cert: &WanderingCertificate, max_power: usize) -> WanderingReport {
    verify_set(g, &cert.set, cert.kind, max_power)
}

/// Endpoints of `f` shared with neighbouring cells: the points of `C(f)`
/// outside its interior.
pub fn boundary_vertices(sys: &ReplacementSystem, f: &Address) -> Vec<VertexId> {
    let mut out: Vec<VertexId> =
        End::BOTH.iter().map(|&end| endpoint(sys, f, end)).filter(|v| !boundary_in_interior(sys, v, f)).collect();
    out.dedup();
    out
}

/// A cell `f·w` whose closure lies in the interior of `C(f)`: the least
/// descendant, shallowest first, avoiding the shared endpoints of `f`.
pub fn cell_inside_interior(sys: &ReplacementSystem, f: &Address, max_depth: usize) -> Result<Address> {
    if !f.is_valid(sys) {
        return Err(Error::InvalidAddress(format!("{}", f.display(sys))));
    }
    let bad = boundary_vertices(sys, f);
    let mut level = alloc::vec![f.clone()];
    for _ in 0..=max_depth {
        for a in &level {
            if End::BOTH.iter().all(|&end| !bad.contains(&endpoint(sys, a, end))) {
                return Ok(a.clone());
            }
        }
        level = level.iter().flat_map(|a| sys.rule_syms(a.color(sys)).map(move |s| a.child(s))).collect();
    }
    Err(Error::BudgetExhausted { what: "cell inside interior", budget: max_depth })
}

/// Domain leaves of the reduced diagram that `g` maps identically.
pub fn fixed_cells(g: &Rearrangement) -> CellUnion {
    let d = g.diagram();
    CellUnion::new(d.sigma.iter().filter(|(a, b)| a == b).map(|(a, _)| a.clone()), CellKind::Closed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::system::builtin;
    use crate::test_fixtures::*;

    #[test]
    fn x_certificate() {
        let sys = circle();
        let x = fixture_x(&sys);
        let cert = wandering_cell(&x).unwrap();
        assert_eq!(cert.kind, WanderingKind::Wandering);
        assert_eq!(
            cert.data,
            CertificateData::NonPeriodic {
                e: addr(&sys, "t.2"),
                e_star: addr(&sys, "t.2.2"),
                n: 1,
                f: addr(&sys, "t.2.1"),
            }
        );
        let rep = verify_wandering(&x, &cert, 20);
        assert!(rep.passed);
        assert_eq!(rep.checks[0].image.display(&sys), "{t.2.2.1}");
    }

    #[test]
    fn swap_certificate() {
        let sys = circle();
        let r = fixture_r(&sys);
        let cert = wandering_cell(&r).unwrap();
        assert_eq!(cert.kind, WanderingKind::WeaklyWandering);
        assert_eq!(cert.data, CertificateData::Periodic { edge: addr(&sys, "t.1"), orbit_length: 2, order: 2 });
        let rep = verify_wandering(&r, &cert, 4);
        assert!(rep.passed);
        assert_eq!(rep.checks[0].outcome, PowerOutcome::Disjoint);
        assert_eq!(rep.checks[1].outcome, PowerOutcome::FixedPointwise);
    }

    #[test]
    fn identity_is_weakly_wandering() {
        let sys = circle();
        let id = Rearrangement::identity(&sys);
        let cert = wandering_cell(&id).unwrap();
        assert_eq!(cert.kind, WanderingKind::WeaklyWandering);
        assert!(verify_wandering(&id, &cert, 3).passed);
    }

    #[test]
    fn fake_certificate_fails() {
        let sys = circle();
        let x = fixture_x(&sys);
        let mut cert = wandering_cell(&x).unwrap();
        cert.set = CellUnion::interior([addr(&sys, "t.2.2")]);
        let rep = verify_wandering(&x, &cert, 3);
        assert!(!rep.passed);
        assert_eq!(rep.first_failure().unwrap().m, 1);
    }

    #[test]
    fn inside_interior_examples() {
        let sys = circle();
        assert_eq!(cell_inside_interior(&sys, &addr(&sys, "t.2.1"), 4).unwrap(), addr(&sys, "t.2.1.1.2"));
        assert!(cell_inside_interior(&sys, &addr(&sys, "t.2.1"), 1).is_err());
        let interval = builtin("interval_F").unwrap();
        let t = Address::parse(&interval, "t").unwrap();
        assert_eq!(cell_inside_interior(&interval, &t, 3).unwrap(), t);
        let one = Address::parse(&interval, "t.1").unwrap();
        assert_eq!(cell_inside_interior(&interval, &one, 3).unwrap(), Address::parse(&interval, "t.1.1").unwrap());
    }

    #[test]
    fn fixed_cell_examples() {
        let sys = circle();
        assert_eq!(fixed_cells(&Rearrangement::identity(&sys)).display(&sys), "{t}");
        assert!(fixed_cells(&fixture_r(&sys)).is_empty());
        let g = fixtures::fixes_left_half(&sys).unwrap();
        assert!(fixed_cells(&g).addresses().contains(&addr(&sys, "t.1")));
    }

    #[test]
    fn transported_certificate_verifies_for_conjugate() {
        let sys = circle();
        let x = fixture_x(&sys);
        let r = fixture_r(&sys);
        let cert = wandering_cell(&x).unwrap();
        let moved = cert.transported(&r);
        assert!(verify_wandering(&x.conjugate(&r).unwrap(), &moved, 10).passed);
    }
}
