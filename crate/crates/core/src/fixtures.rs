//! Standard elements on the dyadic systems (`interval_F`, `circle_T`,
//! `cantor_V`), whose base graph is the single edge `t`.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::address::Address;
use crate::diagram::Rearrangement;
use crate::expansion::Expansion;
use crate::system::ReplacementSystem;
use crate::Result;

fn parse_all(sys: &ReplacementSystem, names: &[&str]) -> Result<Vec<Address>> {
    names.iter().map(|s| Address::parse(sys, s)).collect()
}

/// Builds an element from leaf lists and the image of each domain leaf.
pub fn from_leaves(
    sys: &Arc<ReplacementSystem>,
    domain: &[&str],
    range: &[&str],
    pairs: &[(&str, &str)],
) -> Result<Rearrangement> {
    let d = Expansion::from_leaves(sys, &parse_all(sys, domain)?)?;
    let r = Expansion::from_leaves(sys, &parse_all(sys, range)?)?;
    let mut sigma = BTreeMap::new();
    for (a, b) in pairs {
        sigma.insert(Address::parse(sys, a)?, Address::parse(sys, b)?);
    }
    Rearrangement::new(sys, d, r, sigma)
}

/// `t.1.1 -> t.1, t.1.2 -> t.2.1, t.2 -> t.2.2`: non-periodic.
pub fn x(sys: &Arc<ReplacementSystem>) -> Result<Rearrangement> {
    from_leaves(
        sys,
        &["t.1.1", "t.1.2", "t.2"],
        &["t.1", "t.2.1", "t.2.2"],
        &[("t.1.1", "t.1"), ("t.1.2", "t.2.1"), ("t.2", "t.2.2")],
    )
}

/// Swap of the two halves; order two on the circle and the Cantor set.
pub fn r(sys: &Arc<ReplacementSystem>) -> Result<Rearrangement> {
    from_leaves(sys, &["t.1", "t.2"], &["t.1", "t.2"], &[("t.1", "t.2"), ("t.2", "t.1")])
}

/// Fixes `C(t.1)` pointwise and pushes the rest of the space around.
pub fn fixes_left_half(sys: &Arc<ReplacementSystem>) -> Result<Rearrangement> {
    from_leaves(
        sys,
        &["t.1", "t.2.1", "t.2.2.1", "t.2.2.2"],
        &["t.1", "t.2.1.1", "t.2.1.2", "t.2.2"],
        &[("t.1", "t.1"), ("t.2.1", "t.2.1.1"), ("t.2.2.1", "t.2.1.2"), ("t.2.2.2", "t.2.2")],
    )
}
