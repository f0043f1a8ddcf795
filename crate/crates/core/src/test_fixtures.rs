use alloc::sync::Arc;

use crate::address::{Address, LassoPoint};
use crate::diagram::Rearrangement;
use crate::system::{builtin, ReplacementSystem};

pub fn circle() -> Arc<ReplacementSystem> {
    Arc::new(builtin("circle_T").unwrap())
}

pub fn fixture_x(sys: &Arc<ReplacementSystem>) -> Rearrangement {
    crate::fixtures::x(sys).unwrap()
}

pub fn fixture_r(sys: &Arc<ReplacementSystem>) -> Rearrangement {
    crate::fixtures::r(sys).unwrap()
}

pub fn addr(sys: &ReplacementSystem, s: &str) -> Address {
    Address::parse(sys, s).unwrap()
}

pub fn lasso(sys: &ReplacementSystem, s: &str) -> LassoPoint {
    LassoPoint::parse(sys, s).unwrap()
}
