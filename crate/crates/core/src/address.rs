//! Finite addresses (edges of expansions) and eventually periodic infinite
//! addresses (points of the limit space).

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::system::{ColorId, ReplacementSystem};
use crate::{Error, Result};

/// A global edge symbol of a [`ReplacementSystem`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sym(pub u16);

/// A chain-valid symbol sequence: a base edge followed by rule edges, each
/// taken from the rule of the previous edge's color.
///
/// Ordering is lexicographic on symbols, which follow declaration order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Address(Vec<Sym>);

impl Address {
    /// Wraps `syms` without checking chain validity.
    pub fn from_syms(syms: Vec<Sym>) -> Self {
        Address(syms)
    }

    pub fn root(s: Sym) -> Self {
        Address(alloc::vec![s])
    }

    /// Parses `t.2.1`-style text.
    pub fn parse(sys: &ReplacementSystem, text: &str) -> Result<Self> {
        let mut syms = Vec::new();
        let mut color: Option<ColorId> = None;
        for part in text.trim().split('.') {
            let sym = match color {
                None => sys.base_sym(part),
                Some(c) => sys.rule_sym(c, part),
            }
            .ok_or_else(|| Error::InvalidAddress(String::from(text)))?;
            color = Some(sys.sym_color(sym));
            syms.push(sym);
        }
        Ok(Address(syms))
    }

    pub fn syms(&self) -> &[Sym] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Levels below the base edge; base edges have depth 0.
    pub fn depth(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn last(&self) -> Sym {
        *self.0.last().expect("addresses are nonempty")
    }

    pub fn parent(&self) -> Option<Address> {
        (self.0.len() > 1).then(|| Address(self.0[..self.0.len() - 1].to_vec()))
    }

    pub fn child(&self, s: Sym) -> Address {
        let mut v = self.0.clone();
        v.push(s);
        Address(v)
    }

    pub fn concat(&self, tail: &[Sym]) -> Address {
        let mut v = self.0.clone();
        v.extend_from_slice(tail);
        Address(v)
    }

    pub fn truncated(&self, len: usize) -> Address {
        Address(self.0[..len].to_vec())
    }

    /// `self` is a (not necessarily proper) prefix of `other`.
    pub fn is_prefix_of(&self, other: &Address) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_proper_prefix_of(&self, other: &Address) -> bool {
        self.0.len() < other.0.len() && other.0.starts_with(&self.0)
    }

    /// Symbols of `other` after `self`; `None` if `self` is not a prefix.
    pub fn suffix_in<'a>(&self, other: &'a Address) -> Option<&'a [Sym]> {
        other.0.strip_prefix(self.0.as_slice())
    }

    /// Color of the edge this address names.
    pub fn color(&self, sys: &ReplacementSystem) -> ColorId {
        sys.sym_color(self.last())
    }

    pub fn is_valid(&self, sys: &ReplacementSystem) -> bool {
        chain_valid(sys, None, &self.0)
    }

    pub fn display<'a>(&'a self, sys: &'a ReplacementSystem) -> AddressDisplay<'a> {
        AddressDisplay { sys, syms: &self.0 }
    }
}

/// Interior disjointness of two cells: neither address is a prefix of the
/// other.
pub fn interiors_disjoint(a: &Address, b: &Address) -> bool {
    !a.is_prefix_of(b) && !b.is_prefix_of(a)
}

/// True if `syms` is a valid continuation after an edge of color `after`
/// (`None`: `syms` must start with a base edge).
pub(crate) fn chain_valid(sys: &ReplacementSystem, after: Option<ColorId>, syms: &[Sym]) -> bool {
    let mut ctx = after;
    for &s in syms {
        if (s.0 as usize) >= symbol_count(sys) || sys.sym_owner(s) != ctx {
            return false;
        }
        ctx = Some(sys.sym_color(s));
    }
    true
}

fn symbol_count(sys: &ReplacementSystem) -> usize {
    sys.base().edges.len() + sys.rules().map(|(_, r)| r.graph.edges.len()).sum::<usize>()
}

pub struct AddressDisplay<'a> {
    sys: &'a ReplacementSystem,
    syms: &'a [Sym],
}

impl fmt::Display for AddressDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.syms.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            f.write_str(self.sys.sym_name(*s))?;
        }
        Ok(())
    }
}

/// An eventually periodic infinite address `prefix · cycle · cycle · …`.
///
/// Values built through [`LassoPoint::new`] are canonical: the prefix is as
/// short as possible and the cycle is primitive, so equal infinite addresses
/// have equal representations.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LassoPoint {
    prefix: Vec<Sym>,
    cycle: Vec<Sym>,
}

impl LassoPoint {
    pub fn new(sys: &ReplacementSystem, prefix: Vec<Sym>, cycle: Vec<Sym>) -> Result<Self> {
        if prefix.is_empty() || cycle.is_empty() {
            return Err(Error::InvalidAddress("lasso needs a prefix and a cycle".into()));
        }
        let p = LassoPoint { prefix, cycle };
        if !p.is_valid(sys) {
            return Err(Error::InvalidAddress("lasso is not chain-valid".into()));
        }
        Ok(p.canonical())
    }

    /// Parses `prefix:(cycle)` text such as `t:(1.2)` or `t.1:(2)`.
    pub fn parse(sys: &ReplacementSystem, text: &str) -> Result<Self> {
        let bad = || Error::InvalidAddress(String::from(text));
        let (head, tail) = text.trim().split_once(':').ok_or_else(bad)?;
        let tail = tail.strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
        let prefix = Address::parse(sys, head)?;
        let mut color = prefix.color(sys);
        let mut cycle = Vec::new();
        for part in tail.split('.') {
            let s = sys.rule_sym(color, part).ok_or_else(bad)?;
            color = sys.sym_color(s);
            cycle.push(s);
        }
        Self::new(sys, prefix.0, cycle)
    }

    pub fn prefix(&self) -> &[Sym] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[Sym] {
        &self.cycle
    }

    /// Symbol at position `i` of the unrolled address.
    pub fn sym_at(&self, i: usize) -> Sym {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.cycle[(i - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// First `n` symbols of the unrolled address.
    pub fn truncate(&self, n: usize) -> Address {
        Address((0..n).map(|i| self.sym_at(i)).collect())
    }

    /// The infinite address with its first `n` symbols removed and replaced
    /// by `head`.
    pub fn replace_head(&self, sys: &ReplacementSystem, n: usize, head: &Address) -> LassoPoint {
        let mut prefix = head.0.clone();
        let cycle = if n <= self.prefix.len() {
            prefix.extend_from_slice(&self.prefix[n..]);
            self.cycle.clone()
        } else {
            let shift = (n - self.prefix.len()) % self.cycle.len();
            let mut c = self.cycle[shift..].to_vec();
            c.extend_from_slice(&self.cycle[..shift]);
            c
        };
        let p = LassoPoint { prefix, cycle };
        debug_assert!(p.is_valid(sys));
        p.canonical()
    }

    pub fn is_valid(&self, sys: &ReplacementSystem) -> bool {
        if !chain_valid(sys, None, &self.prefix) || self.cycle.is_empty() {
            return false;
        }
        let after = sys.sym_color(*self.prefix.last().unwrap());
        let mut twice = self.cycle.clone();
        twice.extend_from_slice(&self.cycle);
        chain_valid(sys, Some(after), &twice) && sys.sym_color(*self.cycle.last().unwrap()) == after
    }

    fn canonical(mut self) -> Self {
        let n = self.cycle.len();
        if let Some(p) = (1..=n).find(|&p| n.is_multiple_of(p) && (p..n).all(|i| self.cycle[i] == self.cycle[i - p])) {
            self.cycle.truncate(p);
        }
        while self.prefix.len() > 1 && self.prefix.last() == self.cycle.last() {
            self.prefix.pop();
            self.cycle.rotate_right(1);
        }
        self
    }

    pub fn display<'a>(&'a self, sys: &'a ReplacementSystem) -> LassoDisplay<'a> {
        LassoDisplay { sys, point: self }
    }
}

pub struct LassoDisplay<'a> {
    sys: &'a ReplacementSystem,
    point: &'a LassoPoint,
}

impl fmt::Display for LassoDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = AddressDisplay { sys: self.sys, syms: &self.point.prefix };
        let cycle = AddressDisplay { sys: self.sys, syms: &self.point.cycle };
        write!(f, "{head}:({cycle})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::builtin;
    use alloc::string::ToString;

    #[test]
    fn parse_and_display() {
        let sys = builtin("airplane").unwrap();
        let a = Address::parse(&sys, "T.b").unwrap();
        assert_eq!(a.display(&sys).to_string(), "T.b");
        assert!(a.is_valid(&sys));
        assert!(Address::parse(&sys, "T.e").is_err());
        assert!(Address::parse(&sys, "L.e.f.b").is_ok());
    }

    #[test]
    fn interior_disjointness() {
        let sys = builtin("circle_T").unwrap();
        let a = |s| Address::parse(&sys, s).unwrap();
        assert!(interiors_disjoint(&a("t.1"), &a("t.2")));
        assert!(!interiors_disjoint(&a("t.1"), &a("t.1.2")));
        assert!(interiors_disjoint(&a("t.2.1"), &a("t.2.2.1")));
    }

    #[test]
    fn lasso_canonical_form() {
        let sys = builtin("circle_T").unwrap();
        let p = LassoPoint::parse(&sys, "t.1.2.1.2:(1.2.1.2)").unwrap();
        assert_eq!(p.display(&sys).to_string(), "t:(1.2)");
        let q = LassoPoint::parse(&sys, "t.2.1:(2.1)").unwrap();
        assert_eq!(q.display(&sys).to_string(), "t:(2.1)");
        assert_ne!(p, q);
        assert_eq!(p.truncate(4).display(&sys).to_string(), "t.1.2.1");
    }

    #[test]
    fn replace_head_shifts_cycle() {
        let sys = builtin("circle_T").unwrap();
        let p = LassoPoint::parse(&sys, "t:(1.2)").unwrap();
        let head = Address::parse(&sys, "t.2.1").unwrap();
        // t.1.2 | 1.2.1.2... -> t.2.1 | 1.2... = t.2.1.1:(2.1)
        let q = p.replace_head(&sys, 3, &head);
        assert_eq!(q.display(&sys).to_string(), "t.2.1:(1.2)");
    }
}
