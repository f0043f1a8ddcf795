use alloc::string::String;
use core::fmt;

/// Errors raised by the core algorithms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    UnknownSystem(String),
    MissingRule(String),
    UndeclaredVertex(String),
    UndeclaredColor(String),
    DuplicateId(String),
    InvalidSystem(String),
    InvalidAddress(String),
    NotALeaf(String),
    ColorMismatch {
        domain: String,
        range: String,
    },
    NotIsomorphism(String),
    NotBijective(String),
    SystemMismatch,
    InvalidSequence(String),
    InvalidShape(String),
    /// An internal consistency check failed; indicates a bug or a
    /// counterexample to an assumed structural fact.
    Inconsistent(String),
    BudgetExhausted {
        what: &'static str,
        budget: usize,
    },
    Precondition(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnknownSystem(name) => write!(f, "unknown system `{name}`"),
            Error::MissingRule(color) => write!(f, "missing rule for color `{color}`"),
            Error::UndeclaredVertex(v) => write!(f, "undeclared vertex `{v}`"),
            Error::UndeclaredColor(c) => write!(f, "undeclared color `{c}`"),
            Error::DuplicateId(id) => write!(f, "duplicate id `{id}`"),
            Error::InvalidSystem(msg) => write!(f, "invalid system: {msg}"),
            Error::InvalidAddress(msg) => write!(f, "invalid address: {msg}"),
            Error::NotALeaf(a) => write!(f, "address {a} is not a leaf"),
            Error::ColorMismatch { domain, range } => {
                write!(f, "color mismatch: {domain} -> {range}")
            }
            Error::NotIsomorphism(msg) => write!(f, "not a graph isomorphism: {msg}"),
            Error::NotBijective(msg) => write!(f, "sigma is not a bijection: {msg}"),
            Error::SystemMismatch => f.write_str("elements belong to different systems"),
            Error::InvalidSequence(msg) => write!(f, "invalid expandable sequence: {msg}"),
            Error::InvalidShape(msg) => write!(f, "invalid subtree shape: {msg}"),
            Error::Inconsistent(msg) => write!(f, "inconsistency: {msg}"),
            Error::BudgetExhausted { what, budget } => {
                write!(f, "{what}: search budget {budget} exhausted")
            }
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
