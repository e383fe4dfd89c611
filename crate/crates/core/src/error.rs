//! Error types shared across the core crate.

use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("{family}{rank} is not a valid irreducible label{}", hint_suffix(*.hint))]
    InvalidRank {
        family: &'static str,
        rank: u32,
        hint: Option<&'static str>,
    },
    #[error("I2({m}) is not a valid dihedral label (need m >= 3){}", hint_suffix(*.hint))]
    InvalidDihedral { m: u32, hint: Option<&'static str> },
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("m_max undefined below rank 2")]
    MmaxUndefined,
    #[error("operation needs an irreducible group")]
    Reducible,
}

fn hint_suffix(hint: Option<&'static str>) -> String {
    match hint {
        Some(h) => alloc::format!(" ({h})"),
        None => String::new(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElementError {
    #[error("one-line window is not a signed permutation: {0}")]
    NotAPermutation(String),
    #[error("type A elements have no negative entries")]
    NegativeInTypeA,
    #[error("type D elements need an even number of negative entries")]
    OddNegativeCount,
    #[error("root {0} is not a positive root of this type")]
    IllegalRoot(String),
    #[error("enumeration refused: group order {order} exceeds cap {cap}")]
    CapExceeded { order: String, cap: String },
    #[error("{0} is not a classical group of type A, B or D")]
    NotClassical(String),
    #[error("could not parse one-line notation: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootSystemError {
    #[error("root closure produced {found} positive roots, expected {expected}")]
    ClosureMismatch { found: usize, expected: usize },
    #[error("enumeration refused: |W| = {order} exceeds cap {cap}")]
    CapExceeded { order: String, cap: String },
    #[error("{0} has more positive roots than the inversion bitset holds")]
    TooManyRoots(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("real-rootedness not confirmed at tolerance {tol:e}: located {found} of {degree} roots")]
    NotRealRooted { found: usize, degree: usize, tol: f64 },
    #[error("polynomial must be nonzero")]
    Zero,
    #[error("polynomial needs positive coefficients")]
    NonPositive,
    #[error("enumeration infeasible: {0}")]
    Infeasible(String),
    #[error("fast path for {label} disagrees with enumeration")]
    ValidationFailed { label: String },
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error(transparent)]
    Element(#[from] ElementError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MomentError {
    #[error("distribution is empty")]
    Empty,
    #[error("double-coset sum is not integral: {0}")]
    NonIntegral(String),
    #[error("rank must be at least {0}")]
    RankTooSmall(u32),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LimitError {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("at n = {n}: {message}")]
    Semantic { n: i64, message: String },
    #[error("empty range")]
    EmptyRange,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterpError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("rank {n}: {found} values, expected {expected}")]
    LengthMismatch { n: u32, found: usize, expected: String },
    #[error("dataset has no ranks")]
    Empty,
    #[error("need at least {needed} points with distinct n, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error(transparent)]
    Element(#[from] ElementError),
}
