//! Error types shared across the crate.

use thiserror::Error;

/// Which direction of a Cayley table failed the Latin-square scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Row,
    Col,
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Axis::Row => write!(f, "row"),
            Axis::Col => write!(f, "col"),
        }
    }
}

/// Validation and construction errors for Cayley-table groups.
///
/// Every variant names the first witness found under lexicographic scan
/// order, so diagnostics are deterministic.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("table is not square: row {row} has length {len}, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("entry table[{a}][{b}] = {value} out of range [0, {n})")]
    EntryOutOfRange {
        a: usize,
        b: usize,
        value: usize,
        n: usize,
    },
    #[error("index 0 is not a two-sided identity (first failure at {witness})")]
    NoIdentityAtZero { witness: usize },
    #[error("table is not a Latin square: duplicate in {axis} {index}")]
    NotLatin { axis: Axis, index: usize },
    #[error("not associative: (a,b,c) = ({a},{b},{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("element {a} has no two-sided inverse")]
    NoInverse { a: usize },
    #[error("subset is not a subgroup (not closed at ({a},{b}))")]
    NotASubgroup { a: usize, b: usize },
    #[error("subgroup is not normal (conjugation by {g} moves {s} outside)")]
    NotNormal { g: usize, s: usize },
    #[error("map at {h} is not an automorphism")]
    NotAutomorphism { h: usize },
    #[error("action is not a homomorphism at ({h1},{h2})")]
    NotActionHom { h1: usize, h2: usize },
    #[error("map is not a homomorphism at ({a},{b})")]
    NotHomomorphism { a: usize, b: usize },
    #[error("map does not fix the identity")]
    IdentityNotFixed,
    #[error("map is not bijective (value {value} repeated)")]
    NotBijective { value: usize },
    #[error("image length {len} does not match domain order {n}")]
    LengthMismatch { len: usize, n: usize },
    #[error("permutation of length {len} expected over {m} points")]
    BadPermutation { len: usize, m: usize },
    #[error("group is not abelian (witness ({a},{b}))")]
    NotAbelian { a: usize, b: usize },
    #[error("size cap exceeded: order {required} > cap {cap}")]
    SizeCap { required: usize, cap: usize },
}

/// Validation and construction errors for skew left braces.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum BraceError {
    #[error("additive group: {0}")]
    Add(#[source] GroupError),
    #[error("multiplicative group: {0}")]
    Circ(#[source] GroupError),
    #[error("group orders differ: add has {add}, circ has {circ}")]
    OrderMismatch { add: usize, circ: usize },
    #[error("brace axiom fails at (a,b,c) = ({a},{b},{c}): lhs {lhs} != rhs {rhs}")]
    AxiomViolation {
        a: usize,
        b: usize,
        c: usize,
        lhs: usize,
        rhs: usize,
    },
    #[error("lambda map at {a} is not an automorphism of the additive group")]
    LambdaNotAutomorphism { a: usize },
    #[error("subset is not an ideal")]
    NotAnIdeal,
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("size bound exceeded: order {required} > cap {cap}")]
    SizeBound { required: usize, cap: usize },
    #[error("map is not an additive homomorphism at ({a},{b})")]
    NotAddHom { a: usize, b: usize },
    #[error("map is not a multiplicative homomorphism at ({a},{b})")]
    NotCircHom { a: usize, b: usize },
    #[error("map is not bijective")]
    NotBijective,
}

/// Errors from the character-degree engine.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CharError {
    #[error("size cap exceeded: order {required} > cap {cap}")]
    SizeCap { required: usize, cap: usize },
    #[error("no suitable prime q = 1 mod {modulus} with q > {lower} below search bound")]
    NoSuitablePrime { modulus: u64, lower: u64 },
    #[error("degree solver invariant failed: {0}")]
    SolverInvariant(String),
}

/// Errors from representation validation.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum RepError {
    #[error("beta is not a homomorphism of (A,.) at ({a},{b})")]
    NotAddHom { a: usize, b: usize },
    #[error("rho is not a homomorphism of (A,o) at ({a},{b})")]
    NotCircHom { a: usize, b: usize },
    #[error("compatibility relation fails at (a,b) = ({a},{b})")]
    RelationViolation { a: usize, b: usize },
    #[error("matrix family has wrong shape: {0}")]
    Shape(String),
    #[error("matrix at {index} does not fix the identity as required")]
    IdentityNotIdentity { index: usize },
    #[error("family is not a homomorphism at ({g},{h})")]
    NotGroupHom { g: usize, h: usize },
    #[error("size cap exceeded: {required} > cap {cap}")]
    SizeCap { required: usize, cap: usize },
    #[error("brace error: {0}")]
    Brace(#[from] BraceError),
    #[error("internal: {0}")]
    Internal(String),
}

/// A theorem-level check failed. On valid inputs this signals a defect in
/// the library, never in the inputs.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("property violation in {check}: {witness}")]
pub struct PropertyViolation {
    pub check: String,
    pub witness: String,
}

impl PropertyViolation {
    pub fn new(check: impl Into<String>, witness: impl Into<String>) -> Self {
        PropertyViolation {
            check: check.into(),
            witness: witness.into(),
        }
    }
}

/// Errors from structural check drivers (caps plus property violations).
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CheckError {
    #[error(transparent)]
    Property(#[from] PropertyViolation),
    #[error("group error: {0}")]
    Group(#[from] GroupError),
    #[error("brace error: {0}")]
    Brace(#[from] BraceError),
    #[error("character engine: {0}")]
    Char(#[from] CharError),
    #[error("size cap exceeded: {required} > cap {cap}")]
    SizeCap { required: usize, cap: usize },
}
