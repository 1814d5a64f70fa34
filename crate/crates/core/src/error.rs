//! Error types shared across the crate.

use thiserror::Error;

/// Errors from parsing a group construction recipe.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: expected {expected}, found {found}")]
pub struct ParseError {
    /// Byte offset into the input where the error was detected.
    pub offset: usize,
    /// Description of what the parser expected at this point.
    pub expected: String,
    /// What was actually found.
    pub found: String,
}

/// Errors from building or transforming a concrete group.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    /// A constructor parameter is outside its domain (e.g. `D(7)`).
    #[error("constructor parameter out of domain: {0}")]
    SpecDomain(String),
    /// The recipe would produce a group larger than the configured cap.
    #[error("group order {order} exceeds cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    /// A multiplication table failed the group-axiom checks.
    #[error("not a valid group table: {0}")]
    BadTable(String),
    /// The given element set is not a subgroup.
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    /// The given subgroup is not normal.
    #[error("subgroup is not normal")]
    NotNormal,
}

/// Errors from subset-algebra operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PfsError {
    /// Operands are bound to different groups.
    #[error("element sets belong to different groups")]
    GroupMismatch,
    /// An operation's precondition does not hold.
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
    /// The group has no rotation/reflection decomposition.
    #[error("group is not dihedral")]
    NotDihedral,
}

/// Errors from the search routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    /// Exhaustive search was requested past the configured cap, or at an
    /// order that needs an explicit opt-in.
    #[error("exhaustive search on order {order} exceeds the configured limit (cap {cap}, opt-in required: {needs_opt_in})")]
    ExhaustiveCapExceeded {
        order: usize,
        cap: usize,
        needs_opt_in: bool,
    },
}

/// Errors from the classifier's table queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifierError {
    /// The verified table only covers orders 1..=32.
    #[error("order {0} is outside the verified table range 1..=32")]
    OrderOutOfRange(usize),
}

/// Errors from the witness constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    /// The requested parameters are outside the family's domain.
    #[error("witness domain error: {0}")]
    Domain(String),
    /// The order-4 witness construction needs a frame of order at least 512.
    #[error("frame of order {0} is too small for the order-4 witness construction")]
    FrameTooSmall(usize),
    /// The frame was not built as a central product with a cyclic factor of
    /// order 4.
    #[error("frame is not a central product with C(4)")]
    NotCentralProductC4,
}
