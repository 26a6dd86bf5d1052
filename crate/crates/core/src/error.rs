use thiserror::Error;

/// Errors raised by the toolkit.
///
/// Variants that name an internal consistency failure (`NonSingletonSandwich`,
/// `UniquenessFailure`, `Tul3Disagreement`, ...) indicate either a bug or an
/// input that violates the documented precondition of the operation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table entry {value} at ({row},{col}) is out of range for order {order}")]
    OutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("table has {got} entries, expected {expected}")]
    BadTableSize { got: usize, expected: usize },
    #[error("semigroup of order 0")]
    EmptySemigroup,
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NonAssociative(usize, usize, usize),
    #[error("element {0} is not idempotent")]
    NotIdempotent(usize),
    #[error("element {0} is out of range")]
    NoSuchElement(usize),
    #[error("semigroup is not regular")]
    NotRegular,
    #[error("semigroup is not inverse")]
    NotInverse,
    #[error("semigroup is not locally inverse")]
    NotLocallyInverse,
    #[error("semigroup is not E-solid")]
    NotESolid,
    #[error("semigroup is not a group")]
    NotAGroup,
    #[error("semigroup is not a semilattice")]
    NotASemilattice,
    #[error("sandwich set S({e},{f}) has {size} elements")]
    NonSingletonSandwich { e: usize, f: usize, size: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("uniqueness failure: {0}")]
    UniquenessFailure(String),
    #[error("partition is not a congruence: {a} ~ {b} but not compatible with {c}")]
    NotACongruence { a: usize, b: usize, c: usize },
    #[error("quotient is not an inverse semigroup")]
    QuotientNotInverse,
    #[error("congruence is not over completely simple semigroups")]
    RhoNotOverCS,
    #[error("order {order} exceeds the bound {bound}")]
    OrderBound { order: usize, bound: usize },
    #[error("unknown kind `{0}`")]
    UnknownKind(String),
    #[error("strong semilattice structure maps are incompatible: {0}")]
    IncompatibleHoms(String),
    #[error("invalid action: {0}")]
    ActionInvalid(String),
    #[error("search budget exceeded")]
    SearchBudgetExceeded,
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("no match: {0}")]
    NoMatch(String),
    #[error("bad composition: {0}")]
    BadComposition(String),
    #[error("arrows are not consecutive")]
    NotConsecutive,
    #[error("arrows are not adjacent for the sandwich operation")]
    NotAdjacent,
    #[error("stability clauses disagree on arrow {0}")]
    Tul3Disagreement(usize),
    #[error("word is not a path")]
    NotAPath,
    #[error("bracketed word is not in W, W^right or W^left")]
    Unclassified,
    #[error("lift case not covered: {0}")]
    CaseNotCovered(String),
    #[error("lifted word violates the invariant: {0}")]
    InvarianceViolated(String),
    #[error("no bracketing witness within budget")]
    NoWitnessInBudget,
    #[error("format error: {0}")]
    Format(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
