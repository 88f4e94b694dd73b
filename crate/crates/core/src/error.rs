//! Error types, grouped by the stage that can fail: reading text input,
//! building an alphabet, and running tree operations.

use thiserror::Error;

/// Failure while reading the tree text format.
///
/// `position` is a byte offset into the input, suitable for a caret
/// diagnostic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {position}: expected {expected}")]
    Syntax {
        position: usize,
        expected: &'static str,
    },

    #[error("trailing input at byte {position}")]
    TrailingInput { position: usize },

    #[error(
        "reserved label \"N\" at byte {position}: the null label may not appear in input trees"
    )]
    ReservedLabel { position: usize },

    #[error("lock mark on a leaf at byte {position}: a leaf has no child order to fix")]
    LockOnLeaf { position: usize },

    #[error(
        "vertex at byte {position} has {found} children, more than the supported maximum of {max}"
    )]
    TooManyChildren {
        position: usize,
        found: usize,
        max: usize,
    },

    #[error("invalid label character {found:?} at byte {position}")]
    BadLabel { position: usize, found: char },

    #[error("empty input")]
    Empty,
}

/// Failure while assembling a [`crate::LabelAlphabet`] from an order list
/// and an optional label-metric table.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphabetError {
    #[error("alphabet is empty")]
    Empty,

    #[error("duplicate label {0:?} in alphabet")]
    Duplicate(String),

    #[error("invalid label {0:?} in alphabet")]
    BadLabel(String),

    #[error("alphabet has {0} labels, more than the supported maximum of {1}")]
    TooLarge(usize, usize),

    #[error("label metric row/column mismatch: {0}")]
    MalformedTable(String),

    #[error("label metric mentions {0:?}, which is not in the alphabet")]
    UnknownLabel(String),

    #[error("label metric is missing the entry d({0},{1})")]
    MissingEntry(String, String),

    #[error("label metric entry d({0},{1}) = {2} is not a valid distance value")]
    BadEntry(String, String, String),

    #[error("label metric is asymmetric: d({0},{1}) != d({1},{0})")]
    Asymmetric(String, String),

    #[error("label metric has d({0},{0}) != 0")]
    NonzeroDiagonal(String),

    #[error("label metric has d({0},{1}) = 0 for distinct labels")]
    ZeroOffDiagonal(String, String),

    #[error("label metric violates the triangle inequality on ({0},{1},{2})")]
    TriangleViolation(String, String, String),
}

/// Failure in a tree operation: completion, distance computation,
/// enumeration, or benchmarking.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("completion level {level} is below the tree depth {depth}")]
    LevelBelowDepth { level: usize, depth: usize },

    #[error("arity {arity} is below the observed branching factor {observed}")]
    ArityBelowBranching { arity: usize, observed: usize },

    #[error("arity must be at least 2, got {0}")]
    ArityTooSmall(usize),

    #[error("arity {arity} exceeds the supported maximum of {max} (child matching enumerates arity! correspondences)")]
    ArityAboveCap { arity: usize, max: usize },

    #[error("completion to level {level} with arity {arity} would allocate {vertices} vertices, above the guard of {guard}")]
    CompletionTooLarge {
        level: usize,
        arity: usize,
        vertices: u128,
        guard: usize,
    },

    #[error("label {0:?} is not in the alphabet")]
    UnknownLabel(String),

    #[error("shape mismatch: arity {k1} depth {m1} vs arity {k2} depth {m2}; complete both trees to a common shape first")]
    ShapeMismatch {
        k1: usize,
        m1: usize,
        k2: usize,
        m2: usize,
    },

    #[error("label sequences have different lengths: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("no vertex at path {path:?}")]
    NoSuchVertex { path: Vec<usize> },

    #[error("child index {index} out of range: vertex has {children} children")]
    ChildIndexOutOfRange { index: usize, children: usize },

    #[error("position (level {level}, index {index}) is outside the tree")]
    NoSuchPosition { level: usize, index: usize },

    #[error("{count} labels do not fill a perfect {arity}-ary tree of any depth")]
    NotPerfect { count: usize, arity: usize },

    #[error("tree depth {depth} exceeds the enumeration cap {cap}; embedding counts grow as 2^(internal vertices)")]
    DepthAboveEnumerationCap { depth: usize, cap: usize },

    #[error("enumeration supports arity 2 and 3, got {0}")]
    ArityAboveEnumerationCap(usize),

    #[error("tree has {vertices} vertices, above the exact-search guard of {guard}")]
    SearchTooLarge { vertices: usize, guard: usize },

    #[error("scaling run needs at least {min} trials, got {0}", min = crate::bench::MIN_TRIALS)]
    TooFewTrials(usize),

    #[error("scaling depths must be ascending and nonempty")]
    BadDepthRange,

    #[error("scaling supports bm, bmstar, and lr, not {0}")]
    UnsupportedScalingMetric(String),

    #[error("random tree generation needs a nonempty alphabet")]
    EmptyAlphabet,
}
