use thiserror::Error;

/// Errors raised by the calculator. The `Display` strings start with the
/// stable kebab-case tag that the CLI prints.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not-finite-type: {0}")]
    NotFiniteType(String),

    #[error("label-inconsistency: {0}")]
    LabelInconsistency(String),

    #[error("unknown-root: {0}")]
    UnknownRoot(String),

    #[error("unsupported-group: {0}")]
    UnsupportedGroup(String),

    #[error("iota-mismatch: coordinate {coord}: {lhs} != {rhs}")]
    IotaMismatch {
        coord: usize,
        lhs: String,
        rhs: String,
    },

    /// A completed zeta factor is evaluated strictly inside the critical
    /// strip, where a real zero cannot be excluded.
    #[error("indeterminate-zero-region: {0}")]
    IndeterminateZeroRegion(String),

    /// A zeta atom sits at a pole independently of the local parameter.
    #[error("degenerate-atom: {0}")]
    DegenerateAtom(String),

    #[error("zero-expression: {0}")]
    ZeroExpression(String),

    #[error("needs-higher-log-order: {0}")]
    NeedsHigherLogOrder(String),

    #[error("hyperplane-degeneracy: {0}")]
    HyperplaneDegeneracy(String),

    #[error("unmodeled-point: {0}")]
    UnmodeledPoint(String),

    #[error("parse-error: {0}")]
    Parse(String),

    #[error("invalid-input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
