use thiserror::Error;

/// Errors raised by the exact-arithmetic kernel and the geometric builders.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },

    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("metric not symmetric at ({row}, {col})")]
    MetricNotSymmetric { row: usize, col: usize },

    #[error("bivector not antisymmetric at ({row}, {col})")]
    NotAntisymmetric { row: usize, col: usize },

    #[error("singular metric")]
    SingularMetric,

    /// The element is not invertible in the fiber algebra. `stage` names the
    /// chain stage when the inversion happened inside a product chain.
    #[error("element not invertible{}", .stage.map(|s| format!(" at stage {s}")).unwrap_or_default())]
    NotInvertible { stage: Option<usize> },

    #[error("discriminant polynomial vanishes identically: Euler field nowhere invertible")]
    DiscriminantVanishes,

    #[error("unresolvable bracket rule: {0}")]
    UnresolvableBracket(String),

    #[error("chain depth {depth} exceeds the {available} supplied identities")]
    ChainTooShort { depth: usize, available: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
