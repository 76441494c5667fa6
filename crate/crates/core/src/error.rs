use thiserror::Error;

use crate::structure::Kind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IcatError {
    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("kind mismatch: {0:?} vs {1:?}")]
    KindMismatch(Kind, Kind),

    #[error("coproducts are not computable for kind {0:?}")]
    UnsupportedCoproduct(Kind),

    #[error("unsupported construction: {0}")]
    Unsupported(String),

    #[error("alpha is not split by beta (alpha . beta != 1)")]
    NotSplit,

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("2-chain condition violated: h . t != 0 at element {0}")]
    ChainConditionViolated(usize),

    #[error("morphism does not factor through the coequalizer: {0}")]
    FactorizationFailure(String),

    #[error("comparison morphism is not an isomorphism: {0}")]
    ComparisonNotIso(String),

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("conjugation leaves the kernel at b={b}, x={x}")]
    ConjugationEscapesKernel { b: usize, x: usize },

    #[error("kernel of h is not trivial: element {0} maps to 0")]
    KernelNotTrivial(usize),

    #[error("law violated: {0}")]
    LawViolation(String),

    #[error("right cancellation fails in column {0}")]
    RightCancellationViolated(usize),

    #[error("triangle law violated: {0}")]
    TriangleLawViolated(String),

    #[error("bound {requested} exceeds the hard cap {cap} for {what}")]
    BoundTooLarge {
        what: String,
        requested: usize,
        cap: usize,
    },

    #[error("unknown structure name {0:?}")]
    UnknownName(String),

    #[error("format error: {0}")]
    Format(String),
}

impl IcatError {
    /// Whether the error reports a construction the ambient category cannot supply,
    /// as opposed to malformed input.
    pub fn is_unsupported(&self) -> bool {
        matches!(
            self,
            IcatError::UnsupportedCoproduct(_)
                | IcatError::Unsupported(_)
                | IcatError::KindMismatch(..)
                | IcatError::KernelNotTrivial(_)
        )
    }
}

impl From<serde_json::Error> for IcatError {
    fn from(e: serde_json::Error) -> Self {
        IcatError::Format(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, IcatError>;
