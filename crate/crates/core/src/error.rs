use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("singular basis change matrix")]
    SingularMatrix,

    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeTooLarge { degree: usize, cap: usize },

    #[error("cochain space too large: {size} coefficients at degree {degree} (limit {limit})")]
    CochainTooLarge {
        degree: usize,
        size: usize,
        limit: usize,
    },

    #[error("degree-0 cochain is not in C0_com: condition fails at basis element e{0}")]
    NotInC0Com(usize),

    #[error("pair is not a compatible Leibniz pair: {0}")]
    NotCompatible(String),

    #[error("invalid bimodule: {0}")]
    InvalidBimodule(String),

    #[error("not a Maurer-Cartan pair: {0}")]
    NotMaurerCartan(String),

    #[error("invalid deformation: {0}")]
    InvalidDeformation(String),

    #[error("no infinitesimal: all deformation terms vanish")]
    NoInfinitesimal,

    #[error("order {requested} out of range 0..={max}")]
    OrderOutOfRange { requested: usize, max: usize },

    #[error("cocycle condition fails in component {component} of the coboundary")]
    NotACocycle { component: usize },

    #[error("extension invariant violated: {0}")]
    InvalidExtension(String),

    #[error("inputs are built over different base pairs")]
    BaseMismatch,

    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),

    #[error("inadmissible parameter: {0}")]
    InadmissibleParameter(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),
}
