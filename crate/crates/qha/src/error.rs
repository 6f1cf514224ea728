//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum QhaError {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("unrecognized field specification `{0}` (expected Q or Fp:<p>)")]
    BadFieldSpec(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error at line {line}, column {col}: {message}")]
    Parse { line: usize, col: usize, message: String },

    #[error("unknown corpus entry `{0}`")]
    UnknownCorpusName(String),

    #[error(
        "algebra is not finite-dimensional up to degree {cap}: \
         surviving basis in degree {degree}: {survivors:?}"
    )]
    NotFiniteDimensional { cap: i64, degree: i64, survivors: Vec<String> },

    #[error("degree-0 part is not spanned by the vertex idempotents")]
    Degree0NotSemisimple,

    #[error("the two algebras live over different fields")]
    FieldMismatch,

    #[error("truncation is only defined at the maximal vertex (got {got}, maximal is {max})")]
    TruncateNotMaximal { got: String, max: String },

    #[error("algebra is not quasi-hereditary: {0}")]
    NotQuasiHereditary(String),

    #[error("resolution exceeded the length cap {cap}; last syzygy dims: {syzygy}")]
    CapExceeded { cap: usize, syzygy: String },

    #[error("no injective add(T)-approximation exists for {0}")]
    ApproximationFailed(String),

    #[error("complex components are not self-orthogonal: {0}")]
    ComponentsNotSelfOrthogonal(String),

    #[error("idempotent lifting did not converge within {attempts} attempts")]
    IdempotentLiftDiverged { attempts: usize },

    #[error("component at position {position} has a summand matching no catalog member: dims {dims}")]
    UnrecognizedSummand { position: i64, dims: String },
}

pub type Result<T> = std::result::Result<T, QhaError>;
