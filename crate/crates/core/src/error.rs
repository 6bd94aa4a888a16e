use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failures raised by the algebra, the groupoids and the lattice layer.
///
/// Every guarded division maps to one of these; nothing in the library
/// panics on degenerate weights.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("N(u) vanishes: the matrix is free-fermionic and has no object label")]
    ZeroN,
    #[error("c-weights vanish: the matrix is not a six-vertex matrix")]
    CZero,
    #[error("derived c2 vanishes (a1*a2 + b1*b2 = 0)")]
    DerivedCZero,
    #[error("matrix is not free-fermionic")]
    NotFreeFermionic,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("no six-vertex w solves the Yang-Baxter equation for this pair")]
    NotComposable,
    #[error("matrix is not in Omega (interior or Omega_B)")]
    NotInOmega,
    #[error("matrix is not in Omega_b or Omega_a")]
    NotBoundary,
    #[error("object label component is zero")]
    ZeroLabel,
    #[error("object mismatch: left label {left} differs from right target label {right}")]
    ObjectMismatch { left: String, right: String },
    #[error("fiber sampler exhausted {0} retries")]
    ExhaustedRetries(usize),
    #[error("matrix is not in Phi (five-vertex interior)")]
    NotInPhi,
    #[error("matrix is not in Phi_b (five-vertex boundary)")]
    NotInPhiB,
    #[error("groupoid elements of different kinds cannot be composed ({0} vs {1})")]
    TagMismatch(&'static str, &'static str),
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("size cap exceeded: {what} = {size} > {cap}")]
    SizeCap { what: &'static str, size: usize, cap: usize },
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("lattice construction failed at {location}: {source}")]
    Lattice {
        location: String,
        #[source]
        source: Box<Error>,
    },
    #[error("malformed input: {0}")]
    Parse(String),
}
