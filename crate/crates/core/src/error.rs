use alloc::string::String;

/// Everything that can go wrong in the algebra core.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("operands belong to different fields ({left} vs {right})")]
    MixedField { left: String, right: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the supported bound 2^31")]
    PrimeTooLarge(u64),
    #[error("cannot parse scalar {text:?}: {reason}")]
    ScalarParse { text: String, reason: &'static str },
    #[error("cannot parse permutation {text:?}: {reason}")]
    PermutationParse { text: String, reason: &'static str },
    #[error("invalid graph: {0}")]
    Validation(ValidationError),
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error(
        "degree {degree} of vertex {vertex} is not invertible in characteristic {characteristic}"
    )]
    DegreeNotInvertible {
        vertex: usize,
        degree: usize,
        characteristic: u64,
    },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("symmetry search exceeded its budget of {0} nodes")]
    SearchBudgetExceeded(u64),
    #[error("permutation {0} is not a symmetry of the graph")]
    NotASymmetry(String),
    #[error("map is not an automorphism of the algebra")]
    NotAnAutomorphism,
    #[error("orbits of distinct diagonal automorphisms overlap")]
    OrbitsOverlap,
    #[error("permutation {0} does not tag a member of the orbit")]
    UnknownMember(String),
    #[error("oracle budget exceeded ({visited} candidates, cap {cap})")]
    BudgetExceeded { visited: u64, cap: u64 },
    #[error("no applicable oracle: {0}")]
    NoApplicableOracle(&'static str),
    #[error("oracle result does not contain closed-form element (oracle or closed form is wrong)")]
    OracleMissedElement,
}

/// Reasons a graph fails validation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ValidationError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("edge endpoint {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph is disconnected")]
    Disconnected,
}

impl From<ValidationError> for Error {
    fn from(e: ValidationError) -> Self {
        Error::Validation(e)
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
