use thiserror::Error;

/// Every failure the library can report.
///
/// Variants mirror the operation contracts; the CLI maps `Parse` and
/// `Usage` to exit code 2 and everything else to exit code 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // fields
    #[error("NonPrime: {0} is not prime")]
    NonPrime(u64),
    #[error("ReducibleModulus: {0}")]
    ReducibleModulus(String),
    #[error("CtxMismatch: {0}")]
    CtxMismatch(String),
    #[error("NotInSubfield")]
    NotInSubfield,
    #[error("UnsupportedEmbedding: {0}")]
    UnsupportedEmbedding(String),
    #[error("PrimeDividesDenominatorOrDet: {0}")]
    PrimeDividesDenominatorOrDet(u64),
    #[error("DivisionByZero")]
    DivisionByZero,

    // matrices and groups
    #[error("SingularMatrix")]
    SingularMatrix,
    #[error("SingularGenerator: generator {0} is not invertible")]
    SingularGenerator(usize),
    #[error("ShapeMismatch: {0}")]
    ShapeMismatch(String),
    #[error("CapExceeded: {0}")]
    CapExceeded(String),
    #[error("UnsupportedClass: {0}")]
    UnsupportedClass(String),
    #[error("InvalidArgument: {0}")]
    InvalidArgument(String),

    // spaces
    #[error("Disconnected")]
    Disconnected,
    #[error("OpenFaceWord: face {0} is not a closed edge path")]
    OpenFaceWord(usize),
    #[error("MissingBasepoint: {0}")]
    MissingBasepoint(String),
    #[error("UnknownEdge: {0}")]
    UnknownEdge(String),
    #[error("UnknownVertex: {0}")]
    UnknownVertex(String),
    #[error("DuplicateId: {0}")]
    DuplicateId(String),
    #[error("NotClosed: path does not end where it starts")]
    NotClosed,
    #[error("NotAtBasepoint: path starts at {0}")]
    NotAtBasepoint(String),
    #[error("Invalid complex: {}", .0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidComplex(Vec<Error>),

    // local systems
    #[error("RelatorViolation: relator {0} does not evaluate to the identity")]
    RelatorViolation(usize),
    #[error("FaceProductNotIdentity: face {0}")]
    FaceProductNotIdentity(usize),
    #[error("SpaceMismatch: {0}")]
    SpaceMismatch(String),
    #[error("MissingGenerator: {0}")]
    MissingGenerator(String),
    #[error("NotACocycle")]
    NotACocycle,
    #[error("NotUnipotentForm: generator {0} is not of the form [[1,*],[0,1]]")]
    NotUnipotentForm(String),

    // coverings
    #[error("NotGalois: {0}")]
    NotGalois(String),
    #[error("NotTrivializedBy: the covering does not trivialize the local system")]
    NotTrivializedBy,
    #[error("BadPermutation: {0}")]
    BadPermutation(String),

    // descent
    #[error("NotATrivialization: edge {0}")]
    NotATrivialization(String),
    #[error("DescentFailure: entry of vertex {0} does not lie in the subfield")]
    DescentFailure(String),
    #[error("BadDepth: {0}")]
    BadDepth(u64),
    #[error("LevelNotInTower: {0}")]
    LevelNotInTower(u64),
    #[error("BadModulus: {0}")]
    BadModulus(u64),

    // documents and command line
    #[error("Parse error: {0}")]
    Parse(String),
    #[error("Usage: {0}")]
    Usage(String),
    #[error("I/O error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Usage(_) | Error::Io(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
