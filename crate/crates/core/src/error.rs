use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("LoopArc: arc {index} is a loop at vertex {vertex}")]
    LoopArc { index: usize, vertex: usize },
    #[error("ParallelArc: arc {index} duplicates ({tail}, {head})")]
    ParallelArc {
        index: usize,
        tail: usize,
        head: usize,
    },
    #[error("VertexOutOfRange: arc {index} names vertex {vertex}, order is {n}")]
    VertexOutOfRange { index: usize, vertex: usize, n: usize },
    #[error("VertexOutOfRange: vertex set is sized for {found} vertices, expected {expected}")]
    SetSizeMismatch { expected: usize, found: usize },
    #[error("InvalidPartition: {0}")]
    InvalidPartition(String),
    #[error("InfeasibleParams: {0}")]
    InfeasibleParams(String),
    #[error("IsolatedVertex: vertex {0} has no arcs")]
    IsolatedVertex(usize),
    #[error("PreconditionViolated: {0}")]
    PreconditionViolated(String),
    #[error("HasPerfectMatching: no Tutte witness exists")]
    HasPerfectMatching,
    #[error("NotBipartiteAsGiven: edge ({0}, {1}) does not cross the given sides")]
    NotBipartiteAsGiven(usize, usize),
    #[error("NoViolatorExists: every left vertex is matched")]
    NoViolatorExists,
    #[error("WitnessSearchExhausted: no validated fractional witness for {vertices} vertices")]
    WitnessSearchExhausted { vertices: usize },
    #[error("NotTournament")]
    NotTournament,
    #[error("OddSize: {0} arcs")]
    OddSize(usize),
    #[error("CertificateSearchExhausted: order {0} exceeds the exhaustive range")]
    CertificateSearchExhausted(usize),
    #[error("UnverifiedCertificate: {0}")]
    UnverifiedCertificate(String),
    #[error("NotEulerian")]
    NotEulerian,
    #[error("TooSmall: {0} arcs, need at least 3")]
    TooSmall(usize),
    #[error("PolicyMismatch: cycle positions {position} and {next} chain only as a closed walk")]
    PolicyMismatch { position: usize, next: usize },
    #[error("BudgetExceeded: {0}")]
    BudgetExceeded(String),
    #[error("ParseError at line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Search and budget failures, as opposed to bad input.
    pub fn is_exhaustion(&self) -> bool {
        match self {
            Error::WitnessSearchExhausted { .. }
            | Error::CertificateSearchExhausted(_)
            | Error::BudgetExceeded(_) => true,
            Error::AtLine { source, .. } => source.is_exhaustion(),
            _ => false,
        }
    }
}
