use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty moment input")]
    EmptyInput,
    #[error("gamma_0 must be positive")]
    NonpositiveMass,
    #[error("unknown moment family `{0}`")]
    UnknownFamily(String),
    #[error("odd index shift {0} requires a Stieltjes sequence")]
    OddShiftOnHamburger(usize),
    #[error("moment prefix too short: need gamma_{needed}, have up to gamma_{have}")]
    TooShort { needed: usize, have: usize },
    #[error("sequence is not a Stieltjes sequence: {0}")]
    NotStieltjes(String),
    #[error("interpolation points must be distinct")]
    CoincidentPoints,
    #[error("point {0} is not in the open upper half plane")]
    LowerHalfPlanePoint(usize),
    #[error("modified moment {index} has imaginary part above tolerance")]
    NonRealResult { index: usize },
    #[error("zero norm at degree {index}: the measure has finite support")]
    DegenerateSequence { index: usize },
    #[error("negative norm at degree {index}: not a positive definite moment sequence")]
    IndefiniteSequence { index: usize },
    #[error("P_{index}(0) = 0, Krein-section polynomials undefined")]
    ZeroDenominator { index: usize },
    #[error("Krein corner undefined at size {size}: P_{index}(0) = 0")]
    KreinCornerUndefined { size: usize, index: usize },
    #[error("eigenvalue isolation failed: {0}")]
    ConvergenceFailure(String),
    #[error("evaluation point is a pole")]
    PoleHit,
    #[error("Pade approximant [{n}, {m}] does not exist")]
    NotExists { n: usize, m: usize },
    #[error("Pade shape [{n}, {m}] outside the supported staircase")]
    UnsupportedShape { n: usize, m: usize },
    #[error("cross-check failed: {0}")]
    CrossCheckFailure(String),
    #[error("Weyl disk radicand is not positive (conditioning)")]
    NonpositiveRadicand,
    #[error("Herglotz property violated: {0}")]
    NonHerglotzOutput(String),
    #[error("Pick nodes must be distinct")]
    CoincidentNodes,
    #[error("invalid density: {0}")]
    InvalidDensity(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Numerical failures (conditioning, convergence, broken identities) as
    /// opposed to invalid input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::ConvergenceFailure(_)
                | Error::CrossCheckFailure(_)
                | Error::NonpositiveRadicand
                | Error::NonHerglotzOutput(_)
                | Error::PoleHit
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
