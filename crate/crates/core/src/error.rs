use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Position and expectation information for a rejected orbit-set string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub expected: Vec<&'static str>,
    pub found: Option<char>,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.found {
            Some(c) => write!(f, "unexpected {c:?} at position {}", self.position)?,
            None => write!(f, "unexpected end of input at position {}", self.position)?,
        }
        write!(f, "; expected one of: {}", self.expected.join(", "))
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(ParseError),

    #[error("invalid orbit set: {0}")]
    Semantic(String),

    #[error("invalid profile: {0}")]
    Profile(String),

    #[error("orbit at |x0| = {x0} lies outside the twist annulus of half-width {lambda}")]
    OutsideAnnulus { x0: f64, lambda: f64 },

    #[error("slope order violated: {0} must not be smaller than {1}")]
    OrderViolation(String, String),

    #[error("enumeration would produce {count} orbit sets, above the cap of {cap}")]
    ResourceGuard { count: u128, cap: usize },

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("regime error: {0}")]
    Regime(String),

    #[error("degree mismatch: orbit set has degree {found}, expected {expected}")]
    DegreeMismatch { expected: u64, found: u64 },

    #[error("{0} is not an ECH generator")]
    NotGenerator(String),

    #[error("point lies on the singular locus: {0}")]
    SingularLocus(String),

    #[error("finite-difference step {0:e} underflows at the sample point")]
    StepUnderflow(f64),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}
