use std::fmt;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} and {1} are not coprime")]
    NotCoprime(i64, i64),
    #[error("modulus must be positive, got {0}")]
    NonPositiveModulus(i64),
    #[error("invalid Brieskorn triple ({0}, {1}, {2}): entries must be pairwise coprime and at least 2")]
    InvalidTriple(i64, i64, i64),
    #[error("invalid Seifert data: {0}")]
    InvalidSeifert(String),
    #[error("line bundles live over different orbifolds")]
    BaseMismatch,
    #[error("the Seifert fibration has rational degree 0")]
    DegreeZero,
    #[error("holonomy parameter {0} is outside the allowed range")]
    RhoOutOfRange(String),
    #[error("bundle is not the canonical representative of its class (rho = {0})")]
    NotCanonical(String),
    #[error("the Seifert manifold is not an integral homology sphere")]
    NotHomologySphere,
    #[error("point ({0}, {1}, {2}) is not in the simplex")]
    NotInDelta(i64, i64, i64),
    #[error("zeta argument outside the supported domain: {0}")]
    ZetaDomain(String),
    #[error("zeta evaluated within 10^-{0} of the pole at s = 1")]
    NearPole(usize),
    #[error("quadratic form is not symmetric")]
    NotSymmetric,
    #[error("quadratic form is not negative definite")]
    NotNegativeDefinite,
    #[error("quadratic form is not unimodular (det = {0})")]
    NotUnimodular(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A parse failure with the byte offset it was detected at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub input: String,
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(input: &str, position: usize, message: impl Into<String>) -> Self {
        ParseError {
            input: input.to_string(),
            position,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} at position {}", self.message, self.position)?;
        writeln!(f, "  {}", self.input)?;
        write!(f, "  {}^", " ".repeat(self.position.min(self.input.len())))
    }
}

impl std::error::Error for ParseError {}

pub type Result<T, E = Error> = std::result::Result<T, E>;
