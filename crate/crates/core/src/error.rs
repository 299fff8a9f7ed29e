use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a complex on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex {0} listed twice in one face")]
    DuplicateVertex(usize),
    #[error("complexes are limited to {max} vertices, got {n}")]
    TooManyVertices { n: usize, max: usize },
    #[error("the void complex (no faces at all) is not supported")]
    VoidComplex,
    #[error("{0:?} is not a face of the complex")]
    NotAFace(Vec<usize>),
    #[error("complex is not pure")]
    NotPure,
    #[error("not a homology ball: {0}")]
    NotABall(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid field specification: {0}")]
    InvalidField(String),
    #[error("value {0} is not invertible in the chosen field")]
    NotInvertible(String),
    #[error("resource budget exceeded: {0}")]
    ResourceBudget(String),
    #[error("no linear system of parameters found after {attempts} attempts (seeds {seeds:?})")]
    LsopNotFound { attempts: usize, seeds: Vec<u64> },
    #[error("generic initial ideals from seeds {seed_a} and {seed_b} disagree")]
    SeedsDisagree { seed_a: u64, seed_b: u64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("fixture not available: {0}")]
    FixtureUnavailable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
