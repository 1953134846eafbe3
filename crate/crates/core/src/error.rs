use thiserror::Error;

use crate::graph::Violation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph: {}", join(.0))]
    Invalid(Vec<Violation>),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown id `{0}`")]
    UnknownId(String),
    #[error("digraph has no root")]
    NotRooted,
    #[error("graph is not connected")]
    Disconnected,
    #[error("requires finite weights")]
    InfiniteWeight,
    #[error("expects an unweighted graph")]
    Weighted,
    #[error("malformed homomorphism: {0}")]
    MalformedHom(String),
    #[error("weighted sets are not equivalent on block {0:?}")]
    NotEquivalent(Vec<String>),
    #[error("not a covering: {0}")]
    NotACovering(String),
    #[error("multiplicities violate the equation for edge `{0}`")]
    EquationViolated(String),
    #[error("bad multiplicity vector: {0}")]
    BadMultiplicities(String),
    #[error("map is not a surjection onto {0} classes")]
    NotSurjective(usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("the matrices do not satisfy M·B = B·N for this map")]
    NotIntertwining,
    #[error("generated id `{0}` collides with another id")]
    IdCollision(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

fn join(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
