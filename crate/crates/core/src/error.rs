use thiserror::Error;

use crate::circuit::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("gate matrix has {got} entries, expected {expected} for {arity_out} outputs and {arity_in} inputs")]
    GateShape {
        arity_in: usize,
        arity_out: usize,
        expected: usize,
        got: usize,
    },
    #[error("a gate must touch at least one wire")]
    EmptyGate,
    #[error("gate matrix entry {index} is not finite")]
    NonFiniteEntry { index: usize },
    #[error("invalid circuit: {0}")]
    InvalidCircuit(#[from] Violation),
    #[error("circuit has no answer wire")]
    MissingAnswerWire,
    #[error("{what}: {got} exceeds the configured cap of {cap}")]
    CapExceeded {
        what: &'static str,
        got: usize,
        cap: usize,
    },
    #[error("contraction frontier would hold {width} edges, above the cap of {cap}")]
    WidthCapExceeded { width: usize, cap: usize },
    #[error("bubbling is not a permutation of the graph's {vertices} vertices: {reason}")]
    InvalidBubbling { vertices: usize, reason: String },
    #[error("invalid path decomposition: {0}")]
    InvalidPathDecomposition(String),
    #[error("invalid tensor circuit: {0}")]
    InvalidTensorCircuit(String),
    #[error("bit string has length {got}, expected {expected}")]
    BitLength { expected: usize, got: usize },
    #[error("circuit lacks layer/lane annotations on gate {gate}")]
    MissingLayers { gate: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
