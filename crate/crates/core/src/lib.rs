//! Exact simulation of operator circuits (circuits whose gates are arbitrary
//! linear maps between qubit spaces) by contracting their tensor network along
//! a vertex ordering of small cutwidth.
//!
//! The crate is organised bottom-up:
//!
//! * [`circuit`] holds the circuit data model, the `Q'` construction and the
//!   brute-force state-vector oracles.
//! * [`graph`] extracts the circuit graph and computes bubblings (vertex
//!   orderings) and their widths, exactly or heuristically.
//! * [`tensor`] turns circuits into tensor circuits and contracts them along a
//!   bubbling, keeping only the edges that cross the current cut.
//! * [`qft`] builds the approximate Fourier transform circuit whose width grows
//!   only with the square of the precision.
//! * [`verify`] and [`bench`] bundle the oracle-equivalence suites and the
//!   cost-scaling measurements used by the command line tool.

pub mod bench;
pub mod circuit;
pub mod error;
pub mod graph;
pub mod qft;
pub mod random;
pub mod tensor;
pub mod verify;

pub use circuit::{GateApp, LinearGate, OperatorCircuit, Violation, WireId};
pub use error::{Error, Result};
pub use graph::{Bubbling, CircuitGraph, PathDecomposition, VertexKind};
pub use tensor::{Tensor, TensorCircuit};

/// Complex amplitudes are double-precision pairs throughout.
pub type C64 = num_complex::Complex64;

/// Default absolute tolerance for comparisons against the oracles.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Seed used by every randomized suite unless overridden.
pub const DEFAULT_SEED: u64 = 0xB0BB1E;
