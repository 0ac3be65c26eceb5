//! Crate-wide error type.

use std::fmt;
use std::io;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug)]
pub enum Error {
    /// Parameters outside the domain of an operation (e.g. `r + z = 0`).
    InvalidParams(String),
    /// A vertex index is out of range for the declared order.
    InvalidVertex { vertex: usize, n: usize },
    /// A self-loop edge or arc was supplied.
    SelfLoop(usize),
    /// A pair carries more than one of: edge, forward arc, backward arc.
    ConflictingPair(usize, usize),
    /// `x_i_j` and `x_j_i` disagree in an assignment.
    AsymmetricEdge(usize, usize),
    /// A distance-based quantity was requested but `u` cannot reach `v`.
    UnreachablePair(usize, usize),
    /// Graph order does not match the Moore bound for the given parameters.
    OrderMismatch { order: usize, expected: u64 },
    /// Model dimension exceeds the configured cap.
    ModelTooLarge { n: u64, cap: u64 },
    /// The search space contains no feasible graph.
    Infeasible,
    /// No totally regular graph exists: `n * r` is odd.
    DegreeParity { n: usize, r: usize },
    /// Random stub matching failed within its retry budget.
    StubFailure,
    /// A solution file names a variable the model does not declare.
    UnknownVariable(String),
    /// A solution value is not 0/1 within tolerance.
    NonBinaryValue { name: String, value: f64 },
    /// A solution value contradicts a fixed variable.
    FixingViolated { name: String, fixed: u8 },
    /// A required variable is missing from a solution file.
    MissingVariable(String),
    /// Malformed text input (graph files, LP files, solution files).
    Parse(String),
    Io(io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParams(msg) => write!(f, "invalid parameters: {msg}"),
            Error::InvalidVertex { vertex, n } => {
                write!(f, "vertex {vertex} out of range for order {n}")
            }
            Error::SelfLoop(v) => write!(f, "self-loop at vertex {v}"),
            Error::ConflictingPair(u, v) => {
                write!(f, "pair ({u}, {v}) carries more than one of edge/arc/reverse arc")
            }
            Error::AsymmetricEdge(u, v) => {
                write!(f, "edge indicators for ({u}, {v}) are not symmetric")
            }
            Error::UnreachablePair(u, v) => write!(f, "vertex {u} cannot reach vertex {v}"),
            Error::OrderMismatch { order, expected } => {
                write!(f, "graph order {order} does not match Moore bound {expected}")
            }
            Error::ModelTooLarge { n, cap } => {
                write!(f, "model dimension {n} exceeds cap {cap}")
            }
            Error::Infeasible => write!(f, "no feasible graph exists"),
            Error::DegreeParity { n, r } => {
                write!(f, "no totally regular graph: n*r = {n}*{r} is odd")
            }
            Error::StubFailure => write!(f, "random stub matching exhausted its retry budget"),
            Error::UnknownVariable(name) => write!(f, "unknown variable `{name}`"),
            Error::NonBinaryValue { name, value } => {
                write!(f, "variable `{name}` has non-binary value {value}")
            }
            Error::FixingViolated { name, fixed } => {
                write!(f, "variable `{name}` is fixed to {fixed} but the solution disagrees")
            }
            Error::MissingVariable(name) => {
                write!(f, "solution is missing required variable `{name}`")
            }
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<io::Error> for Error {
    fn from(e: io::Error) -> Self {
        Error::Io(e)
    }
}
