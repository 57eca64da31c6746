//! Routing engine for directed graphs with time-dependent edge travel times.
//!
//! The crate is organised around one progression:
//!
//! 1. [`search`] — classic shortest paths on static costs (Dijkstra,
//!    Bellman-Ford, A*, bidirectional Dijkstra).
//! 2. [`td`] — the direct time-dependent extension of Dijkstra. The naive
//!    variant is kept on purpose: it is unsound for non-FIFO cost functions
//!    and reproduces the classic counterexample arithmetic exactly.
//! 3. [`state_graph`] — exact resolution for arbitrary cost functions by
//!    expanding `(node, time)` states and running a static search over them.
//! 4. [`func::TravelTimeFunction::check_fifo`] — the FIFO condition under
//!    which the plain time-dependent Dijkstra of [`td`] becomes exact.
//!
//! [`oracle`] and [`corpus`] hold the brute-force ground truth and the
//! built-in instance set every engine result is judged against.
//!
//! All temporal arithmetic is exact integer tick arithmetic; see [`time`].

pub mod corpus;
pub mod error;
pub mod func;
pub mod graph;
pub mod oracle;
pub mod search;
pub mod state_graph;
pub mod static_graph;
pub mod td;
pub mod time;

pub use error::EngineError;
pub use func::{FifoReport, FifoWitness, TravelTimeFunction};
pub use graph::{Edge, EdgeId, Graph, NodeId, ValidationIssue, ValidationReport};
pub use time::{DurationTicks, TimePoint};
