//! Result documents: the JSON the CLI prints.
//!
//! The schema is stable: every field is always present (null when not
//! applicable), keys appear in struct order, and all numbers are exact
//! integer ticks. Identical queries therefore produce byte-identical
//! documents.

use serde::Serialize;

#[derive(Serialize)]
pub struct ResultDocument {
    pub query: QueryEcho,
    /// `route`, `arrivals`, `distances`, `unreachable`, `non-fifo`,
    /// `truncated` or `error`.
    pub outcome: String,
    /// Arrival time at the target (time-dependent algorithms).
    pub arrival: Option<u64>,
    /// Path length (static algorithms).
    pub length: Option<i64>,
    pub route: Option<RouteDoc>,
    /// Per-node arrival table when no target was given (time-dependent).
    pub arrivals: Option<Vec<ArrivalEntry>>,
    /// Per-node distance table when no target was given (static).
    pub distances: Option<Vec<DistanceEntry>>,
    pub error: Option<String>,
    /// Whole-graph FIFO summary (time-dependent algorithms).
    pub fifo: Option<FifoDoc>,
    pub stats: StatsDoc,
}

#[derive(Serialize)]
pub struct QueryEcho {
    pub graph: String,
    pub algo: String,
    pub source: String,
    pub target: Option<String>,
    pub t0: u64,
    pub allow_wait: bool,
    pub horizon: Option<u64>,
    pub max_states: Option<usize>,
    pub tick: u64,
}

#[derive(Serialize)]
pub struct RouteDoc {
    pub nodes: Vec<String>,
    pub edge_events: Vec<EdgeEventDoc>,
}

#[derive(Serialize)]
pub struct EdgeEventDoc {
    pub edge: usize,
    pub from: String,
    pub to: String,
    pub depart: u64,
    pub arrive: u64,
}

#[derive(Serialize)]
pub struct ArrivalEntry {
    pub node: String,
    pub arrival: Option<u64>,
}

#[derive(Serialize)]
pub struct DistanceEntry {
    pub node: String,
    pub distance: Option<i64>,
}

#[derive(Serialize)]
pub struct FifoDoc {
    pub is_fifo: bool,
    pub witness: Option<FifoWitnessDoc>,
}

#[derive(Serialize)]
pub struct FifoWitnessDoc {
    pub edge: usize,
    pub from: String,
    pub to: String,
    pub t1: u64,
    pub t2: u64,
    pub a1: u64,
    pub a2: u64,
}

#[derive(Serialize, Default)]
pub struct StatsDoc {
    pub settled: Option<u64>,
    pub relaxations: Option<u64>,
    pub states: Option<usize>,
    pub transitions: Option<usize>,
    pub pruned: Option<u64>,
    pub truncated: bool,
}

impl ResultDocument {
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }
}

/// Document for `check-fifo`.
#[derive(Serialize)]
pub struct FifoCheckDocument {
    pub graph: String,
    pub checked_edges: usize,
    pub violations: Vec<FifoWitnessDoc>,
}

impl FifoCheckDocument {
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }
}
