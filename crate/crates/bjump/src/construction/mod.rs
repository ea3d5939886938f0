//! Stage-by-stage construction simulators with replayable traces.
//!
//! Every simulator is deterministic in its typed configuration; the trace
//! embeds that configuration, so replaying re-runs the construction and
//! compares stage records bit for bit. Marker discipline (strictly
//! increasing redefinition values, at most one defined marker per family)
//! is validated both during the run and on replay.

pub mod diag;
pub mod shoenfield;
pub mod theta;
pub mod ttsep;

use crate::nat::Nat;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const TRACE_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TraceEvent {
    /// A marker received a (new) value.
    MarkerDefined { family: u64, index: u64, value: u64 },
    /// A marker was undefined; `extracted` when its position left the set.
    MarkerUndefined { family: u64, index: u64, extracted: bool },
    /// The approximated set changed at a position.
    SetChanged { position: u64, member: bool },
    /// Restraint value update.
    Restraint { requirement: u64, value: u64 },
    /// Bookkeeping counters (the `l_s`/`m_s` style pairs).
    Bookkeeping { family: u64, l: u64, m: u64 },
    /// A controlled partial function was declared convergent with a value.
    DeclaredValue { family: u64, slot: u64, value: u64 },
    /// A controlled functional was declared convergent on oracles reading 1
    /// at the position.
    DeclaredScan { family: u64, position: u64 },
    /// A new diagonal halt `φ_y(y)↓` was observed.
    DiagonalConvergence { y: u64 },
    /// A new halt `φ_e(x)↓` was observed (the extraction trigger).
    Convergence { e: u64, x: u64 },
    /// A requirement received attention.
    Attention { requirement: u64, case: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageRecord {
    pub stage: u64,
    pub events: Vec<TraceEvent>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TraceHeader {
    pub version: u32,
    pub construction: String,
    pub config: serde_json::Value,
}

#[derive(Clone, Debug)]
pub struct ConstructionTrace {
    pub header: TraceHeader,
    pub stages: Vec<StageRecord>,
}

impl ConstructionTrace {
    pub fn new(construction: &str, config: serde_json::Value) -> ConstructionTrace {
        ConstructionTrace {
            header: TraceHeader {
                version: TRACE_SCHEMA_VERSION,
                construction: construction.to_string(),
                config,
            },
            stages: Vec::new(),
        }
    }

    pub fn record(&mut self, stage: u64, events: Vec<TraceEvent>) {
        if !events.is_empty() {
            self.stages.push(StageRecord { stage, events });
        }
    }

    /// One JSON object per line: the header, then each stage record.
    pub fn to_jsonl(&self) -> String {
        let mut out = serde_json::to_string(&self.header).unwrap();
        for s in &self.stages {
            out.push('\n');
            out.push_str(&serde_json::to_string(s).unwrap());
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<ConstructionTrace, ReplayError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header: TraceHeader = serde_json::from_str(
            lines.next().ok_or(ReplayError::Empty)?,
        )
        .map_err(|e| ReplayError::Malformed(e.to_string()))?;
        if header.version != TRACE_SCHEMA_VERSION {
            return Err(ReplayError::Version(header.version));
        }
        let mut stages = Vec::new();
        for line in lines {
            stages.push(
                serde_json::from_str(line).map_err(|e| ReplayError::Malformed(e.to_string()))?,
            );
        }
        Ok(ConstructionTrace { header, stages })
    }

    /// Validate the marker discipline over the whole trace.
    pub fn check_marker_invariants(&self) -> Result<(), ReplayError> {
        // family -> (defined index, value); and per (family, index) the last
        // value it ever had, to check strict growth on redefinition.
        let mut defined: BTreeMap<u64, (u64, u64)> = BTreeMap::new();
        let mut last_value: BTreeMap<(u64, u64), u64> = BTreeMap::new();
        for s in &self.stages {
            for e in &s.events {
                match e {
                    TraceEvent::MarkerDefined { family, index, value } => {
                        if defined.contains_key(family) {
                            return Err(ReplayError::MarkerInvariant(format!(
                                "stage {}: family {family} already has a defined marker",
                                s.stage
                            )));
                        }
                        if let Some(&prev) = last_value.get(&(*family, *index)) {
                            if *value <= prev {
                                return Err(ReplayError::MarkerInvariant(format!(
                                    "stage {}: marker ({family},{index}) redefined {value} ≤ {prev}",
                                    s.stage
                                )));
                            }
                        }
                        defined.insert(*family, (*index, *value));
                        last_value.insert((*family, *index), *value);
                    }
                    TraceEvent::MarkerUndefined { family, .. } => {
                        defined.remove(family);
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ReplayError {
    #[error("empty trace")]
    Empty,
    #[error("malformed trace: {0}")]
    Malformed(String),
    #[error("unsupported trace version {0}")]
    Version(u32),
    #[error("unknown construction `{0}`")]
    UnknownConstruction(String),
    #[error("marker invariant violated: {0}")]
    MarkerInvariant(String),
    #[error("trace diverges from re-run at stage record {index}: {detail}")]
    Diverged { index: usize, detail: String },
    #[error("configuration error: {0}")]
    Config(String),
}

/// Re-run the construction named in the header from its embedded
/// configuration and compare stage records bit for bit.
pub fn replay(trace: &ConstructionTrace) -> Result<(), ReplayError> {
    trace.check_marker_invariants()?;
    let fresh = match trace.header.construction.as_str() {
        "shoenfield" => {
            let config: shoenfield::ShoenfieldConfig =
                serde_json::from_value(trace.header.config.clone())
                    .map_err(|e| ReplayError::Config(e.to_string()))?;
            shoenfield::shoenfield_inversion(&config)
                .map_err(|e| ReplayError::Config(e.to_string()))?
                .trace
        }
        "ttsep" => {
            let config: ttsep::TtSepConfig = serde_json::from_value(trace.header.config.clone())
                .map_err(|e| ReplayError::Config(e.to_string()))?;
            ttsep::tt_separation(&config).trace
        }
        other => return Err(ReplayError::UnknownConstruction(other.to_string())),
    };
    compare_traces(trace, &fresh)
}

pub fn compare_traces(a: &ConstructionTrace, b: &ConstructionTrace) -> Result<(), ReplayError> {
    if a.stages.len() != b.stages.len() {
        return Err(ReplayError::Diverged {
            index: a.stages.len().min(b.stages.len()),
            detail: format!("{} vs {} stage records", a.stages.len(), b.stages.len()),
        });
    }
    for (i, (x, y)) in a.stages.iter().zip(b.stages.iter()).enumerate() {
        if x != y {
            return Err(ReplayError::Diverged {
                index: i,
                detail: format!("stage {} record differs", x.stage),
            });
        }
    }
    Ok(())
}

/// Desk-size view of set positions used across the constructions: marker
/// values and enumerated elements are stage numbers, so `u64` is exact.
pub fn nat_u64(n: &Nat) -> u64 {
    n.to_u64().expect("construction-scale value exceeded u64")
}
