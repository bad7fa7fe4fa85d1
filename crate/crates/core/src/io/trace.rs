use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::FORMAT_VERSION;
use crate::engine::{EnginePolicy, Event, RoundReport};
use crate::model::{ModelError, ParticleConfig, SystemConfig};

/// Expansions into cells vacated by a kill in the same round succeed, just
/// like expansions into cells vacated by a contraction.
pub const DEVIATION_KILL_FREED_EXPANSION: &str = "kill-freed-expansion";

#[derive(Debug, Error)]
pub enum TraceError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("trace line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("trace is empty")]
    MissingHeader,
    #[error("unsupported trace format_version {0}")]
    Version(u32),
    #[error("record {index} has round {found}, expected {expected}")]
    RoundOrder {
        index: usize,
        expected: u64,
        found: u64,
    },
    #[error("round {round}: {source}")]
    Exclusivity { round: u64, source: ModelError },
    #[error("round {round}: connected flag says {recorded}, configuration says {actual}")]
    Connectivity {
        round: u64,
        recorded: bool,
        actual: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceHeader {
    pub format_version: u32,
    pub algorithm: String,
    pub seed: u64,
    pub policy: EnginePolicy,
    pub deviations: Vec<String>,
}

impl TraceHeader {
    pub fn new(algorithm: &str, seed: u64, policy: EnginePolicy) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            algorithm: algorithm.to_string(),
            seed,
            policy,
            deviations: vec![DEVIATION_KILL_FREED_EXPANSION.to_string()],
        }
    }
}

/// Full configuration after one committed round. Record 0 holds the initial
/// configuration and no events.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub round: u64,
    pub connected: bool,
    pub particles: Vec<ParticleConfig>,
    pub events: Vec<Event>,
}

impl TraceRecord {
    pub fn initial(sys: &SystemConfig) -> Self {
        Self {
            round: 0,
            connected: sys.is_connected(),
            particles: sys.particles().to_vec(),
            events: Vec::new(),
        }
    }

    pub fn after(sys: &SystemConfig, report: &RoundReport) -> Self {
        Self {
            round: report.round,
            connected: report.connected_after,
            particles: sys.particles().to_vec(),
            events: report.events.clone(),
        }
    }

    /// Rebuilds the configuration, re-checking cell exclusivity.
    pub fn system(&self) -> Result<SystemConfig, TraceError> {
        SystemConfig::new(self.particles.clone()).map_err(|source| TraceError::Exclusivity {
            round: self.round,
            source,
        })
    }
}

#[derive(Serialize)]
struct TaggedHeader<'a> {
    kind: &'static str,
    #[serde(flatten)]
    header: &'a TraceHeader,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum Line {
    Header(TraceHeader),
}

/// Writes a trace line by line, flushing after every record.
pub struct TraceWriter<W: Write> {
    out: W,
}

impl<W: Write> TraceWriter<W> {
    pub fn new(mut out: W, header: &TraceHeader) -> std::io::Result<Self> {
        let line = serde_json::to_string(&TaggedHeader {
            kind: "header",
            header,
        })?;
        writeln!(out, "{line}")?;
        Ok(Self { out })
    }

    pub fn record(&mut self, record: &TraceRecord) -> std::io::Result<()> {
        serde_json::to_writer(&mut self.out, record)?;
        self.out.write_all(b"\n")?;
        self.out.flush()
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub header: TraceHeader,
    pub records: Vec<TraceRecord>,
}

pub fn read_trace(input: impl BufRead) -> Result<Trace, TraceError> {
    let mut lines = input
        .lines()
        .enumerate()
        .filter(|(_, l)| l.as_ref().map_or(true, |l| !l.trim().is_empty()));
    let parse_err = |i: usize, e: serde_json::Error| TraceError::Parse {
        line: i + 1,
        message: e.to_string(),
    };
    let (i, first) = lines.next().ok_or(TraceError::MissingHeader)?;
    let Line::Header(header) = serde_json::from_str(&first?).map_err(|e| parse_err(i, e))?;
    if header.format_version != FORMAT_VERSION {
        return Err(TraceError::Version(header.format_version));
    }
    let mut records = Vec::new();
    for (i, line) in lines {
        records.push(serde_json::from_str(&line?).map_err(|e| parse_err(i, e))?);
    }
    Ok(Trace { header, records })
}

/// Re-validates a trace without the engine: rounds are consecutive from 0,
/// every record satisfies cell exclusivity, and connected flags match.
pub fn verify_trace(trace: &Trace) -> Result<(), TraceError> {
    for (index, record) in trace.records.iter().enumerate() {
        if record.round != index as u64 {
            return Err(TraceError::RoundOrder {
                index,
                expected: index as u64,
                found: record.round,
            });
        }
        let actual = record.system()?.is_connected();
        if actual != record.connected {
            return Err(TraceError::Connectivity {
                round: record.round,
                recorded: record.connected,
                actual,
            });
        }
    }
    Ok(())
}
