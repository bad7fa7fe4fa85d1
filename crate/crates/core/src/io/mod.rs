//! Run configuration and trace file formats.
//!
//! Both are UTF-8 JSON carrying an explicit `format_version`. A trace is one
//! JSON object per line: a header, then one record per committed round
//! starting with the initial configuration as round 0.

mod config;
mod trace;

pub use config::{
    emit_config, load_config, parse_config, save_config, ConfigError, ParticleSpec, RunConfig,
};
pub use trace::{
    read_trace, verify_trace, Trace, TraceError, TraceHeader, TraceRecord, TraceWriter,
    DEVIATION_KILL_FREED_EXPANSION,
};

pub const FORMAT_VERSION: u32 = 1;
