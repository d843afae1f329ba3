//! Data-smell detection for tabular CSV data.
//!
//! The pipeline is [`ingest`] (CSV to typed table), [`profiler`] (per-column
//! and table statistics), [`detectors`] (findings per smell) and [`report`]
//! (text and JSON rendering). [`catalogue`] describes the smells themselves.

pub mod catalogue;
pub mod config;
pub mod detectors;
pub mod exec;
pub mod ingest;
pub mod names;
pub mod profiler;
pub mod report;

use config::ScanConfig;
use exec::Execution;
use ingest::{parse_table_with, RawTable};
use report::ScanReport;

/// Runs profiling and every enabled detector over a parsed table.
pub fn scan_table(raw: RawTable, cfg: &ScanConfig, exec: Execution) -> ScanReport {
    let typed = parse_table_with(raw, exec);
    let profile = profiler::profile_table_with(&typed, cfg, exec);
    let findings = detectors::run_all_with(&profile, cfg, exec);
    ScanReport::new(&profile, findings, cfg)
}
