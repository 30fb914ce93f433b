//! Timed verifier runs and their JSON and text renderings.

use std::time::Instant;

use cdm_core::lemmas::{verify, Instance, LabConfig, LemmaId, LemmaReport};
use cdm_core::Result;
use serde::Serialize;

/// [`verify`] with the wall-clock time filled in.
pub fn run_timed(id: LemmaId, inst: &Instance, cfg: &LabConfig) -> Result<LemmaReport> {
    let start = Instant::now();
    let mut report = verify(id, inst, cfg)?;
    report.elapsed = start.elapsed();
    Ok(report)
}

/// The JSON shape of a report. Timing is left out so that identical runs
/// produce identical bytes.
#[derive(Debug, Serialize)]
pub struct ReportJson {
    pub lemma_id: String,
    pub instance: String,
    pub status: String,
    pub counterexample: Option<String>,
    pub checked_count: u64,
}

impl From<&LemmaReport> for ReportJson {
    fn from(r: &LemmaReport) -> Self {
        ReportJson {
            lemma_id: r.lemma_id.name().to_string(),
            instance: r.instance.to_string(),
            status: r.status.to_string(),
            counterexample: r.counterexample.clone(),
            checked_count: r.checked_count,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ParamsEcho {
    pub p: u32,
    pub q: u32,
    pub max_order: usize,
    pub frattini_guard: usize,
    pub seed: u64,
}

/// The envelope every JSON-mode command prints.
#[derive(Debug, Serialize)]
pub struct Envelope<T: Serialize> {
    pub command: String,
    pub params: ParamsEcho,
    pub results: Vec<T>,
}

pub fn table_header() -> String {
    format!("{:<20} {:<14} {:<6} {:>12} {:>10}", "lemma", "instance", "status", "checked", "ms")
}

pub fn table_row(r: &LemmaReport) -> String {
    let mut line = format!(
        "{:<20} {:<14} {:<6} {:>12} {:>10.1}",
        r.lemma_id.name(),
        r.instance.to_string(),
        r.status,
        r.checked_count,
        r.elapsed.as_secs_f64() * 1000.0
    );
    if let Some(c) = &r.counterexample {
        line.push_str("  counterexample: ");
        line.push_str(c);
    }
    line
}
