//! Run records: one line per solver batch on one instance.
//!
//! Format (whitespace separated, append-only):
//! `instance_id solver params_hash runs successes tau_per_run_us mode`
//!
//! Externally produced records (e.g. ingested hardware timing data) use the
//! same format; `solver`/`params_hash` are free-form group keys there.

use std::fs::OpenOptions;
use std::io::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub instance_id: String,
    pub solver: String,
    pub params_hash: String,
    pub runs: u64,
    pub successes: u64,
    pub tau_per_run_us: f64,
    pub mode: String,
}

impl RunRecord {
    pub fn to_line(&self) -> String {
        format!(
            "{} {} {} {} {} {} {}",
            self.instance_id,
            self.solver,
            self.params_hash,
            self.runs,
            self.successes,
            self.tau_per_run_us,
            self.mode
        )
    }

    pub fn parse_line(line: &str) -> Result<RunRecord> {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 7 {
            return Err(Error::parse("run record", format!("expected 7 fields: {line}")));
        }
        let bad = |what: &str| Error::parse("run record", format!("bad {what}: {line}"));
        let record = RunRecord {
            instance_id: fields[0].to_string(),
            solver: fields[1].to_string(),
            params_hash: fields[2].to_string(),
            runs: fields[3].parse().map_err(|_| bad("runs"))?,
            successes: fields[4].parse().map_err(|_| bad("successes"))?,
            tau_per_run_us: fields[5].parse().map_err(|_| bad("tau"))?,
            mode: fields[6].to_string(),
        };
        if record.successes > record.runs {
            return Err(bad("successes > runs"));
        }
        Ok(record)
    }

    /// Key identifying one (instance, solver, parameter set) work item.
    pub fn triple_key(&self) -> (String, String, String) {
        (self.instance_id.clone(), self.solver.clone(), self.params_hash.clone())
    }
}

/// Reads all records from a file; '#' lines and blank lines are ignored.
pub fn read_records(path: &Path) -> Result<Vec<RunRecord>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::io(path.display().to_string(), e))?;
    parse_records(&text)
}

pub fn parse_records(text: &str) -> Result<Vec<RunRecord>> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(RunRecord::parse_line(line)?);
    }
    Ok(out)
}

/// Appends records to a file, creating it if needed.
pub fn append_records(path: &Path, records: &[RunRecord]) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir.display().to_string(), e))?;
    }
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| Error::io(path.display().to_string(), e))?;
    let mut buf = String::new();
    for r in records {
        buf.push_str(&r.to_line());
        buf.push('\n');
    }
    file.write_all(buf.as_bytes()).map_err(|e| Error::io(path.display().to_string(), e))
}

/// Sums duplicate (instance, solver, params) lines. Within one triple the
/// per-run time must agree; mixing tau conventions is refused.
pub fn aggregate(records: Vec<RunRecord>) -> Result<Vec<RunRecord>> {
    let mut merged: Vec<RunRecord> = Vec::new();
    for r in records {
        match merged.iter_mut().find(|m| {
            m.instance_id == r.instance_id && m.solver == r.solver && m.params_hash == r.params_hash
        }) {
            None => merged.push(r),
            Some(m) => {
                if m.mode != r.mode {
                    return Err(Error::parse(
                        "run records",
                        format!("conflicting modes for {}/{}/{}", m.instance_id, m.solver, m.params_hash),
                    ));
                }
                if m.tau_per_run_us != r.tau_per_run_us && m.solver != "hfs" {
                    return Err(Error::parse(
                        "run records",
                        format!(
                            "mixed tau conventions for {}/{}/{}: {} vs {}",
                            m.instance_id, m.solver, m.params_hash, m.tau_per_run_us, r.tau_per_run_us
                        ),
                    ));
                }
                // HFS per-run times are empirical means; merge them weighted.
                if m.solver == "hfs" {
                    let total = (m.runs + r.runs) as f64;
                    m.tau_per_run_us =
                        (m.tau_per_run_us * m.runs as f64 + r.tau_per_run_us * r.runs as f64) / total;
                }
                m.runs += r.runs;
                m.successes += r.successes;
            }
        }
    }
    Ok(merged)
}
