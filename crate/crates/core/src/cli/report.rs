use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Seed used by every randomized path when `--seed` is absent.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RunStatus {
    Ok,
    PropertyFails,
    UsageError,
    BudgetExceeded,
}

impl RunStatus {
    pub fn exit_code(self) -> i32 {
        match self {
            RunStatus::Ok => 0,
            RunStatus::PropertyFails => 1,
            RunStatus::UsageError => 2,
            RunStatus::BudgetExceeded => 3,
        }
    }
}

/// Wall-clock data, kept apart from the deterministic part of a report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timings {
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    /// Arguments after the program name.
    pub command: Vec<String>,
    /// SHA-256 over the arguments and the contents of every input file.
    pub inputs_digest: String,
    pub seed: Option<u64>,
    pub version: String,
    pub status: RunStatus,
    pub results: Value,
    pub timings: Timings,
}

impl RunReport {
    /// The report without its timings, as compact JSON.
    pub fn deterministic_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Value::Object(m) = &mut v {
            m.remove("timings");
        }
        v.to_string()
    }
}

/// Digest of the argument list and the named input files' bytes.
pub(crate) fn inputs_digest(args: &[String], files: &[(String, Vec<u8>)]) -> String {
    let mut h = Sha256::new();
    for a in args {
        h.update(a.as_bytes());
        h.update([0u8]);
    }
    for (path, bytes) in files {
        h.update(b"file\0");
        h.update(path.as_bytes());
        h.update([0u8]);
        h.update((bytes.len() as u64).to_le_bytes());
        h.update(bytes);
    }
    hex::encode(h.finalize())
}

/// Flattens a JSON tree into (dotted path, scalar) pairs.
pub(crate) fn flatten(v: &Value) -> Vec<(String, String)> {
    fn rec(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        let join = |k: &str| {
            if prefix.is_empty() {
                k.to_string()
            } else {
                format!("{prefix}.{k}")
            }
        };
        match v {
            Value::Object(m) => m.iter().for_each(|(k, x)| rec(&join(k), x, out)),
            Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
                let items: Vec<String> = a.iter().map(scalar).collect();
                out.push((prefix.to_string(), items.join(" ")));
            }
            Value::Array(a) => a
                .iter()
                .enumerate()
                .for_each(|(i, x)| rec(&join(&i.to_string()), x, out)),
            other => out.push((prefix.to_string(), scalar(other))),
        }
    }
    let mut out = Vec::new();
    rec("", v, &mut out);
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "null".into(),
        other => other.to_string(),
    }
}

/// Left-aligned columns separated by two spaces.
pub(crate) fn aligned(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&width)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.iter().map(|h| h.to_string()).collect());
    for row in rows {
        out.push_str(&line(row.clone()));
    }
    out
}

pub(crate) fn csv_string(header: &[&str], rows: &[Vec<String>]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
