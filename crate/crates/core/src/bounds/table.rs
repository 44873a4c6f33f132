use serde::Serialize;

use super::formulas::{f_values, g1_values};
use super::{BoundKind, BoundNumber, BoundReport, BoundStatus, BoundValue};
use crate::construct::{exact_minimum, SetKind};
use crate::error::{param, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableRow {
    pub k: usize,
    pub s: usize,
    pub f: BoundReport,
    pub g1: BoundReport,
    /// Names of flagged values, each with the conflict that flagged it.
    pub flags: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConsistencyTable {
    pub k_max: usize,
    pub s_max: usize,
    pub rows: Vec<TableRow>,
}

impl ConsistencyTable {
    pub fn row(&self, k: usize, s: usize) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.k == k && r.s == s)
    }

    pub fn flag_count(&self) -> usize {
        self.rows.iter().map(|r| r.flags.len()).sum()
    }
}

fn exact_value(k: usize, s: usize, kind: SetKind, exact_max_k: usize) -> Result<Option<u128>> {
    if k > exact_max_k {
        return Ok(None);
    }
    let out = exact_minimum(k, s, kind)?;
    Ok(out.optimal.then_some(out.size as u128))
}

fn flags_of(rep: &BoundReport) -> Vec<String> {
    rep.values
        .iter()
        .filter(|v| v.status == BoundStatus::Flagged)
        .map(|v| {
            let why = rep
                .consistency_notes
                .iter()
                .find(|n| n.contains(v.name.as_str()) && !n.ends_with(" flagged"))
                .cloned()
                .unwrap_or_default();
            format!("{}: {why}", v.name)
        })
        .collect()
}

/// All F and G₁ bounds for 1 ≤ s ≤ k ≤ k_max, s ≤ s_max. G₁ rows also
/// carry the propagated bound G₁(k,s) ≥ 2·G₁(k−1,s−1) + 2, and exact
/// searches run for k ≤ `exact_max_k`.
pub fn consistency_table(
    k_max: usize,
    s_max: usize,
    exact_max_k: usize,
) -> Result<ConsistencyTable> {
    if k_max == 0 || s_max == 0 || k_max > 40 {
        return param(format!(
            "need 1 <= k_max <= 40 and s_max >= 1, got {k_max}, {s_max}"
        ));
    }
    let mut rows: Vec<TableRow> = Vec::new();
    for k in 1..=k_max {
        for s in 1..=s_max.min(k) {
            let ef = exact_value(k, s, SetKind::Generic, exact_max_k)?;
            let eg = exact_value(k, s, SetKind::Good, exact_max_k)?;
            let mut f = f_values(k, s, ef.map(|x| (x, "search")))?;
            let mut g1 = g1_values(k, s, eg.map(|x| (x, "search")))?;
            if s >= 2 && s < k {
                let prev = rows
                    .iter()
                    .find(|r| r.k == k - 1 && r.s == s - 1)
                    .and_then(|r| r.g1.best_lower());
                if let Some(p) = prev {
                    g1.push(BoundValue::new(
                        "G1.lower.recurrence_propagated",
                        BoundKind::Lower,
                        BoundNumber::Integer(2 * p + 2),
                        "2 <= s < k; twice the best lower bound at (k-1, s-1), plus 2",
                    ));
                }
            }
            f.finalize();
            g1.finalize();
            let mut flags = flags_of(&f);
            flags.extend(flags_of(&g1));
            // F(k,s) <= G1(k,s)
            if let (Some(lo), Some(hi)) = (f.best_lower(), g1.best_upper()) {
                if lo > hi {
                    flags.push(format!("F lower {lo} exceeds G1 upper {hi}"));
                }
            }
            rows.push(TableRow { k, s, f, g1, flags });
        }
    }
    Ok(ConsistencyTable { k_max, s_max, rows })
}
