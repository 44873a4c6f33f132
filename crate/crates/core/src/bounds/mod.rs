//! Closed-form and threshold bounds on F, G₁, ρ and code rates, with a
//! consistency engine that flags bounds contradicting each other or an
//! exact value.
//!
//! Logarithms are base 2 unless a value records `log_base: "e"`.

mod formulas;
mod table;
mod threshold;

pub use formulas::{
    bias_condition, blocking_lower, bounds_f, bounds_f_with, bounds_g1, bounds_g1_with,
    distance_ratio_condition, doubling_length_lower, rate_bounds, stopping_redundancy_bounds, C1,
    C2,
};
pub use table::{consistency_table, ConsistencyTable, TableRow};
pub use threshold::{threshold_holds_exact, threshold_n, Threshold};

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Lower,
    Upper,
    Exact,
    Constant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundStatus {
    Printed,
    CorrectedVariant,
    VerifiedConsistent,
    Flagged,
}

/// A bound value: exact when integral, a double otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum BoundNumber {
    Integer(u128),
    Float(f64),
}

impl BoundNumber {
    pub fn as_f64(self) -> f64 {
        match self {
            BoundNumber::Integer(v) => v as f64,
            BoundNumber::Float(v) => v,
        }
    }

    /// Exact comparison, including integer against double.
    pub fn cmp_exact(self, other: BoundNumber) -> Ordering {
        match (self, other) {
            (BoundNumber::Integer(a), BoundNumber::Integer(b)) => a.cmp(&b),
            (BoundNumber::Integer(a), BoundNumber::Float(f)) => cmp_int_float(a, f),
            (BoundNumber::Float(f), BoundNumber::Integer(a)) => cmp_int_float(a, f).reverse(),
            (BoundNumber::Float(x), BoundNumber::Float(y)) => {
                x.partial_cmp(&y).expect("finite bound values")
            }
        }
    }
}

impl std::fmt::Display for BoundNumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundNumber::Integer(v) => write!(f, "{v}"),
            BoundNumber::Float(v) => write!(f, "{v:.4}"),
        }
    }
}

/// Compares an integer with a double without rounding either.
pub fn cmp_int_float(a: u128, f: f64) -> Ordering {
    assert!(!f.is_nan(), "NaN bound value");
    if f == f64::INFINITY {
        return Ordering::Less;
    }
    if f <= 0.0 {
        return if a == 0 && f == 0.0 {
            Ordering::Equal
        } else {
            Ordering::Greater
        };
    }
    let bits = f.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mant, e) = if exp == 0 {
        (frac, -1074)
    } else {
        (frac | 1 << 52, exp - 1075)
    };
    let (lhs, rhs) = if e >= 0 {
        (BigUint::from(a), BigUint::from(mant) << e as usize)
    } else {
        (BigUint::from(a) << (-e) as usize, BigUint::from(mant))
    };
    lhs.cmp(&rhs)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundValue {
    pub name: String,
    pub kind: BoundKind,
    pub value: BoundNumber,
    /// The quantity is strictly below (upper) or above (lower) the value.
    pub strict: bool,
    pub applicability: String,
    pub status: BoundStatus,
    pub log_base: Option<&'static str>,
}

impl BoundValue {
    pub(crate) fn new(
        name: &str,
        kind: BoundKind,
        value: BoundNumber,
        applicability: &str,
    ) -> Self {
        BoundValue {
            name: name.to_string(),
            kind,
            value,
            strict: false,
            applicability: applicability.to_string(),
            status: BoundStatus::Printed,
            log_base: None,
        }
    }

    pub(crate) fn strict(mut self) -> Self {
        self.strict = true;
        self
    }

    pub(crate) fn base(mut self, base: &'static str) -> Self {
        self.log_base = Some(base);
        self
    }

    pub(crate) fn variant(mut self) -> Self {
        self.status = BoundStatus::CorrectedVariant;
        self
    }

    pub fn is_flagged(&self) -> bool {
        self.status == BoundStatus::Flagged
    }

    /// Smallest integer the bounded quantity can take (lower bounds).
    pub fn integer_lower(&self) -> u128 {
        match self.value {
            BoundNumber::Integer(v) => v + self.strict as u128,
            BoundNumber::Float(f) if f <= 0.0 => 0,
            BoundNumber::Float(f) => {
                let c = f.ceil() as u128;
                if self.strict && c as f64 == f {
                    c + 1
                } else {
                    c
                }
            }
        }
    }

    /// Largest integer the bounded quantity can take (upper bounds).
    pub fn integer_upper(&self) -> u128 {
        match self.value {
            BoundNumber::Integer(v) => v - self.strict as u128,
            BoundNumber::Float(f) => {
                let fl = f.floor() as u128;
                if self.strict && fl as f64 == f {
                    fl.saturating_sub(1)
                } else {
                    fl
                }
            }
        }
    }

    /// Whether `x` is compatible with this bound.
    pub fn admits(&self, x: u128) -> bool {
        let c = BoundNumber::Integer(x).cmp_exact(self.value);
        match self.kind {
            BoundKind::Lower => c == Ordering::Greater || (c == Ordering::Equal && !self.strict),
            BoundKind::Upper => c == Ordering::Less || (c == Ordering::Equal && !self.strict),
            BoundKind::Exact => c == Ordering::Equal,
            BoundKind::Constant => true,
        }
    }
}

/// Whether lower bound `lo` and upper bound `hi` leave room for a value.
fn compatible(lo: &BoundValue, hi: &BoundValue) -> bool {
    match lo.value.cmp_exact(hi.value) {
        Ordering::Less => true,
        Ordering::Equal => !lo.strict && !hi.strict,
        Ordering::Greater => false,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub target: String,
    pub parameters: BTreeMap<String, u64>,
    pub values: Vec<BoundValue>,
    pub consistency_notes: Vec<String>,
}

impl BoundReport {
    pub(crate) fn new(target: &str, params: &[(&str, u64)]) -> Self {
        BoundReport {
            target: target.to_string(),
            parameters: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            values: Vec::new(),
            consistency_notes: Vec::new(),
        }
    }

    pub fn get(&self, name: &str) -> Option<&BoundValue> {
        self.values.iter().find(|v| v.name == name)
    }

    pub fn lowers(&self) -> impl Iterator<Item = &BoundValue> {
        self.values.iter().filter(|v| v.kind == BoundKind::Lower)
    }

    pub fn uppers(&self) -> impl Iterator<Item = &BoundValue> {
        self.values.iter().filter(|v| v.kind == BoundKind::Upper)
    }

    pub fn exact(&self) -> Option<u128> {
        self.values
            .iter()
            .find_map(|v| match (v.kind, v.value, v.status) {
                (BoundKind::Exact, BoundNumber::Integer(x), s) if s != BoundStatus::Flagged => {
                    Some(x)
                }
                _ => None,
            })
    }

    /// Best integer lower bound among non-flagged lower and exact values.
    pub fn best_lower(&self) -> Option<u128> {
        self.values
            .iter()
            .filter(|v| !v.is_flagged())
            .filter_map(|v| match v.kind {
                BoundKind::Lower => Some(v.integer_lower()),
                BoundKind::Exact => Some(v.integer_lower()),
                _ => None,
            })
            .max()
    }

    /// Best integer upper bound among non-flagged upper and exact values.
    pub fn best_upper(&self) -> Option<u128> {
        self.values
            .iter()
            .filter(|v| !v.is_flagged())
            .filter_map(|v| match v.kind {
                BoundKind::Upper => Some(v.integer_upper()),
                BoundKind::Exact => Some(v.integer_upper()),
                _ => None,
            })
            .min()
    }

    pub(crate) fn push(&mut self, v: BoundValue) {
        self.values.push(v);
    }

    pub(crate) fn note(&mut self, s: impl Into<String>) {
        self.consistency_notes.push(s.into());
    }

    /// Applies the status policy: anything contradicting an exact value is
    /// flagged and printed bounds agreeing with it become verified; then
    /// remaining lower/upper conflicts are resolved by flagging the bound in
    /// the most conflicts (all tied bounds on a tie).
    pub(crate) fn finalize(&mut self) {
        let exacts: Vec<(String, u128)> = self
            .values
            .iter()
            .filter(|v| v.kind == BoundKind::Exact)
            .filter_map(|v| match v.value {
                BoundNumber::Integer(x) => Some((v.name.clone(), x)),
                BoundNumber::Float(_) => None,
            })
            .collect();
        if let Some((first, x)) = exacts.first().cloned() {
            for (name, y) in &exacts[1..] {
                if *y != x {
                    self.note(format!(
                        "exact values disagree: {first} = {x}, {name} = {y}"
                    ));
                }
            }
            let mut notes = Vec::new();
            for v in self.values.iter_mut() {
                if !matches!(v.kind, BoundKind::Lower | BoundKind::Upper) {
                    continue;
                }
                if v.admits(x) {
                    if v.status == BoundStatus::Printed {
                        v.status = BoundStatus::VerifiedConsistent;
                    }
                } else {
                    v.status = BoundStatus::Flagged;
                    notes.push(format!(
                        "{} = {} contradicts {first} = {x}",
                        v.name, v.value
                    ));
                }
            }
            self.consistency_notes.extend(notes);
        }
        loop {
            let n = self.values.len();
            let mut count = vec![0usize; n];
            let mut pairs = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    let (a, b) = (&self.values[i], &self.values[j]);
                    if a.kind == BoundKind::Lower
                        && b.kind == BoundKind::Upper
                        && !a.is_flagged()
                        && !b.is_flagged()
                        && !compatible(a, b)
                    {
                        count[i] += 1;
                        count[j] += 1;
                        pairs.push((i, j));
                    }
                }
            }
            let worst = count.iter().copied().max().unwrap_or(0);
            if worst == 0 {
                break;
            }
            for (i, j) in pairs {
                let (a, b) = (&self.values[i], &self.values[j]);
                let note = format!("{} = {} exceeds {} = {}", a.name, a.value, b.name, b.value);
                self.consistency_notes.push(note);
            }
            for (i, &c) in count.iter().enumerate() {
                if c == worst {
                    self.values[i].status = BoundStatus::Flagged;
                    let note = format!("{} flagged", self.values[i].name);
                    self.consistency_notes.push(note);
                }
            }
        }
    }
}
