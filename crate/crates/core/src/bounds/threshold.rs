//! Smallest N for which a random N-subset of nonzero vectors is expected to
//! leave fewer than one flat (good) or coset family (generic) unmet:
//!
//! C · ∏_{j=1}^{N} (1 − a/(2^k − j)) < 1
//!
//! with a = 2^{k−s}, C = (2^s − 1)·G(k,s) for good sets and a = s·2^{k−s},
//! C = #bases(F^s)·G(k,s) for generic sets.

use num_bigint::BigUint;
use serde::Serialize;

use crate::construct::SetKind;
use crate::error::{param, Result};
use crate::gf2::{gaussian_coefficient, unordered_bases};

/// Relative margin below which a floating decision is redone exactly.
const MARGIN: f64 = 1.0 / (1u64 << 30) as f64;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Threshold {
    pub kind: SetKind,
    pub k: usize,
    pub s: usize,
    pub n: u64,
    /// log2 of the left side at N (−∞ once a factor vanishes).
    #[serde(serialize_with = "finite_or_null")]
    pub log2_at_n: f64,
    /// log2 of the left side at N − 1.
    #[serde(serialize_with = "finite_or_null")]
    pub log2_at_prev: f64,
    /// Decisions within the margin that were settled in exact arithmetic.
    pub exact_rechecks: u32,
}

fn finite_or_null<S: serde::Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_none()
    }
}

struct Params {
    universe: u64,
    a: u64,
    c: u128,
}

fn params(kind: SetKind, k: usize, s: usize) -> Result<Params> {
    if s == 0 || s > k {
        return param(format!("need 1 <= s <= k, got k={k}, s={s}"));
    }
    if k > 40 {
        return param(format!("threshold in dimension {k} is out of range"));
    }
    let g = gaussian_coefficient(k as i64, s as i64, 2)?;
    let (a, mult) = match kind {
        SetKind::Good => (1u64 << (k - s), (1u128 << s) - 1),
        SetKind::Generic => ((s as u64) << (k - s), unordered_bases(s)),
    };
    let c = g.checked_mul(mult).ok_or_else(|| {
        crate::error::Error::Overflow("threshold constant exceeds 128 bits".into())
    })?;
    Ok(Params {
        universe: (1u64 << k) - 1,
        a,
        c,
    })
}

/// Exact test of C · ∏_{j=1}^{N} (2^k − j − a) < ∏_{j=1}^{N} (2^k − j).
pub fn threshold_holds_exact(kind: SetKind, k: usize, s: usize, n: u64) -> Result<bool> {
    let p = params(kind, k, s)?;
    if n > p.universe {
        return param(format!(
            "N = {n} exceeds the {} nonzero vectors",
            p.universe
        ));
    }
    let top = 1u64 << k;
    let mut lhs = BigUint::from(p.c);
    let mut rhs = BigUint::from(1u32);
    for j in 1..=n {
        if top - j <= p.a {
            // factor reaches zero; the product stays zero (beyond, its sign is moot)
            return Ok(true);
        }
        lhs *= top - j - p.a;
        rhs *= top - j;
    }
    Ok(lhs < rhs)
}

/// Minimal N with C · ∏ (1 − a/(2^k − j)) < 1, decided in log space and
/// re-decided exactly when within the margin.
pub fn threshold_n(kind: SetKind, k: usize, s: usize) -> Result<Threshold> {
    let p = params(kind, k, s)?;
    let top = (1u64 << k) as f64;
    let log_c = (p.c as f64).log2();
    let margin = MARGIN * log_c.abs().max(1.0);
    let mut rechecks = 0u32;
    let mut decide = |n: u64, value: f64| -> Result<bool> {
        if value.is_finite() && value.abs() <= margin {
            rechecks += 1;
            threshold_holds_exact(kind, k, s, n)
        } else {
            Ok(value < 0.0)
        }
    };
    let mut prev = log_c;
    if decide(0, prev)? {
        return Ok(Threshold {
            kind,
            k,
            s,
            n: 0,
            log2_at_n: prev,
            log2_at_prev: f64::NAN,
            exact_rechecks: rechecks,
        });
    }
    let mut log = log_c;
    for n in 1..=p.universe {
        let rem = top - n as f64;
        if rem <= p.a as f64 {
            log = f64::NEG_INFINITY;
        } else {
            log += (1.0 - p.a as f64 / rem).log2();
        }
        if decide(n, log)? {
            return Ok(Threshold {
                kind,
                k,
                s,
                n,
                log2_at_n: log,
                log2_at_prev: prev,
                exact_rechecks: rechecks,
            });
        }
        prev = log;
    }
    param(format!("threshold undefined at k={k}, s={s}"))
}
