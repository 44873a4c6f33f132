use rayon::prelude::*;
use serde::Serialize;

use super::{columns_independent, peel_succeeds};
use crate::code::LinearCode;
use crate::error::{param, Error, Result};
use crate::gf2::{derive_seed, BinMatrix, SplitMix64};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StrategyResult {
    pub name: String,
    pub peel_failures: u64,
    pub rate: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimReport {
    pub code: String,
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    pub per_strategy: Vec<StrategyResult>,
    pub ml_failures: u64,
}

impl SimReport {
    /// One CSV record per strategy with the JSON report's columns.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Data(e.to_string());
        w.write_record([
            "code",
            "p",
            "trials",
            "seed",
            "name",
            "peel_failures",
            "rate",
            "ml_failures",
        ])
        .map_err(io)?;
        for s in &self.per_strategy {
            w.write_record([
                self.code.clone(),
                self.p.to_string(),
                self.trials.to_string(),
                self.seed.to_string(),
                s.name.clone(),
                s.peel_failures.to_string(),
                s.rate.to_string(),
                self.ml_failures.to_string(),
            ])
            .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Data(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Erasure mask of one trial: coordinate `j` is erased when the `j`-th draw
/// of SplitMix64 seeded with `derive_seed(seed, trial)`, as a 53-bit
/// uniform, falls below `p`.
pub fn trial_erasures(n: usize, p: f64, seed: u64, trial: u64) -> u64 {
    let mut rng = SplitMix64::new(derive_seed(seed, trial));
    (0..n).fold(0u64, |m, j| if rng.next_f64() < p { m | 1 << j } else { m })
}

/// Monte Carlo comparison of peeling with several check-row collections
/// against maximum-likelihood decoding on the binary erasure channel.
pub fn bec_simulate(
    code_name: &str,
    strategies: &[(String, BinMatrix)],
    code: &LinearCode,
    p: f64,
    trials: u64,
    seed: u64,
) -> Result<SimReport> {
    if !(0.0..=1.0).contains(&p) {
        return param(format!("erasure probability {p} outside [0, 1]"));
    }
    for (name, rows) in strategies {
        if rows.ncols() != code.n() {
            return param(format!(
                "strategy {name} has {} columns, code length is {}",
                rows.ncols(),
                code.n()
            ));
        }
        if let Some(i) = rows
            .rows()
            .iter()
            .position(|&r| code.generator().mul_vec(r) != 0)
        {
            return Err(Error::Data(format!(
                "row {} of strategy {name} is not in the dual code",
                i + 1
            )));
        }
    }
    let n = code.n();
    let h = code.parity_check().rows().to_vec();
    let zero = || (vec![0u64; strategies.len()], 0u64);
    let (peel, ml) = (0..trials)
        .into_par_iter()
        .fold(zero, |(mut peel, mut ml), t| {
            let e = trial_erasures(n, p, seed, t);
            if !columns_independent(&h, e) {
                ml += 1;
            }
            for (i, (_, rows)) in strategies.iter().enumerate() {
                if !peel_succeeds(rows.rows(), e) {
                    peel[i] += 1;
                }
            }
            (peel, ml)
        })
        .reduce(zero, |(mut a, ma), (b, mb)| {
            a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
            (a, ma + mb)
        });
    let rate = |f: u64| {
        if trials == 0 {
            0.0
        } else {
            f as f64 / trials as f64
        }
    };
    Ok(SimReport {
        code: code_name.to_string(),
        p,
        trials,
        seed,
        per_strategy: strategies
            .iter()
            .zip(peel)
            .map(|((name, _), f)| StrategyResult {
                name: name.clone(),
                peel_failures: f,
                rate: rate(f),
            })
            .collect(),
        ml_failures: ml,
    })
}
