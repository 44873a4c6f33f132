//! Classic code families used as fixtures.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::code::LinearCode;
use crate::error::{param, Error, Result};
use crate::gf2::{derive_seed, lex_key, low_mask, BinMatrix, SplitMix64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CodeFamily {
    Hamming,
    ExtendedHamming,
    Simplex,
    PuncturedSimplex,
    Repetition,
    SingleParity,
    Random,
}

impl CodeFamily {
    pub const ALL: [CodeFamily; 7] = [
        CodeFamily::Hamming,
        CodeFamily::ExtendedHamming,
        CodeFamily::Simplex,
        CodeFamily::PuncturedSimplex,
        CodeFamily::Repetition,
        CodeFamily::SingleParity,
        CodeFamily::Random,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CodeFamily::Hamming => "hamming",
            CodeFamily::ExtendedHamming => "extended-hamming",
            CodeFamily::Simplex => "simplex",
            CodeFamily::PuncturedSimplex => "punctured-simplex",
            CodeFamily::Repetition => "repetition",
            CodeFamily::SingleParity => "single-parity",
            CodeFamily::Random => "random",
        }
    }
}

/// A family with its integer parameters, written `family:p1,p2`, e.g.
/// `hamming:3` or `random:10,4`. Random codes also take a seed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeFamilySpec {
    pub family: CodeFamily,
    pub params: Vec<usize>,
    pub seed: Option<u64>,
}

impl CodeFamilySpec {
    pub fn new(family: CodeFamily, params: &[usize]) -> Self {
        CodeFamilySpec {
            family,
            params: params.to_vec(),
            seed: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

impl fmt::Display for CodeFamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
        write!(f, "{}:{}", self.family.name(), params.join(","))
    }
}

impl FromStr for CodeFamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let family = CodeFamily::ALL
            .into_iter()
            .find(|f| f.name() == name)
            .ok_or_else(|| Error::Parameter(format!("unknown code family {name:?}")))?;
        let params = rest
            .split(',')
            .filter(|p| !p.is_empty())
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parameter(format!("bad code parameter {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CodeFamilySpec {
            family,
            params,
            seed: None,
        })
    }
}

fn one_param(spec: &CodeFamilySpec, what: &str, min: usize, max: usize) -> Result<usize> {
    match spec.params.as_slice() {
        &[p] if (min..=max).contains(&p) => Ok(p),
        _ => param(format!(
            "{} takes one parameter {what} in {min}..={max}, got {:?}",
            spec.family.name(),
            spec.params
        )),
    }
}

/// Nonzero vectors of F^m: unit vectors first, then the rest in
/// lexicographic order.
fn systematic_columns(m: usize) -> Vec<u64> {
    let mut rest: Vec<u64> = (1..1u64 << m).filter(|v| !v.is_power_of_two()).collect();
    rest.sort_by_key(|&v| lex_key(v, m));
    let mut cols: Vec<u64> = (0..m).map(|i| 1u64 << i).collect();
    cols.extend(rest);
    cols
}

fn simplex_generator(k: usize) -> Result<BinMatrix> {
    BinMatrix::from_columns(k, &systematic_columns(k))
}

/// Builds the code. Hamming and simplex codes list the unit columns first,
/// so their parity-check (resp. generator) matrix is systematic.
pub fn make_code(spec: &CodeFamilySpec) -> Result<LinearCode> {
    match spec.family {
        CodeFamily::Hamming => {
            let m = one_param(spec, "m", 2, 6)?;
            LinearCode::from_parity_check(simplex_generator(m)?)
        }
        CodeFamily::ExtendedHamming => {
            let m = one_param(spec, "m", 2, 6)?;
            let ham = LinearCode::from_parity_check(simplex_generator(m)?)?;
            let n = ham.n();
            let rows = ham
                .generator()
                .rows()
                .iter()
                .map(|&r| r | ((r.count_ones() as u64 & 1) << n))
                .collect();
            LinearCode::from_generator(BinMatrix::new(n + 1, rows)?)
        }
        CodeFamily::Simplex => {
            let k = one_param(spec, "k", 2, 6)?;
            LinearCode::from_generator(simplex_generator(k)?)
        }
        CodeFamily::PuncturedSimplex => {
            let k = one_param(spec, "k", 2, 6)?;
            // drop the lexicographically last column, the all-ones vector
            let cols: Vec<u64> = systematic_columns(k)
                .into_iter()
                .filter(|&c| c != low_mask(k))
                .collect();
            LinearCode::from_generator(BinMatrix::from_columns(k, &cols)?)
        }
        CodeFamily::Repetition => {
            let n = one_param(spec, "n", 1, 63)?;
            LinearCode::from_generator(BinMatrix::new(n, vec![low_mask(n)])?)
        }
        CodeFamily::SingleParity => {
            let n = one_param(spec, "n", 2, 63)?;
            LinearCode::from_parity_check(BinMatrix::new(n, vec![low_mask(n)])?)
        }
        CodeFamily::Random => {
            let (n, k) = match spec.params.as_slice() {
                &[n, k] if (1..=63).contains(&n) && (1..=n).contains(&k) => (n, k),
                _ => {
                    return param(format!(
                        "random takes n,k with 1 <= k <= n <= 63, got {:?}",
                        spec.params
                    ))
                }
            };
            let seed = spec
                .seed
                .ok_or_else(|| Error::Parameter("random codes need a seed".into()))?;
            random_code(n, k, seed)
        }
    }
}

/// Random [n,k] code: rows drawn from `SplitMix64::new(derive_seed(seed,
/// attempt))` until the k×n generator has full rank.
pub fn random_code(n: usize, k: usize, seed: u64) -> Result<LinearCode> {
    if k == 0 || k > n || n > 63 {
        return param(format!("need 1 <= k <= n <= 63, got n={n}, k={k}"));
    }
    for attempt in 0.. {
        let mut rng = SplitMix64::new(derive_seed(seed, attempt));
        let rows: Vec<u64> = (0..k).map(|_| rng.next_u64() & low_mask(n)).collect();
        let g = BinMatrix::new(n, rows)?;
        if g.rank() == k {
            return LinearCode::from_generator(g);
        }
    }
    unreachable!("attempts are unbounded")
}
