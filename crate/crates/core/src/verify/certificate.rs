use serde::Serialize;

use super::image::apply;
use super::VectorSet;
use crate::gf2::{parity, BinMatrix, BitVector, Span};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    MissedFlat,
    BadMatrix,
    BadCosetFamily,
    BadTuple,
    MissedSubspace,
    MissingPattern,
    BadColumns,
}

/// Evidence that a set, code or array lacks a property. Replaying it against
/// the same input must fail again.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "witness", rename_all = "snake_case")]
pub enum Certificate {
    /// The flat {x : v·x = 1 for every check v} contains no member.
    MissedFlat { checks: Vec<BitVector> },
    /// No member a has wt(aM) = 1.
    BadMatrix { matrix: BinMatrix },
    /// No member a has Ha among the targets (an independent family).
    BadCosetFamily {
        check: BinMatrix,
        targets: Vec<BitVector>,
    },
    /// Independent vectors with no common "all ones" member (sets) or no
    /// common support coordinate (codes).
    BadTuple { vectors: Vec<BitVector> },
    /// A subspace avoided by the set.
    MissedSubspace { basis: BinMatrix },
    /// Rows (1-based) of an array whose columns never show `pattern`.
    MissingPattern {
        rows: Vec<usize>,
        pattern: BitVector,
    },
    /// Columns (1-based) of A·N violating the (s−1)-tuple property.
    BadColumns {
        transform: BinMatrix,
        columns: Vec<usize>,
    },
}

fn independent(vs: impl IntoIterator<Item = u64>) -> bool {
    let mut span = Span::default();
    vs.into_iter().all(|v| span.insert(v))
}

impl Certificate {
    pub fn kind(&self) -> CertificateKind {
        match self {
            Certificate::MissedFlat { .. } => CertificateKind::MissedFlat,
            Certificate::BadMatrix { .. } => CertificateKind::BadMatrix,
            Certificate::BadCosetFamily { .. } => CertificateKind::BadCosetFamily,
            Certificate::BadTuple { .. } => CertificateKind::BadTuple,
            Certificate::MissedSubspace { .. } => CertificateKind::MissedSubspace,
            Certificate::MissingPattern { .. } => CertificateKind::MissingPattern,
            Certificate::BadColumns { .. } => CertificateKind::BadColumns,
        }
    }

    /// Re-checks a certificate issued for a vector set and parameter `s`.
    pub fn refutes_set(&self, a: &VectorSet, s: usize) -> bool {
        let r = a.ambient();
        let members = a.members();
        match self {
            Certificate::MissedFlat { checks } | Certificate::BadTuple { vectors: checks } => {
                checks.len() == s
                    && checks.iter().all(|v| v.dim() == r)
                    && independent(checks.iter().map(|v| v.bits()))
                    && !members
                        .iter()
                        .any(|&x| checks.iter().all(|v| parity(v.bits() & x) == 1))
            }
            Certificate::BadMatrix { matrix } => {
                matrix.nrows() == r
                    && matrix.ncols() == s
                    && matrix.rank() == s
                    && !members
                        .iter()
                        .any(|&x| matrix.left_mul(x).count_ones() == 1)
            }
            Certificate::BadCosetFamily { check, targets } => {
                check.nrows() == s
                    && check.ncols() == r
                    && check.rank() == s
                    && targets.len() == s
                    && independent(targets.iter().map(|t| t.bits()))
                    && !members.iter().any(|&x| {
                        let b = apply(check.rows(), x);
                        targets.iter().any(|t| t.bits() == b)
                    })
            }
            Certificate::MissedSubspace { basis } => {
                basis.ncols() == r && basis.nrows() + s == r && basis.rank() == basis.nrows() && {
                    let mut span = Span::default();
                    basis.rows().iter().for_each(|&b| {
                        span.insert(b);
                    });
                    !members.iter().any(|&x| span.contains(x))
                }
            }
            Certificate::BadColumns { transform, columns } => {
                transform.nrows() == r
                    && transform.ncols() == r
                    && transform.rank() == r
                    && columns.len() == s
                    && columns.iter().all(|&c| (1..=r).contains(&c))
                    && {
                        let image: Vec<u64> =
                            members.iter().map(|&x| transform.left_mul(x)).collect();
                        let cols: Vec<usize> = columns.iter().map(|c| c - 1).collect();
                        !super::codes::some_subset_covers(&image, &cols)
                    }
            }
            Certificate::MissingPattern { .. } => false,
        }
    }

    /// Re-checks a certificate issued for a generator matrix and `s`.
    pub fn refutes_code(&self, g: &BinMatrix, s: usize) -> bool {
        match self {
            Certificate::BadTuple { vectors } => {
                let code = crate::code::LinearCode::from_generator(g.clone());
                let Ok(code) = code else { return false };
                vectors.len() == s
                    && vectors.iter().all(|v| code.contains(v))
                    && independent(vectors.iter().map(|v| v.bits()))
                    && vectors.iter().fold(u64::MAX, |acc, v| acc & v.bits()) == 0
            }
            _ => false,
        }
    }

    /// Re-checks a certificate issued for a k×N array and strength `t`.
    pub fn refutes_array(&self, m: &BinMatrix, t: usize) -> bool {
        match self {
            Certificate::MissingPattern { rows, pattern } => {
                rows.len() == t
                    && pattern.dim() == t
                    && rows.iter().all(|&i| (1..=m.nrows()).contains(&i))
                    && (0..m.ncols()).all(|j| {
                        let p = rows
                            .iter()
                            .enumerate()
                            .fold(0u64, |acc, (i, &row)| acc | (m.get(row - 1, j) as u64) << i);
                        p != pattern.bits()
                    })
            }
            _ => false,
        }
    }
}

pub(crate) fn vectors(dim: usize, words: impl IntoIterator<Item = u64>) -> Vec<BitVector> {
    words
        .into_iter()
        .map(|w| BitVector::from_bits(dim, w).expect("word fits its dimension"))
        .collect()
}
