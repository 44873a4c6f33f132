//! Peeling decoder, stopping sets and the maximum-likelihood oracle.

mod decompose;
mod simulate;

pub use decompose::{support_decompose, Decomposition};
pub use simulate::{bec_simulate, trial_erasures, SimReport, StrategyResult};

use serde::Serialize;

use crate::code::LinearCode;
use crate::error::{budget, param, Error, Result};
use crate::gf2::{bit_positions, low_mask, next_combination, BinMatrix, BitVector};
use crate::verify::VectorSet;

/// Default cap on the length for exhaustive stopping-set scans.
pub const STOPPING_SCAN_MAX_N: usize = 24;
/// Default cap on the dimension for exhaustive codeword enumeration.
pub const CODEWORD_SCAN_MAX_K: usize = 24;

/// A set of erased coordinates of a length-`n` word (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ErasurePattern {
    n: usize,
    mask: u64,
}

impl ErasurePattern {
    pub fn new(n: usize, positions: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &p in positions {
            if p >= n {
                return param(format!("erased position {p} outside length {n}"));
            }
            if mask >> p & 1 == 1 {
                return param(format!("erased position {p} listed twice"));
            }
            mask |= 1 << p;
        }
        Ok(ErasurePattern { n, mask })
    }

    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        if n > 64 || mask & !low_mask(n) != 0 {
            return param(format!("erasure mask does not fit length {n}"));
        }
        Ok(ErasurePattern { n, mask })
    }

    pub fn empty(n: usize) -> Self {
        ErasurePattern { n, mask: 0 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn positions(&self) -> Vec<usize> {
        bit_positions(self.mask).collect()
    }
}

impl Serialize for ErasurePattern {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        // 1-based, matching the text formats
        let pos: Vec<usize> = self.positions().iter().map(|p| p + 1).collect();
        pos.serialize(ser)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelResult {
    pub resolved: Vec<usize>,
    pub residual: ErasurePattern,
    pub used_rows: Vec<usize>,
}

impl PeelResult {
    pub fn succeeded(&self) -> bool {
        self.residual.is_empty()
    }
}

fn check_len(rows: &BinMatrix, e: &ErasurePattern) -> Result<()> {
    if rows.ncols() != e.n {
        return param(format!(
            "pattern length {} does not match {} columns",
            e.n,
            rows.ncols()
        ));
    }
    Ok(())
}

/// True iff no row restricted to `e` has weight exactly one.
pub fn is_stopping_set(rows: &BinMatrix, e: &ErasurePattern) -> Result<bool> {
    check_len(rows, e)?;
    if e.is_empty() {
        return param("stopping sets are nonempty");
    }
    Ok(stops(rows.rows(), e.mask))
}

#[inline]
pub(crate) fn stops(rows: &[u64], e: u64) -> bool {
    rows.iter().all(|&r| (r & e).count_ones() != 1)
}

/// Iterative decoding: repeatedly take the lowest-index row meeting the
/// erasures in exactly one position and resolve that position.
pub fn peel_decode(rows: &BinMatrix, e: &ErasurePattern) -> Result<PeelResult> {
    check_len(rows, e)?;
    let mut left = e.mask;
    let mut resolved = Vec::new();
    let mut used_rows = Vec::new();
    while let Some((i, hit)) = rows
        .rows()
        .iter()
        .enumerate()
        .map(|(i, &r)| (i, r & left))
        .find(|(_, hit)| hit.count_ones() == 1)
    {
        resolved.push(hit.trailing_zeros() as usize);
        used_rows.push(i);
        left &= !hit;
    }
    Ok(PeelResult {
        resolved,
        residual: ErasurePattern { n: e.n, mask: left },
        used_rows,
    })
}

/// Peeling success without the trace.
#[inline]
pub fn peel_succeeds(rows: &[u64], mut e: u64) -> bool {
    'outer: while e != 0 {
        for &r in rows {
            let hit = r & e;
            if hit != 0 && hit & (hit - 1) == 0 {
                e &= !hit;
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Smallest nonempty stopping set of size at most `max_size`, scanning sizes
/// upward and subsets of each size in increasing mask order.
pub fn smallest_stopping_set(rows: &BinMatrix, max_size: usize) -> Result<Option<ErasurePattern>> {
    let n = rows.ncols();
    if n > 63 {
        return param("stopping-set scans support at most 63 coordinates");
    }
    for size in 1..=max_size.min(n) {
        let end = 1u64 << n;
        let mut e = low_mask(size);
        while e < end {
            if stops(rows.rows(), e) {
                return Ok(Some(ErasurePattern { n, mask: e }));
            }
            e = next_combination(e);
        }
    }
    Ok(None)
}

/// Size of the smallest nonempty stopping set, or `None` when every
/// nonempty coordinate set is peelable.
pub fn stopping_distance(rows: &BinMatrix) -> Result<Option<usize>> {
    stopping_distance_with(rows, None)
}

/// Like [`stopping_distance`]; with a cutoff only sizes up to it are
/// scanned (any length), so `None` then means "greater than the cutoff".
pub fn stopping_distance_with(rows: &BinMatrix, cutoff: Option<usize>) -> Result<Option<usize>> {
    if rows.is_empty() {
        return param("stopping distance of an empty row collection");
    }
    let n = rows.ncols();
    let max_size = match cutoff {
        Some(c) => c,
        None if n > STOPPING_SCAN_MAX_N => {
            return budget(format!(
                "exhaustive stopping-set scan over {n} coordinates exceeds the cap {STOPPING_SCAN_MAX_N}"
            ))
        }
        None => n,
    };
    Ok(smallest_stopping_set(rows, max_size)?.map(|e| e.len()))
}

fn require_full_row_rank(h: &BinMatrix) -> Result<()> {
    if h.rank() != h.nrows() {
        return param("parity-check matrix must have full row rank");
    }
    Ok(())
}

/// True iff the columns of `h` indexed by `e` are linearly independent,
/// i.e. `e` contains the support of no nonzero codeword.
pub fn is_correctable(h: &BinMatrix, e: &ErasurePattern) -> Result<bool> {
    check_len(h, e)?;
    require_full_row_rank(h)?;
    Ok(columns_independent(h.rows(), e.mask))
}

#[inline]
pub(crate) fn columns_independent(h: &[u64], e: u64) -> bool {
    // column rank of the restriction equals its row rank
    let mut span = crate::gf2::Span::default();
    h.iter().filter(|&&r| span.insert(r & e)).count() == e.count_ones() as usize
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "word", rename_all = "snake_case")]
pub enum MlDecode {
    Decoded(BitVector),
    Ambiguous,
}

/// Maximum-likelihood erasure decoding: the unique codeword agreeing with
/// `received` off the erasures, or `Ambiguous` when several do.
pub fn ml_erasure_decode(
    h: &BinMatrix,
    received: &BitVector,
    e: &ErasurePattern,
) -> Result<MlDecode> {
    check_len(h, e)?;
    if received.dim() != h.ncols() {
        return param("received word length does not match the parity-check matrix");
    }
    require_full_row_rank(h)?;
    let known = received.bits() & !e.mask;
    let syndrome = h.mul_vec(known);
    let restricted = BinMatrix::new(h.ncols(), h.rows().iter().map(|&r| r & e.mask).collect())?;
    let rhs = BitVector::from_bits(h.nrows(), syndrome)?;
    let Some(x) = restricted.solve(&rhs)? else {
        return Err(Error::Data(
            "unerased coordinates are not consistent with any codeword".into(),
        ));
    };
    if !columns_independent(h.rows(), e.mask) {
        return Ok(MlDecode::Ambiguous);
    }
    Ok(MlDecode::Decoded(BitVector::from_bits(
        h.ncols(),
        known | (x.bits() & e.mask),
    )?))
}

/// Minimum and maximum weight of the nonzero codewords.
pub fn min_max_distance(code: &LinearCode) -> Result<(usize, usize)> {
    let k = code.k();
    if k == 0 {
        return param("min/max distance needs k >= 1");
    }
    if k > CODEWORD_SCAN_MAX_K {
        return budget(format!(
            "2^{k} codewords exceed the enumeration cap 2^{CODEWORD_SCAN_MAX_K}"
        ));
    }
    let g = code.generator().rows();
    let (mut lo, mut hi) = (usize::MAX, 0);
    let mut w = 0u64;
    for i in 1u64..1 << k {
        w ^= g[i.trailing_zeros() as usize];
        let wt = w.count_ones() as usize;
        lo = lo.min(wt);
        hi = hi.max(wt);
    }
    Ok((lo, hi))
}

/// Rows `aH` for `a` in `A`, in `A`'s order.
pub fn apply_generic_set(a: &VectorSet, h: &BinMatrix) -> Result<BinMatrix> {
    if a.ambient() != h.nrows() {
        return param(format!(
            "set lives in dimension {}, matrix has {} rows",
            a.ambient(),
            h.nrows()
        ));
    }
    require_full_row_rank(h)?;
    let rows = a.members().iter().map(|&v| h.left_mul(v)).collect();
    BinMatrix::new(h.ncols(), rows)
}
