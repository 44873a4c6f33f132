use std::fmt;
use std::str::FromStr;

use super::vector::{
    bit_positions, bits_to_string, low_mask, parity, parse_bits, BitVector, MAX_DIM,
};
use crate::error::{Error, Result};

/// A dense GF(2) matrix stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BinMatrix {
    cols: usize,
    rows: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankRref {
    pub rank: usize,
    /// Same shape as the input; nonzero rows first, sorted by pivot.
    pub rref: BinMatrix,
    /// 0-based pivot column of each nonzero row.
    pub pivot_cols: Vec<usize>,
}

impl BinMatrix {
    pub fn new(cols: usize, rows: Vec<u64>) -> Result<Self> {
        if cols > MAX_DIM {
            return Err(Error::Parameter(format!("{cols} columns exceed {MAX_DIM}")));
        }
        let mask = low_mask(cols);
        if rows.iter().any(|&r| r & !mask != 0) {
            return Err(Error::Parameter(format!(
                "row has bits beyond column {cols}"
            )));
        }
        Ok(BinMatrix { cols, rows })
    }

    pub(crate) fn from_raw(cols: usize, rows: Vec<u64>) -> Self {
        debug_assert!(rows.iter().all(|&r| r & !low_mask(cols) == 0));
        BinMatrix { cols, rows }
    }

    pub fn zeros(nrows: usize, cols: usize) -> Self {
        BinMatrix::from_raw(cols, vec![0; nrows])
    }

    pub fn identity(n: usize) -> Self {
        BinMatrix::from_raw(n, (0..n).map(|i| 1u64 << i).collect())
    }

    pub fn from_rows(cols: usize, rows: &[BitVector]) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.dim() != cols) {
            return Err(Error::Parameter(format!(
                "row of dimension {} in a matrix with {cols} columns",
                bad.dim()
            )));
        }
        BinMatrix::new(cols, rows.iter().map(|r| r.bits()).collect())
    }

    /// Builds a matrix from column words of height `nrows`.
    pub fn from_columns(nrows: usize, columns: &[u64]) -> Result<Self> {
        let mut rows = vec![0u64; nrows];
        for (j, &c) in columns.iter().enumerate() {
            if c & !low_mask(nrows) != 0 {
                return Err(Error::Parameter("column taller than the matrix".into()));
            }
            for i in bit_positions(c) {
                rows[i] |= 1 << j;
            }
        }
        BinMatrix::new(columns.len(), rows)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<u64> {
        self.rows
    }

    pub fn row(&self, i: usize) -> BitVector {
        BitVector::new_unchecked(self.cols, self.rows[i])
    }

    pub fn row_vectors(&self) -> Vec<BitVector> {
        (0..self.nrows()).map(|i| self.row(i)).collect()
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(j < self.cols);
        self.rows[i] >> j & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(j < self.cols);
        if value {
            self.rows[i] |= 1 << j;
        } else {
            self.rows[i] &= !(1 << j);
        }
    }

    /// Column `j` packed as a word of height `nrows` (requires nrows ≤ 64).
    pub fn column(&self, j: usize) -> u64 {
        assert!(j < self.cols && self.nrows() <= MAX_DIM);
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &r)| acc | ((r >> j & 1) << i))
    }

    pub fn columns(&self) -> Vec<u64> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> BinMatrix {
        assert!(
            self.nrows() <= MAX_DIM,
            "transpose needs at most {MAX_DIM} rows"
        );
        BinMatrix::from_raw(self.nrows(), self.columns())
    }

    pub fn push_row(&mut self, row: u64) {
        assert!(row & !low_mask(self.cols) == 0);
        self.rows.push(row);
    }

    /// Row-vector product `aM` where bit `i` of `a` selects row `i`.
    #[inline]
    pub fn left_mul(&self, a: u64) -> u64 {
        bit_positions(a).fold(0, |acc, i| acc ^ self.rows[i])
    }

    /// Column-vector product `M xᵀ`, packed with bit `i` for row `i`.
    #[inline]
    pub fn mul_vec(&self, x: u64) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &r)| acc | (parity(r & x) << i))
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &BinMatrix) -> Result<BinMatrix> {
        if self.cols != other.nrows() {
            return Err(Error::Parameter(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows(),
                self.cols,
                other.nrows(),
                other.cols
            )));
        }
        let rows = self.rows.iter().map(|&r| other.left_mul(r)).collect();
        Ok(BinMatrix::from_raw(other.cols, rows))
    }

    pub fn rank(&self) -> usize {
        rank_of(&self.rows)
    }

    pub fn rank_rref(&self) -> RankRref {
        let mut rows = self.rows.clone();
        let pivot_cols = rref_in_place(&mut rows, self.cols);
        RankRref {
            rank: pivot_cols.len(),
            rref: BinMatrix::from_raw(self.cols, rows),
            pivot_cols,
        }
    }

    /// Reduced row-echelon basis of the row space (zero rows dropped).
    pub fn row_space_basis(&self) -> BinMatrix {
        let mut rows = self.rows.clone();
        let r = rref_in_place(&mut rows, self.cols).len();
        rows.truncate(r);
        BinMatrix::from_raw(self.cols, rows)
    }

    /// Basis of `{x : M xᵀ = 0}` in reduced row-echelon form.
    pub fn nullspace(&self) -> BinMatrix {
        let mut rows = self.rows.clone();
        let pivots = rref_in_place(&mut rows, self.cols);
        let pivot_mask = pivots.iter().fold(0u64, |m, &p| m | 1 << p);
        let mut basis: Vec<u64> = (0..self.cols)
            .filter(|&f| pivot_mask >> f & 1 == 0)
            .map(|f| {
                let mut x = 1u64 << f;
                for (i, &p) in pivots.iter().enumerate() {
                    if rows[i] >> f & 1 == 1 {
                        x |= 1 << p;
                    }
                }
                x
            })
            .collect();
        rref_in_place(&mut basis, self.cols);
        BinMatrix::from_raw(self.cols, basis)
    }

    /// Solves `M xᵀ = bᵀ`, returning the lexicographically least solution.
    pub fn solve(&self, b: &BitVector) -> Result<Option<BitVector>> {
        if b.dim() != self.nrows() {
            return Err(Error::Parameter(format!(
                "right-hand side has dimension {}, matrix has {} rows",
                b.dim(),
                self.nrows()
            )));
        }
        let mut rows = self.rows.clone();
        let mut rhs: Vec<bool> = (0..self.nrows()).map(|i| b.get(i)).collect();
        let mut rank = 0;
        let mut pivots = Vec::new();
        for c in 0..self.cols {
            let Some(p) = (rank..rows.len()).find(|&i| rows[i] >> c & 1 == 1) else {
                continue;
            };
            rows.swap(rank, p);
            rhs.swap(rank, p);
            for i in 0..rows.len() {
                if i != rank && rows[i] >> c & 1 == 1 {
                    rows[i] ^= rows[rank];
                    rhs[i] ^= rhs[rank];
                }
            }
            pivots.push(c);
            rank += 1;
        }
        if rhs[rank..].iter().any(|&v| v) {
            return Ok(None);
        }
        let x = pivots
            .iter()
            .zip(&rhs)
            .fold(0u64, |x, (&c, &v)| if v { x | 1 << c } else { x });
        let kernel = self.nullspace();
        Ok(Some(BitVector::new_unchecked(
            self.cols,
            reduce_by_rref(x, kernel.rows()),
        )))
    }

    /// Keeps only the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> BinMatrix {
        let rows = self
            .rows
            .iter()
            .map(|&r| super::vector::gather_bits(r, cols))
            .collect();
        BinMatrix::from_raw(cols.len(), rows)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for &r in &self.rows {
            out.push_str(&bits_to_string(r, self.cols));
            out.push('\n');
        }
        out
    }

    /// Parses the shared text format: one {0,1} row per line, `#` comments,
    /// blank lines ignored, leftmost character is coordinate 1.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut cols = None;
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (len, bits) = parse_bits(line).map_err(|msg| Error::Parse {
                line: lineno + 1,
                msg,
            })?;
            match cols {
                None => cols = Some(len),
                Some(c) if c != len => {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        msg: format!("row has {len} entries, expected {c}"),
                    })
                }
                _ => {}
            }
            rows.push(bits);
        }
        let cols = cols.ok_or(Error::Parse {
            line: 0,
            msg: "no rows found".into(),
        })?;
        BinMatrix::new(cols, rows)
    }
}

impl fmt::Display for BinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for BinMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BinMatrix::parse_text(s)
    }
}

impl serde::Serialize for BinMatrix {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = ser.serialize_seq(Some(self.rows.len()))?;
        for &r in &self.rows {
            seq.serialize_element(&bits_to_string(r, self.cols))?;
        }
        seq.end()
    }
}

/// Reduced row-echelon form in place; pivots are the lowest set bits.
/// Nonzero rows end up first, ordered by pivot. Returns the pivot columns.
pub fn rref_in_place(rows: &mut [u64], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(p) = (rank..rows.len()).find(|&i| rows[i] >> c & 1 == 1) else {
            continue;
        };
        rows.swap(rank, p);
        let pr = rows[rank];
        for (i, r) in rows.iter_mut().enumerate() {
            if i != rank && *r >> c & 1 == 1 {
                *r ^= pr;
            }
        }
        pivots.push(c);
        rank += 1;
    }
    pivots
}

pub fn rank_of(rows: &[u64]) -> usize {
    let mut span = Span::default();
    rows.iter().filter(|&&r| span.insert(r)).count()
}

/// Reduces `x` by a reduced row-echelon basis (pivot = lowest set bit),
/// yielding the lexicographically least element of `x + rowspace`.
pub fn reduce_by_rref(mut x: u64, basis: &[u64]) -> u64 {
    for &b in basis {
        if b != 0 && x >> b.trailing_zeros() & 1 == 1 {
            x ^= b;
        }
    }
    x
}

/// Incrementally maintained span of packed vectors.
#[derive(Clone, Debug)]
pub struct Span {
    by_pivot: [u64; 64],
    pivots: u64,
}

impl Default for Span {
    fn default() -> Self {
        Span {
            by_pivot: [0; 64],
            pivots: 0,
        }
    }
}

impl Span {
    pub fn reduce(&self, mut v: u64) -> u64 {
        let mut m = self.pivots;
        while m != 0 {
            let p = m.trailing_zeros() as usize;
            m &= m - 1;
            if v >> p & 1 == 1 {
                v ^= self.by_pivot[p];
            }
        }
        v
    }

    pub fn contains(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: u64) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        let p = v.trailing_zeros() as usize;
        self.by_pivot[p] = v;
        self.pivots |= 1 << p;
        true
    }

    pub fn dim(&self) -> usize {
        self.pivots.count_ones() as usize
    }
}
