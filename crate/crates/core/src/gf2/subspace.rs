use std::ops::ControlFlow;

use super::gaussian::full_rank_count;
use super::matrix::{reduce_by_rref, BinMatrix, Span};
use super::rng::SplitMix64;
use super::vector::{bit_positions, low_mask, scatter_bits, BitVector};
use crate::error::{budget, param, Error, Result};

/// A coset `rep + rowspace(basis)` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Flat {
    basis: BinMatrix,
    rep: BitVector,
}

impl Flat {
    /// Canonicalises the coset of `span(rows)` through `point`.
    pub fn through(ambient: usize, rows: &[u64], point: u64) -> Result<Flat> {
        if point & !low_mask(ambient) != 0 {
            return param("point outside the ambient space");
        }
        let basis = BinMatrix::new(ambient, rows.to_vec())?.row_space_basis();
        let rep = reduce_by_rref(point, basis.rows());
        Ok(Flat {
            basis,
            rep: BitVector::new_unchecked(ambient, rep),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &BinMatrix {
        &self.basis
    }

    pub fn rep(&self) -> BitVector {
        self.rep
    }

    pub fn is_subspace(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn contains(&self, x: &BitVector) -> bool {
        x.dim() == self.ambient_dim()
            && reduce_by_rref(x.bits() ^ self.rep.bits(), self.basis.rows()) == 0
    }

    /// All members, in no particular order.
    pub fn members(&self) -> Vec<u64> {
        let rows = self.basis.rows();
        (0..1u64 << rows.len())
            .map(|c| bit_positions(c).fold(self.rep.bits(), |acc, i| acc ^ rows[i]))
            .collect()
    }
}

/// Walks the `k`-subspaces of F_2^m in the documented order.
///
/// Pivot sets come in lexicographic order; within a pivot set the free
/// entries, listed row by row and left to right, form a binary counter whose
/// first entry is the most significant digit. Rows are kept in reduced
/// row-echelon form with pivot = lowest set bit.
pub struct SubspaceCursor {
    m: usize,
    k: usize,
    pivots: Vec<usize>,
    // per-row free-column masks and scatter tables indexed by field value
    tables: Vec<Vec<u64>>,
    fields: Vec<u64>,
    rows: Vec<u64>,
    done: bool,
}

impl SubspaceCursor {
    pub fn new(m: usize, k: usize) -> Result<Self> {
        if k > m {
            return param(format!("subspace dimension {k} exceeds ambient {m}"));
        }
        if m > 24 {
            return Err(Error::Budget(format!(
                "subspace enumeration in dimension {m} is beyond desk scale"
            )));
        }
        let mut c = SubspaceCursor {
            m,
            k,
            pivots: (0..k).collect(),
            tables: Vec::new(),
            fields: vec![0; k],
            rows: vec![0; k],
            done: false,
        };
        c.load_pivots();
        Ok(c)
    }

    fn load_pivots(&mut self) {
        let pivot_mask = self.pivots.iter().fold(0u64, |a, &p| a | 1 << p);
        self.tables.clear();
        for &p in &self.pivots {
            let free: Vec<usize> = (p + 1..self.m)
                .filter(|&c| pivot_mask >> c & 1 == 0)
                .collect();
            // field bit (f-1-j) drives free column j, so the leftmost slot is most significant
            let rev: Vec<usize> = free.iter().rev().copied().collect();
            let table = (0..1u64 << free.len())
                .map(|v| (1u64 << p) | scatter_bits(v, &rev))
                .collect();
            self.tables.push(table);
        }
        for i in 0..self.k {
            self.fields[i] = 0;
            self.rows[i] = self.tables[i][0];
        }
    }

    /// Basis rows of the current subspace.
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Moves to the next subspace; returns false when exhausted.
    pub fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        for i in (0..self.k).rev() {
            let next = self.fields[i] + 1;
            if (next as usize) < self.tables[i].len() {
                self.fields[i] = next;
                self.rows[i] = self.tables[i][next as usize];
                return true;
            }
            self.fields[i] = 0;
            self.rows[i] = self.tables[i][0];
        }
        if next_pivot_set(&mut self.pivots, self.m) {
            self.load_pivots();
            true
        } else {
            self.done = true;
            false
        }
    }
}

pub(crate) fn next_pivot_set(p: &mut [usize], m: usize) -> bool {
    let k = p.len();
    for i in (0..k).rev() {
        if p[i] < m - k + i {
            p[i] += 1;
            for j in i + 1..k {
                p[j] = p[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Calls `f` with the RREF basis rows of every `k`-subspace of F_2^m.
pub fn try_for_each_subspace<B>(
    m: usize,
    k: usize,
    mut f: impl FnMut(&[u64]) -> ControlFlow<B>,
) -> Result<ControlFlow<B>> {
    let mut cur = SubspaceCursor::new(m, k)?;
    loop {
        if let ControlFlow::Break(b) = f(cur.rows()) {
            return Ok(ControlFlow::Break(b));
        }
        if !cur.advance() {
            return Ok(ControlFlow::Continue(()));
        }
    }
}

pub fn for_each_subspace(m: usize, k: usize, mut f: impl FnMut(&[u64])) -> Result<()> {
    try_for_each_subspace::<()>(m, k, |rows| {
        f(rows);
        ControlFlow::Continue(())
    })
    .map(|_| ())
}

/// Every `k`-subspace of F_2^m as a flat with zero representative.
pub fn enumerate_subspaces(m: usize, k: usize) -> Result<impl Iterator<Item = Flat>> {
    let mut cur = Some(SubspaceCursor::new(m, k)?);
    Ok(std::iter::from_fn(move || {
        let c = cur.as_mut()?;
        let flat = Flat {
            basis: BinMatrix::from_raw(m, c.rows().to_vec()),
            rep: BitVector::zero(m),
        };
        if !c.advance() {
            cur = None;
        }
        Some(flat)
    }))
}

/// Representatives of the cosets of a subspace with the given pivots, in
/// lexicographic order (zero first).
pub fn coset_reps(m: usize, pivots: &[usize]) -> Vec<u64> {
    let pivot_mask = pivots.iter().fold(0u64, |a, &p| a | 1 << p);
    let mut free: Vec<usize> = (0..m).filter(|&c| pivot_mask >> c & 1 == 0).collect();
    free.reverse();
    (0..1u64 << free.len())
        .map(|v| scatter_bits(v, &free))
        .collect()
}

/// Every coset of every `k`-subspace of F_2^m.
pub fn enumerate_flats(m: usize, k: usize) -> Result<impl Iterator<Item = Flat>> {
    Ok(enumerate_subspaces(m, k)?.flat_map(move |sub| {
        let pivots: Vec<usize> = sub
            .basis
            .rows()
            .iter()
            .map(|r| r.trailing_zeros() as usize)
            .collect();
        coset_reps(m, &pivots).into_iter().map(move |rep| Flat {
            basis: sub.basis.clone(),
            rep: BitVector::new_unchecked(m, rep),
        })
    }))
}

/// Calls `f` with the columns of every full-rank r×s matrix. Columns are
/// chosen left to right in increasing packed value.
pub fn try_for_each_full_rank<B>(
    r: usize,
    s: usize,
    mut f: impl FnMut(&[u64]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    fn rec<B>(
        r: usize,
        s: usize,
        cols: &mut Vec<u64>,
        span: &Span,
        f: &mut impl FnMut(&[u64]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        if cols.len() == s {
            return f(cols);
        }
        for c in 1..1u64 << r {
            if span.contains(c) {
                continue;
            }
            let mut next = span.clone();
            next.insert(c);
            cols.push(c);
            let flow = rec(r, s, cols, &next, f);
            cols.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }
    rec(r, s, &mut Vec::with_capacity(s), &Span::default(), &mut f)
}

/// Every full-rank r×s matrix, refusing when the count exceeds `cap`.
pub fn enumerate_full_rank(r: usize, s: usize, cap: u128) -> Result<Vec<BinMatrix>> {
    if s == 0 || s > r {
        return param(format!(
            "full-rank enumeration needs 1 <= s <= r, got r={r}, s={s}"
        ));
    }
    let count = full_rank_count(r, s).unwrap_or(u128::MAX);
    if count > cap {
        return budget(format!(
            "{count} full-rank {r}x{s} matrices exceed the cap {cap}"
        ));
    }
    let mut out = Vec::with_capacity(count as usize);
    let _ = try_for_each_full_rank::<()>(r, s, |cols| {
        out.push(BinMatrix::from_columns(r, cols).expect("columns fit"));
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// A random invertible m×m matrix: rows are drawn from SplitMix64 (masked to
/// m bits) and kept when independent of the rows kept so far.
pub fn random_invertible(m: usize, seed: u64) -> Result<BinMatrix> {
    if m == 0 || m > 64 {
        return param(format!("invertible matrix size must be in 1..=64, got {m}"));
    }
    let mut rng = SplitMix64::new(seed);
    let mut span = Span::default();
    let mut rows = Vec::with_capacity(m);
    while rows.len() < m {
        let v = rng.next_u64() & low_mask(m);
        if span.insert(v) {
            rows.push(v);
        }
    }
    BinMatrix::new(m, rows)
}
