//! Greedy unions of s-subspaces meeting every (r−s)-flat.
//!
//! An s-subspace U meets every nontrivial coset of an (r−s)-subspace V
//! exactly when U ∩ V = 0, so it suffices to pick subspaces until every V has
//! a chosen complement.
//!
//! Small cases run the full greedy. Beyond the work cap each round ranks a
//! seeded batch of random candidates on a sample of the uncovered V and keeps
//! the winner only if it covers at least the average over all s-subspaces.
//! Any such pick keeps the covering-lemma guarantee of the full greedy.

use serde::Serialize;

use super::{Construction, SearchOutcome};
use crate::error::{budget, param, Result};
use crate::gf2::{
    derive_seed, for_each_subspace, gauss2, lex_key, low_mask, next_pivot_set, rank_of,
    span_elements, BinMatrix, Span, SplitMix64, SubspaceCursor,
};
use crate::verify::{is_good_set, GoodMethod, VectorSet};

/// Default cap on complement visits (G(r,s) · 2^{s(r−s)}) for the full greedy.
pub const DEFAULT_UNION_WORK: u128 = 200_000_000;
/// Seed of the sampled rounds (mixed with r and s).
pub const UNION_SEED: u64 = 0x7E57_5EED;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnionOutcome {
    pub outcome: SearchOutcome,
    /// Chosen subspaces (RREF bases) in pick order.
    pub subspaces: Vec<BinMatrix>,
    /// Every candidate was scored each round (no sampling).
    pub exhaustive: bool,
}

/// Position of a subspace in the enumeration order of [`SubspaceCursor`].
struct SubspaceIndex {
    // indexed by pivot mask: offset and the free columns of each row
    offset: Vec<u64>,
    free: Vec<Vec<Vec<usize>>>,
    count: u64,
}

impl SubspaceIndex {
    fn new(m: usize, k: usize) -> Result<Self> {
        if m > 20 {
            return budget(format!(
                "subspace index in dimension {m} is beyond desk scale"
            ));
        }
        let mut offset = vec![0u64; 1 << m];
        let mut free = vec![Vec::new(); 1 << m];
        let mut total = 0u64;
        let mut pivots: Vec<usize> = (0..k).collect();
        loop {
            let mask = pivots.iter().fold(0u64, |a, &p| a | 1 << p);
            let cols: Vec<Vec<usize>> = pivots
                .iter()
                .map(|&p| (p + 1..m).filter(|&c| mask >> c & 1 == 0).collect())
                .collect();
            offset[mask as usize] = total;
            total += 1 << cols.iter().map(Vec::len).sum::<usize>();
            free[mask as usize] = cols;
            if !next_pivot_set(&mut pivots, m) {
                break;
            }
        }
        Ok(SubspaceIndex {
            offset,
            free,
            count: total,
        })
    }

    /// Index of the subspace with the given RREF rows (sorted by pivot).
    fn rank(&self, rows: &[u64]) -> u64 {
        let mask = rows.iter().fold(0u64, |a, &r| a | (r & r.wrapping_neg())) as usize;
        let mut counter = 0u64;
        for (row, cols) in rows.iter().zip(&self.free[mask]) {
            for &c in cols {
                counter = counter << 1 | (row >> c & 1);
            }
        }
        self.offset[mask] + counter
    }
}

/// RREF of full-rank rows, pivot = lowest bit, rows sorted by pivot.
fn rref_full(rows: &mut [u64]) {
    let n = rows.len();
    for i in 0..n {
        let (mut best, mut low) = (i, rows[i] & rows[i].wrapping_neg());
        for j in i + 1..n {
            let l = rows[j] & rows[j].wrapping_neg();
            if l < low {
                best = j;
                low = l;
            }
        }
        rows.swap(i, best);
        for j in 0..n {
            if j != i && rows[j] & low != 0 {
                rows[j] ^= rows[i];
            }
        }
    }
}

/// Calls `f` with the RREF basis of every complement of span(`rows`), an
/// RREF basis of dimension d in F^m. Complements are graphs of the linear
/// maps from span{e_j : j not a pivot} into the subspace.
fn for_each_complement(m: usize, rows: &[u64], mut f: impl FnMut(&[u64])) {
    let pivot_mask = rows.iter().fold(0u64, |a, &r| a | (r & r.wrapping_neg()));
    let free: Vec<usize> = (0..m).filter(|&c| pivot_mask >> c & 1 == 0).collect();
    let elems = span_elements(rows);
    let d = rows.len();
    let t = free.len();
    let mut choice = vec![0usize; t];
    let mut buf = vec![0u64; t];
    loop {
        for j in 0..t {
            buf[j] = (1u64 << free[j]) ^ elems[choice[j]];
        }
        rref_full(&mut buf);
        f(&buf);
        // odometer over (2^d)^t choices
        let mut j = t;
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            choice[j] += 1;
            if choice[j] < 1 << d {
                break;
            }
            choice[j] = 0;
        }
    }
}

/// Greedy union of s-subspaces: each round adds the subspace (least in
/// enumeration order on ties) complementing the most uncovered
/// (r−s)-subspaces, sampling candidates when G(r,s)·2^{s(r−s)} exceeds
/// `work_cap`. Returns the nonzero vectors of the union, sorted.
pub fn greedy_subspace_union(r: usize, s: usize, work_cap: u128) -> Result<UnionOutcome> {
    if s < 2 || s >= r {
        return param(format!("subspace union needs 2 <= s < r, got r={r}, s={s}"));
    }
    let deg = 1u128 << (s * (r - s));
    let work = gauss2(r, s).saturating_mul(deg);
    let (chosen, exhaustive) = if work <= work_cap {
        (full_greedy(r, s)?, true)
    } else {
        (sampled_greedy(r, s)?, false)
    };
    let mut members: Vec<u64> = chosen
        .iter()
        .flat_map(|rows| span_elements(rows).into_iter().skip(1))
        .collect();
    members.sort_by_key(|&v| lex_key(v, r));
    members.dedup();
    let set = VectorSet::new(r, members)?;
    let verdict = is_good_set(&set, s, GoodMethod::Flats)?;
    assert!(verdict.holds(), "subspace union failed verification");
    let subspaces = chosen
        .into_iter()
        .map(|rows| BinMatrix::new(r, rows))
        .collect::<Result<_>>()?;
    Ok(UnionOutcome {
        outcome: SearchOutcome::new(Construction::Vectors(set), false, 0, None),
        subspaces,
        exhaustive,
    })
}

fn full_greedy(r: usize, s: usize) -> Result<Vec<Vec<u64>>> {
    let deg = 1u32 << (s * (r - s));
    let cand = SubspaceIndex::new(r, s)?;
    let targets = SubspaceIndex::new(r, r - s)?;
    let mut cand_rows = Vec::with_capacity(cand.count as usize);
    let mut cur = SubspaceCursor::new(r, s)?;
    loop {
        cand_rows.push(cur.rows().to_vec());
        if !cur.advance() {
            break;
        }
    }
    let mut gain = vec![deg; cand.count as usize];
    let mut covered = vec![false; targets.count as usize];
    let mut remaining = targets.count;
    let mut chosen: Vec<usize> = Vec::new();
    while remaining > 0 {
        let best = (0..gain.len())
            .max_by_key(|&i| (gain[i], std::cmp::Reverse(i)))
            .expect("candidates exist");
        chosen.push(best);
        for_each_complement(r, &cand_rows[best], |v| {
            let iv = targets.rank(v) as usize;
            if !covered[iv] {
                covered[iv] = true;
                remaining -= 1;
                for_each_complement(r, v, |u| gain[cand.rank(u) as usize] -= 1);
            }
        });
    }
    Ok(chosen.into_iter().map(|i| cand_rows[i].clone()).collect())
}

/// Uncovered subspaces used to rank a batch of candidates.
const SCORE_SAMPLE: usize = 1 << 16;

/// Largest s handled by the sampled rounds (s×s invertibility table).
const SAMPLED_MAX_S: usize = 4;

/// Bit m of word m / 64: the s×s matrix with rows packed s bits each is
/// invertible.
fn invertible_table(s: usize) -> Vec<u64> {
    let n = 1usize << (s * s);
    let mut table = vec![0u64; n.div_ceil(64)];
    for m in 0..n {
        let rows: Vec<u64> = (0..s)
            .map(|i| (m as u64 >> (i * s)) & low_mask(s))
            .collect();
        if rank_of(&rows) == s {
            table[m / 64] |= 1 << (m % 64);
        }
    }
    table
}

fn random_subspace(rng: &mut SplitMix64, r: usize, s: usize) -> Vec<u64> {
    loop {
        let mut span = Span::default();
        let mut rows: Vec<u64> = (0..s).map(|_| rng.next_u64() & low_mask(r)).collect();
        if rows.iter().all(|&v| span.insert(v)) {
            rref_full(&mut rows);
            return rows;
        }
    }
}

/// Entry x packs x·v_j over the basis of each candidate, s bits per candidate.
fn dot_table(r: usize, s: usize, cands: &[Vec<u64>]) -> Vec<u64> {
    (0..1u64 << r)
        .map(|x| {
            cands.iter().enumerate().fold(0u64, |t, (c, basis)| {
                let bits = basis.iter().enumerate().fold(0u64, |b, (j, &v)| {
                    b | ((x & v).count_ones() as u64 & 1) << j
                });
                t | bits << (c * s)
            })
        })
        .collect()
}

fn sampled_greedy(r: usize, s: usize) -> Result<Vec<Vec<u64>>> {
    if s > SAMPLED_MAX_S {
        return budget(format!(
            "subspace union at r={r}, s={s} exceeds the full-greedy cap and sampled rounds need s <= {SAMPLED_MAX_S}"
        ));
    }
    let total = gauss2(r, s);
    if total > super::MAX_STORED_SUBSPACES {
        return budget(format!("{total} target subspaces exceed the store"));
    }
    let deg = 1u128 << (s * (r - s));
    let inv = invertible_table(s);
    let smask = low_mask(s);
    let rmask = low_mask(r);
    let batch = 64 / s;
    // (r−s)-subspaces as packed check matrices: V = ker H
    let mut targets: Vec<u64> = Vec::with_capacity(total as usize);
    for_each_subspace(r, s, |rows| {
        targets.push(
            rows.iter()
                .enumerate()
                .fold(0u64, |p, (i, &h)| p | h << (i * r)),
        );
    })?;
    // V ∩ U = 0 iff H restricted to U is invertible
    let complementary = |table: &[u64], p: u64, c: usize| -> bool {
        let mut m = 0usize;
        for i in 0..s {
            let h = (p >> (i * r)) & rmask;
            m |= (((table[h as usize] >> (c * s)) & smask) as usize) << (i * s);
        }
        inv[m / 64] >> (m % 64) & 1 == 1
    };
    let mut rng = SplitMix64::new(derive_seed(UNION_SEED, (r as u64) << 8 | s as u64));
    let mut chosen: Vec<Vec<u64>> = Vec::new();
    while !targets.is_empty() {
        // every V has deg complements, so some pick covers the average
        let need = (targets.len() as u128 * deg).div_ceil(total);
        let stride = targets.len().div_ceil(SCORE_SAMPLE);
        let best = loop {
            let cands: Vec<Vec<u64>> = (0..batch)
                .map(|_| random_subspace(&mut rng, r, s))
                .collect();
            let table = dot_table(r, s, &cands);
            let mut counts = vec![0u64; batch];
            for &p in targets.iter().step_by(stride) {
                for (c, n) in counts.iter_mut().enumerate() {
                    *n += complementary(&table, p, c) as u64;
                }
            }
            let (c, _) = counts
                .iter()
                .enumerate()
                .max_by_key(|&(c, &n)| (n, std::cmp::Reverse(c)))
                .expect("nonempty batch");
            let table = dot_table(r, s, std::slice::from_ref(&cands[c]));
            let covered = targets
                .iter()
                .filter(|&&p| complementary(&table, p, 0))
                .count();
            if covered as u128 >= need {
                targets.retain(|&p| !complementary(&table, p, 0));
                break cands[c].clone();
            }
        };
        chosen.push(best);
    }
    Ok(chosen)
}

/// Indices (in enumeration order) of the complements of a subspace; exposed
/// for degree checks.
pub fn complement_indices(r: usize, rows: &[u64]) -> Result<Vec<u64>> {
    let d = rows.len();
    let index = SubspaceIndex::new(r, r - d)?;
    let mut out = Vec::new();
    for_each_complement(r, rows, |v| out.push(index.rank(v)));
    Ok(out)
}
