use std::ops::ControlFlow;

use serde::Serialize;

use super::certificate::vectors;
use super::{check_rs, is_good_set, Certificate, GoodMethod, VectorSet, Verdict, DEFAULT_WORK_CAP};
use crate::error::{budget, param, Result};
use crate::gf2::{
    bit_positions, derive_seed, gather_bits, lex_key, low_mask, next_combination,
    random_invertible, try_for_each_subspace, BinMatrix, BitVector, Span,
};

pub fn is_swise_intersecting(g: &BinMatrix, s: usize) -> Result<Verdict> {
    is_swise_intersecting_capped(g, s, DEFAULT_WORK_CAP)
}

/// Every s linearly independent codewords of the row space of `g` share a
/// coordinate where all of them are 1.
pub fn is_swise_intersecting_capped(g: &BinMatrix, s: usize, cap: u128) -> Result<Verdict> {
    let k = g.nrows();
    if g.rank() != k {
        return param("generator matrix must have full row rank");
    }
    if s == 0 || s > k {
        return param(format!("need 1 <= s <= k, got k={k}, s={s}"));
    }
    if k > 24 {
        return budget(format!("2^{k} codewords exceed the enumeration cap"));
    }
    let words: Vec<u64> = (0..1u64 << k).map(|m| g.left_mul(m)).collect();
    let n = g.ncols();
    let mut nodes = 0u128;

    fn rec(
        start: u64,
        s: usize,
        words: &[u64],
        span: &Span,
        and: u64,
        chosen: &mut Vec<u64>,
        nodes: &mut u128,
        cap: u128,
    ) -> ControlFlow<Option<Vec<u64>>> {
        *nodes += 1;
        if *nodes > cap {
            return ControlFlow::Break(None);
        }
        if chosen.len() == s {
            return if and == 0 {
                ControlFlow::Break(Some(chosen.clone()))
            } else {
                ControlFlow::Continue(())
            };
        }
        for m in start..words.len() as u64 {
            if span.contains(m) {
                continue;
            }
            let mut next = span.clone();
            next.insert(m);
            chosen.push(m);
            let flow = rec(
                m + 1,
                s,
                words,
                &next,
                and & words[m as usize],
                chosen,
                nodes,
                cap,
            );
            chosen.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }

    let all = low_mask(n);
    match rec(
        1,
        s,
        &words,
        &Span::default(),
        all,
        &mut Vec::new(),
        &mut nodes,
        cap,
    ) {
        ControlFlow::Break(Some(msgs)) => Ok(Verdict::Fails(Certificate::BadTuple {
            vectors: vectors(n, msgs.iter().map(|&m| words[m as usize])),
        })),
        ControlFlow::Break(None) => budget(format!("intersection check exceeded {cap} nodes")),
        ControlFlow::Continue(()) => Ok(Verdict::Holds),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransposeOutcome {
    pub good: Verdict,
    /// `None` when the transpose is rank deficient and so generates no [|A|, r] code.
    pub intersecting: Option<Verdict>,
    pub consistent: bool,
}

/// Checks that A is an (r,s)-set exactly when the code generated by Aᵀ has
/// dimension r and is s-wise intersecting.
pub fn transpose_roundtrip(a: &VectorSet, s: usize) -> Result<TransposeOutcome> {
    let r = a.ambient();
    check_rs(r, s)?;
    if a.len() > 64 {
        return param("transposed set would have more than 64 columns");
    }
    let good = is_good_set(a, s, GoodMethod::Flats)?;
    let intersecting = if a.rank() == r {
        let g = BinMatrix::from_columns(r, a.members())?;
        Some(is_swise_intersecting(&g, s)?)
    } else {
        None
    };
    let rhs = intersecting.as_ref().is_some_and(|v| v.holds());
    Ok(TransposeOutcome {
        consistent: good.holds() == rhs,
        good,
        intersecting,
    })
}

/// Every t rows of `m` show all 2^t patterns among the columns.
pub fn is_covering_array(m: &BinMatrix, t: usize) -> Result<Verdict> {
    let k = m.nrows();
    if t == 0 || t > k {
        return param(format!("need 1 <= t <= k, got k={k}, t={t}"));
    }
    if k > 63 || t > 20 {
        return param("covering-array check supports at most 63 rows and strength 20");
    }
    let cols = m.columns();
    let mut rows_mask = low_mask(t);
    let mut seen = vec![0u64; (1usize << t).div_ceil(64)];
    while rows_mask < 1u64 << k {
        let rows: Vec<usize> = bit_positions(rows_mask).collect();
        seen.iter_mut().for_each(|w| *w = 0);
        for &c in &cols {
            let p = gather_bits(c, &rows) as usize;
            seen[p / 64] |= 1 << (p % 64);
        }
        let missing = (0..1u64 << t)
            .filter(|&p| seen[p as usize / 64] >> (p % 64) & 1 == 0)
            .min_by_key(|&p| lex_key(p, t));
        if let Some(p) = missing {
            return Ok(Verdict::Fails(Certificate::MissingPattern {
                rows: rows.iter().map(|i| i + 1).collect(),
                pattern: BitVector::from_bits(t, p)?,
            }));
        }
        rows_mask = next_combination(rows_mask);
    }
    Ok(Verdict::Holds)
}

/// A meets every (k−s)-subspace of F^k.
pub fn is_subspace_blocking(a: &VectorSet, s: usize) -> Result<Verdict> {
    let k = a.ambient();
    if s == 0 || s >= k {
        return param(format!("need 1 <= s < k, got k={k}, s={s}"));
    }
    let flow = try_for_each_subspace(k, k - s, |rows| {
        let mut span = Span::default();
        rows.iter().for_each(|&r| {
            span.insert(r);
        });
        if a.members().iter().any(|&x| span.contains(x)) {
            ControlFlow::Continue(())
        } else {
            ControlFlow::Break(rows.to_vec())
        }
    })?;
    Ok(match flow {
        ControlFlow::Break(rows) => Verdict::Fails(Certificate::MissedSubspace {
            basis: BinMatrix::new(k, rows)?,
        }),
        ControlFlow::Continue(()) => Verdict::Holds,
    })
}

/// Whether some (s−1)-subset of `cols` shows every (s−1)-tuple among the
/// rows `image`.
pub(crate) fn some_subset_covers(image: &[u64], cols: &[usize]) -> bool {
    let t = cols.len() - 1;
    (0..cols.len()).any(|skip| {
        let sub: Vec<usize> = cols
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &c)| c)
            .collect();
        let mut seen = vec![false; 1 << t];
        image
            .iter()
            .for_each(|&x| seen[gather_bits(x, &sub) as usize] = true);
        seen.iter().all(|&b| b)
    })
}

/// For `trials` random invertible N: every s columns of A·N contain s−1
/// columns exhibiting all 2^{s−1} patterns. Trial `i` uses the matrix
/// `random_invertible(r, derive_seed(seed, i))`.
pub fn generic_column_property(
    a: &VectorSet,
    s: usize,
    trials: usize,
    seed: u64,
) -> Result<Verdict> {
    let r = a.ambient();
    check_rs(r, s)?;
    if trials == 0 {
        return param("need at least one trial");
    }
    if s == 1 {
        return Ok(Verdict::Holds);
    }
    for trial in 0..trials {
        let n = random_invertible(r, derive_seed(seed, trial as u64))?;
        let image: Vec<u64> = a.members().iter().map(|&x| n.left_mul(x)).collect();
        let mut cols_mask = low_mask(s);
        while cols_mask < 1u64 << r {
            let cols: Vec<usize> = bit_positions(cols_mask).collect();
            if !some_subset_covers(&image, &cols) {
                return Ok(Verdict::Fails(Certificate::BadColumns {
                    transform: n,
                    columns: cols.iter().map(|c| c + 1).collect(),
                }));
            }
            cols_mask = next_combination(cols_mask);
        }
    }
    Ok(Verdict::Holds)
}
