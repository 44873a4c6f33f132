use super::{Construction, SearchOutcome};
use crate::code::LinearCode;
use crate::erasure::{min_max_distance, smallest_stopping_set};
use crate::error::{budget, param, Result};
use crate::gf2::{lex_key, low_mask, next_combination, span_elements, BinMatrix, Span};

/// Cap on (edges × dual words) for the greedy scan.
const MAX_WORK: u128 = 4_000_000_000;

/// Redundant parity-check matrix with stopping distance d: greedily pick dual
/// words covering the most coordinate sets K (1 ≤ |K| ≤ d−1) on which no
/// chosen word has weight one, ties to the lexicographically least word,
/// then complete to full rank with rows of the RREF dual basis.
pub fn greedy_parity_check(code: &LinearCode) -> Result<SearchOutcome> {
    let (n, k) = (code.n(), code.k());
    let r = n - k;
    if k == 0 {
        return param("the zero code has no minimum distance");
    }
    if r > 20 || n > 63 {
        return budget(format!(
            "dual enumeration of 2^{r} words over {n} coordinates is beyond desk scale"
        ));
    }
    let (d, _) = min_max_distance(code)?;
    if r == 0 {
        let h = BinMatrix::zeros(0, n);
        return Ok(SearchOutcome::new(Construction::Matrix(h), false, 0, None));
    }
    let mut duals: Vec<u64> = span_elements(code.parity_check().rows())
        .into_iter()
        .skip(1)
        .collect();
    duals.sort_by_key(|&u| lex_key(u, n));
    let mut edges = Vec::new();
    for size in 1..d.min(n + 1) {
        let mut e = low_mask(size);
        while e < 1u64 << n {
            edges.push(e);
            e = next_combination(e);
        }
    }
    let work = edges.len() as u128 * duals.len() as u128;
    if work > MAX_WORK {
        return budget(format!(
            "{} edges over {} dual words exceed the scan cap",
            edges.len(),
            duals.len()
        ));
    }
    let meets_once = |u: u64, e: u64| (u & e).count_ones() == 1;
    let mut gain: Vec<u64> = duals
        .iter()
        .map(|&u| edges.iter().filter(|&&e| meets_once(u, e)).count() as u64)
        .collect();
    let mut covered = vec![false; edges.len()];
    let mut rows = Vec::new();
    loop {
        let mut best: Option<usize> = None;
        for i in 0..duals.len() {
            if gain[i] > 0 && best.is_none_or(|b| gain[i] > gain[b]) {
                best = Some(i);
            }
        }
        let Some(b) = best else { break };
        let u = duals[b];
        rows.push(u);
        for (j, &e) in edges.iter().enumerate() {
            if !covered[j] && meets_once(u, e) {
                covered[j] = true;
                for (i, &v) in duals.iter().enumerate() {
                    if meets_once(v, e) {
                        gain[i] -= 1;
                    }
                }
            }
        }
    }
    let mut span = Span::default();
    for &u in &rows {
        span.insert(u);
    }
    let basis = code.parity_check().row_space_basis();
    for &u in basis.rows() {
        if span.insert(u) {
            rows.push(u);
        }
    }
    let h = BinMatrix::new(n, rows)?;
    assert_eq!(h.rank(), r, "parity-check completion lost rank");
    let stop = smallest_stopping_set(&h, d)?.map(|e| e.len());
    assert_eq!(
        stop,
        Some(d),
        "greedy parity check misses the minimum distance"
    );
    Ok(SearchOutcome::new(Construction::Matrix(h), false, 0, None))
}
