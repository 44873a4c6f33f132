//! Exact minimum (r,s)-sets and generic sets by branch and bound on the
//! hitting-set formulation.
//!
//! Vertices are the nonzero vectors of F^r (at most 63, one bit each) and an
//! edge is the vertex set of a flat (good) or of a union of s independent
//! cosets (generic). A minimal solution spans F^r and GL(r) permutes edges,
//! so the unit vectors can be forced into the solution.

use std::ops::ControlFlow;

use super::{Construction, SearchOutcome, SetKind};
use crate::error::{budget, param, Result};
use crate::gf2::{for_each_subspace, lex_key, Span};
use crate::verify::{apply, is_generic_set, is_good_set, GenericMethod, GoodMethod, VectorSet};

/// Default node budget for the exact search.
pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactOptions {
    pub node_budget: u64,
    /// Allow dimensions beyond the default guard (r ≤ 5, or r = 6 for good
    /// sets with s ∈ {1, 5, 6}).
    pub force: bool,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            node_budget: DEFAULT_NODE_BUDGET,
            force: false,
        }
    }
}

pub fn exact_minimum(r: usize, s: usize, kind: SetKind) -> Result<SearchOutcome> {
    exact_minimum_with(r, s, kind, ExactOptions::default())
}

/// Smallest (r,s)-set or generic (r,s)-set. When the node budget runs out
/// the best set found is returned with `optimal = false`.
pub fn exact_minimum_with(
    r: usize,
    s: usize,
    kind: SetKind,
    opts: ExactOptions,
) -> Result<SearchOutcome> {
    if s == 0 || s > r {
        return param(format!("need 1 <= s <= r, got r={r}, s={s}"));
    }
    if r > 6 {
        return budget(format!("exact search in dimension {r} exceeds 63 vertices"));
    }
    let guarded = match kind {
        SetKind::Good => r <= 5 || matches!(s, 1 | 5 | 6),
        SetKind::Generic => r <= 5,
    };
    if !guarded && !opts.force {
        return budget(format!(
            "exact {kind:?} search at r={r}, s={s} is beyond the default guard; pass force to try"
        ));
    }
    // vertex i <-> vector i + 1
    let edges = match kind {
        SetKind::Good => good_edges(r, s)?,
        SetKind::Generic => generic_edges(r, s)?,
    };
    let forced = (0..r).fold(0u64, |m, i| m | 1 << ((1u64 << i) - 1));
    let mut solver = Solver::new(edges, forced, opts.node_budget);
    let (mask, optimal) = solver.solve();
    let mut members: Vec<u64> = (0..63)
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| i + 1)
        .collect();
    members.sort_by_key(|&v| lex_key(v, r));
    let set = VectorSet::new(r, members)?;
    let holds = match kind {
        SetKind::Good => is_good_set(&set, s, GoodMethod::Flats)?.holds(),
        SetKind::Generic => is_generic_set(&set, s, GenericMethod::Cosets)?.holds(),
    };
    assert!(holds, "exact search returned an invalid set");
    Ok(SearchOutcome::new(
        Construction::Vectors(set),
        optimal,
        solver.nodes,
        None,
    ))
}

fn good_edges(r: usize, s: usize) -> Result<Vec<u64>> {
    let mut edges = Vec::new();
    for_each_subspace(r, s, |h| {
        let mut by_b = [0u64; 64];
        for x in 1..1u64 << r {
            by_b[apply(h, x) as usize] |= 1 << (x - 1);
        }
        edges.extend_from_slice(&by_b[1..1 << s]);
    })?;
    Ok(edges)
}

/// Every basis of F^s as a bitmask over F^s.
fn bases(s: usize) -> Vec<u64> {
    fn rec(s: usize, start: u64, left: usize, span: &Span, mask: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(mask);
            return;
        }
        for b in start..1u64 << s {
            if span.contains(b) {
                continue;
            }
            let mut next = span.clone();
            next.insert(b);
            rec(s, b + 1, left - 1, &next, mask | 1 << b, out);
        }
    }
    let mut out = Vec::new();
    rec(s, 1, s, &Span::default(), 0, &mut out);
    out
}

fn generic_edges(r: usize, s: usize) -> Result<Vec<u64>> {
    let all = bases(s);
    let mut edges = Vec::new();
    for_each_subspace(r, s, |h| {
        let mut by_b = [0u64; 64];
        for x in 1..1u64 << r {
            by_b[apply(h, x) as usize] |= 1 << (x - 1);
        }
        for &basis in &all {
            let mut e = 0u64;
            let mut m = basis;
            while m != 0 {
                e |= by_b[m.trailing_zeros() as usize];
                m &= m - 1;
            }
            edges.push(e);
        }
    })?;
    Ok(edges)
}

struct Solver {
    edges: Vec<u64>,
    forced: u64,
    budget: u64,
    nodes: u64,
    exhausted: bool,
}

impl Solver {
    fn new(edges: Vec<u64>, forced: u64, budget: u64) -> Self {
        let mut edges: Vec<u64> = edges.into_iter().filter(|&e| e & forced == 0).collect();
        edges.sort_by_key(|e| (e.count_ones(), *e));
        edges.dedup();
        // drop supersets: hitting the subset hits them too
        let mut kept: Vec<u64> = Vec::with_capacity(edges.len());
        for e in edges {
            if !kept.iter().any(|&k| k & e == k) {
                kept.push(e);
            }
        }
        Solver {
            edges: kept,
            forced,
            budget,
            nodes: 0,
            exhausted: false,
        }
    }

    fn greedy(&self) -> u64 {
        let mut chosen = 0u64;
        let mut open: Vec<u64> = self.edges.clone();
        while !open.is_empty() {
            let mut deg = [0u32; 64];
            for &e in &open {
                let mut m = e;
                while m != 0 {
                    deg[m.trailing_zeros() as usize] += 1;
                    m &= m - 1;
                }
            }
            let v = (0..64)
                .max_by_key(|&i| (deg[i], std::cmp::Reverse(i)))
                .expect("nonempty");
            chosen |= 1 << v;
            open.retain(|&e| e >> v & 1 == 0);
        }
        chosen
    }

    /// Returns the best hitting set (including forced vertices) and whether
    /// it is proven minimum.
    fn solve(&mut self) -> (u64, bool) {
        let upper = self.greedy();
        let mut best = upper;
        let edges = self.edges.clone();
        let lb = packing_bound(&edges, 0);
        let mut k = lb;
        while k < best.count_ones() as usize {
            match self.dfs(&edges, 0, 0, k) {
                ControlFlow::Break(Some(found)) => {
                    best = found;
                    break;
                }
                ControlFlow::Break(None) => {
                    self.exhausted = true;
                    break;
                }
                ControlFlow::Continue(()) => k += 1,
            }
        }
        (best | self.forced, !self.exhausted)
    }

    /// Searches for a hitting set of `edges` with at most `k` more vertices,
    /// avoiding `forbidden`.
    fn dfs(
        &mut self,
        edges: &[u64],
        chosen: u64,
        forbidden: u64,
        k: usize,
    ) -> ControlFlow<Option<u64>> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return ControlFlow::Break(None);
        }
        let mut chosen = chosen;
        let mut k = k;
        let mut open: Vec<u64>;
        // unit propagation
        loop {
            open = edges.iter().copied().filter(|&e| e & chosen == 0).collect();
            let mut forced = 0u64;
            for &e in &open {
                let a = e & !forbidden;
                if a == 0 {
                    return ControlFlow::Continue(());
                }
                if a & (a - 1) == 0 {
                    forced |= a;
                }
            }
            if forced == 0 {
                break;
            }
            let n = forced.count_ones() as usize;
            if n > k {
                return ControlFlow::Continue(());
            }
            chosen |= forced;
            k -= n;
        }
        if open.is_empty() {
            return ControlFlow::Break(Some(chosen));
        }
        if k == 0 || packing_bound(&open, forbidden) > k || degree_bound(&open, forbidden) > k {
            return ControlFlow::Continue(());
        }
        let branch = open
            .iter()
            .map(|&e| e & !forbidden)
            .min_by_key(|a| a.count_ones())
            .expect("open edges");
        let mut forb = forbidden;
        let mut m = branch;
        while m != 0 {
            let v = m & m.wrapping_neg();
            m ^= v;
            self.dfs(&open, chosen | v, forb, k - 1)?;
            forb |= v;
        }
        ControlFlow::Continue(())
    }
}

/// Size of a greedy family of pairwise disjoint edges.
fn packing_bound(edges: &[u64], forbidden: u64) -> usize {
    let mut allowed: Vec<u64> = edges.iter().map(|&e| e & !forbidden).collect();
    allowed.sort_by_key(|a| a.count_ones());
    let mut used = 0u64;
    let mut count = 0;
    for a in allowed {
        if a & used == 0 {
            used |= a;
            count += 1;
        }
    }
    count
}

/// Edges divided by the largest vertex degree, rounded up.
fn degree_bound(edges: &[u64], forbidden: u64) -> usize {
    let mut deg = [0usize; 64];
    for &e in edges {
        let mut m = e & !forbidden;
        while m != 0 {
            deg[m.trailing_zeros() as usize] += 1;
            m &= m - 1;
        }
    }
    let max = deg.iter().copied().max().unwrap_or(0);
    if max == 0 {
        usize::MAX
    } else {
        edges.len().div_ceil(max)
    }
}
