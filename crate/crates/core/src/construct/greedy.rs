//! Greedy covers of the flat and coset-family hypergraphs.
//!
//! Both engines keep every s-subspace W (as a packed check matrix H) with a
//! small per-W state, and maintain the marginal gain of every vector. After
//! a pick x, the loss of gain at y is a sum over affected W of a function of
//! H y; summing those through the 2^s-point Walsh transform turns the update
//! into one length-2^r transform per round.

use std::sync::OnceLock;

use super::{Construction, SearchOutcome};
use crate::error::{budget, param, Result};
use crate::gf2::{for_each_subspace, gauss2, lex_key, low_mask, walsh_hadamard, Span};
use crate::verify::{
    is_generic_set, is_good_set, nonzero_mask, GenericMethod, GoodMethod, VectorSet,
};

/// Largest number of stored subspaces (about 16 bytes each).
pub const MAX_STORED_SUBSPACES: u128 = 120_000_000;
/// Default dimension guard for greedy constructions.
pub const GREEDY_MAX_R: usize = 12;

struct Store {
    r: usize,
    s: usize,
    /// r·s, where the state starts when stored inline.
    shift: u32,
    rows_mask: u64,
    packed: Vec<u64>,
    /// Per-subspace state; empty when it fits above the rows in `packed`.
    state: Vec<u64>,
}

impl Store {
    fn build(r: usize, s: usize) -> Result<Store> {
        let count = gauss2(r, s);
        if count > MAX_STORED_SUBSPACES || r * s > 64 {
            return budget(format!(
                "{count} subspaces of dimension {s} in F_2^{r} exceed the greedy store"
            ));
        }
        let mut packed = Vec::with_capacity(count as usize);
        for_each_subspace(r, s, |rows| {
            packed.push(
                rows.iter()
                    .enumerate()
                    .fold(0u64, |p, (i, &h)| p | h << (i * r)),
            );
        })?;
        let state = if Store::fits(r, s) {
            Vec::new()
        } else {
            vec![0u64; packed.len()]
        };
        Ok(Store {
            r,
            s,
            shift: (r * s) as u32,
            rows_mask: low_mask(r * s),
            packed,
            state,
        })
    }

    fn fits(r: usize, s: usize) -> bool {
        r * s + (1 << s) <= 64
    }

    #[inline(always)]
    fn get<const IN: bool>(&self, i: usize) -> (u64, u64) {
        let p = self.packed[i];
        if IN {
            (p, p.wrapping_shr(self.shift))
        } else {
            (p, self.state[i])
        }
    }

    #[inline(always)]
    fn put<const IN: bool>(&mut self, i: usize, p: u64, state: u64) {
        if IN {
            self.packed[i] = p & self.rows_mask | state.wrapping_shl(self.shift);
        } else {
            self.packed[i] = p;
            self.state[i] = state;
        }
    }

    fn truncate(&mut self, len: usize) {
        self.packed.truncate(len);
        self.state.truncate(len.min(self.state.len()));
    }

    /// `x` copied into each r-bit lane.
    fn replicate(&self, x: u64) -> u64 {
        (0..self.s).fold(0, |acc, i| acc | x << (i * self.r))
    }
}

/// Parities of the S lanes of `v` (lane width r), as an S-bit word.
#[inline(always)]
fn lane_parities<const S: usize>(v: u64, r: usize) -> usize {
    // bit j of t is the parity of bits 0..=j
    let mut t = v;
    t ^= t << 1;
    t ^= t << 2;
    t ^= t << 4;
    t ^= t << 8;
    t ^= t << 16;
    t ^= t << 32;
    let mut b = 0usize;
    let mut prev = 0u64;
    for i in 0..S {
        // hot loop: wrapping ops keep checked builds fast
        let e = t.wrapping_shr(i.wrapping_mul(r).wrapping_add(r).wrapping_sub(1) as u32) & 1;
        b |= ((e ^ prev) as usize).wrapping_shl(i as u32);
        prev = e;
    }
    b
}

#[inline(always)]
fn lanes<const S: usize>(packed: u64, r: usize) -> [u64; S] {
    let m = low_mask(r);
    std::array::from_fn(|i| packed.wrapping_shr(i.wrapping_mul(r) as u32) & m)
}

/// Adds `delta` at every nonzero point of the row space of `h`.
#[inline(always)]
fn add_span<const S: usize>(acc: &mut [i64], h: &[u64; S], delta: i64) {
    let mut w = 0u64;
    for c in 1usize..1 << S {
        w ^= h[c.trailing_zeros() as usize];
        acc[w as usize] = acc[w as usize].wrapping_add(delta);
    }
}

fn check_dims(r: usize, s: usize) -> Result<()> {
    if s == 0 || s > r {
        return param(format!("need 1 <= s <= r, got r={r}, s={s}"));
    }
    if r > 24 {
        return budget(format!(
            "greedy construction in dimension {r} is beyond desk scale"
        ));
    }
    Ok(())
}

fn lex_order(r: usize) -> Vec<u64> {
    let mut order: Vec<u64> = (1..1u64 << r).collect();
    order.sort_by_key(|&v| lex_key(v, r));
    order
}

/// Highest gain, ties to the lexicographically least vector.
fn pick(order: &[u64], gain: &[i64]) -> Option<u64> {
    let mut best: Option<u64> = None;
    for &v in order {
        if gain[v as usize] > 0 && best.is_none_or(|b| gain[v as usize] > gain[b as usize]) {
            best = Some(v);
        }
    }
    best
}

/// Greedy (r,s)-set: repeatedly add the vector meeting the most flats
/// {x : Hx = b}, b ≠ 0, not met yet.
pub fn greedy_good_set(r: usize, s: usize) -> Result<SearchOutcome> {
    check_dims(r, s)?;
    if s == r {
        // every singleton is an edge
        let set = VectorSet::all_nonzero(r)?;
        return Ok(SearchOutcome::new(
            Construction::Vectors(set),
            false,
            0,
            None,
        ));
    }
    let chosen = match s {
        1 => good_rounds::<1>(r)?,
        2 => good_rounds::<2>(r)?,
        3 => good_rounds::<3>(r)?,
        4 => good_rounds::<4>(r)?,
        5 => good_rounds::<5>(r)?,
        6 => good_rounds::<6>(r)?,
        _ => return param("greedy (r,s)-set construction supports s <= 6 below s = r"),
    };
    let set = VectorSet::new(r, chosen)?;
    let verdict = is_good_set(&set, s, GoodMethod::Flats)?;
    assert!(verdict.holds(), "greedy (r,s)-set failed verification");
    Ok(SearchOutcome::new(
        Construction::Vectors(set),
        false,
        0,
        None,
    ))
}

fn good_rounds<const S: usize>(r: usize) -> Result<Vec<u64>> {
    let store = Store::build(r, S)?;
    if Store::fits(r, S) {
        Ok(good_run::<S, true>(store))
    } else {
        Ok(good_run::<S, false>(store))
    }
}

fn good_run<const S: usize, const IN: bool>(mut store: Store) -> Vec<u64> {
    let r = store.r;
    let n = 1usize << r;
    let full = nonzero_mask(S);
    let start = (gauss2(r, S) - gauss2(r - 1, S)) as i64;
    let mut gain = vec![start; n];
    gain[0] = 0;
    let order = lex_order(r);
    // alive[w]: stored subspaces whose row space contains w
    let mut alive = vec![gauss2(r - 1, S - 1) as i64; n];
    alive[0] = 0;
    let mut acc = vec![0i64; n];
    let mut gone = vec![0i64; n];
    // when most subspaces see a new flat, sum over the others instead
    let mut complement = true;
    let mut chosen = Vec::new();
    while let Some(x) = pick(&order, &gain) {
        chosen.push(x);
        acc.fill(0);
        gone.fill(0);
        let xrep = store.replicate(x);
        let mut events = 0i64;
        let total = store.packed.len() as i64;
        let mut keep = 0;
        for i in 0..store.packed.len() {
            let (p, mut m) = store.get::<IN>(i);
            let b = lane_parities::<S>(p & xrep, r);
            let event = b != 0 && m.wrapping_shr(b as u32) & 1 == 0;
            if event {
                m |= 1u64.wrapping_shl(b as u32);
                events = events.wrapping_add(1);
            }
            // the flat {Hy = b} loses one unit at every y with H(x⊕y) = 0
            if event != complement {
                add_span::<S>(&mut acc, &lanes::<S>(p, r), 1);
            }
            if m != full {
                store.put::<IN>(keep, p, m);
                keep = keep.wrapping_add(1);
            } else {
                add_span::<S>(&mut gone, &lanes::<S>(p, r), 1);
            }
        }
        if complement {
            for w in 1..n {
                acc[w] = alive[w] - acc[w];
            }
        }
        acc[0] = events;
        for w in 1..n {
            alive[w] -= gone[w];
        }
        complement = 2 * events > total;
        store.truncate(keep);
        walsh_hadamard(&mut acc);
        for y in 1..n {
            gain[y] -= acc[y ^ x as usize] >> S;
        }
    }
    chosen
}

/// Unordered bases of F_2^s and derived counting tables, for s ≤ 4.
pub(crate) struct BasisTables {
    pub s: usize,
    /// Each basis as a bitmask over F_2^s (sorted-tuple lexicographic order).
    pub bases: Vec<u32>,
    /// No basis avoids B.
    pub dead: Vec<bool>,
    /// Walsh transform of g[B] − g[B ∪ {b}], indexed by B >> 1, b, then c.
    pub dhat: Vec<[i32; 16]>,
}

impl BasisTables {
    fn build(s: usize) -> BasisTables {
        let q = 1usize << s;
        let mut bases = Vec::new();
        // depth-first in sorted-tuple order
        fn rec(s: usize, start: u64, tuple: &mut Vec<u64>, span: &Span, out: &mut Vec<u32>) {
            if tuple.len() == s {
                out.push(tuple.iter().fold(0u32, |m, &b| m | 1 << b));
                return;
            }
            for b in start..1u64 << s {
                if span.contains(b) {
                    continue;
                }
                let mut next = span.clone();
                next.insert(b);
                tuple.push(b);
                rec(s, b + 1, tuple, &next, out);
                tuple.pop();
            }
        }
        rec(s, 1, &mut Vec::new(), &Span::default(), &mut bases);
        let states = 1usize << (q - 1);
        // g[B][b]: bases avoiding the hit set B that contain b (B indexed by B >> 1)
        let mut g = vec![[0u16; 16]; states];
        let mut dead = vec![true; states];
        for (idx, row) in g.iter_mut().enumerate() {
            let hit = (idx as u32) << 1;
            for &basis in &bases {
                if basis & hit == 0 {
                    dead[idx] = false;
                    for b in crate::gf2::bit_positions(basis as u64) {
                        row[b] += 1;
                    }
                }
            }
        }
        let mut dhat = vec![[0i32; 16]; states * 16];
        for idx in 0..states {
            for b in 1..q {
                if (idx << 1) >> b & 1 == 1 {
                    continue;
                }
                let after = idx | (1 << (b - 1));
                let mut delta = [0i64; 16];
                for c in 0..q {
                    delta[c] = g[idx][c] as i64 - g[after][c] as i64;
                }
                walsh_hadamard(&mut delta[..q]);
                let out = &mut dhat[idx * 16 + b];
                for c in 0..q {
                    out[c] = delta[c] as i32;
                }
            }
        }
        BasisTables {
            s,
            bases,
            dead,
            dhat,
        }
    }

    pub fn get(s: usize) -> &'static BasisTables {
        static TABLES: [OnceLock<BasisTables>; 5] = [
            OnceLock::new(),
            OnceLock::new(),
            OnceLock::new(),
            OnceLock::new(),
            OnceLock::new(),
        ];
        assert!((1..=4).contains(&s));
        TABLES[s].get_or_init(|| BasisTables::build(s))
    }

    pub fn through_each(&self) -> u128 {
        self.bases.len() as u128 * self.s as u128 / ((1u128 << self.s) - 1)
    }
}

/// Greedy generic (r,s)-set: repeatedly add the vector meeting the most
/// not-yet-met unions of s independent cosets (s ≤ 4).
pub fn greedy_generic_set(r: usize, s: usize) -> Result<SearchOutcome> {
    check_dims(r, s)?;
    let chosen = match s {
        1 => generic_rounds::<1>(r)?,
        2 => generic_rounds::<2>(r)?,
        3 => generic_rounds::<3>(r)?,
        4 => generic_rounds::<4>(r)?,
        _ => return param("greedy generic construction supports s <= 4"),
    };
    let set = VectorSet::new(r, chosen)?;
    let verdict = is_generic_set(&set, s, GenericMethod::Cosets)?;
    assert!(verdict.holds(), "greedy generic set failed verification");
    Ok(SearchOutcome::new(
        Construction::Vectors(set),
        false,
        0,
        None,
    ))
}

fn generic_rounds<const S: usize>(r: usize) -> Result<Vec<u64>> {
    let store = Store::build(r, S)?;
    if Store::fits(r, S) {
        Ok(generic_run::<S, true>(store))
    } else {
        Ok(generic_run::<S, false>(store))
    }
}

fn generic_run<const S: usize, const IN: bool>(mut store: Store) -> Vec<u64> {
    let r = store.r;
    let tables = BasisTables::get(S);
    let n = 1usize << r;
    let start = ((gauss2(r, S) - gauss2(r - 1, S)) * tables.through_each()) as i64;
    let mut gain = vec![start; n];
    gain[0] = 0;
    let order = lex_order(r);
    let mut acc = vec![0i64; n];
    let mut chosen = Vec::new();
    while let Some(x) = pick(&order, &gain) {
        chosen.push(x);
        acc.fill(0);
        let xrep = store.replicate(x);
        let mut keep = 0;
        for i in 0..store.packed.len() {
            let (p, mut hit) = store.get::<IN>(i);
            let b = lane_parities::<S>(p & xrep, r);
            if b != 0 && hit.wrapping_shr(b as u32) & 1 == 0 {
                let dh = &tables.dhat[(hit as usize >> 1).wrapping_mul(16).wrapping_add(b)];
                hit |= 1u64.wrapping_shl(b as u32);
                let h = lanes::<S>(p, r);
                let mut w = 0u64;
                acc[0] = acc[0].wrapping_add(dh[0] as i64);
                for c in 1usize..1 << S {
                    w ^= h[c.trailing_zeros() as usize];
                    acc[w as usize] = acc[w as usize].wrapping_add(dh[c ^ (c >> 1)] as i64);
                }
            }
            if !tables.dead[hit as usize >> 1] {
                store.put::<IN>(keep, p, hit);
                keep = keep.wrapping_add(1);
            }
        }
        store.truncate(keep);
        walsh_hadamard(&mut acc);
        for y in 1..n {
            gain[y] -= acc[y] >> S;
        }
    }
    chosen
}
