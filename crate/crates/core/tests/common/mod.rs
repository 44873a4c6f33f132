//! Brute-force oracles written against plain `u64` bit arithmetic only.
#![allow(dead_code)]

use genset::construct::SetKind;

pub fn dot(a: u64, b: u64) -> u64 {
    (a & b).count_ones() as u64 & 1
}

/// All elements of the span, by closure.
pub fn span_closure(rows: &[u64]) -> Vec<u64> {
    let mut seen = std::collections::BTreeSet::from([0u64]);
    for &r in rows {
        let cur: Vec<u64> = seen.iter().copied().collect();
        for x in cur {
            seen.insert(x ^ r);
        }
    }
    seen.into_iter().collect()
}

pub fn rank(rows: &[u64]) -> usize {
    span_closure(rows).len().trailing_zeros() as usize
}

/// Column lists of every full-rank r×s matrix (columns as r-bit words).
pub fn full_rank_matrices(r: usize, s: usize) -> Vec<Vec<u64>> {
    let n = 1u64 << r;
    let mut out = Vec::new();
    let mut cols = vec![0u64; s];
    fn rec(i: usize, n: u64, cols: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if i == cols.len() {
            if rank(cols) == cols.len() {
                out.push(cols.clone());
            }
            return;
        }
        for c in 1..n {
            cols[i] = c;
            rec(i + 1, n, cols, out);
        }
    }
    rec(0, n, &mut cols, &mut out);
    out
}

/// aM as an s-bit word, M given by its columns.
pub fn times(a: u64, cols: &[u64]) -> u64 {
    cols.iter()
        .enumerate()
        .fold(0, |acc, (i, &c)| acc | dot(a, c) << i)
}

/// Every s independent forms share a member on which all are 1.
pub fn good_oracle(members: &[u64], r: usize, s: usize) -> bool {
    let ones = (1u64 << s) - 1;
    full_rank_matrices(r, s)
        .iter()
        .all(|m| members.iter().any(|&a| times(a, m) == ones))
}

/// Every full-rank M has a member with wt(aM) = 1.
pub fn generic_oracle(members: &[u64], r: usize, s: usize) -> bool {
    full_rank_matrices(r, s)
        .iter()
        .all(|m| members.iter().any(|&a| times(a, m).count_ones() == 1))
}

/// Every s independent codewords share a coordinate where all are nonzero.
pub fn intersecting_oracle(gen_rows: &[u64], s: usize) -> bool {
    let words: Vec<u64> = span_closure(gen_rows)
        .into_iter()
        .filter(|&w| w != 0)
        .collect();
    fn rec(words: &[u64], start: usize, chosen: &mut Vec<u64>, s: usize) -> bool {
        if chosen.len() == s {
            if rank(chosen) < s {
                return true;
            }
            return chosen.iter().fold(u64::MAX, |acc, &w| acc & w) != 0;
        }
        for i in start..words.len() {
            chosen.push(words[i]);
            let ok = rec(words, i + 1, chosen, s);
            chosen.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    rec(&words, 0, &mut Vec::new(), s)
}

/// Peeling with check rows `rows` on erasure mask `e`; true when every
/// erasure is resolved.
pub fn peel_oracle(rows: &[u64], mut e: u64) -> bool {
    loop {
        if e == 0 {
            return true;
        }
        match rows.iter().find(|&&r| (r & e).count_ones() == 1) {
            Some(&r) => e &= !(r & e),
            None => return false,
        }
    }
}

pub fn is_stopping_oracle(rows: &[u64], e: u64) -> bool {
    e != 0 && rows.iter().all(|&r| (r & e).count_ones() != 1)
}

pub fn stopping_distance_oracle(rows: &[u64], n: usize) -> Option<usize> {
    (1u64..1 << n)
        .filter(|&e| is_stopping_oracle(rows, e))
        .map(|e| e.count_ones() as usize)
        .min()
}

/// Codewords of the code with parity-check rows `h`, by scanning F^n.
pub fn kernel_words(h: &[u64], n: usize) -> Vec<u64> {
    (0u64..1 << n)
        .filter(|&w| h.iter().all(|&r| dot(r, w) == 0))
        .collect()
}

/// Minimum nonzero weight of a word list.
pub fn min_weight(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .filter(|&&w| w != 0)
        .map(|w| w.count_ones() as usize)
        .min()
}

/// Correctable: no nonzero codeword is supported inside `e`.
pub fn correctable_oracle(codewords: &[u64], e: u64) -> bool {
    codewords.iter().all(|&c| c == 0 || c & !e != 0)
}

/// Uniformly random bits from a small xorshift, independent of the library RNG.
pub struct XorShift(pub u64);

impl XorShift {
    pub fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

/// Random subset of the nonzero vectors of F^r, each kept with probability
/// about `keep / 8`, in increasing order.
pub fn random_subset(rng: &mut XorShift, r: usize, keep: u64) -> Vec<u64> {
    (1u64..1 << r).filter(|_| rng.below(8) < keep).collect()
}

/// Random full-row-rank m×n matrix.
pub fn random_full_rank(rng: &mut XorShift, m: usize, n: usize) -> Vec<u64> {
    loop {
        let rows: Vec<u64> = (0..m).map(|_| rng.next() & ((1u64 << n) - 1)).collect();
        if rank(&rows) == m {
            return rows;
        }
    }
}

/// Number of k-subspaces of F_2^m by counting ordered bases.
pub fn gauss2_oracle(m: usize, k: usize) -> u128 {
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= (1u128 << m) - (1u128 << i);
        den *= (1u128 << k) - (1u128 << i);
    }
    num / den
}

/// Threshold by direct rational comparison, scanning N upward.
pub fn threshold_oracle(kind: SetKind, k: usize, s: usize) -> u64 {
    let g = gauss2_oracle(k, s);
    let (a, c) = match kind {
        SetKind::Good => (1u64 << (k - s), g * ((1u128 << s) - 1)),
        SetKind::Generic => {
            let ordered: u128 = (0..s).map(|i| (1u128 << s) - (1u128 << i)).product();
            let fact: u128 = (1..=s as u128).product();
            ((s as u64) << (k - s), g * (ordered / fact))
        }
    };
    let top = 1u64 << k;
    let (mut num, mut den) = (
        num_bigint::BigUint::from(c),
        num_bigint::BigUint::from(1u32),
    );
    if num < den {
        return 0;
    }
    for n in 1..top {
        if top - n <= a {
            return n;
        }
        num *= top - n - a;
        den *= top - n;
        if num < den {
            return n;
        }
    }
    unreachable!()
}
