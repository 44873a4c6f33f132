//! Exact GF(2) linear algebra on packed 64-bit words.
//!
//! Coordinate 1 of a vector (the leftmost character in text form) is bit 0
//! of the packed word. Lexicographic order means string order, so coordinate
//! 1 is compared first; see [`lex_key`]. Reduced row-echelon forms take the
//! lowest set bit of each row as its pivot, which makes reduction by an RREF
//! basis return the lexicographically least coset member.

mod gaussian;
mod matrix;
mod rng;
mod subspace;
mod vector;

pub(crate) use gaussian::gauss2;
pub use gaussian::{
    full_rank_count, gaussian_coefficient, is_prime_power, ordered_bases, unordered_bases,
};
pub use matrix::{rank_of, reduce_by_rref, rref_in_place, BinMatrix, RankRref, Span};
pub use rng::{derive_seed, mix64, SplitMix64};
pub(crate) use subspace::next_pivot_set;
pub use subspace::{
    coset_reps, enumerate_flats, enumerate_full_rank, enumerate_subspaces, for_each_subspace,
    random_invertible, try_for_each_full_rank, try_for_each_subspace, Flat, SubspaceCursor,
};
pub use vector::{
    bit_positions, gather_bits, lex_key, low_mask, next_combination, parity, scatter_bits,
    BitVector, MAX_DIM,
};

/// Enumerates all elements of the row space spanned by `rows` (Gray order).
pub fn span_elements(rows: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(1 << rows.len());
    let mut x = 0u64;
    out.push(0);
    for i in 1u64..1 << rows.len() {
        x ^= rows[i.trailing_zeros() as usize];
        out.push(x);
    }
    out
}

/// In-place Walsh–Hadamard transform (unnormalised).
pub fn walsh_hadamard(a: &mut [i64]) {
    let n = a.len();
    debug_assert!(n.is_power_of_two());
    let mut h = 1;
    while h < n {
        for i in (0..n).step_by(2 * h) {
            for j in i..i + h {
                let (x, y) = (a[j], a[j + h]);
                a[j] = x + y;
                a[j + h] = x - y;
            }
        }
        h *= 2;
    }
}
