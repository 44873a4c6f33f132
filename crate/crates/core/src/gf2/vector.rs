use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest ambient dimension a packed vector can hold.
pub const MAX_DIM: usize = 64;

/// Mask with the low `dim` bits set.
#[inline]
pub fn low_mask(dim: usize) -> u64 {
    if dim >= 64 {
        u64::MAX
    } else {
        (1u64 << dim) - 1
    }
}

/// Sort key realising the lexicographic (string) order of packed vectors:
/// coordinate 1 lives in bit 0 but is the most significant character.
#[inline]
pub fn lex_key(bits: u64, dim: usize) -> u64 {
    if dim == 0 {
        0
    } else {
        bits.reverse_bits() >> (64 - dim)
    }
}

#[inline]
pub fn parity(x: u64) -> u64 {
    (x.count_ones() & 1) as u64
}

/// An element of F_2^m.
///
/// Coordinate `i` (0-based here, 1-based in text) is bit `i` of the packed
/// word, so the leftmost character of the text form is the least
/// significant bit.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct BitVector {
    dim: usize,
    bits: u64,
}

impl BitVector {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        BitVector { dim, bits: 0 }
    }

    pub fn from_bits(dim: usize, bits: u64) -> Result<Self> {
        if dim > MAX_DIM {
            return Err(Error::Parameter(format!(
                "dimension {dim} exceeds {MAX_DIM}"
            )));
        }
        if bits & !low_mask(dim) != 0 {
            return Err(Error::Parameter(format!("bits set beyond dimension {dim}")));
        }
        Ok(BitVector { dim, bits })
    }

    /// Vector with a single one at 0-based coordinate `i`.
    pub fn unit(dim: usize, i: usize) -> Self {
        assert!(i < dim);
        BitVector { dim, bits: 1 << i }
    }

    pub fn ones(dim: usize) -> Self {
        BitVector {
            dim,
            bits: low_mask(dim),
        }
    }

    pub(crate) fn new_unchecked(dim: usize, bits: u64) -> Self {
        debug_assert!(bits & !low_mask(dim) == 0);
        BitVector { dim, bits }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.dim);
        self.bits >> i & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.dim);
        if value {
            self.bits |= 1 << i;
        } else {
            self.bits &= !(1 << i);
        }
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// 0-based indices of the nonzero coordinates, increasing.
    pub fn support(&self) -> Vec<usize> {
        bit_positions(self.bits).collect()
    }

    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        parity(self.bits & other.bits) == 1
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        BitVector {
            dim: self.dim,
            bits: self.bits ^ other.bits,
        }
    }

    pub fn lex_key(&self) -> u64 {
        lex_key(self.bits, self.dim)
    }
}

impl Ord for BitVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim
            .cmp(&other.dim)
            .then_with(|| self.lex_key().cmp(&other.lex_key()))
    }
}

impl PartialOrd for BitVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&bits_to_string(self.bits, self.dim))
    }
}

impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (dim, bits) = parse_bits(s).map_err(|msg| Error::Parse { line: 1, msg })?;
        Ok(BitVector { dim, bits })
    }
}

impl serde::Serialize for BitVector {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for BitVector {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub(crate) fn bits_to_string(bits: u64, dim: usize) -> String {
    (0..dim)
        .map(|i| if bits >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

pub(crate) fn parse_bits(s: &str) -> std::result::Result<(usize, u64), String> {
    if s.len() > MAX_DIM {
        return Err(format!("row longer than {MAX_DIM} characters"));
    }
    let mut bits = 0u64;
    for (i, c) in s.chars().enumerate() {
        match c {
            '0' => {}
            '1' => bits |= 1 << i,
            other => return Err(format!("unexpected character {other:?}")),
        }
    }
    Ok((s.chars().count(), bits))
}

/// Iterates the positions of set bits, lowest first.
pub fn bit_positions(mut x: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            None
        } else {
            let i = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(i)
        }
    })
}

/// Gathers the bits of `x` at `positions` into a dense word (software pext).
pub fn gather_bits(x: u64, positions: &[usize]) -> u64 {
    positions
        .iter()
        .enumerate()
        .fold(0, |acc, (j, &p)| acc | ((x >> p & 1) << j))
}

/// Inverse of [`gather_bits`].
pub fn scatter_bits(x: u64, positions: &[usize]) -> u64 {
    positions
        .iter()
        .enumerate()
        .fold(0, |acc, (j, &p)| acc | ((x >> j & 1) << p))
}

/// Next larger word with the same popcount (Gosper's hack).
#[inline]
pub fn next_combination(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x.wrapping_add(c);
    (((r ^ x) >> 2) / c) | r
}
