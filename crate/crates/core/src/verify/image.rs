use crate::gf2::{parity, walsh_hadamard};

/// Answers "which b ∈ F^s are hit as Ha, a ∈ A" for s×r check matrices H.
///
/// Small sets are scanned directly. Larger ones use the Walsh spectrum
/// Â(w) = Σ_a (−1)^{w·a}: the number of a with Ha = b is
/// 2^{−s} Σ_c (−1)^{c·b} Â(cH), a transform of length 2^s.
pub(crate) struct ImageOracle<'a> {
    members: &'a [u64],
    spectrum: Option<Vec<i64>>,
}

impl<'a> ImageOracle<'a> {
    pub fn new(r: usize, members: &'a [u64], s: usize) -> Self {
        let spectrum = (r <= 22 && members.len() > 2 << s).then(|| {
            let mut a = vec![0i64; 1 << r];
            for &m in members {
                a[m as usize] = 1;
            }
            walsh_hadamard(&mut a);
            a
        });
        ImageOracle { members, spectrum }
    }

    /// Bit b of the result is set iff some member maps to b.
    pub fn image_mask(&self, h: &[u64]) -> u64 {
        match &self.spectrum {
            Some(spec) => match h.len() {
                1 => spectral_mask::<2>(spec, h),
                2 => spectral_mask::<4>(spec, h),
                3 => spectral_mask::<8>(spec, h),
                4 => spectral_mask::<16>(spec, h),
                5 => spectral_mask::<32>(spec, h),
                _ => spectral_mask::<64>(spec, h),
            },
            None => self.members.iter().fold(0u64, |m, &a| m | 1 << apply(h, a)),
        }
    }
}

/// Image mask from the spectrum, for Q = 2^s.
#[inline]
fn spectral_mask<const Q: usize>(spec: &[i64], h: &[u64]) -> u64 {
    let mut vals = [0i64; Q];
    let mut w = 0u64;
    vals[0] = spec[0];
    for c in 1usize..Q {
        w ^= h[c.trailing_zeros() as usize];
        // Gray order: index the value by the combination it represents
        vals[c ^ (c >> 1)] = spec[w as usize];
    }
    let mut len = 1;
    while len < Q {
        for i in (0..Q).step_by(2 * len) {
            for j in i..i + len {
                let (x, y) = (vals[j], vals[j + len]);
                vals[j] = x + y;
                vals[j + len] = x - y;
            }
        }
        len *= 2;
    }
    let mut m = 0u64;
    for (b, &n) in vals.iter().enumerate() {
        m |= ((n > 0) as u64) << b;
    }
    m
}

/// Packed `Ha`: bit i is h_i · a.
#[inline]
pub(crate) fn apply(h: &[u64], a: u64) -> u64 {
    h.iter()
        .enumerate()
        .fold(0, |acc, (i, &row)| acc | (parity(row & a) << i))
}

/// Mask of the nonzero elements of F^s.
#[inline]
pub(crate) fn nonzero_mask(s: usize) -> u64 {
    if s == 6 {
        u64::MAX - 1
    } else {
        ((1u64 << (1 << s)) - 1) & !1
    }
}
