use crate::error::{param, Error, Result};

pub fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut x = q;
            while x % p == 0 {
                x /= p;
            }
            return x == 1;
        }
        p += 1;
    }
    true
}

/// Number of `k`-dimensional subspaces of F_q^m, exact in 128 bits.
///
/// Uses the q-Pascal recurrence `[m,k] = [m-1,k-1] + q^k [m-1,k]` on the
/// smaller of `k` and `m-k`, so every intermediate is bounded by the result.
pub fn gaussian_coefficient(m: i64, k: i64, q: u64) -> Result<u128> {
    if k < 0 || k > m {
        return param(format!(
            "gaussian coefficient needs 0 <= k <= m, got m={m}, k={k}"
        ));
    }
    if !is_prime_power(q) {
        return param(format!("q = {q} is not a prime power"));
    }
    let m = m as usize;
    let k = (k as usize).min(m - k as usize);
    let overflow = || {
        Error::Overflow(format!(
            "gaussian coefficient ({m} {k})_{q} exceeds 128 bits"
        ))
    };
    // row[j] holds [i, j] for the current i
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for i in 1..=m {
        for j in (1..=k.min(i)).rev() {
            let qj = (q as u128).checked_pow(j as u32).ok_or_else(overflow)?;
            let term = qj.checked_mul(row[j]).ok_or_else(overflow)?;
            row[j] = row[j - 1].checked_add(term).ok_or_else(overflow)?;
        }
    }
    Ok(row[k])
}

/// Binary Gaussian coefficient, zero when k > m; panics on overflow.
pub(crate) fn gauss2(m: usize, k: usize) -> u128 {
    if k > m {
        return 0;
    }
    gaussian_coefficient(m as i64, k as i64, 2).expect("gaussian coefficient in range")
}

/// Number of ordered bases of F_2^s: ∏_{i<s} (2^s − 2^i).
pub fn ordered_bases(s: usize) -> u128 {
    (0..s).map(|i| (1u128 << s) - (1u128 << i)).product()
}

/// Number of unordered bases of F_2^s.
pub fn unordered_bases(s: usize) -> u128 {
    ordered_bases(s) / (1..=s as u128).product::<u128>()
}

/// Number of full-rank r×s binary matrices: ∏_{i<s} (2^r − 2^i).
pub fn full_rank_count(r: usize, s: usize) -> Option<u128> {
    if r >= 127 {
        return None;
    }
    (0..s).try_fold(1u128, |acc, i| acc.checked_mul((1u128 << r) - (1u128 << i)))
}
