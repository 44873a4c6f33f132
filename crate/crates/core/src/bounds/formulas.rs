use std::f64::consts::LN_2;

use super::threshold::threshold_n;
use super::{BoundKind, BoundNumber, BoundReport, BoundValue};
use crate::construct::SetKind;
use crate::error::{param, Result};
use crate::gf2::{gaussian_coefficient, is_prime_power};

use BoundKind::{Constant, Exact, Lower, Upper};
use BoundNumber::{Float, Integer};

/// Lower constant for n(k,2)/k as k grows.
pub const C1: f64 = 3.53;
/// Upper constant for n(k,2): n(k,2) < C2·k − 2.
pub const C2: f64 = 2.0 / (2.0 - 1.584_962_500_721_156_2);

fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn log2_factorial(s: usize) -> f64 {
    (2..=s).map(|i| (i as f64).log2()).sum()
}

fn check(k: usize, s: usize) -> Result<()> {
    if s == 0 || s > k {
        return param(format!("need 1 <= s <= k, got k={k}, s={s}"));
    }
    if k > 40 {
        return param(format!("bounds in dimension {k} are out of range"));
    }
    Ok(())
}

pub fn bounds_f(r: usize, s: usize) -> Result<BoundReport> {
    bounds_f_with(r, s, None)
}

/// Bounds on F(r,s), the minimum size of a generic (r,s)-set. `exact`
/// (value, source) adds a computed exact value to check against.
pub fn bounds_f_with(r: usize, s: usize, exact: Option<(u128, &str)>) -> Result<BoundReport> {
    let mut rep = f_values(r, s, exact)?;
    rep.finalize();
    Ok(rep)
}

pub(crate) fn f_values(r: usize, s: usize, exact: Option<(u128, &str)>) -> Result<BoundReport> {
    check(r, s)?;
    let mut rep = BoundReport::new("F", &[("r", r as u64), ("s", s as u64)]);
    let (ru, su) = (r as u64, s as u64);
    if s >= 2 {
        let printed: u128 = (1..su).map(|i| binom(ru - 1, i)).sum();
        rep.push(BoundValue::new(
            "F.upper.binomial_sum.printed",
            Upper,
            Integer(printed),
            "2 <= s <= r; sum over i = 1..s-1",
        ));
        rep.push(
            BoundValue::new(
                "F.upper.binomial_sum.from_zero",
                Upper,
                Integer(printed + 1),
                "2 <= s <= r; sum over i = 0..s-1",
            )
            .variant(),
        );
    }
    rep.push(BoundValue::new(
        "F.lower.dimension",
        Lower,
        Integer(r as u128),
        "1 <= s <= r",
    ));
    let rc = (r * s) as f64 / -(1.0 - s as f64 / (1u64 << s) as f64).log2();
    rep.push(BoundValue::new("F.upper.random_coding", Upper, Float(rc), "1 <= s <= r").base("2"));
    rep.push(BoundValue::new(
        "F.lower.hyperplane_count",
        Lower,
        Integer((1u128 << (s - 1)) + (r - s) as u128),
        "1 <= s <= r",
    ));
    if s >= 4 && s < r {
        let half = s / 2;
        let v = (1u128 << (half - 1)) * (r - s + 2) as u128 - 1;
        rep.push(BoundValue::new(
            "F.lower.half_dimension",
            Lower,
            Integer(v),
            "4 <= s <= r-1; G1 form (one below the G form)",
        ));
        let (k2, s2) = (r - s.div_ceil(2), half);
        if s2 >= 2 && s2 < k2 {
            let q = 1u128 << (s2 - 2);
            let v = 3 * q * (k2 - s2) as u128 + 5 * q - 2;
            rep.push(BoundValue::new(
                "F.lower.half_dimension_doubling",
                Lower,
                Integer(v),
                "4 <= s <= r-1; doubling bound on G1(r - ceil(s/2), floor(s/2))",
            ));
        }
    }
    if s == 4 && r >= 5 {
        rep.push(BoundValue::new(
            "F.lower.four_wise",
            Lower,
            Integer(3 * (r as u128 - 3)),
            "s = 4, r >= 5",
        ));
    }
    if s >= 2 && s < r {
        let cf =
            ((s * r) as f64 - log2_factorial(s)) / -(1.0 - s as f64 / (1u64 << s) as f64).log2();
        rep.push(
            BoundValue::new("F.upper.closed_form", Upper, Float(cf), "2 <= s < r")
                .strict()
                .base("2"),
        );
        let t = threshold_n(SetKind::Generic, r, s)?;
        rep.push(BoundValue::new(
            "F.upper.random_threshold",
            Upper,
            Integer(t.n as u128),
            "2 <= s < r",
        ));
    }
    let gc = (1u64 << s) as f64 * (r as f64 * LN_2 - (s as f64).ln());
    rep.push(BoundValue::new("F.upper.greedy_cover", Upper, Float(gc), "1 <= s <= r").base("e"));
    if s == 1 {
        rep.push(BoundValue::new(
            "F.exact.single_erasure",
            Exact,
            Integer(r as u128),
            "s = 1: the set must span",
        ));
    }
    if let Some((x, source)) = exact {
        rep.push(BoundValue::new(
            &format!("F.exact.{source}"),
            Exact,
            Integer(x),
            "computed",
        ));
    }
    Ok(rep)
}

pub fn bounds_g1(k: usize, s: usize) -> Result<BoundReport> {
    bounds_g1_with(k, s, None)
}

/// Bounds on G₁(k,s) = n(k,s), the minimum size of a (k,s)-set.
pub fn bounds_g1_with(k: usize, s: usize, exact: Option<(u128, &str)>) -> Result<BoundReport> {
    let mut rep = g1_values(k, s, exact)?;
    rep.finalize();
    Ok(rep)
}

pub(crate) fn g1_values(k: usize, s: usize, exact: Option<(u128, &str)>) -> Result<BoundReport> {
    check(k, s)?;
    let mut rep = BoundReport::new("G1", &[("k", k as u64), ("s", s as u64)]);
    rep.push(BoundValue::new(
        "G1.lower.affine_count",
        Lower,
        Integer((1u128 << (s - 1)) * (k - s + 2) as u128 - 1),
        "1 <= s <= k",
    ));
    let denom = -(1.0 - 1.0 / (1u64 << s) as f64).log2();
    let rc = ((k * s) as f64 - log2_factorial(s)) / denom;
    rep.push(BoundValue::new("G1.upper.random_coding", Upper, Float(rc), "1 <= s <= k").base("2"));
    if s >= 2 && s < k {
        let q = 1u128 << (s - 2);
        rep.push(BoundValue::new(
            "G1.lower.doubling_recurrence",
            Lower,
            Integer(3 * q * (k - s) as u128 + 5 * q - 2),
            "2 <= s <= k-1",
        ));
        let t = threshold_n(SetKind::Good, k, s)?;
        rep.push(BoundValue::new(
            "G1.upper.random_threshold",
            Upper,
            Integer(t.n as u128),
            "2 <= s < k",
        ));
        let cf = (((k - s + 1) * s + 2) as f64) / denom;
        rep.push(
            BoundValue::new("G1.upper.closed_form", Upper, Float(cf), "2 <= s < k")
                .strict()
                .base("2"),
        );
        let count = 4.0 * ((s * (k - s)) as f64 * LN_2 + 1.0);
        // fewer than `count` subspaces, each with 2^s - 1 nonzero vectors
        let subspaces = count.ceil() as u128 - 1;
        rep.push(
            BoundValue::new(
                "G1.upper.subspace_union",
                Upper,
                Integer(subspaces * ((1u128 << s) - 1)),
                "2 <= s < k",
            )
            .base("e"),
        );
    }
    if s >= 2 {
        let gc = (1u64 << s) as f64 * ((s * (k - s)) as f64 * LN_2 + 2.0 * LN_2 + 1.0);
        rep.push(
            BoundValue::new("G1.upper.greedy_cover", Upper, Float(gc), "2 <= s <= k")
                .strict()
                .base("e"),
        );
    }
    if s == 2 {
        rep.push(
            BoundValue::new(
                "G1.upper.linear_s2",
                Upper,
                Float(C2 * k as f64 - 2.0),
                "s = 2",
            )
            .strict(),
        );
        rep.push(BoundValue::new(
            "G1.constant.c1",
            Constant,
            Float(C1),
            "s = 2, asymptotic lower slope",
        ));
        rep.push(
            BoundValue::new("G1.constant.c2", Constant, Float(C2), "s = 2, upper slope").base("2"),
        );
    }
    if s == 1 {
        rep.push(BoundValue::new(
            "G1.exact.single",
            Exact,
            Integer(k as u128),
            "s = 1",
        ));
    } else if s == k {
        rep.push(BoundValue::new(
            "G1.exact.full",
            Exact,
            Integer((1u128 << k) - 1),
            "s = k",
        ));
    } else if s + 1 == k {
        rep.push(BoundValue::new(
            "G1.exact.codim_one",
            Exact,
            Integer((1u128 << k) - 2),
            "s = k-1",
        ));
    }
    if let Some((x, source)) = exact {
        rep.push(BoundValue::new(
            &format!("G1.exact.{source}"),
            Exact,
            Integer(x),
            "computed",
        ));
    }
    Ok(rep)
}

/// Bounds on the stopping redundancy of an [n,k,d] code.
pub fn stopping_redundancy_bounds(n: usize, k: usize, d: usize) -> Result<BoundReport> {
    if n == 0 || n > 63 || k > n || d == 0 || d > n - k + 1 {
        return param(format!(
            "need 1 <= d <= n-k+1 <= n <= 63, got n={n}, k={k}, d={d}"
        ));
    }
    let r = n - k;
    let mut rep = BoundReport::new("rho", &[("n", n as u64), ("k", k as u64), ("d", d as u64)]);
    rep.push(BoundValue::new(
        "rho.lower.rank",
        Lower,
        Integer(r as u128),
        "always",
    ));
    if d >= 2 && r >= 1 {
        let printed: u128 = (1..=d as u64 - 2).map(|i| binom(r as u64 - 1, i)).sum();
        rep.push(BoundValue::new(
            "rho.upper.binomial_sum.printed",
            Upper,
            Integer(printed),
            "d >= 2; sum over i = 1..d-2",
        ));
        rep.push(
            BoundValue::new(
                "rho.upper.binomial_sum.from_zero",
                Upper,
                Integer(printed + 1),
                "d >= 2; sum over i = 0..d-2",
            )
            .variant(),
        );
        if d == 2 {
            rep.note("rho.upper.binomial_sum.printed: empty sum at d = 2");
        }
    }
    if d >= 2 {
        let t = probabilistic_t(n, d);
        rep.push(BoundValue::new(
            "rho.upper.probabilistic",
            Upper,
            Integer(t + (r + 1 - d) as u128),
            "d >= 2; minimal t plus r - d + 1",
        ));
        let sum: u128 = (1..d as u64).map(|i| binom(n as u64, i)).sum();
        let denom = -(1.0 - (d - 1) as f64 / (1u64 << (d - 1)) as f64).log2();
        let cf = (sum as f64).log2() / denom + (r + 1 - d) as f64;
        rep.push(
            BoundValue::new(
                "rho.upper.probabilistic_closed_form",
                Upper,
                Float(cf),
                "d >= 2",
            )
            .base("2"),
        );
    } else {
        rep.note("rho.upper.probabilistic: inapplicable at d = 1 (empty sum)");
        rep.note("rho.upper.probabilistic_closed_form: inapplicable at d = 1");
    }
    if d >= 3 {
        let sum: u128 = (1..d as u64).map(|i| binom(n as u64, i)).sum();
        let v = (1u64 << (d - 1)) as f64 / (d - 1) as f64 * (1.0 + (sum as f64).ln())
            + (r + 1 - d) as f64;
        rep.push(
            BoundValue::new("rho.upper.greedy_cover", Upper, Float(v), "d >= 3")
                .strict()
                .base("e"),
        );
    } else {
        rep.note("rho.upper.greedy_cover: stated for d >= 3");
    }
    rep.finalize();
    Ok(rep)
}

/// Minimal t with Σ_{i=1}^{d−1} C(n,i) (1 − i/2^i)^t < 1, decided exactly:
/// Σ C(n,i) (2^i − i)^t 2^{(d−1−i)t} < 2^{(d−1)t}.
fn probabilistic_t(n: usize, d: usize) -> u128 {
    use num_bigint::BigUint;
    let m = d - 1;
    let mut terms: Vec<BigUint> = (1..=m)
        .map(|i| BigUint::from(binom(n as u64, i as u64)))
        .collect();
    let steps: Vec<BigUint> = (1..=m)
        .map(|i| BigUint::from((1u64 << i) - i as u64) << (m - i))
        .collect();
    let mut rhs = BigUint::from(1u32);
    let mut t = 0u128;
    loop {
        let lhs: BigUint = terms.iter().sum();
        if lhs < rhs {
            return t;
        }
        for (term, step) in terms.iter_mut().zip(&steps) {
            *term *= step;
        }
        rhs <<= m;
        t += 1;
    }
}

/// Rate bounds for s-wise intersecting codes; `k` adds the finite-k rate.
pub fn rate_bounds(s: usize, k: Option<usize>) -> Result<BoundReport> {
    if !(2..=30).contains(&s) {
        return param(format!("rate bounds need 2 <= s <= 30, got {s}"));
    }
    let mut params = vec![("s", s as u64)];
    if let Some(k) = k {
        params.push(("k", k as u64));
    }
    let mut rep = BoundReport::new("rate", &params);
    let p = |e: usize| (1u128 << e) as f64;
    let concat = (2f64.powi(1 - s as i32) - 1.0 / (p(2 * s + 1) - 1.0)) * (2 * s + 1) as f64
        / (p(2 * s) - 1.0);
    rep.push(BoundValue::new(
        "rate.lower.concatenated",
        Lower,
        Float(concat),
        "s >= 2; constructive",
    ));
    let rs = 1.0 - (p(s) - 1.0).log2() / s as f64;
    rep.push(
        BoundValue::new(
            "rate.lower.random_coding",
            Lower,
            Float(rs),
            "s >= 2; nonconstructive",
        )
        .base("2"),
    );
    if let Some(k) = k {
        if k <= s {
            return param(format!("finite-k rate needs s < k, got k={k}, s={s}"));
        }
        let v = k as f64 / (k - s + 2) as f64 * rs;
        rep.push(
            BoundValue::new("rate.lower.finite_length", Lower, Float(v), "2 <= s < k").base("2"),
        );
    }
    let table = [(2, 0.28), (3, 0.108), (4, 0.046), (5, 0.021), (6, 0.0099)];
    if let Some(&(_, v)) = table.iter().find(|&&(t, _)| t == s) {
        rep.push(BoundValue::new(
            "rate.upper.lp_recursion",
            Constant,
            Float(v),
            "2 <= s <= 6; asymptotic",
        ));
    }
    rep.finalize();
    Ok(rep)
}

/// Minimum size of a point set meeting every (k−s)-subspace of F_q^k: the
/// points of an (s+1)-subspace, (q^{s+1} − 1)/(q − 1).
pub fn blocking_lower(q: u64, k: usize, s: usize) -> Result<u128> {
    if !is_prime_power(q) {
        return param(format!("{q} is not a prime power"));
    }
    if s == 0 || s >= k {
        return param(format!("need 1 <= s < k, got k={k}, s={s}"));
    }
    // (s+1 choose 1)_q
    gaussian_coefficient(s as i64 + 1, 1, q)
}

/// Sufficient condition for s-wise intersection from the minimum distance d
/// and maximum distance D: d > D(1 − 2^{1−s}).
pub fn distance_ratio_condition(s: usize, d: u64, max_d: u64) -> Result<bool> {
    if s < 1 || s > 60 || d > max_d {
        return param(format!(
            "need 1 <= s <= 60 and d <= D, got s={s}, d={d}, D={max_d}"
        ));
    }
    let p = 1u128 << (s - 1);
    Ok(d as u128 * p > max_d as u128 * (p - 1))
}

/// Sufficient bias for s-wise intersection: ε < 1/(2^{s+1} − 2).
pub fn bias_condition(s: usize, eps: f64) -> Result<bool> {
    if !(1..=60).contains(&s) || !eps.is_finite() || eps < 0.0 {
        return param(format!(
            "need 1 <= s <= 60 and a finite eps >= 0, got s={s}, eps={eps}"
        ));
    }
    Ok(eps * (((1u128 << (s + 1)) - 2) as f64) < 1.0)
}

/// Length lower bound for an s-wise intersecting [n,k,d] code with maximum
/// distance D, given n(k−1, s−1): 2·n(k−1,s−1) + D − d + 1.
pub fn doubling_length_lower(prev: u128, d: u64, max_d: u64) -> u128 {
    2 * prev + (max_d - d) as u128 + 1
}
