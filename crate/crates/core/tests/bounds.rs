mod common;

use genset::bounds::{
    bias_condition, blocking_lower, bounds_f, bounds_f_with, bounds_g1, cmp_int_float,
    consistency_table, distance_ratio_condition, doubling_length_lower, rate_bounds,
    stopping_redundancy_bounds, threshold_holds_exact, threshold_n, BoundKind, BoundNumber,
    BoundStatus,
};
use genset::construct::SetKind;
use genset::gf2::enumerate_subspaces;
use proptest::prelude::*;
use std::cmp::Ordering;

fn int(rep: &genset::bounds::BoundReport, name: &str) -> u128 {
    match rep
        .get(name)
        .unwrap_or_else(|| panic!("{name} missing"))
        .value
    {
        BoundNumber::Integer(v) => v,
        BoundNumber::Float(f) => panic!("{name} = {f} is not integral"),
    }
}

fn float(rep: &genset::bounds::BoundReport, name: &str) -> f64 {
    rep.get(name)
        .unwrap_or_else(|| panic!("{name} missing"))
        .value
        .as_f64()
}

#[test]
fn thresholds_match_rational_scan() {
    for k in 2..=8 {
        for s in 1..=k.min(4) {
            for kind in [SetKind::Good, SetKind::Generic] {
                let t = threshold_n(kind, k, s).unwrap();
                assert_eq!(
                    t.n,
                    common::threshold_oracle(kind, k, s),
                    "{kind:?} k={k} s={s}"
                );
            }
        }
    }
}

#[test]
fn known_small_values() {
    // (4,2): threshold 10, doubling lower 9, affine lower 7
    let g = bounds_g1(4, 2).unwrap();
    assert_eq!(int(&g, "G1.upper.random_threshold"), 10);
    assert_eq!(int(&g, "G1.lower.doubling_recurrence"), 9);
    assert_eq!(int(&g, "G1.lower.affine_count"), 7);
    assert!((float(&g, "G1.upper.closed_form") - 8.0 / (4.0f64 / 3.0).log2()).abs() < 1e-12);
    // exact values at s = 1, s = k and s = k - 1
    assert_eq!(bounds_g1(5, 1).unwrap().exact(), Some(5));
    assert_eq!(bounds_g1(4, 4).unwrap().exact(), Some(15));
    assert_eq!(bounds_g1(4, 3).unwrap().exact(), Some(14));
    assert_eq!(bounds_f(6, 1).unwrap().exact(), Some(6));
}

#[test]
fn printed_binomial_sum_is_flagged_at_s_two() {
    let f = bounds_f_with(3, 2, Some((3, "search"))).unwrap();
    let printed = f.get("F.upper.binomial_sum.printed").unwrap();
    assert_eq!(printed.value, BoundNumber::Integer(2));
    assert_eq!(printed.status, BoundStatus::Flagged);
    let fixed = f.get("F.upper.binomial_sum.from_zero").unwrap();
    assert_eq!(fixed.status, BoundStatus::CorrectedVariant);
    assert!(fixed.admits(3));
    assert!(!f.consistency_notes.is_empty());
}

#[test]
fn stopping_redundancy_for_hamming() {
    let rho = stopping_redundancy_bounds(7, 4, 3).unwrap();
    assert_eq!(int(&rho, "rho.lower.rank"), 3);
    let cf = float(&rho, "rho.upper.greedy_cover");
    // 2^(d-1)/(d-1) (1 + ln(C(7,1) + C(7,2))) + r - d + 1
    assert!((cf - (2.0 * (1.0 + 28f64.ln()) + 1.0)).abs() < 1e-12);
    assert!((cf - 9.66).abs() < 0.01);
    // smallest t with 7 (1/2)^t + 21 (1/2)^t < 1 is 5; plus r - d + 1 = 1
    assert_eq!(int(&rho, "rho.upper.probabilistic"), 6);
    assert!(stopping_redundancy_bounds(7, 4, 6).is_err());
}

#[test]
fn blocking_lower_matches_exhaustive_search() {
    // smallest sets meeting every (k-s)-subspace of F_2^k, by brute force
    for (k, s) in [(3, 1), (3, 2), (4, 1), (4, 2)] {
        let spaces: Vec<u64> = enumerate_subspaces(k, k - s)
            .unwrap()
            .map(|f| f.members().iter().fold(0u64, |m, &x| m | 1 << x) & !1)
            .collect();
        let best = (1u64..1 << ((1 << k) - 1))
            .map(|p| p << 1)
            .filter(|&p| spaces.iter().all(|&sp| sp & p != 0))
            .map(|p| p.count_ones())
            .min()
            .unwrap();
        assert_eq!(
            blocking_lower(2, k, s).unwrap(),
            best as u128,
            "k={k} s={s}"
        );
    }
    assert_eq!(blocking_lower(3, 4, 2).unwrap(), 13);
    assert!(blocking_lower(6, 4, 2).is_err());
}

#[test]
fn rates_and_conditions() {
    let r = rate_bounds(2, Some(6)).unwrap();
    assert!((float(&r, "rate.lower.random_coding") - (1.0 - 3f64.log2() / 2.0)).abs() < 1e-12);
    assert!(rate_bounds(1, None).is_err());
    assert!(distance_ratio_condition(2, 4, 7).unwrap());
    assert!(!distance_ratio_condition(3, 4, 7).unwrap());
    assert!(bias_condition(2, 0.16).unwrap());
    assert!(!bias_condition(2, 1.0 / 6.0).unwrap());
    assert_eq!(doubling_length_lower(3, 4, 6), 9);
}

#[test]
fn consistency_table_flags_printed_bound() {
    let t = consistency_table(6, 4, 4).unwrap();
    for k in 2..=4 {
        let row = t.row(k, 2).unwrap();
        assert!(
            row.flags
                .iter()
                .any(|f| f.contains("F.upper.binomial_sum.printed")),
            "k={k}"
        );
    }
    for row in &t.rows {
        if let (Some(lo), Some(hi)) = (row.g1.best_lower(), row.g1.best_upper()) {
            assert!(lo <= hi, "G1 k={} s={}", row.k, row.s);
        }
        if let (Some(lo), Some(hi)) = (row.f.best_lower(), row.f.best_upper()) {
            assert!(lo <= hi, "F k={} s={}", row.k, row.s);
        }
    }
    assert_eq!(t.row(3, 2).unwrap().g1.exact(), Some(6));
    assert_eq!(t.row(4, 2).unwrap().g1.exact(), Some(9));
    assert!(t.flag_count() > 0);
}

#[test]
fn reports_keep_value_kinds() {
    let g = bounds_g1(6, 3).unwrap();
    assert!(g.lowers().all(|v| v.kind == BoundKind::Lower));
    assert!(g.uppers().all(|v| v.kind == BoundKind::Upper));
    let json = serde_json::to_value(&g).unwrap();
    assert_eq!(json["parameters"]["k"], 6);
    assert!(json["values"]
        .as_array()
        .unwrap()
        .iter()
        .any(|v| v["value"].is_u64()));
}

proptest! {
    #[test]
    fn threshold_is_minimal(k in 2usize..=8, s in 1usize..=4) {
        prop_assume!(s <= k);
        for kind in [SetKind::Good, SetKind::Generic] {
            let n = threshold_n(kind, k, s).unwrap().n;
            prop_assert!(threshold_holds_exact(kind, k, s, n).unwrap());
            if n > 0 {
                prop_assert!(!threshold_holds_exact(kind, k, s, n - 1).unwrap());
            }
        }
    }

    #[test]
    fn int_float_comparison_is_exact(a in 0u128..1 << 80, f in 0.0f64..1e25) {
        let exact = num_bigint::BigUint::from(a);
        let rational = {
            let bits = f.to_bits();
            let exp = ((bits >> 52) & 0x7ff) as i64;
            let mant = (bits & ((1u64 << 52) - 1)) | if exp == 0 { 0 } else { 1 << 52 };
            let e = if exp == 0 { -1074 } else { exp - 1075 };
            (num_bigint::BigUint::from(mant), e)
        };
        let (m, e) = rational;
        let want = if e >= 0 {
            exact.cmp(&(m << e as usize))
        } else {
            (exact << (-e) as usize).cmp(&m)
        };
        prop_assert_eq!(cmp_int_float(a, f), want);
        if f == f.trunc() && f < 1e20 {
            prop_assert_eq!(cmp_int_float(f as u128, f), Ordering::Equal);
        }
    }
}
