mod common;

use common::{
    dot, generic_oracle, good_oracle, kernel_words, min_weight, span_closure,
    stopping_distance_oracle,
};
use genset::bounds::threshold_n;
use genset::cli::{make_code, random_code, CodeFamily, CodeFamilySpec};
use genset::construct::{
    exact_minimum, exact_minimum_with, greedy_generic_set, greedy_good_set, greedy_parity_check,
    greedy_subspace_union, randomized_search, CoverInstance, ExactOptions, SetKind,
    DEFAULT_UNION_WORK,
};
use genset::gf2::enumerate_flats;

/// Smallest size of a subset of the nonzero vectors of F^r passing `ok`,
/// searched upward from `from` over all subsets.
fn brute_minimum(r: usize, from: usize, ok: impl Fn(&[u64]) -> bool) -> usize {
    let all: Vec<u64> = (1u64..1 << r).collect();
    for size in from..=all.len() {
        let mut pick: u64 = (1u64 << size) - 1;
        while pick < 1u64 << all.len() {
            let members: Vec<u64> = (0..all.len())
                .filter(|&i| pick >> i & 1 == 1)
                .map(|i| all[i])
                .collect();
            if ok(&members) {
                return size;
            }
            let c = pick & pick.wrapping_neg();
            let rr = pick + c;
            pick = (((rr ^ pick) >> 2) / c) | rr;
        }
    }
    unreachable!("the full set always passes")
}

#[test]
fn exact_good_minima_agree_with_brute_force() {
    for (r, s) in [(2, 1), (2, 2), (3, 1), (3, 2), (3, 3), (4, 2)] {
        let out = exact_minimum(r, s, SetKind::Good).unwrap();
        assert!(out.optimal);
        assert!(good_oracle(out.vectors().members(), r, s));
        let brute = brute_minimum(r, 1, |m| good_oracle(m, r, s));
        assert_eq!(out.size, brute, "r={r} s={s}");
    }
}

#[test]
fn exact_generic_minima_agree_with_brute_force() {
    for (r, s) in [(2, 1), (2, 2), (3, 2), (3, 3), (4, 2), (4, 3)] {
        let out = exact_minimum(r, s, SetKind::Generic).unwrap();
        assert!(out.optimal);
        assert!(generic_oracle(out.vectors().members(), r, s));
        let brute = brute_minimum(r, 1, |m| generic_oracle(m, r, s));
        assert_eq!(out.size, brute, "r={r} s={s}");
    }
}

#[test]
fn exact_search_honours_guard_and_budget() {
    assert!(matches!(
        exact_minimum(7, 3, SetKind::Good),
        Err(genset::Error::Budget(_))
    ));
    let opts = ExactOptions {
        node_budget: 3,
        force: false,
    };
    let out = exact_minimum_with(4, 2, SetKind::Good, opts).unwrap();
    assert!(!out.optimal);
    assert!(good_oracle(out.vectors().members(), 4, 2));
}

#[test]
fn greedy_sets_verify_against_oracle() {
    for r in 2..=4 {
        for s in 1..=r {
            let g = greedy_good_set(r, s).unwrap();
            assert!(good_oracle(g.vectors().members(), r, s), "good r={r} s={s}");
            let g = greedy_generic_set(r, s).unwrap();
            assert!(
                generic_oracle(g.vectors().members(), r, s),
                "generic r={r} s={s}"
            );
        }
    }
}

#[test]
fn greedy_sets_meet_covering_bounds() {
    for r in 2..=8 {
        for s in 1..=r.min(4) {
            let good = greedy_good_set(r, s).unwrap();
            assert!(
                (good.size as f64) <= CoverInstance::good(r, s).greedy_bound().max(1.0) || s == r
            );
            let generic = greedy_generic_set(r, s).unwrap();
            let lemma = (1u64 << s) as f64 * (r as f64 * std::f64::consts::LN_2 - (s as f64).ln());
            assert!(
                (generic.size as f64) <= lemma.max(r as f64),
                "generic r={r} s={s}: {}",
                generic.size
            );
        }
    }
}

#[test]
fn greedy_is_deterministic() {
    assert_eq!(
        greedy_good_set(6, 3).unwrap(),
        greedy_good_set(6, 3).unwrap()
    );
    assert_eq!(
        greedy_generic_set(6, 3).unwrap(),
        greedy_generic_set(6, 3).unwrap()
    );
}

#[test]
fn subspace_union_is_a_union_of_subspaces() {
    for (r, s) in [(4, 2), (5, 2), (5, 3), (6, 2)] {
        let out = greedy_subspace_union(r, s, DEFAULT_UNION_WORK).unwrap();
        let mut points = std::collections::BTreeSet::new();
        for b in &out.subspaces {
            assert_eq!(b.nrows(), s);
            assert_eq!(common::rank(b.rows()), s);
            points.extend(span_closure(b.rows()).into_iter().filter(|&x| x != 0));
        }
        let members: Vec<u64> = out.outcome.vectors().members().to_vec();
        assert_eq!(members.len(), points.len());
        assert!(members.iter().all(|m| points.contains(m)));
        if r <= 4 {
            assert!(good_oracle(&members, r, s));
        }
        let limit = 4.0 * ((s * (r - s)) as f64 * std::f64::consts::LN_2 + 1.0);
        assert!((out.subspaces.len() as f64) < limit);
    }
}

#[test]
fn sampled_union_keeps_the_count_guarantee() {
    // a zero work cap forces the sampled path
    let out = greedy_subspace_union(6, 3, 0).unwrap();
    assert!(!out.exhaustive);
    let limit = 4.0 * (9.0 * std::f64::consts::LN_2 + 1.0);
    assert!((out.subspaces.len() as f64) < limit);
    assert_eq!(out, greedy_subspace_union(6, 3, 0).unwrap());
}

#[test]
fn greedy_parity_check_reaches_minimum_distance() {
    let specs = [
        CodeFamilySpec::new(CodeFamily::Hamming, &[3]),
        CodeFamilySpec::new(CodeFamily::ExtendedHamming, &[3]),
        CodeFamilySpec::new(CodeFamily::Hamming, &[4]),
        CodeFamilySpec::new(CodeFamily::Simplex, &[3]),
        CodeFamilySpec::new(CodeFamily::SingleParity, &[6]),
    ];
    let mut codes: Vec<_> = specs.iter().map(|s| make_code(s).unwrap()).collect();
    codes.extend((0..6).map(|i| random_code(10, 5, i).unwrap()));
    for code in codes {
        let out = greedy_parity_check(&code).unwrap();
        let h = out.matrix();
        let duals = kernel_words(code.generator().rows(), code.n());
        assert!(h.rows().iter().all(|r| duals.contains(r)));
        assert_eq!(h.rank(), code.n() - code.k());
        let d = min_weight(&kernel_words(code.parity_check().rows(), code.n())).unwrap();
        assert_eq!(stopping_distance_oracle(h.rows(), code.n()), Some(d));
    }
}

#[test]
fn randomized_search_uses_threshold_size() {
    let a = randomized_search(5, 2, SetKind::Good, 9, 200).unwrap();
    let b = randomized_search(5, 2, SetKind::Good, 9, 200).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.size as u64, threshold_n(SetKind::Good, 5, 2).unwrap().n);
    assert!(!a.optimal);
    let members = a.vectors().members();
    assert!(members.iter().all(|&m| m != 0 && m < 32));
    let g = randomized_search(4, 2, SetKind::Generic, 9, 200).unwrap();
    assert!(generic_oracle(g.vectors().members(), 4, 2));
}

#[test]
fn cover_instances_count_their_hypergraphs() {
    for r in 2..=5 {
        for s in 1..r {
            let c = CoverInstance::good(r, s);
            let flats: Vec<_> = enumerate_flats(r, r - s)
                .unwrap()
                .filter(|f| !f.is_subspace())
                .collect();
            assert_eq!(c.edges, flats.len() as u128);
            assert_eq!(c.edge_degree_min, 1u128 << (r - s));
            // flats through a fixed nonzero point
            let through = flats.iter().filter(|f| f.members().contains(&1)).count() as u128;
            assert_eq!(c.vertex_degree_max, through);
        }
    }
    let u = CoverInstance::subspace_union(4, 2);
    assert_eq!(u.vertices, 35);
    assert_eq!(u.edge_degree_min, 16);
}

#[test]
fn random_codes_are_full_rank_and_seeded() {
    for seed in 0..10 {
        let c = random_code(12, 6, seed).unwrap();
        assert_eq!(c.k(), 6);
        assert_eq!(c, random_code(12, 6, seed).unwrap());
        let g = c.generator().rows();
        assert!(c
            .parity_check()
            .rows()
            .iter()
            .all(|&h| g.iter().all(|&r| dot(r, h) == 0)));
    }
}
