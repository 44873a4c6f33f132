mod common;

use common::{dot, gauss2_oracle, rank as rank_oracle, span_closure};
use genset::gf2::{
    enumerate_flats, enumerate_full_rank, enumerate_subspaces, full_rank_count,
    gaussian_coefficient, is_prime_power, lex_key, ordered_bases, random_invertible, span_elements,
    unordered_bases, walsh_hadamard, BinMatrix, BitVector, Flat, Span, SubspaceCursor,
};
use proptest::prelude::*;

fn matrix(cols: usize) -> impl Strategy<Value = BinMatrix> {
    let mask = if cols == 64 {
        u64::MAX
    } else {
        (1u64 << cols) - 1
    };
    prop::collection::vec(any::<u64>().prop_map(move |r| r & mask), 0..8)
        .prop_map(move |rows| BinMatrix::new(cols, rows).unwrap())
}

#[test]
fn text_uses_coordinate_one_as_bit_zero() {
    let v: BitVector = "1100".parse().unwrap();
    assert_eq!(v.bits(), 0b0011);
    assert_eq!(v.to_string(), "1100");
    let m = BinMatrix::parse_text("# comment\n101\n\n011\n").unwrap();
    assert_eq!(m.rows(), &[0b101, 0b110]);
    assert_eq!(m.to_text(), "101\n011\n");
}

#[test]
fn parse_errors_name_the_line() {
    let err = BinMatrix::parse_text("101\n01\n").unwrap_err();
    assert!(matches!(err, genset::Error::Parse { line: 2, .. }));
    assert!(BinMatrix::parse_text("1x1\n").is_err());
    assert!(BinMatrix::parse_text("# nothing\n").is_err());
}

#[test]
fn lex_key_orders_like_strings() {
    let dim = 5;
    let mut by_key: Vec<u64> = (0..32).collect();
    by_key.sort_by_key(|&v| lex_key(v, dim));
    let mut by_text: Vec<u64> = (0..32).collect();
    by_text.sort_by_key(|&v| BitVector::from_bits(dim, v).unwrap().to_string());
    assert_eq!(by_key, by_text);
}

#[test]
fn gaussian_coefficients_match_basis_counts() {
    for m in 0..=10 {
        for k in 0..=m {
            assert_eq!(
                gaussian_coefficient(m as i64, k as i64, 2).unwrap(),
                gauss2_oracle(m, k),
                "m={m} k={k}"
            );
        }
    }
    // 3-subspaces of F_3^5: (3^5-1)(3^5-3)(3^5-9) / ((3^3-1)(3^3-3)(3^3-9))
    assert_eq!(gaussian_coefficient(5, 3, 3).unwrap(), 1210);
    assert!(gaussian_coefficient(4, 5, 2).is_err());
    assert!(gaussian_coefficient(4, 2, 6).is_err());
    assert!(matches!(
        gaussian_coefficient(200, 100, 2),
        Err(genset::Error::Overflow(_))
    ));
}

#[test]
fn prime_powers() {
    let listed: Vec<u64> = (0..30).filter(|&q| is_prime_power(q)).collect();
    assert_eq!(
        listed,
        vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29]
    );
}

#[test]
fn basis_and_full_rank_counts() {
    assert_eq!(ordered_bases(3), 7 * 6 * 4);
    assert_eq!(unordered_bases(3), 28);
    for r in 1..=4 {
        for s in 1..=r {
            let brute = common::full_rank_matrices(r, s).len() as u128;
            assert_eq!(full_rank_count(r, s), Some(brute));
            assert_eq!(
                enumerate_full_rank(r, s, u128::MAX).unwrap().len() as u128,
                brute
            );
        }
    }
    assert!(enumerate_full_rank(6, 3, 10).is_err());
}

#[test]
fn subspace_enumeration_counts_and_distinctness() {
    for m in 1..=5 {
        for k in 0..=m {
            let spaces: Vec<Vec<u64>> = enumerate_subspaces(m, k)
                .unwrap()
                .map(|f| {
                    let mut e = f.members();
                    e.sort();
                    e
                })
                .collect();
            assert_eq!(spaces.len() as u128, gauss2_oracle(m, k));
            let distinct: std::collections::BTreeSet<_> = spaces.iter().cloned().collect();
            assert_eq!(distinct.len(), spaces.len());
            assert!(spaces.iter().all(|e| e.len() == 1 << k));
        }
    }
}

#[test]
fn cursor_agrees_with_enumeration() {
    let mut cursor = SubspaceCursor::new(5, 2).unwrap();
    let mut count = 1;
    while cursor.advance() {
        assert_eq!(rank_oracle(cursor.rows()), 2);
        count += 1;
    }
    assert_eq!(count as u128, gauss2_oracle(5, 2));
}

#[test]
fn nontrivial_cosets_avoid_zero() {
    for m in 2..=4 {
        for k in 0..m {
            let all: Vec<Flat> = enumerate_flats(m, k).unwrap().collect();
            assert_eq!(all.len() as u128, gauss2_oracle(m, k) << (m - k));
            let flats: Vec<&Flat> = all.iter().filter(|f| !f.is_subspace()).collect();
            assert_eq!(
                flats.len() as u128,
                gauss2_oracle(m, k) * ((1u128 << (m - k)) - 1)
            );
            for f in flats {
                let members = f.members();
                assert!(!members.contains(&0));
                assert_eq!(members.len(), 1 << k);
                let base = members[0];
                let diffs: Vec<u64> = members.iter().map(|&x| x ^ base).collect();
                let mut closure = span_closure(&diffs);
                closure.sort();
                let mut sorted = diffs.clone();
                sorted.sort();
                assert_eq!(closure, sorted);
            }
        }
    }
}

#[test]
fn flat_through_point() {
    let f = Flat::through(4, &[0b0011], 0b0100).unwrap();
    assert_eq!(f.dim(), 1);
    assert!(f.contains(&BitVector::from_bits(4, 0b0111).unwrap()));
    assert!(!f.contains(&BitVector::from_bits(4, 0b0011).unwrap()));
}

#[test]
fn walsh_transform_counts_parities() {
    let mut a = vec![0i64; 8];
    for x in [1usize, 2, 7] {
        a[x] = 1;
    }
    let orig = a.clone();
    walsh_hadamard(&mut a);
    for (u, &got) in a.iter().enumerate() {
        let want: i64 = orig
            .iter()
            .enumerate()
            .map(|(x, &v)| if dot(u as u64, x as u64) == 1 { -v } else { v })
            .sum();
        assert_eq!(got, want);
    }
}

#[test]
fn random_invertible_is_invertible_and_seeded() {
    for seed in 0..20 {
        let m = random_invertible(6, seed).unwrap();
        assert_eq!(m.rank(), 6);
        assert_eq!(m, random_invertible(6, seed).unwrap());
    }
}

proptest! {
    #[test]
    fn rank_matches_span_size(m in matrix(10)) {
        prop_assert_eq!(m.rank(), rank_oracle(m.rows()));
    }

    #[test]
    fn rref_preserves_row_space(m in matrix(9)) {
        let rr = m.rank_rref();
        let mut a = span_closure(m.rows());
        let mut b = span_closure(rr.rref.rows());
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
        for (i, &p) in rr.pivot_cols.iter().enumerate() {
            let row = rr.rref.rows()[i];
            prop_assert_eq!(row.trailing_zeros() as usize, p);
            for (j, &other) in rr.rref.rows().iter().enumerate() {
                if j != i {
                    prop_assert_eq!(other >> p & 1, 0);
                }
            }
        }
        prop_assert!(rr.rref.rows()[rr.rank..].iter().all(|&r| r == 0));
    }

    #[test]
    fn nullspace_is_orthogonal_complement(m in matrix(9)) {
        let k = m.nullspace();
        prop_assert_eq!(k.nrows() + m.rank(), 9);
        prop_assert_eq!(k.rank(), k.nrows());
        for &x in k.rows() {
            prop_assert!(m.rows().iter().all(|&r| dot(r, x) == 0));
        }
    }

    #[test]
    fn solve_finds_least_solution(m in matrix(7), b in any::<u64>()) {
        let n = m.nrows();
        let b = BitVector::from_bits(n, b & ((1u64 << n) - 1)).unwrap();
        let brute: Vec<u64> = (0u64..128).filter(|&x| m.mul_vec(x) == b.bits()).collect();
        match m.solve(&b).unwrap() {
            None => prop_assert!(brute.is_empty()),
            Some(x) => {
                let least = brute.iter().copied().min_by_key(|&v| lex_key(v, 7)).unwrap();
                prop_assert_eq!(x.bits(), least);
            }
        }
    }

    #[test]
    fn text_round_trip(m in matrix(13)) {
        prop_assume!(m.nrows() > 0);
        prop_assert_eq!(BinMatrix::parse_text(&m.to_text()).unwrap(), m);
    }

    #[test]
    fn transpose_is_involution(m in matrix(6)) {
        prop_assume!(m.nrows() > 0);
        prop_assert_eq!(m.transpose().transpose(), m.clone());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                prop_assert_eq!(m.get(i, j), m.transpose().get(j, i));
            }
        }
    }

    #[test]
    fn span_insert_tracks_independence(rows in prop::collection::vec(0u64..256, 0..10)) {
        let mut span = Span::default();
        let mut kept = Vec::new();
        for &r in &rows {
            let fresh = span.insert(r);
            prop_assert_eq!(fresh, rank_oracle(&[kept.as_slice(), &[r]].concat()) > kept.len());
            if fresh {
                kept.push(r);
            }
        }
        prop_assert_eq!(span.dim(), rank_oracle(&rows));
        let mut listed = span_elements(&kept);
        listed.sort();
        prop_assert_eq!(listed, span_closure(&rows));
    }
}
