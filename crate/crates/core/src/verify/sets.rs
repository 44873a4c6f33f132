use std::ops::ControlFlow;

use super::certificate::vectors;
use super::image::{apply, nonzero_mask, ImageOracle};
use super::{
    check_rs, Certificate, GenericMethod, GoodMethod, VectorSet, Verdict, DEFAULT_WORK_CAP,
};
use crate::error::{budget, param, Result};
use crate::gf2::{
    full_rank_count, gauss2, lex_key, parity, try_for_each_full_rank, try_for_each_subspace,
    BinMatrix, BitVector, Span,
};

const MAX_IMAGE_S: usize = 6;

pub fn is_good_set(a: &VectorSet, s: usize, method: GoodMethod) -> Result<Verdict> {
    is_good_set_capped(a, s, method, DEFAULT_WORK_CAP)
}

pub fn is_generic_set(a: &VectorSet, s: usize, method: GenericMethod) -> Result<Verdict> {
    is_generic_set_capped(a, s, method, DEFAULT_WORK_CAP)
}

pub fn is_good_set_capped(
    a: &VectorSet,
    s: usize,
    method: GoodMethod,
    cap: u128,
) -> Result<Verdict> {
    let r = a.ambient();
    check_rs(r, s)?;
    match method {
        GoodMethod::Definition => {
            let tuples = (1..=s as u32).fold(1u128, |acc, i| {
                acc.saturating_mul((1u128 << r) - 1) / i as u128
            });
            let work = tuples.saturating_mul(1 + a.len() as u128 / 64);
            if work > cap {
                return budget(format!(
                    "definition method at r={r}, s={s} needs about {work} steps"
                ));
            }
            Ok(good_by_definition(a, s))
        }
        GoodMethod::Flats => {
            check_subspace_work(r, s, cap)?;
            good_by_flats(a, s)
        }
    }
}

pub fn is_generic_set_capped(
    a: &VectorSet,
    s: usize,
    method: GenericMethod,
    cap: u128,
) -> Result<Verdict> {
    let r = a.ambient();
    check_rs(r, s)?;
    match method {
        GenericMethod::Matrices => {
            let work = full_rank_count(r, s)
                .unwrap_or(u128::MAX)
                .saturating_mul(a.len() as u128 + 1);
            if work > cap {
                return budget(format!(
                    "matrix method at r={r}, s={s} needs about {work} steps"
                ));
            }
            Ok(generic_by_matrices(a, s))
        }
        GenericMethod::Cosets => {
            check_subspace_work(r, s, cap)?;
            generic_by_subspaces(a, s, false)
        }
        GenericMethod::Hyperplanes => {
            check_subspace_work(r, s, cap)?;
            generic_by_subspaces(a, s, true)
        }
    }
}

fn check_subspace_work(r: usize, s: usize, cap: u128) -> Result<()> {
    if s > MAX_IMAGE_S {
        return param(format!("subspace methods support s <= {MAX_IMAGE_S}"));
    }
    if r > 24 {
        return budget(format!(
            "subspace enumeration in dimension {r} is beyond desk scale"
        ));
    }
    let work = gauss2(r, s).saturating_mul((1u128 << s) * (s as u128 + 2));
    if work > cap {
        return budget(format!(
            "subspace enumeration at r={r}, s={s} needs about {work} steps"
        ));
    }
    Ok(())
}

/// DFS over sorted independent s-tuples of nonzero forms (lexicographic),
/// tracking the members that evaluate to 1 on every chosen form.
fn good_by_definition(a: &VectorSet, s: usize) -> Verdict {
    let r = a.ambient();
    let mut forms: Vec<u64> = (1..1u64 << r).collect();
    forms.sort_by_key(|&v| lex_key(v, r));
    let words = a.len().div_ceil(64);
    let all: Vec<u64> = (0..words)
        .map(|w| {
            let n = (a.len() - 64 * w).min(64);
            crate::gf2::low_mask(n)
        })
        .collect();
    // masks[f][w]: members on which form f evaluates to 1
    let masks: Vec<Vec<u64>> = forms
        .iter()
        .map(|&f| {
            let mut m = vec![0u64; words];
            for (i, &x) in a.members().iter().enumerate() {
                if parity(f & x) == 1 {
                    m[i / 64] |= 1 << (i % 64);
                }
            }
            m
        })
        .collect();

    fn rec(
        start: usize,
        s: usize,
        forms: &[u64],
        masks: &[Vec<u64>],
        cand: &[u64],
        span: &Span,
        chosen: &mut Vec<u64>,
    ) -> ControlFlow<Vec<u64>> {
        if chosen.len() == s {
            if cand.iter().all(|&w| w == 0) {
                return ControlFlow::Break(chosen.clone());
            }
            return ControlFlow::Continue(());
        }
        for i in start..forms.len() {
            if forms.len() - i < s - chosen.len() {
                break;
            }
            let f = forms[i];
            if span.contains(f) {
                continue;
            }
            let mut next = span.clone();
            next.insert(f);
            let c: Vec<u64> = cand.iter().zip(&masks[i]).map(|(x, y)| x & y).collect();
            chosen.push(f);
            let flow = rec(i + 1, s, forms, masks, &c, &next, chosen);
            chosen.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }

    match rec(
        0,
        s,
        &forms,
        &masks,
        &all,
        &Span::default(),
        &mut Vec::new(),
    ) {
        ControlFlow::Break(tuple) => Verdict::Fails(Certificate::BadTuple {
            vectors: vectors(r, tuple),
        }),
        ControlFlow::Continue(()) => Verdict::Holds,
    }
}

/// Rewrites the system Hx = b (b ≠ 0) as v_j · x = 1 with v_j spanning the
/// same row space.
pub(crate) fn normalise_to_ones(h: &[u64], b: u64) -> Vec<u64> {
    let i0 = b.trailing_zeros() as usize;
    h.iter()
        .enumerate()
        .map(|(j, &row)| if b >> j & 1 == 1 { row } else { row ^ h[i0] })
        .collect()
}

fn good_by_flats(a: &VectorSet, s: usize) -> Result<Verdict> {
    let r = a.ambient();
    let oracle = ImageOracle::new(r, a.members(), s);
    let want = nonzero_mask(s);
    let flow = try_for_each_subspace(r, s, |h| {
        let missing = want & !oracle.image_mask(h);
        if missing == 0 {
            return ControlFlow::Continue(());
        }
        let b = crate::gf2::bit_positions(missing)
            .map(|b| b as u64)
            .min_by_key(|&b| lex_key(b, s))
            .expect("nonempty");
        ControlFlow::Break(normalise_to_ones(h, b))
    })?;
    Ok(match flow {
        ControlFlow::Break(checks) => Verdict::Fails(Certificate::MissedFlat {
            checks: vectors(r, checks),
        }),
        ControlFlow::Continue(()) => Verdict::Holds,
    })
}

fn generic_by_matrices(a: &VectorSet, s: usize) -> Verdict {
    let r = a.ambient();
    let flow = try_for_each_full_rank(r, s, |cols| {
        if a.members()
            .iter()
            .any(|&x| apply(cols, x).count_ones() == 1)
        {
            ControlFlow::Continue(())
        } else {
            ControlFlow::Break(cols.to_vec())
        }
    });
    match flow {
        ControlFlow::Break(cols) => Verdict::Fails(Certificate::BadMatrix {
            matrix: BinMatrix::from_columns(r, &cols).expect("columns fit"),
        }),
        ControlFlow::Continue(()) => Verdict::Holds,
    }
}

/// Least independent family (sorted by packed value) inside the nonzero
/// vectors of F^s missed by `image`, if the missed vectors span F^s.
/// Matroid greedy gives the lexicographically first basis.
pub(crate) fn first_missed_basis(image: u64, s: usize) -> Option<Vec<u64>> {
    let missed = nonzero_mask(s) & !image;
    let mut span = Span::default();
    let mut basis = Vec::with_capacity(s);
    for b in crate::gf2::bit_positions(missed) {
        if span.insert(b as u64) {
            basis.push(b as u64);
            if basis.len() == s {
                return Some(basis);
            }
        }
    }
    None
}

/// M = Hᵀ·B⁻¹ for the rows `h` of H and a basis B of missed images: aM has
/// weight one exactly when aHᵀ is a row of B, which no member achieves.
fn failing_matrix(r: usize, h: &[u64], basis: &[u64]) -> BinMatrix {
    let s = basis.len();
    let b = BinMatrix::new(s, basis.to_vec()).expect("basis fits");
    let cols: Vec<u64> = (0..s)
        .map(|i| {
            let e = BitVector::unit(s, i);
            let x = b
                .solve(&e)
                .expect("shapes match")
                .expect("basis is invertible");
            h.iter()
                .enumerate()
                .filter(|&(j, _)| x.get(j))
                .fold(0u64, |m, (_, &row)| m ^ row)
        })
        .collect();
    BinMatrix::from_columns(r, &cols).expect("columns fit")
}

fn hyperplane_masks(s: usize) -> Vec<u64> {
    (1..1u64 << s)
        .map(|u| (0..1u64 << s).fold(0u64, |m, x| if parity(u & x) == 1 { m | 1 << x } else { m }))
        .collect()
}

fn generic_by_subspaces(a: &VectorSet, s: usize, hyperplanes: bool) -> Result<Verdict> {
    let r = a.ambient();
    let oracle = ImageOracle::new(r, a.members(), s);
    let planes = hyperplane_masks(s);
    let flow = try_for_each_subspace(r, s, |h| {
        let image = oracle.image_mask(h);
        if hyperplanes {
            if planes.iter().any(|&p| p & !image == 0) {
                return ControlFlow::Continue(());
            }
            let basis = first_missed_basis(image, s).expect("missed vectors span F^s");
            ControlFlow::Break(Certificate::BadMatrix {
                matrix: failing_matrix(r, h, &basis),
            })
        } else {
            // the missed vectors span F^s iff they meet every {x : u·x = 1}
            let missed = nonzero_mask(s) & !image;
            if planes.iter().any(|&o| missed & o == 0) {
                return ControlFlow::Continue(());
            }
            match first_missed_basis(image, s) {
                None => ControlFlow::Continue(()),
                Some(basis) => ControlFlow::Break(Certificate::BadCosetFamily {
                    check: BinMatrix::new(r, h.to_vec()).expect("rows fit"),
                    targets: vectors(s, basis),
                }),
            }
        }
    })?;
    Ok(match flow {
        ControlFlow::Break(c) => Verdict::Fails(c),
        ControlFlow::Continue(()) => Verdict::Holds,
    })
}
