use super::{Construction, SearchOutcome, SetKind};
use crate::bounds::threshold_n;
use crate::error::{budget, param, Result};
use crate::gf2::{derive_seed, lex_key, SplitMix64};
use crate::verify::{is_generic_set, is_good_set, GenericMethod, GoodMethod, VectorSet};

/// Samples uniform N-subsets of the nonzero vectors, N the random-coding
/// threshold for `kind`, until one verifies. Trial `t` draws with
/// `SplitMix64::new(derive_seed(seed, t))`; `nodes_explored` counts trials.
pub fn randomized_search(
    r: usize,
    s: usize,
    kind: SetKind,
    seed: u64,
    max_trials: u64,
) -> Result<SearchOutcome> {
    if s == 0 || s > r {
        return param(format!("need 1 <= s <= r, got r={r}, s={s}"));
    }
    if r > 20 {
        return budget(format!(
            "randomized search in dimension {r} is beyond desk scale"
        ));
    }
    if max_trials == 0 {
        return param("need at least one trial");
    }
    let n = threshold_n(kind, r, s)?.n as usize;
    let mut items: Vec<u64> = (1..1u64 << r).collect();
    items.sort_by_key(|&v| lex_key(v, r));
    for trial in 0..max_trials {
        let mut rng = SplitMix64::new(derive_seed(seed, trial));
        let mut pick = rng.sample(&items, n);
        pick.sort_by_key(|&v| lex_key(v, r));
        let set = VectorSet::new(r, pick)?;
        let holds = match kind {
            SetKind::Good => is_good_set(&set, s, GoodMethod::Flats)?.holds(),
            SetKind::Generic => is_generic_set(&set, s, GenericMethod::Cosets)?.holds(),
        };
        if holds {
            return Ok(SearchOutcome::new(
                Construction::Vectors(set),
                false,
                trial + 1,
                Some(seed),
            ));
        }
    }
    budget(format!("no valid {n}-set in {max_trials} trials"))
}
