use crate::code::LinearCode;
use crate::error::{param, Result};
use crate::gf2::{gather_bits, BitVector, Span};

/// The three codes obtained from a codeword `v` with support `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Restriction of the code to `I`.
    pub c_i: LinearCode,
    /// Span of a completion of `v|_I` to a basis of `c_i`, without `v|_I`.
    pub c_star_i: LinearCode,
    /// Restriction of the code to the complement of `I`.
    pub c_ibar: LinearCode,
    pub support: Vec<usize>,
}

/// Splits `code` along the support of the nonzero codeword `v`.
///
/// The basis completion starts from `v|_I` (the all-ones word on `I`) and
/// adds the reduced row-echelon rows of `c_i` in order whenever they are
/// independent of what was kept so far.
pub fn support_decompose(code: &LinearCode, v: &BitVector) -> Result<Decomposition> {
    if v.dim() != code.n() {
        return param("codeword length does not match the code");
    }
    if v.is_zero() {
        return param("decomposition needs a nonzero codeword");
    }
    if !code.contains(v) {
        return param("vector is not a codeword");
    }
    let support = v.support();
    let complement: Vec<usize> = (0..code.n()).filter(|i| !v.get(*i)).collect();
    let c_i = code.restrict(&support)?;
    let c_ibar = code.restrict(&complement)?;

    let w = support.len();
    let ones = gather_bits(v.bits(), &support);
    let mut span = Span::default();
    span.insert(ones);
    let completion: Vec<u64> = c_i
        .generator()
        .rows()
        .iter()
        .copied()
        .filter(|&r| span.insert(r))
        .collect();
    let c_star_i = LinearCode::from_spanning_rows(w, completion)?;
    Ok(Decomposition {
        c_i,
        c_star_i,
        c_ibar,
        support,
    })
}
