//! Decision procedures with replayable failure certificates.

mod certificate;
mod codes;
mod image;
mod sets;

pub use certificate::{Certificate, CertificateKind};
pub use codes::{
    generic_column_property, is_covering_array, is_subspace_blocking, is_swise_intersecting,
    is_swise_intersecting_capped, transpose_roundtrip, TransposeOutcome,
};
pub(crate) use image::{apply, nonzero_mask};
pub use sets::{is_generic_set, is_generic_set_capped, is_good_set, is_good_set_capped};

use std::str::FromStr;

use serde::Serialize;

use crate::error::{param, Error, Result};
use crate::gf2::{lex_key, low_mask, BinMatrix, BitVector};

/// Default work cap (roughly, elementary operations) for one verification.
pub const DEFAULT_WORK_CAP: u128 = 20_000_000_000;

/// Distinct nonzero vectors of F_2^r, in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VectorSet {
    ambient: usize,
    members: Vec<u64>,
}

impl VectorSet {
    pub fn new(ambient: usize, members: Vec<u64>) -> Result<Self> {
        if ambient == 0 || ambient > 63 {
            return param(format!("ambient dimension {ambient} outside 1..=63"));
        }
        let mut seen = std::collections::HashSet::with_capacity(members.len());
        for &m in &members {
            if m == 0 {
                return param("vector sets exclude the zero vector");
            }
            if m & !low_mask(ambient) != 0 {
                return param(format!("member does not fit dimension {ambient}"));
            }
            if !seen.insert(m) {
                return param("vector set has a repeated member");
            }
        }
        Ok(VectorSet { ambient, members })
    }

    pub fn from_vectors(ambient: usize, vs: &[BitVector]) -> Result<Self> {
        if vs.iter().any(|v| v.dim() != ambient) {
            return param("member of the wrong dimension");
        }
        VectorSet::new(ambient, vs.iter().map(|v| v.bits()).collect())
    }

    /// Rows of `m` as a set.
    pub fn from_matrix(m: &BinMatrix) -> Result<Self> {
        VectorSet::new(m.ncols(), m.rows().to_vec())
    }

    /// All 2^r − 1 nonzero vectors, in lexicographic order.
    pub fn all_nonzero(ambient: usize) -> Result<Self> {
        if ambient == 0 || ambient > 24 {
            return param(format!("full space of dimension {ambient} is out of range"));
        }
        let mut members: Vec<u64> = (1..1u64 << ambient).collect();
        members.sort_by_key(|&v| lex_key(v, ambient));
        VectorSet::new(ambient, members)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: u64) -> bool {
        self.members.contains(&v)
    }

    pub fn vectors(&self) -> Vec<BitVector> {
        certificate::vectors(self.ambient, self.members.iter().copied())
    }

    /// The |A|×r matrix whose rows are the members.
    pub fn to_matrix(&self) -> BinMatrix {
        BinMatrix::new(self.ambient, self.members.clone()).expect("members fit")
    }

    pub fn rank(&self) -> usize {
        crate::gf2::rank_of(&self.members)
    }

    /// Members sorted lexicographically.
    pub fn sorted(&self) -> VectorSet {
        let mut members = self.members.clone();
        members.sort_by_key(|&v| lex_key(v, self.ambient));
        VectorSet {
            ambient: self.ambient,
            members,
        }
    }

    pub fn to_text(&self) -> String {
        self.to_matrix().to_text()
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        VectorSet::from_matrix(&BinMatrix::parse_text(text)?)
    }
}

impl FromStr for VectorSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        VectorSet::parse_text(s)
    }
}

impl Serialize for VectorSet {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.vectors().serialize(ser)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "certificate", rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails(Certificate),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(c) => Some(c),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GoodMethod {
    /// Every independent s-tuple of linear forms has a common "all ones" member.
    Definition,
    /// The set meets every flat {x : Hx = b}, b ≠ 0.
    Flats,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GenericMethod {
    /// Every full-rank r×s matrix M admits a member with wt(aM) = 1.
    Matrices,
    /// Every independent family of s cosets of every (r−s)-subspace is met.
    Cosets,
    /// Every image {aM} contains an affine hyperplane avoiding the origin.
    Hyperplanes,
}

impl FromStr for GoodMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "definition" => Ok(GoodMethod::Definition),
            "flats" => Ok(GoodMethod::Flats),
            other => param(format!("unknown method {other:?} for (r,s)-sets")),
        }
    }
}

impl FromStr for GenericMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "matrices" => Ok(GenericMethod::Matrices),
            "cosets" => Ok(GenericMethod::Cosets),
            "hyperplanes" => Ok(GenericMethod::Hyperplanes),
            other => param(format!("unknown method {other:?} for generic sets")),
        }
    }
}

pub(crate) fn check_rs(r: usize, s: usize) -> Result<()> {
    if s == 0 || s > r {
        return param(format!("need 1 <= s <= r, got r={r}, s={s}"));
    }
    Ok(())
}
