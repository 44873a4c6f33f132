//! Greedy, randomized and exact constructions. Every constructor verifies
//! its output before returning it.

mod cover;
mod exact;
mod greedy;
mod parity;
mod random;
mod union;

pub use cover::{CoverInstance, CoverKind};
pub use exact::{exact_minimum, exact_minimum_with, ExactOptions, DEFAULT_NODE_BUDGET};
pub use greedy::{greedy_generic_set, greedy_good_set, GREEDY_MAX_R, MAX_STORED_SUBSPACES};
pub use parity::greedy_parity_check;
pub use random::randomized_search;
pub use union::{
    complement_indices, greedy_subspace_union, UnionOutcome, DEFAULT_UNION_WORK, UNION_SEED,
};

use std::str::FromStr;

use serde::Serialize;

use crate::error::{param, Error, Result};
use crate::gf2::BinMatrix;
use crate::verify::VectorSet;

/// Target property of a vector-set search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SetKind {
    Good,
    Generic,
}

impl FromStr for SetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "good" => Ok(SetKind::Good),
            "generic" => Ok(SetKind::Generic),
            other => param(format!("unknown set kind {other:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", content = "rows", rename_all = "snake_case")]
pub enum Construction {
    Vectors(VectorSet),
    Matrix(BinMatrix),
}

impl Construction {
    pub fn len(&self) -> usize {
        match self {
            Construction::Vectors(v) => v.len(),
            Construction::Matrix(m) => m.nrows(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_text(&self) -> String {
        match self {
            Construction::Vectors(v) => v.to_text(),
            Construction::Matrix(m) => m.to_text(),
        }
    }

    pub fn vectors(&self) -> Option<&VectorSet> {
        match self {
            Construction::Vectors(v) => Some(v),
            Construction::Matrix(_) => None,
        }
    }

    pub fn matrix(&self) -> Option<&BinMatrix> {
        match self {
            Construction::Matrix(m) => Some(m),
            Construction::Vectors(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub set: Construction,
    pub size: usize,
    /// True only when every smaller size was exhaustively refuted.
    pub optimal: bool,
    pub nodes_explored: u64,
    pub seed: Option<u64>,
}

impl SearchOutcome {
    pub(crate) fn new(
        set: Construction,
        optimal: bool,
        nodes_explored: u64,
        seed: Option<u64>,
    ) -> Self {
        SearchOutcome {
            size: set.len(),
            set,
            optimal,
            nodes_explored,
            seed,
        }
    }

    pub fn vectors(&self) -> &VectorSet {
        self.set.vectors().expect("outcome holds a vector set")
    }

    pub fn matrix(&self) -> &BinMatrix {
        self.set.matrix().expect("outcome holds a matrix")
    }
}
