use serde::Serialize;

use crate::gf2::{gauss2, unordered_bases};

/// Which hypergraph a cover instance describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoverKind {
    /// Vertices: nonzero vectors of F^r. Edges: (r−s)-flats avoiding 0.
    GoodFlats { r: usize, s: usize },
    /// Vertices: nonzero vectors of F^r. Edges: unions of s independent
    /// cosets of an (r−s)-subspace.
    GenericCosets { r: usize, s: usize },
    /// Vertices: s-subspaces. Edges: (r−s)-subspaces, met by their complements.
    SubspaceUnion { r: usize, s: usize },
    /// Vertices: nonzero dual codewords. Edges: coordinate sets K with
    /// 1 ≤ |K| ≤ d−1, covered by words of weight one on K.
    ParityCheck { n: usize, k: usize, d: usize },
}

/// Counting data of a covering hypergraph, enough to evaluate the greedy
/// covering bound |C| ≤ |V|/d_E · (1 + ln D_V).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoverInstance {
    pub kind: CoverKind,
    pub vertices: u128,
    pub edges: u128,
    /// Minimum number of vertices on an edge.
    pub edge_degree_min: u128,
    /// Maximum number of edges through a vertex.
    pub vertex_degree_max: u128,
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

impl CoverInstance {
    pub fn good(r: usize, s: usize) -> Self {
        let g = gauss2(r, s);
        CoverInstance {
            kind: CoverKind::GoodFlats { r, s },
            vertices: (1u128 << r) - 1,
            edges: ((1u128 << s) - 1) * g,
            edge_degree_min: 1u128 << (r - s),
            vertex_degree_max: g - gauss2(r - 1, s),
        }
    }

    pub fn generic(r: usize, s: usize) -> Self {
        let g = gauss2(r, s);
        let bases = unordered_bases(s);
        let through_b = bases * s as u128 / ((1u128 << s) - 1);
        CoverInstance {
            kind: CoverKind::GenericCosets { r, s },
            vertices: (1u128 << r) - 1,
            edges: g * bases,
            edge_degree_min: (s as u128) << (r - s),
            vertex_degree_max: (g - gauss2(r - 1, s)) * through_b,
        }
    }

    pub fn subspace_union(r: usize, s: usize) -> Self {
        let deg = 1u128 << (s * (r - s));
        CoverInstance {
            kind: CoverKind::SubspaceUnion { r, s },
            vertices: gauss2(r, s),
            edges: gauss2(r, r - s),
            edge_degree_min: deg,
            vertex_degree_max: deg,
        }
    }

    /// `dual_weights` lists the weights present among nonzero dual words;
    /// a word of weight w meets Σ_i w·C(n−w, i−1) edges.
    pub fn parity_check(n: usize, k: usize, d: usize, dual_weights: &[usize]) -> Self {
        let r = n - k;
        let edges = (1..d).map(|i| binom(n, i)).sum();
        let edge_degree_min = (1..d)
            .map(|i| (i as u128) << (r - i.min(r)))
            .min()
            .unwrap_or(0);
        let vertex_degree_max = dual_weights
            .iter()
            .map(|&w| {
                (1..d)
                    .map(|i| w as u128 * binom(n - w, i - 1))
                    .sum::<u128>()
            })
            .max()
            .unwrap_or(0);
        CoverInstance {
            kind: CoverKind::ParityCheck { n, k, d },
            vertices: (1u128 << r) - 1,
            edges,
            edge_degree_min,
            vertex_degree_max,
        }
    }

    /// The greedy covering bound |V|/d_E · (1 + ln D_V).
    pub fn greedy_bound(&self) -> f64 {
        if self.edges == 0 {
            return 0.0;
        }
        self.vertices as f64 / self.edge_degree_min as f64
            * (1.0 + (self.vertex_degree_max as f64).ln())
    }
}
