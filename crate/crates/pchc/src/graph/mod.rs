//! Edge-colored multigraph data model.
//!
//! Vertices are dense integer ids `0..n`; colors are 1-based ids `1..=c` so
//! that color arithmetic in the solvers reads like the underlying
//! combinatorics. At most one edge may join a given vertex pair in a given
//! color. Graphs are immutable after construction: the surgeries
//! ([`ColoredMultigraph::merge_colors`], [`contract_triple`]) return new
//! graphs together with records sufficient to lift certificates back.
//!
//! The representation keeps one `u64` neighbor bitset per (color, vertex),
//! which bounds graphs to 64 vertices. Every search this crate performs is
//! exhaustive and meant for desk-scale instances, so the bound is not a
//! practical restriction.

mod certificate;
mod contraction;
mod simple;

pub use certificate::{
    verify_proper_cycle, verify_proper_path, CertificateError, CycleCertificate, PathCertificate,
};
pub use contraction::{contract_triple, Contraction, ContractionRule, NeighborSource};
pub use simple::SimpleGraph;

use std::fmt;

use serde::{Deserialize, Serialize};

/// Vertex id, `0..n`.
pub type Vertex = usize;
/// Color id, `1..=c`.
pub type Color = usize;

/// Hard cap imposed by the `u64` bitset representation.
pub const MAX_VERTICES: usize = 64;
/// Sanity cap on the number of colors.
pub const MAX_COLORS: usize = 32;

/// Returns `n * (n - 1) / 2`.
pub fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Iterates over the set bits of a mask as vertex ids.
pub(crate) fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(v)
        }
    })
}

/// Errors raised when constructing or transforming a multigraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    TooManyVertices { n: usize },
    BadColorCount { c: usize },
    VertexOutOfRange { vertex: Vertex, n: usize },
    ColorOutOfRange { color: Color, c: usize },
    SelfLoop { vertex: Vertex },
    DuplicateEdge { u: Vertex, v: Vertex, color: Color },
    SameColorMerge { color: Color },
    MergeNeedsThreeColors { c: usize },
    BadContraction { reason: String },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::TooManyVertices { n } => {
                write!(
                    f,
                    "{n} vertices requested; this representation supports at most {MAX_VERTICES}"
                )
            }
            GraphError::BadColorCount { c } => {
                write!(f, "color count {c} outside 1..={MAX_COLORS}")
            }
            GraphError::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for n = {n}")
            }
            GraphError::ColorOutOfRange { color, c } => {
                write!(f, "color {color} out of range 1..={c}")
            }
            GraphError::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
            GraphError::DuplicateEdge { u, v, color } => {
                write!(f, "duplicate edge [{u}, {v}, {color}]")
            }
            GraphError::SameColorMerge { color } => {
                write!(f, "cannot merge color {color} into itself")
            }
            GraphError::MergeNeedsThreeColors { c } => {
                write!(f, "color merge needs at least 3 colors, graph has {c}")
            }
            GraphError::BadContraction { reason } => write!(f, "bad contraction: {reason}"),
        }
    }
}

impl std::error::Error for GraphError {}

/// Record of a color merge: color `merged_color` was recolored to
/// `target_color` and parallel duplicates were deleted, after which colors
/// were renumbered to `1..c-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeRecord {
    /// Color that was removed (pre-merge numbering).
    pub merged_color: Color,
    /// Color it was recolored to (pre-merge numbering).
    pub target_color: Color,
    /// Vertex pairs `(u, v)`, `u < v`, where a parallel same-color edge was
    /// deleted by the merge.
    pub dropped_duplicates: Vec<(Vertex, Vertex)>,
    /// Maps each pre-merge color to its post-merge id. `merged_color` maps to
    /// the same id as `target_color`.
    pub color_mapping: Vec<Color>,
}

impl MergeRecord {
    /// Pre-merge colors that map onto the post-merge color `new`.
    pub fn preimages(&self, new: Color) -> Vec<Color> {
        self.color_mapping
            .iter()
            .enumerate()
            .filter(|(_, &m)| m == new)
            .map(|(i, _)| i + 1)
            .collect()
    }
}

/// An immutable `c`-edge-colored multigraph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct ColoredMultigraph {
    n: usize,
    c: usize,
    m: usize,
    /// `adj[k - 1][v]` is the neighbor bitset of `v` in color `k`.
    adj: Vec<Vec<u64>>,
}

impl fmt::Debug for ColoredMultigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ColoredMultigraph(n={}, c={}, m={}, edges={:?})",
            self.n,
            self.c,
            self.m,
            self.edges()
        )
    }
}

impl ColoredMultigraph {
    /// Builds a graph from an edge list. Pairs may be given in either order;
    /// an exact duplicate of (pair, color) is an error.
    pub fn new(n: usize, c: usize, edges: &[(Vertex, Vertex, Color)]) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n });
        }
        if c == 0 || c > MAX_COLORS {
            return Err(GraphError::BadColorCount { c });
        }
        let mut g = ColoredMultigraph {
            n,
            c,
            m: 0,
            adj: vec![vec![0u64; n]; c],
        };
        for &(u, v, k) in edges {
            g.add_edge(u, v, k)?;
        }
        Ok(g)
    }

    /// The empty graph on `n` vertices with `c` available colors.
    pub fn empty(n: usize, c: usize) -> Result<Self, GraphError> {
        Self::new(n, c, &[])
    }

    fn add_edge(&mut self, u: Vertex, v: Vertex, k: Color) -> Result<(), GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange {
                vertex: u,
                n: self.n,
            });
        }
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        if u == v {
            return Err(GraphError::SelfLoop { vertex: u });
        }
        if k == 0 || k > self.c {
            return Err(GraphError::ColorOutOfRange {
                color: k,
                c: self.c,
            });
        }
        if self.adj[k - 1][u] >> v & 1 == 1 {
            let (a, b) = (u.min(v), u.max(v));
            return Err(GraphError::DuplicateEdge {
                u: a,
                v: b,
                color: k,
            });
        }
        self.adj[k - 1][u] |= 1 << v;
        self.adj[k - 1][v] |= 1 << u;
        self.m += 1;
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn color_count(&self) -> usize {
        self.c
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    /// Largest possible edge count, `c * n * (n - 1) / 2`.
    pub fn max_edges(&self) -> usize {
        self.c * choose2(self.n)
    }

    fn assert_vertex(&self, x: Vertex) {
        assert!(x < self.n, "vertex {} out of range for n = {}", x, self.n);
    }

    fn assert_color(&self, k: Color) {
        assert!(
            k >= 1 && k <= self.c,
            "color {} out of range 1..={}",
            k,
            self.c
        );
    }

    /// Does the edge `(u, v)` exist in color `k`?
    pub fn has_edge(&self, u: Vertex, v: Vertex, k: Color) -> bool {
        self.assert_vertex(u);
        self.assert_vertex(v);
        self.assert_color(k);
        u != v && self.adj[k - 1][u] >> v & 1 == 1
    }

    /// All colors present on the pair `(u, v)`, ascending.
    pub fn colors_between(&self, u: Vertex, v: Vertex) -> Vec<Color> {
        self.assert_vertex(u);
        self.assert_vertex(v);
        (1..=self.c)
            .filter(|&k| self.adj[k - 1][u] >> v & 1 == 1)
            .collect()
    }

    /// Neighbor bitset of `x` in color `k`.
    pub fn neighbor_mask(&self, x: Vertex, k: Color) -> u64 {
        self.assert_vertex(x);
        self.assert_color(k);
        self.adj[k - 1][x]
    }

    /// Neighbor bitset of `x` over all colors.
    pub fn any_neighbor_mask(&self, x: Vertex) -> u64 {
        self.assert_vertex(x);
        self.adj.iter().fold(0u64, |acc, layer| acc | layer[x])
    }

    /// Neighbors of `x` joined by a color-`k` edge, ascending.
    pub fn color_neighbors(&self, x: Vertex, k: Color) -> impl Iterator<Item = Vertex> {
        bits(self.neighbor_mask(x, k))
    }

    /// Number of distinct neighbors joined to `x` by a color-`k` edge.
    pub fn colored_degree(&self, x: Vertex, k: Color) -> usize {
        self.neighbor_mask(x, k).count_ones() as usize
    }

    /// Number of distinct colors on the edges incident to `x`.
    pub fn rainbow_degree(&self, x: Vertex) -> usize {
        self.assert_vertex(x);
        (1..=self.c).filter(|&k| self.adj[k - 1][x] != 0).count()
    }

    /// Minimum rainbow degree over all vertices.
    pub fn min_rainbow_degree(&self) -> usize {
        assert!(self.n > 0, "rainbow degree of the empty graph is undefined");
        (0..self.n).map(|x| self.rainbow_degree(x)).min().unwrap()
    }

    /// Number of edges incident to `x`, counting one per (neighbor, color).
    pub fn total_degree(&self, x: Vertex) -> usize {
        self.assert_vertex(x);
        self.adj
            .iter()
            .map(|layer| layer[x].count_ones() as usize)
            .sum()
    }

    /// Canonical edge list: triples `(u, v, k)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex, Color)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for v in u + 1..self.n {
                for k in 1..=self.c {
                    if self.adj[k - 1][u] >> v & 1 == 1 {
                        out.push((u, v, k));
                    }
                }
            }
        }
        out
    }

    /// Color-by-color complement: edge `(u, v, k)` present iff absent here.
    /// The color count is preserved even if some color ends up unused.
    pub fn complement(&self) -> Self {
        let full = if self.n == 0 {
            0
        } else {
            (!0u64) >> (64 - self.n)
        };
        let mut adj = vec![vec![0u64; self.n]; self.c];
        let mut twice_m = 0usize;
        for k in 0..self.c {
            for v in 0..self.n {
                adj[k][v] = full & !self.adj[k][v] & !(1u64 << v);
                twice_m += adj[k][v].count_ones() as usize;
            }
        }
        ColoredMultigraph {
            n: self.n,
            c: self.c,
            m: twice_m / 2,
            adj,
        }
    }

    /// Spanning subgraph keeping only color-`k` edges. The color count is
    /// unchanged so certificates keep their meaning.
    pub fn color_subgraph(&self, k: Color) -> Self {
        self.assert_color(k);
        let mut adj = vec![vec![0u64; self.n]; self.c];
        adj[k - 1] = self.adj[k - 1].clone();
        let m = adj[k - 1]
            .iter()
            .map(|&mask| mask.count_ones() as usize)
            .sum::<usize>()
            / 2;
        ColoredMultigraph {
            n: self.n,
            c: self.c,
            m,
            adj,
        }
    }

    /// Recolors every `j`-edge to color `t`, deleting parallel duplicates,
    /// then renumbers colors to `1..c-1`. Returns the merged graph plus a
    /// record from which cycles in the merged graph can be lifted back.
    pub fn merge_colors(&self, j: Color, t: Color) -> Result<(Self, MergeRecord), GraphError> {
        if j == 0 || j > self.c {
            return Err(GraphError::ColorOutOfRange {
                color: j,
                c: self.c,
            });
        }
        if t == 0 || t > self.c {
            return Err(GraphError::ColorOutOfRange {
                color: t,
                c: self.c,
            });
        }
        if j == t {
            return Err(GraphError::SameColorMerge { color: j });
        }
        if self.c < 3 {
            return Err(GraphError::MergeNeedsThreeColors { c: self.c });
        }
        // Old color k lands at k (k < j) or k - 1 (k > j); j joins t.
        let mut color_mapping = vec![0usize; self.c];
        for k in 1..=self.c {
            color_mapping[k - 1] = if k == j {
                if t < j {
                    t
                } else {
                    t - 1
                }
            } else if k < j {
                k
            } else {
                k - 1
            };
        }

        let mut dropped = Vec::new();
        let mut edges = Vec::new();
        for (u, v, k) in self.edges() {
            if k == j && self.adj[t - 1][u] >> v & 1 == 1 {
                dropped.push((u, v));
                continue;
            }
            edges.push((u, v, color_mapping[k - 1]));
        }
        let merged = ColoredMultigraph::new(self.n, self.c - 1, &edges)?;
        Ok((
            merged,
            MergeRecord {
                merged_color: j,
                target_color: t,
                dropped_duplicates: dropped,
                color_mapping,
            },
        ))
    }

    /// Underlying simple graph: parallel edges collapse to one.
    pub fn underlying(&self) -> SimpleGraph {
        let adj = (0..self.n).map(|v| self.any_neighbor_mask(v)).collect();
        SimpleGraph::from_masks(self.n, adj)
    }

    /// Simple graph on the same vertices whose edges are the pairs carrying
    /// parallel edges in both color `j` and color `l`.
    pub fn parallel_intersection(&self, j: Color, l: Color) -> SimpleGraph {
        self.assert_color(j);
        self.assert_color(l);
        let adj = (0..self.n)
            .map(|v| self.adj[j - 1][v] & self.adj[l - 1][v])
            .collect();
        SimpleGraph::from_masks(self.n, adj)
    }

    /// Connectivity of the underlying simple graph.
    pub fn is_connected(&self) -> bool {
        self.underlying().is_connected()
    }

    /// 2-connectivity of the underlying simple graph: connected, `n >= 3`,
    /// and no cut vertex.
    pub fn is_2connected(&self) -> bool {
        self.underlying().is_2connected()
    }

    /// Induced subgraph on `keep` (ascending order), with a map from new ids
    /// back to the original ids.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> (Self, Vec<Vertex>) {
        let mut sorted = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in sorted.iter().enumerate() {
            self.assert_vertex(v);
            new_id[v] = i;
        }
        let mut edges = Vec::new();
        for &(u, v, k) in &self.edges() {
            if new_id[u] != usize::MAX && new_id[v] != usize::MAX {
                edges.push((new_id[u], new_id[v], k));
            }
        }
        let g = ColoredMultigraph::new(sorted.len(), self.c, &edges)
            .expect("induced subgraph of a valid graph is valid");
        (g, sorted)
    }

    /// Subgraph with the listed vertices removed, plus the id map.
    pub fn remove_vertices(&self, drop: &[Vertex]) -> (Self, Vec<Vertex>) {
        let keep: Vec<Vertex> = (0..self.n).filter(|v| !drop.contains(v)).collect();
        self.induced_subgraph(&keep)
    }
}
