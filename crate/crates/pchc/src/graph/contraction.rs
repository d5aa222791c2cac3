//! Vertex contraction, the induction step of the constructive solvers.
//!
//! Three vertices `center`, `a`, `b` (or two, by passing `center == a`) are
//! replaced by one new vertex. For every color the rule says where the new
//! vertex's neighborhood in that color comes from: `a`'s neighbors, `b`'s
//! neighbors, or their intersection, always restricted to the surviving
//! vertices. Different solvers use different assignments, so the rule is an
//! explicit argument rather than a fixed formula.
//!
//! The returned [`Contraction`] maps new ids back to original ids; the
//! survivors keep their relative order and the new vertex takes the highest
//! id. Certificate lifting lives in the constructive layer, which knows which
//! internal edges to thread through the replaced vertices.

use serde::{Deserialize, Serialize};

use super::{Color, ColoredMultigraph, GraphError, Vertex};

/// Where the contracted vertex's neighborhood in one color comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NeighborSource {
    FromA,
    FromB,
    Intersection,
}

/// Per-color neighborhood assignment; index `k - 1` holds the source for
/// color `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionRule {
    pub sources: Vec<NeighborSource>,
}

impl ContractionRule {
    pub fn new(sources: Vec<NeighborSource>) -> Self {
        ContractionRule { sources }
    }

    pub fn source(&self, k: Color) -> NeighborSource {
        self.sources[k - 1]
    }

    /// All assignments that use each of `FromA`, `FromB`, `Intersection`
    /// exactly once, in lexicographic order. Only meaningful for `c == 3`.
    pub fn all_one_of_each() -> Vec<ContractionRule> {
        use NeighborSource::*;
        let opts = [FromA, FromB, Intersection];
        let mut out = Vec::new();
        for &x in &opts {
            for &y in &opts {
                for &z in &opts {
                    if x != y && y != z && x != z {
                        out.push(ContractionRule::new(vec![x, y, z]));
                    }
                }
            }
        }
        out
    }
}

/// Back-map describing one contraction, sufficient to lift certificates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    pub center: Vertex,
    pub a: Vertex,
    pub b: Vertex,
    pub rule: ContractionRule,
    /// Id of the replacement vertex in the contracted graph.
    pub new_vertex: Vertex,
    /// Original ids of the survivors, indexed by new id (`new_vertex` is not
    /// in this table).
    pub to_original: Vec<Vertex>,
    pub edges_removed: usize,
}

impl Contraction {
    /// True when the contraction replaced two vertices rather than three.
    pub fn is_pair(&self) -> bool {
        self.center == self.a
    }

    /// Original id of a contracted-graph vertex; `None` for the new vertex.
    pub fn original_of(&self, new_id: Vertex) -> Option<Vertex> {
        if new_id == self.new_vertex {
            None
        } else {
            Some(self.to_original[new_id])
        }
    }

    /// New id of a surviving original vertex.
    pub fn new_id_of(&self, original: Vertex) -> Option<Vertex> {
        self.to_original.iter().position(|&v| v == original)
    }
}

/// Contracts `center`, `a`, `b` into one vertex per `rule`. Pass
/// `center == a` for the two-vertex form. Returns the contracted graph and
/// the back-map.
pub fn contract_triple(
    g: &ColoredMultigraph,
    center: Vertex,
    a: Vertex,
    b: Vertex,
    rule: &ContractionRule,
) -> Result<(ColoredMultigraph, Contraction), GraphError> {
    let n = g.vertex_count();
    let c = g.color_count();
    for &v in &[center, a, b] {
        if v >= n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n });
        }
    }
    if a == b {
        return Err(GraphError::BadContraction {
            reason: format!("a and b are both {a}"),
        });
    }
    if center == b {
        return Err(GraphError::BadContraction {
            reason: "pass the shared vertex as center == a, not center == b".into(),
        });
    }
    if rule.sources.len() != c {
        return Err(GraphError::BadContraction {
            reason: format!("rule covers {} colors, graph has {c}", rule.sources.len()),
        });
    }

    let removed_mask = (1u64 << center) | (1u64 << a) | (1u64 << b);
    let survivors: Vec<Vertex> = (0..n).filter(|v| removed_mask >> v & 1 == 0).collect();
    let new_vertex = survivors.len();
    let mut new_id = vec![usize::MAX; n];
    for (i, &v) in survivors.iter().enumerate() {
        new_id[v] = i;
    }

    let mut edges = Vec::new();
    for &(u, v, k) in &g.edges() {
        if removed_mask >> u & 1 == 0 && removed_mask >> v & 1 == 0 {
            edges.push((new_id[u], new_id[v], k));
        }
    }
    for k in 1..=c {
        let mask = match rule.source(k) {
            NeighborSource::FromA => g.neighbor_mask(a, k),
            NeighborSource::FromB => g.neighbor_mask(b, k),
            NeighborSource::Intersection => g.neighbor_mask(a, k) & g.neighbor_mask(b, k),
        } & !removed_mask;
        for t in super::bits(mask) {
            edges.push((new_vertex, new_id[t], k));
        }
    }

    let contracted = ColoredMultigraph::new(new_vertex + 1, c, &edges)?;
    let edges_removed = g.edge_count() - contracted.edge_count();
    Ok((
        contracted,
        Contraction {
            center,
            a,
            b,
            rule: rule.clone(),
            new_vertex,
            to_original: survivors,
            edges_removed,
        },
    ))
}
