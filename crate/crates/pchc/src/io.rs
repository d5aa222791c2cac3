//! Canonical JSON serialization and Graphviz DOT export.
//!
//! The graph document is `{"n": …, "c": …, "edges": [[u, v, k], …]}`.
//! Serialization is canonical: edges sorted by `(min(u,v), max(u,v), k)`
//! with `u < v`, compact separators, newline-terminated. Parsing accepts
//! either endpoint order but rejects duplicate (pair, color) triples with
//! the offending index.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{
    Color, ColoredMultigraph, CycleCertificate, GraphError, PathCertificate, Vertex,
};
use crate::solver::Certificate;

/// Errors from reading a graph or certificate document.
#[derive(Debug)]
pub enum ParseError {
    Json(serde_json::Error),
    DuplicateEdge {
        index: usize,
        u: Vertex,
        v: Vertex,
        color: Color,
    },
    Graph(GraphError),
    BadCertificateKind(String),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Json(e) => write!(f, "malformed document: {e}"),
            ParseError::DuplicateEdge { index, u, v, color } => {
                write!(f, "duplicate edge [{u}, {v}, {color}] at edges[{index}]")
            }
            ParseError::Graph(e) => write!(f, "invalid graph: {e}"),
            ParseError::BadCertificateKind(k) => write!(f, "unknown certificate kind '{k}'"),
        }
    }
}

impl std::error::Error for ParseError {}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        ParseError::Json(e)
    }
}

impl From<GraphError> for ParseError {
    fn from(e: GraphError) -> Self {
        ParseError::Graph(e)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    n: usize,
    c: usize,
    edges: Vec<(usize, usize, usize)>,
}

/// Parses the JSON graph format, enforcing every graph invariant.
pub fn parse_graph_json(text: &str) -> Result<ColoredMultigraph, ParseError> {
    let doc: GraphDoc = serde_json::from_str(text)?;
    let mut seen = std::collections::HashSet::new();
    for (index, &(u, v, k)) in doc.edges.iter().enumerate() {
        let key = (u.min(v), u.max(v), k);
        if !seen.insert(key) {
            return Err(ParseError::DuplicateEdge {
                index,
                u: key.0,
                v: key.1,
                color: k,
            });
        }
    }
    Ok(ColoredMultigraph::new(doc.n, doc.c, &doc.edges)?)
}

/// Canonical serialization; `parse(serialize(g)) == g` byte-for-byte on a
/// second pass.
pub fn serialize_graph_json(g: &ColoredMultigraph) -> String {
    let doc = GraphDoc {
        n: g.vertex_count(),
        c: g.color_count(),
        edges: g.edges(),
    };
    let mut s = serde_json::to_string(&doc).expect("graph document serializes");
    s.push('\n');
    s
}

#[derive(Serialize, Deserialize)]
struct CertDoc {
    kind: String,
    vertices: Vec<usize>,
    edge_colors: Vec<usize>,
}

/// Parses a certificate document (`"kind": "cycle"` or `"path"`).
pub fn parse_certificate_json(text: &str) -> Result<Certificate, ParseError> {
    let doc: CertDoc = serde_json::from_str(text)?;
    match doc.kind.as_str() {
        "cycle" => Ok(Certificate::Cycle(CycleCertificate::new(
            doc.vertices,
            doc.edge_colors,
        ))),
        "path" => Ok(Certificate::Path(PathCertificate::new(
            doc.vertices,
            doc.edge_colors,
        ))),
        other => Err(ParseError::BadCertificateKind(other.to_string())),
    }
}

/// Serializes a certificate, newline-terminated.
pub fn serialize_certificate_json(cert: &Certificate) -> String {
    let (kind, vertices, edge_colors) = match cert {
        Certificate::Cycle(c) => ("cycle", &c.vertices, &c.edge_colors),
        Certificate::Path(p) => ("path", &p.vertices, &p.edge_colors),
    };
    let doc = CertDoc {
        kind: kind.to_string(),
        vertices: vertices.clone(),
        edge_colors: edge_colors.clone(),
    };
    let mut s = serde_json::to_string(&doc).expect("certificate serializes");
    s.push('\n');
    s
}

/// Color names for DOT output; ids beyond the palette fall back to their
/// numeral.
pub fn color_name(k: Color) -> String {
    const PALETTE: [&str; 6] = ["red", "blue", "green", "orange", "purple", "brown"];
    if k >= 1 && k <= PALETTE.len() {
        PALETTE[k - 1].to_string()
    } else {
        k.to_string()
    }
}

/// Graphviz DOT export: an undirected graph with one line per colored edge.
/// Certificate edges are emphasized with a heavier pen.
pub fn export_dot(g: &ColoredMultigraph, cert: Option<&Certificate>) -> String {
    let mut out = String::from("graph g {\n");
    for v in 0..g.vertex_count() {
        out.push_str(&format!("  {v};\n"));
    }
    let on_cert = |u: Vertex, v: Vertex, k: Color| -> bool {
        match cert {
            None => false,
            Some(Certificate::Cycle(c)) => {
                let l = c.vertices.len();
                (0..l).any(|i| {
                    let (a, b) = (c.vertices[i], c.vertices[(i + 1) % l]);
                    c.edge_colors[i] == k && ((a, b) == (u, v) || (a, b) == (v, u))
                })
            }
            Some(Certificate::Path(p)) => (0..p.vertices.len().saturating_sub(1)).any(|i| {
                let (a, b) = (p.vertices[i], p.vertices[i + 1]);
                p.edge_colors[i] == k && ((a, b) == (u, v) || (a, b) == (v, u))
            }),
        }
    };
    for (u, v, k) in g.edges() {
        let name = color_name(k);
        if on_cert(u, v, k) {
            out.push_str(&format!("  {u} -- {v} [color=\"{name}\", penwidth=3];\n"));
        } else {
            out.push_str(&format!("  {u} -- {v} [color=\"{name}\"];\n"));
        }
    }
    out.push_str("}\n");
    out
}
