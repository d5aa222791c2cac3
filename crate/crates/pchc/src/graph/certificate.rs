//! Machine-checkable witnesses for proper cycles and paths.
//!
//! A certificate is an explicit vertex sequence plus the color chosen for
//! each step. Verification is independent of how the certificate was found:
//! every step must be an edge of the host graph in the stated color, and
//! adjacent steps must differ in color.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Color, ColoredMultigraph, Vertex};

/// Why a certificate failed to verify.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateError {
    TooShort {
        len: usize,
        min: usize,
    },
    LengthMismatch {
        vertices: usize,
        colors: usize,
        expected_colors: usize,
    },
    RepeatedVertex {
        vertex: Vertex,
    },
    VertexOutOfRange {
        vertex: Vertex,
        n: usize,
    },
    ColorOutOfRange {
        color: Color,
        c: usize,
    },
    MissingEdge {
        index: usize,
        u: Vertex,
        v: Vertex,
        color: Color,
    },
    AdjacentSameColor {
        index: usize,
        color: Color,
    },
}

impl fmt::Display for CertificateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateError::TooShort { len, min } => {
                write!(f, "certificate has {len} vertices, needs at least {min}")
            }
            CertificateError::LengthMismatch {
                vertices,
                colors,
                expected_colors,
            } => write!(
                f,
                "{vertices} vertices need {expected_colors} edge colors, got {colors}"
            ),
            CertificateError::RepeatedVertex { vertex } => {
                write!(f, "vertex {vertex} appears more than once")
            }
            CertificateError::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for n = {n}")
            }
            CertificateError::ColorOutOfRange { color, c } => {
                write!(f, "color {color} out of range 1..={c}")
            }
            CertificateError::MissingEdge { index, u, v, color } => {
                write!(
                    f,
                    "step {index}: edge [{u}, {v}, {color}] is not in the graph"
                )
            }
            CertificateError::AdjacentSameColor { index, color } => {
                write!(f, "steps {index} and next share color {color}")
            }
        }
    }
}

impl std::error::Error for CertificateError {}

/// A closed properly colored walk: `vertices[i]` to `vertices[i+1 mod L]`
/// using `edge_colors[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleCertificate {
    pub vertices: Vec<Vertex>,
    pub edge_colors: Vec<Color>,
}

impl CycleCertificate {
    pub fn new(vertices: Vec<Vertex>, edge_colors: Vec<Color>) -> Self {
        CycleCertificate {
            vertices,
            edge_colors,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    /// Does the cycle use the edge `{u, v}` (in any color)?
    pub fn uses_pair(&self, u: Vertex, v: Vertex) -> bool {
        let l = self.vertices.len();
        (0..l).any(|i| {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % l]);
            (a, b) == (u, v) || (a, b) == (v, u)
        })
    }

    /// Rotates the cycle so that `vertices[0] == v`. Panics if `v` is absent.
    pub fn rotate_to(&self, v: Vertex) -> Self {
        let pos = self
            .vertices
            .iter()
            .position(|&x| x == v)
            .expect("vertex on cycle");
        let l = self.vertices.len();
        CycleCertificate {
            vertices: (0..l).map(|i| self.vertices[(pos + i) % l]).collect(),
            edge_colors: (0..l).map(|i| self.edge_colors[(pos + i) % l]).collect(),
        }
    }
}

/// An open properly colored walk: one fewer color than vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathCertificate {
    pub vertices: Vec<Vertex>,
    pub edge_colors: Vec<Color>,
}

impl PathCertificate {
    pub fn new(vertices: Vec<Vertex>, edge_colors: Vec<Color>) -> Self {
        PathCertificate {
            vertices,
            edge_colors,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn first(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn last(&self) -> Vertex {
        *self.vertices.last().unwrap()
    }

    pub fn first_color(&self) -> Color {
        self.edge_colors[0]
    }

    pub fn last_color(&self) -> Color {
        *self.edge_colors.last().unwrap()
    }

    pub fn reversed(&self) -> Self {
        PathCertificate {
            vertices: self.vertices.iter().rev().copied().collect(),
            edge_colors: self.edge_colors.iter().rev().copied().collect(),
        }
    }
}

fn check_common(
    g: &ColoredMultigraph,
    vertices: &[Vertex],
    colors: &[Color],
) -> Result<(), CertificateError> {
    for &v in vertices {
        if v >= g.vertex_count() {
            return Err(CertificateError::VertexOutOfRange {
                vertex: v,
                n: g.vertex_count(),
            });
        }
    }
    for &k in colors {
        if k == 0 || k > g.color_count() {
            return Err(CertificateError::ColorOutOfRange {
                color: k,
                c: g.color_count(),
            });
        }
    }
    let mut seen = 0u64;
    for &v in vertices {
        if seen >> v & 1 == 1 {
            return Err(CertificateError::RepeatedVertex { vertex: v });
        }
        seen |= 1 << v;
    }
    Ok(())
}

/// Checks a cycle certificate against `g`. Hamiltonicity is not required:
/// shorter proper cycles are first-class values.
pub fn verify_proper_cycle(
    g: &ColoredMultigraph,
    cert: &CycleCertificate,
) -> Result<(), CertificateError> {
    let l = cert.vertices.len();
    if l < 3 {
        return Err(CertificateError::TooShort { len: l, min: 3 });
    }
    if cert.edge_colors.len() != l {
        return Err(CertificateError::LengthMismatch {
            vertices: l,
            colors: cert.edge_colors.len(),
            expected_colors: l,
        });
    }
    check_common(g, &cert.vertices, &cert.edge_colors)?;
    for i in 0..l {
        let (u, v) = (cert.vertices[i], cert.vertices[(i + 1) % l]);
        let k = cert.edge_colors[i];
        if !g.has_edge(u, v, k) {
            return Err(CertificateError::MissingEdge {
                index: i,
                u,
                v,
                color: k,
            });
        }
        if k == cert.edge_colors[(i + 1) % l] {
            return Err(CertificateError::AdjacentSameColor { index: i, color: k });
        }
    }
    Ok(())
}

/// Checks a path certificate against `g`: same conditions on the open
/// sequence, with no wraparound constraint.
pub fn verify_proper_path(
    g: &ColoredMultigraph,
    cert: &PathCertificate,
) -> Result<(), CertificateError> {
    let l = cert.vertices.len();
    if l < 2 {
        return Err(CertificateError::TooShort { len: l, min: 2 });
    }
    if cert.edge_colors.len() != l - 1 {
        return Err(CertificateError::LengthMismatch {
            vertices: l,
            colors: cert.edge_colors.len(),
            expected_colors: l - 1,
        });
    }
    check_common(g, &cert.vertices, &cert.edge_colors)?;
    for i in 0..l - 1 {
        let (u, v) = (cert.vertices[i], cert.vertices[i + 1]);
        let k = cert.edge_colors[i];
        if !g.has_edge(u, v, k) {
            return Err(CertificateError::MissingEdge {
                index: i,
                u,
                v,
                color: k,
            });
        }
        if i + 1 < l - 1 && k == cert.edge_colors[i + 1] {
            return Err(CertificateError::AdjacentSameColor { index: i, color: k });
        }
    }
    Ok(())
}
