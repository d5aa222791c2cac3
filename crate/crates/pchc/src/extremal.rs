//! Deterministic generators for the tight families: each construction sits
//! exactly one edge below a sufficient-condition threshold and lacks the
//! guaranteed structure. Every generator returns the graph together with its
//! claimed properties so the harness can re-verify the claims rather than
//! trust them.
//!
//! Canonical labeling: the special attached vertices always take the highest
//! ids, and when a single color is needed it is color 1.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{choose2, Color, ColoredMultigraph, GraphError, Vertex};

/// Identifies one generator family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyId {
    #[serde(rename = "rainbow-complete")]
    RainbowComplete,
    #[serde(rename = "2col-edges-extremal")]
    TwoColEdgesExtremal,
    #[serde(rename = "2col-rainbow-extremal")]
    TwoColRainbowExtremal,
    #[serde(rename = "ccol-edges-extremal")]
    CColEdgesExtremal,
    #[serde(rename = "ccol-rainbow-extremal")]
    CColRainbowExtremal,
    #[serde(rename = "conjecture-extremal")]
    ConjectureExtremal,
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyId::RainbowComplete => "rainbow-complete",
            FamilyId::TwoColEdgesExtremal => "2col-edges-extremal",
            FamilyId::TwoColRainbowExtremal => "2col-rainbow-extremal",
            FamilyId::CColEdgesExtremal => "ccol-edges-extremal",
            FamilyId::CColRainbowExtremal => "ccol-rainbow-extremal",
            FamilyId::ConjectureExtremal => "conjecture-extremal",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for FamilyId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rainbow-complete" => Ok(FamilyId::RainbowComplete),
            "2col-edges-extremal" | "s1-extremal" => Ok(FamilyId::TwoColEdgesExtremal),
            "2col-rainbow-extremal" | "2colrd2-extremal" => Ok(FamilyId::TwoColRainbowExtremal),
            "ccol-edges-extremal" | "3colgen-extremal" => Ok(FamilyId::CColEdgesExtremal),
            "ccol-rainbow-extremal" | "3colrd3-extremal" => Ok(FamilyId::CColRainbowExtremal),
            "conjecture-extremal" => Ok(FamilyId::ConjectureExtremal),
            other => Err(format!("unknown family '{other}'")),
        }
    }
}

/// A property the construction is claimed to have; the harness re-checks
/// each one with the graph queries and the exact solver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "claim", rename_all = "kebab-case")]
pub enum Claim {
    NoProperHamCycle,
    MinRainbowDegree { value: usize },
    Connected,
    TwoConnected,
    NotTwoConnected,
    NoPerfectMatchingInColor { color: Color },
    PerfectMatchingInColor { color: Color },
}

/// Generator output contract: parameters, the exact edge count, and the
/// claimed properties.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalSpec {
    pub family: FamilyId,
    pub n: usize,
    pub c: usize,
    pub claimed_edges: usize,
    pub claims: Vec<Claim>,
}

/// Errors from generator parameter validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtremalError {
    BadParameters { family: FamilyId, reason: String },
    Graph(GraphError),
}

impl fmt::Display for ExtremalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtremalError::BadParameters { family, reason } => {
                write!(f, "{family}: {reason}")
            }
            ExtremalError::Graph(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ExtremalError {}

impl From<GraphError> for ExtremalError {
    fn from(e: GraphError) -> Self {
        ExtremalError::Graph(e)
    }
}

/// Every pair joined in every color: `c * choose2(n)` edges.
pub fn rainbow_complete(n: usize, c: usize) -> ColoredMultigraph {
    let mut edges = Vec::with_capacity(c * choose2(n));
    for u in 0..n {
        for v in u + 1..n {
            for k in 1..=c {
                edges.push((u, v, k));
            }
        }
    }
    ColoredMultigraph::new(n, c, &edges).expect("rainbow complete parameters are valid")
}

fn bad(family: FamilyId, reason: impl Into<String>) -> ExtremalError {
    ExtremalError::BadParameters {
        family,
        reason: reason.into(),
    }
}

/// Rainbow complete on `n - 1` vertices plus one vertex joined to everything
/// in color 1 only. One edge short of the two-color edge-count threshold and
/// without a proper Hamiltonian cycle.
pub fn extremal_2col_edges(n: usize) -> Result<(ColoredMultigraph, ExtremalSpec), ExtremalError> {
    let family = FamilyId::TwoColEdgesExtremal;
    if n < 4 || n % 2 != 0 {
        return Err(bad(family, format!("needs even n >= 4, got {n}")));
    }
    let x = n - 1;
    let mut edges = Vec::new();
    for u in 0..n - 1 {
        for v in u + 1..n - 1 {
            edges.push((u, v, 1));
            edges.push((u, v, 2));
        }
        edges.push((u, x, 1));
    }
    let g = ColoredMultigraph::new(n, 2, &edges)?;
    let spec = ExtremalSpec {
        family,
        n,
        c: 2,
        claimed_edges: 2 * choose2(n - 1) + (n - 1),
        claims: vec![
            Claim::NoProperHamCycle,
            Claim::MinRainbowDegree { value: 1 },
            Claim::Connected,
        ],
    };
    debug_assert_eq!(g.edge_count(), spec.claimed_edges);
    Ok((g, spec))
}

/// Complete color-2 graph on `n - 2` vertices, two further vertices joined to
/// vertex 0 in color 2, all superposed with a complete color-1 graph on `n`.
/// Rainbow degree two, one edge below the rainbow-degree threshold, and no
/// proper Hamiltonian cycle because color 2 has no perfect matching.
pub fn extremal_2col_rainbow(n: usize) -> Result<(ColoredMultigraph, ExtremalSpec), ExtremalError> {
    let family = FamilyId::TwoColRainbowExtremal;
    if n < 10 || n % 2 != 0 {
        return Err(bad(family, format!("needs even n >= 10, got {n}")));
    }
    let (p1, p2) = (n - 2, n - 1);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v, 1));
        }
    }
    for u in 0..n - 2 {
        for v in u + 1..n - 2 {
            edges.push((u, v, 2));
        }
    }
    edges.push((0, p1, 2));
    edges.push((0, p2, 2));
    let g = ColoredMultigraph::new(n, 2, &edges)?;
    let spec = ExtremalSpec {
        family,
        n,
        c: 2,
        claimed_edges: choose2(n) + choose2(n - 2) + 2,
        claims: vec![
            Claim::NoProperHamCycle,
            Claim::MinRainbowDegree { value: 2 },
            Claim::NoPerfectMatchingInColor { color: 2 },
            Claim::PerfectMatchingInColor { color: 1 },
            Claim::Connected,
        ],
    };
    debug_assert_eq!(g.edge_count(), spec.claimed_edges);
    Ok((g, spec))
}

/// Rainbow complete on `n - 1` vertices plus one vertex joined to everything
/// in color 1 only; the many-color analog of [`extremal_2col_edges`].
pub fn extremal_ccol_edges(
    n: usize,
    c: usize,
) -> Result<(ColoredMultigraph, ExtremalSpec), ExtremalError> {
    let family = FamilyId::CColEdgesExtremal;
    if c < 3 || c >= n {
        return Err(bad(
            family,
            format!("needs 3 <= c < n, got n = {n}, c = {c}"),
        ));
    }
    let x = n - 1;
    let mut edges = Vec::new();
    for u in 0..n - 1 {
        for v in u + 1..n - 1 {
            for k in 1..=c {
                edges.push((u, v, k));
            }
        }
        edges.push((u, x, 1));
    }
    let g = ColoredMultigraph::new(n, c, &edges)?;
    let spec = ExtremalSpec {
        family,
        n,
        c,
        claimed_edges: c * choose2(n - 1) + (n - 1),
        claims: vec![
            Claim::NoProperHamCycle,
            Claim::MinRainbowDegree { value: 1 },
            Claim::Connected,
        ],
    };
    debug_assert_eq!(g.edge_count(), spec.claimed_edges);
    Ok((g, spec))
}

/// Rainbow complete on `n - 1` vertices plus one vertex joined to a single
/// vertex in every color. Rainbow degree `c` but a cut vertex, so no proper
/// Hamiltonian cycle.
pub fn extremal_ccol_rainbow(
    n: usize,
    c: usize,
) -> Result<(ColoredMultigraph, ExtremalSpec), ExtremalError> {
    let family = FamilyId::CColRainbowExtremal;
    if n < 4 || c < 3 {
        return Err(bad(
            family,
            format!("needs n >= 4 and c >= 3, got n = {n}, c = {c}"),
        ));
    }
    let x = n - 1;
    let mut edges = Vec::new();
    for u in 0..n - 1 {
        for v in u + 1..n - 1 {
            for k in 1..=c {
                edges.push((u, v, k));
            }
        }
    }
    for k in 1..=c {
        edges.push((0, x, k));
    }
    let g = ColoredMultigraph::new(n, c, &edges)?;
    let spec = ExtremalSpec {
        family,
        n,
        c,
        claimed_edges: c * choose2(n - 1) + c,
        claims: vec![
            Claim::NoProperHamCycle,
            Claim::MinRainbowDegree { value: c },
            Claim::NotTwoConnected,
            Claim::Connected,
        ],
    };
    debug_assert_eq!(g.edge_count(), spec.claimed_edges);
    Ok((g, spec))
}

/// Rainbow complete on `n - 2` vertices plus two vertices joined in every
/// color to vertices 0 and 1 only. 2-connected with rainbow degree `c`, yet
/// the two attached vertices compete for the same two anchors, so no proper
/// Hamiltonian cycle exists.
pub fn extremal_conjecture(
    n: usize,
    c: usize,
) -> Result<(ColoredMultigraph, ExtremalSpec), ExtremalError> {
    let family = FamilyId::ConjectureExtremal;
    if n < 10 || c < 3 {
        return Err(bad(
            family,
            format!("needs n >= 10 and c >= 3, got n = {n}, c = {c}"),
        ));
    }
    let (x1, x2) = (n - 2, n - 1);
    let mut edges = Vec::new();
    for u in 0..n - 2 {
        for v in u + 1..n - 2 {
            for k in 1..=c {
                edges.push((u, v, k));
            }
        }
    }
    for &x in &[x1, x2] {
        for &y in &[0usize, 1] {
            for k in 1..=c {
                edges.push((y, x, k));
            }
        }
    }
    let g = ColoredMultigraph::new(n, c, &edges)?;
    let spec = ExtremalSpec {
        family,
        n,
        c,
        claimed_edges: c * choose2(n - 2) + 4 * c,
        claims: vec![
            Claim::NoProperHamCycle,
            Claim::MinRainbowDegree { value: c },
            Claim::TwoConnected,
        ],
    };
    debug_assert_eq!(g.edge_count(), spec.claimed_edges);
    Ok((g, spec))
}

/// Dispatch by family id; `n` and `c` are validated per family.
pub fn generate(
    family: FamilyId,
    n: usize,
    c: usize,
) -> Result<(ColoredMultigraph, ExtremalSpec), ExtremalError> {
    match family {
        FamilyId::RainbowComplete => {
            if n > crate::graph::MAX_VERTICES || c == 0 || c > crate::graph::MAX_COLORS {
                return Err(bad(family, format!("bad parameters n = {n}, c = {c}")));
            }
            let g = rainbow_complete(n, c);
            let spec = ExtremalSpec {
                family,
                n,
                c,
                claimed_edges: c * choose2(n),
                claims: if n >= 2 {
                    vec![Claim::Connected]
                } else {
                    Vec::new()
                },
            };
            Ok((g, spec))
        }
        FamilyId::TwoColEdgesExtremal => extremal_2col_edges(n),
        FamilyId::TwoColRainbowExtremal => extremal_2col_rainbow(n),
        FamilyId::CColEdgesExtremal => extremal_ccol_edges(n, c),
        FamilyId::CColRainbowExtremal => extremal_ccol_rainbow(n, c),
        FamilyId::ConjectureExtremal => extremal_conjecture(n, c),
    }
}

/// The single special vertex of the attached-vertex families, when defined.
pub fn attached_vertex(family: FamilyId, n: usize) -> Option<Vertex> {
    match family {
        FamilyId::TwoColEdgesExtremal
        | FamilyId::CColEdgesExtremal
        | FamilyId::CColRainbowExtremal => Some(n - 1),
        _ => None,
    }
}
