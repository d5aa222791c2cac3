//! Color-count reduction: recolor one color class onto another, keeping the
//! graph connected and dense enough, then lift any proper Hamiltonian cycle
//! of the merged graph back to the original colors.

use std::fmt;

use crate::graph::{
    verify_proper_cycle, CertificateError, ColoredMultigraph, CycleCertificate, GraphError,
    MergeRecord,
};

/// Why no color reduction was performed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReduceError {
    NeedsFourColors {
        c: usize,
    },
    EdgeBoundUnmet {
        m: usize,
        needed: usize,
    },
    Disconnected,
    Graph(GraphError),
    /// Exhausted every ordered color pair; the counting says this cannot
    /// happen, so it indicates a bug and is never ignored.
    NoQualifyingMerge,
}

impl fmt::Display for ReduceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReduceError::NeedsFourColors { c } => {
                write!(f, "color reduction needs c >= 4, graph has {c}")
            }
            ReduceError::EdgeBoundUnmet { m, needed } => {
                write!(f, "m = {m} below the reduction requirement {needed}")
            }
            ReduceError::Disconnected => write!(f, "graph is disconnected"),
            ReduceError::Graph(e) => write!(f, "{e}"),
            ReduceError::NoQualifyingMerge => {
                write!(f, "no color pair satisfies the merge postconditions")
            }
        }
    }
}

impl std::error::Error for ReduceError {}

impl From<GraphError> for ReduceError {
    fn from(e: GraphError) -> Self {
        ReduceError::Graph(e)
    }
}

/// Finds a color merge whose result is connected and keeps at least
/// `(c - 1) * ell + 1` edges, given `c >= 4` and `m >= c * ell + 1`. When the
/// input has full rainbow degree the merged graph has full rainbow degree
/// again (one color fewer); this is checked as part of qualification. Ordered
/// pairs are tried in ascending `(j, t)` order and the first fit wins.
pub fn reduce_color_count(
    g: &ColoredMultigraph,
    ell: usize,
) -> Result<(ColoredMultigraph, MergeRecord), ReduceError> {
    let c = g.color_count();
    if c < 4 {
        return Err(ReduceError::NeedsFourColors { c });
    }
    let needed = c * ell + 1;
    if g.edge_count() < needed {
        return Err(ReduceError::EdgeBoundUnmet {
            m: g.edge_count(),
            needed,
        });
    }
    if !g.is_connected() {
        return Err(ReduceError::Disconnected);
    }
    let full_rainbow = g.min_rainbow_degree() == c;
    let merged_needed = (c - 1) * ell + 1;
    for j in 1..=c {
        for t in 1..=c {
            if j == t {
                continue;
            }
            let (merged, record) = g.merge_colors(j, t)?;
            if merged.edge_count() < merged_needed {
                continue;
            }
            if !merged.is_connected() {
                continue;
            }
            if full_rainbow && merged.min_rainbow_degree() != c - 1 {
                continue;
            }
            return Ok((merged, record));
        }
    }
    Err(ReduceError::NoQualifyingMerge)
}

/// Why a merged-graph cycle could not be lifted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftError {
    NotProperInMerged(CertificateError),
    Graph(GraphError),
    /// Properness is preserved by construction, so this indicates a bug.
    NotProperInOriginal(CertificateError),
}

impl fmt::Display for LiftError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LiftError::NotProperInMerged(e) => write!(f, "cycle not proper in merged graph: {e}"),
            LiftError::Graph(e) => write!(f, "{e}"),
            LiftError::NotProperInOriginal(e) => {
                write!(f, "lifted cycle fails in the original graph: {e}")
            }
        }
    }
}

impl std::error::Error for LiftError {}

impl From<GraphError> for LiftError {
    fn from(e: GraphError) -> Self {
        LiftError::Graph(e)
    }
}

/// Reassigns original colors to a proper Hamiltonian cycle of the merged
/// graph. A merged color with two preimages resolves to the target color
/// when the original carries it on that pair, otherwise to the merged-away
/// color. Adjacent cycle edges never shared the merged color, so properness
/// survives.
pub fn lift_cycle(
    record: &MergeRecord,
    original: &ColoredMultigraph,
    cert: &CycleCertificate,
) -> Result<CycleCertificate, LiftError> {
    let (merged, check) = original.merge_colors(record.merged_color, record.target_color)?;
    debug_assert_eq!(&check, record, "record does not match the original graph");
    verify_proper_cycle(&merged, cert).map_err(LiftError::NotProperInMerged)?;

    let l = cert.len();
    let mut colors = Vec::with_capacity(l);
    for i in 0..l {
        let (u, v) = (cert.vertices[i], cert.vertices[(i + 1) % l]);
        let new_color = cert.edge_colors[i];
        let mut pre = record.preimages(new_color);
        // Prefer the target over the merged-away color.
        pre.sort_unstable_by_key(|&k| (k == record.merged_color, k));
        let chosen = pre
            .into_iter()
            .find(|&k| original.has_edge(u, v, k))
            .expect("every merged edge has an original color");
        colors.push(chosen);
    }
    let lifted = CycleCertificate::new(cert.vertices.clone(), colors);
    verify_proper_cycle(original, &lifted).map_err(LiftError::NotProperInOriginal)?;
    Ok(lifted)
}
