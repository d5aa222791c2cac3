//! Lifting proper cycles back through a vertex contraction.
//!
//! A cycle that avoids the replacement vertex translates directly. A cycle
//! through it expands the vertex into the segment it stands for: `a - b` for
//! a pair contraction, `a - center - b` for a triple. Which end receives
//! which external edge is dictated by the rule (an `Intersection` color may
//! attach at either end), and the internal edge colors are chosen to keep
//! the cycle proper; the contraction rules used by the solvers always leave
//! such a choice.

use crate::graph::{
    verify_proper_cycle, ColoredMultigraph, Contraction, CycleCertificate, NeighborSource, Vertex,
};

use super::{translate_cycle, SolveError};

fn may_attach(con: &Contraction, color: usize, end: Vertex) -> bool {
    match con.rule.source(color) {
        NeighborSource::FromA => end == con.a,
        NeighborSource::FromB => end == con.b,
        NeighborSource::Intersection => true,
    }
}

/// Lifts `cert` (a proper cycle of the contracted graph) back into
/// `original`.
pub fn lift_cycle_through_contraction(
    original: &ColoredMultigraph,
    con: &Contraction,
    cert: &CycleCertificate,
) -> Result<CycleCertificate, SolveError> {
    if !cert.contains(con.new_vertex) {
        let lifted = translate_cycle(con, cert);
        return match verify_proper_cycle(original, &lifted) {
            Ok(()) => Ok(lifted),
            Err(e) => Err(SolveError::Internal(format!(
                "translated cycle fails verification: {e}"
            ))),
        };
    }

    // Rotate the replacement vertex to the end: the cycle then reads
    // q ... p s (closing back to q), with known junction colors.
    let l = cert.len();
    let pos = cert
        .vertices
        .iter()
        .position(|&v| v == con.new_vertex)
        .unwrap();
    let start = (pos + 1) % l;
    let rotated = cert.rotate_to(cert.vertices[start]);
    let before: Vec<Vertex> = rotated.vertices[..l - 1]
        .iter()
        .map(|&v| con.to_original[v])
        .collect();
    let into_color = rotated.edge_colors[l - 2]; // p - s
    let out_color = rotated.edge_colors[l - 1]; // s - q
    let p = before[l - 2];
    let q = before[0];

    let ends = [(con.a, con.b), (con.b, con.a)];
    for (e1, e2) in ends {
        if !may_attach(con, into_color, e1) || !may_attach(con, out_color, e2) {
            continue;
        }
        if !original.has_edge(p, e1, into_color) || !original.has_edge(q, e2, out_color) {
            continue;
        }
        if con.is_pair() {
            for d in original.colors_between(e1, e2) {
                if d == into_color || d == out_color {
                    continue;
                }
                let mut vertices = before.clone();
                vertices.push(e1);
                vertices.push(e2);
                let mut colors = rotated.edge_colors[..l - 2].to_vec();
                colors.extend_from_slice(&[into_color, d, out_color]);
                let cand = CycleCertificate::new(vertices, colors);
                if verify_proper_cycle(original, &cand).is_ok() {
                    return Ok(cand);
                }
            }
        } else {
            for d1 in original.colors_between(e1, con.center) {
                if d1 == into_color {
                    continue;
                }
                for d2 in original.colors_between(con.center, e2) {
                    if d2 == d1 || d2 == out_color {
                        continue;
                    }
                    let mut vertices = before.clone();
                    vertices.push(e1);
                    vertices.push(con.center);
                    vertices.push(e2);
                    let mut colors = rotated.edge_colors[..l - 2].to_vec();
                    colors.extend_from_slice(&[into_color, d1, d2, out_color]);
                    let cand = CycleCertificate::new(vertices, colors);
                    if verify_proper_cycle(original, &cand).is_ok() {
                        return Ok(cand);
                    }
                }
            }
        }
    }
    Err(SolveError::Internal(format!(
        "no proper expansion of the contracted vertex (center {}, a {}, b {})",
        con.center, con.a, con.b
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{contract_triple, ContractionRule};
    use crate::solver::{find_proper_ham_cycle, Budget};
    use NeighborSource::*;

    /// Contract a low-degree vertex with two of its neighbors in a dense
    /// two-colored graph, find a cycle in the contraction, and lift it.
    #[test]
    fn lift_through_triple_contraction() {
        let g = crate::extremal::rainbow_complete(8, 2);
        // center 0, a = 1 donates color 2, b = 2 donates color 1.
        let rule = ContractionRule::new(vec![FromB, FromA]);
        let (h, con) = contract_triple(&g, 0, 1, 2, &rule).unwrap();
        let out = find_proper_ham_cycle(&h, &Budget::default());
        let cyc = out.certificate.unwrap();
        let cyc = cyc.as_cycle().unwrap();
        let lifted = lift_cycle_through_contraction(&g, &con, cyc).unwrap();
        assert_eq!(lifted.len(), 8);
        assert_eq!(verify_proper_cycle(&g, &lifted), Ok(()));
        for v in [0, 1, 2] {
            assert!(lifted.contains(v));
        }
    }

    #[test]
    fn lift_through_pair_contraction() {
        let g = crate::extremal::rainbow_complete(7, 3);
        let rule = ContractionRule::new(vec![FromA, FromB, Intersection]);
        let (h, con) = contract_triple(&g, 0, 0, 1, &rule).unwrap();
        let out = find_proper_ham_cycle(&h, &Budget::default());
        let cyc = out.certificate.unwrap();
        let cyc = cyc.as_cycle().unwrap();
        let lifted = lift_cycle_through_contraction(&g, &con, cyc).unwrap();
        assert_eq!(lifted.len(), 7);
        assert_eq!(verify_proper_cycle(&g, &lifted), Ok(()));
    }

    #[test]
    fn avoiding_cycle_translates_ids() {
        let g = crate::extremal::rainbow_complete(8, 2);
        let rule = ContractionRule::new(vec![FromB, FromA]);
        let (_, con) = contract_triple(&g, 0, 1, 2, &rule).unwrap();
        // A 4-cycle among survivors only (new ids 0..5 map to 3..8).
        let cert = CycleCertificate::new(vec![0, 1, 2, 3], vec![1, 2, 1, 2]);
        let lifted = lift_cycle_through_contraction(&g, &con, &cert).unwrap();
        assert_eq!(lifted.vertices, vec![3, 4, 5, 6]);
    }
}
