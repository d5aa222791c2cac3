//! Constructive solvers for the many-color sufficient conditions.
//!
//! With four or more colors both arguments first try to merge one color
//! class into another while keeping enough edges, reducing to three colors.
//! When no merge is dense enough, every pair of colors shares many parallel
//! edges; the simple graph of those shared pairs is either a clique plus a
//! pendant (closed by a two-colored path through the clique) or 2-connected
//! and thus Hamiltonian by the cited edge-count result, with an odd order
//! fixed by one edge of a third color.
//!
//! At three colors the edge-count argument contracts a fully parallel pair;
//! the rainbow-degree argument additionally routes through a high-degree
//! vertex, a degree-one subroutine, or a general triple contraction chosen
//! to stay within the deletion budget.

use crate::graph::{
    choose2, contract_triple, verify_proper_cycle, Color, ColoredMultigraph, ContractionRule,
    CycleCertificate, NeighborSource, PathCertificate, Vertex,
};
use crate::solver::{
    find_ham_cycle_simple, find_proper_path, Budget, SearchConstraints, SimpleHamOutcome,
    SolveOutcome, SolveStatus,
};

use super::{
    check_hypotheses, close_path_through, exact_ham, finish, internal,
    lift_cycle_through_contraction, reduce_color_count, Fail, SolveError, TheoremId,
};

/// Edge-count condition for `3 <= c < n`: a proper Hamiltonian cycle
/// whenever `m >= c*choose2(n-1) + n`.
pub fn solve_ccol_edges(g: &ColoredMultigraph) -> Result<SolveOutcome, SolveError> {
    solve_ccol_edges_with(g, &Budget::default())
}

/// [`solve_ccol_edges`] with an explicit budget.
pub fn solve_ccol_edges_with(
    g: &ColoredMultigraph,
    budget: &Budget,
) -> Result<SolveOutcome, SolveError> {
    finish(g, TheoremId::CColEdges, |trace| go_edges(g, budget, trace))
}

pub(crate) fn go_edges(
    g: &ColoredMultigraph,
    budget: &Budget,
    trace: &mut Vec<String>,
) -> Result<CycleCertificate, Fail> {
    let n = g.vertex_count();
    let c = g.color_count();

    if c >= 4 {
        for j in 1..=c {
            for t in 1..=c {
                if j == t {
                    continue;
                }
                let (merged, record) = g
                    .merge_colors(j, t)
                    .map_err(|e| Fail::Internal(format!("merge: {e}")))?;
                if !check_hypotheses(&merged, TheoremId::CColEdges).satisfied {
                    continue;
                }
                trace.push("merge-color".into());
                let sub = go_edges(&merged, budget, trace)?;
                return super::lift_cycle(&record, g, &sub)
                    .map_err(|e| Fail::Internal(format!("merge lift: {e}")));
            }
        }
        return intersection_route(g, budget, trace);
    }

    if n == 4 {
        trace.push("base-case-exact".into());
        return exact_ham(g, budget);
    }

    // A pair joined in all three colors exists above the two-per-pair bound.
    let Some((v, w)) = lowest_triple_parallel_pair(g) else {
        return internal("no fully parallel pair; edge bound contradicted");
    };
    let high = 3 * n - 4;
    if g.total_degree(v) >= high || g.total_degree(w) >= high {
        let hv = if g.total_degree(v) >= high { v } else { w };
        return high_degree_route(g, budget, trace, hv);
    }

    // Contract the pair; pick the first color assignment that keeps the
    // smaller instance above its own threshold.
    for rule in ContractionRule::all_one_of_each() {
        let (h, con) = contract_triple(g, v, v, w, &rule)
            .map_err(|e| Fail::Internal(format!("contract: {e}")))?;
        if !check_hypotheses(&h, TheoremId::CColEdges).satisfied {
            continue;
        }
        trace.push("contract-parallel-pair".into());
        let sub = go_edges(&h, budget, trace)?;
        return Ok(lift_cycle_through_contraction(g, &con, &sub)?);
    }
    internal("no pair contraction keeps the edge bound; counting contradicted")
}

fn lowest_triple_parallel_pair(g: &ColoredMultigraph) -> Option<(Vertex, Vertex)> {
    let n = g.vertex_count();
    for u in 0..n {
        for v in u + 1..n {
            if (1..=3).all(|k| g.has_edge(u, v, k)) {
                return Some((u, v));
            }
        }
    }
    None
}

/// Removes one vertex of near-full degree, takes a proper Hamiltonian path
/// of the rest (guaranteed by the path edge bound), and reconnects.
fn high_degree_route(
    g: &ColoredMultigraph,
    budget: &Budget,
    trace: &mut Vec<String>,
    hv: Vertex,
) -> Result<CycleCertificate, Fail> {
    trace.push("high-degree-vertex".into());
    let n = g.vertex_count();
    let (sub, ids) = g.remove_vertices(&[hv]);
    let php_threshold = 3 * choose2(n - 2) + 1;
    if sub.edge_count() < php_threshold {
        return internal(format!(
            "removing vertex {hv} leaves {} edges, below the path bound {php_threshold}",
            sub.edge_count()
        ));
    }
    let out = find_proper_path(&sub, &SearchConstraints::path_of_length(n - 1), budget)
        .map_err(|e| Fail::Internal(format!("path search: {e}")))?;
    let path = match out.status {
        SolveStatus::Found => {
            let p = out.certificate.unwrap();
            let p = p.as_path().unwrap();
            PathCertificate::new(
                p.vertices.iter().map(|&t| ids[t]).collect(),
                p.edge_colors.clone(),
            )
        }
        SolveStatus::Timeout => return Err(Fail::Timeout),
        _ => return internal("guaranteed Hamiltonian path not found"),
    };
    match close_path_through(g, &path, hv) {
        Some(cert) => Ok(cert),
        None => internal(format!(
            "cannot reconnect vertex {hv} to the path endpoints"
        )),
    }
}

/// The shared-parallel-pairs route for `c >= 4` when every merge is too
/// lossy: the intersection graph of colors 1 and 2 carries the cycle.
fn intersection_route(
    g: &ColoredMultigraph,
    budget: &Budget,
    trace: &mut Vec<String>,
) -> Result<CycleCertificate, Fail> {
    let n = g.vertex_count();
    let c = g.color_count();
    let (j, l) = (1usize, 2usize);
    let gi = g.parallel_intersection(j, l);
    if gi.edge_count() < choose2(n - 1) + 1 {
        return internal(format!(
            "intersection graph has {} edges, below {}; merge failure counting broken",
            gi.edge_count(),
            choose2(n - 1) + 1
        ));
    }

    if !gi.is_2connected() {
        trace.push("intersection-not-2connected".into());
        // Clique plus pendant: route the pendant through two of its colored
        // edges outside {j, l} and walk the clique two-colored.
        let v = (0..n).min_by_key(|&t| (gi.degree(t), t)).unwrap();
        let mut attach = None;
        'outer: for x in 0..n {
            if x == v {
                continue;
            }
            for k1 in g.colors_between(v, x) {
                if k1 == j || k1 == l {
                    continue;
                }
                for y in 0..n {
                    if y == v || y == x {
                        continue;
                    }
                    for k2 in g.colors_between(v, y) {
                        if k2 == j || k2 == l || k2 == k1 {
                            continue;
                        }
                        attach = Some((x, k1, y, k2));
                        break 'outer;
                    }
                }
            }
        }
        let Some((x, k1, y, k2)) = attach else {
            return internal("pendant vertex lacks two distinct extra colors");
        };
        let mut order = vec![x];
        order.extend((0..n).filter(|&t| t != v && t != x && t != y));
        order.push(y);
        let mut vertices = vec![v];
        vertices.extend_from_slice(&order);
        let mut colors = vec![k1];
        for i in 0..order.len() - 1 {
            let k = if i % 2 == 0 { j } else { l };
            if !g.has_edge(order[i], order[i + 1], k) {
                return internal("clique part of the intersection graph is incomplete");
            }
            colors.push(k);
        }
        colors.push(k2);
        let cert = CycleCertificate::new(vertices, colors);
        return match verify_proper_cycle(g, &cert) {
            Ok(()) => Ok(cert),
            Err(e) => internal(format!("pendant closure fails: {e}")),
        };
    }

    trace.push("intersection-2connected".into());
    let cyc = match find_ham_cycle_simple(&gi, budget) {
        SimpleHamOutcome::Found(cyc) => cyc,
        SimpleHamOutcome::Timeout => return Err(Fail::Timeout),
        SimpleHamOutcome::Infeasible => {
            return internal("2-connected dense intersection graph has no Hamiltonian cycle")
        }
    };
    if n % 2 == 0 {
        let colors: Vec<Color> = (0..n).map(|i| if i % 2 == 0 { j } else { l }).collect();
        let cert = CycleCertificate::new(cyc, colors);
        return match verify_proper_cycle(g, &cert) {
            Ok(()) => Ok(cert),
            Err(e) => internal(format!("two-coloring the simple cycle fails: {e}")),
        };
    }
    // Odd order: one edge of the cycle must also carry a third color.
    for k in 3..=c {
        for i in 0..n {
            let (a, b) = (cyc[i], cyc[(i + 1) % n]);
            if !g.has_edge(a, b, k) {
                continue;
            }
            let vertices: Vec<Vertex> = (0..n).map(|s| cyc[(i + 1 + s) % n]).collect();
            let mut colors: Vec<Color> =
                (0..n - 1).map(|s| if s % 2 == 0 { j } else { l }).collect();
            colors.push(k);
            let cert = CycleCertificate::new(vertices, colors);
            if verify_proper_cycle(g, &cert).is_ok() {
                return Ok(cert);
            }
        }
    }
    internal("no third-color edge along the simple cycle; counting contradicted")
}

/// Rainbow-degree condition for `c >= 3`: a proper Hamiltonian cycle
/// whenever `rd = c` and `m >= c*choose2(n-1) + c + 1`.
pub fn solve_ccol_rainbow(g: &ColoredMultigraph) -> Result<SolveOutcome, SolveError> {
    solve_ccol_rainbow_with(g, &Budget::default())
}

/// [`solve_ccol_rainbow`] with an explicit budget.
pub fn solve_ccol_rainbow_with(
    g: &ColoredMultigraph,
    budget: &Budget,
) -> Result<SolveOutcome, SolveError> {
    finish(g, TheoremId::CColRainbow, |trace| {
        go_rainbow(g, budget, trace)
    })
}

fn go_rainbow(
    g: &ColoredMultigraph,
    budget: &Budget,
    trace: &mut Vec<String>,
) -> Result<CycleCertificate, Fail> {
    let n = g.vertex_count();
    let c = g.color_count();

    if c >= 4 {
        // Reducing with ell = choose2(n-1) + 1 keeps both the rainbow degree
        // and exactly the (c-1)-color threshold.
        let ell = choose2(n - 1) + 1;
        let (merged, record) = match reduce_color_count(g, ell) {
            Ok(ok) => ok,
            Err(e) => return internal(format!("color reduction failed: {e}")),
        };
        if !check_hypotheses(&merged, TheoremId::CColRainbow).satisfied {
            return internal("merged graph lost the rainbow hypotheses");
        }
        trace.push("merge-color".into());
        let sub = go_rainbow(&merged, budget, trace)?;
        return super::lift_cycle(&record, g, &sub)
            .map_err(|e| Fail::Internal(format!("merge lift: {e}")));
    }

    if n <= 5 {
        trace.push("base-case-exact".into());
        return exact_ham(g, budget);
    }

    if (0..n).all(|t| g.total_degree(t) >= 3 * n - 6) {
        // Total degree everywhere large forces the edge-count condition.
        trace.push("all-degrees-large".into());
        if !check_hypotheses(g, TheoremId::CColEdges).satisfied {
            return internal("degree sum fails to reach the edge-count condition");
        }
        return go_edges(g, budget, trace);
    }

    let v = (0..n)
        .find(|&t| g.total_degree(t) <= 3 * n - 7)
        .expect("some vertex is below the all-large bound");
    if let Some(w) = (0..n).find(|&t| g.total_degree(t) >= 3 * n - 4) {
        return high_degree_route(g, budget, trace, w);
    }

    let triple_nbr = (0..n).find(|&t| t != v && (1..=3).all(|k| g.has_edge(v, t, k)));
    if let Some(w) = triple_nbr {
        // Contract the fully parallel pair under a deletion budget of 3n-6.
        // Among qualifying color assignments, prefer one that keeps rainbow
        // degree (recursion), then one whose degree drop maps to a
        // degree-one vertex (subroutine), before the almost-complete close.
        let qualifying: Vec<_> = ContractionRule::all_one_of_each()
            .into_iter()
            .filter_map(|rule| {
                contract_triple(g, v, v, w, &rule)
                    .ok()
                    .filter(|(_, con)| con.edges_removed <= 3 * n - 6)
            })
            .collect();
        if qualifying.is_empty() {
            return internal("no color assignment meets the pair deletion budget");
        }
        for (h, con) in &qualifying {
            if h.min_rainbow_degree() == 3 {
                if !check_hypotheses(h, TheoremId::CColRainbow).satisfied {
                    return internal("contracted pair lost the rainbow hypotheses");
                }
                trace.push("contract-parallel-pair".into());
                let sub = go_rainbow(h, budget, trace)?;
                return Ok(lift_cycle_through_contraction(g, con, &sub)?);
            }
        }
        for (h, con) in &qualifying {
            let poor = (0..h.vertex_count())
                .find(|&t| h.rainbow_degree(t) < 3)
                .expect("rainbow degree dropped");
            if poor != con.new_vertex {
                let x = con.to_original[poor];
                let Some(i) = (1..=3).find(|&k| g.colored_degree(x, k) == 1) else {
                    return internal("poor survivor lacks a degree-one color");
                };
                return degree_one_route(g, budget, trace, x, i);
            }
            for i in 1..=3 {
                if h.colored_degree(poor, i) > 0 {
                    continue;
                }
                match con.rule.source(i) {
                    NeighborSource::FromA if g.colored_degree(v, i) == 1 => {
                        return degree_one_route(g, budget, trace, v, i);
                    }
                    NeighborSource::FromB if g.colored_degree(w, i) == 1 => {
                        return degree_one_route(g, budget, trace, w, i);
                    }
                    _ => {}
                }
            }
        }
        trace.push("almost-complete-closure".into());
        return almost_complete_closure(g, budget, v, w);
    }

    // No fully parallel pair at v: contract v with two differently attached
    // neighbors, choosing the attachment colors to stay within the deletion
    // budget of 5n-9. Each partner donates the other partner's attachment
    // color and the remaining color comes from the intersection; with that
    // shape every expansion of the new vertex stays proper.
    for x in 0..n {
        if x == v || g.colors_between(v, x).is_empty() {
            continue;
        }
        for y in 0..n {
            if y == v || y == x || g.colors_between(v, y).is_empty() {
                continue;
            }
            for ka in g.colors_between(v, x) {
                for kb in g.colors_between(v, y) {
                    if ka == kb {
                        continue;
                    }
                    let third = 6 - ka - kb;
                    let mut sources = vec![NeighborSource::Intersection; 3];
                    sources[kb - 1] = NeighborSource::FromA;
                    sources[ka - 1] = NeighborSource::FromB;
                    sources[third - 1] = NeighborSource::Intersection;
                    let rule = ContractionRule::new(sources);
                    let Ok((h, con)) = contract_triple(g, v, x, y, &rule) else {
                        continue;
                    };
                    if con.edges_removed > 5 * n - 9 {
                        continue;
                    }
                    if !check_hypotheses(&h, TheoremId::CColEdges).satisfied {
                        continue;
                    }
                    trace.push("contract-general-triple".into());
                    let sub = go_edges(&h, budget, trace)?;
                    return Ok(lift_cycle_through_contraction(g, &con, &sub)?);
                }
            }
        }
    }
    internal("no triple contraction meets the deletion budget; counting contradicted")
}

/// Subroutine for a vertex with a degree-one color: contract it with its
/// sole same-color neighbor and a second partner; if the contraction is too
/// lossy, build the cycle directly from a Hamiltonian path of the rest or
/// re-contract with a path endpoint.
fn degree_one_route(
    g: &ColoredMultigraph,
    budget: &Budget,
    trace: &mut Vec<String>,
    x: Vertex,
    i: Color,
) -> Result<CycleCertificate, Fail> {
    trace.push("degree-one-lemma".into());
    let n = g.vertex_count();
    let z = g
        .color_neighbors(x, i)
        .next()
        .expect("degree-one color has its single neighbor");
    // Second partner: lowest neighbor over the other colors.
    let mut partner = None;
    'search: for k in 1..=3 {
        if k == i {
            continue;
        }
        for t in g.color_neighbors(x, k) {
            if t != z {
                partner = Some((t, k));
                break 'search;
            }
        }
    }
    let Some((y, k)) = partner else {
        return internal("degree-one vertex adjacent only to its mate; edge bound contradicted");
    };
    let third = 6 - i - k;
    let mut sources = vec![NeighborSource::Intersection; 3];
    sources[i - 1] = NeighborSource::FromA;
    sources[k - 1] = NeighborSource::FromB;
    sources[third - 1] = NeighborSource::Intersection;
    let rule = ContractionRule::new(sources);
    let (h, con) =
        contract_triple(g, x, y, z, &rule).map_err(|e| Fail::Internal(format!("contract: {e}")))?;
    if con.edges_removed <= 5 * n - 9 {
        if !check_hypotheses(&h, TheoremId::CColEdges).satisfied {
            return internal("degree-one contraction lost the edge bound");
        }
        let sub = go_edges(&h, budget, trace)?;
        return Ok(lift_cycle_through_contraction(g, &con, &sub)?);
    }

    // Too many parallel edges inside the triple: the mate pair is rich, and
    // a Hamiltonian path of the rest closes through x and z directly.
    let (sub_g, ids) = g.remove_vertices(&[x, z]);
    if sub_g.edge_count() < 3 * choose2(n - 3) + 1 {
        return internal("rest of the graph is below the path bound");
    }
    let out = find_proper_path(&sub_g, &SearchConstraints::path_of_length(n - 2), budget)
        .map_err(|e| Fail::Internal(format!("path search: {e}")))?;
    let path = match out.status {
        SolveStatus::Found => {
            let p = out.certificate.unwrap();
            let p = p.as_path().unwrap();
            PathCertificate::new(
                p.vertices.iter().map(|&t| ids[t]).collect(),
                p.edge_colors.clone(),
            )
        }
        SolveStatus::Timeout => return Err(Fail::Timeout),
        _ => return internal("guaranteed Hamiltonian path not found"),
    };
    for (first, second) in [(x, z), (z, x)] {
        for p in [path.clone(), path.reversed()] {
            let a_end = p.first();
            let b_end = p.last();
            for d1 in g.colors_between(first, second) {
                for d2 in g.colors_between(second, a_end) {
                    if d2 == d1 || d2 == p.first_color() {
                        continue;
                    }
                    for d3 in g.colors_between(b_end, first) {
                        if d3 == p.last_color() || d3 == d1 {
                            continue;
                        }
                        let mut vertices = vec![first, second];
                        vertices.extend_from_slice(&p.vertices);
                        let mut colors = vec![d1, d2];
                        colors.extend_from_slice(&p.edge_colors);
                        colors.push(d3);
                        let cert = CycleCertificate::new(vertices, colors);
                        if verify_proper_cycle(g, &cert).is_ok() {
                            return Ok(cert);
                        }
                    }
                }
            }
        }
    }

    // Swap the second partner for a path endpoint and contract again.
    for end in [path.first(), path.last()] {
        if end == y || end == z {
            continue;
        }
        for k2 in g.colors_between(x, end) {
            if k2 == i {
                continue;
            }
            let third2 = 6 - i - k2;
            let mut sources = vec![NeighborSource::Intersection; 3];
            sources[i - 1] = NeighborSource::FromA;
            sources[k2 - 1] = NeighborSource::FromB;
            sources[third2 - 1] = NeighborSource::Intersection;
            let rule2 = ContractionRule::new(sources);
            let Ok((h2, con2)) = contract_triple(g, x, end, z, &rule2) else {
                continue;
            };
            if con2.edges_removed > 5 * n - 9 {
                continue;
            }
            if !check_hypotheses(&h2, TheoremId::CColEdges).satisfied {
                continue;
            }
            let sub = go_edges(&h2, budget, trace)?;
            return Ok(lift_cycle_through_contraction(g, &con2, &sub)?);
        }
    }
    internal("degree-one subroutine exhausted its cases")
}

/// Both pair vertices have small per-color degree sums, so the rest of the
/// graph is nearly rainbow complete; close a constrained Hamiltonian path of
/// the rest through both vertices and the pair edge.
fn almost_complete_closure(
    g: &ColoredMultigraph,
    budget: &Budget,
    v: Vertex,
    w: Vertex,
) -> Result<CycleCertificate, Fail> {
    let n = g.vertex_count();
    for k in 1..=3 {
        if g.colored_degree(v, k) + g.colored_degree(w, k) > n {
            return internal("pair degrees not small; intersection emptiness contradicted");
        }
    }
    let (sub, ids) = g.remove_vertices(&[v, w]);
    let to_sub = |orig: Vertex| {
        ids.iter()
            .position(|&t| t == orig)
            .expect("vertex survives")
    };
    let all: Vec<Color> = (1..=3).collect();
    for vp in 0..n {
        if vp == v || vp == w {
            continue;
        }
        for cv in g.colors_between(v, vp) {
            for wp in 0..n {
                if wp == v || wp == w || wp == vp {
                    continue;
                }
                for cw in g.colors_between(w, wp) {
                    let Some(d) = g
                        .colors_between(v, w)
                        .into_iter()
                        .find(|&d| d != cv && d != cw)
                    else {
                        continue;
                    };
                    let constraints = SearchConstraints {
                        required_start: Some(to_sub(vp)),
                        required_end: Some(to_sub(wp)),
                        first_color_in: Some(all.iter().copied().filter(|&t| t != cv).collect()),
                        last_color_in: Some(all.iter().copied().filter(|&t| t != cw).collect()),
                        first_equals_last_color: false,
                        target_length: n - 2,
                    };
                    let out = find_proper_path(&sub, &constraints, budget)
                        .map_err(|e| Fail::Internal(format!("path search: {e}")))?;
                    match out.status {
                        SolveStatus::Found => {
                            let p = out.certificate.unwrap();
                            let p = p.as_path().unwrap();
                            let mut vertices = vec![v];
                            vertices.extend(p.vertices.iter().map(|&t| ids[t]));
                            vertices.push(w);
                            let mut colors = vec![cv];
                            colors.extend_from_slice(&p.edge_colors);
                            colors.push(cw);
                            colors.push(d);
                            let cert = CycleCertificate::new(vertices, colors);
                            if verify_proper_cycle(g, &cert).is_ok() {
                                return Ok(cert);
                            }
                        }
                        SolveStatus::Timeout => return Err(Fail::Timeout),
                        _ => {}
                    }
                }
            }
        }
    }
    internal("no constrained path closes the almost-complete instance")
}
