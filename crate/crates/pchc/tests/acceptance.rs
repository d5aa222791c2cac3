//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its runtime. Expected values are integers from the bound formulas; the
//! independent checks are permutation brute force and direct enumeration.

use std::time::{Duration, Instant};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use pchc::constructive::{
    check_hypotheses, edge_threshold, lemma_cycle_insertion, lift_cycle, reduce_color_count,
    InsertionError, TheoremId,
};
use pchc::extremal::{
    extremal_2col_edges, extremal_2col_rainbow, extremal_ccol_edges, extremal_ccol_rainbow,
    extremal_conjecture, rainbow_complete, FamilyId,
};
use pchc::graph::{choose2, verify_proper_cycle, ColoredMultigraph, CycleCertificate, Vertex};
use pchc::harness::{
    cross_check, degree_one_pair, expected_cycle_length, sample_graph, solve_constructive,
    tightness_sweep, CorpusSpec, EdgeCountRule, RainbowRule,
};
use pchc::solver::{
    find_proper_cycle_of_length, find_proper_ham_cycle, has_perfect_matching_in_color, Budget,
    Certificate, SolveStatus,
};

fn budget() -> Budget {
    Budget::default()
}

fn pass(id: u32, name: &str, started: Instant) {
    println!(
        "ACCEPTANCE {id} ({name}): PASS in {:.2}s",
        started.elapsed().as_secs_f64()
    );
}

/// Criterion 1: the two-color edge-extremal family has exactly
/// `2*choose2(n-1) + n - 1` edges and no proper Hamiltonian cycle.
#[test]
fn criterion_01_edge_extremal_tightness() {
    let t0 = Instant::now();
    for n in [4usize, 6, 8] {
        let (g, spec) = extremal_2col_edges(n).unwrap();
        let expected = 2 * choose2(n - 1) + n - 1;
        assert_eq!(g.edge_count(), expected);
        assert_eq!(spec.claimed_edges, expected);
        assert_eq!(
            g.edge_count() + 1,
            edge_threshold(TheoremId::TwoColEdges, n, 2)
        );
        let out = find_proper_ham_cycle(&g, &budget());
        assert_eq!(out.status, SolveStatus::Infeasible, "n = {n}");
    }
    assert!(t0.elapsed() < Duration::from_secs(30));
    pass(1, "edge-extremal tightness", t0);
}

/// Criterion 2: 300 seeded instances per n in 4..=8 above the two-color
/// edge threshold; every instance solved constructively, verified, with the
/// promised length, and in agreement with the exact solver.
#[test]
fn criterion_02_two_col_edges_positive_sweep() {
    let t0 = Instant::now();
    let spec = CorpusSpec {
        n_range: (4, 8),
        c_range: (2, 2),
        edge_rule: EdgeCountRule::AtLeastThreshold(TheoremId::TwoColEdges),
        rainbow_rule: RainbowRule::Any,
        require_two_connected: false,
        samples_per_combo: 300,
        seed: 0x51,
    };
    assert_eq!(spec.total_samples(), 1500);
    for index in 0..spec.total_samples() {
        let g = sample_graph(&spec, index).unwrap();
        let rec = cross_check(&g, TheoremId::TwoColEdges, &budget());
        assert!(rec.hypotheses_satisfied, "sample {index}");
        assert!(rec.agree, "sample {index}: {rec:?}");
        assert_eq!(
            rec.constructive_status,
            Some(SolveStatus::Found),
            "sample {index}"
        );
        let len = rec.cycle_length.unwrap();
        assert_eq!(
            len,
            expected_cycle_length(TheoremId::TwoColEdges, g.vertex_count())
        );
        assert_eq!(len % 2, 0, "two-color proper cycles alternate");
    }
    assert!(t0.elapsed() < Duration::from_secs(300));
    pass(2, "two-color edge-count positive sweep", t0);
}

/// Criterion 3: the rainbow-degree extremal instance at n = 10 (75 edges,
/// rd 2, no color-2 perfect matching, no PHC) plus 100 seeded satisfying
/// instances per n in {9, 10}, all solved and verified.
#[test]
fn criterion_03_two_col_rainbow() {
    let t0 = Instant::now();
    let (g, _) = extremal_2col_rainbow(10).unwrap();
    assert_eq!(g.edge_count(), 75);
    assert_eq!(g.min_rainbow_degree(), 2);
    assert!(!has_perfect_matching_in_color(&g, 2));
    assert!(has_perfect_matching_in_color(&g, 1));
    let out = find_proper_ham_cycle(&g, &budget());
    assert_eq!(out.status, SolveStatus::Infeasible);

    let spec = CorpusSpec {
        n_range: (9, 10),
        c_range: (2, 2),
        edge_rule: EdgeCountRule::AtLeastThreshold(TheoremId::TwoColRainbow),
        rainbow_rule: RainbowRule::Exactly(2),
        require_two_connected: false,
        samples_per_combo: 100,
        seed: 0x52,
    };
    for index in 0..spec.total_samples() {
        let g = sample_graph(&spec, index).unwrap();
        let rec = cross_check(&g, TheoremId::TwoColRainbow, &budget());
        assert!(
            rec.hypotheses_satisfied && rec.agree,
            "sample {index}: {rec:?}"
        );
        assert_eq!(
            rec.cycle_length.unwrap(),
            expected_cycle_length(TheoremId::TwoColRainbow, g.vertex_count())
        );
    }
    assert!(t0.elapsed() < Duration::from_secs(300));
    pass(3, "two-color rainbow-degree bound", t0);
}

/// Criterion 4: the many-color edge-extremal families at (5,3), (6,3),
/// (6,4) have exactly `c*choose2(n-1) + n - 1` edges and no PHC; 200 seeded
/// satisfying instances per pair all solved, verified, and agreed.
#[test]
fn criterion_04_ccol_edges() {
    let t0 = Instant::now();
    for &(n, c) in &[(5usize, 3usize), (6, 3), (6, 4)] {
        let (g, _) = extremal_ccol_edges(n, c).unwrap();
        assert_eq!(g.edge_count(), c * choose2(n - 1) + n - 1);
        let out = find_proper_ham_cycle(&g, &budget());
        assert_eq!(out.status, SolveStatus::Infeasible, "({n},{c})");
    }
    let specs = [
        CorpusSpec {
            n_range: (5, 6),
            c_range: (3, 3),
            edge_rule: EdgeCountRule::AtLeastThreshold(TheoremId::CColEdges),
            rainbow_rule: RainbowRule::Any,
            require_two_connected: false,
            samples_per_combo: 200,
            seed: 0x53,
        },
        CorpusSpec {
            n_range: (6, 6),
            c_range: (4, 4),
            edge_rule: EdgeCountRule::AtLeastThreshold(TheoremId::CColEdges),
            rainbow_rule: RainbowRule::Any,
            require_two_connected: false,
            samples_per_combo: 200,
            seed: 0x54,
        },
    ];
    let mut total = 0;
    for spec in &specs {
        for index in 0..spec.total_samples() {
            let g = sample_graph(spec, index).unwrap();
            let rec = cross_check(&g, TheoremId::CColEdges, &budget());
            assert!(
                rec.hypotheses_satisfied && rec.agree,
                "sample {index}: {rec:?}"
            );
            assert_eq!(rec.cycle_length, Some(g.vertex_count()));
            total += 1;
        }
    }
    assert_eq!(total, 600);
    assert!(t0.elapsed() < Duration::from_secs(600));
    pass(4, "many-color edge-count bound", t0);
}

/// Criterion 5: the rainbow extremal families (exact counts, rd = c, not
/// 2-connected, no PHC), 200 seeded satisfying instances per pair, and at
/// least five instances trace-verified through the degree-one subroutine.
#[test]
fn criterion_05_ccol_rainbow() {
    let t0 = Instant::now();
    for &(n, c) in &[(5usize, 3usize), (6, 3), (6, 4)] {
        let (g, _) = extremal_ccol_rainbow(n, c).unwrap();
        assert_eq!(g.edge_count(), c * choose2(n - 1) + c);
        assert_eq!(g.min_rainbow_degree(), c);
        assert!(!g.is_2connected());
        let out = find_proper_ham_cycle(&g, &budget());
        assert_eq!(out.status, SolveStatus::Infeasible, "({n},{c})");
    }
    let specs = [
        CorpusSpec {
            n_range: (5, 6),
            c_range: (3, 3),
            edge_rule: EdgeCountRule::AtLeastThreshold(TheoremId::CColRainbow),
            rainbow_rule: RainbowRule::FullColorCount,
            require_two_connected: false,
            samples_per_combo: 200,
            seed: 0x55,
        },
        CorpusSpec {
            n_range: (6, 6),
            c_range: (4, 4),
            edge_rule: EdgeCountRule::AtLeastThreshold(TheoremId::CColRainbow),
            rainbow_rule: RainbowRule::FullColorCount,
            require_two_connected: false,
            samples_per_combo: 200,
            seed: 0x56,
        },
    ];
    for spec in &specs {
        for index in 0..spec.total_samples() {
            let g = sample_graph(spec, index).unwrap();
            let rec = cross_check(&g, TheoremId::CColRainbow, &budget());
            assert!(
                rec.hypotheses_satisfied && rec.agree,
                "sample {index}: {rec:?}"
            );
        }
    }
    // Degree-one steering instances, trace-verified.
    let mut lemma_hits = 0;
    for (n, color) in [(6, 1), (7, 1), (8, 1), (6, 2), (7, 3)] {
        let g = degree_one_pair(n, color);
        assert!(check_hypotheses(&g, TheoremId::CColRainbow).satisfied);
        let out = solve_constructive(&g, TheoremId::CColRainbow, &budget())
            .unwrap()
            .unwrap();
        assert_eq!(out.status, SolveStatus::Found, "n = {n}, color = {color}");
        if out.trace.iter().any(|t| t == "degree-one-lemma") {
            lemma_hits += 1;
        }
    }
    assert!(lemma_hits >= 5, "only {lemma_hits} degree-one routes");
    assert!(t0.elapsed() < Duration::from_secs(600));
    pass(5, "many-color rainbow-degree bound", t0);
}

/// Seeded generator for cycle-insertion instances: an alternating cycle, an
/// off-cycle edge in color 1, and a chosen number of color-2 cross edges.
fn insertion_instance(
    rng: &mut ChaCha8Rng,
    satisfy: bool,
) -> (ColoredMultigraph, CycleCertificate, Vertex, Vertex, usize) {
    let s = rng.gen_range(2..=4usize);
    let cycle_len = 2 * s;
    let n = cycle_len + 2;
    let x = cycle_len;
    let y = cycle_len + 1;
    let mut edges = Vec::new();
    for i in 0..cycle_len {
        let k = if i % 2 == 0 { 1 } else { 2 };
        edges.push((i, (i + 1) % cycle_len, k));
    }
    edges.push((x, y, 1));
    // Cross edges in color 2: `sum` distinct slots out of the 2*cycle_len
    // possible ones.
    let sum = if satisfy {
        rng.gen_range(cycle_len + 1..=2 * cycle_len)
    } else {
        rng.gen_range(0..=cycle_len)
    };
    let mut slots: Vec<(Vertex, Vertex)> = Vec::new();
    for v in 0..cycle_len {
        slots.push((x, v));
        slots.push((y, v));
    }
    slots.shuffle(rng);
    for &(p, v) in slots.iter().take(sum) {
        edges.push((p, v, 2));
    }
    // Noise that cannot affect the hypothesis: color-1 chords between
    // off-cycle and cycle vertices.
    for v in 0..cycle_len {
        if rng.gen_bool(0.3) {
            edges.push((x, v, 1));
        }
    }
    let g = ColoredMultigraph::new(n, 2, &edges).unwrap();
    let cert = CycleCertificate::new(
        (0..cycle_len).collect(),
        (0..cycle_len)
            .map(|i| if i % 2 == 0 { 1 } else { 2 })
            .collect(),
    );
    (g, cert, x, y, sum)
}

/// Criterion 6: 1000 hypothesis-satisfying insertion instances always yield
/// a verified proper cycle two longer containing the edge; 1000 violating
/// instances are rejected with the exact failing count.
#[test]
fn criterion_06_cycle_insertion_property_suite() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x60);
    for _ in 0..1000 {
        let (g, cert, x, y, _) = insertion_instance(&mut rng, true);
        let got = lemma_cycle_insertion(&g, &cert, x, y, 1).expect("hypothesis satisfied");
        assert_eq!(got.len(), cert.len() + 2);
        assert!(got.uses_pair(x, y));
        assert_eq!(verify_proper_cycle(&g, &got), Ok(()));
    }
    for _ in 0..1000 {
        let (g, cert, x, y, sum) = insertion_instance(&mut rng, false);
        match lemma_cycle_insertion(&g, &cert, x, y, 1) {
            Err(InsertionError::HypothesisViolated {
                cross_degree_sum,
                cycle_len,
            }) => {
                assert_eq!(cross_degree_sum, sum);
                assert_eq!(cycle_len, cert.len());
            }
            other => panic!("expected hypothesis violation, got {other:?}"),
        }
    }
    assert!(t0.elapsed() < Duration::from_secs(60));
    pass(6, "cycle-insertion property suite", t0);
}

/// Criterion 7: on 500 seeded connected graphs with c in {4, 5} above the
/// merge bound, reduction always finds a qualifying merge, and any proper
/// Hamiltonian cycle of the merged graph lifts to a verified cycle.
#[test]
fn criterion_07_color_merge_suite() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x70);
    let mut checked = 0;
    let mut lifted = 0;
    while checked < 500 {
        let n = rng.gen_range(5..=7usize);
        let c = rng.gen_range(4..=5usize);
        let ell = choose2(n - 1);
        let need = c * ell + 1;
        let max = c * choose2(n);
        let target = rng.gen_range(need..=max);
        let mut edges = rainbow_complete(n, c).edges();
        for i in 0..target {
            let j = rng.gen_range(i..edges.len());
            edges.swap(i, j);
        }
        edges.truncate(target);
        let g = ColoredMultigraph::new(n, c, &edges).unwrap();
        if !g.is_connected() {
            continue;
        }
        checked += 1;
        let rd_before = g.min_rainbow_degree();
        let (merged, record) = reduce_color_count(&g, ell)
            .unwrap_or_else(|e| panic!("reduction failed on sample {checked}: {e}"));
        assert!(merged.is_connected());
        assert!(merged.edge_count() >= (c - 1) * ell + 1);
        assert_eq!(
            record.dropped_duplicates.len(),
            g.edge_count() - merged.edge_count()
        );
        if rd_before == c {
            assert_eq!(merged.min_rainbow_degree(), c - 1);
        }
        let out = find_proper_ham_cycle(&merged, &budget());
        if let Some(Certificate::Cycle(cyc)) = out.certificate {
            let up = lift_cycle(&record, &g, &cyc).expect("lift failed");
            assert_eq!(verify_proper_cycle(&g, &up), Ok(()));
            lifted += 1;
        }
    }
    assert!(lifted >= 100, "only {lifted} merged cycles lifted");
    assert!(t0.elapsed() < Duration::from_secs(120));
    pass(7, "color-merge reduction suite", t0);
}

/// Criterion 8: no two-colored search or solver ever returns an odd proper
/// cycle.
#[test]
fn criterion_08_two_color_parity() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x80);
    for _ in 0..100 {
        let n = rng.gen_range(4..=9usize);
        let keep = rng.gen_range(0.4..1.0);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                for k in 1..=2usize {
                    if rng.gen_bool(keep) {
                        edges.push((u, v, k));
                    }
                }
            }
        }
        let g = ColoredMultigraph::new(n, 2, &edges).unwrap();
        if let Some(Certificate::Cycle(cyc)) = find_proper_ham_cycle(&g, &budget()).certificate {
            assert_eq!(cyc.len() % 2, 0);
        }
        for len in 3..=n {
            let out = find_proper_cycle_of_length(&g, len, &budget()).unwrap();
            if let Some(Certificate::Cycle(cyc)) = out.certificate {
                assert_eq!(cyc.len() % 2, 0);
                assert_eq!(cyc.len(), len);
            }
            if len % 2 == 1 {
                assert_ne!(out.status, SolveStatus::Found);
            }
        }
    }
    assert!(t0.elapsed() < Duration::from_secs(60));
    pass(8, "two-color parity invariant", t0);
}

/// Criterion 9: the conjecture's tight construction at (10, 3): 96 edges,
/// rainbow degree 3, 2-connected, and exact infeasibility within 120 s.
#[test]
fn criterion_09_conjecture_construction() {
    let t0 = Instant::now();
    let (g, _) = extremal_conjecture(10, 3).unwrap();
    assert_eq!(g.edge_count(), 96);
    assert_eq!(
        g.edge_count() + 1,
        edge_threshold(TheoremId::Conjecture, 10, 3)
    );
    assert_eq!(g.min_rainbow_degree(), 3);
    assert!(g.is_2connected());
    let out = find_proper_ham_cycle(&g, &Budget::new(u64::MAX, Duration::from_secs(120)));
    assert_eq!(out.status, SolveStatus::Infeasible);
    assert!(t0.elapsed() < Duration::from_secs(120));
    pass(9, "conjecture construction", t0);
}

/// Permutation brute force with exhaustive color assignment, used as the
/// independent oracle for criterion 10.
fn brute_force_phc(g: &ColoredMultigraph) -> bool {
    let n = g.vertex_count();
    if n < 3 {
        return false;
    }
    let mut rest: Vec<Vertex> = (1..n).collect();
    fn colorable(
        g: &ColoredMultigraph,
        cyc: &[Vertex],
        i: usize,
        first: usize,
        prev: usize,
    ) -> bool {
        let l = cyc.len();
        if i == l - 1 {
            return g
                .colors_between(cyc[l - 1], cyc[0])
                .into_iter()
                .any(|k| k != prev && k != first);
        }
        g.colors_between(cyc[i], cyc[i + 1])
            .into_iter()
            .any(|k| k != prev && colorable(g, cyc, i + 1, first, k))
    }
    fn perms(v: &mut Vec<Vertex>, i: usize, check: &mut dyn FnMut(&[Vertex]) -> bool) -> bool {
        if i == v.len() {
            return check(v);
        }
        for j in i..v.len() {
            v.swap(i, j);
            if perms(v, i + 1, check) {
                v.swap(i, j);
                return true;
            }
            v.swap(i, j);
        }
        false
    }
    perms(&mut rest, 0, &mut |order| {
        let mut cyc = vec![0];
        cyc.extend_from_slice(order);
        g.colors_between(cyc[0], cyc[1])
            .into_iter()
            .any(|k| colorable(g, &cyc, 1, k, k))
    })
}

/// Criterion 10: over every one of the 4096 two-colored multigraphs on four
/// vertices, the backtracking solver agrees with permutation brute force.
#[test]
fn criterion_10_oracle_self_consistency() {
    let t0 = Instant::now();
    let pairs = [(0usize, 1usize), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let mut disagreements = 0;
    let mut total = 0;
    for mask in 0..4096u32 {
        let mut edges = Vec::new();
        for (i, &(u, v)) in pairs.iter().enumerate() {
            let state = (mask >> (2 * i)) & 3;
            if state & 1 != 0 {
                edges.push((u, v, 1));
            }
            if state & 2 != 0 {
                edges.push((u, v, 2));
            }
        }
        let g = ColoredMultigraph::new(4, 2, &edges).unwrap();
        let fast = find_proper_ham_cycle(&g, &budget());
        assert_ne!(fast.status, SolveStatus::Timeout);
        let slow = brute_force_phc(&g);
        if fast.is_found() != slow {
            disagreements += 1;
        }
        total += 1;
    }
    assert_eq!(total, 4096);
    assert_eq!(disagreements, 0);
    assert!(t0.elapsed() < Duration::from_secs(120));
    pass(10, "oracle self-consistency", t0);
}

/// Companion check: the tightness sweeps the harness exposes agree with the
/// per-criterion assertions above for every family.
#[test]
fn tightness_sweeps_all_families() {
    let t0 = Instant::now();
    let cases: Vec<(FamilyId, Vec<(usize, usize)>)> = vec![
        (FamilyId::TwoColEdgesExtremal, vec![(4, 2), (6, 2), (8, 2)]),
        (FamilyId::TwoColRainbowExtremal, vec![(10, 2)]),
        (FamilyId::CColEdgesExtremal, vec![(5, 3), (6, 3), (6, 4)]),
        (
            FamilyId::CColRainbowExtremal,
            vec![(4, 3), (5, 3), (6, 3), (6, 4)],
        ),
        (FamilyId::ConjectureExtremal, vec![(10, 3)]),
    ];
    for (family, params) in cases {
        let report = tightness_sweep(family, &params, &budget());
        assert!(report.all_ok(), "{family}: {report}");
    }
    assert!(t0.elapsed() < Duration::from_secs(300));
    pass(11, "tightness sweeps across families", t0);
}
