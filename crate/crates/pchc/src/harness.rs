//! Seeded corpora, oracle cross-checks, tightness sweeps, branch coverage,
//! and the conjecture exploration sweep.
//!
//! Everything here is reproducible: a corpus spec plus an index determines a
//! graph, and reports assemble records in index order regardless of how the
//! work is scheduled.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::constructive::{
    check_hypotheses, edge_threshold, solve_2col_edges_with, solve_2col_rainbow_with,
    solve_ccol_edges_with, solve_ccol_rainbow_with, tag_vocabulary, SolveError, TheoremId,
};
use crate::extremal::{self, Claim, ExtremalSpec, FamilyId};
use crate::graph::{verify_proper_cycle, ColoredMultigraph, Vertex};
use crate::solver::{
    find_proper_cycle_of_length, find_proper_ham_cycle, has_perfect_matching_in_color, Budget,
    Certificate, SolveOutcome, SolveStatus,
};

/// How many edges a sampled graph should have.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EdgeCountRule {
    /// Uniformly between the theorem threshold and the maximum.
    AtLeastThreshold(TheoremId),
    /// Exactly `threshold - k`.
    ThresholdMinus(TheoremId, usize),
    /// Uniformly between the given count and the maximum.
    AtLeast(usize),
    /// The rainbow complete graph itself.
    Full,
}

/// Rainbow-degree requirement for sampled graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RainbowRule {
    Any,
    /// Minimum rainbow degree must equal this value.
    Exactly(usize),
    /// Minimum rainbow degree must equal the combo's color count.
    FullColorCount,
}

impl RainbowRule {
    fn accepts(&self, rd: usize, c: usize) -> bool {
        match self {
            RainbowRule::Any => true,
            RainbowRule::Exactly(v) => rd == *v,
            RainbowRule::FullColorCount => rd == c,
        }
    }
}

/// Deterministic corpus description: same spec and index, same graph.
#[derive(Clone, Debug, Serialize)]
pub struct CorpusSpec {
    pub n_range: (usize, usize),
    pub c_range: (usize, usize),
    pub edge_rule: EdgeCountRule,
    pub rainbow_rule: RainbowRule,
    pub require_two_connected: bool,
    pub samples_per_combo: usize,
    pub seed: u64,
}

impl CorpusSpec {
    pub fn combos(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for n in self.n_range.0..=self.n_range.1 {
            for c in self.c_range.0..=self.c_range.1 {
                out.push((n, c));
            }
        }
        out
    }

    pub fn total_samples(&self) -> usize {
        self.combos().len() * self.samples_per_combo
    }
}

/// Sampling failure: the constraints could not be met within the retry cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleError {
    pub index: usize,
    pub attempts: usize,
    pub reason: String,
}

impl fmt::Display for SampleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "sample {} failed after {} attempts: {}",
            self.index, self.attempts, self.reason
        )
    }
}

impl std::error::Error for SampleError {}

const SAMPLE_RETRY_CAP: usize = 10_000;

/// Draws the corpus graph at `index`: start from the rainbow complete graph,
/// delete a uniformly chosen edge set down to the target count, and reject
/// until the connectivity and rainbow-degree constraints hold.
pub fn sample_graph(spec: &CorpusSpec, index: usize) -> Result<ColoredMultigraph, SampleError> {
    let combos = spec.combos();
    let (n, c) = combos[(index / spec.samples_per_combo) % combos.len()];
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(index as u64 + 1);

    let max = c * crate::graph::choose2(n);
    let target_range = |rule: &EdgeCountRule| -> Result<(usize, usize), String> {
        match rule {
            EdgeCountRule::AtLeastThreshold(t) => {
                let thr = edge_threshold(*t, n, c);
                if thr > max {
                    return Err(format!("threshold {thr} above maximum {max}"));
                }
                Ok((thr, max))
            }
            EdgeCountRule::ThresholdMinus(t, k) => {
                let thr = edge_threshold(*t, n, c);
                if *k > thr || thr - k > max {
                    return Err(format!("threshold {thr} minus {k} unusable"));
                }
                Ok((thr - k, thr - k))
            }
            EdgeCountRule::AtLeast(v) => {
                if *v > max {
                    return Err(format!("edge floor {v} above maximum {max}"));
                }
                Ok((*v, max))
            }
            EdgeCountRule::Full => Ok((max, max)),
        }
    };
    let (lo, hi) = target_range(&spec.edge_rule).map_err(|reason| SampleError {
        index,
        attempts: 0,
        reason,
    })?;

    let full_edges = extremal::rainbow_complete(n, c).edges();
    for attempt in 0..SAMPLE_RETRY_CAP {
        let m = if lo == hi { lo } else { rng.gen_range(lo..=hi) };
        let mut edges = full_edges.clone();
        // Partial Fisher-Yates: move a random survivor into each kept slot.
        for i in 0..m {
            let j = rng.gen_range(i..edges.len());
            edges.swap(i, j);
        }
        edges.truncate(m);
        let g = ColoredMultigraph::new(n, c, &edges).expect("subset of a valid edge set");
        if n >= 2 && !g.is_connected() {
            continue;
        }
        if n > 0 && !spec.rainbow_rule.accepts(g.min_rainbow_degree(), c) {
            continue;
        }
        if spec.require_two_connected && !g.is_2connected() {
            continue;
        }
        let _ = attempt;
        return Ok(g);
    }
    Err(SampleError {
        index,
        attempts: SAMPLE_RETRY_CAP,
        reason: "constraints kept rejecting samples".to_string(),
    })
}

/// Dispatches the constructive solver for a theorem.
pub fn solve_constructive(
    g: &ColoredMultigraph,
    theorem: TheoremId,
    budget: &Budget,
) -> Option<Result<SolveOutcome, SolveError>> {
    match theorem {
        TheoremId::TwoColEdges => Some(solve_2col_edges_with(g, budget)),
        TheoremId::TwoColRainbow => Some(solve_2col_rainbow_with(g, budget)),
        TheoremId::CColEdges => Some(solve_ccol_edges_with(g, budget)),
        TheoremId::CColRainbow => Some(solve_ccol_rainbow_with(g, budget)),
        TheoremId::Conjecture => None,
    }
}

/// Exact-search target matching a theorem's conclusion: the two-color
/// statements allow a cycle of length `n - 1` when `n` is odd.
pub fn exact_target(g: &ColoredMultigraph, theorem: TheoremId, budget: &Budget) -> SolveOutcome {
    let n = g.vertex_count();
    let odd_two_color =
        matches!(theorem, TheoremId::TwoColEdges | TheoremId::TwoColRainbow) && n % 2 == 1;
    if odd_two_color {
        find_proper_cycle_of_length(g, n - 1, budget).expect("length in range")
    } else {
        find_proper_ham_cycle(g, budget)
    }
}

/// Expected certificate length under a theorem's conclusion.
pub fn expected_cycle_length(theorem: TheoremId, n: usize) -> usize {
    match theorem {
        TheoremId::TwoColEdges | TheoremId::TwoColRainbow if n % 2 == 1 => n - 1,
        _ => n,
    }
}

/// One instance run both ways: hypotheses, constructive solver, exact
/// solver, and the agreement verdict.
#[derive(Clone, Debug, Serialize)]
pub struct CrossCheckRecord {
    pub theorem: TheoremId,
    pub n: usize,
    pub c: usize,
    pub m: usize,
    pub hypotheses_satisfied: bool,
    pub constructive_status: Option<SolveStatus>,
    pub exact_status: Option<SolveStatus>,
    pub certificate_verified: Option<bool>,
    pub cycle_length: Option<usize>,
    pub trace: Vec<String>,
    pub internal_error: Option<String>,
    pub agree: bool,
    pub constructive_nanos: u128,
    pub exact_nanos: u128,
}

/// Runs hypotheses, the constructive solver, and the exact solver on one
/// instance and reconciles the results.
pub fn cross_check(g: &ColoredMultigraph, theorem: TheoremId, budget: &Budget) -> CrossCheckRecord {
    let report = check_hypotheses(g, theorem);
    let mut rec = CrossCheckRecord {
        theorem,
        n: g.vertex_count(),
        c: g.color_count(),
        m: g.edge_count(),
        hypotheses_satisfied: report.satisfied,
        constructive_status: None,
        exact_status: None,
        certificate_verified: None,
        cycle_length: None,
        trace: Vec::new(),
        internal_error: None,
        agree: true,
        constructive_nanos: 0,
        exact_nanos: 0,
    };

    let t0 = Instant::now();
    let constructive = solve_constructive(g, theorem, budget);
    rec.constructive_nanos = t0.elapsed().as_nanos();
    let has_constructive = constructive.is_some();
    match constructive {
        None => {}
        Some(Err(e)) => {
            rec.internal_error = Some(e.to_string());
            rec.agree = false;
        }
        Some(Ok(out)) => {
            rec.constructive_status = Some(out.status);
            rec.trace = out.trace.clone();
            if report.satisfied {
                match (out.status, &out.certificate) {
                    (SolveStatus::Found, Some(Certificate::Cycle(cyc))) => {
                        let verified = verify_proper_cycle(g, cyc).is_ok();
                        let len_ok = cyc.len() == expected_cycle_length(theorem, g.vertex_count());
                        rec.certificate_verified = Some(verified && len_ok);
                        rec.cycle_length = Some(cyc.len());
                        if !(verified && len_ok) {
                            rec.agree = false;
                        }
                    }
                    _ => rec.agree = false,
                }
            } else if out.status != SolveStatus::HypothesisViolation {
                rec.agree = false;
            }
        }
    }

    if report.satisfied || !has_constructive {
        let t1 = Instant::now();
        let exact = exact_target(g, theorem, budget);
        rec.exact_nanos = t1.elapsed().as_nanos();
        rec.exact_status = Some(exact.status);
        if report.satisfied && exact.status != SolveStatus::Found {
            rec.agree = false;
        }
    }
    rec
}

/// Per-record summary interface for report tables.
pub trait SweepRecord {
    fn ok(&self) -> bool;
    fn timed_out(&self) -> bool;
    fn nanos(&self) -> u128;
    fn header() -> &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

#[derive(Clone, Debug, Serialize)]
pub struct Aggregate {
    pub total: usize,
    pub ok: usize,
    pub failed: usize,
    pub timeouts: usize,
    pub total_nanos: u128,
}

/// Records plus aggregate counts; serializes to JSON and renders a table.
#[derive(Clone, Debug, Serialize)]
pub struct SweepReport<R> {
    pub records: Vec<R>,
    pub aggregate: Aggregate,
}

impl<R: SweepRecord> SweepReport<R> {
    pub fn new(records: Vec<R>) -> Self {
        let aggregate = Aggregate {
            total: records.len(),
            ok: records.iter().filter(|r| r.ok()).count(),
            failed: records.iter().filter(|r| !r.ok()).count(),
            timeouts: records.iter().filter(|r| r.timed_out()).count(),
            total_nanos: records.iter().map(|r| r.nanos()).sum(),
        };
        SweepReport { records, aggregate }
    }

    pub fn all_ok(&self) -> bool {
        self.aggregate.failed == 0
    }
}

impl<R: SweepRecord> fmt::Display for SweepReport<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let header = R::header();
        let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
        let rows: Vec<Vec<String>> = self.records.iter().map(|r| r.cells()).collect();
        for row in &rows {
            for (i, cell) in row.iter().enumerate() {
                widths[i] = widths[i].max(cell.len());
            }
        }
        for (i, h) in header.iter().enumerate() {
            write!(f, "{:<w$}  ", h, w = widths[i])?;
        }
        writeln!(f)?;
        for row in &rows {
            for (i, cell) in row.iter().enumerate() {
                write!(f, "{:<w$}  ", cell, w = widths[i])?;
            }
            writeln!(f)?;
        }
        writeln!(
            f,
            "total {} | ok {} | failed {} | timeouts {} | {:.3}s",
            self.aggregate.total,
            self.aggregate.ok,
            self.aggregate.failed,
            self.aggregate.timeouts,
            self.aggregate.total_nanos as f64 / 1e9
        )
    }
}

impl SweepRecord for CrossCheckRecord {
    fn ok(&self) -> bool {
        self.agree
    }
    fn timed_out(&self) -> bool {
        self.constructive_status == Some(SolveStatus::Timeout)
            || self.exact_status == Some(SolveStatus::Timeout)
    }
    fn nanos(&self) -> u128 {
        self.constructive_nanos + self.exact_nanos
    }
    fn header() -> &'static [&'static str] {
        &[
            "theorem",
            "n",
            "c",
            "m",
            "hyp",
            "constructive",
            "exact",
            "len",
            "agree",
        ]
    }
    fn cells(&self) -> Vec<String> {
        vec![
            self.theorem.to_string(),
            self.n.to_string(),
            self.c.to_string(),
            self.m.to_string(),
            self.hypotheses_satisfied.to_string(),
            self.constructive_status
                .map_or("-".into(), |s| s.to_string()),
            self.exact_status.map_or("-".into(), |s| s.to_string()),
            self.cycle_length.map_or("-".into(), |l| l.to_string()),
            self.agree.to_string(),
        ]
    }
}

/// Cross-checks a whole corpus in index order.
pub fn corpus_sweep(
    spec: &CorpusSpec,
    theorem: TheoremId,
    budget: &Budget,
) -> Result<SweepReport<CrossCheckRecord>, SampleError> {
    let mut records = Vec::new();
    for index in 0..spec.total_samples() {
        let g = sample_graph(spec, index)?;
        records.push(cross_check(&g, theorem, budget));
    }
    Ok(SweepReport::new(records))
}

/// One claim of an extremal family, re-verified.
#[derive(Clone, Debug, Serialize)]
pub struct ClaimCheck {
    pub claim: Claim,
    pub ok: bool,
    pub detail: String,
}

/// Re-verifies every claim of a generated extremal instance using the graph
/// queries and the exact solver.
pub fn verify_claims(
    g: &ColoredMultigraph,
    spec: &ExtremalSpec,
    budget: &Budget,
) -> Vec<ClaimCheck> {
    spec.claims
        .iter()
        .map(|claim| {
            let (ok, detail) = match claim {
                Claim::NoProperHamCycle => {
                    let out = find_proper_ham_cycle(g, budget);
                    (
                        out.status == SolveStatus::Infeasible,
                        format!("exact search: {}", out.status),
                    )
                }
                Claim::MinRainbowDegree { value } => {
                    let rd = g.min_rainbow_degree();
                    (rd == *value, format!("rd = {rd}"))
                }
                Claim::Connected => (g.is_connected(), String::new()),
                Claim::TwoConnected => (g.is_2connected(), String::new()),
                Claim::NotTwoConnected => (!g.is_2connected(), String::new()),
                Claim::NoPerfectMatchingInColor { color } => {
                    (!has_perfect_matching_in_color(g, *color), String::new())
                }
                Claim::PerfectMatchingInColor { color } => {
                    (has_perfect_matching_in_color(g, *color), String::new())
                }
            };
            ClaimCheck {
                claim: claim.clone(),
                ok,
                detail,
            }
        })
        .collect()
}

/// One extremal instance checked for exact edge count, the one-below-bound
/// relation, and every claimed property.
#[derive(Clone, Debug, Serialize)]
pub struct TightnessRecord {
    pub family: FamilyId,
    pub n: usize,
    pub c: usize,
    pub edges: usize,
    pub claimed_edges: usize,
    pub one_below_threshold: Option<bool>,
    pub claims: Vec<ClaimCheck>,
    pub ok: bool,
    pub nanos: u128,
}

impl SweepRecord for TightnessRecord {
    fn ok(&self) -> bool {
        self.ok
    }
    fn timed_out(&self) -> bool {
        false
    }
    fn nanos(&self) -> u128 {
        self.nanos
    }
    fn header() -> &'static [&'static str] {
        &[
            "family",
            "n",
            "c",
            "m",
            "claimed",
            "one-below",
            "claims-ok",
            "ok",
        ]
    }
    fn cells(&self) -> Vec<String> {
        vec![
            self.family.to_string(),
            self.n.to_string(),
            self.c.to_string(),
            self.edges.to_string(),
            self.claimed_edges.to_string(),
            self.one_below_threshold
                .map_or("-".into(), |b| b.to_string()),
            self.claims.iter().filter(|c| c.ok).count().to_string(),
            self.ok.to_string(),
        ]
    }
}

/// Theorem whose bound an extremal family witnesses as tight.
pub fn family_theorem(family: FamilyId) -> Option<TheoremId> {
    match family {
        FamilyId::RainbowComplete => None,
        FamilyId::TwoColEdgesExtremal => Some(TheoremId::TwoColEdges),
        FamilyId::TwoColRainbowExtremal => Some(TheoremId::TwoColRainbow),
        FamilyId::CColEdgesExtremal => Some(TheoremId::CColEdges),
        FamilyId::CColRainbowExtremal => Some(TheoremId::CColRainbow),
        FamilyId::ConjectureExtremal => Some(TheoremId::Conjecture),
    }
}

/// For each parameter pair: generate the family, confirm the edge count sits
/// exactly one below the theorem threshold, and re-verify every claim.
pub fn tightness_sweep(
    family: FamilyId,
    params: &[(usize, usize)],
    budget: &Budget,
) -> SweepReport<TightnessRecord> {
    let mut records = Vec::new();
    for &(n, c) in params {
        let t0 = Instant::now();
        match extremal::generate(family, n, c) {
            Ok((g, spec)) => {
                let edges = g.edge_count();
                let one_below =
                    family_theorem(family).map(|t| edges + 1 == edge_threshold(t, n, c));
                let claims = verify_claims(&g, &spec, budget);
                let ok = edges == spec.claimed_edges
                    && one_below.unwrap_or(true)
                    && claims.iter().all(|c| c.ok);
                records.push(TightnessRecord {
                    family,
                    n,
                    c,
                    edges,
                    claimed_edges: spec.claimed_edges,
                    one_below_threshold: one_below,
                    claims,
                    ok,
                    nanos: t0.elapsed().as_nanos(),
                });
            }
            Err(e) => records.push(TightnessRecord {
                family,
                n,
                c,
                edges: 0,
                claimed_edges: 0,
                one_below_threshold: Some(false),
                claims: vec![ClaimCheck {
                    claim: Claim::Connected,
                    ok: false,
                    detail: format!("generator failed: {e}"),
                }],
                ok: false,
                nanos: t0.elapsed().as_nanos(),
            }),
        }
    }
    SweepReport::new(records)
}

/// Handcrafted instances that steer each theorem's solver into its rarer
/// branches, included alongside sampled corpora for coverage runs.
pub fn targeted_instances(theorem: TheoremId) -> Vec<ColoredMultigraph> {
    match theorem {
        TheoremId::TwoColEdges => vec![
            extremal::rainbow_complete(6, 2),
            thinned_two_color(6, 0, &[2, 3, 4, 5]),
            thinned_two_color(8, 0, &[2, 3, 4, 5, 6]),
        ],
        TheoremId::TwoColRainbow => vec![
            extremal::rainbow_complete(12, 2),
            thinned_two_color(12, 0, &[6, 7, 8, 9, 10, 11]),
            two_poor_vertices(11, (0, [1, 2]), PoorSecond::SameColor(1, [0, 2])),
            two_poor_vertices(11, (0, [1, 2]), PoorSecond::OtherColor(2, [0, 1])),
            two_poor_vertices(11, (0, [2, 5]), PoorSecond::SameColor(5, [0, 2])),
            two_poor_vertices(11, (0, [1, 2]), PoorSecond::OtherColor(5, [0, 1])),
        ],
        TheoremId::CColEdges => vec![
            extremal::rainbow_complete(5, 3),
            pentagon_damped_k5(),
            merge_blocked_pendant(),
            merge_blocked_two_connected(),
            extremal::rainbow_complete(6, 4),
        ],
        TheoremId::CColRainbow => vec![
            extremal::rainbow_complete(6, 3),
            extremal::rainbow_complete(6, 4),
            degree_one_pair(6, 1),
            degree_one_pair(7, 2),
            high_degree_rainbow(),
            parallel_pair_rainbow(),
            general_triple_rainbow(),
        ],
        TheoremId::Conjecture => Vec::new(),
    }
}

/// Rainbow complete two-colored graph with the color-1 edges from `at` to
/// `gone` removed: fails the per-color degree condition at `at` while
/// keeping the edge bound.
fn thinned_two_color(n: usize, at: Vertex, gone: &[Vertex]) -> ColoredMultigraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v, 2));
            let cut = (u == at && gone.contains(&v)) || (v == at && gone.contains(&u));
            if !cut {
                edges.push((u, v, 1));
            }
        }
    }
    ColoredMultigraph::new(n, 2, &edges).unwrap()
}

enum PoorSecond {
    /// Second poor vertex thin in color 1, keeping the listed partners.
    SameColor(Vertex, [Vertex; 2]),
    /// Second poor vertex thin in color 2, keeping the listed partners.
    OtherColor(Vertex, [Vertex; 2]),
}

/// Two vertices with exactly two edges in one color each; everything else
/// complete in both colors. Edge count meets the rainbow-degree threshold
/// exactly, and the contraction collapses rainbow degree.
fn two_poor_vertices(
    n: usize,
    first: (Vertex, [Vertex; 2]),
    second: PoorSecond,
) -> ColoredMultigraph {
    let (p1, keep1) = first;
    let (p2, keep2, col2) = match second {
        PoorSecond::SameColor(p, keep) => (p, keep, 1usize),
        PoorSecond::OtherColor(p, keep) => (p, keep, 2usize),
    };
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            for k in 1..=2usize {
                let cut1 = k == 1
                    && ((u == p1 && !keep1.contains(&v)) || (v == p1 && !keep1.contains(&u)));
                let cut2 = k == col2
                    && ((u == p2 && !keep2.contains(&v)) || (v == p2 && !keep2.contains(&u)));
                if !cut1 && !cut2 {
                    edges.push((u, v, k));
                }
            }
        }
    }
    ColoredMultigraph::new(n, 2, &edges).unwrap()
}

/// K5 in three colors minus one color around a pentagon: every degree equals
/// `3n - 5`, so the pair contraction branch runs.
fn pentagon_damped_k5() -> ColoredMultigraph {
    let mut edges = Vec::new();
    let damp = [(0usize, 1usize), (1, 2), (2, 3), (3, 4), (0, 4)];
    for u in 0..5 {
        for v in u + 1..5 {
            for k in 1..=3usize {
                if damp.contains(&(u, v)) && k == 1 {
                    continue;
                }
                edges.push((u, v, k));
            }
        }
    }
    ColoredMultigraph::new(5, 3, &edges).unwrap()
}

/// Seven fully rainbow 4-colored pairs on a clique-plus-pendant frame: all
/// merges are too lossy and the intersection graph is not 2-connected.
fn merge_blocked_pendant() -> ColoredMultigraph {
    let mut edges = Vec::new();
    for &(u, v) in &[
        (0usize, 1usize),
        (0, 2),
        (0, 3),
        (1, 2),
        (1, 3),
        (2, 3),
        (0, 4),
    ] {
        for k in 1..=4 {
            edges.push((u, v, k));
        }
    }
    edges.push((1, 4, 3));
    ColoredMultigraph::new(5, 4, &edges).unwrap()
}

/// Seven rainbow pairs on a 2-connected frame: merges blocked, odd order
/// closed by a third color.
fn merge_blocked_two_connected() -> ColoredMultigraph {
    let mut edges = Vec::new();
    for &(u, v) in &[
        (0usize, 1usize),
        (1, 2),
        (2, 3),
        (3, 4),
        (0, 4),
        (0, 2),
        (1, 3),
    ] {
        for k in 1..=4 {
            edges.push((u, v, k));
        }
    }
    edges.push((2, 4, 1));
    ColoredMultigraph::new(5, 4, &edges).unwrap()
}

/// One color thinned to a single mutual edge at vertices 0 and 1: the first
/// contraction empties the donated class and the degree-one subroutine runs.
pub fn degree_one_pair(n: usize, color: usize) -> ColoredMultigraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            for k in 1..=3usize {
                let thin = k == color && ((u == 0 && v != 1) || u == 1);
                if !thin {
                    edges.push((u, v, k));
                }
            }
        }
    }
    ColoredMultigraph::new(n, 3, &edges).unwrap()
}

/// Four edges removed at vertex 0 only: its partners keep near-full degree,
/// so the high-degree branch runs.
fn high_degree_rainbow() -> ColoredMultigraph {
    let mut edges = Vec::new();
    for u in 0..6 {
        for v in u + 1..6 {
            for k in 1..=3usize {
                let cut = u == 0 && ((v == 1 && k <= 2) || (v == 2 && k <= 2));
                if !cut {
                    edges.push((u, v, k));
                }
            }
        }
    }
    ColoredMultigraph::new(6, 3, &edges).unwrap()
}

/// Distributed deletions keep all degrees at most `3n - 5` while vertex 0
/// stays low with a fully parallel pair available: the pair contraction
/// recurses with rainbow degree intact.
fn parallel_pair_rainbow() -> ColoredMultigraph {
    let n = 7usize;
    let mut edges = Vec::new();
    let cut_red_at_zero = [1usize, 2, 3, 4, 5];
    let cut_blue = [(1usize, 2usize), (3, 4), (5, 6)];
    let cut_green = [(2usize, 6usize)];
    for u in 0..n {
        for v in u + 1..n {
            for k in 1..=3usize {
                let cut = (k == 1 && u == 0 && cut_red_at_zero.contains(&v))
                    || (k == 2 && cut_blue.contains(&(u, v)))
                    || (k == 3 && cut_green.contains(&(u, v)));
                if !cut {
                    edges.push((u, v, k));
                }
            }
        }
    }
    ColoredMultigraph::new(n, 3, &edges).unwrap()
}

/// One color removed from every pair at vertex 0 plus a damping cycle among
/// the rest: no fully parallel pair at the low vertex, general triple
/// contraction.
fn general_triple_rainbow() -> ColoredMultigraph {
    let n = 6usize;
    let damp = [(1usize, 2usize), (2, 3), (3, 4), (4, 5), (1, 5)];
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            for k in 1..=3usize {
                let cut_at_zero = u == 0 && k == ((v % 3) + 1);
                let cut_damp = damp.contains(&(u, v)) && k == 2;
                if !(cut_at_zero || cut_damp) {
                    edges.push((u, v, k));
                }
            }
        }
    }
    ColoredMultigraph::new(n, 3, &edges).unwrap()
}

/// Branch tags hit by a corpus (sampled plus targeted instances) against a
/// theorem's vocabulary.
#[derive(Clone, Debug, Serialize)]
pub struct CoverageTable {
    pub theorem: TheoremId,
    pub vocabulary: Vec<String>,
    pub hits: BTreeMap<String, usize>,
    pub unhit: Vec<String>,
}

impl CoverageTable {
    pub fn complete(&self) -> bool {
        self.unhit.is_empty()
    }
}

/// Runs the constructive solver over the corpus and the targeted instances,
/// unioning trace tags.
pub fn branch_coverage(
    theorem: TheoremId,
    spec: &CorpusSpec,
    budget: &Budget,
) -> Result<CoverageTable, SampleError> {
    let mut graphs = Vec::new();
    for index in 0..spec.total_samples() {
        graphs.push(sample_graph(spec, index)?);
    }
    graphs.extend(targeted_instances(theorem));
    Ok(branch_coverage_over(theorem, &graphs, budget))
}

/// Coverage over an explicit instance list.
pub fn branch_coverage_over(
    theorem: TheoremId,
    graphs: &[ColoredMultigraph],
    budget: &Budget,
) -> CoverageTable {
    let mut hits: BTreeMap<String, usize> = BTreeMap::new();
    for g in graphs {
        if let Some(Ok(out)) = solve_constructive(g, theorem, budget) {
            for tag in out.trace {
                *hits.entry(tag).or_insert(0) += 1;
            }
        }
    }
    let vocabulary: Vec<String> = tag_vocabulary(theorem)
        .iter()
        .map(|s| s.to_string())
        .collect();
    let unhit = vocabulary
        .iter()
        .filter(|t| !hits.contains_key(*t))
        .cloned()
        .collect();
    CoverageTable {
        theorem,
        vocabulary,
        hits,
        unhit,
    }
}

/// One conjecture-sweep instance: exact search on a sampled 2-connected
/// graph above the conjectured bound.
#[derive(Clone, Debug, Serialize)]
pub struct ConjectureRecord {
    pub index: usize,
    pub n: usize,
    pub c: usize,
    pub m: usize,
    pub exact_status: SolveStatus,
    pub counterexample_candidate: bool,
    pub within_statement: bool,
    pub nanos: u128,
}

impl SweepRecord for ConjectureRecord {
    fn ok(&self) -> bool {
        !self.counterexample_candidate
    }
    fn timed_out(&self) -> bool {
        self.exact_status == SolveStatus::Timeout
    }
    fn nanos(&self) -> u128 {
        self.nanos
    }
    fn header() -> &'static [&'static str] {
        &[
            "index",
            "n",
            "c",
            "m",
            "exact",
            "counterexample",
            "in-statement",
        ]
    }
    fn cells(&self) -> Vec<String> {
        vec![
            self.index.to_string(),
            self.n.to_string(),
            self.c.to_string(),
            self.m.to_string(),
            self.exact_status.to_string(),
            self.counterexample_candidate.to_string(),
            self.within_statement.to_string(),
        ]
    }
}

/// Samples 2-connected graphs with full rainbow degree above the conjectured
/// bound and runs the exact solver on each; any exhausted search without a
/// cycle is surfaced as a counterexample candidate.
pub fn conjecture_sweep(
    n: usize,
    c: usize,
    samples: usize,
    budget: &Budget,
    seed: u64,
    allow_below_statement: bool,
) -> Result<SweepReport<ConjectureRecord>, SampleError> {
    if n < 10 && !allow_below_statement {
        return Err(SampleError {
            index: 0,
            attempts: 0,
            reason: format!(
                "statement requires n >= 10, got {n} (pass the small-n flag to explore)"
            ),
        });
    }
    let spec = CorpusSpec {
        n_range: (n, n),
        c_range: (c, c),
        edge_rule: EdgeCountRule::AtLeastThreshold(TheoremId::Conjecture),
        rainbow_rule: RainbowRule::FullColorCount,
        require_two_connected: true,
        samples_per_combo: samples,
        seed,
    };
    let mut records = Vec::new();
    for index in 0..samples {
        let g = sample_graph(&spec, index)?;
        let t0 = Instant::now();
        let out = find_proper_ham_cycle(&g, budget);
        records.push(ConjectureRecord {
            index,
            n,
            c,
            m: g.edge_count(),
            exact_status: out.status,
            counterexample_candidate: out.status == SolveStatus::Infeasible,
            within_statement: n >= 10,
            nanos: t0.elapsed().as_nanos(),
        });
    }
    Ok(SweepReport::new(records))
}
