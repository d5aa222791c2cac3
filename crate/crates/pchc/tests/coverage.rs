//! Branch-coverage runs: every tag in each theorem's vocabulary must be hit
//! by the seeded corpus plus the targeted steering instances, and the
//! corpora must keep the constructive and exact solvers in agreement.

use pchc::constructive::{tag_vocabulary, TheoremId};
use pchc::harness::{branch_coverage, corpus_sweep, CorpusSpec, EdgeCountRule, RainbowRule};
use pchc::solver::Budget;

fn spec_for(theorem: TheoremId) -> CorpusSpec {
    match theorem {
        TheoremId::TwoColEdges => CorpusSpec {
            n_range: (4, 8),
            c_range: (2, 2),
            edge_rule: EdgeCountRule::AtLeastThreshold(theorem),
            rainbow_rule: RainbowRule::Any,
            require_two_connected: false,
            samples_per_combo: 40,
            seed: 0xC0,
        },
        TheoremId::TwoColRainbow => CorpusSpec {
            n_range: (9, 12),
            c_range: (2, 2),
            edge_rule: EdgeCountRule::AtLeastThreshold(theorem),
            rainbow_rule: RainbowRule::Exactly(2),
            require_two_connected: false,
            samples_per_combo: 25,
            seed: 0xC1,
        },
        TheoremId::CColEdges => CorpusSpec {
            n_range: (4, 7),
            c_range: (3, 4),
            edge_rule: EdgeCountRule::AtLeastThreshold(theorem),
            rainbow_rule: RainbowRule::Any,
            require_two_connected: false,
            samples_per_combo: 25,
            seed: 0xC2,
        },
        TheoremId::CColRainbow => CorpusSpec {
            n_range: (4, 7),
            c_range: (3, 4),
            edge_rule: EdgeCountRule::AtLeastThreshold(theorem),
            rainbow_rule: RainbowRule::FullColorCount,
            require_two_connected: false,
            samples_per_combo: 25,
            seed: 0xC3,
        },
        TheoremId::Conjecture => unreachable!("no constructive solver"),
    }
}

#[test]
fn every_vocabulary_tag_is_reachable() {
    for theorem in [
        TheoremId::TwoColEdges,
        TheoremId::TwoColRainbow,
        TheoremId::CColEdges,
        TheoremId::CColRainbow,
    ] {
        let spec = spec_for(theorem);
        let table = branch_coverage(theorem, &spec, &Budget::default()).unwrap();
        assert!(
            table.complete(),
            "{theorem}: unhit branches {:?} (hits: {:?})",
            table.unhit,
            table.hits
        );
        for tag in tag_vocabulary(theorem) {
            assert!(table.hits[*tag] >= 1);
        }
    }
}

/// A corpus of rainbow complete graphs alone never leaves the base-case and
/// degree-condition branches, and the coverage table reports the rest as
/// unhit.
#[test]
fn uniform_corpus_reports_unhit_branches() {
    let spec = CorpusSpec {
        n_range: (6, 8),
        c_range: (2, 2),
        edge_rule: EdgeCountRule::Full,
        rainbow_rule: RainbowRule::Any,
        require_two_connected: false,
        samples_per_combo: 1,
        seed: 0,
    };
    let graphs: Vec<_> = (0..spec.total_samples())
        .map(|i| pchc::harness::sample_graph(&spec, i).unwrap())
        .collect();
    let table =
        pchc::harness::branch_coverage_over(TheoremId::TwoColEdges, &graphs, &Budget::default());
    assert!(table
        .unhit
        .contains(&"contract-low-degree-vertex".to_string()));
    assert!(table.hits.contains_key("degree-condition-oracle"));
}

/// Sampled corpora keep both solver routes in agreement end to end.
#[test]
fn corpus_sweeps_agree() {
    for theorem in [
        TheoremId::TwoColEdges,
        TheoremId::CColEdges,
        TheoremId::CColRainbow,
    ] {
        let mut spec = spec_for(theorem);
        spec.samples_per_combo = 10;
        let report = corpus_sweep(&spec, theorem, &Budget::default()).unwrap();
        assert!(report.all_ok(), "{theorem}: {report}");
    }
}

/// The rainbow sampler cannot reach rd = 2 corpora fast at full density
/// ranges with n = 12, so the two-color rainbow sweep runs on its own
/// smaller range.
#[test]
fn two_col_rainbow_corpus_agrees() {
    let spec = CorpusSpec {
        n_range: (9, 11),
        c_range: (2, 2),
        edge_rule: EdgeCountRule::AtLeastThreshold(TheoremId::TwoColRainbow),
        rainbow_rule: RainbowRule::Exactly(2),
        require_two_connected: false,
        samples_per_combo: 10,
        seed: 0xC4,
    };
    let report = corpus_sweep(&spec, TheoremId::TwoColRainbow, &Budget::default()).unwrap();
    assert!(report.all_ok(), "{report}");
}
