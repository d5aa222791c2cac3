//! Command-line surface for the edge-colored multigraph toolkit.
//!
//! Exit codes: 0 success/found, 2 infeasible (or a failed sweep/verify),
//! 3 hypothesis violation, 4 timeout, 1 usage or input error.

use std::fs;
use std::io::Read;
use std::process::ExitCode;
use std::time::Duration;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use pchc::constructive::{check_hypotheses, TheoremId};
use pchc::extremal::FamilyId;
use pchc::graph::{verify_proper_cycle, verify_proper_path, ColoredMultigraph};
use pchc::harness::{
    branch_coverage, conjecture_sweep, corpus_sweep, solve_constructive, tightness_sweep,
    CorpusSpec, EdgeCountRule, RainbowRule, SweepRecord, SweepReport,
};
use pchc::io::{
    export_dot, parse_certificate_json, parse_graph_json, serialize_certificate_json,
    serialize_graph_json,
};
use pchc::solver::{
    find_proper_cycle_of_length, find_proper_ham_cycle, find_proper_path, Budget, Certificate,
    SearchConstraints, SolveOutcome, SolveStatus,
};

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_INFEASIBLE: u8 = 2;
const EXIT_VIOLATION: u8 = 3;
const EXIT_TIMEOUT: u8 = 4;

#[derive(Parser)]
#[command(
    name = "pchc",
    about = "Proper Hamiltonian cycles in edge-colored multigraphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct BudgetArgs {
    /// Node-expansion cap for exact searches.
    #[arg(long, default_value_t = 50_000_000)]
    budget_nodes: u64,
    /// Wall-clock cap in milliseconds for exact searches.
    #[arg(long, default_value_t = 60_000)]
    budget_ms: u64,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget::new(self.budget_nodes, Duration::from_millis(self.budget_ms))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit a named graph family as JSON or DOT.
    Generate {
        /// Family id, e.g. rainbow-complete, s1-extremal, conjecture-extremal.
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        /// Color count; defaults to the family's natural value.
        #[arg(long)]
        c: Option<usize>,
        /// Output format: json or dot.
        #[arg(long, default_value = "json")]
        format: String,
        /// Output path, or - for stdout.
        #[arg(long, short, default_value = "-")]
        out: String,
    },
    /// Evaluate a theorem's hypotheses against a graph.
    Check {
        #[arg(long)]
        theorem: String,
        /// Input path, or - for stdin.
        #[arg(long, short, default_value = "-")]
        input: String,
    },
    /// Run a constructive solver and print the outcome.
    Solve {
        #[arg(long)]
        theorem: String,
        #[arg(long, short, default_value = "-")]
        input: String,
        /// Also write the found certificate to this path.
        #[arg(long)]
        certificate_out: Option<String>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Run the exact backtracking search directly.
    Oracle {
        #[arg(long, short, default_value = "-")]
        input: String,
        /// Search for a proper cycle of this many vertices (default: all).
        #[arg(long)]
        length: Option<usize>,
        /// Search for a proper Hamiltonian path instead of a cycle.
        #[arg(long)]
        path: bool,
        /// Also write the found certificate to this path.
        #[arg(long)]
        certificate_out: Option<String>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Check a certificate against a graph.
    Verify {
        /// Certificate document path, or - for stdin.
        #[arg(long)]
        certificate: String,
        #[arg(long, short, default_value = "-")]
        input: String,
    },
    /// Corpus, tightness, coverage, and conjecture sweeps.
    Sweep {
        #[command(subcommand)]
        kind: SweepCommand,
        /// Output format: json or table.
        #[arg(long, global = true, default_value = "json")]
        format: String,
    },
}

#[derive(Subcommand)]
enum SweepCommand {
    /// Verify extremal families: exact edge counts, claims, infeasibility.
    Tightness {
        #[arg(long)]
        family: String,
        /// Parameter pairs n,c (repeatable), e.g. --params 5,3 --params 6,4.
        #[arg(long = "params", required = true)]
        params: Vec<String>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Cross-check constructive solvers against the exact solver on a
    /// seeded corpus.
    Corpus {
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        c_min: usize,
        #[arg(long)]
        c_max: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Branch coverage of a theorem's case analysis over a corpus.
    Coverage {
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        c_min: usize,
        #[arg(long)]
        c_max: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Sample graphs above the conjectured bound and hunt for
    /// counterexamples with the exact solver.
    Conjecture {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Explore below the statement's n >= 10 (reported out-of-statement).
        #[arg(long)]
        allow_small: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("reading stdin: {e}"))?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))
    }
}

fn write_output(path: &str, text: &str) -> Result<(), String> {
    if path == "-" {
        print!("{text}");
        Ok(())
    } else {
        fs::write(path, text).map_err(|e| format!("writing {path}: {e}"))
    }
}

fn load_graph(path: &str) -> Result<ColoredMultigraph, String> {
    let text = read_input(path)?;
    parse_graph_json(&text).map_err(|e| e.to_string())
}

fn status_code(status: SolveStatus) -> u8 {
    match status {
        SolveStatus::Found => EXIT_OK,
        SolveStatus::Infeasible => EXIT_INFEASIBLE,
        SolveStatus::HypothesisViolation => EXIT_VIOLATION,
        SolveStatus::Timeout => EXIT_TIMEOUT,
    }
}

fn print_outcome(outcome: &SolveOutcome) -> Result<(), String> {
    let mut text =
        serde_json::to_string(outcome).map_err(|e| format!("serializing outcome: {e}"))?;
    text.push('\n');
    print!("{text}");
    Ok(())
}

fn parse_params(raw: &[String]) -> Result<Vec<(usize, usize)>, String> {
    raw.iter()
        .map(|s| {
            let mut it = s.split(',');
            let n = it
                .next()
                .and_then(|x| x.trim().parse().ok())
                .ok_or_else(|| format!("bad parameter pair '{s}', expected n,c"))?;
            let c = it
                .next()
                .and_then(|x| x.trim().parse().ok())
                .ok_or_else(|| format!("bad parameter pair '{s}', expected n,c"))?;
            if it.next().is_some() {
                return Err(format!("bad parameter pair '{s}', expected n,c"));
            }
            Ok((n, c))
        })
        .collect()
}

fn emit_report<R: SweepRecord + serde::Serialize>(
    report: &SweepReport<R>,
    format: &str,
) -> Result<u8, String> {
    match format {
        "json" => {
            let mut text =
                serde_json::to_string(report).map_err(|e| format!("serializing report: {e}"))?;
            text.push('\n');
            print!("{text}");
        }
        "table" => print!("{report}"),
        other => return Err(format!("unknown format '{other}'")),
    }
    Ok(if report.all_ok() {
        EXIT_OK
    } else {
        EXIT_INFEASIBLE
    })
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Generate {
            family,
            n,
            c,
            format,
            out,
        } => {
            let family: FamilyId = family.parse()?;
            let c = c.unwrap_or(match family {
                FamilyId::RainbowComplete
                | FamilyId::TwoColEdgesExtremal
                | FamilyId::TwoColRainbowExtremal => 2,
                _ => 3,
            });
            let (g, _spec) = pchc::extremal::generate(family, n, c).map_err(|e| e.to_string())?;
            let text = match format.as_str() {
                "json" => serialize_graph_json(&g),
                "dot" => export_dot(&g, None),
                other => return Err(format!("unknown format '{other}'")),
            };
            write_output(&out, &text)?;
            Ok(EXIT_OK)
        }
        Command::Check { theorem, input } => {
            let theorem: TheoremId = theorem.parse()?;
            let g = load_graph(&input)?;
            let report = check_hypotheses(&g, theorem);
            let mut text =
                serde_json::to_string(&report).map_err(|e| format!("serializing report: {e}"))?;
            text.push('\n');
            print!("{text}");
            Ok(if report.satisfied {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            })
        }
        Command::Solve {
            theorem,
            input,
            certificate_out,
            budget,
        } => {
            let theorem: TheoremId = theorem.parse()?;
            let g = load_graph(&input)?;
            let Some(result) = solve_constructive(&g, theorem, &budget.budget()) else {
                return Err(format!("theorem '{theorem}' has no constructive solver"));
            };
            let outcome = result.map_err(|e| e.to_string())?;
            emit_certificate(&outcome, certificate_out.as_deref())?;
            print_outcome(&outcome)?;
            Ok(status_code(outcome.status))
        }
        Command::Oracle {
            input,
            length,
            path,
            certificate_out,
            budget,
        } => {
            let g = load_graph(&input)?;
            let budget = budget.budget();
            let outcome = if path {
                let len = length.unwrap_or(g.vertex_count());
                find_proper_path(&g, &SearchConstraints::path_of_length(len), &budget)
                    .map_err(|e| e.to_string())?
            } else {
                match length {
                    Some(len) => {
                        find_proper_cycle_of_length(&g, len, &budget).map_err(|e| e.to_string())?
                    }
                    None => find_proper_ham_cycle(&g, &budget),
                }
            };
            emit_certificate(&outcome, certificate_out.as_deref())?;
            print_outcome(&outcome)?;
            Ok(status_code(outcome.status))
        }
        Command::Verify { certificate, input } => {
            let g = load_graph(&input)?;
            let cert_text = read_input(&certificate)?;
            let cert = parse_certificate_json(&cert_text).map_err(|e| e.to_string())?;
            let result = match &cert {
                Certificate::Cycle(c) => verify_proper_cycle(&g, c).map_err(|e| e.to_string()),
                Certificate::Path(p) => verify_proper_path(&g, p).map_err(|e| e.to_string()),
            };
            match result {
                Ok(()) => {
                    println!("{{\"valid\":true}}");
                    Ok(EXIT_OK)
                }
                Err(reason) => {
                    let doc = serde_json::json!({ "valid": false, "reason": reason });
                    println!("{doc}");
                    Ok(EXIT_INFEASIBLE)
                }
            }
        }
        Command::Sweep { kind, format } => match kind {
            SweepCommand::Tightness {
                family,
                params,
                budget,
            } => {
                let family: FamilyId = family.parse()?;
                let params = parse_params(&params)?;
                let report = tightness_sweep(family, &params, &budget.budget());
                emit_report(&report, &format)
            }
            SweepCommand::Corpus {
                theorem,
                n_min,
                n_max,
                c_min,
                c_max,
                samples,
                seed,
                budget,
            } => {
                let theorem: TheoremId = theorem.parse()?;
                let spec = CorpusSpec {
                    n_range: (n_min, n_max),
                    c_range: (c_min, c_max),
                    edge_rule: EdgeCountRule::AtLeastThreshold(theorem),
                    rainbow_rule: rainbow_requirement(theorem),
                    require_two_connected: theorem == TheoremId::Conjecture,
                    samples_per_combo: samples,
                    seed,
                };
                let report =
                    corpus_sweep(&spec, theorem, &budget.budget()).map_err(|e| e.to_string())?;
                emit_report(&report, &format)
            }
            SweepCommand::Coverage {
                theorem,
                n_min,
                n_max,
                c_min,
                c_max,
                samples,
                seed,
                budget,
            } => {
                let theorem: TheoremId = theorem.parse()?;
                let spec = CorpusSpec {
                    n_range: (n_min, n_max),
                    c_range: (c_min, c_max),
                    edge_rule: EdgeCountRule::AtLeastThreshold(theorem),
                    rainbow_rule: rainbow_requirement(theorem),
                    require_two_connected: false,
                    samples_per_combo: samples,
                    seed,
                };
                let table =
                    branch_coverage(theorem, &spec, &budget.budget()).map_err(|e| e.to_string())?;
                let mut text =
                    serde_json::to_string(&table).map_err(|e| format!("serializing: {e}"))?;
                text.push('\n');
                print!("{text}");
                Ok(if table.complete() {
                    EXIT_OK
                } else {
                    EXIT_INFEASIBLE
                })
            }
            SweepCommand::Conjecture {
                n,
                c,
                samples,
                seed,
                allow_small,
                budget,
            } => {
                let report = conjecture_sweep(n, c, samples, &budget.budget(), seed, allow_small)
                    .map_err(|e| e.to_string())?;
                emit_report(&report, &format)
            }
        },
    }
}

/// Rainbow-degree sampling requirement implied by a theorem.
fn rainbow_requirement(theorem: TheoremId) -> RainbowRule {
    match theorem {
        TheoremId::TwoColRainbow => RainbowRule::Exactly(2),
        TheoremId::CColRainbow | TheoremId::Conjecture => RainbowRule::FullColorCount,
        TheoremId::TwoColEdges | TheoremId::CColEdges => RainbowRule::Any,
    }
}

fn emit_certificate(outcome: &SolveOutcome, path: Option<&str>) -> Result<(), String> {
    if let (Some(path), Some(cert)) = (path, &outcome.certificate) {
        write_output(path, &serialize_certificate_json(cert))?;
    }
    Ok(())
}
