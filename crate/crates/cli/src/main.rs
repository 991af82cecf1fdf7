//! `planted`: samplers, detection tests, recovery estimators, structure
//! statistics, and low-degree analysis for hidden structures planted in
//! dense random graphs.
//!
//! Exit codes: 0 success (for `detect`: decision H0), 1 for `detect`
//! decision H1 or any runtime error, 2 degenerate verdict, 3 resource limit.

use clap::{Args, Parser, Subcommand, ValueEnum};
use planted_core::detectors::{
    scan_test, spectral_test, total_degree_test, Decision, SpectralConfig, TestVerdict,
};
use planted_core::ensembles::{
    sample_null, sample_subgraph_ensemble, sample_union_ensemble, EnsembleKind, PlantParams,
    PlantedSample,
};
use planted_core::error::Error;
use planted_core::graphcore::DEFAULT_SEARCH_BUDGET;
use planted_core::harness::{estimate_risk, phase_diagram, FamilySpec, GridSpec, TestKind};
use planted_core::lowdegree::{exact_lowdegree_norm, lowdegree_bound_conditions};
use planted_core::recovery::{exhaustive_recover, max_degree_recover};
use planted_core::structstats::{StructureReport, DEFAULT_TAU};
use planted_core::Graph;
use std::io::Read;
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "planted", version, about)]
struct Cli {
    /// Master seed for every randomized subcommand.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for Monte Carlo subcommands (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Wall-clock budget for grid sweeps, in seconds.
    #[arg(long, global = true)]
    budget_seconds: Option<f64>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnsembleArg {
    Null,
    Subgraph,
    Union,
}

#[derive(Clone, Copy, ValueEnum)]
enum TestArg {
    Scan,
    Degree,
    Spectral,
    Coin,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Exhaustive,
    Degree,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Clique,
    IndependentSet,
    Path,
    Cycle,
    Star,
    File,
}

#[derive(Clone, Copy, ValueEnum)]
enum LowDegreeMode {
    Exact,
    Bounds,
}

#[derive(Subcommand)]
enum Command {
    /// Draw one graph from an ensemble and print it in the text format.
    Sample(SampleArgs),
    /// Structure statistics of a pattern at (n, q), as JSON.
    Stats(StatsArgs),
    /// Run a detection test on a graph read from stdin; JSON verdict out.
    Detect(DetectArgs),
    /// Recover a planted structure from a graph read from stdin.
    Recover(RecoverArgs),
    /// Monte Carlo Type I+II risk of a test, as JSON.
    Risk(RiskArgs),
    /// Exact low-degree norm or closed-form bound conditions.
    Lowdegree(LowDegreeArgs),
    /// Risk sweep over a parameter grid, as CSV.
    Phase(PhaseArgs),
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long, value_enum)]
    ensemble: EnsembleArg,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: f64,
    /// Pattern graph file; required for the planted ensembles.
    #[arg(long)]
    pattern: Option<PathBuf>,
    /// Trial index within the seeded stream.
    #[arg(long, default_value_t = 0)]
    trial: u64,
    /// Emit the planted vertices as a `# planted: ...` comment line.
    #[arg(long)]
    emit_embedding: bool,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long)]
    pattern: PathBuf,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    q: f64,
    /// Boundary half-width on log min D_H for the regime call.
    #[arg(long, default_value_t = DEFAULT_TAU)]
    tau: f64,
}

#[derive(Args)]
struct DetectArgs {
    #[arg(long, value_enum)]
    test: TestArg,
    #[arg(long)]
    pattern: PathBuf,
    /// Expected vertex count of the input graph (cross-checked).
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: f64,
    /// Target risk of the spectral threshold.
    #[arg(long, default_value_t = 0.05)]
    delta: f64,
    /// Decision threshold of the scan test (default: the minimizer's size).
    #[arg(long)]
    k_star: Option<u32>,
    #[arg(long, default_value_t = 5000)]
    power_iters: u32,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

#[derive(Args)]
struct RecoverArgs {
    #[arg(long, value_enum)]
    method: MethodArg,
    #[arg(long)]
    pattern: PathBuf,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: f64,
    /// Planted truth: a file with the planted vertex set (bare indices or a
    /// sampler output containing a `# planted: ...` line).
    #[arg(long)]
    truth: Option<PathBuf>,
}

#[derive(Args)]
struct RiskArgs {
    #[arg(long, value_enum)]
    test: TestArg,
    #[arg(long)]
    pattern: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FamilyArg::Clique)]
    family: FamilyArg,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: f64,
    #[arg(long)]
    trials: u64,
    #[arg(long, value_enum, default_value_t = EnsembleArg::Subgraph)]
    ensemble: EnsembleArg,
    #[arg(long, default_value_t = 0.05)]
    delta: f64,
    #[arg(long)]
    k_star: Option<u32>,
    #[arg(long, default_value_t = 2000)]
    power_iters: u32,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Args)]
struct LowDegreeArgs {
    #[arg(long, value_enum)]
    mode: LowDegreeMode,
    #[arg(long)]
    pattern: Option<PathBuf>,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    q: f64,
    /// Polynomial degree cap D.
    #[arg(long = "D", visible_alias = "degree")]
    degree: u32,
    /// Pattern size for bounds mode without a pattern file.
    #[arg(long)]
    k: Option<f64>,
    /// Bounds-mode sweep `M1..M2:EXP`: n = 2^m for m in M1..=M2,
    /// k = n^EXP, D = ceil(log n); emits CSV.
    #[arg(long)]
    grid: Option<String>,
}

#[derive(Args)]
struct PhaseArgs {
    #[arg(long, value_enum)]
    test: TestArg,
    #[arg(long, value_enum, default_value_t = FamilyArg::Clique)]
    family: FamilyArg,
    /// Pattern file for `--family file`.
    #[arg(long)]
    pattern: Option<PathBuf>,
    /// n values: comma list or `a..b[..step]`.
    #[arg(long)]
    n: String,
    /// k values: comma list or `a..b[..step]`.
    #[arg(long)]
    k: String,
    /// q values: comma list.
    #[arg(long)]
    q: String,
    #[arg(long)]
    trials: u64,
    #[arg(long, default_value_t = 0.05)]
    delta: f64,
    #[arg(long)]
    k_star: Option<u32>,
    #[arg(long, default_value_t = 1500)]
    power_iters: u32,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Grid point index to resume an interrupted sweep from.
    #[arg(long, default_value_t = 0)]
    resume_from: usize,
}

fn main() {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        // Ignore failure: the pool may already be initialized in tests.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global();
    }
    std::process::exit(match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::ResourceLimit { .. } => 3,
                _ => 1,
            }
        }
    });
}

fn read_graph_file(path: &PathBuf) -> Result<Graph, Error> {
    Graph::from_text(&std::fs::read_to_string(path)?)
}

fn read_stdin_graph(expected_n: usize) -> Result<Graph, Error> {
    let mut text = String::new();
    std::io::stdin().read_to_string(&mut text)?;
    let g = Graph::from_text(&text)?;
    if g.vertex_count() != expected_n {
        return Err(Error::invalid(format!(
            "input graph has {} vertices, --n says {expected_n}",
            g.vertex_count()
        )));
    }
    Ok(g)
}

/// Planted truth: either bare whitespace-separated indices or any file
/// containing a `# planted: ...` comment (sampler output works).
fn read_truth_file(path: &PathBuf) -> Result<Vec<u32>, Error> {
    let text = std::fs::read_to_string(path)?;
    let planted_line = text
        .lines()
        .find_map(|l| l.trim().strip_prefix("# planted:").map(str::to_string));
    let tokens: Vec<&str> = match &planted_line {
        Some(rest) => rest.split_whitespace().collect(),
        None => text
            .split_whitespace()
            .filter(|t| !t.starts_with('#'))
            .collect(),
    };
    tokens
        .iter()
        .map(|t| {
            t.parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad vertex index {t:?} in truth file")))
        })
        .collect()
}

fn emit(output: &Option<PathBuf>, payload: &str) -> Result<(), Error> {
    match output {
        Some(path) => std::fs::write(path, payload)?,
        None => print!("{payload}"),
    }
    Ok(())
}

fn test_kind(
    test: TestArg,
    k_star: Option<u32>,
    delta: f64,
    power_iters: u32,
    tol: f64,
) -> TestKind {
    match test {
        TestArg::Scan => TestKind::Scan { k_star },
        TestArg::Degree => TestKind::Degree,
        TestArg::Spectral => TestKind::Spectral(SpectralConfig {
            delta,
            power_iters,
            tol,
        }),
        TestArg::Coin => TestKind::CoinFlip,
    }
}

fn family_spec(family: FamilyArg, pattern: Option<&PathBuf>) -> Result<FamilySpec, Error> {
    Ok(match family {
        FamilyArg::Clique => FamilySpec::Clique,
        FamilyArg::IndependentSet => FamilySpec::IndependentSet,
        FamilyArg::Path => FamilySpec::Path,
        FamilyArg::Cycle => FamilySpec::Cycle,
        FamilyArg::Star => FamilySpec::Star,
        FamilyArg::File => {
            let path =
                pattern.ok_or_else(|| Error::invalid("--family file requires --pattern FILE"))?;
            FamilySpec::File(read_graph_file(path)?)
        }
    })
}

/// `a..b[..step]` (inclusive) or a comma list.
fn parse_usize_values(spec: &str) -> Result<Vec<usize>, Error> {
    if spec.contains("..") {
        let parts: Vec<&str> = spec.split("..").collect();
        let bad = || Error::Parse(format!("bad range {spec:?}; expected a..b[..step]"));
        if parts.len() != 2 && parts.len() != 3 {
            return Err(bad());
        }
        let a: usize = parts[0].parse().map_err(|_| bad())?;
        let b: usize = parts[1].parse().map_err(|_| bad())?;
        let step: usize = if parts.len() == 3 {
            parts[2].parse().map_err(|_| bad())?
        } else {
            1
        };
        if step == 0 || b < a {
            return Err(bad());
        }
        Ok((a..=b).step_by(step).collect())
    } else {
        spec.split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad integer {t:?}")))
            })
            .collect()
    }
}

fn parse_f64_values(spec: &str) -> Result<Vec<f64>, Error> {
    spec.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad number {t:?}")))
        })
        .collect()
}

fn verdict_exit_code(v: &TestVerdict) -> i32 {
    if v.degenerate {
        2
    } else {
        match v.decision {
            Decision::H0 => 0,
            Decision::H1 => 1,
        }
    }
}

fn run(cli: Cli) -> Result<i32, Error> {
    let seed = cli.seed;
    match cli.command {
        Command::Sample(a) => {
            let sample: PlantedSample = match a.ensemble {
                EnsembleArg::Null => sample_null(a.n, a.q, seed)?,
                kind => {
                    let path = a
                        .pattern
                        .as_ref()
                        .ok_or_else(|| Error::invalid("planted ensembles require --pattern"))?;
                    let params = PlantParams {
                        n: a.n,
                        q: a.q,
                        pattern: read_graph_file(path)?,
                        ensemble: match kind {
                            EnsembleArg::Subgraph => EnsembleKind::Subgraph,
                            _ => EnsembleKind::Union,
                        },
                        seed,
                    };
                    match params.ensemble {
                        EnsembleKind::Subgraph => sample_subgraph_ensemble(&params, a.trial)?,
                        _ => sample_union_ensemble(&params, a.trial)?,
                    }
                }
            };
            let mut text = String::new();
            if a.emit_embedding {
                if let Some(emb) = &sample.embedding {
                    let verts: Vec<String> = emb.as_slice().iter().map(|v| v.to_string()).collect();
                    text.push_str(&format!("# planted: {}\n", verts.join(" ")));
                }
            }
            text.push_str(&sample.graph.to_text());
            emit(&cli.output, &text)?;
            Ok(0)
        }
        Command::Stats(a) => {
            let pattern = read_graph_file(&a.pattern)?;
            if pattern.vertex_count() > 20 {
                eprintln!(
                    "warning: the subset sweep is exponential in the pattern size \
                     ({} vertices); expect it to crawl",
                    pattern.vertex_count()
                );
            }
            let report = StructureReport::compute(&pattern, a.n, a.q, a.tau)?;
            let json = serde_json::json!({
                "density": report.density.to_string(),
                "m": report.max_subgraph_density.to_string(),
                "strictly_balanced": report.strictly_balanced,
                "aut": report.aut_count,
                "log_dh_min": report.dh_min_value,
                "minimizer_edges": report.dh_minimizer.edges(),
                "regime": report.regime,
            });
            emit(
                &cli.output,
                &format!("{}\n", serde_json::to_string_pretty(&json).unwrap()),
            )?;
            Ok(0)
        }
        Command::Detect(a) => {
            let pattern = read_graph_file(&a.pattern)?;
            let g = read_stdin_graph(a.n)?;
            let verdict = match a.test {
                TestArg::Scan => scan_test(&g, &pattern, a.q, a.k_star, DEFAULT_SEARCH_BUDGET)?,
                TestArg::Degree => total_degree_test(&g, &pattern, a.q)?,
                TestArg::Spectral => spectral_test(
                    &g,
                    &pattern,
                    a.q,
                    &SpectralConfig {
                        delta: a.delta,
                        power_iters: a.power_iters,
                        tol: a.tol,
                    },
                )?,
                TestArg::Coin => {
                    return Err(Error::invalid("the coin baseline is for risk sweeps only"))
                }
            };
            emit(
                &cli.output,
                &format!("{}\n", serde_json::to_string_pretty(&verdict).unwrap()),
            )?;
            Ok(verdict_exit_code(&verdict))
        }
        Command::Recover(a) => {
            let pattern = read_graph_file(&a.pattern)?;
            let g = read_stdin_graph(a.n)?;
            let truth = a.truth.as_ref().map(read_truth_file).transpose()?;
            let result = match a.method {
                MethodArg::Exhaustive => {
                    exhaustive_recover(&g, &pattern, truth.as_deref(), DEFAULT_SEARCH_BUDGET)?
                }
                MethodArg::Degree => max_degree_recover(&g, &pattern, a.q, truth.as_deref()),
            };
            emit(
                &cli.output,
                &format!("{}\n", serde_json::to_string_pretty(&result).unwrap()),
            )?;
            Ok(0)
        }
        Command::Risk(a) => {
            let pattern = match (&a.pattern, a.k) {
                (Some(path), _) => read_graph_file(path)?,
                (None, Some(k)) => family_spec(a.family, None)?.pattern(k)?,
                (None, None) => {
                    return Err(Error::invalid("risk needs --pattern FILE or --family/--k"))
                }
            };
            let params = PlantParams {
                n: a.n,
                q: a.q,
                pattern,
                ensemble: match a.ensemble {
                    EnsembleArg::Null => {
                        return Err(Error::invalid(
                            "risk compares null vs planted; pick a planted ensemble",
                        ))
                    }
                    EnsembleArg::Subgraph => EnsembleKind::Subgraph,
                    EnsembleArg::Union => EnsembleKind::Union,
                },
                seed,
            };
            let kind = test_kind(a.test, a.k_star, a.delta, a.power_iters, a.tol);
            let estimate = estimate_risk(&kind, &params, a.trials, seed)?;
            emit(
                &cli.output,
                &format!("{}\n", serde_json::to_string_pretty(&estimate).unwrap()),
            )?;
            Ok(0)
        }
        Command::Lowdegree(a) => match a.mode {
            LowDegreeMode::Exact => {
                let path = a
                    .pattern
                    .as_ref()
                    .ok_or_else(|| Error::invalid("exact mode requires --pattern"))?;
                let pattern = read_graph_file(path)?;
                let k = pattern.vertex_count() as f64;
                let params = PlantParams {
                    n: a.n as usize,
                    q: a.q,
                    pattern,
                    ensemble: EnsembleKind::Subgraph,
                    seed,
                };
                let exact = exact_lowdegree_norm(&params, a.degree as usize)?;
                let mut report = lowdegree_bound_conditions(a.n, k, a.q, a.degree)?;
                report.exact_norm_sq = Some(exact);
                emit(
                    &cli.output,
                    &format!("{}\n", serde_json::to_string_pretty(&report).unwrap()),
                )?;
                Ok(0)
            }
            LowDegreeMode::Bounds => {
                if let Some(grid) = &a.grid {
                    let csv = lowdegree_grid_csv(grid, a.q)?;
                    emit(&cli.output, &csv)?;
                    return Ok(0);
                }
                let k = match (a.k, &a.pattern) {
                    (Some(k), _) => k,
                    (None, Some(path)) => read_graph_file(path)?.vertex_count() as f64,
                    (None, None) => {
                        return Err(Error::invalid("bounds mode needs --k or --pattern"))
                    }
                };
                let report = lowdegree_bound_conditions(a.n, k, a.q, a.degree)?;
                emit(
                    &cli.output,
                    &format!("{}\n", serde_json::to_string_pretty(&report).unwrap()),
                )?;
                Ok(0)
            }
        },
        Command::Phase(a) => {
            let grid = GridSpec {
                family: family_spec(a.family, a.pattern.as_ref())?,
                n_values: parse_usize_values(&a.n)?,
                k_values: parse_usize_values(&a.k)?,
                q_values: parse_f64_values(&a.q)?,
            };
            let kind = test_kind(a.test, a.k_star, a.delta, a.power_iters, a.tol);
            let out = phase_diagram(
                &kind,
                &grid,
                a.trials,
                seed,
                cli.budget_seconds,
                a.resume_from,
            )?;
            emit(&cli.output, &out.csv)?;
            if let Some(idx) = out.resume_index {
                eprintln!("budget exceeded; resume with --resume-from {idx}");
                return Ok(3);
            }
            Ok(0)
        }
    }
}

/// CSV sweep of the bound conditions over n = 2^m, k = n^exp, D = ceil(log n).
fn lowdegree_grid_csv(spec: &str, q: f64) -> Result<String, Error> {
    let bad = || Error::Parse(format!("bad grid {spec:?}; expected M1..M2:EXP"));
    let (range, exp) = spec.split_once(':').ok_or_else(bad)?;
    let (m1, m2) = range.split_once("..").ok_or_else(bad)?;
    let m1: u32 = m1.parse().map_err(|_| bad())?;
    let m2: u32 = m2.parse().map_err(|_| bad())?;
    let exp: f64 = exp.parse().map_err(|_| bad())?;
    if m2 < m1 || m2 > 62 {
        return Err(bad());
    }
    let mut csv = String::from("# schema=1\nn,k,q,D,kind,value,regime\n");
    for m in m1..=m2 {
        let n = 1u64 << m;
        let k = (n as f64).powf(exp);
        let degree = (n as f64).ln().ceil().max(1.0) as u32;
        let r = lowdegree_bound_conditions(n, k, q, degree)?;
        for (kind, value, bounded) in [
            ("bound-clique", r.bound_clique, r.bounded_clique),
            ("bound-indep", r.bound_indep, r.bounded_indep),
        ] {
            csv.push_str(&format!(
                "{n},{k},{q},{degree},{kind},{value},{}\n",
                if bounded { "bounded" } else { "unbounded" }
            ));
        }
    }
    Ok(csv)
}
