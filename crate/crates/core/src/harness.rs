//! Monte Carlo risk estimation and parameter-grid phase diagrams.
//!
//! Trials are embarrassingly parallel: every trial derives its own stream
//! from hash(master seed, grid point, trial index, hypothesis bit), and the
//! aggregation is a pure count reduction, so results are byte-identical
//! regardless of worker count.

use crate::detectors::{
    scan_test, spectral_test, total_degree_test, Decision, SpectralConfig, TestVerdict,
};
use crate::ensembles::{derive_stream, sample, sample_null, PlantParams};
use crate::error::{Error, Result};
use crate::graphcore::{Graph, DEFAULT_SEARCH_BUDGET};
use crate::lowdegree::lowdegree_bound_conditions;
use crate::structstats::dh_min;
use rayon::prelude::*;
use serde::Serialize;

/// Which detector a Monte Carlo run drives.
#[derive(Clone, Debug)]
pub enum TestKind {
    Scan {
        k_star: Option<u32>,
    },
    Degree,
    Spectral(SpectralConfig),
    /// Baseline that ignores the graph; its risk concentrates at 1.
    CoinFlip,
}

impl TestKind {
    pub fn name(&self) -> &'static str {
        match self {
            TestKind::Scan { .. } => "scan",
            TestKind::Degree => "degree",
            TestKind::Spectral(_) => "spectral",
            TestKind::CoinFlip => "coin",
        }
    }
}

/// Runs one detector on one graph. `entropy` feeds only the coin-flip
/// baseline.
pub fn run_detector(
    kind: &TestKind,
    g: &Graph,
    pattern: &Graph,
    q: f64,
    entropy: u64,
) -> Result<TestVerdict> {
    match kind {
        TestKind::Scan { k_star } => scan_test(g, pattern, q, *k_star, DEFAULT_SEARCH_BUDGET),
        TestKind::Degree => total_degree_test(g, pattern, q),
        TestKind::Spectral(cfg) => spectral_test(g, pattern, q, cfg),
        TestKind::CoinFlip => {
            let heads = derive_stream(entropy, &[0xC01]) & 1 == 1;
            Ok(TestVerdict {
                test: "coin".into(),
                statistic: if heads { 1.0 } else { 0.0 },
                threshold: 0.5,
                decision: if heads { Decision::H1 } else { Decision::H0 },
                degenerate: false,
                detail: "graph-independent coin flip".into(),
            })
        }
    }
}

/// Monte Carlo Type I / Type II estimate over paired H0 and H1 trial sets.
#[derive(Clone, Debug, Serialize)]
pub struct RiskEstimate {
    pub test: String,
    pub trials: u64,
    pub type1_hat: f64,
    pub type2_hat: f64,
    pub risk_hat: f64,
    /// 1.96 sqrt(p(1-p)/trials) per error type, summed.
    pub ci_halfwidth: f64,
    pub seed: u64,
    /// Degenerate verdicts are not dropped (that would bias the estimate);
    /// they are counted per hypothesis and reported here.
    pub degenerate_h0: u64,
    pub degenerate_h1: u64,
}

/// Runs `trials` null and `trials` planted samples through the detector.
/// Type I is the fraction of H1 verdicts under the null; Type II the
/// fraction of H0 verdicts under the planted model.
pub fn estimate_risk(
    kind: &TestKind,
    params: &PlantParams,
    trials: u64,
    seed: u64,
) -> Result<RiskEstimate> {
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    params.validate()?;

    let per_trial = |trial: u64| -> Result<(u64, u64, u64, u64)> {
        let h0_seed = derive_stream(seed, &[0, trial]);
        let g0 = sample_null(params.n, params.q, h0_seed)?;
        let v0 = run_detector(kind, &g0.graph, &params.pattern, params.q, h0_seed)?;

        let mut h1_params = params.clone();
        h1_params.seed = derive_stream(seed, &[1]);
        let g1 = sample(&h1_params, trial)?;
        let v1 = run_detector(
            kind,
            &g1.graph,
            &params.pattern,
            params.q,
            derive_stream(seed, &[1, trial]),
        )?;

        Ok((
            (v0.decision == Decision::H1) as u64,
            v0.degenerate as u64,
            (v1.decision == Decision::H0) as u64,
            v1.degenerate as u64,
        ))
    };

    let (false_alarms, degen0, misses, degen1) =
        (0..trials).into_par_iter().map(per_trial).try_reduce(
            || (0, 0, 0, 0),
            |a, b| Ok((a.0 + b.0, a.1 + b.1, a.2 + b.2, a.3 + b.3)),
        )?;

    let t = trials as f64;
    let type1_hat = false_alarms as f64 / t;
    let type2_hat = misses as f64 / t;
    let half = |p: f64| 1.96 * (p * (1.0 - p) / t).sqrt();
    Ok(RiskEstimate {
        test: kind.name().into(),
        trials,
        type1_hat,
        type2_hat,
        risk_hat: type1_hat + type2_hat,
        ci_halfwidth: half(type1_hat) + half(type2_hat),
        seed,
        degenerate_h0: degen0,
        degenerate_h1: degen1,
    })
}

/// Pattern family generator for grid sweeps.
#[derive(Clone, Debug)]
pub enum FamilySpec {
    Clique,
    IndependentSet,
    Path,
    Cycle,
    Star,
    File(Graph),
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Clique => "clique",
            FamilySpec::IndependentSet => "independent-set",
            FamilySpec::Path => "path",
            FamilySpec::Cycle => "cycle",
            FamilySpec::Star => "star",
            FamilySpec::File(_) => "file",
        }
    }

    /// The k-vertex member of the family; fixed-file patterns must match k.
    pub fn pattern(&self, k: usize) -> Result<Graph> {
        match self {
            FamilySpec::Clique => Ok(Graph::complete(k)),
            FamilySpec::IndependentSet => Ok(Graph::empty(k)),
            FamilySpec::Path => Ok(Graph::path(k)),
            FamilySpec::Cycle => {
                if k < 3 {
                    Err(Error::invalid("cycle family needs k >= 3"))
                } else {
                    Ok(Graph::cycle(k))
                }
            }
            FamilySpec::Star => Ok(Graph::star(k)),
            FamilySpec::File(g) => {
                if g.vertex_count() != k {
                    Err(Error::invalid(format!(
                        "fixed pattern has {} vertices, grid point wants k={k}",
                        g.vertex_count()
                    )))
                } else {
                    Ok(g.clone())
                }
            }
        }
    }
}

/// Ranges over (n, k, q) plus the pattern family.
#[derive(Clone, Debug)]
pub struct GridSpec {
    pub family: FamilySpec,
    pub n_values: Vec<usize>,
    pub k_values: Vec<usize>,
    pub q_values: Vec<f64>,
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_values.is_empty() || self.k_values.is_empty() || self.q_values.is_empty() {
            return Err(Error::invalid("grid ranges must be nonempty"));
        }
        for &n in &self.n_values {
            for &k in &self.k_values {
                if k > n {
                    return Err(Error::invalid(format!("grid point k={k} > n={n}")));
                }
            }
        }
        Ok(())
    }

    /// Grid points in deterministic row-major (n, k, q) order.
    pub fn points(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for &n in &self.n_values {
            for &k in &self.k_values {
                for &q in &self.q_values {
                    out.push((n, k, q));
                }
            }
        }
        out
    }
}

pub const CSV_SCHEMA_LINE: &str = "# schema=1";
pub const CSV_HEADER: &str = "family,n,k,q,test,trials,type1_hat,type2_hat,risk_hat,ci,\
                              degenerate_h0,degenerate_h1,log_dh_min,ld_condition";

/// Result of a phase sweep: the CSV body and, when the time budget ran out,
/// the index to resume from.
#[derive(Clone, Debug)]
pub struct PhaseOutput {
    pub csv: String,
    pub resume_index: Option<usize>,
}

/// One row per grid point: parameters, risk estimate, log min D_H, and the
/// regime-matched low-degree condition value at D = ceil(log n).
/// Deterministic given (grid, seed, trials); `start_index` resumes an
/// interrupted sweep.
pub fn phase_diagram(
    kind: &TestKind,
    grid: &GridSpec,
    trials: u64,
    seed: u64,
    budget_seconds: Option<f64>,
    start_index: usize,
) -> Result<PhaseOutput> {
    grid.validate()?;
    let points = grid.points();
    let start_time = std::time::Instant::now();
    let mut csv = format!("{CSV_SCHEMA_LINE}\n{CSV_HEADER}\n");
    let mut resume = None;

    for (idx, &(n, k, q)) in points.iter().enumerate().skip(start_index) {
        if let Some(budget) = budget_seconds {
            if start_time.elapsed().as_secs_f64() > budget {
                resume = Some(idx);
                csv.push_str(&format!("# resume={idx}\n"));
                break;
            }
        }
        let pattern = grid.family.pattern(k)?;
        let params = PlantParams {
            n,
            q,
            pattern: pattern.clone(),
            ensemble: crate::ensembles::EnsembleKind::Subgraph,
            seed,
        };
        let risk = estimate_risk(kind, &params, trials, derive_stream(seed, &[idx as u64]))?;
        let log_dh = match dh_min(&pattern, n as u64, q) {
            Ok(m) => format!("{}", m.log_value),
            Err(_) => String::new(), // edgeless patterns have no D_H
        };
        let degree = (n as f64).ln().ceil().max(1.0) as u32;
        let ld = lowdegree_bound_conditions(n as u64, k as f64, q, degree)?;
        let ld_value = match grid.family {
            FamilySpec::Clique => ld.bound_clique,
            FamilySpec::IndependentSet => ld.bound_indep,
            _ => ld.bound_clique.max(ld.bound_indep),
        };
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            grid.family.name(),
            n,
            k,
            q,
            risk.test,
            risk.trials,
            risk.type1_hat,
            risk.type2_hat,
            risk.risk_hat,
            risk.ci_halfwidth,
            risk.degenerate_h0,
            risk.degenerate_h1,
            log_dh,
            ld_value,
        ));
    }
    Ok(PhaseOutput {
        csv,
        resume_index: resume,
    })
}
