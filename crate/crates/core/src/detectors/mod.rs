//! The three detection tests: the optimal scan test (search for the
//! D-minimizing subgraph family), the total degree test, and the spectral
//! test. Each returns a [`TestVerdict`] rather than erroring on degenerate
//! thresholds, so Monte Carlo sweeps never abort mid-grid.

mod spectral;

pub use spectral::{
    centered_adjacency, phi_threshold, spectral_certificate, spectral_norm, spectral_statistic,
    spectral_test, SpectralConfig, SpectralNorm, SymMatrix,
};

use crate::error::Result;
use crate::graphcore::{max_structure_size, Graph, StructureFamily};
use crate::structstats::dh_min;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Decision {
    H0,
    H1,
}

/// Outcome of one test on one graph.
#[derive(Clone, Debug, Serialize)]
pub struct TestVerdict {
    pub test: String,
    pub statistic: f64,
    pub threshold: f64,
    pub decision: Decision,
    pub degenerate: bool,
    pub detail: String,
}

/// Scan test: find the subgraph of the pattern minimizing D_H, search the
/// observed graph for the largest member of that subgraph's family, and
/// decide H1 when its size reaches `k_star` (default: the minimizer's size).
pub fn scan_test(
    g: &Graph,
    pattern: &Graph,
    q: f64,
    k_star: Option<u32>,
    budget: u64,
) -> Result<TestVerdict> {
    let n = g.vertex_count() as u64;
    let m = dh_min(pattern, n, q)?;
    let family = StructureFamily::for_pattern(&m.minimizer);
    let k_star = k_star.unwrap_or(m.minimizer.vertex_count() as u32);
    let size = max_structure_size(g, &family, budget)?;
    let decision = if size >= k_star as u64 {
        Decision::H1
    } else {
        Decision::H0
    };
    Ok(TestVerdict {
        test: "scan".into(),
        statistic: size as f64,
        threshold: k_star as f64,
        decision,
        degenerate: false,
        detail: format!(
            "minimizer v={} e={} (log D = {:.4}), family {}, largest found {}",
            m.minimizer.vertex_count(),
            m.minimizer.edge_count(),
            m.log_value,
            family_name(&family),
            size
        ),
    })
}

fn family_name(f: &StructureFamily) -> &'static str {
    match f {
        StructureFamily::Clique => "clique",
        StructureFamily::IndependentSet => "independent-set",
        StructureFamily::Pattern(_) => "fixed-pattern",
    }
}

/// Total degree test. For q <= 1/2 the statistic is the edge count W(G)
/// against W* = q C(n,2) + s/2 with s = e(pattern) - q C(k,2); the decision
/// flips when s < 0. For q > 1/2 the same logic runs on the complement graph
/// with s_c = e(pattern^c) - (1-q) C(k,2). A vanishing mean gap makes the
/// verdict degenerate (decision H0).
pub fn total_degree_test(g: &Graph, pattern: &Graph, q: f64) -> Result<TestVerdict> {
    if !(q > 0.0 && q < 1.0) {
        return Err(crate::error::Error::invalid(format!(
            "q = {q} must lie in (0,1)"
        )));
    }
    let n = g.vertex_count() as f64;
    let k = pattern.vertex_count() as f64;
    let pairs_n = n * (n - 1.0) / 2.0;
    let pairs_k = k * (k - 1.0) / 2.0;
    let w = g.edge_count() as f64;

    let (stat, gap, threshold, side) = if q <= 0.5 {
        let s = pattern.edge_count() as f64 - q * pairs_k;
        (w, s, q * pairs_n + s / 2.0, "G")
    } else {
        let e_c = pairs_k - pattern.edge_count() as f64;
        let s_c = e_c - (1.0 - q) * pairs_k;
        let w_c = pairs_n - w;
        (w_c, s_c, (1.0 - q) * pairs_n + s_c / 2.0, "G^c")
    };

    if gap == 0.0 {
        return Ok(TestVerdict {
            test: "degree".into(),
            statistic: stat,
            threshold,
            decision: Decision::H0,
            degenerate: true,
            detail: format!("mean gap s = 0 on {side}: the test cannot separate the hypotheses"),
        });
    }
    let decision = if (gap > 0.0 && stat >= threshold) || (gap < 0.0 && stat < threshold) {
        Decision::H1
    } else {
        Decision::H0
    };
    Ok(TestVerdict {
        test: "degree".into(),
        statistic: stat,
        threshold,
        decision,
        degenerate: false,
        detail: format!(
            "edge count on {side}, mean gap s = {gap:.4}, orientation {}",
            if gap > 0.0 { "W >= W*" } else { "W < W*" }
        ),
    })
}

/// Mean gap s = e(pattern) - q C(k,2) of the total degree test.
pub fn degree_mean_gap(pattern: &Graph, q: f64) -> f64 {
    let k = pattern.vertex_count() as f64;
    pattern.edge_count() as f64 - q * k * (k - 1.0) / 2.0
}

/// Analytic bound on the Type I+II risk of the total degree test:
/// 2 exp(-s^2 / 8 / (min(q,1-q) C(n,2) + |s|)). Vacuous (= 2) when s = 0.
pub fn total_degree_risk_bound(pattern: &Graph, n: u64, q: f64) -> f64 {
    let s = degree_mean_gap(pattern, q).abs();
    let pairs = (n * (n - 1) / 2) as f64;
    2.0 * (-(s * s) / 8.0 / (q.min(1.0 - q) * pairs + s)).exp()
}

/// Left-hand side of the printed finite-n condition for risk <= delta:
/// s^2 (2 log(2/delta))^{-1/2} / (min(q,1-q) C(n,2) + |s|), to be checked
/// against 1. Note this calibration is far weaker than what the exponential
/// bound needs; see `proof_consistent_degree_gate` for the version implied
/// by [`total_degree_risk_bound`].
pub fn total_degree_condition_lhs(pattern: &Graph, n: u64, q: f64, delta: f64) -> f64 {
    let s = degree_mean_gap(pattern, q).abs();
    let pairs = (n * (n - 1) / 2) as f64;
    s * s / (2.0 * (2.0 / delta).ln()).sqrt() / (q.min(1.0 - q) * pairs + s)
}

/// Gate implied by the exponential risk bound: true when
/// [`total_degree_risk_bound`] <= delta.
pub fn proof_consistent_degree_gate(pattern: &Graph, n: u64, q: f64, delta: f64) -> bool {
    total_degree_risk_bound(pattern, n, q) <= delta
}
