//! Structure-level statistics of a pattern: densities, strict balancedness,
//! the expected-copy-count statistic D_H and its minimizing subgraph, and the
//! named closed-form statistical barriers.
//!
//! All D-like quantities are computed and returned in the natural-log domain;
//! they overflow doubles already at modest (n, k). Binomials and factorials
//! go through `ln_gamma`.

use crate::error::{Error, Result};
use crate::graphcore::{automorphism_count, Graph};
use num_rational::Ratio;
use statrs::function::gamma::ln_gamma;

/// Largest pattern size the exhaustive subset sweeps accept.
pub const MAX_SWEEP_VERTICES: usize = 22;

pub fn ln_factorial(n: u64) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

pub fn ln_choose(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

fn check_q(q: f64) -> Result<()> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::invalid(format!("q = {q} must lie in (0,1)")));
    }
    Ok(())
}

/// log of the expected number of induced copies of `h` in G(n,q):
/// C(n,v) v!/|Aut(h)| (q/(1-q))^e (1-q)^C(v,2). Defined for any h, including
/// edgeless ones.
pub fn expected_copy_count(h: &Graph, n: u64, q: f64) -> Result<f64> {
    check_q(q)?;
    let v = h.vertex_count() as u64;
    if v > n {
        return Err(Error::invalid(format!("pattern v={v} exceeds host n={n}")));
    }
    let e = h.edge_count() as f64;
    let pairs = (v * v.saturating_sub(1) / 2) as f64;
    let aut = automorphism_count(h) as f64;
    Ok(ln_choose(n, v) + ln_factorial(v) - aut.ln()
        + e * (q / (1.0 - q)).ln()
        + pairs * (1.0 - q).ln())
}

/// log D_H for a subgraph with at least one edge. Equals
/// [`expected_copy_count`]; the separate entry point enforces the e(H) > 0
/// domain of the minimization it feeds.
pub fn dh_statistic(h: &Graph, n: u64, q: f64) -> Result<f64> {
    if h.edge_count() == 0 {
        return Err(Error::domain(
            "D_H requires e(H) > 0; for edgeless patterns analyze the \
             structure complement at density 1-q instead",
        ));
    }
    expected_copy_count(h, n, q)
}

/// Minimum of log D_H over induced subgraphs of the pattern with at least
/// one edge, together with a minimizing subgraph.
#[derive(Clone, Debug)]
pub struct DhMin {
    pub log_value: f64,
    /// Minimizing subgraph, relabeled to 0..v.
    pub minimizer: Graph,
    /// The pattern vertices that induce it, ascending.
    pub vertices: Vec<u32>,
}

/// Sweeps every vertex subset S of the pattern (|S| >= 2) and minimizes
/// log D over the induced subgraphs with an edge. The |Aut| factor only
/// lowers D below its |Aut| = v! floor, so subsets whose floor already loses
/// skip the automorphism computation.
pub fn dh_min(pattern: &Graph, n: u64, q: f64) -> Result<DhMin> {
    check_q(q)?;
    if pattern.edge_count() == 0 {
        return Err(Error::domain(
            "the D_H minimum ranges over subgraphs with an edge and the pattern has none; \
             analyze the structure complement at density 1-q instead",
        ));
    }
    let k = pattern.vertex_count();
    if k > MAX_SWEEP_VERTICES {
        return Err(Error::resource(
            "subset sweep vertices",
            MAX_SWEEP_VERTICES as u64,
        ));
    }
    if k as u64 > n {
        return Err(Error::invalid(format!("pattern v={k} exceeds host n={n}")));
    }
    let ln_ratio = (q / (1.0 - q)).ln();
    let ln_1mq = (1.0 - q).ln();

    let mut best: Option<(f64, u64)> = None; // (log value, mask)
    for mask in 1u64..(1 << k) {
        let v = mask.count_ones() as u64;
        if v < 2 {
            continue;
        }
        let e = pattern.induced_edge_count_mask(mask);
        if e == 0 {
            continue;
        }
        let pairs = (v * (v - 1) / 2) as f64;
        // Floor with |Aut| = v!: D >= C(n,v) (q/(1-q))^e (1-q)^C(v,2).
        let floor = ln_choose(n, v) + f64::from(e) * ln_ratio + pairs * ln_1mq;
        if let Some((b, _)) = best {
            if floor >= b {
                continue;
            }
        }
        let verts: Vec<u32> = (0..k as u32).filter(|&i| mask >> i & 1 == 1).collect();
        let sub = pattern.induced_subgraph(&verts)?;
        let aut = automorphism_count(&sub) as f64;
        let value = floor + ln_factorial(v) - aut.ln();
        if best.is_none_or(|(b, _)| value < b) {
            best = Some((value, mask));
        }
    }
    let (log_value, mask) = best.expect("a pattern with an edge has an edged subgraph");
    let vertices: Vec<u32> = (0..k as u32).filter(|&i| mask >> i & 1 == 1).collect();
    let minimizer = pattern.induced_subgraph(&vertices)?;
    Ok(DhMin {
        log_value,
        minimizer,
        vertices,
    })
}

/// Exact maximum of e(H)/v(H) over nonempty induced subgraphs. The maximum
/// over all subgraphs is attained at an induced one, so the subset sweep is
/// exhaustive.
pub fn max_subgraph_density(pattern: &Graph) -> Result<Ratio<u64>> {
    let k = pattern.vertex_count();
    if k == 0 {
        return Err(Error::invalid("density of the empty graph is undefined"));
    }
    if k > MAX_SWEEP_VERTICES {
        return Err(Error::resource(
            "subset sweep vertices",
            MAX_SWEEP_VERTICES as u64,
        ));
    }
    let mut best = Ratio::new(0u64, 1u64);
    for mask in 1u64..(1 << k) {
        let v = mask.count_ones() as u64;
        let e = pattern.induced_edge_count_mask(mask) as u64;
        let d = Ratio::new(e, v);
        if d > best {
            best = d;
        }
    }
    Ok(best)
}

/// Density e/v of the whole pattern.
pub fn density(pattern: &Graph) -> Result<Ratio<u64>> {
    if pattern.vertex_count() == 0 {
        return Err(Error::invalid("density of the empty graph is undefined"));
    }
    Ok(Ratio::new(
        pattern.edge_count() as u64,
        pattern.vertex_count() as u64,
    ))
}

/// True when every proper subgraph is strictly less dense than the pattern.
/// Spanning proper subgraphs only drop edges, so sweeping proper vertex
/// subsets (and their induced subgraphs) decides the question.
pub fn is_strictly_balanced(pattern: &Graph) -> Result<bool> {
    let k = pattern.vertex_count();
    if k == 0 {
        return Err(Error::invalid(
            "balancedness of the empty graph is undefined",
        ));
    }
    if k > MAX_SWEEP_VERTICES {
        return Err(Error::resource(
            "subset sweep vertices",
            MAX_SWEEP_VERTICES as u64,
        ));
    }
    let whole = density(pattern)?;
    let full: u64 = if k == 64 { u64::MAX } else { (1 << k) - 1 };
    for mask in 1u64..full {
        let v = mask.count_ones() as u64;
        let e = pattern.induced_edge_count_mask(mask) as u64;
        if Ratio::new(e, v) >= whole {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternKind {
    Clique,
    IndependentSet,
    Line,
}

impl std::str::FromStr for PatternKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "clique" => Ok(PatternKind::Clique),
            "independent_set" | "independent-set" => Ok(PatternKind::IndependentSet),
            "line" => Ok(PatternKind::Line),
            other => Err(Error::invalid(format!("unknown pattern kind {other:?}"))),
        }
    }
}

/// Closed-form statistical barriers, natural-log based:
/// clique 2 log_{1/q} n, independent set 2 log_{1/(1-q)} n,
/// line graph 2 log_{1/(1-q)} (n q/(1-q)).
pub fn named_barriers(kind: PatternKind, n: u64, q: f64) -> Result<f64> {
    check_q(q)?;
    let n = n as f64;
    Ok(match kind {
        PatternKind::Clique => 2.0 * n.ln() / (1.0 / q).ln(),
        PatternKind::IndependentSet => 2.0 * n.ln() / (1.0 / (1.0 - q)).ln(),
        PatternKind::Line => 2.0 * (n * q / (1.0 - q)).ln() / (1.0 / (1.0 - q)).ln(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    ImpossibleLeaning,
    PossibleLeaning,
    Boundary,
}

/// Default half-width of the boundary band on log min D_H.
pub const DEFAULT_TAU: f64 = 3.0;

/// Finite-n proxy for the asymptotic dichotomy: the sign of log min D_H,
/// reported with a tau-band of indecision around zero.
pub fn regime_classify(pattern: &Graph, n: u64, q: f64, tau: f64) -> Result<Regime> {
    let m = dh_min(pattern, n, q)?;
    Ok(if m.log_value > tau {
        Regime::ImpossibleLeaning
    } else if m.log_value < -tau {
        Regime::PossibleLeaning
    } else {
        Regime::Boundary
    })
}

/// Derived statistics of a pattern at model parameters (n, q).
#[derive(Clone, Debug)]
pub struct StructureReport {
    pub pattern: Graph,
    pub density: Ratio<u64>,
    pub max_subgraph_density: Ratio<u64>,
    pub strictly_balanced: bool,
    pub aut_count: u64,
    pub dh_min_value: f64,
    pub dh_minimizer: Graph,
    pub regime: Regime,
}

impl StructureReport {
    pub fn compute(pattern: &Graph, n: u64, q: f64, tau: f64) -> Result<StructureReport> {
        let m = dh_min(pattern, n, q)?;
        Ok(StructureReport {
            pattern: pattern.clone(),
            density: density(pattern)?,
            max_subgraph_density: max_subgraph_density(pattern)?,
            strictly_balanced: is_strictly_balanced(pattern)?,
            aut_count: automorphism_count(pattern),
            dh_min_value: m.log_value,
            regime: regime_classify(pattern, n, q, tau)?,
            dh_minimizer: m.minimizer,
        })
    }
}
