//! Seeded samplers for the null model G(n,q) and the two planted models:
//! the subgraph ensemble (the pattern appears as an induced subgraph) and the
//! union ensemble (the pattern's edges are superimposed on the base graph).
//!
//! Samplers are pure functions of `(params, trial_index)`: each trial derives
//! its own ChaCha8 stream from the master seed, so parallel trial generation
//! is reproducible regardless of scheduling.

use crate::error::{Error, Result};
use crate::graphcore::Graph;
pub use crate::graphcore::VertexEmbedding;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnsembleKind {
    Null,
    Subgraph,
    Union,
}

/// Full description of the pair of hypotheses: the null G(n,q) and the
/// planted model with structure `pattern` on k vertices.
#[derive(Clone, Debug)]
pub struct PlantParams {
    pub n: usize,
    pub q: f64,
    pub pattern: Graph,
    pub ensemble: EnsembleKind,
    pub seed: u64,
}

impl PlantParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.q > 0.0 && self.q < 1.0) {
            return Err(Error::invalid(format!("q = {} must lie in (0,1)", self.q)));
        }
        if self.pattern.vertex_count() > self.n {
            return Err(Error::invalid(format!(
                "pattern has {} vertices but the host has only {}",
                self.pattern.vertex_count(),
                self.n
            )));
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.pattern.vertex_count()
    }
}

/// One draw from an ensemble. Under the null the embedding is absent; under
/// a planted ensemble it records where the pattern was placed.
#[derive(Clone, Debug)]
pub struct PlantedSample {
    pub graph: Graph,
    pub embedding: Option<VertexEmbedding>,
}

fn splitmix(z: u64) -> u64 {
    let mut z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Hash a master seed and stream tags into an independent stream seed.
pub fn derive_stream(master: u64, tags: &[u64]) -> u64 {
    tags.iter()
        .fold(splitmix(master), |acc, &t| splitmix(acc ^ splitmix(t)))
}

fn stream_rng(master: u64, tags: &[u64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_stream(master, tags))
}

const TAG_NULL: u64 = 0x4E55;
const TAG_SUBGRAPH: u64 = 0x5347;
const TAG_UNION: u64 = 0x554E;

/// Erdős–Rényi base graph: every pair independently present with
/// probability q, in fixed lexicographic pair order.
fn gnq(rng: &mut ChaCha8Rng, n: usize, q: f64) -> Graph {
    let mut pairs = Vec::new();
    for i in 0..n as u32 {
        for j in (i + 1)..n as u32 {
            if rng.random_bool(q) {
                pairs.push((i, j));
            }
        }
    }
    Graph::new(n, pairs).expect("generated pairs are valid")
}

/// Uniformly random injective placement of k pattern vertices into [n],
/// by partial Fisher-Yates.
fn draw_embedding(rng: &mut ChaCha8Rng, n: usize, k: usize) -> VertexEmbedding {
    let mut arr: Vec<u32> = (0..n as u32).collect();
    for i in 0..k {
        let j = rng.random_range(i..n);
        arr.swap(i, j);
    }
    arr.truncate(k);
    VertexEmbedding::new(arr, n).expect("Fisher-Yates output is injective")
}

/// Replace everything among the planted vertices with the pattern's edges:
/// the pattern then appears as an induced subgraph with probability 1.
pub fn plant_subgraph(base: &Graph, pattern: &Graph, emb: &VertexEmbedding) -> Graph {
    let n = base.vertex_count();
    let mut position = vec![u32::MAX; n];
    for (i, &v) in emb.as_slice().iter().enumerate() {
        position[v as usize] = i as u32;
    }
    let mut pairs: Vec<(u32, u32)> = base
        .edges()
        .iter()
        .copied()
        .filter(|&(a, b)| position[a as usize] == u32::MAX || position[b as usize] == u32::MAX)
        .collect();
    for &(i, j) in pattern.edges() {
        let (a, b) = (emb.image(i as usize), emb.image(j as usize));
        pairs.push((a.min(b), a.max(b)));
    }
    Graph::new(n, pairs).expect("planting preserves validity")
}

/// Superimpose the pattern's edges on the base graph; non-pattern pairs
/// among the planted vertices keep their base-graph state.
pub fn plant_union(base: &Graph, pattern: &Graph, emb: &VertexEmbedding) -> Graph {
    let n = base.vertex_count();
    let mut pairs: Vec<(u32, u32)> = base.edges().to_vec();
    for &(i, j) in pattern.edges() {
        let (a, b) = (emb.image(i as usize), emb.image(j as usize));
        pairs.push((a.min(b), a.max(b)));
    }
    pairs.sort_unstable();
    pairs.dedup();
    Graph::new(n, pairs).expect("planting preserves validity")
}

/// A single G(n,q) draw. Deterministic in `seed`; the embedding is absent.
pub fn sample_null(n: usize, q: f64, seed: u64) -> Result<PlantedSample> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::invalid(format!("q = {q} must lie in (0,1)")));
    }
    let mut rng = stream_rng(seed, &[TAG_NULL]);
    Ok(PlantedSample {
        graph: gnq(&mut rng, n, q),
        embedding: None,
    })
}

/// One draw from the subgraph ensemble: a uniform placement is drawn, the
/// base graph is sampled, and the planted positions are overwritten by the
/// pattern so it appears induced.
pub fn sample_subgraph_ensemble(params: &PlantParams, trial: u64) -> Result<PlantedSample> {
    params.validate()?;
    let mut rng = stream_rng(params.seed, &[TAG_SUBGRAPH, trial]);
    let emb = draw_embedding(&mut rng, params.n, params.k());
    let base = gnq(&mut rng, params.n, params.q);
    Ok(PlantedSample {
        graph: plant_subgraph(&base, &params.pattern, &emb),
        embedding: Some(emb),
    })
}

/// One draw from the union ensemble: base graph plus the pattern's edges.
pub fn sample_union_ensemble(params: &PlantParams, trial: u64) -> Result<PlantedSample> {
    params.validate()?;
    let mut rng = stream_rng(params.seed, &[TAG_UNION, trial]);
    let emb = draw_embedding(&mut rng, params.n, params.k());
    let base = gnq(&mut rng, params.n, params.q);
    Ok(PlantedSample {
        graph: plant_union(&base, &params.pattern, &emb),
        embedding: Some(emb),
    })
}

/// Dispatch on `params.ensemble`.
pub fn sample(params: &PlantParams, trial: u64) -> Result<PlantedSample> {
    match params.ensemble {
        EnsembleKind::Null => sample_null(params.n, params.q, derive_stream(params.seed, &[trial])),
        EnsembleKind::Subgraph => sample_subgraph_ensemble(params, trial),
        EnsembleKind::Union => sample_union_ensemble(params, trial),
    }
}
