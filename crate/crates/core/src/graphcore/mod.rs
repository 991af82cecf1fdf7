//! Graph representation and the combinatorial kernel: complements, induced
//! subgraphs, isomorphism, automorphism counting, copy enumeration, and the
//! clique / pattern searches built on top of them.
//!
//! Graphs are simple, undirected, and live on the contiguous label set
//! `0..n`. Adjacency is stored twice: as a sorted edge list (cheap `e(G)`,
//! stable iteration) and as a bitset matrix (cache-friendly row intersections
//! for the search and enumeration paths). Values are immutable after
//! construction and safe to share across worker threads.

mod iso;
mod search;

pub use iso::{are_isomorphic, automorphism_count, count_induced_copies, count_induced_embeddings};
pub use search::{
    find_induced_copy_lex, find_kclique_lex, has_induced_copy, max_clique_size,
    max_independent_set_size, max_structure_size, StructureFamily, DEFAULT_SEARCH_BUDGET,
};

use crate::error::{Error, Result};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    edges: Vec<(u32, u32)>,
}

impl Graph {
    /// Builds a graph on `n` vertices from unordered vertex pairs. Pairs may
    /// be given in either orientation; self-loops, duplicates, and
    /// out-of-range endpoints are rejected.
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut edges = Vec::new();
        for (a, b) in pairs {
            if a == b {
                return Err(Error::invalid(format!("self-loop at vertex {a}")));
            }
            if a as usize >= n || b as usize >= n {
                return Err(Error::invalid(format!(
                    "edge ({a},{b}) leaves vertex range 0..{n}"
                )));
            }
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("duplicate edge"));
        }
        let words = n.div_ceil(64).max(1);
        let mut adj = vec![0u64; n.max(1) * words];
        for &(a, b) in &edges {
            adj[a as usize * words + (b as usize >> 6)] |= 1 << (b & 63);
            adj[b as usize * words + (a as usize >> 6)] |= 1 << (a & 63);
        }
        Ok(Graph {
            n,
            words,
            adj,
            edges,
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph::new(n, std::iter::empty()).expect("empty graph is always valid")
    }

    pub fn complete(n: usize) -> Self {
        let pairs = (0..n as u32).flat_map(|i| ((i + 1)..n as u32).map(move |j| (i, j)));
        Graph::new(n, pairs).expect("complete graph is always valid")
    }

    /// Path 0-1-...-(n-1).
    pub fn path(n: usize) -> Self {
        let pairs = (1..n as u32).map(|i| (i - 1, i));
        Graph::new(n, pairs).expect("path graph is always valid")
    }

    /// Cycle on n >= 3 vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let pairs = (1..n as u32)
            .map(|i| (i - 1, i))
            .chain(std::iter::once((0, n as u32 - 1)));
        Graph::new(n, pairs).expect("cycle graph is always valid")
    }

    /// Star with center 0 and n-1 leaves.
    pub fn star(n: usize) -> Self {
        let pairs = (1..n as u32).map(|i| (0, i));
        Graph::new(n, pairs).expect("star graph is always valid")
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// C(n,2) for this graph's vertex count.
    #[inline]
    pub fn pair_count(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2
    }

    #[inline]
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    #[inline]
    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        debug_assert!((a as usize) < self.n && (b as usize) < self.n && a != b);
        self.adj[a as usize * self.words + (b as usize >> 6)] >> (b & 63) & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: u32) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Bitset adjacency row of `v`.
    #[inline]
    pub fn row(&self, v: u32) -> &[u64] {
        let s = v as usize * self.words;
        &self.adj[s..s + self.words]
    }

    /// Adjacency row as a single word. Panics unless `n <= 64`; the subset
    /// sweeps in `structstats` rely on this fast path.
    #[inline]
    pub fn row_word(&self, v: u32) -> u64 {
        assert!(self.n <= 64, "row_word requires n <= 64");
        self.adj[v as usize * self.words]
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.pair_count()
    }

    pub fn is_edgeless(&self) -> bool {
        self.edges.is_empty()
    }

    /// Complement within the complete graph on the same vertex set: the
    /// result has edge {i,j} exactly when `self` does not.
    pub fn complement(&self) -> Graph {
        let pairs = (0..self.n as u32)
            .flat_map(|i| ((i + 1)..self.n as u32).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.has_edge(i, j));
        Graph::new(self.n, pairs).expect("complement of a valid graph is valid")
    }

    /// Induced subgraph on `vertices`, relabeled to `0..vertices.len()` in
    /// the given order. Rejects duplicates and out-of-range vertices.
    pub fn induced_subgraph(&self, vertices: &[u32]) -> Result<Graph> {
        let k = vertices.len();
        let mut seen = vec![false; self.n];
        for &v in vertices {
            if v as usize >= self.n {
                return Err(Error::invalid(format!("vertex {v} out of range")));
            }
            if std::mem::replace(&mut seen[v as usize], true) {
                return Err(Error::invalid(format!("duplicate vertex {v}")));
            }
        }
        let pairs = (0..k as u32).flat_map(|i| {
            ((i + 1)..k as u32).filter_map(move |j| {
                self.has_edge(vertices[i as usize], vertices[j as usize])
                    .then_some((i, j))
            })
        });
        Graph::new(k, pairs)
    }

    /// Number of edges of `self` inside the vertex subset given as a bitmask.
    /// Requires `n <= 64`.
    pub fn induced_edge_count_mask(&self, mask: u64) -> u32 {
        let mut e = 0u32;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            e += (self.row_word(v) & rest).count_ones();
        }
        e
    }

    /// The graph with every edge {i,j} renamed to {perm[i], perm[j]}.
    /// `perm` must be a bijection on `0..n`.
    pub fn relabeled(&self, perm: &[u32]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::invalid("permutation length mismatch"));
        }
        Graph::new(
            self.n,
            self.edges
                .iter()
                .map(|&(a, b)| (perm[a as usize], perm[b as usize])),
        )
    }

    /// Parses the plain text format: a `n <count>` line followed by one
    /// `i j` pair per line (i < j). Lines starting with `#` are comments.
    pub fn from_text(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty input".into()))?;
        let n: usize = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["n", count] => count
                .parse()
                .map_err(|_| Error::Parse(format!("bad vertex count {count:?}")))?,
            _ => {
                return Err(Error::Parse(format!(
                    "expected `n <count>`, got {header:?}"
                )))
            }
        };
        let mut pairs = Vec::new();
        for line in lines {
            let mut it = line.split_whitespace();
            let (a, b) = match (it.next(), it.next(), it.next()) {
                (Some(a), Some(b), None) => (a, b),
                _ => return Err(Error::Parse(format!("expected `i j`, got {line:?}"))),
            };
            let a: u32 = a
                .parse()
                .map_err(|_| Error::Parse(format!("bad vertex {a:?}")))?;
            let b: u32 = b
                .parse()
                .map_err(|_| Error::Parse(format!("bad vertex {b:?}")))?;
            if a >= b {
                return Err(Error::Parse(format!("pair {a} {b} is not ordered i < j")));
            }
            pairs.push((a, b));
        }
        Graph::new(n, pairs).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Serializes to the text format parsed by [`Graph::from_text`].
    pub fn to_text(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for &(a, b) in &self.edges {
            out.push_str(&format!("{a} {b}\n"));
        }
        out
    }

    /// Sorted degree sequence, a cheap isomorphism invariant.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n as u32).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// Complement of a structure within the complete graph on its own labeled
/// vertex set. Numerically identical to [`Graph::complement`]; kept as a
/// named operation because it plays a distinct role (complementing a pattern
/// rather than an observed graph) and is used with that meaning throughout.
pub fn structure_complement(g: &Graph) -> Graph {
    g.complement()
}

/// An injective placement of a k-vertex pattern into a host graph:
/// position `i` holds the host vertex that pattern vertex `i` maps to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexEmbedding {
    mapping: Vec<u32>,
}

impl VertexEmbedding {
    pub fn new(mapping: Vec<u32>, host_n: usize) -> Result<Self> {
        let mut seen = vec![false; host_n];
        for &v in &mapping {
            if v as usize >= host_n {
                return Err(Error::invalid(format!("embedding target {v} out of range")));
            }
            if std::mem::replace(&mut seen[v as usize], true) {
                return Err(Error::invalid(format!("embedding target {v} repeated")));
            }
        }
        Ok(VertexEmbedding { mapping })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    /// Host vertex that pattern position `i` maps to.
    #[inline]
    pub fn image(&self, i: usize) -> u32 {
        self.mapping[i]
    }

    #[inline]
    pub fn as_slice(&self) -> &[u32] {
        &self.mapping
    }

    /// Image as a sorted vertex set.
    pub fn sorted_vertices(&self) -> Vec<u32> {
        let mut v = self.mapping.clone();
        v.sort_unstable();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Right panel of the planting illustration: a 4-leaf star placed on
    /// vertices (0,1,4,5) with center 0, noise edges elsewhere.
    pub(crate) fn subgraph_panel() -> Graph {
        Graph::new(6, [(3, 4), (0, 4), (0, 1), (1, 2), (1, 3), (0, 5)]).unwrap()
    }

    #[test]
    fn complement_of_complete_is_empty() {
        let g = Graph::complete(3).complement();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.vertex_count(), 3);
    }

    #[test]
    fn complement_of_empty_is_complete() {
        for n in [1, 4, 9] {
            assert!(Graph::empty(n).complement().is_complete());
        }
    }

    #[test]
    fn complement_of_p3_is_single_edge() {
        let c = Graph::path(3).complement();
        assert_eq!(c.edges(), &[(0, 2)]);
    }

    #[test]
    fn structure_complement_of_star_is_triangle_plus_isolated() {
        // 4-vertex star centered at 3 (labels as in the worked example,
        // shifted to 0-index): edges {0,3},{3,2},{3,1}.
        let star = Graph::new(4, [(0, 3), (2, 3), (1, 3)]).unwrap();
        let c = structure_complement(&star);
        assert_eq!(c.edges(), &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(c.degree(3), 0);
    }

    #[test]
    fn structure_complement_trivia() {
        assert!(structure_complement(&Graph::complete(5)).is_edgeless());
        assert!(structure_complement(&Graph::new(2, [(0, 1)]).unwrap()).is_edgeless());
    }

    #[test]
    fn induced_subgraph_of_cycle_is_path() {
        let c4 = Graph::cycle(4);
        let p = c4.induced_subgraph(&[0, 1, 2]).unwrap();
        assert_eq!(p.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn induced_subgraph_of_complete_is_complete() {
        let g = Graph::complete(5).induced_subgraph(&[4, 0, 2]).unwrap();
        assert!(g.is_complete());
    }

    #[test]
    fn induced_subgraph_of_plant_panel_is_star() {
        let g = subgraph_panel();
        let s = g.induced_subgraph(&[0, 1, 4, 5]).unwrap();
        assert_eq!(s.edges(), &[(0, 1), (0, 2), (0, 3)]);
    }

    #[test]
    fn induced_subgraph_rejects_bad_vertices() {
        let g = Graph::cycle(4);
        assert!(g.induced_subgraph(&[0, 0]).is_err());
        assert!(g.induced_subgraph(&[0, 7]).is_err());
    }

    #[test]
    fn graph_new_rejects_invalid_edges() {
        assert!(Graph::new(3, [(0, 0)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn text_round_trip_and_rejects() {
        let g = subgraph_panel();
        let parsed = Graph::from_text(&g.to_text()).unwrap();
        assert_eq!(parsed, g);

        assert!(Graph::from_text("n 3\n1 1\n").is_err());
        assert!(Graph::from_text("n 3\n0 1\n0 1\n").is_err());
        assert!(Graph::from_text("n 3\n1 0\n").is_err());
        assert!(Graph::from_text("n 3\n0 5\n").is_err());
        // Comment lines are skipped.
        let with_comment = "# planted: 0 1\nn 2\n0 1\n";
        assert_eq!(Graph::from_text(with_comment).unwrap().edge_count(), 1);
    }

    #[test]
    fn induced_edge_count_mask_matches_induced_subgraph() {
        let g = subgraph_panel();
        let mask: u64 = 0b110011; // vertices {0,1,4,5}
        assert_eq!(g.induced_edge_count_mask(mask), 3);
        assert_eq!(g.induced_edge_count_mask(0b111111), g.edge_count() as u32);
    }
}
