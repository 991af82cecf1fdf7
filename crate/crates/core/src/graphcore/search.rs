//! Branch-and-bound clique search and pattern searches: the machinery behind
//! the scan test's "largest structure" step and the exhaustive recovery
//! estimator. All searches are node-budgeted and report a resource-limit
//! error with the attempted bound instead of running away.

use super::iso::{exists_induced_embedding, exists_induced_embedding_budgeted, BitIter};
use super::Graph;
use crate::error::{Error, Result};

/// Default node budget for the combinatorial searches.
pub const DEFAULT_SEARCH_BUDGET: u64 = 50_000_000;

/// The family scanned for in Algorithm-style structure searches.
#[derive(Clone, Debug)]
pub enum StructureFamily {
    /// Cliques of every size; the search returns the clique number.
    Clique,
    /// Independent sets of every size (cliques of the complement).
    IndependentSet,
    /// One fixed pattern graph; it has a single size, so the search reports
    /// `v(pattern)` when an induced copy exists and 0 otherwise.
    Pattern(Graph),
}

impl StructureFamily {
    /// Family of a scan pattern: cliques and independent sets scale, any
    /// other graph is searched as a fixed pattern.
    pub fn for_pattern(p: &Graph) -> StructureFamily {
        if p.is_complete() {
            StructureFamily::Clique
        } else if p.is_edgeless() {
            StructureFamily::IndependentSet
        } else {
            StructureFamily::Pattern(p.clone())
        }
    }
}

/// Size of the largest member of `family` appearing as an induced subgraph
/// of `host`.
pub fn max_structure_size(host: &Graph, family: &StructureFamily, budget: u64) -> Result<u64> {
    match family {
        StructureFamily::Clique => Ok(max_clique_size(host, budget)? as u64),
        StructureFamily::IndependentSet => Ok(max_clique_size(&host.complement(), budget)? as u64),
        StructureFamily::Pattern(p) => {
            let found = if p.is_complete() {
                find_kclique_lex(host, p.vertex_count(), budget)?.is_some()
            } else if p.is_edgeless() {
                find_kclique_lex(&host.complement(), p.vertex_count(), budget)?.is_some()
            } else {
                has_induced_copy(host, p, budget)?
            };
            Ok(if found { p.vertex_count() as u64 } else { 0 })
        }
    }
}

/// Does `pattern` appear as an induced subgraph of `host`? Budgeted.
pub fn has_induced_copy(host: &Graph, pattern: &Graph, budget: u64) -> Result<bool> {
    exists_induced_embedding_budgeted(host, pattern, budget)
}

/// Growable bitset over vertices; candidate sets for the clique searches.
#[derive(Clone)]
struct VSet {
    words: Vec<u64>,
}

impl VSet {
    fn full(n: usize) -> VSet {
        let mut words = vec![u64::MAX; n.div_ceil(64).max(1)];
        let spare = words.len() * 64 - n;
        if spare > 0 {
            *words.last_mut().unwrap() >>= spare;
        }
        VSet { words }
    }

    #[inline]
    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    fn count(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    #[inline]
    fn remove(&mut self, v: u32) {
        self.words[v as usize >> 6] &= !(1u64 << (v & 63));
    }

    #[inline]
    fn first(&self) -> Option<u32> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some((i * 64) as u32 + w.trailing_zeros());
            }
        }
        None
    }

    #[inline]
    fn intersect_row(&self, row: &[u64]) -> VSet {
        VSet {
            words: self.words.iter().zip(row).map(|(a, b)| a & b).collect(),
        }
    }

    #[inline]
    fn subtract_row(&mut self, row: &[u64]) {
        for (a, b) in self.words.iter_mut().zip(row) {
            *a &= !b;
        }
    }

    /// Keep only vertices strictly greater than `v`.
    fn keep_above(&mut self, v: u32) {
        let wi = v as usize >> 6;
        for w in &mut self.words[..wi] {
            *w = 0;
        }
        let shift = (v & 63) as u64;
        self.words[wi] &= !((1u64 << shift) | ((1u64 << shift) - 1));
    }

    fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words
            .iter()
            .enumerate()
            .flat_map(|(i, &w)| BitIter(w).map(move |b| (i * 64) as u32 + b))
    }
}

/// Clique number by branch and bound with a greedy-coloring upper bound
/// (Tomita-style pivoting order).
pub fn max_clique_size(g: &Graph, budget: u64) -> Result<u32> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(0);
    }
    let mut best = 0u32;
    let mut nodes = 0u64;
    clique_expand(g, VSet::full(n), 0, &mut best, &mut nodes, budget)?;
    Ok(best)
}

pub fn max_independent_set_size(g: &Graph, budget: u64) -> Result<u32> {
    max_clique_size(&g.complement(), budget)
}

fn clique_expand(
    g: &Graph,
    mut cand: VSet,
    size: u32,
    best: &mut u32,
    nodes: &mut u64,
    budget: u64,
) -> Result<()> {
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::resource("clique search nodes", budget));
    }
    if cand.is_empty() {
        *best = (*best).max(size);
        return Ok(());
    }
    let colored = greedy_color(g, &cand);
    for &(v, color) in colored.iter().rev() {
        if size + color <= *best {
            return Ok(()); // colors ascend, so everything left is bounded too
        }
        let next = cand.intersect_row(g.row(v));
        clique_expand(g, next, size + 1, best, nodes, budget)?;
        cand.remove(v);
    }
    Ok(())
}

/// Greedy coloring of the candidate set; returns (vertex, color) with colors
/// non-decreasing. `size + color` bounds any clique extending through that
/// vertex.
fn greedy_color(g: &Graph, cand: &VSet) -> Vec<(u32, u32)> {
    let mut out = Vec::with_capacity(cand.count() as usize);
    let mut remaining = cand.clone();
    let mut color = 0u32;
    while !remaining.is_empty() {
        color += 1;
        let mut class = remaining.clone();
        while let Some(v) = class.first() {
            class.remove(v);
            remaining.remove(v);
            class.subtract_row(g.row(v));
            out.push((v, color));
        }
    }
    out
}

/// Lexicographically smallest k-clique (as a sorted vertex set), or None.
pub fn find_kclique_lex(g: &Graph, k: usize, budget: u64) -> Result<Option<Vec<u32>>> {
    if k == 0 {
        return Ok(Some(Vec::new()));
    }
    if k > g.vertex_count() {
        return Ok(None);
    }
    let mut prefix = Vec::with_capacity(k);
    let mut nodes = 0u64;
    let found = kclique_rec(
        g,
        VSet::full(g.vertex_count()),
        k,
        &mut prefix,
        &mut nodes,
        budget,
    )?;
    Ok(found.then_some(prefix))
}

fn kclique_rec(
    g: &Graph,
    cand: VSet,
    k: usize,
    prefix: &mut Vec<u32>,
    nodes: &mut u64,
    budget: u64,
) -> Result<bool> {
    if prefix.len() == k {
        return Ok(true);
    }
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::resource("clique search nodes", budget));
    }
    let need = (k - prefix.len()) as u32;
    if cand.count() < need {
        return Ok(false);
    }
    if need > 2 {
        let bound = greedy_color(g, &cand).last().map_or(0, |&(_, c)| c);
        if bound < need {
            return Ok(false);
        }
    }
    let order: Vec<u32> = cand.iter().collect();
    for v in order {
        let mut next = cand.intersect_row(g.row(v));
        next.keep_above(v);
        prefix.push(v);
        if kclique_rec(g, next, k, prefix, nodes, budget)? {
            return Ok(true);
        }
        prefix.pop();
    }
    Ok(false)
}

/// Lexicographically smallest vertex subset (sorted ascending) inducing a
/// copy of `pattern`, or None. Cliques and independent sets take the
/// specialized search; everything else walks sorted subsets with an
/// embeddability prune.
pub fn find_induced_copy_lex(
    host: &Graph,
    pattern: &Graph,
    budget: u64,
) -> Result<Option<Vec<u32>>> {
    let k = pattern.vertex_count();
    if k == 0 {
        return Ok(Some(Vec::new()));
    }
    if k > host.vertex_count() {
        return Ok(None);
    }
    if pattern.is_complete() {
        return find_kclique_lex(host, k, budget);
    }
    if pattern.is_edgeless() {
        return find_kclique_lex(&host.complement(), k, budget);
    }
    let mut prefix = Vec::with_capacity(k);
    let mut nodes = 0u64;
    let found = copy_lex_rec(host, pattern, 0, &mut prefix, &mut nodes, budget)?;
    Ok(found.then_some(prefix))
}

fn copy_lex_rec(
    host: &Graph,
    pattern: &Graph,
    from: u32,
    prefix: &mut Vec<u32>,
    nodes: &mut u64,
    budget: u64,
) -> Result<bool> {
    let k = pattern.vertex_count();
    if prefix.len() == k {
        return Ok(true);
    }
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::resource("pattern search nodes", budget));
    }
    let remaining_needed = k - prefix.len();
    let n = host.vertex_count() as u32;
    for v in from..n {
        if (n - v) < remaining_needed as u32 {
            break;
        }
        prefix.push(v);
        // The partial selection must still embed into the pattern as an
        // induced subgraph, otherwise no completion can succeed.
        let partial = host
            .induced_subgraph(prefix)
            .expect("prefix vertices are distinct and in range");
        let viable = if prefix.len() == k {
            super::iso::are_isomorphic(&partial, pattern)
        } else {
            exists_induced_embedding(pattern, &partial)
        };
        if viable && copy_lex_rec(host, pattern, v + 1, prefix, nodes, budget)? {
            return Ok(true);
        }
        prefix.pop();
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn subgraph_panel() -> Graph {
        Graph::new(6, [(3, 4), (0, 4), (0, 1), (1, 2), (1, 3), (0, 5)]).unwrap()
    }

    #[test]
    fn max_structure_examples() {
        let b = DEFAULT_SEARCH_BUDGET;
        assert_eq!(
            max_structure_size(&Graph::complete(5), &StructureFamily::Clique, b).unwrap(),
            5
        );
        assert_eq!(
            max_structure_size(&Graph::cycle(5), &StructureFamily::IndependentSet, b).unwrap(),
            2
        );
        let star4 = Graph::star(4);
        assert_eq!(
            max_structure_size(&subgraph_panel(), &StructureFamily::Pattern(star4), b).unwrap(),
            4
        );
    }

    #[test]
    fn clique_number_of_small_graphs() {
        let b = DEFAULT_SEARCH_BUDGET;
        assert_eq!(max_clique_size(&Graph::cycle(5), b).unwrap(), 2);
        assert_eq!(max_clique_size(&Graph::complete(7), b).unwrap(), 7);
        assert_eq!(max_clique_size(&Graph::empty(4), b).unwrap(), 1);
        assert_eq!(max_clique_size(&Graph::empty(0), b).unwrap(), 0);
        // Two triangles sharing an edge plus a pendant.
        let g = Graph::new(5, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4)]).unwrap();
        assert_eq!(max_clique_size(&g, b).unwrap(), 3);
        assert_eq!(max_independent_set_size(&g, b).unwrap(), 2);
    }

    #[test]
    fn lexicographically_first_clique() {
        // Cliques {1,2,3} and {0,4,5}: lex order prefers the one through 0.
        let g = Graph::new(6, [(1, 2), (1, 3), (2, 3), (0, 4), (0, 5), (4, 5)]).unwrap();
        assert_eq!(
            find_kclique_lex(&g, 3, 1 << 20).unwrap(),
            Some(vec![0, 4, 5])
        );
        assert_eq!(find_kclique_lex(&g, 4, 1 << 20).unwrap(), None);
    }

    #[test]
    fn lexicographically_first_pattern_copy() {
        let g = subgraph_panel();
        let hit = find_induced_copy_lex(&g, &Graph::star(4), 1 << 20)
            .unwrap()
            .unwrap();
        let induced = g.induced_subgraph(&hit).unwrap();
        assert!(super::super::iso::are_isomorphic(&induced, &Graph::star(4)));
        // Both {0,1,2,3} (center 1) and {0,1,4,5} (center 0) induce stars;
        // the search must return the lexicographically smaller subset.
        assert_eq!(hit, vec![0, 1, 2, 3]);
    }

    #[test]
    fn budget_errors_carry_the_bound() {
        let g = Graph::complete(30);
        match max_clique_size(&g, 3) {
            Err(crate::error::Error::ResourceLimit { attempted, .. }) => assert_eq!(attempted, 3),
            other => panic!("expected resource limit, got {other:?}"),
        }
    }
}
