//! Isomorphism, automorphism counting, and induced-copy enumeration by
//! backtracking with degree-partition pruning. Intended for pattern graphs of
//! a dozen vertices or so; hosts may be larger where noted.

use super::Graph;
use crate::error::{Error, Result};

/// True when an edge-preserving bijection between `a` and `b` exists.
pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    if a.degree_sequence() != b.degree_sequence() {
        return false;
    }
    // Equal vertex counts make an induced embedding a full isomorphism.
    exists_induced_embedding(b, a)
}

/// Number of injective maps pattern -> host whose image induces exactly the
/// pattern (edges map to edges, non-edges to non-edges).
pub fn count_induced_embeddings(host: &Graph, pattern: &Graph) -> u64 {
    if pattern.vertex_count() > host.vertex_count() {
        return 0;
    }
    let order = constraint_order(pattern);
    let mut assigned = vec![u32::MAX; pattern.vertex_count()];
    let mut used = vec![false; host.vertex_count()];
    let mut count = 0u64;
    let mut nodes = 0u64;
    embed_rec(
        host,
        pattern,
        &order,
        0,
        &mut assigned,
        &mut used,
        &mut nodes,
        u64::MAX,
        &mut |_| {
            count += 1;
            true // keep enumerating
        },
    )
    .expect("unlimited budget cannot be exceeded");
    count
}

/// Number of distinct vertex subsets of `host` inducing a copy of `pattern`,
/// i.e. unlabeled copies: injective embeddings divided by `|Aut(pattern)|`.
pub fn count_induced_copies(host: &Graph, pattern: &Graph) -> u64 {
    if pattern.vertex_count() == 0 {
        return 1;
    }
    let embeddings = count_induced_embeddings(host, pattern);
    if embeddings == 0 {
        return 0;
    }
    let aut = automorphism_count(pattern);
    debug_assert_eq!(embeddings % aut, 0);
    embeddings / aut
}

/// Does `pattern` appear as an induced subgraph of `host`?
pub(crate) fn exists_induced_embedding(host: &Graph, pattern: &Graph) -> bool {
    exists_induced_embedding_budgeted(host, pattern, u64::MAX)
        .expect("unlimited budget cannot be exceeded")
}

/// Budgeted existence search; errs when more than `limit` search nodes are
/// visited.
pub(crate) fn exists_induced_embedding_budgeted(
    host: &Graph,
    pattern: &Graph,
    limit: u64,
) -> Result<bool> {
    if pattern.vertex_count() > host.vertex_count() {
        return Ok(false);
    }
    let order = constraint_order(pattern);
    let mut assigned = vec![u32::MAX; pattern.vertex_count()];
    let mut used = vec![false; host.vertex_count()];
    let mut found = false;
    let mut nodes = 0u64;
    embed_rec(
        host,
        pattern,
        &order,
        0,
        &mut assigned,
        &mut used,
        &mut nodes,
        limit,
        &mut |_| {
            found = true;
            false // stop at the first embedding
        },
    )?;
    Ok(found)
}

/// Order of the automorphism group, computed by the orbit-stabilizer
/// recursion: refine a vertex coloring, pick the first non-singleton color
/// class, count the orbit of its smallest vertex with one existence search
/// per candidate image, then individualize that vertex and recurse on the
/// stabilizer. Avoids enumerating all `|Aut|` permutations, which matters for
/// highly symmetric patterns (cliques, independent sets).
pub fn automorphism_count(g: &Graph) -> u64 {
    let n = g.vertex_count();
    if n <= 1 {
        return 1;
    }
    aut_order(g, vec![0u32; n])
}

fn aut_order(g: &Graph, colors: Vec<u32>) -> u64 {
    let colors = refine_colors(g, colors);
    let n = g.vertex_count();

    // First non-singleton class by color id; the coloring is built from
    // automorphism-invariant data, so the class choice is invariant too.
    let max_color = colors.iter().copied().max().unwrap_or(0);
    let mut cell: Option<Vec<u32>> = None;
    for c in 0..=max_color {
        let members: Vec<u32> = (0..n as u32).filter(|&v| colors[v as usize] == c).collect();
        if members.len() > 1 {
            cell = Some(members);
            break;
        }
    }
    let Some(members) = cell else {
        return 1; // discrete coloring: identity is the only candidate
    };

    let v0 = members[0];
    let orbit = members
        .iter()
        .filter(|&&w| exists_color_automorphism(g, &colors, v0, w))
        .count() as u64;

    let mut individualized = colors;
    individualized[v0 as usize] = max_color + 1;
    orbit * aut_order(g, individualized)
}

/// Stable color refinement: recolor by (color, sorted multiset of neighbor
/// colors) until a fixed point.
fn refine_colors(g: &Graph, mut colors: Vec<u32>) -> Vec<u32> {
    let n = g.vertex_count();
    loop {
        let mut signatures: Vec<(u32, Vec<u32>)> = Vec::with_capacity(n);
        for v in 0..n as u32 {
            let mut nb: Vec<u32> = neighbors(g, v).map(|u| colors[u as usize]).collect();
            nb.sort_unstable();
            signatures.push((colors[v as usize], nb));
        }
        let mut sorted: Vec<&(u32, Vec<u32>)> = signatures.iter().collect();
        sorted.sort();
        sorted.dedup();
        let new_colors: Vec<u32> = signatures
            .iter()
            .map(|s| sorted.binary_search(&s).unwrap() as u32)
            .collect();
        if new_colors == colors {
            return colors;
        }
        colors = new_colors;
    }
}

pub(crate) fn neighbors(g: &Graph, v: u32) -> impl Iterator<Item = u32> + '_ {
    g.row(v).iter().enumerate().flat_map(|(w, &bits)| {
        let base = (w * 64) as u32;
        BitIter(bits).map(move |b| base + b)
    })
}

pub(crate) struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = u32;
    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(b)
    }
}

/// Is there an automorphism of `g` that preserves `colors` and maps
/// `v0` to `w`?
fn exists_color_automorphism(g: &Graph, colors: &[u32], v0: u32, w: u32) -> bool {
    if colors[v0 as usize] != colors[w as usize] {
        return false;
    }
    let n = g.vertex_count();
    let mut map = vec![u32::MAX; n];
    let mut used = vec![false; n];
    map[v0 as usize] = w;
    used[w as usize] = true;
    let order: Vec<u32> = (0..n as u32).filter(|&v| v != v0).collect();
    color_auto_rec(g, colors, &order, 0, &mut map, &mut used)
}

fn color_auto_rec(
    g: &Graph,
    colors: &[u32],
    order: &[u32],
    pos: usize,
    map: &mut [u32],
    used: &mut [bool],
) -> bool {
    if pos == order.len() {
        return true;
    }
    let u = order[pos];
    for cand in 0..g.vertex_count() as u32 {
        if used[cand as usize] || colors[cand as usize] != colors[u as usize] {
            continue;
        }
        let consistent = map
            .iter()
            .enumerate()
            .all(|(v, &mv)| mv == u32::MAX || g.has_edge(u, v as u32) == g.has_edge(cand, mv));
        if !consistent {
            continue;
        }
        map[u as usize] = cand;
        used[cand as usize] = true;
        if color_auto_rec(g, colors, order, pos + 1, map, used) {
            return true;
        }
        map[u as usize] = u32::MAX;
        used[cand as usize] = false;
    }
    false
}

/// Pattern vertices ordered so each (after the first) touches as many
/// already-placed vertices as possible; ties broken toward high degree.
fn constraint_order(pattern: &Graph) -> Vec<u32> {
    let k = pattern.vertex_count();
    if k == 0 {
        return Vec::new();
    }
    let mut placed = vec![false; k];
    let mut order = Vec::with_capacity(k);
    let start = (0..k as u32).max_by_key(|&v| pattern.degree(v)).unwrap();
    placed[start as usize] = true;
    order.push(start);
    while order.len() < k {
        let next = (0..k as u32)
            .filter(|&v| !placed[v as usize])
            .max_by_key(|&v| {
                let links = order.iter().filter(|&&u| pattern.has_edge(u, v)).count();
                (links, pattern.degree(v))
            })
            .unwrap();
        placed[next as usize] = true;
        order.push(next);
    }
    order
}

#[allow(clippy::too_many_arguments)]
fn embed_rec(
    host: &Graph,
    pattern: &Graph,
    order: &[u32],
    pos: usize,
    assigned: &mut [u32],
    used: &mut [bool],
    nodes: &mut u64,
    limit: u64,
    on_found: &mut impl FnMut(&[u32]) -> bool,
) -> Result<bool> {
    if pos == order.len() {
        return Ok(on_found(assigned));
    }
    *nodes += 1;
    if *nodes > limit {
        return Err(Error::resource("induced-embedding search nodes", limit));
    }
    let p = order[pos];
    for cand in 0..host.vertex_count() as u32 {
        if used[cand as usize] {
            continue;
        }
        let consistent = order[..pos].iter().all(|&placed| {
            pattern.has_edge(p, placed) == host.has_edge(cand, assigned[placed as usize])
        });
        if !consistent {
            continue;
        }
        assigned[p as usize] = cand;
        used[cand as usize] = true;
        let keep_going = embed_rec(
            host,
            pattern,
            order,
            pos + 1,
            assigned,
            used,
            nodes,
            limit,
            on_found,
        )?;
        assigned[p as usize] = u32::MAX;
        used[cand as usize] = false;
        if !keep_going {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::structure_complement;

    #[test]
    fn isomorphism_examples() {
        let p3 = Graph::path(3);
        let edge_plus_isolated = Graph::new(3, [(0, 1)]).unwrap();
        assert!(!are_isomorphic(&p3, &edge_plus_isolated));

        assert!(!are_isomorphic(&Graph::cycle(4), &Graph::path(4)));

        let g = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 2)]).unwrap();
        let relabeled = g.relabeled(&[4, 2, 0, 1, 3]).unwrap();
        assert!(are_isomorphic(&g, &relabeled));
    }

    #[test]
    fn automorphism_examples() {
        assert_eq!(automorphism_count(&Graph::complete(3)), 6);
        assert_eq!(automorphism_count(&Graph::path(3)), 2);
        assert_eq!(automorphism_count(&Graph::cycle(4)), 8);
        assert_eq!(automorphism_count(&Graph::star(4)), 6);
        assert_eq!(automorphism_count(&Graph::empty(5)), 120);
        assert_eq!(automorphism_count(&Graph::complete(8)), 40320);
    }

    #[test]
    fn automorphism_count_of_larger_symmetric_graphs() {
        // The orbit-stabilizer route must not enumerate all 12! permutations.
        assert_eq!(automorphism_count(&Graph::complete(12)), 479_001_600);
        assert_eq!(automorphism_count(&Graph::cycle(12)), 24);
    }

    #[test]
    fn induced_copy_examples() {
        assert_eq!(
            count_induced_copies(&Graph::complete(3), &Graph::complete(3)),
            1
        );
        assert_eq!(count_induced_copies(&Graph::cycle(4), &Graph::path(3)), 4);
        // Induced edges of a path are exactly its edges; {0,2} does not count.
        assert_eq!(
            count_induced_copies(&Graph::path(3), &Graph::complete(2)),
            2
        );
    }

    #[test]
    fn copies_times_aut_equals_embeddings() {
        let host = Graph::new(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5)]).unwrap();
        for pattern in [Graph::path(3), Graph::complete(3), Graph::star(4)] {
            let emb = count_induced_embeddings(&host, &pattern);
            let copies = count_induced_copies(&host, &pattern);
            assert_eq!(copies * automorphism_count(&pattern), emb);
        }
    }

    #[test]
    fn complement_duality_of_automorphisms() {
        for g in [Graph::path(4), Graph::star(5), Graph::cycle(5)] {
            assert_eq!(
                automorphism_count(&g),
                automorphism_count(&structure_complement(&g))
            );
        }
    }

    #[test]
    fn embedding_budget_is_enforced() {
        let host = Graph::complete(12);
        let pattern = Graph::complete(6);
        assert!(exists_induced_embedding_budgeted(&host, &pattern, 2).is_err());
        assert!(exists_induced_embedding_budgeted(&host, &pattern, 1 << 20).unwrap());
    }
}
