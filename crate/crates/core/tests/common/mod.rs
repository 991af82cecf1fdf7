//! Brute-force oracles shared by the integration suites. Everything here is
//! deliberately independent of the library's statistics code: probabilities
//! come from executing the model definitions literally.
#![allow(dead_code)] // each test binary uses a different subset

use planted_core::Graph;

/// All vertex pairs of [n] in lexicographic order.
pub fn pairs_of(n: usize) -> Vec<(u32, u32)> {
    (0..n as u32)
        .flat_map(|i| ((i + 1)..n as u32).map(move |j| (i, j)))
        .collect()
}

/// The graph on n vertices selected by a bitmask over `pairs_of(n)`.
pub fn graph_of_mask(n: usize, pairs: &[(u32, u32)], mask: u64) -> Graph {
    Graph::new(
        n,
        pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p),
    )
    .unwrap()
}

/// Null probability of a labeled graph with the given edge count.
pub fn p_h0(n_pairs: usize, edges: u32, q: f64) -> f64 {
    q.powi(edges as i32) * (1.0 - q).powi(n_pairs as i32 - edges as i32)
}

/// All injective placements of 0..k into 0..n.
pub fn injections(n: usize, k: usize) -> Vec<Vec<u32>> {
    fn rec(n: usize, k: usize, cur: &mut Vec<u32>, used: &mut Vec<bool>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in 0..n as u32 {
            if !used[v as usize] {
                used[v as usize] = true;
                cur.push(v);
                rec(n, k, cur, used, out);
                cur.pop();
                used[v as usize] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Exact planted-model probability of a labeled graph, by averaging the
/// planting rule over every placement.
pub fn p_h1_oracle(g: &Graph, pattern: &Graph, q: f64, injs: &[Vec<u32>]) -> f64 {
    let n = g.vertex_count();
    let pairs = pairs_of(n);
    let mut total = 0.0;
    for inj in injs {
        let mut position = vec![u32::MAX; n];
        for (i, &v) in inj.iter().enumerate() {
            position[v as usize] = i as u32;
        }
        let mut p = 1.0;
        for &(a, b) in &pairs {
            let present = g.has_edge(a, b);
            let (pa, pb) = (position[a as usize], position[b as usize]);
            if pa != u32::MAX && pb != u32::MAX {
                if pattern.has_edge(pa, pb) != present {
                    p = 0.0;
                    break;
                }
            } else if present {
                p *= q;
            } else {
                p *= 1.0 - q;
            }
        }
        total += p;
    }
    total / injs.len() as f64
}

/// All subsets of `pairs` of size exactly `d`.
pub fn combos(pairs: &[(u32, u32)], d: usize) -> Vec<Vec<(u32, u32)>> {
    fn rec(
        pairs: &[(u32, u32)],
        d: usize,
        from: usize,
        cur: &mut Vec<(u32, u32)>,
        out: &mut Vec<Vec<(u32, u32)>>,
    ) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in from..pairs.len() {
            cur.push(pairs[i]);
            rec(pairs, d, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(pairs, d, 0, &mut Vec::new(), &mut out);
    out
}
