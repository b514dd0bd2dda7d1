use std::collections::{BTreeSet, VecDeque};

use super::{VertexOrdering, WeightedGraph};
use crate::error::Result;

/// Outcome of chordality testing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeoOutcome {
    Peo(VertexOrdering),
    /// Induced cycle of length at least four.
    ChordlessCycle(Vec<usize>),
}

/// Maximum cardinality search visit order. Ties go to the lowest vertex.
///
/// For a chordal graph, every vertex's earlier-visited neighbors form a
/// clique, so the visit order is a perfect elimination ordering.
pub fn mcs_order<W: Clone>(g: &WeightedGraph<W>) -> Vec<usize> {
    let n = g.num_vertices();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !visited[v])
            .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
            .expect("unvisited vertex remains");
        visited[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if !visited[u] {
                weight[u] += 1;
            }
        }
    }
    order
}

/// First position whose earlier neighbors are not a clique, with a
/// non-adjacent pair among them.
fn peo_violation<W: Clone>(g: &WeightedGraph<W>, order: &[usize]) -> Option<(usize, usize, usize)> {
    let mut seen = vec![false; g.num_vertices()];
    for &v in order {
        let earlier: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| seen[u]).collect();
        for (i, &a) in earlier.iter().enumerate() {
            if let Some(&b) = earlier[i + 1..].iter().find(|&&b| !g.has_edge(a, b)) {
                return Some((v, a, b));
            }
        }
        seen[v] = true;
    }
    None
}

pub(crate) fn is_peo<W: Clone>(g: &WeightedGraph<W>, order: &[usize]) -> bool {
    peo_violation(g, order).is_none()
}

/// Chordality test by maximum cardinality search.
pub fn mcs_peo<W: Clone>(g: &WeightedGraph<W>) -> PeoOutcome {
    let order = mcs_order(g);
    match peo_violation(g, &order) {
        None => PeoOutcome::Peo(VertexOrdering::new(order).expect("mcs visits each vertex once")),
        Some((v, a, b)) => {
            let cycle = chordless_cycle_through(g, v, a, b)
                .or_else(|| find_chordless_cycle(g))
                .expect("a non-chordal graph has a chordless cycle");
            PeoOutcome::ChordlessCycle(cycle)
        }
    }
}

/// Whether the neighbors of `v` form a clique.
pub fn is_simplicial<W: Clone>(g: &WeightedGraph<W>, v: usize) -> Result<bool> {
    g.check_vertex(v)?;
    let ns: Vec<usize> = g.neighbors(v).iter().copied().collect();
    Ok(g.is_clique(&ns))
}

/// Shortest `a`-`b` path avoiding the closed neighborhood of `v` (except `a`
/// and `b`), closed up through `v`. Requires `a`, `b` non-adjacent neighbors of `v`.
fn chordless_cycle_through<W: Clone>(
    g: &WeightedGraph<W>,
    v: usize,
    a: usize,
    b: usize,
) -> Option<Vec<usize>> {
    let n = g.num_vertices();
    let blocked: Vec<bool> = (0..n)
        .map(|u| u == v || (g.has_edge(v, u) && u != a && u != b))
        .collect();
    let mut prev = vec![usize::MAX; n];
    let mut queue = VecDeque::from([a]);
    prev[a] = a;
    while let Some(u) = queue.pop_front() {
        if u == b {
            break;
        }
        for &w in g.neighbors(u) {
            if !blocked[w] && prev[w] == usize::MAX {
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    if prev[b] == usize::MAX {
        return None;
    }
    let mut cycle = vec![v];
    let mut path = vec![b];
    let mut cur = b;
    while cur != a {
        cur = prev[cur];
        path.push(cur);
    }
    path.reverse();
    cycle.extend(path);
    Some(canonical_cycle(cycle))
}

/// Exhaustive search: any chordless cycle passes through some vertex `v`
/// with two non-adjacent neighbors joined outside `N[v]`.
pub fn find_chordless_cycle<W: Clone>(g: &WeightedGraph<W>) -> Option<Vec<usize>> {
    for v in 0..g.num_vertices() {
        let ns: Vec<usize> = g.neighbors(v).iter().copied().collect();
        for (i, &a) in ns.iter().enumerate() {
            for &b in &ns[i + 1..] {
                if g.has_edge(a, b) {
                    continue;
                }
                if let Some(c) = chordless_cycle_through(g, v, a, b) {
                    return Some(c);
                }
            }
        }
    }
    None
}

/// Rotates so the smallest vertex comes first, then orients toward its smaller neighbor.
fn canonical_cycle(mut c: Vec<usize>) -> Vec<usize> {
    let start = (0..c.len()).min_by_key(|&i| c[i]).unwrap_or(0);
    c.rotate_left(start);
    if c.len() > 2 && c[c.len() - 1] < c[1] {
        c[1..].reverse();
    }
    c
}

/// Whether `c` is an induced cycle of length at least four.
pub fn is_chordless_cycle<W: Clone>(g: &WeightedGraph<W>, c: &[usize]) -> bool {
    let k = c.len();
    if k < 4 || c.iter().collect::<BTreeSet<_>>().len() != k {
        return false;
    }
    (0..k).all(|i| {
        (i + 1..k).all(|j| {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            g.has_edge(c[i], c[j]) == consecutive
        })
    })
}
