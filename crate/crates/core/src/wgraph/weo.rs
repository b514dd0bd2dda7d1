use std::collections::{BTreeSet, VecDeque};

use super::chordal::{is_peo, mcs_peo, PeoOutcome};
use super::{weights_along, Obstruction, VertexOrdering, WeightedGraph};

/// Outcome of the weighted elimination ordering search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeoOutcome {
    Weo(VertexOrdering),
    Obstructed(Obstruction),
}

impl WeoOutcome {
    pub fn ordering(&self) -> Option<&VertexOrdering> {
        match self {
            WeoOutcome::Weo(o) => Some(o),
            WeoOutcome::Obstructed(_) => None,
        }
    }
}

/// True iff `o` is a perfect elimination ordering and weights weakly
/// decrease along every edge in ordering direction.
pub fn validate_weo<W: Clone + PartialOrd>(g: &WeightedGraph<W>, o: &VertexOrdering) -> bool {
    if o.len() != g.num_vertices() || !is_peo(g, o.as_slice()) {
        return false;
    }
    g.edges().all(|(u, v)| {
        let (first, second) = if o.position(u) < o.position(v) { (u, v) } else { (v, u) };
        g.psi(first) >= g.psi(second)
    })
}

/// Finds a weighted elimination ordering or a witness that none exists.
///
/// Witnesses are tried in order: a chordless cycle, the first edge with
/// incomparable weights, then a valley path. The ordering is built back to
/// front by repeatedly removing the lowest simplicial vertex whose weight is
/// below all of its neighbors'. When no such vertex exists, some connected
/// component `S` of minimum-weight vertices has a non-clique neighborhood,
/// and a shortest path through `S` between two non-adjacent neighbors is a
/// valley path.
pub fn find_weo<W: Clone + PartialOrd>(g: &WeightedGraph<W>) -> WeoOutcome {
    if let PeoOutcome::ChordlessCycle(c) = mcs_peo(g) {
        return WeoOutcome::Obstructed(Obstruction::ChordlessCycle(c));
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| g.psi(u).partial_cmp(g.psi(v)).is_none()) {
        return WeoOutcome::Obstructed(Obstruction::IncomparableEdge(u, v));
    }

    let n = g.num_vertices();
    let mut alive = vec![true; n];
    let mut reversed = Vec::with_capacity(n);
    for _ in 0..n {
        let live_nbrs = |v: usize| -> Vec<usize> {
            g.neighbors(v).iter().copied().filter(|&u| alive[u]).collect()
        };
        let eligible = (0..n).filter(|&v| alive[v]).find(|&v| {
            let ns = live_nbrs(v);
            g.is_clique(&ns) && ns.iter().all(|&u| g.psi(v) <= g.psi(u))
        });
        match eligible {
            Some(v) => {
                alive[v] = false;
                reversed.push(v);
            }
            None => {
                let path = valley_from_minimal_component(g, &alive)
                    .expect("chordal graph with comparable edges and no valley path has an eligible vertex");
                return WeoOutcome::Obstructed(Obstruction::ValleyPath(path));
            }
        }
    }
    reversed.reverse();
    WeoOutcome::Weo(VertexOrdering::new(reversed).expect("each vertex removed once"))
}

fn valley_from_minimal_component<W: Clone + PartialOrd>(
    g: &WeightedGraph<W>,
    alive: &[bool],
) -> Option<Vec<usize>> {
    let n = g.num_vertices();
    let live: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let minimal: Vec<bool> = (0..n)
        .map(|v| alive[v] && !live.iter().any(|&u| g.psi(u) < g.psi(v)))
        .collect();
    let mut assigned = vec![false; n];
    for &s in &live {
        if !minimal[s] || assigned[s] {
            continue;
        }
        // connected component of s among minimal vertices
        let mut comp = BTreeSet::from([s]);
        let mut stack = vec![s];
        assigned[s] = true;
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if minimal[w] && !assigned[w] {
                    assigned[w] = true;
                    comp.insert(w);
                    stack.push(w);
                }
            }
        }
        let boundary: Vec<usize> = comp
            .iter()
            .flat_map(|&u| g.neighbors(u).iter().copied())
            .filter(|&w| alive[w] && !comp.contains(&w))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        for (i, &a) in boundary.iter().enumerate() {
            if let Some(&b) = boundary[i + 1..].iter().find(|&&b| !g.has_edge(a, b)) {
                return Some(shortest_path_through(g, a, b, &comp));
            }
        }
    }
    None
}

/// Shortest path from `a` to `b` whose interior lies in `inner`.
fn shortest_path_through<W: Clone>(
    g: &WeightedGraph<W>,
    a: usize,
    b: usize,
    inner: &BTreeSet<usize>,
) -> Vec<usize> {
    let n = g.num_vertices();
    let mut prev = vec![usize::MAX; n];
    prev[a] = a;
    let mut queue = VecDeque::from([a]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if prev[w] != usize::MAX {
                continue;
            }
            if w == b {
                prev[w] = u;
                queue.clear();
                break;
            }
            if inner.contains(&w) {
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    let mut path = vec![b];
    let mut cur = b;
    while cur != a {
        cur = prev[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

/// All induced paths with at least two vertices, each listed once with
/// its first vertex smaller than its last.
pub fn induced_paths<W: Clone>(g: &WeightedGraph<W>) -> Vec<Vec<usize>> {
    fn extend<W: Clone>(g: &WeightedGraph<W>, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().expect("nonempty path");
        if path.len() >= 2 && path[0] < last {
            out.push(path.clone());
        }
        for &w in g.neighbors(last) {
            if path.contains(&w) {
                continue;
            }
            // w may touch only the current endpoint
            if path[..path.len() - 1].iter().any(|&u| g.has_edge(u, w)) {
                continue;
            }
            path.push(w);
            extend(g, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    for v in 0..g.num_vertices() {
        extend(g, &mut vec![v], &mut out);
    }
    out
}

/// Every induced edge with incomparable weights and every induced valley path.
///
/// Enumerates all induced paths; intended for graphs with at most a dozen vertices.
pub fn forbidden_paths<W: Clone + PartialOrd>(g: &WeightedGraph<W>) -> Vec<Obstruction> {
    induced_paths(g)
        .into_iter()
        .filter_map(|p| {
            let w = weights_along(g, &p);
            if p.len() == 2 && w[0].partial_cmp(&w[1]).is_none() {
                Some(Obstruction::IncomparableEdge(p[0], p[1]))
            } else if is_valley(&w) {
                Some(Obstruction::ValleyPath(p))
            } else {
                None
            }
        })
        .collect()
}

/// `w[0] > w[1] = ... = w[k-2] < w[k-1]` with `k >= 3`.
pub(crate) fn is_valley<W: PartialOrd>(w: &[W]) -> bool {
    let k = w.len();
    k >= 3 && w[0] > w[1] && w[1..k - 1].windows(2).all(|p| p[0] == p[1]) && w[k - 1] > w[k - 2]
}

/// Kinds of non-unimodal subpath.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ForbiddenKind {
    /// Two consecutive incomparable weights.
    Incomparable,
    /// Strict drop, plateau, strict rise.
    Valley,
}

/// Result of scanning a weight sequence for unimodality (0-based indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Unimodality {
    /// Weights weakly rise up to `peak` and weakly fall after it.
    Unimodal { peak: usize },
    /// The subsequence `start..=end` is a forbidden pattern.
    Contains { kind: ForbiddenKind, start: usize, end: usize },
}

/// Decides unimodality, locating a forbidden subpath when it fails.
///
/// With all neighbors comparable, the valley is found from the first strict
/// drop `i0`, the first strict rise after it ending at `i2`, and the last
/// strict drop `i1` before that rise.
pub fn unimodal_decompose<W: PartialOrd>(w: &[W]) -> Unimodality {
    assert!(!w.is_empty(), "weight sequence must be nonempty");
    let k = w.len();
    if let Some(i) = (0..k - 1).find(|&i| w[i].partial_cmp(&w[i + 1]).is_none()) {
        return Unimodality::Contains {
            kind: ForbiddenKind::Incomparable,
            start: i,
            end: i + 1,
        };
    }
    let Some(i0) = (0..k - 1).find(|&i| w[i] > w[i + 1]) else {
        return Unimodality::Unimodal { peak: k - 1 };
    };
    let Some(i2) = (i0 + 2..k).find(|&i| w[i - 1] < w[i]) else {
        return Unimodality::Unimodal { peak: i0 };
    };
    let i1 = (i0..=i2 - 2)
        .rev()
        .find(|&i| w[i] > w[i + 1])
        .expect("i0 is a strict drop");
    Unimodality::Contains {
        kind: ForbiddenKind::Valley,
        start: i1,
        end: i2,
    }
}

pub fn is_unimodal<W: PartialOrd>(w: &[W]) -> bool {
    matches!(unimodal_decompose(w), Unimodality::Unimodal { .. })
}
