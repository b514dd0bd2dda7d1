//! Vertex-weighted graphs, elimination orderings and their obstructions.
//!
//! Vertices are `0..n` internally; every serialized form is 1-based.

mod chordal;
mod weo;

pub use chordal::{find_chordless_cycle, is_chordless_cycle, is_simplicial, mcs_order, mcs_peo, PeoOutcome};
pub use weo::{
    find_weo, forbidden_paths, induced_paths, is_unimodal, unimodal_decompose, validate_weo,
    ForbiddenKind, Unimodality, WeoOutcome,
};

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Rat;

/// A finite set of rationals, partially ordered by inclusion.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WeightSet(BTreeSet<Rat>);

impl WeightSet {
    pub fn new(elems: impl IntoIterator<Item = Rat>) -> Self {
        WeightSet(elems.into_iter().collect())
    }

    pub fn empty() -> Self {
        WeightSet::default()
    }

    /// Convenience constructor from small integers.
    pub fn ints(elems: &[i64]) -> Self {
        WeightSet::new(elems.iter().map(|&a| crate::exact::int(a)))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Rat> {
        self.0.iter()
    }

    pub fn is_subset(&self, other: &WeightSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &WeightSet) -> WeightSet {
        WeightSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn intersection(&self, other: &WeightSet) -> WeightSet {
        WeightSet(self.0.intersection(&other.0).cloned().collect())
    }
}

impl PartialOrd for WeightSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self.is_subset(other), other.is_subset(self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }
}

impl fmt::Display for WeightSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for WeightSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|a| a.to_string()))
    }
}

/// A simple graph on vertices `0..n` with a weight on every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph<W> {
    adj: Vec<BTreeSet<usize>>,
    psi: Vec<W>,
}

/// Weights are finite rational sets ordered by inclusion.
pub type SetGraph = WeightedGraph<WeightSet>;
/// Weights are nonnegative integers.
pub type IntWeightedGraph = WeightedGraph<u32>;

impl<W: Clone> WeightedGraph<W> {
    /// Builds a graph with `psi.len()` vertices. Edges are 0-based pairs.
    pub fn new(psi: Vec<W>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = psi.len();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut adj = vec![BTreeSet::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange(u));
            }
            if v >= n {
                return Err(Error::VertexOutOfRange(v));
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !adj[u].insert(v) {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            adj[v].insert(u);
        }
        Ok(WeightedGraph { adj, psi })
    }

    /// Builds a graph, silently merging repeated edges.
    fn from_adjacency(adj: Vec<BTreeSet<usize>>, psi: Vec<W>) -> Self {
        WeightedGraph { adj, psi }
    }

    pub fn num_vertices(&self) -> usize {
        self.psi.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u).is_some_and(|ns| ns.contains(&v))
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn psi(&self, v: usize) -> &W {
        &self.psi[v]
    }

    pub fn weights(&self) -> &[W] {
        &self.psi
    }

    pub fn is_complete(&self) -> bool {
        let n = self.num_vertices();
        self.num_edges() == n * (n - 1) / 2
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &a)| vs[i + 1..].iter().all(|&b| self.has_edge(a, b)))
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.num_vertices() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange(v))
        }
    }

    /// The same graph with edge `{u, v}` removed.
    pub fn remove_edge(&self, u: usize, v: usize) -> Result<Self> {
        if !self.has_edge(u, v) {
            return Err(Error::NotAnEdge(u.min(v), u.max(v)));
        }
        let mut g = self.clone();
        g.adj[u].remove(&v);
        g.adj[v].remove(&u);
        Ok(g)
    }

    pub fn map_weights<V>(&self, f: impl Fn(&W) -> V) -> WeightedGraph<V> {
        WeightedGraph {
            adj: self.adj.clone(),
            psi: self.psi.iter().map(f).collect(),
        }
    }
}

/// Induced subgraph on `vs`, relabeled `0..|vs|` in increasing vertex order.
///
/// The returned mapping sends each new vertex to its original label.
pub fn induced_subgraph<W: Clone>(
    g: &WeightedGraph<W>,
    vs: &BTreeSet<usize>,
) -> Result<(WeightedGraph<W>, Vec<usize>)> {
    if vs.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    for &v in vs {
        g.check_vertex(v)?;
    }
    let mapping: Vec<usize> = vs.iter().copied().collect();
    let index = |v: usize| mapping.binary_search(&v).ok();
    let adj = mapping
        .iter()
        .map(|&v| g.adj[v].iter().filter_map(|&u| index(u)).collect())
        .collect();
    let psi = mapping.iter().map(|&v| g.psi[v].clone()).collect();
    Ok((WeightedGraph::from_adjacency(adj, psi), mapping))
}

/// Contracts edge `{u, v}`: the endpoints merge into the lower-labeled one,
/// carrying the union of both weights; higher labels shift down by one.
pub fn contract_edge(g: &SetGraph, u: usize, v: usize) -> Result<SetGraph> {
    if !g.has_edge(u, v) {
        return Err(Error::NotAnEdge(u.min(v), u.max(v)));
    }
    let (keep, gone) = (u.min(v), u.max(v));
    let relabel = |w: usize| if w == gone { keep } else if w > gone { w - 1 } else { w };
    let n = g.num_vertices() - 1;
    let mut adj = vec![BTreeSet::new(); n];
    for (a, b) in g.edges() {
        let (a, b) = (relabel(a), relabel(b));
        if a != b {
            adj[a].insert(b);
            adj[b].insert(a);
        }
    }
    let mut psi: Vec<WeightSet> = (0..g.num_vertices())
        .filter(|&w| w != gone)
        .map(|w| g.psi[w].clone())
        .collect();
    psi[keep] = g.psi[keep].union(&g.psi[gone]);
    Ok(WeightedGraph::from_adjacency(adj, psi))
}

/// A permutation of the vertices, read as `(v_1, ..., v_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexOrdering {
    perm: Vec<usize>,
    pos: Vec<usize>,
}

impl VertexOrdering {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in perm.iter().enumerate() {
            if v >= n {
                return Err(Error::InvalidOrdering(format!("vertex {} out of range", v + 1)));
            }
            if pos[v] != usize::MAX {
                return Err(Error::InvalidOrdering(format!("vertex {} repeated", v + 1)));
            }
            pos[v] = i;
        }
        Ok(VertexOrdering { perm, pos })
    }

    pub fn identity(n: usize) -> Self {
        VertexOrdering {
            perm: (0..n).collect(),
            pos: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// Vertex at position `i`.
    pub fn vertex(&self, i: usize) -> usize {
        self.perm[i]
    }

    /// Position of vertex `v`.
    pub fn position(&self, v: usize) -> usize {
        self.pos[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    /// 1-based labels.
    pub fn one_based(&self) -> Vec<usize> {
        self.perm.iter().map(|v| v + 1).collect()
    }

    /// Restriction to the vertices in `mapping` (new vertex `i` is `mapping[i]`).
    pub fn restrict(&self, mapping: &[usize]) -> VertexOrdering {
        let mut kept: Vec<usize> = (0..mapping.len()).collect();
        kept.sort_by_key(|&i| self.pos[mapping[i]]);
        VertexOrdering::new(kept).expect("restriction of a permutation")
    }
}

/// A combinatorial witness that no weighted elimination ordering exists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Obstruction {
    /// Induced cycle of length at least four.
    ChordlessCycle(Vec<usize>),
    /// Edge whose endpoint weights are incomparable.
    IncomparableEdge(usize, usize),
    /// Induced path `v_1 .. v_k`, `k >= 3`, whose weights strictly drop,
    /// stay constant, then strictly rise.
    ValleyPath(Vec<usize>),
}

impl Obstruction {
    pub fn kind(&self) -> &'static str {
        match self {
            Obstruction::ChordlessCycle(_) => "chordless_cycle",
            Obstruction::IncomparableEdge(..) => "incomparable_edge",
            Obstruction::ValleyPath(_) => "valley_path",
        }
    }

    /// Checks the witness against its defining property in `g`.
    pub fn is_witness_for<W: Clone + PartialOrd>(&self, g: &WeightedGraph<W>) -> bool {
        let in_range = |vs: &[usize]| vs.iter().all(|&v| v < g.num_vertices());
        match self {
            Obstruction::ChordlessCycle(c) => in_range(c) && is_chordless_cycle(g, c),
            Obstruction::IncomparableEdge(u, v) => {
                in_range(&[*u, *v])
                    && g.has_edge(*u, *v)
                    && g.psi(*u).partial_cmp(g.psi(*v)).is_none()
            }
            Obstruction::ValleyPath(p) => {
                in_range(p) && is_induced_path(g, p) && weo::is_valley(&weights_along(g, p))
            }
        }
    }

    pub fn one_based(&self) -> Obstruction {
        let inc = |vs: &[usize]| vs.iter().map(|v| v + 1).collect();
        match self {
            Obstruction::ChordlessCycle(c) => Obstruction::ChordlessCycle(inc(c)),
            Obstruction::IncomparableEdge(u, v) => Obstruction::IncomparableEdge(u + 1, v + 1),
            Obstruction::ValleyPath(p) => Obstruction::ValleyPath(inc(p)),
        }
    }
}

pub(crate) fn weights_along<W: Clone>(g: &WeightedGraph<W>, vs: &[usize]) -> Vec<W> {
    vs.iter().map(|&v| g.psi(v).clone()).collect()
}

/// Whether `p` is a simple path whose only edges in `g` are consecutive pairs.
pub fn is_induced_path<W: Clone>(g: &WeightedGraph<W>, p: &[usize]) -> bool {
    let distinct = p.iter().collect::<BTreeSet<_>>().len() == p.len();
    distinct
        && (0..p.len()).all(|i| {
            (i + 1..p.len()).all(|j| g.has_edge(p[i], p[j]) == (j == i + 1))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> SetGraph {
        SetGraph::new(vec![WeightSet::empty(); 3], &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn construction_errors() {
        assert_eq!(SetGraph::new(vec![], &[]), Err(Error::EmptyGraph));
        let w = vec![WeightSet::empty(); 2];
        assert_eq!(SetGraph::new(w.clone(), &[(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(SetGraph::new(w.clone(), &[(0, 2)]), Err(Error::VertexOutOfRange(2)));
        assert_eq!(
            SetGraph::new(w, &[(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        );
    }

    #[test]
    fn weight_set_inclusion_order() {
        let a = WeightSet::ints(&[0]);
        let b = WeightSet::ints(&[0, 1]);
        let c = WeightSet::ints(&[1]);
        assert!(a < b);
        assert!(b >= c);
        assert_eq!(a.partial_cmp(&c), None);
        assert!(a.partial_cmp(&c).is_none());
        assert_eq!(b.to_string(), "{0,1}");
    }

    #[test]
    fn induced_subgraphs() {
        let g = path3();
        let (s, map) = induced_subgraph(&g, &BTreeSet::from([0, 2])).unwrap();
        assert_eq!(s.num_vertices(), 2);
        assert_eq!(s.num_edges(), 0);
        assert_eq!(map, vec![0, 2]);

        let k3 = SetGraph::new(vec![WeightSet::empty(); 3], &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let (e, _) = induced_subgraph(&k3, &BTreeSet::from([0, 1])).unwrap();
        assert_eq!(e.edges().collect::<Vec<_>>(), vec![(0, 1)]);

        let (all, _) = induced_subgraph(&g, &BTreeSet::from([0, 1, 2])).unwrap();
        assert_eq!(all, g);
        assert_eq!(
            induced_subgraph(&g, &BTreeSet::new()).unwrap_err(),
            Error::EmptyVertexSet
        );
    }

    #[test]
    fn contractions() {
        let g = SetGraph::new(
            vec![WeightSet::ints(&[0, 1]), WeightSet::ints(&[0]), WeightSet::ints(&[0, 1])],
            &[(0, 1), (1, 2)],
        )
        .unwrap();
        let c = contract_edge(&g, 1, 2).unwrap();
        assert_eq!(c.num_vertices(), 2);
        assert_eq!(c.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(c.psi(1), &WeightSet::ints(&[0, 1]));

        let k3 = SetGraph::new(vec![WeightSet::empty(); 3], &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let c = contract_edge(&k3, 0, 2).unwrap();
        assert_eq!(c.edges().collect::<Vec<_>>(), vec![(0, 1)]);

        let e = SetGraph::new(vec![WeightSet::ints(&[0]), WeightSet::ints(&[2])], &[(0, 1)]).unwrap();
        let c = contract_edge(&e, 0, 1).unwrap();
        assert_eq!(c.num_vertices(), 1);
        assert_eq!(c.psi(0), &WeightSet::ints(&[0, 2]));

        assert_eq!(contract_edge(&g, 0, 2), Err(Error::NotAnEdge(0, 2)));
    }

    #[test]
    fn orderings() {
        assert!(VertexOrdering::new(vec![1, 0, 2]).is_ok());
        assert!(VertexOrdering::new(vec![1, 1]).is_err());
        assert!(VertexOrdering::new(vec![0, 2]).is_err());
        let o = VertexOrdering::new(vec![2, 0, 1]).unwrap();
        assert_eq!(o.position(0), 1);
        assert_eq!(o.restrict(&[0, 2]).as_slice(), &[1, 0]);
    }
}
