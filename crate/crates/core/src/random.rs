//! Seeded random instance generators.
//!
//! Graphs are grown one vertex at a time, attaching each new vertex to a
//! clique of earlier vertices, then relabeled by a random permutation. The
//! growth order is a perfect elimination ordering; weights chosen below the
//! earlier neighbors' weights make it a weighted elimination ordering.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::wgraph::{IntWeightedGraph, SetGraph, WeightSet, WeightedGraph};

pub use rand::SeedableRng;

/// The generator used throughout; `ChaCha8Rng::seed_from_u64(seed)`.
pub type InstanceRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Grows a chordal graph on `n` vertices. Returns adjacency in growth order
/// as a list of (earlier neighbors) per vertex.
fn grow_chordal<R: Rng>(rng: &mut R, n: usize, edge_prob: f64) -> Vec<Vec<usize>> {
    let mut adj: Vec<Vec<usize>> = Vec::with_capacity(n);
    for k in 0..n {
        let mut clique: Vec<usize> = Vec::new();
        let mut candidates: Vec<usize> = (0..k).collect();
        candidates.shuffle(rng);
        for c in candidates {
            if rng.gen_bool(edge_prob) && clique.iter().all(|&d| adj[c].contains(&d) || adj[d].contains(&c)) {
                clique.push(c);
            }
        }
        clique.sort_unstable();
        adj.push(clique);
    }
    adj
}

fn relabel<W: Clone, R: Rng>(rng: &mut R, earlier: &[Vec<usize>], psi: Vec<W>) -> WeightedGraph<W> {
    let n = psi.len();
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    let mut relabeled: Vec<Option<W>> = vec![None; n];
    for (k, w) in psi.into_iter().enumerate() {
        relabeled[label[k]] = Some(w);
    }
    let edges: Vec<(usize, usize)> = earlier
        .iter()
        .enumerate()
        .flat_map(|(k, nb)| nb.iter().map(move |&j| (j, k)))
        .map(|(j, k)| (label[j], label[k]))
        .collect();
    WeightedGraph::new(relabeled.into_iter().map(Option::unwrap).collect(), &edges)
        .expect("generated graph is well formed")
}

/// A random chordal graph with empty weights on `n` vertices.
pub fn random_chordal<R: Rng>(rng: &mut R, n: usize) -> SetGraph {
    let earlier = grow_chordal(rng, n, 0.5);
    relabel(rng, &earlier, vec![WeightSet::empty(); n])
}

/// A random instance admitting a weighted elimination ordering, with
/// `|ψ(i)| <= max_weights` and weights drawn from `0..=max_weight`.
pub fn random_weo_instance<R: Rng>(rng: &mut R, n: usize, max_weights: usize, max_weight: i64) -> SetGraph {
    let earlier = grow_chordal(rng, n, 0.5);
    let mut psi: Vec<WeightSet> = Vec::with_capacity(n);
    for nb in &earlier {
        let pool: Vec<i64> = match nb.split_first() {
            None => (0..=max_weight).collect(),
            Some((first, rest)) => {
                let mut common = psi[*first].clone();
                for &j in rest {
                    common = common.intersection(&psi[j]);
                }
                common
                    .iter()
                    .map(|a| a.to_integer().try_into().expect("small weight"))
                    .collect()
            }
        };
        psi.push(random_subset(rng, &pool, max_weights));
    }
    relabel(rng, &earlier, psi)
}

fn random_subset<R: Rng>(rng: &mut R, pool: &[i64], max_len: usize) -> WeightSet {
    let len = rng.gen_range(0..=max_len.min(pool.len()));
    WeightSet::ints(&pool.choose_multiple(rng, len).copied().collect::<Vec<_>>())
}

/// A random integer-weighted instance whose lifted weights admit a weighted
/// elimination ordering, with `ψ(i) <= max_weight`.
pub fn random_int_weo_instance<R: Rng>(rng: &mut R, n: usize, max_weight: u32) -> IntWeightedGraph {
    let earlier = grow_chordal(rng, n, 0.5);
    let mut psi: Vec<u32> = Vec::with_capacity(n);
    for nb in &earlier {
        let cap = nb.iter().map(|&j| psi[j]).min().unwrap_or(max_weight);
        psi.push(rng.gen_range(0..=cap));
    }
    relabel(rng, &earlier, psi)
}

/// A graph with independent edges of probability 1/2 and weights drawn from `pool`.
pub fn random_set_graph<R: Rng>(rng: &mut R, n: usize, pool: &[WeightSet]) -> SetGraph {
    let psi: Vec<WeightSet> = (0..n)
        .map(|_| pool.choose(rng).expect("nonempty pool").clone())
        .collect();
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    SetGraph::new(psi, &edges).expect("generated graph is well formed")
}
