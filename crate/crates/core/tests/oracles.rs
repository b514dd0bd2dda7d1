//! Library results checked against the independent oracles in `common`.

mod common;

use std::collections::BTreeSet;

use arranger_core::arrangement::{
    build_psi_arrangement, characteristic_polynomial, intersection_lattice, is_nest, triple_restrict, LatticeGuard,
};
use arranger_core::wgraph::{SetGraph, WeightSet};
use common::*;

fn lattice_chi(g: &SetGraph) -> (Vec<i64>, Vec<usize>) {
    let lat = intersection_lattice(&build_psi_arrangement(g), &LatticeGuard::default()).unwrap();
    (characteristic_polynomial(&lat).coeffs, lat.rank_counts())
}

fn sample_graphs() -> Vec<SetGraph> {
    vec![
        two_vertex(),
        valley_path(),
        SetGraph::new(vec![WeightSet::empty(); 4], &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap(),
        SetGraph::new(vec![ws(&[0]), ws(&[1])], &[(0, 1)]).unwrap(),
        SetGraph::new(vec![ws(&[0]), ws(&[0, 1]), ws(&[0, 1, 2])], &[(0, 1), (0, 2), (1, 2)]).unwrap(),
        SetGraph::new(vec![ws(&[0, 1]), ws(&[0]), ws(&[0]), ws(&[0, 1])], &[(0, 1), (1, 2), (2, 3)]).unwrap(),
        SetGraph::new(
            vec![WeightSet::new([arranger_core::exact::rat(1, 2)]), ws(&[]), ws(&[3])],
            &[(0, 1), (1, 2)],
        )
        .unwrap(),
    ]
}

#[test]
fn lattice_matches_subset_enumeration() {
    for g in sample_graphs() {
        let a = build_psi_arrangement(&g);
        let (chi, ranks) = lattice_chi(&g);
        assert_eq!(chi, whitney_chi(&a), "{}", a.dump());
        assert_eq!(ranks, brute_rank_counts(&a), "{}", a.dump());
    }
}

#[test]
fn two_vertex_lattice_counts() {
    let a = build_psi_arrangement(&two_vertex());
    assert_eq!(brute_rank_counts(&a), vec![1, 5, 6, 1]);
    // (q - 1)(q - 2)^2
    assert_eq!(whitney_chi(&a), vec![-4, 8, -5, 1]);
}

#[test]
fn characteristic_polynomial_counts_points_over_finite_fields() {
    let small: Vec<SetGraph> = sample_graphs().into_iter().filter(|g| g.num_vertices() <= 2).collect();
    assert!(!small.is_empty());
    for g in small {
        let a = build_psi_arrangement(&g);
        let lat = intersection_lattice(&a, &LatticeGuard::default()).unwrap();
        let chi = characteristic_polynomial(&lat);
        for p in [5, 7, 11, 13] {
            assert_eq!(chi.eval(p), point_count(&a, p), "p = {p}\n{}", a.dump());
        }
    }
}

#[test]
fn chamber_count_two_vertex() {
    let a = build_psi_arrangement(&two_vertex());
    assert_eq!(chamber_count(&a), 18);
}

#[test]
fn restriction_matches_pullback_classes() {
    for g in sample_graphs() {
        let a = build_psi_arrangement(&g);
        for h0 in 0..a.len() {
            let (space, forms) = a.restrictions_onto(h0).unwrap();
            let others: Vec<usize> = (0..a.len()).filter(|&i| i != h0).collect();
            let mut classes: Vec<(arranger_core::exact::LinForm, BTreeSet<usize>)> = Vec::new();
            for (f, &i) in forms.iter().zip(&others) {
                match classes.iter_mut().find(|(rep, _)| rep == f) {
                    Some((_, m)) => {
                        m.insert(i);
                    }
                    None => classes.push((f.clone(), BTreeSet::from([i]))),
                }
            }
            let ours: BTreeSet<BTreeSet<usize>> = classes.iter().map(|(_, m)| m.clone()).collect();
            assert_eq!(ours, restriction_classes(&a, h0));
            let (deleted, restricted) = triple_restrict(&a, h0).unwrap();
            assert_eq!(deleted.len(), a.len() - 1);
            assert_eq!(restricted.len(), ours.len());
            assert_eq!(restricted.dim(), space.nvars());
        }
    }
}

#[test]
fn two_vertex_restriction_onto_z() {
    let a = build_psi_arrangement(&two_vertex());
    let classes = restriction_classes(&a, 0);
    // x2 and x2 - z meet z = 0 in the same line
    assert_eq!(
        classes,
        BTreeSet::from([BTreeSet::from([1]), BTreeSet::from([2]), BTreeSet::from([3, 4])])
    );
}

#[test]
fn nest_detection_matches_permutation_search() {
    let pool = [ws(&[]), ws(&[0]), ws(&[1]), ws(&[0, 1]), ws(&[0, 1, 2])];
    for a in &pool {
        for b in &pool {
            for c in &pool {
                let n = vec![a.clone(), b.clone(), c.clone()];
                let brute = nest_permutations(&n);
                match is_nest(&n) {
                    Some(w) => assert!(brute.contains(&w), "{n:?}"),
                    None => assert!(brute.is_empty(), "{n:?}"),
                }
            }
        }
    }
}
