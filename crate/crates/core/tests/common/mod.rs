//! Independent oracles shared by the integration tests. Nothing here calls
//! the lattice, division or elimination code of the library.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_traits::ToPrimitive;

use arranger_core::arrangement::Arrangement;
use arranger_core::exact::Rat;
use arranger_core::wgraph::{SetGraph, WeightSet};

pub const P: i64 = 1_000_000_007;

fn pow_mod(mut b: i64, mut e: i64, p: i64) -> i64 {
    let mut r = 1i64;
    b = b.rem_euclid(p);
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as i128 * b as i128) % p as i128) as i64;
        }
        b = ((b as i128 * b as i128) % p as i128) as i64;
        e >>= 1;
    }
    r
}

/// `r mod p`; panics if the denominator vanishes mod `p`.
pub fn rat_mod(r: &Rat, p: i64) -> i64 {
    let n = r.numer().to_i64().expect("small numerator").rem_euclid(p);
    let d = r.denom().to_i64().expect("small denominator").rem_euclid(p);
    assert_ne!(d, 0, "denominator divisible by {p}");
    ((n as i128 * pow_mod(d, p - 2, p) as i128) % p as i128) as i64
}

/// Rank of integer rows modulo a large prime by plain Gaussian elimination.
pub fn rank_mod(rows: &[Vec<i64>], p: i64) -> usize {
    let mut m: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][c], p - 2, p);
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = (m[r][c] as i128 * inv as i128 % p as i128) as i64;
                for k in c..cols {
                    m[r][k] = ((m[r][k] as i128 - f as i128 * m[rank][k] as i128).rem_euclid(p as i128)) as i64;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn rows_mod(a: &Arrangement, p: i64) -> Vec<Vec<i64>> {
    a.forms()
        .iter()
        .map(|f| f.coeffs().iter().map(|c| rat_mod(c, p)).collect())
        .collect()
}

fn subset_rank(rows: &[Vec<i64>], mask: u64) -> usize {
    let sel: Vec<Vec<i64>> = (0..rows.len()).filter(|i| mask >> i & 1 == 1).map(|i| rows[i].clone()).collect();
    rank_mod(&sel, P)
}

/// Whitney's formula `χ(q) = Σ_S (-1)^|S| q^(dim - rank S)`, low to high.
pub fn whitney_chi(a: &Arrangement) -> Vec<i64> {
    let rows = rows_mod(a, P);
    assert!(rows.len() < 24, "subset enumeration too large");
    let mut coeffs = vec![0i64; a.dim() + 1];
    for mask in 0u64..(1 << rows.len()) {
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        coeffs[a.dim() - subset_rank(&rows, mask)] += sign;
    }
    coeffs
}

/// Number of distinct flats per rank, found as closures of hyperplane subsets.
pub fn brute_rank_counts(a: &Arrangement) -> Vec<usize> {
    let rows = rows_mod(a, P);
    let n = rows.len();
    let mut flats: Vec<HashSet<u64>> = vec![HashSet::new(); a.dim() + 1];
    for mask in 0u64..(1 << n) {
        let r = subset_rank(&rows, mask);
        let closure = (0..n)
            .filter(|&h| subset_rank(&rows, mask | 1 << h) == r)
            .fold(0u64, |m, h| m | 1 << h);
        flats[r].insert(closure);
    }
    let mut counts: Vec<usize> = flats.iter().map(HashSet::len).collect();
    while counts.last() == Some(&0) {
        counts.pop();
    }
    counts
}

/// Points of `F_p^dim` off every hyperplane.
pub fn point_count(a: &Arrangement, p: i64) -> i64 {
    let rows = rows_mod(a, p);
    let dim = a.dim();
    let total = p.pow(dim as u32);
    (0..total)
        .filter(|&code| {
            let mut c = code;
            let pt: Vec<i64> = (0..dim)
                .map(|_| {
                    let x = c % p;
                    c /= p;
                    x
                })
                .collect();
            rows.iter()
                .all(|r| r.iter().zip(&pt).map(|(a, x)| a * x).sum::<i64>().rem_euclid(p) != 0)
        })
        .count() as i64
}

/// Rows scaled to integers; signs of the forms are unchanged.
fn integer_rows(a: &Arrangement) -> Vec<Vec<i64>> {
    a.forms()
        .iter()
        .map(|f| {
            let l = f.coeffs().iter().fold(1i64, |l, c| {
                let d = c.denom().to_i64().expect("small denominator");
                l / gcd(l, d) * d
            });
            f.coeffs()
                .iter()
                .map(|c| (c * Rat::from_integer(l.into())).to_integer().to_i64().expect("small coefficient"))
                .collect()
        })
        .collect()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

/// Distinct sign vectors of integer points in `[-n, n]^dim` off every hyperplane.
fn sign_vectors(a: &Arrangement, n: i64) -> usize {
    let rows = integer_rows(a);
    let dim = a.dim();
    let side = 2 * n + 1;
    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    for code in 0..side.pow(dim as u32) {
        let mut c = code;
        let pt: Vec<i64> = (0..dim)
            .map(|_| {
                let x = c % side - n;
                c /= side;
                x
            })
            .collect();
        let vals: Vec<i64> = rows.iter().map(|r| r.iter().zip(&pt).map(|(a, x)| a * x).sum()).collect();
        if vals.iter().all(|&v| v != 0) {
            seen.insert(vals.iter().map(|&v| v > 0).collect());
        }
    }
    seen.len()
}

/// Chamber count by sign-vector enumeration, refining the grid until two
/// successive sizes agree.
pub fn chamber_count(a: &Arrangement) -> usize {
    let mut n = 2;
    let mut prev = sign_vectors(a, n);
    loop {
        n *= 2;
        let cur = sign_vectors(a, n);
        if cur == prev {
            return cur;
        }
        assert!(n < 64, "chamber count did not stabilize");
        prev = cur;
    }
}

/// A basis of the kernel of one nonzero row, as rational vectors.
fn kernel_of(form: &[Rat]) -> Vec<Vec<Rat>> {
    let piv = form.iter().position(|c| *c != Rat::from_integer(0.into())).expect("nonzero form");
    (0..form.len())
        .filter(|&j| j != piv)
        .map(|j| {
            let mut v = vec![Rat::from_integer(0.into()); form.len()];
            v[j] = Rat::from_integer(1.into());
            v[piv] = -&form[j] / &form[piv];
            v
        })
        .collect()
}

/// Partition of the hyperplanes other than `h0` by equality of `H ∩ H0`,
/// computed by pulling each form back to a kernel basis of `H0`.
pub fn restriction_classes(a: &Arrangement, h0: usize) -> BTreeSet<BTreeSet<usize>> {
    let rows: Vec<Vec<Rat>> = a.forms().iter().map(|f| f.coeffs().to_vec()).collect();
    let basis = kernel_of(&rows[h0]);
    let pulled: Vec<(usize, Vec<Rat>)> = (0..rows.len())
        .filter(|&i| i != h0)
        .map(|i| {
            let v: Vec<Rat> = basis
                .iter()
                .map(|b| b.iter().zip(&rows[i]).map(|(x, y)| x * y).sum())
                .collect();
            (i, v)
        })
        .collect();
    let proportional = |u: &[Rat], v: &[Rat]| {
        (0..u.len()).all(|i| (0..u.len()).all(|j| &u[i] * &v[j] == &u[j] * &v[i]))
    };
    let mut classes: Vec<(Vec<Rat>, BTreeSet<usize>)> = Vec::new();
    for (i, v) in pulled {
        match classes.iter_mut().find(|(rep, _)| proportional(rep, &v)) {
            Some((_, members)) => {
                members.insert(i);
            }
            None => classes.push((v, BTreeSet::from([i]))),
        }
    }
    classes.into_iter().map(|(_, m)| m).collect()
}

/// All permutations whose sets form an inclusion chain.
pub fn nest_permutations(n: &[WeightSet]) -> Vec<Vec<usize>> {
    fn rec(n: &[WeightSet], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..n.len() {
            if !cur.contains(&i) && cur.last().is_none_or(|&l| n[l].is_subset(&n[i])) {
                cur.push(i);
                rec(n, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut out);
    out
}

/// Simplicial vertices via direct pairwise adjacency checks.
pub fn simplicial_vertices(g: &SetGraph) -> Vec<usize> {
    (0..g.num_vertices())
        .filter(|&v| {
            let nb: Vec<usize> = g.neighbors(v).iter().copied().collect();
            nb.iter().all(|&a| nb.iter().all(|&b| a == b || g.has_edge(a, b)))
        })
        .collect()
}

/// Multiset of integers as a count map.
pub fn counts(xs: &[u32]) -> BTreeMap<u32, usize> {
    let mut m = BTreeMap::new();
    for &x in xs {
        *m.entry(x).or_default() += 1;
    }
    m
}

pub fn ws(a: &[i64]) -> WeightSet {
    WeightSet::ints(a)
}

pub fn two_vertex() -> SetGraph {
    SetGraph::new(vec![ws(&[0]), ws(&[0, 1])], &[(0, 1)]).unwrap()
}

pub fn valley_path() -> SetGraph {
    SetGraph::new(vec![ws(&[0, 1]), ws(&[0]), ws(&[0, 1])], &[(0, 1), (1, 2)]).unwrap()
}
