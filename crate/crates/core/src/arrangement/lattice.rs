//! Intersection lattices: enumeration, Möbius function, characteristic
//! polynomial, modular elements and supersolvability.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use super::{form_in_span, span_rref, Arrangement};
use crate::error::{Error, Result};
use crate::exact::Rat;

pub const GUARD_ENV_VAR: &str = "ARRANGER_LATTICE_GUARD";

/// Member sets are stored as bitmasks.
const MAX_MASK_BITS: usize = 128;

/// Size limits for lattice enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeGuard {
    pub max_hyperplanes: usize,
    pub max_dim: usize,
}

impl Default for LatticeGuard {
    fn default() -> Self {
        LatticeGuard {
            max_hyperplanes: 20,
            max_dim: 8,
        }
    }
}

impl LatticeGuard {
    /// Default guard with the hyperplane limit taken from `ARRANGER_LATTICE_GUARD` when set.
    pub fn from_env() -> Result<Self> {
        let mut guard = LatticeGuard::default();
        if let Ok(v) = std::env::var(GUARD_ENV_VAR) {
            guard.max_hyperplanes = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{GUARD_ENV_VAR}={v:?} is not a count")))?;
        }
        Ok(guard)
    }

    fn check(&self, a: &Arrangement) -> Result<()> {
        let limit = self.max_hyperplanes.min(MAX_MASK_BITS);
        if a.len() > limit {
            return Err(Error::GuardExceeded {
                what: "hyperplanes",
                value: a.len(),
                limit,
            });
        }
        if a.dim() > self.max_dim {
            return Err(Error::GuardExceeded {
                what: "ambient dimension",
                value: a.dim(),
                limit: self.max_dim,
            });
        }
        Ok(())
    }
}

/// An element of the intersection lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    /// Reduced row echelon basis of the span of the defining forms.
    pub normals: Vec<Vec<Rat>>,
    /// Indices of the hyperplanes containing the flat.
    pub members: BTreeSet<usize>,
}

impl Flat {
    /// Intersection of the given hyperplanes of `a`.
    pub fn spanned_by(a: &Arrangement, idxs: &BTreeSet<usize>) -> Result<Flat> {
        if let Some(&bad) = idxs.iter().find(|&&i| i >= a.len()) {
            return Err(Error::InvalidHyperplane(bad));
        }
        let forms: Vec<_> = idxs.iter().map(|&i| &a.forms()[i]).collect();
        let normals = span_rref(&forms);
        let members = (0..a.len())
            .filter(|&i| form_in_span(&normals, &a.forms()[i]))
            .collect();
        Ok(Flat { normals, members })
    }

    pub fn rank(&self) -> usize {
        self.normals.len()
    }
}

/// All intersections of an arrangement ordered by reverse inclusion.
///
/// Flats are sorted by rank, then by member set; index 0 is the whole space.
#[derive(Clone, Debug)]
pub struct Lattice {
    dim: usize,
    flats: Vec<Flat>,
    masks: Vec<u128>,
    /// `join_atom[x][h]` is the flat `x ∨ H_h`.
    join_atom: Vec<Vec<usize>>,
    by_mask: HashMap<u128, usize>,
    moebius: Vec<i64>,
}

fn mask_of(members: &BTreeSet<usize>) -> u128 {
    members.iter().fold(0u128, |m, &i| m | 1u128 << i)
}

/// Enumerates `L(A)` by closing the whole space under joins with single hyperplanes.
pub fn intersection_lattice(a: &Arrangement, guard: &LatticeGuard) -> Result<Lattice> {
    guard.check(a)?;
    let n = a.len();
    let bottom = Flat {
        normals: Vec::new(),
        members: BTreeSet::new(),
    };
    let mut flats = vec![bottom];
    let mut by_mask: HashMap<u128, usize> = HashMap::from([(0, 0)]);
    let mut join_atom: Vec<Vec<usize>> = Vec::new();
    let mut next = 0;
    while next < flats.len() {
        let x = flats[next].clone();
        let mut row = vec![next; n];
        for (h, slot) in row.iter_mut().enumerate() {
            if x.members.contains(&h) {
                continue;
            }
            let mut rows = x.normals.clone();
            rows.push(a.forms()[h].coeffs().to_vec());
            let normals = crate::exact::rref(&rows);
            let members: BTreeSet<usize> = (0..n)
                .filter(|&i| form_in_span(&normals, &a.forms()[i]))
                .collect();
            let mask = mask_of(&members);
            *slot = *by_mask.entry(mask).or_insert_with(|| {
                flats.push(Flat { normals, members });
                flats.len() - 1
            });
        }
        join_atom.push(row);
        next += 1;
    }

    // canonical order: rank, then member list
    let mut order: Vec<usize> = (0..flats.len()).collect();
    order.sort_by(|&i, &j| {
        flats[i]
            .rank()
            .cmp(&flats[j].rank())
            .then_with(|| flats[i].members.iter().cmp(flats[j].members.iter()))
    });
    let mut new_index = vec![0; flats.len()];
    for (new, &old) in order.iter().enumerate() {
        new_index[old] = new;
    }
    let join_atom: Vec<Vec<usize>> = order
        .iter()
        .map(|&old| join_atom[old].iter().map(|&j| new_index[j]).collect())
        .collect();
    let flats: Vec<Flat> = order.iter().map(|&old| flats[old].clone()).collect();
    let masks: Vec<u128> = flats.iter().map(|f| mask_of(&f.members)).collect();
    let by_mask = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();

    let mut moebius = vec![0i64; flats.len()];
    moebius[0] = 1;
    for x in 1..flats.len() {
        let below: i64 = (0..x)
            .filter(|&y| masks[y] & !masks[x] == 0 && masks[y] != masks[x])
            .map(|y| moebius[y])
            .sum();
        moebius[x] = -below;
    }

    Ok(Lattice {
        dim: a.dim(),
        flats,
        masks,
        join_atom,
        by_mask,
        moebius,
    })
}

impl Lattice {
    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn flat(&self, i: usize) -> &Flat {
        &self.flats[i]
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// μ(bottom, x).
    pub fn moebius(&self, i: usize) -> i64 {
        self.moebius[i]
    }

    pub fn rank(&self, i: usize) -> usize {
        self.flats[i].rank()
    }

    pub fn top(&self) -> usize {
        self.flats.len() - 1
    }

    /// Number of flats of each rank, from rank 0.
    pub fn rank_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.rank(self.top()) + 1];
        for f in &self.flats {
            counts[f.rank()] += 1;
        }
        counts
    }

    /// `Σ_{rank X = k} μ(X)` for each rank `k`, i.e. the signed coefficients of χ.
    pub fn whitney_numbers(&self) -> Vec<i64> {
        let mut w = vec![0; self.rank(self.top()) + 1];
        for (i, f) in self.flats.iter().enumerate() {
            w[f.rank()] += self.moebius[i];
        }
        w
    }

    /// `x ≤ y`, i.e. `x ⊇ y` as subspaces.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.masks[x] & !self.masks[y] == 0
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        let missing = self.masks[y] & !self.masks[x];
        (0..MAX_MASK_BITS)
            .filter(|&h| missing >> h & 1 == 1)
            .fold(x, |cur, h| self.join_atom[cur][h])
    }

    /// Member sets of flats are closed, so the meet is their intersection.
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.by_mask[&(self.masks[x] & self.masks[y])]
    }

    pub fn index_of(&self, f: &Flat) -> Option<usize> {
        let i = *self.by_mask.get(&mask_of(&f.members))?;
        (self.flats[i] == *f).then_some(i)
    }

    fn is_modular_index(&self, x: usize) -> bool {
        let rx = self.rank(x);
        (0..self.len()).all(|y| {
            rx + self.rank(y) == self.rank(self.join(x, y)) + self.rank(self.meet(x, y))
        })
    }

    /// Lattice dump: one object per flat with rank, normals, members and μ.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.flats
                .iter()
                .enumerate()
                .map(|(i, f)| {
                    serde_json::json!({
                        "rank": f.rank(),
                        "normals": f.normals.iter()
                            .map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>())
                            .collect::<Vec<_>>(),
                        "members": f.members.iter().map(|m| m + 1).collect::<Vec<_>>(),
                        "moebius": self.moebius[i],
                    })
                })
                .collect(),
        )
    }
}

/// Characteristic polynomial with integer coefficients, `coeffs[k]` for `q^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharPoly {
    pub coeffs: Vec<i64>,
}

impl CharPoly {
    /// `q^(dim - len) * prod (q - e)`.
    pub fn from_roots(roots: &[i64], dim: usize) -> CharPoly {
        let mut coeffs = vec![0i64; dim + 1];
        let shift = dim - roots.len();
        coeffs[shift] = 1;
        for (deg, &e) in (shift..).zip(roots) {
            for k in (0..=deg + 1).rev() {
                let lower = if k > 0 { coeffs[k - 1] } else { 0 };
                coeffs[k] = lower - e * coeffs[k];
            }
        }
        CharPoly { coeffs }
    }

    pub fn eval(&self, q: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * q + c)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|&c| c != 0).unwrap_or(0)
    }

    /// Coefficients from the leading term down.
    pub fn descending(&self) -> Vec<i64> {
        self.coeffs[..=self.degree()].iter().rev().copied().collect()
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[k];
            if c == 0 {
                continue;
            }
            match (first, c < 0) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let a = c.unsigned_abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}*")?;
                    }
                    if k == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// χ(q) = Σ_X μ(X) q^{dim X}.
pub fn characteristic_polynomial(lat: &Lattice) -> CharPoly {
    let mut coeffs = vec![0i64; lat.dim + 1];
    for (i, f) in lat.flats.iter().enumerate() {
        coeffs[lat.dim - f.rank()] += lat.moebius[i];
    }
    CharPoly { coeffs }
}

/// `rank(x) + rank(y) = rank(x ∨ y) + rank(x ∧ y)` for every flat `y`.
pub fn is_modular(lat: &Lattice, x: &Flat) -> Result<bool> {
    let i = lat.index_of(x).ok_or(Error::FlatNotInLattice)?;
    Ok(lat.is_modular_index(i))
}

/// A maximal chain of modular flats `bottom = X_0 < X_1 < ... < top`,
/// as flat indices, found by depth-first search; `None` if there is none.
pub fn supersolvable_mchain(lat: &Lattice) -> Option<Vec<usize>> {
    let mut modular: Vec<Option<bool>> = vec![None; lat.len()];
    let mut dead = vec![false; lat.len()];
    let top = lat.top();

    fn dfs(
        lat: &Lattice,
        x: usize,
        top: usize,
        modular: &mut [Option<bool>],
        dead: &mut [bool],
        chain: &mut Vec<usize>,
    ) -> bool {
        if x == top {
            return true;
        }
        let r = lat.rank(x);
        for y in x + 1..lat.len() {
            if lat.rank(y) != r + 1 || !lat.leq(x, y) || dead[y] {
                continue;
            }
            let is_mod = *modular[y].get_or_insert_with(|| lat.is_modular_index(y));
            if !is_mod {
                continue;
            }
            chain.push(y);
            if dfs(lat, y, top, modular, dead, chain) {
                return true;
            }
            chain.pop();
            dead[y] = true;
        }
        false
    }

    let mut chain = vec![0];
    dfs(lat, 0, top, &mut modular, &mut dead, &mut chain).then_some(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::build_psi_arrangement;
    use crate::exact::{int, LinForm, Space};
    use crate::wgraph::{SetGraph, WeightSet};

    fn arr(space: Space, rows: &[&[i64]]) -> Arrangement {
        Arrangement::from_coeffs(space, rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn single_hyperplane() {
        let a = arr(Space::standard(1), &[&[1, 0]]);
        let lat = intersection_lattice(&a, &LatticeGuard::default()).unwrap();
        assert_eq!(lat.len(), 2);
        let chi = characteristic_polynomial(&lat);
        assert_eq!(chi.descending(), vec![1, -1, 0]);
        assert_eq!(chi.to_string(), "q^2 - q");
    }

    #[test]
    fn boolean_plane() {
        let a = arr(Space::standard(1), &[&[1, 0], &[0, 1]]);
        let lat = intersection_lattice(&a, &LatticeGuard::default()).unwrap();
        assert_eq!(lat.len(), 4);
        assert_eq!(lat.moebius(lat.top()), 1);
        assert_eq!(characteristic_polynomial(&lat), CharPoly::from_roots(&[1, 1], 2));
        assert!(supersolvable_mchain(&lat).is_some());
    }

    #[test]
    fn rank_two_modularity() {
        let a = arr(Space::plain(2), &[&[1, 0], &[0, 1], &[1, -1], &[1, 1]]);
        let lat = intersection_lattice(&a, &LatticeGuard::default()).unwrap();
        assert_eq!(lat.rank_counts(), vec![1, 4, 1]);
        for i in 0..lat.len() {
            assert!(is_modular(&lat, lat.flat(i)).unwrap());
        }
        let stranger = Flat {
            normals: vec![vec![int(1), int(2)]],
            members: BTreeSet::new(),
        };
        assert_eq!(is_modular(&lat, &stranger), Err(Error::FlatNotInLattice));
    }

    #[test]
    fn two_vertex_lattice() {
        let g = SetGraph::new(vec![WeightSet::ints(&[0]), WeightSet::ints(&[0, 1])], &[(0, 1)]).unwrap();
        let a = build_psi_arrangement(&g);
        let lat = intersection_lattice(&a, &LatticeGuard::default()).unwrap();
        assert_eq!(lat.rank_counts(), vec![1, 5, 6, 1]);
        assert_eq!(lat.whitney_numbers(), vec![1, -5, 8, -4]);
        assert_eq!(characteristic_polynomial(&lat), CharPoly::from_roots(&[1, 2, 2], 3));
        assert!(supersolvable_mchain(&lat).is_some());
    }

    #[test]
    fn valley_path_not_supersolvable() {
        let g = SetGraph::new(
            vec![WeightSet::ints(&[0, 1]), WeightSet::ints(&[0]), WeightSet::ints(&[0, 1])],
            &[(0, 1), (1, 2)],
        )
        .unwrap();
        let lat = intersection_lattice(&build_psi_arrangement(&g), &LatticeGuard::default()).unwrap();
        assert!(supersolvable_mchain(&lat).is_none());
    }

    #[test]
    fn guard_rejects_large_arrangements() {
        let s = Space::plain(3);
        let forms = (1..=21).map(|k| {
            LinForm::new(vec![int(1), int(k), int(k * k)], &s).unwrap()
        }).collect::<Vec<_>>();
        let a = Arrangement::new(s, forms);
        assert!(matches!(
            intersection_lattice(&a, &LatticeGuard::default()),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn char_poly_from_roots() {
        let c = CharPoly::from_roots(&[1, 2, 2], 3);
        assert_eq!(c.descending(), vec![1, -5, 8, -4]);
        assert_eq!(c.eval(-1), -18);
        assert_eq!(CharPoly::from_roots(&[1, 0], 2).descending(), vec![1, -1, 0]);
    }
}
