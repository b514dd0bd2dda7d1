//! N-Ish arrangements and their affine equivalence with complete ψ-graphical ones.

use num_traits::{One, Zero};

use super::{build_psi_arrangement, Arrangement};
use crate::error::{Error, Result};
use crate::exact::{LinForm, Rat, Space};
use crate::wgraph::{SetGraph, WeightSet};

/// A permutation `w` (0-based) with `N[w[0]] ⊆ N[w[1]] ⊆ ...`, if one exists.
///
/// Sorting by cardinality (stable, lowest index first) gives the only
/// candidate chain up to ties between equal sets.
pub fn is_nest(n: &[WeightSet]) -> Option<Vec<usize>> {
    let mut w: Vec<usize> = (0..n.len()).collect();
    w.sort_by_key(|&i| n[i].len());
    w.windows(2)
        .all(|p| n[p[0]].is_subset(&n[p[1]]))
        .then_some(w)
}

/// `z`, `x_i - x_j` for `1 <= i < j <= ell`, `x0 - x_i - a z` for `a ∈ N_i`,
/// in variables `(z, x0, x1, ..., x_ell)`.
pub fn build_nish(n: &[WeightSet]) -> Arrangement {
    let ell = n.len();
    let space = Space::nish(ell);
    let dim = ell + 2;
    let form = |c: Vec<Rat>| LinForm::new(c, &space).expect("nonzero");
    let mut forms = vec![LinForm::coordinate(&space, 0)];
    for i in 1..=ell {
        for j in i + 1..=ell {
            let mut c = vec![Rat::zero(); dim];
            c[i + 1] = Rat::one();
            c[j + 1] = -Rat::one();
            forms.push(form(c));
        }
    }
    for (i, set) in n.iter().enumerate() {
        for a in set.iter() {
            let mut c = vec![Rat::zero(); dim];
            c[0] = -a.clone();
            c[1] = Rat::one();
            c[i + 2] = -Rat::one();
            forms.push(form(c));
        }
    }
    Arrangement::new(space, forms)
}

/// Applies `x_i ↦ x0 - x_i`, `x0 ↦ x0`, `z ↦ z` to `A_{G,ψ}` extended by an
/// unused `x0`, and compares the result with the N-Ish arrangement of `N_i = ψ(i)`.
pub fn affine_equiv_check(g: &SetGraph) -> Result<bool> {
    if !g.is_complete() {
        return Err(Error::NotComplete);
    }
    let ell = g.num_vertices();
    let a = build_psi_arrangement(g);
    let space = Space::nish(ell);
    let mapped = a.forms().iter().map(|f| {
        // f = c_z z + Σ c_i x_i  ↦  c_z z + (Σ c_i) x0 - Σ c_i x_i
        let c = f.coeffs();
        let mut out = vec![Rat::zero(); ell + 2];
        out[0] = c[0].clone();
        out[1] = c[1..].iter().fold(Rat::zero(), |acc, x| acc + x);
        for i in 1..=ell {
            out[i + 1] = -c[i].clone();
        }
        LinForm::new(out, &space).expect("invertible substitution keeps forms nonzero")
    }).collect::<Vec<_>>();
    let image = Arrangement::new(space, mapped);
    Ok(image.same_hyperplanes(&build_nish(g.weights())))
}
