//! Central arrangements as sets of normalized linear forms.

mod lattice;
mod nish;

pub use lattice::{
    characteristic_polynomial, intersection_lattice, is_modular, supersolvable_mchain, CharPoly,
    Flat, Lattice, LatticeGuard, GUARD_ENV_VAR,
};
pub use nish::{affine_equiv_check, build_nish, is_nest};

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{in_row_space, rref, LinForm, MPoly, Rat, Space};
use crate::wgraph::SetGraph;

/// A central arrangement: pairwise non-proportional linear forms in a fixed space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    space: Space,
    forms: Vec<LinForm>,
}

impl Arrangement {
    /// Keeps the first occurrence of each hyperplane.
    pub fn new(space: Space, forms: impl IntoIterator<Item = LinForm>) -> Self {
        let mut seen = BTreeSet::new();
        let forms = forms
            .into_iter()
            .filter(|f| {
                assert_eq!(f.nvars(), space.nvars(), "form lives in a different space");
                seen.insert(f.clone())
            })
            .collect();
        Arrangement { space, forms }
    }

    pub fn from_coeffs(space: Space, rows: Vec<Vec<Rat>>) -> Result<Self> {
        let forms = rows
            .into_iter()
            .map(|r| LinForm::new(r, &space))
            .collect::<Result<Vec<_>>>()?;
        Ok(Arrangement::new(space, forms))
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.nvars()
    }

    pub fn forms(&self) -> &[LinForm] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn form_set(&self) -> BTreeSet<LinForm> {
        self.forms.iter().cloned().collect()
    }

    pub fn index_of(&self, f: &LinForm) -> Option<usize> {
        self.forms.iter().position(|g| g == f)
    }

    /// Same space and same hyperplanes, in any order.
    pub fn same_hyperplanes(&self, other: &Arrangement) -> bool {
        self.space == other.space && self.form_set() == other.form_set()
    }

    /// Product of all forms.
    pub fn defining_polynomial(&self) -> MPoly {
        self.forms
            .iter()
            .fold(MPoly::one(self.dim()), |acc, f| &acc * &f.to_poly())
    }

    /// One form per line in display syntax.
    pub fn dump(&self) -> String {
        self.forms
            .iter()
            .map(|f| f.display(&self.space) + "\n")
            .collect()
    }

    pub fn displayed_forms(&self) -> Vec<String> {
        self.forms.iter().map(|f| f.display(&self.space)).collect()
    }

    /// Indices of hyperplanes through `point`.
    pub fn vanishing_at(&self, point: &[Rat]) -> BTreeSet<usize> {
        (0..self.len())
            .filter(|&i| self.forms[i].eval(point).is_zero())
            .collect()
    }

    fn check_index(&self, h: usize) -> Result<()> {
        if h < self.len() {
            Ok(())
        } else {
            Err(Error::InvalidHyperplane(h))
        }
    }

    /// Restrictions `H ∩ H0` of every other hyperplane, in coordinates on `H0`,
    /// listed per hyperplane (not deduplicated).
    ///
    /// `H0` is parametrized by eliminating the highest-index variable of its form.
    pub fn restrictions_onto(&self, h0: usize) -> Result<(Space, Vec<LinForm>)> {
        self.check_index(h0)?;
        let base = &self.forms[h0];
        let (pivot, lead) = base.pivot();
        let space = self.space.without(pivot);
        let restricted = self
            .forms
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != h0)
            .map(|(_, f)| {
                let factor = &f.coeffs()[pivot] / lead;
                let mut c: Vec<Rat> = f
                    .coeffs()
                    .iter()
                    .zip(base.coeffs())
                    .map(|(a, b)| a - &factor * b)
                    .collect();
                c.remove(pivot);
                LinForm::new(c, &space).expect("distinct hyperplanes restrict to hyperplanes")
            })
            .collect();
        Ok((space, restricted))
    }
}

/// The ψ-graphical arrangement: `z`, `x_i - x_j` per edge, `x_i - a z` per weight.
pub fn build_psi_arrangement(g: &SetGraph) -> Arrangement {
    let n = g.num_vertices();
    let space = Space::standard(n);
    let coord = |v: usize| LinForm::coordinate(&space, v);
    let mut forms = vec![coord(0)];
    for (u, v) in g.edges() {
        let mut c = vec![Rat::zero(); n + 1];
        c[u + 1] = crate::exact::int(1);
        c[v + 1] = crate::exact::int(-1);
        forms.push(LinForm::new(c, &space).expect("nonzero"));
    }
    for v in 0..n {
        for a in g.psi(v).iter() {
            let mut c = vec![Rat::zero(); n + 1];
            c[0] = -a.clone();
            c[v + 1] = crate::exact::int(1);
            forms.push(LinForm::new(c, &space).expect("nonzero"));
        }
    }
    Arrangement::new(space, forms)
}

/// Deletion `A \ {H0}` and restriction `{H ∩ H0}` (deduplicated).
pub fn triple_restrict(a: &Arrangement, h0: usize) -> Result<(Arrangement, Arrangement)> {
    let (space, restricted) = a.restrictions_onto(h0)?;
    let deleted = Arrangement::new(
        a.space.clone(),
        a.forms
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != h0)
            .map(|(_, f)| f.clone()),
    );
    Ok((deleted, Arrangement::new(space, restricted)))
}

/// The sub-arrangement of hyperplanes containing the flat.
pub fn localization(a: &Arrangement, x: &Flat) -> Result<Arrangement> {
    let check = Flat::spanned_by(a, &x.members)?;
    if check != *x {
        return Err(Error::FlatNotInLattice);
    }
    Ok(Arrangement::new(
        a.space.clone(),
        x.members.iter().map(|&i| a.forms[i].clone()),
    ))
}

/// Searches `v(t)` with `z = z_value`, `x_i = t` on `s` and `x_i = i + t`
/// elsewhere (1-based `i`), `t = 0, 1, ...`, for a point whose vanishing set is
/// exactly `claimed`. `t = 0` gives the unshifted vector.
pub fn localization_witness(
    a: &Arrangement,
    s: &BTreeSet<usize>,
    z_value: &Rat,
    claimed: &BTreeSet<usize>,
    max_shift: i64,
) -> Option<(Vec<Rat>, i64)> {
    let n = a.dim() - 1;
    (0..=max_shift).find_map(|t| {
        let mut p = vec![z_value.clone()];
        p.extend((0..n).map(|i| {
            let base = if s.contains(&i) { 0 } else { i as i64 + 1 };
            crate::exact::int(base + t)
        }));
        (a.vanishing_at(&p) == *claimed).then_some((p, t))
    })
}

/// Row-space membership of a form in the span of a flat's normals.
pub(crate) fn form_in_span(normals: &[Vec<Rat>], f: &LinForm) -> bool {
    in_row_space(normals, f.coeffs())
}

pub(crate) fn span_rref(forms: &[&LinForm]) -> Vec<Vec<Rat>> {
    let rows: Vec<Vec<Rat>> = forms.iter().map(|f| f.coeffs().to_vec()).collect();
    rref(&rows)
}
