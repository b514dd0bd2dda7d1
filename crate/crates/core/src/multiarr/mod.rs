//! ψ-graphical multiarrangements over nonnegative integer weights.

use std::collections::BTreeMap;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exact::{LinForm, MPoly, Rat, Space};
use crate::logderiv::{saito_core, weo_basis, Derivation, SaitoFailure};
use crate::wgraph::{find_weo, validate_weo, IntWeightedGraph, Obstruction, SetGraph, VertexOrdering, WeightSet, WeoOutcome};

/// An arrangement with a multiplicity per hyperplane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiarrangement {
    arr: Arrangement,
    mult: Vec<u32>,
}

impl Multiarrangement {
    pub fn new(arr: Arrangement, mult: Vec<u32>) -> Result<Self> {
        if mult.len() != arr.len() {
            return Err(Error::VariableCountMismatch(mult.len(), arr.len()));
        }
        Ok(Multiarrangement { arr, mult })
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arr
    }

    pub fn space(&self) -> &Space {
        self.arr.space()
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.mult
    }

    pub fn multiplicity(&self, f: &LinForm) -> u32 {
        self.arr.index_of(f).map_or(0, |i| self.mult[i])
    }

    pub fn len(&self) -> usize {
        self.arr.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arr.is_empty()
    }

    /// `Σ m(H)`.
    pub fn degree(&self) -> u64 {
        self.mult.iter().map(|&m| u64::from(m)).sum()
    }

    /// `Π α_H^{m(H)}`.
    pub fn defining_polynomial(&self) -> MPoly {
        self.arr
            .forms()
            .iter()
            .zip(&self.mult)
            .fold(MPoly::one(self.arr.dim()), |acc, (f, &m)| &acc * &f.to_poly().pow(m))
    }

    /// Form to multiplicity, ignoring storage order.
    pub fn to_map(&self) -> BTreeMap<LinForm, u32> {
        self.arr.forms().iter().cloned().zip(self.mult.iter().copied()).collect()
    }

    /// Same space and same (form, multiplicity) pairs.
    pub fn same_as(&self, other: &Multiarrangement) -> bool {
        self.space() == other.space() && self.to_map() == other.to_map()
    }

    /// `[(form, m), ...]` in display syntax.
    pub fn displayed(&self) -> Vec<(String, u32)> {
        self.arr.displayed_forms().into_iter().zip(self.mult.iter().copied()).collect()
    }
}

/// `Q = Π (x_i - x_j) Π x_i^{ψ(i)}` in variables `x1..x_ell`; weight-0
/// coordinate hyperplanes are left out.
pub fn build_multi(g: &IntWeightedGraph) -> Multiarrangement {
    let space = Space::plain(g.num_vertices());
    let coord = |v: usize| LinForm::coordinate(&space, v);
    let mut forms = Vec::new();
    let mut mult = Vec::new();
    for (u, v) in g.edges() {
        let diff = coord(u).coeffs().iter().zip(coord(v).coeffs()).map(|(a, b)| a - b).collect();
        forms.push(LinForm::new(diff, &space).expect("distinct coordinates"));
        mult.push(1);
    }
    for v in 0..g.num_vertices() {
        if *g.psi(v) > 0 {
            forms.push(coord(v));
            mult.push(*g.psi(v));
        }
    }
    let arr = Arrangement::new(space.clone(), forms);
    Multiarrangement { arr, mult }
}

/// `ψ̃(i) = {1, ..., ψ(i)}`.
pub fn lift_weights(g: &IntWeightedGraph) -> SetGraph {
    g.map_weights(|&k| WeightSet::ints(&(1..=i64::from(k)).collect::<Vec<_>>()))
}

/// Restriction onto `H0` with multiplicity `m(X) = |{H ≠ H0 : H ∩ H0 = X}|`.
pub fn ziegler_restrict(a: &Arrangement, h0: usize) -> Result<Multiarrangement> {
    let (space, restricted) = a.restrictions_onto(h0)?;
    let mut forms: Vec<LinForm> = Vec::new();
    let mut mult: Vec<u32> = Vec::new();
    for f in restricted {
        match forms.iter().position(|g| *g == f) {
            Some(i) => mult[i] += 1,
            None => {
                forms.push(f);
                mult.push(1);
            }
        }
    }
    Multiarrangement::new(Arrangement::new(space, forms), mult)
}

fn require_lifted_weo(g: &IntWeightedGraph, o: &VertexOrdering) -> Result<SetGraph> {
    if o.len() != g.num_vertices() {
        return Err(Error::InvalidOrdering(format!(
            "ordering has {} vertices, graph has {}",
            o.len(),
            g.num_vertices()
        )));
    }
    let lifted = lift_weights(g);
    if validate_weo(&lifted, o) {
        Ok(lifted)
    } else {
        Err(Error::NotWeo)
    }
}

/// `θ_1|_{z=0}, ..., θ_ell|_{z=0}` of the lifted arrangement, in `x1..x_ell`.
pub fn multi_basis(g: &IntWeightedGraph, o: &VertexOrdering) -> Result<Vec<Derivation>> {
    let lifted = require_lifted_weo(g, o)?;
    Ok(weo_basis(&lifted, o)?
        .into_iter()
        .skip(1)
        .map(|d| d.restrict_to_zero(0))
        .collect())
}

/// Multi-Saito criterion with the coefficient matrix read in `row_order`;
/// returns the nonzero `c` with `det = c Q(A, m)`.
pub fn multi_saito_verify(
    m: &Multiarrangement,
    ders: &[Derivation],
    row_order: &[usize],
) -> Result<Rat, SaitoFailure> {
    saito_core(m.arr.dim(), m.arr.forms(), &m.mult, ders, row_order)
}

/// Freeness certificate for a ψ-graphical multiarrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultiCertificate {
    Free {
        ordering: VertexOrdering,
        multi: Multiarrangement,
        basis: Vec<Derivation>,
        exponents: Vec<u32>,
        saito_scalar: Rat,
    },
    NotFree {
        multi: Multiarrangement,
        obstruction: Obstruction,
    },
}

impl MultiCertificate {
    pub fn is_free(&self) -> bool {
        matches!(self, MultiCertificate::Free { .. })
    }

    pub fn multi(&self) -> &Multiarrangement {
        match self {
            MultiCertificate::Free { multi, .. } | MultiCertificate::NotFree { multi, .. } => multi,
        }
    }
}

/// Decides freeness of the multiarrangement of `g` through its lifted
/// weights; a free verdict is emitted only after multi-Saito passes.
pub fn decide_multi_freeness(g: &IntWeightedGraph) -> Result<MultiCertificate> {
    let multi = build_multi(g);
    match find_weo(&lift_weights(g)) {
        WeoOutcome::Weo(ordering) => {
            let basis = multi_basis(g, &ordering)?;
            let saito_scalar = multi_saito_verify(&multi, &basis, ordering.as_slice())
                .map_err(|e| Error::Verification(e.to_string()))?;
            let mut exponents: Vec<u32> = basis.iter().map(|d| d.degree().unwrap_or(0)).collect();
            exponents.sort_unstable();
            Ok(MultiCertificate::Free {
                ordering,
                multi,
                basis,
                exponents,
                saito_scalar,
            })
        }
        WeoOutcome::Obstructed(obstruction) => Ok(MultiCertificate::NotFree { multi, obstruction }),
    }
}
