//! Logarithmic derivations of ψ-graphical arrangements: the explicit basis
//! attached to a weighted elimination ordering, Saito's criterion, exponents
//! and the certified freeness decision.

mod derivation;

pub use derivation::Derivation;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use thiserror::Error as ThisError;

use crate::arrangement::{build_psi_arrangement, Arrangement};
use crate::error::{Error, Result};
use crate::exact::{det_triangular, LinForm, MPoly, Rat, Space};
use crate::wgraph::{
    contract_edge, find_weo, validate_weo, Obstruction, SetGraph, VertexOrdering, WeoOutcome,
};

/// Why a family of derivations fails Saito's criterion.
#[derive(Clone, Debug, PartialEq, Eq, ThisError)]
pub enum SaitoFailure {
    #[error("expected {expected} derivations, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error("degree sum {got} differs from defining polynomial degree {expected}")]
    DegreeMismatch { expected: u64, got: u64 },
    #[error("derivation {derivation} is not logarithmic along hyperplane {hyperplane}")]
    NonLogarithmic { derivation: usize, hyperplane: usize },
    #[error("coefficient matrix is not lower triangular at ({0}, {1})")]
    NotLowerTriangular(usize, usize),
    #[error("determinant is not a nonzero scalar multiple of the defining polynomial")]
    NotScalarMultiple,
}

/// `Σ_v v ∂/∂v` in variables `(z, x1, ..., x_ell)`.
pub fn euler_derivation(ell: usize) -> Derivation {
    Derivation::euler(ell + 1)
}

/// Positions `i >= k` reachable from position `k` by a path whose positions
/// strictly increase (0-based positions in the ordering).
pub fn c_geq<W: Clone>(g: &crate::wgraph::WeightedGraph<W>, o: &VertexOrdering, k: usize) -> BTreeSet<usize> {
    let n = o.len();
    let mut reach = vec![false; n];
    reach[k] = true;
    for i in k + 1..n {
        reach[i] = (k..i).any(|j| reach[j] && g.has_edge(o.vertex(j), o.vertex(i)));
    }
    (k..n).filter(|&i| reach[i]).collect()
}

/// Positions `j < k` whose vertex is adjacent to the vertex at position `k`.
pub fn e_lt<W: Clone>(g: &crate::wgraph::WeightedGraph<W>, o: &VertexOrdering, k: usize) -> BTreeSet<usize> {
    (0..k).filter(|&j| g.has_edge(o.vertex(j), o.vertex(k))).collect()
}

fn require_weo(g: &SetGraph, o: &VertexOrdering) -> Result<()> {
    if validate_weo(g, o) {
        Ok(())
    } else {
        Err(Error::NotWeo)
    }
}

/// `θ_k = Σ_{i ∈ C≥k} Π_{j ∈ E<k} (x_{v_j} - x_{v_i}) Π_{a ∈ ψ(v_k)} (x_{v_i} - a z) ∂/∂x_{v_i}`
/// for the 0-based position `k`.
pub fn build_theta_k(g: &SetGraph, o: &VertexOrdering, k: usize) -> Result<Derivation> {
    require_weo(g, o)?;
    if k >= o.len() {
        return Err(Error::VertexOutOfRange(k));
    }
    Ok(theta_k(g, o, k))
}

fn theta_k(g: &SetGraph, o: &VertexOrdering, k: usize) -> Derivation {
    let nvars = g.num_vertices() + 1;
    let x = |v: usize| MPoly::var(nvars, v + 1);
    let z = MPoly::var(nvars, 0);
    let earlier = e_lt(g, o, k);
    let weights = g.psi(o.vertex(k));
    let mut coeffs = vec![MPoly::zero(nvars); nvars];
    for i in c_geq(g, o, k) {
        let vi = o.vertex(i);
        let xi = x(vi);
        let mut c = MPoly::one(nvars);
        for &j in &earlier {
            c = &c * &(&x(o.vertex(j)) - &xi);
        }
        for a in weights.iter() {
            c = &c * &(&xi - &z.scale(a));
        }
        coeffs[vi + 1] = c;
    }
    Derivation::new(coeffs)
}

/// `θ_E, θ_1, ..., θ_ell` for a weighted elimination ordering.
pub fn weo_basis(g: &SetGraph, o: &VertexOrdering) -> Result<Vec<Derivation>> {
    require_weo(g, o)?;
    let mut basis = vec![euler_derivation(g.num_vertices())];
    basis.extend((0..o.len()).map(|k| theta_k(g, o, k)));
    Ok(basis)
}

/// Row order `(z, x_{v_1}, ..., x_{v_ell})` as variable indices.
pub fn saito_row_order(o: &VertexOrdering) -> Vec<usize> {
    std::iter::once(0).chain(o.as_slice().iter().map(|v| v + 1)).collect()
}

/// Per-hyperplane divisibility of `θ(α_H)` by `α_H^{m(H)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogReport {
    pub divisible: Vec<bool>,
}

impl LogReport {
    pub fn all(&self) -> bool {
        self.divisible.iter().all(|&d| d)
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.divisible.iter().position(|&d| !d)
    }
}

pub(crate) fn divisibility_report(theta: &Derivation, forms: &[LinForm], mult: &[u32]) -> LogReport {
    LogReport {
        divisible: forms
            .iter()
            .zip(mult)
            .map(|(f, &m)| theta.apply_form(f).divisible_by_power(f, m))
            .collect(),
    }
}

/// Whether `θ(α_H) ∈ α_H S` for every hyperplane.
pub fn is_logarithmic(theta: &Derivation, a: &Arrangement) -> Result<LogReport> {
    if theta.nvars() != a.dim() {
        return Err(Error::VariableCountMismatch(theta.nvars(), a.dim()));
    }
    Ok(divisibility_report(theta, a.forms(), &vec![1; a.len()]))
}

/// Checks a candidate basis for the multiarrangement `(forms, mult)` in
/// `nvars` variables, reading the coefficient matrix in `row_order`.
///
/// The determinant of a lower triangular matrix is the product of its
/// diagonal. Each diagonal entry is split into arrangement forms by trial
/// division; by unique factorization `det = c Q` exactly when the collected
/// factors are the hyperplanes with their multiplicities and the remaining
/// constant is `c`. This avoids expanding `Q`.
pub(crate) fn saito_core(
    nvars: usize,
    forms: &[LinForm],
    mult: &[u32],
    ders: &[Derivation],
    row_order: &[usize],
) -> Result<Rat, SaitoFailure> {
    if ders.len() != nvars || row_order.len() != nvars {
        return Err(SaitoFailure::WrongCount {
            expected: nvars,
            got: ders.len(),
        });
    }
    let expected: u64 = mult.iter().map(|&m| u64::from(m)).sum();
    if let Some(degs) = ders.iter().map(Derivation::degree).collect::<Option<Vec<_>>>() {
        let got: u64 = degs.iter().map(|&d| u64::from(d)).sum();
        if got != expected {
            return Err(SaitoFailure::DegreeMismatch { expected, got });
        }
    }
    for (i, d) in ders.iter().enumerate() {
        if let Some(h) = divisibility_report(d, forms, mult).first_failure() {
            return Err(SaitoFailure::NonLogarithmic {
                derivation: i,
                hyperplane: h,
            });
        }
    }
    for (r, &var) in row_order.iter().enumerate() {
        if let Some(c) = (r + 1..nvars).find(|&c| !ders[c].coeff(var).is_zero()) {
            return Err(SaitoFailure::NotLowerTriangular(r, c));
        }
    }
    let mut scalar = Rat::one();
    let mut found = vec![0u32; forms.len()];
    for (r, &var) in row_order.iter().enumerate() {
        let mut d = ders[r].coeff(var).clone();
        for (h, f) in forms.iter().enumerate() {
            while d.total_degree().is_some_and(|k| k > 0) {
                match d.divide_by_form(f) {
                    Ok(q) => {
                        d = q;
                        found[h] += 1;
                    }
                    Err(_) => break,
                }
            }
        }
        match d.as_constant() {
            Some(c) if !c.is_zero() => scalar *= c,
            _ => return Err(SaitoFailure::NotScalarMultiple),
        }
    }
    if found != mult {
        return Err(SaitoFailure::NotScalarMultiple);
    }
    Ok(scalar)
}

/// Expands `det` and `Q` and returns `c` with `det = c Q`; the slow
/// reference for [`saito_verify`].
pub fn saito_scalar_expanded(a: &Arrangement, ders: &[Derivation], row_order: &[usize]) -> Result<Rat> {
    let matrix: Vec<Vec<MPoly>> = row_order
        .iter()
        .map(|&var| ders.iter().map(|d| d.coeff(var).clone()).collect())
        .collect();
    det_triangular(&matrix)?
        .scalar_ratio(&a.defining_polynomial())
        .filter(|c| !c.is_zero())
        .ok_or_else(|| Error::Verification("determinant is not a nonzero multiple of Q".into()))
}

/// Saito's criterion for `ell + 1` derivations whose coefficient matrix is
/// lower triangular in `row_order`: returns the nonzero `c` with `det = c Q(A)`.
pub fn saito_verify(a: &Arrangement, ders: &[Derivation], row_order: &[usize]) -> Result<Rat, SaitoFailure> {
    let mult = vec![1; a.len()];
    saito_core(a.dim(), a.forms(), &mult, ders, row_order)
}

/// `{1} ∪ {|E<k| + |ψ(v_k)|}`, sorted.
pub fn exponents_formula(g: &SetGraph, o: &VertexOrdering) -> Result<Vec<u32>> {
    require_weo(g, o)?;
    let mut exps: Vec<u32> = std::iter::once(1)
        .chain((0..o.len()).map(|k| (e_lt(g, o, k).len() + g.psi(o.vertex(k)).len()) as u32))
        .collect();
    exps.sort_unstable();
    Ok(exps)
}

/// Multiset inclusion `small ⊆ big`.
pub fn multiset_subset(small: &[u32], big: &[u32]) -> bool {
    let mut counts: BTreeMap<u32, i64> = BTreeMap::new();
    for &e in big {
        *counts.entry(e).or_default() += 1;
    }
    small.iter().all(|&e| {
        let c = counts.entry(e).or_default();
        *c -= 1;
        *c >= 0
    })
}

/// Exponents of the deletion and of the restriction along an edge hyperplane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    /// 0-based edge.
    pub edge: (usize, usize),
    pub exp_deleted: Vec<u32>,
    pub exp_restricted: Vec<u32>,
    /// Whether `exp_restricted` is a sub-multiset of `exp_deleted`.
    pub subset_holds: bool,
}

/// Addition-deletion audit for the hyperplane `x_u = x_v`.
///
/// If both the arrangement and its deletion were free, the restriction's
/// exponents would be contained in the deletion's. When `g` is not
/// WEO-admitting and `subset_holds` is false, that contradiction shows `A`
/// is not free. Errors unless both the edge-deleted and edge-contracted
/// graphs admit weighted elimination orderings.
pub fn addition_deletion_audit(g: &SetGraph, u: usize, v: usize) -> Result<AuditReport> {
    let deleted = g.remove_edge(u, v)?;
    let contracted = contract_edge(g, u, v)?;
    let exps = |h: &SetGraph, what: &str| match find_weo(h) {
        WeoOutcome::Weo(o) => exponents_formula(h, &o),
        WeoOutcome::Obstructed(_) => Err(Error::AuditInconclusive(format!(
            "{what} graph has no weighted elimination ordering"
        ))),
    };
    let exp_deleted = exps(&deleted, "edge-deleted")?;
    let exp_restricted = exps(&contracted, "edge-contracted")?;
    Ok(AuditReport {
        edge: (u.min(v), u.max(v)),
        subset_holds: multiset_subset(&exp_restricted, &exp_deleted),
        exp_deleted,
        exp_restricted,
    })
}

/// Outcome of the freeness decision, with its certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FreenessCertificate {
    Free {
        ordering: VertexOrdering,
        /// `θ_E, θ_1, ..., θ_ell`.
        basis: Vec<Derivation>,
        exponents: Vec<u32>,
        saito_scalar: Rat,
    },
    NotFree {
        obstruction: Obstruction,
        /// Addition-deletion contradiction on the obstruction, when conclusive.
        audit: Option<AuditReport>,
    },
}

impl FreenessCertificate {
    pub fn is_free(&self) -> bool {
        matches!(self, FreenessCertificate::Free { .. })
    }
}

/// Decides freeness of `A_{G,ψ}`; a free verdict is emitted only after its
/// basis passes Saito's criterion.
pub fn decide_freeness(g: &SetGraph) -> Result<FreenessCertificate> {
    match find_weo(g) {
        WeoOutcome::Weo(ordering) => {
            let basis = weo_basis(g, &ordering)?;
            let a = build_psi_arrangement(g);
            let saito_scalar = saito_verify(&a, &basis, &saito_row_order(&ordering))
                .map_err(|e| Error::Verification(e.to_string()))?;
            let exponents = exponents_formula(g, &ordering)?;
            Ok(FreenessCertificate::Free {
                ordering,
                basis,
                exponents,
                saito_scalar,
            })
        }
        WeoOutcome::Obstructed(obstruction) => {
            let audit = obstruction_audit(g, &obstruction);
            Ok(FreenessCertificate::NotFree { obstruction, audit })
        }
    }
}

/// Audits the last edge of a valley path inside the induced path itself.
fn obstruction_audit(g: &SetGraph, obstruction: &Obstruction) -> Option<AuditReport> {
    let Obstruction::ValleyPath(path) = obstruction else {
        return None;
    };
    let vs: BTreeSet<usize> = path.iter().copied().collect();
    let (sub, mapping) = crate::wgraph::induced_subgraph(g, &vs).ok()?;
    let local = |v: usize| mapping.iter().position(|&m| m == v).expect("path vertex");
    let k = path.len();
    let mut report = addition_deletion_audit(&sub, local(path[k - 2]), local(path[k - 1])).ok()?;
    if report.subset_holds {
        return None;
    }
    report.edge = (path[k - 2].min(path[k - 1]), path[k - 2].max(path[k - 1]));
    Some(report)
}

/// Variable names for a ψ-graphical arrangement on `ell` vertices.
pub fn psi_space(ell: usize) -> Space {
    Space::standard(ell)
}
