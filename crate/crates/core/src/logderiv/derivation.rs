use serde_json::{Map, Value};

use crate::exact::{LinForm, MPoly, Space};

/// The derivation `Σ_v coeffs[v] ∂/∂v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    coeffs: Vec<MPoly>,
}

impl Derivation {
    pub fn new(coeffs: Vec<MPoly>) -> Self {
        if let Some(first) = coeffs.first() {
            assert!(coeffs.iter().all(|c| c.nvars() == first.nvars()));
            assert_eq!(first.nvars(), coeffs.len(), "one coefficient per variable");
        }
        Derivation { coeffs }
    }

    /// `Σ_v v ∂/∂v`.
    pub fn euler(nvars: usize) -> Self {
        Derivation::new((0..nvars).map(|v| MPoly::var(nvars, v)).collect())
    }

    /// `∂/∂var`.
    pub fn partial(nvars: usize, var: usize) -> Self {
        Derivation::new(
            (0..nvars)
                .map(|v| if v == var { MPoly::one(nvars) } else { MPoly::zero(nvars) })
                .collect(),
        )
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, var: usize) -> &MPoly {
        &self.coeffs[var]
    }

    pub fn coeffs(&self) -> &[MPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MPoly::is_zero)
    }

    /// Common degree of the nonzero coefficients, if homogeneous and nonzero.
    pub fn degree(&self) -> Option<u32> {
        let mut degs = self.coeffs.iter().filter(|c| !c.is_zero()).map(MPoly::homogeneous_degree);
        let d = degs.next()??;
        degs.all(|e| e == Some(d)).then_some(d)
    }

    pub fn apply(&self, f: &MPoly) -> MPoly {
        self.coeffs
            .iter()
            .enumerate()
            .fold(MPoly::zero(f.nvars()), |acc, (v, c)| &acc + &(c * &f.derivative(v)))
    }

    /// `θ(α) = Σ_v coeffs[v] α_v` for a linear form.
    pub fn apply_form(&self, f: &LinForm) -> MPoly {
        self.coeffs
            .iter()
            .zip(f.coeffs())
            .fold(MPoly::zero(self.nvars()), |acc, (c, a)| &acc + &c.scale(a))
    }

    /// Sets `var = 0` in every coefficient and drops `var` and its `∂/∂var` term.
    pub fn restrict_to_zero(&self, var: usize) -> Derivation {
        let zero = MPoly::zero(self.nvars());
        Derivation::new(
            self.coeffs
                .iter()
                .enumerate()
                .filter(|&(v, _)| v != var)
                .map(|(_, c)| c.substitute(var, &zero).remove_var(var))
                .collect(),
        )
    }

    /// `{"dz": "...", "dx1": "...", ...}`.
    pub fn to_json(&self, space: &Space) -> Value {
        let mut m = Map::new();
        for (v, c) in self.coeffs.iter().enumerate() {
            m.insert(format!("d{}", space.name(v)), Value::String(c.display(space).to_string()));
        }
        Value::Object(m)
    }

    /// e.g. `(x1^2 - x1*z)*d/dx1 + x2*d/dx2`; zero terms omitted.
    pub fn display(&self, space: &Space) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(v, c)| {
                let name = space.name(v);
                if c.as_constant().is_some_and(|k| num_traits::One::is_one(&k)) {
                    format!("d/d{name}")
                } else if c.num_terms() == 1 {
                    format!("{}*d/d{name}", c.display(space))
                } else {
                    format!("({})*d/d{name}", c.display(space))
                }
            })
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn euler_identity() {
        let s = Space::standard(2);
        let e = Derivation::euler(3);
        let f = LinForm::new(vec![int(0), int(1), int(-1)], &s).unwrap();
        assert_eq!(e.apply_form(&f), f.to_poly());
        let g = LinForm::new(vec![int(-2), int(0), int(1)], &s).unwrap();
        let q = &(&f.to_poly() * &g.to_poly()) * &MPoly::var(3, 0);
        assert_eq!(e.apply(&q), q.scale(&int(3)));
        assert_eq!(e.degree(), Some(1));
        assert_eq!(e.display(&s), "z*d/dz + x1*d/dx1 + x2*d/dx2");
    }

    #[test]
    fn restriction_drops_variable() {
        let z = MPoly::var(2, 0);
        let x = MPoly::var(2, 1);
        let d = Derivation::new(vec![MPoly::zero(2), &x * &(&x - &z)]);
        let r = d.restrict_to_zero(0);
        assert_eq!(r.coeffs(), &[MPoly::var(1, 0).pow(2)]);
    }
}
