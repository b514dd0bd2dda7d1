use num_traits::{One, Zero};
use serde::Serialize;

use super::{MPoly, Rat, Space};
use crate::error::{Error, Result};

/// A nonzero linear form, normalized so that its leading coefficient is 1.
///
/// "Leading" follows the space's precedence: the first `x` variable with a
/// nonzero coefficient, or `z` when no `x` variable occurs. Two forms define
/// the same hyperplane iff they are equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinForm {
    coeffs: Vec<Rat>,
}

impl LinForm {
    pub fn new(coeffs: Vec<Rat>, space: &Space) -> Result<Self> {
        if coeffs.len() != space.nvars() {
            return Err(Error::VariableCountMismatch(coeffs.len(), space.nvars()));
        }
        let lead = space
            .precedence()
            .into_iter()
            .find(|&v| !coeffs[v].is_zero())
            .ok_or(Error::ZeroForm)?;
        let inv = coeffs[lead].recip();
        Ok(LinForm {
            coeffs: coeffs.into_iter().map(|c| c * &inv).collect(),
        })
    }

    /// The form `x_var` (variable index `var`).
    pub fn coordinate(space: &Space, var: usize) -> Self {
        let mut c = vec![Rat::zero(); space.nvars()];
        c[var] = Rat::one();
        LinForm { coeffs: c }
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Highest-index variable with a nonzero coefficient, with that coefficient.
    pub fn pivot(&self) -> (usize, &Rat) {
        self.coeffs
            .iter()
            .enumerate()
            .rev()
            .find(|(_, c)| !c.is_zero())
            .expect("linear forms are nonzero")
    }

    pub fn to_poly(&self) -> MPoly {
        MPoly::linear(&self.coeffs)
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.coeffs.len());
        self.coeffs
            .iter()
            .zip(point)
            .fold(Rat::zero(), |acc, (c, x)| acc + c * x)
    }

    pub fn display(&self, space: &Space) -> String {
        self.to_poly().display(space).to_string()
    }
}

impl Serialize for LinForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}
