use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{LinForm, Rat, Space};
use crate::error::{Error, Result};

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is
/// polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

/// Result of dividing a polynomial by a linear form that does not divide it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotDivisible {
    /// `p` with the form's pivot variable replaced by its kernel parametrization.
    pub remainder: MPoly,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn var(nvars: usize, var: usize) -> Self {
        assert!(var < nvars, "variable {var} out of range");
        let mut m = vec![0; nvars];
        m[var] = 1;
        Self::monomial(nvars, m, Rat::one())
    }

    pub fn monomial(nvars: usize, exps: Monomial, c: Rat) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MPoly { nvars, terms }
    }

    /// Builds a polynomial from terms, merging repeated monomials.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = MPoly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.len(), nvars);
            p.add_term(m, c);
        }
        p
    }

    /// The linear polynomial `sum_v coeffs[v] * v`.
    pub fn linear(coeffs: &[Rat]) -> Self {
        let n = coeffs.len();
        let mut p = MPoly::zero(n);
        for (v, c) in coeffs.iter().enumerate() {
            let mut m = vec![0; n];
            m[v] = 1;
            p.add_term(m, c.clone());
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &[u32]) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Returns the constant value if the polynomial has degree at most zero.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Largest total degree of a term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    /// Common total degree of all terms, if the polynomial is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.iter().sum::<u32>());
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    /// Whether variable `var` occurs in some term.
    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m[var] > 0)
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn checked_mul(&self, other: &MPoly) -> Result<MPoly> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch(self.nvars, other.nvars));
        }
        let mut out = MPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &MPoly) -> Result<MPoly> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch(self.nvars, other.nvars));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn product<'a>(nvars: usize, factors: impl IntoIterator<Item = &'a MPoly>) -> MPoly {
        factors
            .into_iter()
            .fold(MPoly::one(nvars), |acc, f| &acc * f)
    }

    /// Partial derivative with respect to `var`.
    pub fn derivative(&self, var: usize) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[var] == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm[var] -= 1;
            out.add_term(dm, c * Rat::from_integer(m[var].into()));
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.nvars {
            return Err(Error::VariableCountMismatch(self.nvars, point.len()));
        }
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Replaces variable `var` by the polynomial `value` (same variable count).
    pub fn substitute(&self, var: usize, value: &MPoly) -> MPoly {
        assert_eq!(value.nvars, self.nvars);
        let mut by_power: BTreeMap<u32, MPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let e = std::mem::replace(&mut rest[var], 0);
            by_power
                .entry(e)
                .or_insert_with(|| MPoly::zero(self.nvars))
                .add_term(rest, c.clone());
        }
        let mut out = MPoly::zero(self.nvars);
        for (e, coeff) in by_power {
            out = &out + &(&coeff * &value.pow(e));
        }
        out
    }

    /// Drops variable `var`, which must not occur in any term.
    pub fn remove_var(&self, var: usize) -> MPoly {
        assert!(!self.depends_on(var), "variable {var} still occurs");
        MPoly {
            nvars: self.nvars - 1,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut m = m.clone();
                    m.remove(var);
                    (m, c.clone())
                })
                .collect(),
        }
    }

    /// Inserts an unused variable at position `at`.
    pub fn insert_var(&self, at: usize) -> MPoly {
        MPoly {
            nvars: self.nvars + 1,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut m = m.clone();
                    m.insert(at, 0);
                    (m, c.clone())
                })
                .collect(),
        }
    }

    /// Exact division by a linear form.
    ///
    /// The form's pivot is its highest-index variable with a nonzero
    /// coefficient; `p` is divided by `x_pivot - r` with `r` the kernel
    /// parametrization of the pivot, via Horner's scheme in `x_pivot`.
    pub fn divide_by_form(&self, f: &LinForm) -> Result<MPoly, NotDivisible> {
        assert_eq!(f.nvars(), self.nvars, "variable count mismatch");
        let (pivot, lead) = f.pivot();
        let inv = lead.recip();
        // r = -(f - lead * x_pivot) / lead
        let mut rest = f.coeffs().to_vec();
        rest[pivot] = Rat::zero();
        let r = MPoly::linear(&rest).scale(&-inv.clone());

        let mut by_power: BTreeMap<u32, MPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let e = std::mem::replace(&mut rest[pivot], 0);
            by_power
                .entry(e)
                .or_insert_with(|| MPoly::zero(self.nvars))
                .add_term(rest, c.clone());
        }
        let top = by_power.keys().next_back().copied().unwrap_or(0);
        let a = |k: u32| {
            by_power
                .get(&k)
                .cloned()
                .unwrap_or_else(|| MPoly::zero(self.nvars))
        };
        // b[k] is the coefficient of x_pivot^k in the quotient.
        let mut quotient = MPoly::zero(self.nvars);
        let mut carry = MPoly::zero(self.nvars);
        for k in (1..=top).rev() {
            carry = &a(k) + &(&r * &carry);
            let mut xk = vec![0; self.nvars];
            xk[pivot] = k - 1;
            quotient = &quotient + &(&carry * &MPoly::monomial(self.nvars, xk, Rat::one()));
        }
        let remainder = &a(0) + &(&r * &carry);
        if remainder.is_zero() {
            Ok(quotient.scale(&inv))
        } else {
            Err(NotDivisible { remainder })
        }
    }

    /// Whether `f^power` divides `self`.
    pub fn divisible_by_power(&self, f: &LinForm, power: u32) -> bool {
        let mut cur = self.clone();
        for _ in 0..power {
            if cur.is_zero() {
                return true;
            }
            match cur.divide_by_form(f) {
                Ok(q) => cur = q,
                Err(_) => return false,
            }
        }
        true
    }

    /// The rational `c` with `self = c * other`, if one exists.
    pub fn scalar_ratio(&self, other: &MPoly) -> Option<Rat> {
        if other.is_zero() || self.nvars != other.nvars {
            return None;
        }
        let (m, c) = other.terms.iter().next()?;
        let ratio = self.coeff(m) / c;
        (other.scale(&ratio) == *self).then_some(ratio)
    }

    /// Terms sorted in graded-lex order with respect to the space's precedence.
    pub fn sorted_terms(&self, space: &Space) -> Vec<(&Monomial, &Rat)> {
        let prec = space.precedence();
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| grlex_desc(a, b, &prec));
        terms
    }

    pub fn display<'a>(&'a self, space: &'a Space) -> PolyDisplay<'a> {
        assert_eq!(space.nvars(), self.nvars);
        PolyDisplay { poly: self, space }
    }
}

fn grlex_desc(a: &[u32], b: &[u32], prec: &[usize]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    db.cmp(&da)
        .then_with(|| prec.iter().map(|&v| b[v].cmp(&a[v])).find(|o| o.is_ne()).unwrap_or(Ordering::Equal))
}

/// Formats a polynomial as e.g. `3*x1^2*x2 - 1/2*z`.
pub struct PolyDisplay<'a> {
    poly: &'a MPoly,
    space: &'a Space,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.poly.sorted_terms(self.space);
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let factors: Vec<String> = self
                .space
                .precedence()
                .into_iter()
                .filter(|&v| m[v] > 0)
                .map(|v| match m[v] {
                    1 => self.space.name(v).to_string(),
                    e => format!("{}^{e}", self.space.name(v)),
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Uses the standard `(z, x1, ..., x_ell)` names.
impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let space = Space::standard(self.nvars.saturating_sub(1));
        write!(f, "{}", self.display(&space))
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.checked_add(rhs).expect("variable count mismatch")
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.checked_add(&-rhs).expect("variable count mismatch")
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.checked_mul(rhs).expect("variable count mismatch")
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

/// Determinant of a lower-triangular square matrix: the product of its diagonal.
pub fn det_triangular(m: &[Vec<MPoly>]) -> Result<MPoly> {
    let n = m.len();
    let nvars = m
        .first()
        .and_then(|row| row.first())
        .map(MPoly::nvars)
        .ok_or_else(|| Error::Verification("empty matrix".into()))?;
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Verification("matrix is not square".into()));
        }
        if let Some(j) = (i + 1..n).find(|&j| !row[j].is_zero()) {
            return Err(Error::NotLowerTriangular(i, j));
        }
    }
    Ok(MPoly::product(nvars, (0..n).map(|i| &m[i][i])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn x(n: usize, i: usize) -> MPoly {
        MPoly::var(n, i)
    }

    #[test]
    fn difference_of_squares() {
        let (z, x1) = (x(2, 0), x(2, 1));
        let p = &(&x1 - &z) * &(&x1 + &z);
        assert_eq!(p, &(&x1 * &x1) - &(&z * &z));
        assert_eq!(&p * &MPoly::one(2), p);
    }

    #[test]
    fn hand_expanded_product() {
        let (z, x1, x2) = (x(3, 0), x(3, 1), x(3, 2));
        let two = MPoly::constant(3, rat(2, 1));
        let p = &(&x1 - &x2) * &(&x1 - &(&two * &z));
        // x1^2 - 2 z x1 - x1 x2 + 2 z x2
        let expected = MPoly::from_terms(
            3,
            [
                (vec![0, 2, 0], rat(1, 1)),
                (vec![1, 1, 0], rat(-2, 1)),
                (vec![0, 1, 1], rat(-1, 1)),
                (vec![1, 0, 1], rat(2, 1)),
            ],
        );
        assert_eq!(p, expected);
        assert_eq!(p.to_string(), "x1^2 - x1*x2 - 2*x1*z + 2*x2*z");
    }

    #[test]
    fn mismatched_variable_counts() {
        assert_eq!(
            x(2, 0).checked_mul(&x(3, 0)),
            Err(Error::VariableCountMismatch(2, 3))
        );
        assert!(x(2, 0).eval(&[rat(1, 1)]).is_err());
    }

    #[test]
    fn display_format() {
        let p = MPoly::from_terms(
            3,
            [(vec![0, 2, 1], rat(3, 1)), (vec![1, 0, 0], rat(-1, 2))],
        );
        assert_eq!(p.to_string(), "3*x1^2*x2 - 1/2*z");
        assert_eq!(MPoly::zero(2).to_string(), "0");
        assert_eq!((-MPoly::one(2)).to_string(), "-1");
        let plain = Space::plain(2);
        assert_eq!((&x(2, 0) - &x(2, 1)).display(&plain).to_string(), "x1 - x2");
    }

    #[test]
    fn evaluation() {
        let (z, x1, x2) = (x(3, 0), x(3, 1), x(3, 2));
        let d = &x1 - &x2;
        let pt = [rat(0, 1), rat(3, 1), rat(3, 1)];
        assert_eq!(d.eval(&pt).unwrap(), rat(0, 1));
        assert_eq!(z.eval(&[rat(1, 1), rat(7, 1), rat(8, 1)]).unwrap(), rat(1, 1));
        let p = &x1 * &(&x1 - &z);
        assert_eq!(p.eval(&[rat(2, 1), rat(5, 1), rat(0, 1)]).unwrap(), rat(15, 1));
    }

    #[test]
    fn division_examples() {
        let s = Space::standard(2);
        let (z, x1, x2) = (x(3, 0), x(3, 1), x(3, 2));
        let f = LinForm::new(vec![rat(0, 1), rat(1, 1), rat(-1, 1)], &s).unwrap();
        let p = &(&x1 * &x1) - &(&x2 * &x2);
        assert_eq!(p.divide_by_form(&f).unwrap(), &x1 + &x2);

        let s1 = Space::standard(1);
        let f = LinForm::new(vec![rat(-1, 1), rat(1, 1)], &s1).unwrap();
        let err = MPoly::var(2, 1).divide_by_form(&f).unwrap_err();
        assert_eq!(err.remainder, MPoly::var(2, 0));

        let (z1, x11) = (x(2, 0), x(2, 1));
        let p = &(&z1 * &x11) * &(&x11 - &z1);
        let q = p.divide_by_form(&f).unwrap();
        assert_eq!(q, &z1 * &x11);
        assert_eq!(&q * &f.to_poly(), p);
        let _ = z;
    }

    #[test]
    fn triangular_determinant() {
        let (z, x1) = (x(2, 0), x(2, 1));
        let m = vec![vec![z.clone(), MPoly::zero(2)], vec![z.clone(), x1.clone()]];
        assert_eq!(det_triangular(&m).unwrap(), &z * &x1);
        assert_eq!(det_triangular(&[vec![x1.clone()]]).unwrap(), x1);
        let bad = vec![vec![z.clone(), z.clone()], vec![z.clone(), z]];
        assert_eq!(det_triangular(&bad), Err(Error::NotLowerTriangular(0, 1)));
    }

    #[test]
    fn derivative_and_substitution() {
        let (z, x1) = (x(2, 0), x(2, 1));
        let p = &(&x1 * &x1) * &z;
        assert_eq!(p.derivative(1), (&x1 * &z).scale(&rat(2, 1)));
        assert_eq!(p.substitute(0, &MPoly::zero(2)), MPoly::zero(2));
        assert_eq!(p.substitute(0, &x1), x1.pow(3));
    }
}
