//! Exact rational arithmetic: polynomials, linear forms and row reduction.

mod linalg;
mod linform;
mod poly;
mod space;

pub use linalg::{in_row_space, rank, rref};
pub use linform::LinForm;
pub use poly::{det_triangular, MPoly, Monomial, NotDivisible, PolyDisplay};
pub use space::Space;

use num_bigint::BigInt;

/// Arbitrary-precision rational; always stored in lowest terms with positive denominator.
pub type Rat = num_rational::BigRational;

/// Shorthand for `num / den`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rat(s: &str) -> crate::Result<Rat> {
    let s = s.trim();
    let bad = || crate::Error::Parse(format!("invalid rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Rat::new(num, den))
}
