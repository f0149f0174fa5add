//! Exact scalars, matrices and sparse homogeneous polynomials.
//!
//! Everything here works over the rationals. There is no floating point
//! anywhere in the crate.

pub mod matrix;
pub mod poly;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use matrix::{kernel_basis, rank, rank_of_rows, Matrix};
pub use poly::{poly_det, HomPoly};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q == BigInt::from(0) {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("-4"), Some(int(-4)));
        assert_eq!(
            parse_rational("6/-4"),
            Some(Rational::new((-3).into(), 2.into()))
        );
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(parse_rational("2/4").unwrap().to_string(), "1/2");
    }
}
