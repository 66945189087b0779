//! Exact scalars: rationals, cyclotomic numbers and formal θ-phases.

mod cyclotomic;
mod phase;
mod phased;

pub use cyclotomic::{cyclotomic_polynomial, Cyclotomic, CyclotomicField, DEFAULT_ORDER};
pub use phase::Phase;
pub use phased::{rational_theta_fold, PhasedScalar};

use num_bigint::BigInt;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `"p"`, `"-p/q"` and the like.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d == BigInt::from(0) {
        return None;
    }
    Some(Rational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        let q = rat(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        assert_eq!(rat(0, 7), rat(0, 1));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("1/5"), Some(rat(1, 5)));
        assert_eq!(parse_rational("-2"), Some(rat(-2, 1)));
        assert_eq!(parse_rational("3/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
