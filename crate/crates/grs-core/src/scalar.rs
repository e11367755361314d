//! Exact scalar arithmetic.
//!
//! Every quantity in this crate — coordinates, Gram matrices, fiber residues,
//! isomorphism scales — is an exact rational number. No floating point is
//! used anywhere. The [`Scalar`] trait abstracts the exact field so the whole
//! library can be instantiated either with arbitrary-precision rationals
//! ([`num_rational::BigRational`], the default used by the CLI and the test
//! suite) or with machine-word rationals ([`num_rational::Rational64`], handy
//! for small experiments; beware of overflow on large systems).

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{Num, Signed, ToPrimitive, Zero};
use std::fmt::{Debug, Display};
use std::hash::Hash;

/// Exact ordered field used for all computations.
///
/// Beyond ring/field structure (`Num` + `Signed`) the algorithms need exact
/// integrality tests, floor, conversions from small integers and a canonical
/// `p/q` text form; that is all this trait adds.
pub trait Scalar:
    Num + Signed + Clone + Ord + Eq + Hash + Debug + Display + 'static
{
    /// The scalar representing the integer `n`.
    fn from_int(n: i64) -> Self;

    /// The scalar `numer/denom`. Panics if `denom == 0`.
    fn from_ratio(numer: i64, denom: i64) -> Self;

    /// Is this scalar an integer?
    fn is_integer(&self) -> bool;

    /// The value as an `i64` when it is an integer that fits; `None` otherwise.
    fn to_i64(&self) -> Option<i64>;

    /// Largest integer-valued scalar `≤ self`.
    fn floor_val(&self) -> Self;

    /// Parse a rational from `p` or `p/q` decimal text.
    fn parse_rat(s: &str) -> std::result::Result<Self, String>;

    /// Canonical text form: `p` for integers, `p/q` otherwise (`q > 0`).
    fn format_rat(&self) -> String;
}

impl Scalar for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn is_integer(&self) -> bool {
        BigRational::is_integer(self)
    }

    fn to_i64(&self) -> Option<i64> {
        if BigRational::is_integer(self) {
            self.numer().to_i64()
        } else {
            None
        }
    }

    fn floor_val(&self) -> Self {
        self.floor()
    }

    fn parse_rat(s: &str) -> std::result::Result<Self, String> {
        let (n, d) = split_ratio_text(s)?;
        let numer = BigInt::from_str_radix(&n, 10).map_err(|e| format!("bad numerator {n:?}: {e}"))?;
        let denom = BigInt::from_str_radix(&d, 10).map_err(|e| format!("bad denominator {d:?}: {e}"))?;
        if denom.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(BigRational::new(numer, denom))
    }

    fn format_rat(&self) -> String {
        if BigRational::is_integer(self) {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

impl Scalar for Rational64 {
    fn from_int(n: i64) -> Self {
        Rational64::from_integer(n)
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Rational64::new(numer, denom)
    }

    fn is_integer(&self) -> bool {
        Rational64::is_integer(self)
    }

    fn to_i64(&self) -> Option<i64> {
        if Rational64::is_integer(self) {
            Some(*self.numer())
        } else {
            None
        }
    }

    fn floor_val(&self) -> Self {
        self.floor()
    }

    fn parse_rat(s: &str) -> std::result::Result<Self, String> {
        let (n, d) = split_ratio_text(s)?;
        let numer: i64 = n.parse().map_err(|e| format!("bad numerator {n:?}: {e}"))?;
        let denom: i64 = d.parse().map_err(|e| format!("bad denominator {d:?}: {e}"))?;
        if denom == 0 {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(Rational64::new(numer, denom))
    }

    fn format_rat(&self) -> String {
        if Rational64::is_integer(self) {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

fn split_ratio_text(s: &str) -> std::result::Result<(String, String), String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty rational literal".to_string());
    }
    let mut parts = t.splitn(2, '/');
    let numer = parts.next().unwrap_or("").trim().to_string();
    let denom = parts.next().map(|d| d.trim().to_string()).unwrap_or_else(|| "1".to_string());
    if numer.is_empty() || denom.is_empty() {
        return Err(format!("malformed rational literal {s:?}"));
    }
    Ok((numer, denom))
}

/// `a` reduced into `[0, m)` modulo `m` (requires `m > 0`).
pub fn rat_mod<S: Scalar>(a: &S, m: &S) -> S {
    debug_assert!(m.is_positive());
    let q = (a.clone() / m.clone()).floor_val();
    a.clone() - m.clone() * q
}

/// Nonnegative gcd of two rationals: the largest `g ≥ 0` such that both
/// arguments are integer multiples of `g` (with `rat_gcd(0, 0) = 0`).
pub fn rat_gcd<S: Scalar>(a: &S, b: &S) -> S {
    let mut x = a.abs();
    let mut y = b.abs();
    while !y.is_zero() {
        let r = rat_mod(&x, &y);
        x = y;
        y = r;
    }
    x
}

/// Least common positive multiple of two rationals (`0` if either is `0`).
pub fn rat_lcm<S: Scalar>(a: &S, b: &S) -> S {
    if a.is_zero() || b.is_zero() {
        return S::zero();
    }
    let g = rat_gcd(a, b);
    (a.abs() / g) * b.abs()
}

/// Is `a` an integer multiple of `g`? With the convention that only `0` is a
/// multiple of `g = 0`.
pub fn is_multiple_of<S: Scalar>(a: &S, g: &S) -> bool {
    if g.is_zero() {
        a.is_zero()
    } else {
        (a.clone() / g.clone()).is_integer()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::from_ratio(n, d)
    }

    #[test]
    fn parse_and_format_round_trip() {
        for text in ["0", "5", "-3", "2/3", "-7/4", "10/5"] {
            let v = Q::parse_rat(text).unwrap();
            let back = Q::parse_rat(&v.format_rat()).unwrap();
            assert_eq!(v, back);
        }
        assert_eq!(Q::parse_rat("10/5").unwrap(), q(2, 1));
        assert_eq!(q(2, 1).format_rat(), "2");
        assert_eq!(q(-1, 2).format_rat(), "-1/2");
        assert!(Q::parse_rat("1/0").is_err());
        assert!(Q::parse_rat("").is_err());
        assert!(Q::parse_rat("x/2").is_err());
    }

    #[test]
    fn rational64_round_trip() {
        let v = Rational64::parse_rat("-6/4").unwrap();
        assert_eq!(v, Rational64::from_ratio(-3, 2));
        assert_eq!(v.format_rat(), "-3/2");
    }

    #[test]
    fn mod_into_half_open_interval() {
        assert_eq!(rat_mod(&q(7, 2), &q(2, 1)), q(3, 2));
        assert_eq!(rat_mod(&q(-1, 2), &q(1, 1)), q(1, 2));
        assert_eq!(rat_mod(&q(-4, 1), &q(2, 1)), q(0, 1));
        assert_eq!(rat_mod(&q(5, 3), &q(1, 3)), q(0, 1));
    }

    #[test]
    fn gcd_of_rationals() {
        assert_eq!(rat_gcd(&q(1, 2), &q(1, 3)), q(1, 6));
        assert_eq!(rat_gcd(&q(4, 1), &q(6, 1)), q(2, 1));
        assert_eq!(rat_gcd(&q(0, 1), &q(-5, 2)), q(5, 2));
        assert_eq!(rat_gcd(&q(0, 1), &q(0, 1)), q(0, 1));
        // every argument is an integer multiple of the gcd
        let g = rat_gcd(&q(3, 4), &q(5, 6));
        assert!((q(3, 4) / g.clone()).is_integer());
        assert!((q(5, 6) / g).is_integer());
    }

    #[test]
    fn lcm_and_multiples() {
        assert_eq!(rat_lcm(&q(1, 2), &q(1, 3)), q(1, 1));
        assert_eq!(rat_lcm(&q(2, 1), &q(3, 1)), q(6, 1));
        assert!(is_multiple_of(&q(3, 2), &q(1, 2)));
        assert!(!is_multiple_of(&q(1, 3), &q(1, 2)));
        assert!(is_multiple_of(&q(0, 1), &q(0, 1)));
        assert!(!is_multiple_of(&q(1, 1), &q(0, 1)));
    }
}
