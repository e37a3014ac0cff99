//! Arbitrary-precision rational scalars and small combinatorial helpers.
//!
//! The coefficient field everywhere in this crate is the rationals; `Rat` is
//! kept in canonical reduced form (positive denominator, gcd one) by the
//! underlying `num` types.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Canonical reduced rational number with arbitrary-precision integer parts.
pub type Rat = num_rational::BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `n/d` (reduced on construction).
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Render as a decimal-free fraction string: `"p/q"`, or `"p"` when q is 1.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `"p"` or `"p/q"`.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    let mk_err = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().map_err(|_| mk_err())?;
            let d: BigInt = den.trim().parse().map_err(|_| mk_err())?;
            if d.is_zero() {
                return Err(mk_err());
            }
            Ok(Rat::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| mk_err())?;
            Ok(Rat::from_integer(n))
        }
    }
}

/// `n!` as a rational.
pub fn factorial(n: u32) -> Rat {
    let mut acc = BigInt::one();
    for i in 2..=n as u64 {
        acc *= BigInt::from(i);
    }
    Rat::from_integer(acc)
}

/// Generalized binomial coefficients `C(e, n)` for `n = 0..=order`.
///
/// `C(e, n) = e(e-1)...(e-n+1)/n!`, defined for any rational exponent `e`;
/// this is the coefficient list of the formal expansion of `(1+z)^e`.
pub fn binomial_series(exponent: &Rat, order: usize) -> Vec<Rat> {
    let mut out = Vec::with_capacity(order + 1);
    let mut acc = Rat::one();
    out.push(acc.clone());
    for n in 1..=order {
        let factor = (exponent - rat_int(n as i64 - 1)) / rat_int(n as i64);
        acc *= factor;
        out.push(acc.clone());
    }
    out
}

/// Integer gcd of two `i64` values, nonnegative.
pub fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// True when the rational is an integer.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// True when the rational is a nonnegative integer.
pub fn is_nonneg_integer(r: &Rat) -> bool {
    r.denom().is_one() && !r.numer().is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse_round_trip() {
        for s in ["0", "5", "-3", "2/7", "-11/4"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        assert_eq!(format_rat(&parse_rat("4/2").unwrap()), "2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn binomial_series_integer_exponents() {
        assert_eq!(
            binomial_series(&rat_int(1), 3),
            vec![rat_int(1), rat_int(1), rat_int(0), rat_int(0)]
        );
        assert_eq!(
            binomial_series(&rat_int(-1), 3),
            vec![rat_int(1), rat_int(-1), rat_int(1), rat_int(-1)]
        );
    }

    #[test]
    fn binomial_series_half() {
        // direct product formula: C(1/2,0..2) = 1, 1/2, -1/8
        assert_eq!(
            binomial_series(&rat(1, 2), 2),
            vec![rat_int(1), rat(1, 2), rat(-1, 8)]
        );
    }

    #[test]
    fn gcd_basics() {
        assert_eq!(gcd_i64(12, -18), 6);
        assert_eq!(gcd_i64(0, 5), 5);
        assert_eq!(gcd_i64(7, 0), 7);
    }
}
