//! Rational functions in `v` with canonical reduced representatives.
//!
//! Intermediate wall-crossing data (dilogarithm logs, Harder-Narasimhan
//! strata) carry denominators like `v^k - v^-k`; externally visible results
//! must clear back to Laurent polynomials, and [`QRational::try_into_laurent`]
//! enforces that. Canonical form: the denominator is a genuine polynomial in
//! `v` with nonzero constant term and monic leading coefficient, and the
//! fraction is reduced, so equality is syntactic.

use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::laurent::QLaurent;
use crate::rat::{rat_int, Rat};

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QRational {
    num: QLaurent,
    den: QLaurent,
}

impl QRational {
    pub fn zero() -> Self {
        Self {
            num: QLaurent::zero(),
            den: QLaurent::one(),
        }
    }

    pub fn one() -> Self {
        Self {
            num: QLaurent::one(),
            den: QLaurent::one(),
        }
    }

    pub fn from_laurent(p: QLaurent) -> Self {
        Self {
            num: p,
            den: QLaurent::one(),
        }
    }

    pub fn from_rat(c: Rat) -> Self {
        Self::from_laurent(QLaurent::from_rat(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat_int(n))
    }

    /// `num/den`, canonicalized. Panics on zero denominator.
    pub fn new(num: QLaurent, den: QLaurent) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut out = Self { num, den };
        out.reduce();
        out
    }

    pub fn numer(&self) -> &QLaurent {
        &self.num
    }

    pub fn denom(&self) -> &QLaurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// Clear to a Laurent polynomial; `None` when a true denominator remains.
    pub fn try_into_laurent(&self) -> Option<QLaurent> {
        if self.is_laurent() {
            Some(self.num.clone())
        } else {
            self.num.try_div(&self.den)
        }
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = QLaurent::one();
            return;
        }
        if !self.den.is_one() {
            let g = self.num.poly_gcd(&self.den);
            if !(g.is_one() && g.min_exp() == Some(0)) {
                // poly_gcd is monic with min exponent 0; dividing by it is exact.
                self.num = self.num.try_div(&g).expect("gcd divides numerator");
                self.den = self.den.try_div(&g).expect("gcd divides denominator");
            }
        }
        // Normalize: denominator becomes a polynomial with nonzero constant
        // term and monic leading coefficient; the unit moves into the numerator.
        let dmin = self.den.min_exp().unwrap();
        let lead = self.den.coeff(self.den.max_exp().unwrap());
        if dmin != 0 || !lead.is_one() {
            let inv = Rat::one() / lead;
            self.den.mul_monomial(-dmin, &inv);
            self.num.mul_monomial(-dmin, &inv);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            let mut num = self.num.clone();
            num.add_assign(&other.num);
            if self.den.is_one() {
                return Self {
                    num,
                    den: QLaurent::one(),
                };
            }
            return Self::new(num, self.den.clone());
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::new(num, self.den.mul(&other.den))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.den.is_one() && other.den.is_one() {
            return Self {
                num: self.num.mul(&other.num),
                den: QLaurent::one(),
            };
        }
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn mul_laurent(&self, p: &QLaurent) -> Self {
        if self.den.is_one() {
            return Self {
                num: self.num.mul(p),
                den: QLaurent::one(),
            };
        }
        Self::new(self.num.mul(p), self.den.clone())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inverse())
    }

    /// The substitution `v -> v^-1` extended to fractions.
    pub fn bar_involution(&self) -> Self {
        Self::new(self.num.bar_involution(), self.den.bar_involution())
    }
}

impl fmt::Display for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_laurent() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn v_minus_vinv() -> QLaurent {
        QLaurent::v_pow(1).sub(&QLaurent::v_pow(-1))
    }

    #[test]
    fn reduction_is_canonical() {
        // (v^3 - v^-3)/(v - v^-1) reduces to the Laurent polynomial [3]_q
        let a = QRational::new(
            QLaurent::v_pow(3).sub(&QLaurent::v_pow(-3)),
            v_minus_vinv(),
        );
        assert!(a.is_laurent());
        assert_eq!(a.try_into_laurent().unwrap(), QLaurent::q_number(3));

        // p/p == 1 syntactically
        let p = QLaurent::q_number(5).scale(&rat(7, 3));
        let one = QRational::new(p.clone(), p);
        assert_eq!(one, QRational::one());
    }

    #[test]
    fn field_ops() {
        // 1/(v - v^-1) + 1/(v^-1 - v) = 0
        let a = QRational::new(QLaurent::one(), v_minus_vinv());
        let b = QRational::new(QLaurent::one(), v_minus_vinv().neg());
        assert!(a.add(&b).is_zero());
        // a * a^-1 = 1
        assert_eq!(a.mul(&a.inverse()), QRational::one());
        // clearing failure is visible
        let c = QRational::new(QLaurent::v_pow(2).add(&QLaurent::one()), v_minus_vinv());
        assert!(c.try_into_laurent().is_none());
    }

    #[test]
    fn denominator_normalization() {
        // den = 2v^2 - 2  ->  monic poly v^2 - 1 with the scalar folded away
        let x = QRational::new(
            QLaurent::from_int(2),
            QLaurent::monomial(2, rat_int(2)).sub(&QLaurent::from_int(2)),
        );
        assert_eq!(x.denom().coeff(2), rat_int(1));
        assert_eq!(x.denom().min_exp(), Some(0));
    }
}
