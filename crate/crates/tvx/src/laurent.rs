//! Sparse Laurent polynomials in `v = q^(1/2)` over the rationals.
//!
//! All refined invariants in this crate live in `Q[v, v^-1]`. Exponents are
//! integers (powers of `v`), so `q^k` is exponent `2k` and nothing ever needs
//! half-integer bookkeeping.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rat::{format_rat, parse_rat, rat_int, Rat};

/// Sparse Laurent polynomial in `v`; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct QLaurent {
    terms: BTreeMap<i64, Rat>,
}

impl QLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, rat_int(1))
    }

    pub fn from_rat(c: Rat) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat_int(n))
    }

    /// `c * v^e`.
    pub fn monomial(e: i64, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// `v^e`.
    pub fn v_pow(e: i64) -> Self {
        Self::monomial(e, rat_int(1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map_or(false, |c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: i64) -> Rat {
        self.terms.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &Rat)> {
        self.terms.iter()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, e: i64, c: &Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            self.add_term(*e, c);
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            self.add_term(*e, &-c.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect();
        Self { terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }

    /// Multiply by `c * v^e` in place.
    pub fn mul_monomial(&mut self, e: i64, c: &Rat) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        let old = std::mem::take(&mut self.terms);
        for (e0, c0) in old {
            self.terms.insert(e0 + e, c0 * c);
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = self.clone();
        out.mul_monomial(0, c);
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// The `q`-number `[m]_q = (v^m - v^-m)/(v - v^-1)` expanded as
    /// `v^(m-1) + v^(m-3) + ... + v^(1-m)`; odd in `m`.
    pub fn q_number(m: i64) -> Self {
        let mut out = Self::zero();
        let (sign, m_abs) = if m >= 0 { (1, m) } else { (-1, -m) };
        let mut e = m_abs - 1;
        while e >= 1 - m_abs {
            out.add_term(e, &rat_int(sign));
            e -= 2;
        }
        out
    }

    /// The substitution `v -> v^-1` (exponent negation).
    pub fn bar_involution(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (-e, c.clone())).collect();
        Self { terms }
    }

    pub fn is_bar_symmetric(&self) -> bool {
        self.bar_involution() == *self
    }

    /// Sum of coefficients, i.e. the value at `v = 1` (the classical limit).
    pub fn eval_at_one(&self) -> Rat {
        let mut acc = Rat::zero();
        for c in self.terms.values() {
            acc += c;
        }
        acc
    }

    /// The substitution `v -> s * v^r` for `s = +-1`, `r != 0`.
    pub fn substitute_signed_power(&self, sign: i64, r: i64) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        debug_assert!(r != 0);
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let s = if sign == -1 && e.rem_euclid(2) == 1 {
                -c.clone()
            } else {
                c.clone()
            };
            out.add_term(e * r, &s);
        }
        out
    }

    /// Exact division; `None` when the divisor does not divide.
    pub fn try_div(&self, den: &Self) -> Option<Self> {
        assert!(!den.is_zero(), "division by zero");
        if self.is_zero() {
            return Some(Self::zero());
        }
        // Work from the top exponent down; Laurent shifts are units, so an
        // exact quotient has exponents in [min(self)-min(den), max(self)-max(den)].
        let quot_min = self.min_exp().unwrap() - den.min_exp().unwrap();
        let d_top = den.max_exp().unwrap();
        let d_lead = den.coeff(d_top);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while !rem.is_zero() {
            let r_top = rem.max_exp().unwrap();
            let e = r_top - d_top;
            if e < quot_min {
                return None;
            }
            let c = rem.coeff(r_top) / d_lead.clone();
            quot.add_term(e, &c);
            let mut sub = den.clone();
            sub.mul_monomial(e, &c);
            rem.sub_assign(&sub);
        }
        Some(quot)
    }

    /// `gcd` of the underlying polynomials (unit-normalized, monic).
    pub fn poly_gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalized_poly();
        }
        if other.is_zero() {
            return self.normalized_poly();
        }
        let mut a = self.normalized_poly();
        let mut b = other.normalized_poly();
        while !b.is_zero() {
            let r = a.poly_rem(&b);
            a = b;
            b = r.normalized_poly_or_zero();
        }
        a.normalized_poly()
    }

    /// Shift so the minimal exponent is zero, and divide by the leading
    /// coefficient (monic). Requires a nonzero polynomial.
    fn normalized_poly(&self) -> Self {
        assert!(!self.is_zero());
        let min = self.min_exp().unwrap();
        let lead = self.coeff(self.max_exp().unwrap());
        let mut out = self.clone();
        out.mul_monomial(-min, &(Rat::one() / lead));
        out
    }

    fn normalized_poly_or_zero(&self) -> Self {
        if self.is_zero() {
            Self::zero()
        } else {
            self.normalized_poly()
        }
    }

    /// Polynomial remainder of `self` by `den`, both viewed as polynomials
    /// after shifting their minimal exponents to zero.
    fn poly_rem(&self, den: &Self) -> Self {
        let a = self.normalized_poly_or_zero();
        let d = den.normalized_poly();
        let d_top = d.max_exp().unwrap();
        let mut rem = a;
        while let Some(r_top) = rem.max_exp() {
            if r_top < d_top {
                break;
            }
            let c = rem.coeff(r_top);
            let mut sub = d.clone();
            sub.mul_monomial(r_top - d_top, &c);
            rem.sub_assign(&sub);
        }
        rem
    }

    /// All coefficients are nonnegative integers.
    pub fn has_nonneg_integer_coeffs(&self) -> bool {
        self.terms
            .values()
            .all(|c| c.denom().is_one() && !c.numer().is_negative())
    }

    /// Canonical text form: terms in decreasing `v`-exponent.
    pub fn canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coeff_str = format_rat(&abs);
            match (*e, coeff_str.as_str()) {
                (0, _) => out.push_str(&coeff_str),
                (1, "1") => out.push('v'),
                (1, _) => {
                    out.push_str(&coeff_str);
                    out.push_str("*v");
                }
                (_, "1") => out.push_str(&format!("v^{e}")),
                _ => out.push_str(&format!("{coeff_str}*v^{e}")),
            }
        }
        out
    }

    /// Parse the canonical text form produced by [`Self::canonical_string`].
    pub fn parse(s: &str) -> Result<Self, crate::error::Error> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        // split into signed terms
        let normalized = s.replace(" - ", " + -");
        for raw in normalized.split(" + ") {
            let raw = raw.trim();
            if raw.is_empty() {
                continue;
            }
            let (sign, body) = match raw.strip_prefix('-') {
                Some(rest) => (-1i64, rest.trim()),
                None => (1i64, raw),
            };
            let (coeff_str, exp) = match body.find('v') {
                None => (body, 0i64),
                Some(pos) => {
                    let coeff_part = body[..pos].trim().trim_end_matches('*').trim();
                    let after = &body[pos + 1..];
                    let e = match after.strip_prefix('^') {
                        Some(e) => e
                            .parse::<i64>()
                            .map_err(|_| crate::error::Error::Parse(format!("bad exponent in `{raw}`")))?,
                        None if after.is_empty() => 1,
                        _ => return Err(crate::error::Error::Parse(format!("bad term `{raw}`"))),
                    };
                    (coeff_part, e)
                }
            };
            let coeff = if coeff_str.is_empty() {
                rat_int(1)
            } else {
                parse_rat(coeff_str)?
            };
            out.add_term(exp, &(coeff * rat_int(sign)));
        }
        Ok(out)
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

impl fmt::Debug for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

/// JSON encoding `{"terms":[{"v":e,"c":"p/q"}, ...]}`, decreasing exponents.
#[derive(Serialize, Deserialize)]
struct JsonTerm {
    v: i64,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct JsonQLaurent {
    terms: Vec<JsonTerm>,
}

impl Serialize for QLaurent {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| JsonTerm {
                v: *e,
                c: format_rat(c),
            })
            .collect();
        JsonQLaurent { terms }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QLaurent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = JsonQLaurent::deserialize(deserializer)?;
        let mut out = QLaurent::zero();
        for t in raw.terms {
            let c = parse_rat(&t.c).map_err(|e| D::Error::custom(e.to_string()))?;
            out.add_term(t.v, &c);
        }
        Ok(out)
    }
}
