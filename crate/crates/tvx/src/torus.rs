//! Elements of the (truncated) quantum torus algebra.
//!
//! A [`TorusElement`] is a finite sum of terms `c * m * e_alpha` where `m` is
//! a scalar [`Multidegree`] monomial, `alpha` a lattice point, and `c` a
//! rational function in `v`. The product is bilinear over
//! `e_alpha e_beta = v^<alpha,beta> e_(alpha+beta)` with truncation applied
//! termwise, and the `q = 1` classical limit is handled by a separate
//! commutative engine (`crate::classical`), not by substitution here.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::laurent::QLaurent;
use crate::lattice::LatticeVec;
use crate::rat::{factorial, rat_int, Rat};
use crate::ratfn::QRational;
use crate::series::{Multidegree, SeriesContext};

pub type TermKey = (Multidegree, LatticeVec);

#[derive(Clone, PartialEq, Eq)]
pub struct TorusElement {
    ctx: Arc<SeriesContext>,
    terms: BTreeMap<TermKey, QRational>,
}

impl TorusElement {
    pub fn zero(ctx: &Arc<SeriesContext>) -> Self {
        Self {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Arc<SeriesContext>) -> Self {
        Self::monomial(ctx, Multidegree::UNIT, LatticeVec::ZERO, QRational::one())
    }

    pub fn generator(ctx: &Arc<SeriesContext>, alpha: LatticeVec) -> Self {
        Self::monomial(ctx, Multidegree::UNIT, alpha, QRational::one())
    }

    pub fn monomial(
        ctx: &Arc<SeriesContext>,
        md: Multidegree,
        alpha: LatticeVec,
        coeff: QRational,
    ) -> Self {
        let mut out = Self::zero(ctx);
        out.add_term(md, alpha, &coeff);
        out
    }

    pub fn ctx(&self) -> &Arc<SeriesContext> {
        &self.ctx
    }

    pub fn same_ctx(&self, other: &Self) -> bool {
        SeriesContext::same(&self.ctx, &other.ctx)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TermKey, &QRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, md: Multidegree, alpha: LatticeVec) -> QRational {
        self.terms
            .get(&(md, alpha))
            .cloned()
            .unwrap_or_else(QRational::zero)
    }

    pub fn constant_coeff(&self) -> QRational {
        self.coeff(Multidegree::UNIT, LatticeVec::ZERO)
    }

    pub fn add_term(&mut self, md: Multidegree, alpha: LatticeVec, c: &QRational) {
        if c.is_zero() {
            return;
        }
        let key = (md, alpha);
        match self.terms.get_mut(&key) {
            Some(existing) => {
                let sum = existing.add(c);
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        debug_assert!(self.same_ctx(other));
        for ((md, alpha), c) in &other.terms {
            self.add_term(*md, *alpha, c);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((md, alpha), c) in &other.terms {
            out.add_term(*md, *alpha, &c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (*k, c.neg()))
            .collect();
        Self {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &QRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, c0)| (*k, c0.mul(c)))
            .collect();
        Self {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    /// Twisted product, bilinear over `e_a e_b = v^<a,b> e_(a+b)`.
    pub fn twisted_mul(&self, other: &Self) -> Result<Self, Error> {
        if !self.same_ctx(other) {
            return Err(Error::ContextMismatch);
        }
        let mut out = Self::zero(&self.ctx);
        for ((md1, a1), c1) in &self.terms {
            for ((md2, a2), c2) in &other.terms {
                let Some(md) = md1.mul(md2, &self.ctx) else {
                    continue;
                };
                let twist = a1.pairing(a2);
                let mut c = c1.mul(c2);
                if twist != 0 {
                    c = c.mul_laurent(&QLaurent::v_pow(twist));
                }
                out.add_term(md, a1.add(a2), &c);
            }
        }
        Ok(out)
    }

    /// Multiply on the right by a single term.
    pub fn mul_term_right(&self, md: Multidegree, alpha: LatticeVec, c: &QRational) -> Self {
        let mut out = Self::zero(&self.ctx);
        for ((md1, a1), c1) in &self.terms {
            let Some(m) = md1.mul(&md, &self.ctx) else {
                continue;
            };
            let twist = a1.pairing(&alpha);
            let mut cc = c1.mul(c);
            if twist != 0 {
                cc = cc.mul_laurent(&QLaurent::v_pow(twist));
            }
            out.add_term(m, a1.add(&alpha), &cc);
        }
        out
    }

    /// Multiply on the left by a single term.
    pub fn mul_term_left(&self, md: Multidegree, alpha: LatticeVec, c: &QRational) -> Self {
        let mut out = Self::zero(&self.ctx);
        for ((md1, a1), c1) in &self.terms {
            let Some(m) = md.mul(md1, &self.ctx) else {
                continue;
            };
            let twist = alpha.pairing(a1);
            let mut cc = c.mul(c1);
            if twist != 0 {
                cc = cc.mul_laurent(&QLaurent::v_pow(twist));
            }
            out.add_term(m, alpha.add(a1), &cc);
        }
        out
    }

    /// Every scalar monomial lies in the maximal ideal.
    pub fn in_max_ideal(&self) -> bool {
        self.terms.keys().all(|(md, _)| md.in_max_ideal())
    }

    /// All lattice points in the support pairwise commute (collinear support).
    pub fn support_commutes(&self) -> bool {
        let pts: Vec<LatticeVec> = self.terms.keys().map(|(_, a)| *a).collect();
        pts.iter()
            .enumerate()
            .all(|(i, x)| pts[i + 1..].iter().all(|y| x.pairing(y) == 0))
    }

    fn nilpotency_bound(&self) -> u32 {
        self.ctx.max_total_degree() as u32 + self.ctx.n_nilpotent() as u32 + 1
    }

    /// Exponential of a commuting-support element with zero constant term.
    pub fn series_exp(&self) -> Result<Self, Error> {
        if !self.constant_coeff().is_zero() {
            return Err(Error::NonZeroConstant);
        }
        if !self.in_max_ideal() {
            return Err(Error::NotInMaximalIdeal);
        }
        if !self.support_commutes() {
            return Err(Error::NonConformingSupport);
        }
        let mut out = Self::one(&self.ctx);
        let mut power = Self::one(&self.ctx);
        for n in 1..=self.nilpotency_bound() {
            power = power.twisted_mul(self)?;
            if power.is_zero() {
                break;
            }
            let inv_fact = QRational::from_rat(Rat::from_integer(1.into()) / factorial(n));
            out.add_assign(&power.scale(&inv_fact));
        }
        Ok(out)
    }

    /// Logarithm of a commuting-support element with constant term 1.
    pub fn series_log(&self) -> Result<Self, Error> {
        let c0 = self.constant_coeff();
        if c0 != QRational::one() {
            return Err(Error::NonUnitConstant);
        }
        let mut n = self.clone();
        n.add_term(Multidegree::UNIT, LatticeVec::ZERO, &QRational::one().neg());
        if !n.in_max_ideal() {
            return Err(Error::NotInMaximalIdeal);
        }
        if !n.support_commutes() {
            return Err(Error::NonConformingSupport);
        }
        let mut out = Self::zero(&self.ctx);
        let mut power = Self::one(&self.ctx);
        for r in 1..=n.nilpotency_bound() {
            power = power.twisted_mul(&n)?;
            if power.is_zero() {
                break;
            }
            let sign = if r % 2 == 1 { 1 } else { -1 };
            let c = QRational::from_rat(crate::rat::rat(sign, r as i64));
            out.add_assign(&power.scale(&c));
        }
        Ok(out)
    }

    /// `(1 + n)^e` for rational `e`, where `self = 1 + n` has commuting
    /// support and `n` lies in the maximal ideal.
    pub fn pow_rat(&self, e: &Rat) -> Result<Self, Error> {
        let c0 = self.constant_coeff();
        if c0 != QRational::one() {
            return Err(Error::NonUnitConstant);
        }
        let mut n = self.clone();
        n.add_term(Multidegree::UNIT, LatticeVec::ZERO, &QRational::one().neg());
        if !n.in_max_ideal() {
            return Err(Error::NotInMaximalIdeal);
        }
        if !n.support_commutes() {
            return Err(Error::NonConformingSupport);
        }
        let bound = n.nilpotency_bound() as usize;
        let coeffs = crate::rat::binomial_series(e, bound);
        let mut out = Self::one(&self.ctx);
        let mut power = Self::one(&self.ctx);
        for c in coeffs.iter().skip(1) {
            power = power.twisted_mul(&n)?;
            if power.is_zero() {
                break;
            }
            out.add_assign(&power.scale(&QRational::from_rat(c.clone())));
        }
        Ok(out)
    }

    /// Integer power of an arbitrary invertible element whose lowest term is
    /// a single unit monomial (used for generator images `x * (1 + ...)`).
    pub fn pow_i64(&self, e: i64) -> Result<Self, Error> {
        if e == 0 {
            return Ok(Self::one(&self.ctx));
        }
        let base = if e > 0 { self.clone() } else { self.invert()? };
        let mut acc = base.clone();
        for _ in 1..e.unsigned_abs() {
            acc = acc.twisted_mul(&base)?;
        }
        Ok(acc)
    }

    /// Inverse of `m * (1 + n)` with `m` a single invertible monomial and `n`
    /// in the maximal ideal.
    pub fn invert(&self) -> Result<Self, Error> {
        // Split off the unit-scalar-monomial part; it must be one term.
        let mut unit_part: Option<(LatticeVec, QRational)> = None;
        for ((md, alpha), c) in &self.terms {
            if md.is_unit() {
                if unit_part.is_some() {
                    return Err(Error::NonConformingSupport);
                }
                unit_part = Some((*alpha, c.clone()));
            }
        }
        let Some((alpha0, c0)) = unit_part else {
            return Err(Error::NonUnitConstant);
        };
        // m^-1, using e_a e_(-a) = 1
        let m_inv = Self::monomial(
            &self.ctx,
            Multidegree::UNIT,
            alpha0.neg(),
            c0.inverse(),
        );
        // self = m (1 + n)  =>  1 + n = m^-1 self
        let one_plus_n = m_inv.twisted_mul(self)?;
        let mut n = one_plus_n.clone();
        n.add_term(Multidegree::UNIT, LatticeVec::ZERO, &QRational::one().neg());
        if !n.in_max_ideal() {
            return Err(Error::NotInMaximalIdeal);
        }
        // (1+n)^-1 = sum (-n)^r, then m^-1 on the right: self^-1 = (1+n)^-1 m^-1
        let mut inv = Self::one(&self.ctx);
        let mut power = Self::one(&self.ctx);
        for _ in 1..=n.nilpotency_bound() {
            power = power.twisted_mul(&n)?.neg();
            if power.is_zero() {
                break;
            }
            inv.add_assign(&power);
        }
        inv.twisted_mul(&m_inv)
    }

    /// The element `omega * log E((-v)^n sigma e_alpha)`, truncated:
    /// `-omega * sum_(r>=1) (-1)^((n+1) r) v^(n r) sigma^r e_(r alpha) / (r (v^r - v^-r))`.
    pub fn qdilog_log(
        ctx: &Arc<SeriesContext>,
        sigma: Multidegree,
        alpha: LatticeVec,
        n: i64,
        omega: &Rat,
    ) -> Result<Self, Error> {
        if !sigma.in_max_ideal() {
            return Err(Error::NotInMaximalIdeal);
        }
        let mut out = Self::zero(ctx);
        if omega == &Rat::from_integer(0.into()) {
            return Ok(out);
        }
        let mut sig_pow = sigma;
        let mut r: i64 = 1;
        loop {
            // coefficient  -omega (-1)^((n+1) r) v^(n r) / (r (v^r - v^-r))
            let sign = if ((n + 1) * r).rem_euclid(2) == 0 { 1 } else { -1 };
            let num = QLaurent::monomial(n * r, -omega.clone() * rat_int(sign));
            let den = QLaurent::v_pow(r).sub(&QLaurent::v_pow(-r)).scale(&rat_int(r));
            let c = QRational::new(num, den);
            out.add_term(sig_pow, alpha.scale(r), &c);
            r += 1;
            match sig_pow.mul(&sigma, ctx) {
                Some(next) => sig_pow = next,
                None => break,
            }
        }
        Ok(out)
    }

    /// Restrict to terms of a given total central degree.
    pub fn central_degree_part(&self, d: u16) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|((md, _), _)| md.total_central_degree(&self.ctx) == d)
            .map(|(k, c)| (*k, c.clone()))
            .collect();
        Self {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    /// Drop terms of total central degree above `d`.
    pub fn truncate_central_degree(&self, d: u16) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|((md, _), _)| md.total_central_degree(&self.ctx) <= d)
            .map(|(k, c)| (*k, c.clone()))
            .collect();
        Self {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    /// All coefficients clear to Laurent polynomials.
    pub fn try_clear(&self) -> Result<BTreeMap<TermKey, QLaurent>, Error> {
        let mut out = BTreeMap::new();
        for (k, c) in &self.terms {
            let p = c.try_into_laurent().ok_or_else(|| {
                Error::Clearing(format!("coefficient {c} does not clear"))
            })?;
            out.insert(*k, p);
        }
        Ok(out)
    }

    /// Substitute central variables into another context, summing exponents
    /// per target variable; terms overflowing the target truncation vanish.
    /// Requires a nilpotent-free element.
    pub fn remap_central(
        &self,
        target: &Arc<SeriesContext>,
        var_map: &[usize],
    ) -> Result<Self, Error> {
        assert_eq!(var_map.len(), self.ctx.n_central());
        let mut out = Self::zero(target);
        for ((md, alpha), c) in &self.terms {
            if md.nilpotent() != 0 {
                return Err(Error::NonConformingSupport);
            }
            let mut acc = Multidegree::UNIT;
            let mut alive = true;
            for (src, &dst) in var_map.iter().enumerate() {
                for _ in 0..md.central_exp(src) {
                    match acc.mul(&Multidegree::central_var(dst), target) {
                        Some(next) => acc = next,
                        None => {
                            alive = false;
                            break;
                        }
                    }
                }
                if !alive {
                    break;
                }
            }
            if alive {
                out.add_term(acc, *alpha, c);
            }
        }
        Ok(out)
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for ((md, alpha), c) in &self.terms {
            let mut piece = format!("({c})");
            if !md.is_unit() {
                piece.push('*');
                piece.push_str(&md.render(&self.ctx));
            }
            if !alpha.is_zero() {
                piece.push_str(&format!("*e{alpha}"));
            }
            parts.push(piece);
        }
        parts.join(" + ")
    }
}

impl fmt::Debug for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn ctx2(order: u8) -> Arc<SeriesContext> {
        SeriesContext::central_only(&["t1", "t2"], order)
    }

    #[test]
    fn twisted_product_on_generators() {
        let ctx = ctx2(3);
        let x = TorusElement::generator(&ctx, LatticeVec::X);
        let y = TorusElement::generator(&ctx, LatticeVec::Y);
        // x y = v e_(1,1)
        let xy = x.twisted_mul(&y).unwrap();
        assert_eq!(
            xy.coeff(Multidegree::UNIT, LatticeVec::new(1, 1))
                .try_into_laurent()
                .unwrap(),
            QLaurent::v_pow(1)
        );
        // y x = v^-1 e_(1,1), so x y = q y x
        let yx = y.twisted_mul(&x).unwrap();
        assert_eq!(
            yx.coeff(Multidegree::UNIT, LatticeVec::new(1, 1))
                .try_into_laurent()
                .unwrap(),
            QLaurent::v_pow(-1)
        );
        // e_a e_a = e_2a
        let xx = x.twisted_mul(&x).unwrap();
        assert_eq!(
            xx.coeff(Multidegree::UNIT, LatticeVec::new(2, 0)),
            QRational::one()
        );
    }

    #[test]
    fn commutator_bracket_identity() {
        // [e_a, e_b] = (v^<a,b> - v^-<a,b>) e_(a+b); dividing by q - 1 and
        // evaluating at q = 1 recovers <a,b> e_(a+b).
        let ctx = ctx2(2);
        for (a, b) in [
            (LatticeVec::new(1, 0), LatticeVec::new(0, 1)),
            (LatticeVec::new(2, 1), LatticeVec::new(1, 3)),
            (LatticeVec::new(1, 2), LatticeVec::new(1, 2)),
        ] {
            let ea = TorusElement::generator(&ctx, a);
            let eb = TorusElement::generator(&ctx, b);
            let lhs = ea.twisted_mul(&eb).unwrap().sub(&eb.twisted_mul(&ea).unwrap());
            let m = a.pairing(&b);
            let expected = QLaurent::v_pow(m).sub(&QLaurent::v_pow(-m));
            assert_eq!(
                lhs.coeff(Multidegree::UNIT, a.add(&b))
                    .try_into_laurent()
                    .unwrap(),
                expected
            );
            // (v^m - v^-m)/(v^2 - 1) at v = 1 equals m (exact Laurent division
            // by q - 1 = v^2 - 1 after multiplying by a unit)
            if m != 0 {
                let q_minus_1 = QLaurent::v_pow(2).sub(&QLaurent::one());
                // v^(m+1) - v^(1-m) is divisible by v^2 - 1
                let shifted = expected.mul(&QLaurent::v_pow(1));
                let ratio = shifted.try_div(&q_minus_1).unwrap();
                assert_eq!(ratio.eval_at_one(), rat_int(m));
            }
        }
    }

    #[test]
    fn exp_log_round_trip() {
        let ctx = ctx2(4);
        let t1 = Multidegree::central_var(0);
        let t2 = Multidegree::central_var(1);
        let gamma = LatticeVec::new(1, 1);
        let mut n = TorusElement::zero(&ctx);
        n.add_term(t1, gamma, &QRational::from_rat(rat(2, 3)));
        n.add_term(
            t1.mul(&t2, &ctx).unwrap(),
            gamma.scale(2),
            &QRational::from_rat(rat(-1, 2)),
        );
        let e = n.series_exp().unwrap();
        assert_eq!(e.series_log().unwrap(), n);

        // log(1 + t) mod t^4 = t - t^2/2 + t^3/3 (pure scalar series)
        let ctx1 = SeriesContext::central_only(&["t"], 3);
        let t = Multidegree::central_var(0);
        let mut one_plus_t = TorusElement::one(&ctx1);
        one_plus_t.add_term(t, LatticeVec::ZERO, &QRational::one());
        let l = one_plus_t.series_log().unwrap();
        assert_eq!(l.coeff(t, LatticeVec::ZERO), QRational::from_rat(rat_int(1)));
        assert_eq!(
            l.coeff(t.pow(2, &ctx1).unwrap(), LatticeVec::ZERO),
            QRational::from_rat(rat(-1, 2))
        );
        assert_eq!(
            l.coeff(t.pow(3, &ctx1).unwrap(), LatticeVec::ZERO),
            QRational::from_rat(rat(1, 3))
        );
        // exp(0) = 1
        assert_eq!(
            TorusElement::zero(&ctx1).series_exp().unwrap(),
            TorusElement::one(&ctx1)
        );
    }

    #[test]
    fn exp_rejects_bad_input() {
        let ctx = ctx2(2);
        let x = TorusElement::generator(&ctx, LatticeVec::X);
        assert!(matches!(x.series_exp(), Err(Error::NotInMaximalIdeal)));
        let bad = TorusElement::one(&ctx);
        assert!(matches!(bad.series_exp(), Err(Error::NonZeroConstant)));
    }

    #[test]
    fn qdilog_log_leading_term() {
        // n = 0, omega = 1: the r = 1 term is sigma e_alpha / (v - v^-1)
        let ctx = ctx2(3);
        let t1 = Multidegree::central_var(0);
        let alpha = LatticeVec::new(1, 0);
        let l = TorusElement::qdilog_log(&ctx, t1, alpha, 0, &rat_int(1)).unwrap();
        let lead = l.coeff(t1, alpha);
        let expected = QRational::new(
            QLaurent::one(),
            QLaurent::v_pow(1).sub(&QLaurent::v_pow(-1)),
        );
        assert_eq!(lead, expected);
        // omega = 0 gives 0
        let z = TorusElement::qdilog_log(&ctx, t1, alpha, 0, &rat_int(0)).unwrap();
        assert!(z.is_zero());
        // sigma must lie in the maximal ideal
        assert!(TorusElement::qdilog_log(&ctx, Multidegree::UNIT, alpha, 0, &rat_int(1)).is_err());
    }

    #[test]
    fn qdilog_exp_matches_q_exponential_series() {
        // exp(log E(sigma e_alpha)) must reproduce the defining series
        // E = sum_n (-v sigma e_alpha)^n / ((1-q)...(1-q^n)) term by term.
        let ctx = SeriesContext::central_only(&["s"], 4);
        let s = Multidegree::central_var(0);
        let alpha = LatticeVec::new(0, 1);
        let l = TorusElement::qdilog_log(&ctx, s, alpha, 0, &rat_int(1)).unwrap();
        let e = l.series_exp().unwrap();
        let mut poch = QRational::one(); // (1-q)(1-q^2)...(1-q^r)
        for r in 1..=4u32 {
            let factor = QRational::from_laurent(
                QLaurent::one().sub(&QLaurent::v_pow(2 * r as i64)),
            );
            poch = poch.mul(&factor);
            let sign = if r % 2 == 0 { 1 } else { -1 };
            let expected = QRational::from_laurent(QLaurent::monomial(r as i64, rat_int(sign)))
                .div(&poch);
            assert_eq!(
                e.coeff(s.pow(r, &ctx).unwrap(), alpha.scale(r as i64)),
                expected,
                "order {r}"
            );
        }
    }

    #[test]
    fn qdilog_shifted_pochhammer() {
        // E((-v)^n sigma e_alpha) for n = 1: coefficient of sigma is
        // -(-v)/(1-q) = v/(1-q)
        let ctx = SeriesContext::central_only(&["s"], 2);
        let s = Multidegree::central_var(0);
        let alpha = LatticeVec::new(1, 1);
        let l = TorusElement::qdilog_log(&ctx, s, alpha, 1, &rat_int(1)).unwrap();
        let e = l.series_exp().unwrap();
        let expected = QRational::new(
            QLaurent::v_pow(2), // -q^(1/2) * (-q^(1/2)) sigma = v^2 sigma
            QLaurent::one().sub(&QLaurent::v_pow(2)),
        );
        assert_eq!(e.coeff(s, alpha), expected);
    }

    #[test]
    fn invert_generator_series() {
        let ctx = ctx2(3);
        let t1 = Multidegree::central_var(0);
        let mut f = TorusElement::generator(&ctx, LatticeVec::X);
        f.add_term(t1, LatticeVec::new(1, 1), &QRational::from_rat(rat(1, 2)));
        let inv = f.invert().unwrap();
        let prod = f.twisted_mul(&inv).unwrap();
        assert_eq!(prod, TorusElement::one(&ctx));
        let prod2 = inv.twisted_mul(&f).unwrap();
        assert_eq!(prod2, TorusElement::one(&ctx));
    }
}
