//! Commutative classical engine (`q = 1`).
//!
//! Deliberately independent of the quantum path: coefficients are plain
//! rationals, the torus product is untwisted, and wall automorphisms act by
//! `e_beta -> e_beta f^<gamma,beta>`. Nothing here substitutes `v = 1` into
//! quantum intermediates, so classical-limit comparisons are a genuine
//! cross-check between two engines.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::lattice::LatticeVec;
use crate::rat::{binomial_series, factorial, rat, rat_int, Rat};
use crate::series::{Multidegree, SeriesContext};

pub type CKey = (Multidegree, LatticeVec);

/// Truncated commutative Laurent series over the rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct CSeries {
    ctx: Arc<SeriesContext>,
    terms: BTreeMap<CKey, Rat>,
}

impl CSeries {
    pub fn zero(ctx: &Arc<SeriesContext>) -> Self {
        Self {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Arc<SeriesContext>) -> Self {
        Self::monomial(ctx, Multidegree::UNIT, LatticeVec::ZERO, rat_int(1))
    }

    pub fn generator(ctx: &Arc<SeriesContext>, alpha: LatticeVec) -> Self {
        Self::monomial(ctx, Multidegree::UNIT, alpha, rat_int(1))
    }

    pub fn monomial(ctx: &Arc<SeriesContext>, md: Multidegree, alpha: LatticeVec, c: Rat) -> Self {
        let mut out = Self::zero(ctx);
        out.add_term(md, alpha, &c);
        out
    }

    pub fn ctx(&self) -> &Arc<SeriesContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CKey, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, md: Multidegree, alpha: LatticeVec) -> Rat {
        self.terms
            .get(&(md, alpha))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn constant_coeff(&self) -> Rat {
        self.coeff(Multidegree::UNIT, LatticeVec::ZERO)
    }

    pub fn add_term(&mut self, md: Multidegree, alpha: LatticeVec, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let key = (md, alpha);
        match self.terms.get_mut(&key) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for ((md, a), c) in &other.terms {
            self.add_term(*md, *a, c);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((md, a), c) in &other.terms {
            out.add_term(*md, *a, &-c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect();
        Self {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        let terms = self.terms.iter().map(|(k, c0)| (*k, c0 * c)).collect();
        Self {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.ctx);
        for ((md1, a1), c1) in &self.terms {
            for ((md2, a2), c2) in &other.terms {
                if let Some(md) = md1.mul(md2, &self.ctx) {
                    out.add_term(md, a1.add(a2), &(c1 * c2));
                }
            }
        }
        out
    }

    pub fn mul_term(&self, md: Multidegree, alpha: LatticeVec, c: &Rat) -> Self {
        let mut out = Self::zero(&self.ctx);
        for ((md1, a1), c1) in &self.terms {
            if let Some(m) = md1.mul(&md, &self.ctx) {
                out.add_term(m, a1.add(&alpha), &(c1 * c));
            }
        }
        out
    }

    pub fn in_max_ideal(&self) -> bool {
        self.terms.keys().all(|(md, _)| md.in_max_ideal())
    }

    fn nilpotency_bound(&self) -> u32 {
        self.ctx.max_total_degree() as u32 + self.ctx.n_nilpotent() as u32 + 1
    }

    pub fn exp(&self) -> Result<Self, Error> {
        if !self.constant_coeff().is_zero() {
            return Err(Error::NonZeroConstant);
        }
        if !self.in_max_ideal() {
            return Err(Error::NotInMaximalIdeal);
        }
        let mut out = Self::one(&self.ctx);
        let mut power = Self::one(&self.ctx);
        for n in 1..=self.nilpotency_bound() {
            power = power.mul(self);
            if power.is_zero() {
                break;
            }
            out.add_assign(&power.scale(&(Rat::one() / factorial(n))));
        }
        Ok(out)
    }

    pub fn log(&self) -> Result<Self, Error> {
        if !self.constant_coeff().is_one() {
            return Err(Error::NonUnitConstant);
        }
        let mut n = self.clone();
        n.add_term(Multidegree::UNIT, LatticeVec::ZERO, &rat_int(-1));
        if !n.in_max_ideal() {
            return Err(Error::NotInMaximalIdeal);
        }
        let mut out = Self::zero(&self.ctx);
        let mut power = Self::one(&self.ctx);
        for r in 1..=n.nilpotency_bound() {
            power = power.mul(&n);
            if power.is_zero() {
                break;
            }
            let sign = if r % 2 == 1 { 1 } else { -1 };
            out.add_assign(&power.scale(&rat(sign, r as i64)));
        }
        Ok(out)
    }

    /// `(1 + n)^e` for rational `e`.
    pub fn pow_rat(&self, e: &Rat) -> Result<Self, Error> {
        if !self.constant_coeff().is_one() {
            return Err(Error::NonUnitConstant);
        }
        let mut n = self.clone();
        n.add_term(Multidegree::UNIT, LatticeVec::ZERO, &rat_int(-1));
        if !n.in_max_ideal() {
            return Err(Error::NotInMaximalIdeal);
        }
        let coeffs = binomial_series(e, n.nilpotency_bound() as usize);
        let mut out = Self::one(&self.ctx);
        let mut power = Self::one(&self.ctx);
        for c in coeffs.iter().skip(1) {
            power = power.mul(&n);
            if power.is_zero() {
                break;
            }
            out.add_assign(&power.scale(c));
        }
        Ok(out)
    }

    /// Inverse of an element with a single unit-monomial term.
    pub fn invert(&self) -> Result<Self, Error> {
        let mut unit_part: Option<(LatticeVec, Rat)> = None;
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
        let m_inv = Self::monomial(&self.ctx, Multidegree::UNIT, alpha0.neg(), Rat::one() / c0);
        let one_plus_n = m_inv.mul(self);
        let inv = one_plus_n.pow_rat(&rat_int(-1))?;
        Ok(inv.mul(&m_inv))
    }

    pub fn pow_i64(&self, e: i64) -> Result<Self, Error> {
        if e == 0 {
            return Ok(Self::one(&self.ctx));
        }
        let base = if e > 0 { self.clone() } else { self.invert()? };
        let mut acc = base.clone();
        for _ in 1..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

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

    pub fn central_degree_trunc(&self, d: u16) -> Self {
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

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for ((md, alpha), c) in &self.terms {
            let mut piece = crate::rat::format_rat(c);
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

impl fmt::Debug for CSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A classical wall factor along a primitive direction.
#[derive(Clone, Debug)]
pub enum CWallFactor {
    /// `theta_(gamma, f)^e`: `e_beta -> e_beta f^(e <gamma, beta>)`.
    Function {
        gamma: LatticeVec,
        f: CSeries,
        exponent: Rat,
    },
    /// `exp(ad L)` for `L` supported on positive multiples of `gamma`.
    Log { gamma: LatticeVec, log: CSeries },
}

impl CWallFactor {
    pub fn gamma(&self) -> LatticeVec {
        match self {
            CWallFactor::Function { gamma, .. } => *gamma,
            CWallFactor::Log { gamma, .. } => *gamma,
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            CWallFactor::Function { gamma, f, exponent } => CWallFactor::Function {
                gamma: *gamma,
                f: f.clone(),
                exponent: -exponent.clone(),
            },
            CWallFactor::Log { gamma, log } => CWallFactor::Log {
                gamma: *gamma,
                log: log.neg(),
            },
        }
    }

    /// Multiplier for elements with `<gamma, beta> = kappa`.
    fn multiplier(&self, ctx: &Arc<SeriesContext>, kappa: i64) -> Result<CSeries, Error> {
        match self {
            CWallFactor::Function { f, exponent, .. } => {
                f.pow_rat(&(exponent.clone() * rat_int(kappa)))
            }
            CWallFactor::Log { gamma, log } => {
                // exp(ad L)(e_beta) = e_beta exp(sum_m m kappa c_m md e_(m gamma))
                let mut g = CSeries::zero(ctx);
                for ((md, alpha), c) in log.iter() {
                    let m = if gamma.a != 0 {
                        alpha.a / gamma.a
                    } else {
                        alpha.b / gamma.b
                    };
                    debug_assert_eq!(*alpha, gamma.scale(m));
                    g.add_term(*md, *alpha, &(c * rat_int(m * kappa)));
                }
                g.exp()
            }
        }
    }

    pub fn apply_memo(
        &self,
        elt: &CSeries,
        memo: &mut BTreeMap<i64, CSeries>,
    ) -> Result<CSeries, Error> {
        let ctx = elt.ctx().clone();
        let gamma = self.gamma();
        let mut out = CSeries::zero(&ctx);
        for ((md, alpha), c) in elt.iter() {
            let kappa = gamma.pairing(alpha);
            if !memo.contains_key(&kappa) {
                let m = self.multiplier(&ctx, kappa)?;
                memo.insert(kappa, m);
            }
            out.add_assign(&memo[&kappa].mul_term(*md, *alpha, c));
        }
        Ok(out)
    }

    pub fn apply(&self, elt: &CSeries) -> Result<CSeries, Error> {
        let mut memo = BTreeMap::new();
        self.apply_memo(elt, &mut memo)
    }
}

/// Apply a chain of classical factors; `factors[0]` acts first.
pub fn apply_chain_classical(factors: &[CWallFactor], elt: &CSeries) -> Result<CSeries, Error> {
    let mut acc = elt.clone();
    for f in factors {
        acc = f.apply(&acc)?;
    }
    Ok(acc)
}

/// Classical automorphism presented on the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CGenImages {
    pub x: CSeries,
    pub y: CSeries,
}

impl CGenImages {
    pub fn identity(ctx: &Arc<SeriesContext>) -> Self {
        Self {
            x: CSeries::generator(ctx, LatticeVec::X),
            y: CSeries::generator(ctx, LatticeVec::Y),
        }
    }

    pub fn is_identity(&self) -> bool {
        let ctx = self.x.ctx();
        self.x == CSeries::generator(ctx, LatticeVec::X)
            && self.y == CSeries::generator(ctx, LatticeVec::Y)
    }

    pub fn from_chain(factors: &[CWallFactor], ctx: &Arc<SeriesContext>) -> Result<Self, Error> {
        Ok(Self {
            x: apply_chain_classical(factors, &CSeries::generator(ctx, LatticeVec::X))?,
            y: apply_chain_classical(factors, &CSeries::generator(ctx, LatticeVec::Y))?,
        })
    }

    pub fn apply(&self, elt: &CSeries) -> Result<CSeries, Error> {
        let ctx = elt.ctx().clone();
        let mut x_pows: BTreeMap<i64, CSeries> = BTreeMap::new();
        let mut y_pows: BTreeMap<i64, CSeries> = BTreeMap::new();
        let mut out = CSeries::zero(&ctx);
        for ((md, alpha), c) in elt.iter() {
            let xa = match x_pows.get(&alpha.a) {
                Some(p) => p.clone(),
                None => {
                    let p = self.x.pow_i64(alpha.a)?;
                    x_pows.insert(alpha.a, p.clone());
                    p
                }
            };
            let yb = match y_pows.get(&alpha.b) {
                Some(p) => p.clone(),
                None => {
                    let p = self.y.pow_i64(alpha.b)?;
                    y_pows.insert(alpha.b, p.clone());
                    p
                }
            };
            out.add_assign(&xa.mul(&yb).mul_term(*md, LatticeVec::ZERO, c));
        }
        Ok(out)
    }

    pub fn compose(f: &Self, g: &Self) -> Result<Self, Error> {
        Ok(Self {
            x: f.apply(&g.x)?,
            y: f.apply(&g.y)?,
        })
    }
}

/// `1 + c m e_alpha` as a classical wall function.
pub fn unit_wall_function(
    ctx: &Arc<SeriesContext>,
    md: Multidegree,
    alpha: LatticeVec,
    c: Rat,
) -> CSeries {
    let mut f = CSeries::one(ctx);
    f.add_term(md, alpha, &c);
    f
}
