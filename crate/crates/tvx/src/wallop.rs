//! Wall operators and torus automorphisms.
//!
//! A [`WallOperator`] is the symbolic form of a wall automorphism: a finite
//! spectrum of q-dilogarithm factors along one primitive direction. The
//! concrete form is [`GeneratorImages`], the images of the two torus
//! generators; conversion goes through the adjoint action, and products of
//! operators are evaluated by applying [`WallFactor`]s to elements in
//! sequence.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::lattice::LatticeVec;
use crate::laurent::QLaurent;
use crate::rat::{format_rat, parse_rat, rat_int, Rat};
use crate::ratfn::QRational;
use crate::series::{Multidegree, SeriesContext};
use crate::torus::TorusElement;

/// One factor `theta^((-1)^n omega) [(-v)^n sigma^k e_(k gamma)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub k: u32,
    pub n: i64,
    pub omega: Rat,
}

/// Product of dilogarithm factors along a primitive positive direction.
///
/// The stored `omega` values are exactly the exponents `Omega_n(k gamma)` of
/// the slope-ordered factorization; the alternating `(-1)^n` is applied when
/// the operator acts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallOperator {
    pub gamma: LatticeVec,
    /// Base scalar monomial; the `k`-th spectrum level carries `sigma^k`.
    pub sigma: Multidegree,
    pub spectrum: Vec<SpectrumEntry>,
}

impl WallOperator {
    pub fn new(gamma: LatticeVec, sigma: Multidegree, spectrum: Vec<SpectrumEntry>) -> Self {
        assert!(gamma.is_positive() && gamma.is_primitive());
        Self {
            gamma,
            sigma,
            spectrum,
        }
    }

    /// `theta^l [sigma e_gamma]`, the basic power operator.
    pub fn power_dilog(gamma: LatticeVec, sigma: Multidegree, l: i64) -> Self {
        Self::new(
            gamma,
            sigma,
            vec![SpectrumEntry {
                k: 1,
                n: 0,
                omega: rat_int(l),
            }],
        )
    }

    /// Inverse operator: every exponent negated.
    pub fn inverse(&self) -> Self {
        let spectrum = self
            .spectrum
            .iter()
            .map(|e| SpectrumEntry {
                k: e.k,
                n: e.n,
                omega: -e.omega.clone(),
            })
            .collect();
        Self {
            gamma: self.gamma,
            sigma: self.sigma,
            spectrum,
        }
    }

    /// Total logarithm `sum_m l_m sigma^m e_(m gamma)` of the operator.
    pub fn log(&self, ctx: &Arc<SeriesContext>) -> Result<TorusElement, Error> {
        let mut out = TorusElement::zero(ctx);
        for entry in &self.spectrum {
            let Some(sig_k) = self.sigma.pow(entry.k, ctx) else {
                continue;
            };
            let sign = if entry.n.rem_euclid(2) == 0 { 1 } else { -1 };
            let omega_eff = entry.omega.clone() * rat_int(sign);
            let term = TorusElement::qdilog_log(
                ctx,
                sig_k,
                self.gamma.scale(entry.k as i64),
                entry.n,
                &omega_eff,
            )?;
            out.add_assign(&term);
        }
        Ok(out)
    }

    /// The commuting multiplier series `M` with
    /// `theta(e_beta) = e_beta * M` for any `beta` with `<gamma, beta> = kappa`.
    ///
    /// This is the finite product of the adjoint-action formula: for each
    /// spectrum entry with `kappa_k = k kappa`,
    /// `prod_(j=0)^(kappa_k - 1) (1 + (-1)^n v^(2j+n+1) sigma^k e_(k gamma))^((-1)^n omega)`
    /// for positive `kappa_k`, and the reciprocal-exponent product over
    /// `j = kappa_k .. -1` for negative `kappa_k`.
    pub fn multiplier(&self, ctx: &Arc<SeriesContext>, kappa: i64) -> Result<TorusElement, Error> {
        let mut acc = TorusElement::one(ctx);
        if kappa == 0 {
            return Ok(acc);
        }
        for entry in &self.spectrum {
            let Some(sig_k) = self.sigma.pow(entry.k, ctx) else {
                continue;
            };
            let kappa_k = entry.k as i64 * kappa;
            let n_sign = if entry.n.rem_euclid(2) == 0 { 1 } else { -1 };
            let (j_range, exponent): (std::ops::Range<i64>, Rat) = if kappa_k > 0 {
                (0..kappa_k, entry.omega.clone() * rat_int(n_sign))
            } else {
                (kappa_k..0, -entry.omega.clone() * rat_int(n_sign))
            };
            for j in j_range {
                let coeff = QRational::from_laurent(QLaurent::monomial(
                    2 * j + entry.n + 1,
                    rat_int(n_sign),
                ));
                let mut base = TorusElement::one(ctx);
                base.add_term(sig_k, self.gamma.scale(entry.k as i64), &coeff);
                let factor = base.pow_rat(&exponent)?;
                acc = acc.twisted_mul(&factor)?;
            }
        }
        Ok(acc)
    }
}

impl WallOperator {
    /// Adjoint action on a lattice generator: `e_beta` times the multiplier
    /// of the finite product formula.
    pub fn adjoint_action(
        &self,
        ctx: &Arc<SeriesContext>,
        beta: LatticeVec,
    ) -> Result<TorusElement, Error> {
        let kappa = self.gamma.pairing(&beta);
        let m = self.multiplier(ctx, kappa)?;
        Ok(m.mul_term_left(Multidegree::UNIT, beta, &QRational::one()))
    }
}

/// JSON shape `{"gamma":[a,b],"spectrum":[{"k":..,"n":..,"omega":"p/q"}..]}`.
#[derive(Serialize, Deserialize)]
pub struct WallOperatorJson {
    pub gamma: [i64; 2],
    pub spectrum: Vec<SpectrumEntryJson>,
}

#[derive(Serialize, Deserialize)]
pub struct SpectrumEntryJson {
    pub k: u32,
    pub n: i64,
    pub omega: String,
}

impl WallOperator {
    pub fn to_json(&self) -> WallOperatorJson {
        WallOperatorJson {
            gamma: [self.gamma.a, self.gamma.b],
            spectrum: self
                .spectrum
                .iter()
                .map(|e| SpectrumEntryJson {
                    k: e.k,
                    n: e.n,
                    omega: format_rat(&e.omega),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &WallOperatorJson, sigma: Multidegree) -> Result<Self, Error> {
        let gamma = LatticeVec::new(j.gamma[0], j.gamma[1]);
        let spectrum = j
            .spectrum
            .iter()
            .map(|e| {
                Ok(SpectrumEntry {
                    k: e.k,
                    n: e.n,
                    omega: parse_rat(&e.omega)?,
                })
            })
            .collect::<Result<_, Error>>()?;
        Ok(Self::new(gamma, sigma, spectrum))
    }
}

/// One invertible factor of a slope-ordered product, in a form that can be
/// applied to arbitrary torus elements.
#[derive(Clone, Debug)]
pub enum WallFactor {
    /// Exact dilogarithm product form.
    Spectrum(WallOperator),
    /// `Ad exp(log)` for a log supported on positive multiples of `gamma`.
    Log {
        gamma: LatticeVec,
        log: TorusElement,
    },
}

impl WallFactor {
    pub fn gamma(&self) -> LatticeVec {
        match self {
            WallFactor::Spectrum(op) => op.gamma,
            WallFactor::Log { gamma, .. } => *gamma,
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            WallFactor::Spectrum(op) => WallFactor::Spectrum(op.inverse()),
            WallFactor::Log { gamma, log } => WallFactor::Log {
                gamma: *gamma,
                log: log.neg(),
            },
        }
    }

    /// Multiplier series for elements with `<gamma, beta> = kappa`.
    fn multiplier(&self, ctx: &Arc<SeriesContext>, kappa: i64) -> Result<TorusElement, Error> {
        match self {
            WallFactor::Spectrum(op) => op.multiplier(ctx, kappa),
            WallFactor::Log { gamma, log } => {
                if kappa == 0 {
                    return Ok(TorusElement::one(ctx));
                }
                // Ad exp(L)(e_beta) = e_beta exp(G) with
                // G = sum c (v^(m kappa) - v^(-m kappa)) v^(m kappa) md e_(m gamma)
                let mut g = TorusElement::zero(ctx);
                for ((md, alpha), c) in log.iter() {
                    let m = multiple_of(alpha, gamma);
                    let mk = m * kappa;
                    let bracket = QLaurent::v_pow(2 * mk).sub(&QLaurent::one());
                    // (v^mk - v^-mk) v^mk = v^(2mk) - 1
                    g.add_term(*md, *alpha, &c.mul_laurent(&bracket));
                }
                g.series_exp()
            }
        }
    }

    /// Apply the factor to an element, memoizing multipliers per pairing value.
    pub fn apply_memo(
        &self,
        elt: &TorusElement,
        memo: &mut BTreeMap<i64, TorusElement>,
    ) -> Result<TorusElement, Error> {
        let ctx = elt.ctx().clone();
        let gamma = self.gamma();
        let mut out = TorusElement::zero(&ctx);
        for ((md, alpha), c) in elt.iter() {
            let kappa = gamma.pairing(alpha);
            if !memo.contains_key(&kappa) {
                let m = self.multiplier(&ctx, kappa)?;
                memo.insert(kappa, m);
            }
            let mult = &memo[&kappa];
            out.add_assign(&mult.mul_term_left(*md, *alpha, c));
        }
        Ok(out)
    }

    pub fn apply(&self, elt: &TorusElement) -> Result<TorusElement, Error> {
        let mut memo = BTreeMap::new();
        self.apply_memo(elt, &mut memo)
    }
}

fn multiple_of(alpha: &LatticeVec, gamma: &LatticeVec) -> i64 {
    debug_assert!(!gamma.is_zero());
    let m = if gamma.a != 0 {
        alpha.a / gamma.a
    } else {
        alpha.b / gamma.b
    };
    debug_assert_eq!(alpha, &gamma.scale(m), "support not on multiples of gamma");
    m
}

/// Apply a chain of factors to an element; `factors[0]` acts first.
pub fn apply_chain(factors: &[WallFactor], elt: &TorusElement) -> Result<TorusElement, Error> {
    let mut acc = elt.clone();
    for f in factors {
        acc = f.apply(&acc)?;
    }
    Ok(acc)
}

/// A torus automorphism presented by its generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorImages {
    pub x: TorusElement,
    pub y: TorusElement,
}

impl GeneratorImages {
    pub fn identity(ctx: &Arc<SeriesContext>) -> Self {
        Self {
            x: TorusElement::generator(ctx, LatticeVec::X),
            y: TorusElement::generator(ctx, LatticeVec::Y),
        }
    }

    pub fn is_identity(&self) -> bool {
        let ctx = self.x.ctx();
        self.x == TorusElement::generator(ctx, LatticeVec::X)
            && self.y == TorusElement::generator(ctx, LatticeVec::Y)
    }

    /// Realize a wall operator concretely on the generators.
    pub fn from_wall_operator(
        op: &WallOperator,
        ctx: &Arc<SeriesContext>,
    ) -> Result<Self, Error> {
        let f = WallFactor::Spectrum(op.clone());
        Ok(Self {
            x: f.apply(&TorusElement::generator(ctx, LatticeVec::X))?,
            y: f.apply(&TorusElement::generator(ctx, LatticeVec::Y))?,
        })
    }

    /// Image of a chain of wall factors applied in order.
    pub fn from_chain(factors: &[WallFactor], ctx: &Arc<SeriesContext>) -> Result<Self, Error> {
        Ok(Self {
            x: apply_chain(factors, &TorusElement::generator(ctx, LatticeVec::X))?,
            y: apply_chain(factors, &TorusElement::generator(ctx, LatticeVec::Y))?,
        })
    }

    /// Extend multiplicatively to an arbitrary element.
    pub fn apply(&self, elt: &TorusElement) -> Result<TorusElement, Error> {
        let ctx = elt.ctx().clone();
        if !SeriesContext::same(&ctx, self.x.ctx()) {
            return Err(Error::ContextMismatch);
        }
        let mut x_pows: BTreeMap<i64, TorusElement> = BTreeMap::new();
        let mut y_pows: BTreeMap<i64, TorusElement> = BTreeMap::new();
        let mut out = TorusElement::zero(&ctx);
        for ((md, alpha), c) in elt.iter() {
            let xa = cached_pow(&mut x_pows, &self.x, alpha.a)?;
            let yb = cached_pow(&mut y_pows, &self.y, alpha.b)?;
            // e_(a,b) = v^(-ab) x^a y^b
            let mut img = xa.twisted_mul(&yb)?;
            let coeff = c.mul_laurent(&QLaurent::v_pow(-alpha.a * alpha.b));
            img = img.mul_term_left(*md, LatticeVec::ZERO, &coeff);
            out.add_assign(&img);
        }
        Ok(out)
    }

    /// Composition `(f o g)(z) = f(g(z))`, by substituting `f`'s generator
    /// images into `g`'s image series.
    pub fn compose(f: &Self, g: &Self) -> Result<Self, Error> {
        Ok(Self {
            x: f.apply(&g.x)?,
            y: f.apply(&g.y)?,
        })
    }
}

fn cached_pow(
    cache: &mut BTreeMap<i64, TorusElement>,
    base: &TorusElement,
    e: i64,
) -> Result<TorusElement, Error> {
    if let Some(p) = cache.get(&e) {
        return Ok(p.clone());
    }
    let p = base.pow_i64(e)?;
    cache.insert(e, p.clone());
    Ok(p)
}
