//! Slope-ordered factorization of standard diagrams by direct composition.
//!
//! Given lines through the origin with attached operators, this engine finds
//! the unique collection of ray operators, one per primitive positive
//! direction, making the path-ordered product around the origin the identity.
//! It works order by order in the total central degree: compute the defect of
//! the current partial product against the target, read off the leading log,
//! and push the corrections into their slope slots. This is the direct
//! (composition) route; the scattering module reaches the same answer through
//! nilpotent perturbations, and the two are compared in the verification
//! suites.
//!
//! For lines supported on the two axes with operators `X` and `Y`, the ray
//! product it returns is exactly the slope-ordered expansion of the
//! commutator `Y^-1 X Y X^-1`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::classical::{unit_wall_function, CSeries, CWallFactor};
use crate::error::Error;
use crate::lattice::{LatticeVec, SlopeDescending};
use crate::laurent::QLaurent;
use crate::rat::{rat_int, Rat};
use crate::ratfn::QRational;
use crate::series::{Multidegree, SeriesContext};
use crate::torus::TorusElement;
use crate::wallop::{WallFactor, WallOperator};

/// A line of a standard diagram: a direction through the origin, the central
/// variable it deforms along, and its operator.
#[derive(Clone, Debug)]
pub struct StandardLine {
    pub direction: LatticeVec,
    pub var: usize,
    pub op: LineOp,
}

#[derive(Clone, Debug)]
pub enum LineOp {
    /// `theta^l [t e_direction]`.
    Power(i64),
    /// `prod_w theta[b_w t e_(w direction)]` with scalar weights `b_w`.
    Table(Vec<(u32, Rat)>),
}

impl StandardLine {
    pub fn power(direction: LatticeVec, var: usize, l: i64) -> Self {
        assert!(direction.is_positive() && direction.is_primitive());
        Self {
            direction,
            var,
            op: LineOp::Power(l),
        }
    }

    pub fn table(direction: LatticeVec, var: usize, weights: Vec<(u32, Rat)>) -> Self {
        assert!(direction.is_positive() && direction.is_primitive());
        Self {
            direction,
            var,
            op: LineOp::Table(weights),
        }
    }

    /// Logarithm of the line operator over the given context; the source of
    /// the `a'` coefficients used by the perturbation construction.
    pub fn log(&self, ctx: &Arc<SeriesContext>) -> Result<TorusElement, Error> {
        let t = Multidegree::central_var(self.var);
        match &self.op {
            LineOp::Power(l) => {
                TorusElement::qdilog_log(ctx, t, self.direction, 0, &rat_int(*l))
            }
            LineOp::Table(weights) => {
                let mut out = TorusElement::zero(ctx);
                for (w, b) in weights {
                    // log theta[b t e_(w alpha)] = sum_r (-1)^(r-1) b^r t^r
                    //   e_(r w alpha) / (r (v^r - v^-r))
                    let mut b_pow = b.clone();
                    let mut t_pow = t;
                    let mut r: i64 = 1;
                    loop {
                        let sign = if r % 2 == 1 { 1 } else { -1 };
                        let den = QLaurent::v_pow(r)
                            .sub(&QLaurent::v_pow(-r))
                            .scale(&rat_int(r));
                        let c = QRational::new(
                            QLaurent::from_rat(b_pow.clone() * rat_int(sign)),
                            den,
                        );
                        out.add_term(t_pow, self.direction.scale(r * *w as i64), &c);
                        r += 1;
                        match t_pow.mul(&t, ctx) {
                            Some(next) => t_pow = next,
                            None => break,
                        }
                        b_pow *= b;
                    }
                }
                Ok(out)
            }
        }
    }

    /// The line operator as an applicable quantum factor.
    pub fn factor(&self, ctx: &Arc<SeriesContext>) -> Result<WallFactor, Error> {
        let t = Multidegree::central_var(self.var);
        match &self.op {
            LineOp::Power(l) => Ok(WallFactor::Spectrum(WallOperator::power_dilog(
                self.direction,
                t,
                *l,
            ))),
            LineOp::Table(_) => Ok(WallFactor::Log {
                gamma: self.direction,
                log: self.log(ctx)?,
            }),
        }
    }

    /// The line operator as classical factors (one per weight).
    pub fn classical_factors(&self, ctx: &Arc<SeriesContext>) -> Vec<CWallFactor> {
        let t = Multidegree::central_var(self.var);
        match &self.op {
            LineOp::Power(l) => vec![CWallFactor::Function {
                gamma: self.direction,
                f: unit_wall_function(ctx, t, self.direction, rat_int(1)),
                exponent: rat_int(*l),
            }],
            LineOp::Table(weights) => weights
                .iter()
                .map(|(w, b)| CWallFactor::Function {
                    gamma: self.direction.scale(*w as i64),
                    f: unit_wall_function(
                        ctx,
                        t,
                        self.direction.scale(*w as i64),
                        b.clone(),
                    ),
                    exponent: rat_int(1),
                })
                .collect(),
        }
    }
}

/// Lines for the basic commutator `[theta^l1[t1 e_x], theta^l2[t2 e_y]]`.
pub fn commutator_lines(l1: i64, l2: i64) -> Vec<StandardLine> {
    vec![
        StandardLine::power(LatticeVec::X, 0, l1),
        StandardLine::power(LatticeVec::Y, 1, l2),
    ]
}

/// One variable per factor: `l1` unit lines along x, then `l2` along y.
pub fn split_power_lines(l1: usize, l2: usize) -> Vec<StandardLine> {
    let mut lines = Vec::new();
    for i in 0..l1 {
        lines.push(StandardLine::power(LatticeVec::X, i, 1));
    }
    for j in 0..l2 {
        lines.push(StandardLine::power(LatticeVec::Y, l1 + j, 1));
    }
    lines
}

/// Result of the central saturation: per-direction ray logs, slope-descending.
#[derive(Clone, Debug)]
pub struct CentralSaturation {
    pub ctx: Arc<SeriesContext>,
    pub rays: Vec<(LatticeVec, TorusElement)>,
}

impl CentralSaturation {
    pub fn ray_log(&self, gamma: LatticeVec) -> Option<&TorusElement> {
        self.rays.iter().find(|(g, _)| *g == gamma).map(|(_, l)| l)
    }
}

struct Slot<F, L> {
    lines: Vec<F>,
    ray_log: Option<L>,
}

fn boundary_or_interior(direction: LatticeVec) -> bool {
    direction == LatticeVec::X || direction == LatticeVec::Y
}

/// Saturate a standard diagram by direct composition in the quantum torus.
pub fn saturate_central(
    ctx: &Arc<SeriesContext>,
    lines: &[StandardLine],
) -> Result<CentralSaturation, Error> {
    // Slot map in slope-descending order, seeded with the input lines.
    let mut slots: BTreeMap<SlopeDescending, Slot<WallFactor, TorusElement>> = BTreeMap::new();
    for line in lines {
        let slot = slots
            .entry(SlopeDescending(line.direction))
            .or_insert_with(|| Slot {
                lines: Vec::new(),
                ray_log: None,
            });
        slot.lines.push(line.factor(ctx)?);
    }

    // Target T = X o prod_(interior, ascending slope) L o Y, applied as a
    // chain [Y-lines, interior lines slope-descending, X-lines].
    let mut t_chain: Vec<WallFactor> = Vec::new();
    for line in lines.iter().filter(|l| l.direction == LatticeVec::Y) {
        t_chain.push(line.factor(ctx)?);
    }
    let mut interior: Vec<&StandardLine> = lines
        .iter()
        .filter(|l| !boundary_or_interior(l.direction))
        .collect();
    interior.sort_by(|a, b| crate::lattice::cmp_slope_descending(&a.direction, &b.direction));
    for line in interior {
        t_chain.push(line.factor(ctx)?);
    }
    for line in lines.iter().filter(|l| l.direction == LatticeVec::X) {
        t_chain.push(line.factor(ctx)?);
    }

    let x_gen = TorusElement::generator(ctx, LatticeVec::X);
    let y_gen = TorusElement::generator(ctx, LatticeVec::Y);
    let t_x = apply_chain_trunc(&t_chain, &x_gen, u16::MAX)?;
    let t_y = apply_chain_trunc(&t_chain, &y_gen, u16::MAX)?;

    let max_deg = ctx.max_total_degree();
    for d in 1..=max_deg {
        let inv_chain = inverse_chain(&slots, ctx);
        let delta_x = apply_chain_trunc(&inv_chain, &t_x.truncate_central_degree(d), d)?;
        let delta_y = apply_chain_trunc(&inv_chain, &t_y.truncate_central_degree(d), d)?;
        let defect_x = defect_part(&delta_x, LatticeVec::X, d)?;
        let defect_y = defect_part(&delta_y, LatticeVec::Y, d)?;
        if defect_x.is_zero() && defect_y.is_zero() {
            continue;
        }
        let increments = solve_log_increment(&defect_x, &defect_y)?;
        for ((md, alpha), c) in increments {
            let (gamma, _) = alpha.primitive_part();
            let slot = slots
                .entry(SlopeDescending(gamma))
                .or_insert_with(|| Slot {
                    lines: Vec::new(),
                    ray_log: None,
                });
            let log = slot
                .ray_log
                .get_or_insert_with(|| TorusElement::zero(ctx));
            log.add_term(md, alpha, &c);
        }
    }

    // Final exactness check: the full product must reproduce the target.
    let inv_chain = inverse_chain(&slots, ctx);
    let check_x = apply_chain_trunc(&inv_chain, &t_x, u16::MAX)?;
    let check_y = apply_chain_trunc(&inv_chain, &t_y, u16::MAX)?;
    if check_x != x_gen || check_y != y_gen {
        return Err(Error::Verification(
            "central saturation defect did not vanish".into(),
        ));
    }

    let rays = slots
        .into_iter()
        .filter_map(|(k, slot)| slot.ray_log.map(|log| (k.0, log)))
        .filter(|(_, log)| !log.is_zero())
        .collect();
    Ok(CentralSaturation {
        ctx: ctx.clone(),
        rays,
    })
}

/// Application chain of `P^-1`: slope-descending slots, inverted factors.
fn inverse_chain(
    slots: &BTreeMap<SlopeDescending, Slot<WallFactor, TorusElement>>,
    _ctx: &Arc<SeriesContext>,
) -> Vec<WallFactor> {
    let mut chain = Vec::new();
    for (key, slot) in slots.iter() {
        if let Some(log) = &slot.ray_log {
            if !log.is_zero() {
                chain.push(WallFactor::Log {
                    gamma: key.0,
                    log: log.neg(),
                });
            }
        }
        for f in &slot.lines {
            chain.push(f.inverse());
        }
    }
    chain
}

fn apply_chain_trunc(
    factors: &[WallFactor],
    elt: &TorusElement,
    max_deg: u16,
) -> Result<TorusElement, Error> {
    let mut acc = elt.clone();
    for f in factors {
        acc = f.apply(&acc)?;
        if max_deg != u16::MAX {
            acc = acc.truncate_central_degree(max_deg);
        }
    }
    Ok(acc)
}

/// `e_beta^-1 * Delta(e_beta) - 1` restricted to total central degree `d`.
fn defect_part(
    delta: &TorusElement,
    beta: LatticeVec,
    d: u16,
) -> Result<TorusElement, Error> {
    let normalized = delta.mul_term_left(Multidegree::UNIT, beta.neg(), &QRational::one());
    let mut out = normalized.central_degree_part(d);
    out.add_term(Multidegree::UNIT, LatticeVec::ZERO, &QRational::one().neg());
    Ok(out.central_degree_part(d))
}

/// Solve `G_beta = defect` for the log increment: a term `c md e_alpha` of the
/// log contributes `c (v^(2 kappa) - 1) md e_alpha` to the defect against
/// `beta`, with `kappa = <alpha, beta>`.
fn solve_log_increment(
    defect_x: &TorusElement,
    defect_y: &TorusElement,
) -> Result<BTreeMap<(Multidegree, LatticeVec), QRational>, Error> {
    let mut out: BTreeMap<(Multidegree, LatticeVec), QRational> = BTreeMap::new();
    for ((md, alpha), c) in defect_x.iter() {
        if !alpha.is_positive() {
            return Err(Error::Verification(format!(
                "defect at non-positive direction {alpha}"
            )));
        }
        let kappa = alpha.pairing(&LatticeVec::X);
        if kappa == 0 {
            return Err(Error::Verification(format!(
                "x-defect along the x-axis at {alpha}"
            )));
        }
        let den = QLaurent::v_pow(2 * kappa).sub(&QLaurent::one());
        let c_log = c.mul(&QRational::new(QLaurent::one(), den));
        out.insert((*md, *alpha), c_log);
    }
    for ((md, alpha), c) in defect_y.iter() {
        if !alpha.is_positive() {
            return Err(Error::Verification(format!(
                "defect at non-positive direction {alpha}"
            )));
        }
        let kappa = alpha.pairing(&LatticeVec::Y);
        if kappa == 0 {
            return Err(Error::Verification(format!(
                "y-defect along the y-axis at {alpha}"
            )));
        }
        let den = QLaurent::v_pow(2 * kappa).sub(&QLaurent::one());
        let c_log = c.mul(&QRational::new(QLaurent::one(), den));
        match out.get(&(*md, *alpha)) {
            Some(existing) => {
                if existing != &c_log {
                    return Err(Error::Verification(format!(
                        "inconsistent defect solve at {alpha}: {existing} vs {c_log}"
                    )));
                }
            }
            None => {
                out.insert((*md, *alpha), c_log);
            }
        }
    }
    Ok(out)
}

/// Classical counterpart of [`CentralSaturation`].
#[derive(Clone, Debug)]
pub struct ClassicalSaturation {
    pub ctx: Arc<SeriesContext>,
    pub rays: Vec<(LatticeVec, CSeries)>,
}

impl ClassicalSaturation {
    pub fn ray_log(&self, gamma: LatticeVec) -> Option<&CSeries> {
        self.rays.iter().find(|(g, _)| *g == gamma).map(|(_, l)| l)
    }

    /// The wall function `f_gamma` of a ray: `log f = sum_m m c_m ...`.
    pub fn wall_function(&self, gamma: LatticeVec) -> Result<Option<CSeries>, Error> {
        let Some(log) = self.ray_log(gamma) else {
            return Ok(None);
        };
        let mut scaled = CSeries::zero(&self.ctx);
        for ((md, alpha), c) in log.iter() {
            let m = if gamma.a != 0 {
                alpha.a / gamma.a
            } else {
                alpha.b / gamma.b
            };
            scaled.add_term(*md, *alpha, &(c * rat_int(m)));
        }
        Ok(Some(scaled.exp()?))
    }
}

/// Saturate a standard diagram with the commutative classical engine.
pub fn saturate_central_classical(
    ctx: &Arc<SeriesContext>,
    lines: &[StandardLine],
) -> Result<ClassicalSaturation, Error> {
    let mut slots: BTreeMap<SlopeDescending, Slot<CWallFactor, CSeries>> = BTreeMap::new();
    for line in lines {
        let slot = slots
            .entry(SlopeDescending(line.direction))
            .or_insert_with(|| Slot {
                lines: Vec::new(),
                ray_log: None,
            });
        slot.lines.extend(line.classical_factors(ctx));
    }

    let mut t_chain: Vec<CWallFactor> = Vec::new();
    for line in lines.iter().filter(|l| l.direction == LatticeVec::Y) {
        t_chain.extend(line.classical_factors(ctx));
    }
    let mut interior: Vec<&StandardLine> = lines
        .iter()
        .filter(|l| !boundary_or_interior(l.direction))
        .collect();
    interior.sort_by(|a, b| crate::lattice::cmp_slope_descending(&a.direction, &b.direction));
    for line in interior {
        t_chain.extend(line.classical_factors(ctx));
    }
    for line in lines.iter().filter(|l| l.direction == LatticeVec::X) {
        t_chain.extend(line.classical_factors(ctx));
    }

    let x_gen = CSeries::generator(ctx, LatticeVec::X);
    let y_gen = CSeries::generator(ctx, LatticeVec::Y);
    let t_x = apply_chain_classical_trunc(&t_chain, &x_gen, u16::MAX)?;
    let t_y = apply_chain_classical_trunc(&t_chain, &y_gen, u16::MAX)?;

    let max_deg = ctx.max_total_degree();
    for d in 1..=max_deg {
        let inv_chain = inverse_chain_classical(&slots);
        let delta_x =
            apply_chain_classical_trunc(&inv_chain, &t_x.central_degree_trunc(d), d)?;
        let delta_y =
            apply_chain_classical_trunc(&inv_chain, &t_y.central_degree_trunc(d), d)?;
        let defect_x = classical_defect_part(&delta_x, LatticeVec::X, d);
        let defect_y = classical_defect_part(&delta_y, LatticeVec::Y, d);
        if defect_x.is_zero() && defect_y.is_zero() {
            continue;
        }
        let increments = solve_log_increment_classical(&defect_x, &defect_y)?;
        for ((md, alpha), c) in increments {
            let (gamma, _) = alpha.primitive_part();
            let slot = slots
                .entry(SlopeDescending(gamma))
                .or_insert_with(|| Slot {
                    lines: Vec::new(),
                    ray_log: None,
                });
            let log = slot
                .ray_log
                .get_or_insert_with(|| CSeries::zero(ctx));
            log.add_term(md, alpha, &c);
        }
    }

    let inv_chain = inverse_chain_classical(&slots);
    let check_x = apply_chain_classical_trunc(&inv_chain, &t_x, u16::MAX)?;
    let check_y = apply_chain_classical_trunc(&inv_chain, &t_y, u16::MAX)?;
    if check_x != x_gen || check_y != y_gen {
        return Err(Error::Verification(
            "classical central saturation defect did not vanish".into(),
        ));
    }

    let rays = slots
        .into_iter()
        .filter_map(|(k, slot)| slot.ray_log.map(|log| (k.0, log)))
        .filter(|(_, log)| !log.is_zero())
        .collect();
    Ok(ClassicalSaturation {
        ctx: ctx.clone(),
        rays,
    })
}

fn inverse_chain_classical(
    slots: &BTreeMap<SlopeDescending, Slot<CWallFactor, CSeries>>,
) -> Vec<CWallFactor> {
    let mut chain = Vec::new();
    for (key, slot) in slots.iter() {
        if let Some(log) = &slot.ray_log {
            if !log.is_zero() {
                chain.push(CWallFactor::Log {
                    gamma: key.0,
                    log: log.neg(),
                });
            }
        }
        for f in &slot.lines {
            chain.push(f.inverse());
        }
    }
    chain
}

fn apply_chain_classical_trunc(
    factors: &[CWallFactor],
    elt: &CSeries,
    max_deg: u16,
) -> Result<CSeries, Error> {
    let mut acc = elt.clone();
    for f in factors {
        acc = f.apply(&acc)?;
        if max_deg != u16::MAX {
            acc = acc.central_degree_trunc(max_deg);
        }
    }
    Ok(acc)
}

fn classical_defect_part(delta: &CSeries, beta: LatticeVec, d: u16) -> CSeries {
    let normalized = delta.mul_term(Multidegree::UNIT, beta.neg(), &rat_int(1));
    let mut out = normalized.central_degree_part(d);
    out.add_term(Multidegree::UNIT, LatticeVec::ZERO, &rat_int(-1));
    out.central_degree_part(d)
}

fn solve_log_increment_classical(
    defect_x: &CSeries,
    defect_y: &CSeries,
) -> Result<BTreeMap<(Multidegree, LatticeVec), Rat>, Error> {
    let mut out: BTreeMap<(Multidegree, LatticeVec), Rat> = BTreeMap::new();
    for ((md, alpha), c) in defect_x.iter() {
        if !alpha.is_positive() {
            return Err(Error::Verification(format!(
                "defect at non-positive direction {alpha}"
            )));
        }
        let kappa = alpha.pairing(&LatticeVec::X);
        if kappa == 0 {
            return Err(Error::Verification(format!(
                "x-defect along the x-axis at {alpha}"
            )));
        }
        out.insert((*md, *alpha), c / rat_int(kappa));
    }
    for ((md, alpha), c) in defect_y.iter() {
        if !alpha.is_positive() {
            return Err(Error::Verification(format!(
                "defect at non-positive direction {alpha}"
            )));
        }
        let kappa = alpha.pairing(&LatticeVec::Y);
        if kappa == 0 {
            return Err(Error::Verification(format!(
                "y-defect along the y-axis at {alpha}"
            )));
        }
        let c_log = c / rat_int(kappa);
        match out.get(&(*md, *alpha)) {
            Some(existing) => {
                if existing != &c_log {
                    return Err(Error::Verification(format!(
                        "inconsistent classical defect solve at {alpha}"
                    )));
                }
            }
            None => {
                out.insert((*md, *alpha), c_log);
            }
        }
    }
    Ok(out)
}
