//! Assembly layer: spectrum extraction, ramification factors, refined
//! Gromov-Witten numbers, classical coefficients, and the specialization map.
//!
//! The spectrum extraction solves the divisor-triangular system linking the
//! coefficients of a per-direction log to the Laurent polynomials `P(k gamma)`
//! whose coefficients are the exponents `Omega_n(k gamma)`; the conventions
//! are pinned by an exact re-exponentiation round trip rather than taken on
//! faith, and the `f`/`g` generator-series check compares the closed double
//! sums against the adjoint action.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::curve::refined_tropical_count;
use crate::error::Error;
use crate::factorize::CentralSaturation;
use crate::lattice::LatticeVec;
use crate::laurent::QLaurent;
use crate::rat::{factorial, rat, rat_int, Rat};
use crate::ratfn::QRational;
use crate::series::{Multidegree, SeriesContext};
use crate::torus::TorusElement;
use crate::wallop::{GeneratorImages, SpectrumEntry, WallOperator};

/// The exponents `Omega_n(k gamma)` of a slope factorization along one
/// direction, together with the base scalar monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaSpectrum {
    pub gamma: LatticeVec,
    pub sigma: Multidegree,
    /// `(k, n) -> Omega_n(k gamma)`, nonzero entries only.
    pub entries: BTreeMap<(u32, i64), Rat>,
}

impl OmegaSpectrum {
    /// `P(k gamma)(q) = sum_n Omega_n(k gamma) v^n`.
    pub fn poincare_poly(&self, k: u32) -> QLaurent {
        let mut p = QLaurent::zero();
        for ((kk, n), omega) in &self.entries {
            if *kk == k {
                p.add_term(*n, omega);
            }
        }
        p
    }

    pub fn max_k(&self) -> u32 {
        self.entries.keys().map(|(k, _)| *k).max().unwrap_or(0)
    }

    pub fn to_wall_operator(&self) -> WallOperator {
        let spectrum = self
            .entries
            .iter()
            .map(|((k, n), omega)| SpectrumEntry {
                k: *k,
                n: *n,
                omega: omega.clone(),
            })
            .collect();
        WallOperator::new(self.gamma, self.sigma, spectrum)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// `-1/(r ((-v)^r - (-v)^-r))`, the `r`-th dilogarithm log coefficient.
fn dilog_coeff(r: i64) -> QRational {
    let sign = if r % 2 == 0 { 1 } else { -1 };
    // (-v)^r - (-v)^-r = (-1)^r (v^r - v^-r)
    let den = QLaurent::v_pow(r)
        .sub(&QLaurent::v_pow(-r))
        .scale(&rat_int(sign * r));
    QRational::new(QLaurent::from_rat(rat_int(-1)), den)
}

/// Substitution `v -> (-1)^(r+1) v^r` of `P(k gamma)`, the way the `k`-level
/// polynomial enters the coefficient at lattice level `rk`.
fn p_substituted(p: &QLaurent, r: i64) -> QLaurent {
    let sign = if r % 2 == 0 { -1 } else { 1 };
    p.substitute_signed_power(sign, r)
}

/// Extract the spectrum of a per-direction log supported on `sigma^m
/// e_(m gamma)`: solve for the polynomials `P(k gamma)` by induction on the
/// lattice level and read off the exponents, then certify the answer by
/// re-exponentiation.
pub fn extract_omegas(
    gamma: LatticeVec,
    sigma: Multidegree,
    log: &TorusElement,
) -> Result<OmegaSpectrum, Error> {
    let ctx = log.ctx().clone();
    assert!(gamma.is_positive() && gamma.is_primitive());
    if !sigma.in_max_ideal() {
        return Err(Error::NotInMaximalIdeal);
    }
    // conforming support: every term must be (sigma^m, m gamma)
    let mut levels: BTreeMap<i64, QRational> = BTreeMap::new();
    {
        let mut sig_pow = sigma;
        let mut m: i64 = 1;
        loop {
            let c = log.coeff(sig_pow, gamma.scale(m));
            if !c.is_zero() {
                levels.insert(m, c);
            }
            match sig_pow.mul(&sigma, &ctx) {
                Some(next) => sig_pow = next,
                None => break,
            }
            m += 1;
        }
        let claimed: usize = levels.len();
        if claimed != log.num_terms() {
            return Err(Error::NonConformingSupport);
        }
        let max_level = m;
        let _ = max_level;
    }

    let v_minus = QLaurent::v_pow(1).sub(&QLaurent::v_pow(-1));
    let mut polys: BTreeMap<i64, QLaurent> = BTreeMap::new();
    let max_m = levels.keys().next_back().copied().unwrap_or(0);
    for m in 1..=max_m {
        let mut rem = levels.get(&m).cloned().unwrap_or_else(QRational::zero);
        for (k, p) in &polys {
            if m % k != 0 {
                continue;
            }
            let r = m / k;
            let contribution = dilog_coeff(r).mul_laurent(&p_substituted(p, r));
            rem = rem.sub(&contribution);
        }
        if rem.is_zero() {
            continue;
        }
        let p_m = rem
            .mul_laurent(&v_minus)
            .try_into_laurent()
            .ok_or_else(|| {
                Error::Clearing(format!("P({m} gamma) is not a Laurent polynomial"))
            })?;
        if !p_m.is_zero() {
            polys.insert(m, p_m);
        }
    }

    let mut entries = BTreeMap::new();
    for (k, p) in &polys {
        for (n, c) in p.iter() {
            entries.insert((*k as u32, *n), c.clone());
        }
    }
    let spectrum = OmegaSpectrum {
        gamma,
        sigma,
        entries,
    };
    // re-exponentiation round trip
    let back = spectrum.to_wall_operator().log(&ctx)?;
    if &back != log {
        return Err(Error::Verification(
            "spectrum re-exponentiation does not reproduce the log".into(),
        ));
    }
    Ok(spectrum)
}

/// Build the generator images of a wall operator two ways and compare: the
/// adjoint-action product form against the explicit `log f` / `log g`
/// double sums over divisors.
pub fn fg_series_check(op: &WallOperator, ctx: &Arc<SeriesContext>) -> Result<bool, Error> {
    let gamma = op.gamma;
    // P(k gamma) as Laurent polynomials
    let mut polys: BTreeMap<i64, QLaurent> = BTreeMap::new();
    for entry in &op.spectrum {
        let p = polys.entry(entry.k as i64).or_insert_with(QLaurent::zero);
        p.add_term(entry.n, &entry.omega);
    }
    let mut log_f = TorusElement::zero(ctx);
    let mut log_g = TorusElement::zero(ctx);
    let mut sig_pow = op.sigma;
    let mut m: i64 = 1;
    loop {
        let mut a_m = QLaurent::zero();
        let mut b_m = QLaurent::zero();
        for (k, p) in &polys {
            if m % k != 0 {
                continue;
            }
            let r = m / k;
            // ((-v)^r / r) P_k(eps_r v^r)
            let base = p_substituted(p, r)
                .mul(&QLaurent::v_pow(r))
                .scale(&rat(if r % 2 == 0 { 1 } else { -1 }, r));
            // log f: sum_(j = -k gamma.b)^(-1) q^(r j)
            let mut geo_f = QLaurent::zero();
            for j in -(k * gamma.b)..0 {
                geo_f.add_term(2 * r * j, &rat_int(1));
            }
            // log g: -sum_(j = 0)^(k gamma.a - 1) q^(r j)
            let mut geo_g = QLaurent::zero();
            for j in 0..(k * gamma.a) {
                geo_g.add_term(2 * r * j, &rat_int(-1));
            }
            a_m.add_assign(&base.mul(&geo_f));
            b_m.add_assign(&base.mul(&geo_g));
        }
        log_f.add_term(sig_pow, gamma.scale(m), &QRational::from_laurent(a_m));
        log_g.add_term(sig_pow, gamma.scale(m), &QRational::from_laurent(b_m));
        match sig_pow.mul(&op.sigma, ctx) {
            Some(next) => sig_pow = next,
            None => break,
        }
        m += 1;
    }
    let f = log_f.series_exp()?;
    let g = log_g.series_exp()?;
    let x_img = TorusElement::generator(ctx, LatticeVec::X).twisted_mul(&f)?;
    let y_img = TorusElement::generator(ctx, LatticeVec::Y).twisted_mul(&g)?;
    let direct = GeneratorImages::from_wall_operator(op, ctx)?;
    Ok(direct.x == x_img && direct.y == y_img)
}

/// Ordered partition: a sequence of positive parts.
pub type OrderedPartition = Vec<u32>;

/// All compositions of `n` into exactly `len` positive parts (ordered).
pub fn compositions(n: u32, len: usize) -> Vec<OrderedPartition> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    fn rec(n: u32, len: usize, current: &mut Vec<u32>, out: &mut Vec<OrderedPartition>) {
        if len == 1 {
            if n >= 1 {
                current.push(n);
                out.push(current.clone());
                current.pop();
            }
            return;
        }
        for first in 1..=n.saturating_sub(len as u32 - 1) {
            current.push(first);
            rec(n - first, len - 1, current, out);
            current.pop();
        }
    }
    if len >= 1 {
        rec(n, len, &mut current, &mut out);
    }
    out
}

/// Compositions of `n` into exactly `len` parts `>= 0`, each at most `cap`.
pub fn weak_compositions(n: u32, len: usize, cap: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    fn rec(n: u32, len: usize, cap: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if len == 0 {
            if n == 0 {
                out.push(current.clone());
            }
            return;
        }
        for first in 0..=n.min(cap) {
            current.push(first);
            rec(n - first, len - 1, cap, current, out);
            current.pop();
        }
    }
    rec(n, len, cap, &mut current, &mut out);
    out
}

/// All partitions of `n` as ascending part lists (weight vectors).
pub fn partitions_sorted(n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(n: u32, min: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(current.clone());
            return;
        }
        for part in min..=n {
            current.push(part);
            rec(n - part, part, current, out);
            current.pop();
        }
    }
    rec(n, 1, &mut current, &mut out);
    out
}

/// Number of ordered set partitions `(I_1, ..., I_l)` of the index set of
/// `w` with `sum_(s in I_j) w_s = parts[j]`.
pub fn compatible_set_partitions(parts: &[u32], w: &[u32]) -> u64 {
    let total_w: u32 = w.iter().sum();
    let total_p: u32 = parts.iter().sum();
    if total_w != total_p {
        return 0;
    }
    // assign items one by one to blocks, tracking remaining block budgets
    fn rec(w: &[u32], budgets: &mut Vec<u32>) -> u64 {
        let Some((&item, rest)) = w.split_first() else {
            return if budgets.iter().all(|b| *b == 0) { 1 } else { 0 };
        };
        let mut acc = 0;
        let mut seen: Vec<u32> = Vec::new();
        for j in 0..budgets.len() {
            if budgets[j] >= item && !seen.contains(&budgets[j]) {
                // identical remaining budgets of equal original parts would
                // double-count only if blocks were unlabeled; they are
                // labeled here, so every block is tried
                seen.clear(); // labeled blocks: try each one
            }
            if budgets[j] >= item {
                budgets[j] -= item;
                acc += rec(rest, budgets);
                budgets[j] += item;
            }
        }
        let _ = seen;
        acc
    }
    let mut budgets = parts.to_vec();
    rec(w, &mut budgets)
}

/// The q-deformed ramification factor
/// `prod_j (-1)^(w_j - 1) / (w_j [w_j]_q)` times the number of compatible
/// set partitions.
pub fn q_ramification(parts: &[u32], w: &[u32]) -> Result<QRational, Error> {
    let total_w: u32 = w.iter().sum();
    let total_p: u32 = parts.iter().sum();
    if total_w != total_p {
        return Err(Error::SizeMismatch(format!(
            "|w| = {total_w} but |P| = {total_p}"
        )));
    }
    let count = compatible_set_partitions(parts, w);
    if count == 0 {
        return Ok(QRational::zero());
    }
    let mut acc = QRational::from_rat(rat_int(count as i64));
    for &wj in w {
        let sign = if wj % 2 == 1 { 1 } else { -1 };
        let den = QLaurent::q_number(wj as i64).scale(&rat_int(sign * wj as i64));
        acc = acc.mul(&QRational::new(QLaurent::one(), den));
    }
    Ok(acc)
}

/// Classical ramification factor `prod_j (-1)^(w_j-1)/w_j^2` times the
/// number of compatible set partitions.
pub fn classical_ramification(parts: &[u32], w: &[u32]) -> Result<Rat, Error> {
    let total_w: u32 = w.iter().sum();
    let total_p: u32 = parts.iter().sum();
    if total_w != total_p {
        return Err(Error::SizeMismatch(format!(
            "|w| = {total_w} but |P| = {total_p}"
        )));
    }
    let count = compatible_set_partitions(parts, w);
    let mut acc = rat_int(count as i64);
    for &wj in w {
        let sign = if wj % 2 == 1 { 1 } else { -1 };
        acc *= rat(sign, (wj * wj) as i64);
    }
    Ok(acc)
}

/// `|Aut(w)| = prod_m (multiplicity of m)!` for a sorted weight list.
pub fn aut_order(w: &[u32]) -> Rat {
    let mut acc = Rat::one();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        acc *= factorial((j - i) as u32);
        i = j;
    }
    acc
}

/// Memoizing cache of refined tropical counts for the two standard
/// directions, keyed by the weight vector pair.
pub struct TropCache {
    pub seed: u64,
    counts: BTreeMap<(Vec<u32>, Vec<u32>), QLaurent>,
}

impl TropCache {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            counts: BTreeMap::new(),
        }
    }

    pub fn count(&mut self, w1: &[u32], w2: &[u32]) -> Result<QLaurent, Error> {
        let key = (w1.to_vec(), w2.to_vec());
        if let Some(c) = self.counts.get(&key) {
            return Ok(c.clone());
        }
        let c = refined_tropical_count(w1, w2, self.seed)?;
        self.counts.insert(key, c.clone());
        Ok(c)
    }
}

/// The refined invariant
/// `N^[(P1, P2)] = sum_w prod_i R^_(P_i|w_i) / |Aut(w_i)| * N^trop(w)`,
/// returned as an exact rational function (it clears to a bar-symmetric
/// Laurent polynomial whenever the comparison theorem applies).
pub fn refined_gw(
    p1: &[u32],
    p2: &[u32],
    cache: &mut TropCache,
) -> Result<QRational, Error> {
    let n1: u32 = p1.iter().sum();
    let n2: u32 = p2.iter().sum();
    let mut acc = QRational::zero();
    for w1 in partitions_sorted(n1) {
        let r1 = q_ramification(p1, &w1)?;
        if r1.is_zero() {
            continue;
        }
        for w2 in partitions_sorted(n2) {
            let r2 = q_ramification(p2, &w2)?;
            if r2.is_zero() {
                continue;
            }
            let count = cache.count(&w1, &w2)?;
            let aut = aut_order(&w1) * aut_order(&w2);
            let term = r1
                .mul(&r2)
                .mul_laurent(&count)
                .scale(&(Rat::one() / aut));
            acc = acc.add(&term);
        }
    }
    Ok(acc)
}

/// Classical invariant `N[(P1, P2)]` assembled from classical tropical
/// counts with the `q = 1` ramification factors.
pub fn classical_gw(p1: &[u32], p2: &[u32], cache: &mut TropCache) -> Result<Rat, Error> {
    let n1: u32 = p1.iter().sum();
    let n2: u32 = p2.iter().sum();
    let mut acc = Rat::zero();
    for w1 in partitions_sorted(n1) {
        let r1 = classical_ramification(p1, &w1)?;
        if r1.is_zero() {
            continue;
        }
        for w2 in partitions_sorted(n2) {
            let r2 = classical_ramification(p2, &w2)?;
            if r2.is_zero() {
                continue;
            }
            let count = cache.count(&w1, &w2)?.eval_at_one();
            let aut = aut_order(&w1) * aut_order(&w2);
            acc += r1.clone() * r2 * count / aut;
        }
    }
    Ok(acc)
}

/// GPS classical coefficient
/// `c^(a,b)_k = k sum_(|Pa| = ka) sum_(|Pb| = kb) N[(Pa, Pb)]` over ordered
/// partitions of lengths `l1`, `l2` with parts `>= 0` (a zero part drops the
/// corresponding constraint), assembled from tropical counts.
pub fn gps_classical_coeff(
    a: i64,
    b: i64,
    k: u32,
    l1: usize,
    l2: usize,
    cache: &mut TropCache,
) -> Result<Rat, Error> {
    assert!(a >= 1 && b >= 1 && LatticeVec::new(a, b).is_primitive());
    let mut acc = Rat::zero();
    for pa in weak_compositions(k * a as u32, l1, k * a as u32) {
        for pb in weak_compositions(k * b as u32, l2, k * b as u32) {
            let pa_pos: Vec<u32> = pa.iter().copied().filter(|x| *x > 0).collect();
            let pb_pos: Vec<u32> = pb.iter().copied().filter(|x| *x > 0).collect();
            acc += classical_gw(&pa_pos, &pb_pos, cache)?;
        }
    }
    Ok(acc * rat_int(k as i64))
}

/// Substitute every central variable by the single variable of the target
/// context and re-truncate: the specialization `s_i = t_j = t`.
pub fn specialize_multiparameter(
    sat: &CentralSaturation,
    target_ctx: &Arc<SeriesContext>,
) -> Result<Vec<(LatticeVec, TorusElement)>, Error> {
    assert_eq!(target_ctx.n_central(), 1);
    let var_map = vec![0usize; sat.ctx.n_central()];
    let mut out = Vec::new();
    for (gamma, log) in &sat.rays {
        let mapped = log.remap_central(target_ctx, &var_map)?;
        if !mapped.is_zero() {
            out.push((*gamma, mapped));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorize::{commutator_lines, saturate_central, saturate_central_classical};

    fn ctx2(order: u8) -> Arc<SeriesContext> {
        SeriesContext::central_only(&["t1", "t2"], order)
    }

    #[test]
    fn extract_single_dilog() {
        let ctx = ctx2(4);
        let gamma = LatticeVec::new(1, 1);
        let sigma = Multidegree::central_var(0)
            .mul(&Multidegree::central_var(1), &ctx)
            .unwrap();
        let log = TorusElement::qdilog_log(&ctx, sigma, gamma, 0, &rat_int(1)).unwrap();
        let spec = extract_omegas(gamma, sigma, &log).unwrap();
        assert_eq!(spec.entries.len(), 1);
        assert_eq!(spec.entries.get(&(1, 0)), Some(&rat_int(1)));
        // linearity: log of E^2 gives Omega_0 = 2
        let log2 = log.scale(&QRational::from_int(2));
        let spec2 = extract_omegas(gamma, sigma, &log2).unwrap();
        assert_eq!(spec2.entries.get(&(1, 0)), Some(&rat_int(2)));
    }

    #[test]
    fn extract_shifted_dilog() {
        // log E((-v) sigma e_gamma): the operator theta^(+1)[(-v)^1 sigma e],
        // which in the (-1)^n Omega_n convention is Omega_1 = -1
        let ctx = ctx2(4);
        let gamma = LatticeVec::new(1, 1);
        let sigma = Multidegree::central_var(0)
            .mul(&Multidegree::central_var(1), &ctx)
            .unwrap();
        let log = TorusElement::qdilog_log(&ctx, sigma, gamma, 1, &rat_int(1)).unwrap();
        let spec = extract_omegas(gamma, sigma, &log).unwrap();
        assert_eq!(spec.entries.len(), 1);
        assert_eq!(spec.entries.get(&(1, 1)), Some(&rat_int(-1)));
    }

    #[test]
    fn extract_commutator_spectrum_is_unity() {
        // the basic commutator: single direction (1,1) with Omega_0 = 1
        let ctx = ctx2(5);
        let sat = saturate_central(&ctx, &commutator_lines(1, 1)).unwrap();
        assert_eq!(sat.rays.len(), 1);
        let (gamma, log) = &sat.rays[0];
        let sigma = Multidegree::central_var(0)
            .mul(&Multidegree::central_var(1), &ctx)
            .unwrap();
        let spec = extract_omegas(*gamma, sigma, log).unwrap();
        assert_eq!(spec.entries.len(), 1);
        assert_eq!(spec.entries.get(&(1, 0)), Some(&rat_int(1)));
    }

    #[test]
    fn roundtrip_random_spectra() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(2024);
        let ctx = ctx2(6);
        let gamma = LatticeVec::new(1, 1);
        let sigma = Multidegree::central_var(0)
            .mul(&Multidegree::central_var(1), &ctx)
            .unwrap();
        let omegas = [rat_int(1), rat_int(-1), rat(1, 2), rat(-1, 2), rat_int(2)];
        for _ in 0..25 {
            let mut entries = Vec::new();
            for k in 1..=3u32 {
                for n in -2..=2i64 {
                    if rng.gen_bool(0.3) {
                        let omega = omegas[rng.gen_range(0..omegas.len())].clone();
                        entries.push(SpectrumEntry { k, n, omega });
                    }
                }
            }
            let op = WallOperator::new(gamma, sigma, entries);
            let log = op.log(&ctx).unwrap();
            let spec = extract_omegas(gamma, sigma, &log).unwrap();
            let expected: BTreeMap<(u32, i64), Rat> = op
                .spectrum
                .iter()
                .map(|e| ((e.k, e.n), e.omega.clone()))
                .fold(BTreeMap::new(), |mut m, (k, o)| {
                    let e = m.entry(k).or_insert_with(Rat::zero);
                    *e += o;
                    m
                })
                .into_iter()
                .filter(|(_, o)| !o.is_zero())
                .collect();
            assert_eq!(spec.entries, expected);
        }
    }

    #[test]
    fn fg_check_examples() {
        let ctx = ctx2(4);
        let gamma = LatticeVec::new(1, 1);
        let sigma = Multidegree::central_var(0)
            .mul(&Multidegree::central_var(1), &ctx)
            .unwrap();
        // spectrum {(1,0,1)}
        let op = WallOperator::power_dilog(gamma, sigma, 1);
        assert!(fg_series_check(&op, &ctx).unwrap());
        // empty spectrum: both identity
        let empty = WallOperator::new(gamma, sigma, vec![]);
        assert!(fg_series_check(&empty, &ctx).unwrap());
        // a mixed random-ish spectrum on a skew direction
        let ctx3 = SeriesContext::central_only(&["t1", "t2"], 6);
        let gamma2 = LatticeVec::new(2, 1);
        let sigma2 = Multidegree::central_var(0)
            .pow(2, &ctx3)
            .unwrap()
            .mul(&Multidegree::central_var(1), &ctx3)
            .unwrap();
        let op2 = WallOperator::new(
            gamma2,
            sigma2,
            vec![
                SpectrumEntry { k: 1, n: 0, omega: rat_int(2) },
                SpectrumEntry { k: 1, n: 1, omega: rat(-1, 2) },
                SpectrumEntry { k: 2, n: -1, omega: rat(1, 2) },
            ],
        );
        assert!(fg_series_check(&op2, &ctx3).unwrap());
    }

    #[test]
    fn set_partitions_and_ramification() {
        // P = (1,1), w = (1,1): two compatible partitions, unit factors
        assert_eq!(compatible_set_partitions(&[1, 1], &[1, 1]), 2);
        assert_eq!(
            q_ramification(&[1, 1], &[1, 1]).unwrap(),
            QRational::from_int(2)
        );
        // P = (2), w = (2): -1/(2 [2]_q)
        let r = q_ramification(&[2], &[2]).unwrap();
        let expected = QRational::new(
            QLaurent::from_rat(rat_int(-1)),
            QLaurent::q_number(2).scale(&rat_int(2)),
        );
        assert_eq!(r, expected);
        // P = (2), w = (1,1): a single 2-element block
        assert_eq!(compatible_set_partitions(&[2], &[1, 1]), 1);
        assert_eq!(q_ramification(&[2], &[1, 1]).unwrap(), QRational::one());
        // size mismatch is an error
        assert!(q_ramification(&[3], &[1, 1]).is_err());
        // classical factor matches eval at one
        for (p, w) in [
            (vec![2u32], vec![2u32]),
            (vec![2], vec![1, 1]),
            (vec![3], vec![1, 2]),
            (vec![1, 2], vec![1, 1, 1]),
        ] {
            let q = q_ramification(&p, &w).unwrap();
            let c = classical_ramification(&p, &w).unwrap();
            if let Some(l) = q.try_into_laurent() {
                assert_eq!(l.eval_at_one(), c);
            } else {
                // evaluate num/den separately at 1
                let nv = q.numer().eval_at_one();
                let dv = q.denom().eval_at_one();
                assert_eq!(nv / dv, c);
            }
        }
    }

    #[test]
    fn aut_orders() {
        assert_eq!(aut_order(&[1, 1]), rat_int(2));
        assert_eq!(aut_order(&[1, 2, 2, 2]), rat_int(6));
        assert_eq!(aut_order(&[3]), rat_int(1));
    }

    #[test]
    fn refined_gw_examples() {
        let mut cache = TropCache::new(9);
        // P1 = (1), P2 = (1): single weight vector, unit factors, count 1
        let n = refined_gw(&[1], &[1], &mut cache).unwrap();
        assert_eq!(n, QRational::one());
        // P1 = (1,1), P2 = (1): w = ((1,1),(1)); factor 2/2 = 1; count 1
        let n = refined_gw(&[1, 1], &[1], &mut cache).unwrap();
        assert_eq!(n, QRational::one());
        // P1 = (2), P2 = (1): the two weight vectors cancel exactly
        let n = refined_gw(&[2], &[1], &mut cache).unwrap();
        assert!(n.is_zero());
    }

    #[test]
    fn gps_chain_small() {
        // l1 = l2 = 1, (a,b) = (1,1), k = 1: the classical commutator wall is
        // 1 + t^2 xy, so c^(1,1)_1 = 1; and c^(1,2)_1 = 0.
        let mut cache = TropCache::new(5);
        assert_eq!(gps_classical_coeff(1, 1, 1, 1, 1, &mut cache).unwrap(), rat_int(1));
        assert_eq!(gps_classical_coeff(1, 2, 1, 1, 1, &mut cache).unwrap(), rat_int(0));
        // oracle: classical engine coefficient
        let ctx = ctx2(4);
        let sat = saturate_central_classical(&ctx, &commutator_lines(1, 1)).unwrap();
        let log = sat.ray_log(LatticeVec::new(1, 1)).unwrap();
        let sigma = Multidegree::central_var(0)
            .mul(&Multidegree::central_var(1), &ctx)
            .unwrap();
        // c^(1,1)_1 = 1 * c'_1
        assert_eq!(log.coeff(sigma, LatticeVec::new(1, 1)), rat_int(1));
        assert!(sat.ray_log(LatticeVec::new(1, 2)).is_none());
    }

    #[test]
    fn specialization_two_unit_lines() {
        // l1 = l2 = 1: multi-parameter and single-t saturations agree at
        // every order (the bookkeeping s^P1 t^P2 -> t^(|P1|+|P2|))
        let k = 3u8;
        let multi_ctx = SeriesContext::new(
            vec![
                crate::series::CentralVar { name: "s1".into(), order: k },
                crate::series::CentralVar { name: "t1".into(), order: k },
            ],
            Vec::new(),
            Some(k as u16),
        );
        let lines = crate::factorize::split_power_lines(1, 1);
        let multi = saturate_central(&multi_ctx, &lines).unwrap();
        let single_ctx = SeriesContext::central_only(&["t"], k);
        let single_lines = vec![
            crate::factorize::StandardLine::power(LatticeVec::X, 0, 1),
            crate::factorize::StandardLine::power(LatticeVec::Y, 0, 1),
        ];
        let single = saturate_central(&single_ctx, &single_lines).unwrap();
        let specialized = specialize_multiparameter(&multi, &single_ctx).unwrap();
        assert_eq!(specialized.len(), single.rays.len());
        for ((g1, l1), (g2, l2)) in specialized.iter().zip(single.rays.iter()) {
            assert_eq!(g1, g2);
            assert_eq!(l1, l2);
        }
    }
}
