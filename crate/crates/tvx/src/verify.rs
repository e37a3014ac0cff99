//! Verification suites: each runs a family of exact identities and reports
//! one verdict per case. These are the same checks the acceptance tests
//! gate on; `tvx verify --suite <name>` exposes them on the command line.

use std::sync::{Arc, Mutex};

use num_traits::Zero;
use serde::Serialize;

use crate::classical::{CSeries, CWallFactor};
use crate::curve::refined_count_multi;
use crate::diagram::{
    enclosing_loop, local_loop_identity, merge_by_direction, perturb_and_saturate, OperatorWall,
    Provenance,
};
use crate::error::Error;
use crate::factorize::{
    commutator_lines, saturate_central, saturate_central_classical, split_power_lines,
    StandardLine,
};
use crate::geom::{QPoint, Support};
use crate::invariants::{
    classical_gw, compositions, extract_omegas, partitions_sorted, refined_gw,
    specialize_multiparameter, weak_compositions, TropCache,
};
use crate::lattice::LatticeVec;
use crate::laurent::QLaurent;
use crate::quiver::{
    bipartite_poincare, build_abelianized, enumerate_refinements, is_coprime_pair, mps_check,
    stable_poincare, HnEngine, Refinement,
};
use crate::rat::{rat, rat_int, Rat};
use crate::ratfn::QRational;
use crate::series::{CentralVar, Multidegree, SeriesContext};
use crate::torus::TorusElement;
use crate::wallop::{GeneratorImages, SpectrumEntry, WallFactor, WallOperator};

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub id: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub pass: bool,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    fn from_cases(suite: &str, seed: u64, cases: Vec<CaseResult>) -> Self {
        let pass = cases.iter().all(|c| c.pass);
        Self {
            suite: suite.to_string(),
            seed,
            pass,
            cases,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteParams {
    pub seed: u64,
    pub max_lines: usize,
    pub order: u8,
    pub max_size: u32,
    pub checks: u32,
}

impl Default for SuiteParams {
    fn default() -> Self {
        Self {
            seed: crate::DEFAULT_SEED,
            max_lines: 3,
            order: 4,
            max_size: 6,
            checks: 10,
        }
    }
}

pub const SUITES: &[&str] = &[
    "consistency",
    "invariance",
    "classical-limit",
    "roundtrip",
    "mps",
    "comparison",
    "specialization",
];

pub fn run_suite(name: &str, params: &SuiteParams) -> Result<SuiteReport, Error> {
    match name {
        "consistency" => Ok(consistency_suite(params)),
        "invariance" => Ok(invariance_suite(params)),
        "classical-limit" => Ok(classical_limit_suite(params)),
        "roundtrip" => Ok(roundtrip_suite(params)),
        "mps" => Ok(mps_suite(params)),
        "comparison" => Ok(comparison_suite(params)),
        "specialization" => Ok(specialization_suite(params)),
        other => Err(Error::Usage(format!(
            "unknown suite `{other}`; expected one of {}",
            SUITES.join(", ")
        ))),
    }
}

fn case(id: String, check: impl FnOnce() -> Result<(), String>) -> CaseResult {
    match check() {
        Ok(()) => CaseResult {
            id,
            pass: true,
            detail: "ok".into(),
        },
        Err(detail) => CaseResult {
            id,
            pass: false,
            detail,
        },
    }
}

fn err_str<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

// ---------------------------------------------------------------------------
// consistency

/// The diagram family of the consistency oracle: up to three lines with
/// exponents up to two; three-line diagrams run to order 3 and two-line
/// diagrams to the full order.
fn consistency_configs(params: &SuiteParams) -> Vec<(String, Vec<StandardLine>, u8)> {
    let x = LatticeVec::X;
    let y = LatticeVec::Y;
    let d11 = LatticeVec::new(1, 1);
    let d12 = LatticeVec::new(1, 2);
    let mut configs = Vec::new();
    let two_line: Vec<(&str, Vec<(LatticeVec, i64)>)> = vec![
        ("x1-y1", vec![(x, 1), (y, 1)]),
        ("x2-y1", vec![(x, 2), (y, 1)]),
        ("x2-y2", vec![(x, 2), (y, 2)]),
    ];
    for (label, spec) in &two_line {
        for k in 1..=params.order {
            configs.push((
                format!("{label}-k{k}"),
                spec.iter()
                    .enumerate()
                    .map(|(i, (dir, l))| StandardLine::power(*dir, i, *l))
                    .collect(),
                k,
            ));
        }
    }
    if params.max_lines >= 3 {
        let three_line: Vec<(&str, Vec<(LatticeVec, i64)>)> = vec![
            ("x1-y1-d1", vec![(x, 1), (y, 1), (d11, 1)]),
            ("x2-y1-d2", vec![(x, 2), (y, 1), (d11, 2)]),
            ("x1-s1-d1", vec![(x, 1), (d12, 1), (d11, 1)]),
        ];
        for (label, spec) in &three_line {
            for k in 1..=params.order.min(3) {
                configs.push((
                    format!("{label}-k{k}"),
                    spec.iter()
                        .enumerate()
                        .map(|(i, (dir, l))| StandardLine::power(*dir, i, *l))
                        .collect(),
                    k,
                ));
            }
        }
    }
    configs
}

fn consistency_case(
    label: &str,
    lines: &[StandardLine],
    k: u8,
    seed: u64,
) -> Result<(), String> {
    let diagram = perturb_and_saturate(lines, k, seed).map_err(err_str)?;

    // balancing of every provenance node
    for (_, wall) in diagram.rays() {
        if let Provenance::Node { left, right, .. } = &wall.provenance {
            let sum = diagram.walls[*left]
                .dir_vec
                .add(&diagram.walls[*right].dir_vec);
            if sum != wall.dir_vec {
                return Err(format!("{label}: unbalanced scattering node"));
            }
        }
    }

    // local loop identity at every scattering point
    let points: Vec<QPoint> = diagram.points.keys().cloned().collect();
    let local_ok = crate::par::map_vec(points, |p| {
        local_loop_identity(&diagram, &p).map_err(err_str)
    });
    for res in local_ok {
        if !res? {
            return Err(format!("{label}: local loop product is not the identity"));
        }
    }

    // merged per-direction logs over the central variables
    let names: Vec<String> = (0..lines.len()).map(|i| format!("t{i}")).collect();
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let central_ctx = SeriesContext::central_only(&name_refs, k);
    let merged = merge_by_direction(&diagram, &central_ctx).map_err(err_str)?;

    // equivalence under perturbation: an independent sample gives the same
    // merged operators
    let second = perturb_and_saturate(lines, k, seed ^ 0x5DEECE66D).map_err(err_str)?;
    let merged2 = merge_by_direction(&second, &central_ctx).map_err(err_str)?;
    if merged != merged2 {
        return Err(format!("{label}: merged operators depend on the sample"));
    }

    // master oracle: the path-ordered product around an enclosing loop of
    // the collapsed saturated diagram is the identity
    let mut walls: Vec<OperatorWall> = Vec::new();
    let origin = QPoint::origin();
    for line in lines {
        walls.push(OperatorWall {
            support: Support::line(origin.clone(), line.direction),
            factor: line.factor(&central_ctx).map_err(err_str)?,
        });
    }
    let mut dirs: Vec<LatticeVec> = lines.iter().map(|l| l.direction).collect();
    for (gamma, log) in &merged {
        walls.push(OperatorWall {
            support: Support::ray(origin.clone(), *gamma),
            factor: WallFactor::Log {
                gamma: *gamma,
                log: log.clone(),
            },
        });
        dirs.push(*gamma);
    }
    let loop_pts = enclosing_loop(&dirs);
    let product =
        crate::diagram::path_ordered_product(&central_ctx, &walls, &loop_pts).map_err(err_str)?;
    if !product.is_identity() {
        return Err(format!("{label}: enclosing loop product is not the identity"));
    }
    Ok(())
}

/// Pentagon regime: the basic commutator at order 8 has exactly one
/// direction `(1,1)` with `Omega_0 = 1`, certified two independent ways.
fn pentagon_case(order: u8) -> Result<(), String> {
    let ctx = SeriesContext::central_only(&["t1", "t2"], order);
    let sat = saturate_central(&ctx, &commutator_lines(1, 1)).map_err(err_str)?;
    if sat.rays.len() != 1 {
        return Err(format!("expected one direction, found {}", sat.rays.len()));
    }
    let (gamma, log) = &sat.rays[0];
    if *gamma != LatticeVec::new(1, 1) {
        return Err(format!("unexpected direction {gamma}"));
    }
    let sigma = Multidegree::central_var(0)
        .mul(&Multidegree::central_var(1), &ctx)
        .unwrap();
    let spec = extract_omegas(*gamma, sigma, log).map_err(err_str)?;
    let expected: Vec<((u32, i64), Rat)> = vec![((1, 0), rat_int(1))];
    let got: Vec<((u32, i64), Rat)> = spec
        .entries
        .iter()
        .map(|(k, v)| (*k, v.clone()))
        .collect();
    if got != expected {
        return Err(format!("unexpected spectrum {:?}", spec.entries));
    }
    // independent oracle: the pentagon identity by direct composition
    let th1 = GeneratorImages::from_wall_operator(
        &WallOperator::power_dilog(LatticeVec::X, Multidegree::central_var(0), 1),
        &ctx,
    )
    .map_err(err_str)?;
    let th2 = GeneratorImages::from_wall_operator(
        &WallOperator::power_dilog(LatticeVec::Y, Multidegree::central_var(1), 1),
        &ctx,
    )
    .map_err(err_str)?;
    let th12 = GeneratorImages::from_wall_operator(
        &WallOperator::power_dilog(LatticeVec::new(1, 1), sigma, 1),
        &ctx,
    )
    .map_err(err_str)?;
    let lhs = GeneratorImages::compose(&th1, &th2).map_err(err_str)?;
    let rhs = GeneratorImages::compose(
        &GeneratorImages::compose(&th2, &th12).map_err(err_str)?,
        &th1,
    )
    .map_err(err_str)?;
    if lhs != rhs {
        return Err("pentagon identity failed".into());
    }
    Ok(())
}

fn consistency_suite(params: &SuiteParams) -> SuiteReport {
    let mut cases = vec![case("pentagon-k8".into(), || pentagon_case(8))];
    let configs = consistency_configs(params);
    let seed = params.seed;
    let results = crate::par::map_vec(configs, |(label, lines, k)| {
        case(label.clone(), || consistency_case(&label, &lines, k, seed))
    });
    cases.extend(results);
    SuiteReport::from_cases("consistency", params.seed, cases)
}

// ---------------------------------------------------------------------------
// invariance

fn invariance_suite(params: &SuiteParams) -> SuiteReport {
    let mut jobs = Vec::new();
    for n1 in 1..params.max_size {
        for n2 in 1..=(params.max_size - n1) {
            for w1 in partitions_sorted(n1) {
                for w2 in partitions_sorted(n2) {
                    jobs.push((w1.clone(), w2));
                }
            }
        }
    }
    let seed = params.seed;
    let checks = params.checks;
    let cases = crate::par::map_vec(jobs, |(w1, w2)| {
        case(format!("w{w1:?}|{w2:?}"), || {
            let count = refined_count_multi(
                &[LatticeVec::X, LatticeVec::Y],
                &[w1.clone(), w2.clone()],
                seed,
                checks,
            )
            .map_err(err_str)?;
            if !count.is_bar_symmetric() {
                return Err(format!(
                    "count {} is not bar-symmetric",
                    count.canonical_string()
                ));
            }
            Ok(())
        })
    });
    SuiteReport::from_cases("invariance", params.seed, cases)
}

// ---------------------------------------------------------------------------
// classical limit

/// Evaluate a cleared quantum series at `v = 1` into the classical algebra.
fn quantum_to_classical(
    elt: &TorusElement,
    ctx: &std::sync::Arc<SeriesContext>,
) -> Result<CSeries, String> {
    let cleared = elt.try_clear().map_err(err_str)?;
    let mut out = CSeries::zero(ctx);
    for ((md, alpha), p) in cleared {
        out.add_term(md, alpha, &p.eval_at_one());
    }
    Ok(out)
}

fn classical_limit_case(l1: i64, l2: i64, k: u8) -> Result<(), String> {
    let ctx = SeriesContext::central_only(&["t1", "t2"], k);
    let quantum = saturate_central(&ctx, &commutator_lines(l1, l2)).map_err(err_str)?;
    let classical =
        saturate_central_classical(&ctx, &commutator_lines(l1, l2)).map_err(err_str)?;
    if quantum.rays.len() != classical.rays.len() {
        return Err(format!(
            "direction sets differ: {} vs {}",
            quantum.rays.len(),
            classical.rays.len()
        ));
    }
    for ((gq, logq), (gc, logc)) in quantum.rays.iter().zip(classical.rays.iter()) {
        if gq != gc {
            return Err(format!("direction order differs: {gq} vs {gc}"));
        }
        let qf = WallFactor::Log {
            gamma: *gq,
            log: logq.clone(),
        };
        let cf = CWallFactor::Log {
            gamma: *gc,
            log: logc.clone(),
        };
        for (qgen, cgen) in [
            (LatticeVec::X, LatticeVec::X),
            (LatticeVec::Y, LatticeVec::Y),
        ] {
            let qimg = qf
                .apply(&TorusElement::generator(&ctx, qgen))
                .map_err(err_str)?;
            let at_one = quantum_to_classical(&qimg, &ctx)?;
            let cimg = cf
                .apply(&CSeries::generator(&ctx, cgen))
                .map_err(err_str)?;
            if at_one != cimg {
                return Err(format!(
                    "classical limit mismatch at direction {gq} on {qgen}"
                ));
            }
        }
    }
    Ok(())
}

fn classical_limit_suite(params: &SuiteParams) -> SuiteReport {
    let mut jobs = Vec::new();
    for l1 in 1..=2i64 {
        for l2 in 1..=2i64 {
            for k in 1..=params.order {
                jobs.push((l1, l2, k));
            }
        }
    }
    let mut cases = crate::par::map_vec(jobs, |(l1, l2, k)| {
        case(format!("l{l1}{l2}-k{k}"), || classical_limit_case(l1, l2, k))
    });
    // the basic wall function over a single deformation variable
    cases.push(case("unit-wall-function".into(), || {
        let ctx = SeriesContext::central_only(&["t"], 6);
        let lines = vec![
            StandardLine::power(LatticeVec::X, 0, 1),
            StandardLine::power(LatticeVec::Y, 0, 1),
        ];
        let sat = saturate_central_classical(&ctx, &lines).map_err(err_str)?;
        if sat.rays.len() != 1 {
            return Err(format!("expected one wall, found {}", sat.rays.len()));
        }
        let f = sat
            .wall_function(LatticeVec::new(1, 1))
            .map_err(err_str)?
            .unwrap();
        // f = 1 + t^2 x y
        let mut expected = CSeries::one(&ctx);
        expected.add_term(
            Multidegree::central_var(0).pow(2, &ctx).unwrap(),
            LatticeVec::new(1, 1),
            &rat_int(1),
        );
        if f != expected {
            return Err(format!("wall function is {:?}", f));
        }
        Ok(())
    }));
    SuiteReport::from_cases("classical-limit", params.seed, cases)
}

// ---------------------------------------------------------------------------
// roundtrip

fn roundtrip_suite(params: &SuiteParams) -> SuiteReport {
    use rand::Rng;
    use rand::SeedableRng;
    let ctx = SeriesContext::central_only(&["t1", "t2"], 6);
    let gamma = LatticeVec::new(1, 1);
    let sigma = Multidegree::central_var(0)
        .mul(&Multidegree::central_var(1), &ctx)
        .unwrap();
    let omegas = [rat_int(1), rat_int(-1), rat(1, 2), rat(-1, 2), rat_int(2)];
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(params.seed);
    let mut specs = Vec::new();
    for i in 0..100 {
        let mut entries = Vec::new();
        while entries.is_empty() {
            for k in 1..=3u32 {
                for n in -2..=2i64 {
                    if rng.gen_bool(0.25) {
                        let omega = omegas[rng.gen_range(0..omegas.len())].clone();
                        entries.push(SpectrumEntry { k, n, omega });
                    }
                }
            }
        }
        specs.push((i, entries));
    }
    let cases = crate::par::map_vec(specs, |(i, entries)| {
        case(format!("spectrum-{i:03}"), || {
            let op = WallOperator::new(gamma, sigma, entries.clone());
            let log = op.log(&ctx).map_err(err_str)?;
            let spec = extract_omegas(gamma, sigma, &log).map_err(err_str)?;
            let mut expected = std::collections::BTreeMap::new();
            for e in &entries {
                let slot = expected.entry((e.k, e.n)).or_insert_with(Rat::zero);
                *slot += e.omega.clone();
            }
            expected.retain(|_, v: &mut Rat| !v.is_zero());
            if spec.entries != expected {
                return Err(format!("{:?} != {:?}", spec.entries, expected));
            }
            Ok(())
        })
    });
    SuiteReport::from_cases("roundtrip", params.seed, cases)
}

// ---------------------------------------------------------------------------
// sweeps over partition pairs

/// All coprime ordered-partition pairs with bounded lengths and total size.
pub fn partition_pair_sweep(max_len: usize, max_size: u32) -> Vec<(Vec<u32>, Vec<u32>)> {
    let mut out = Vec::new();
    for l1 in 1..max_len {
        for l2 in 1..=(max_len - l1) {
            for n1 in l1 as u32..max_size {
                for n2 in l2 as u32..=(max_size - n1) {
                    for p1 in compositions(n1, l1) {
                        for p2 in compositions(n2, l2) {
                            if is_coprime_pair(&p1, &p2) {
                                out.push((p1.clone(), p2));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

struct SharedCache(Mutex<TropCache>);

impl SharedCache {
    fn count(&self, w1: &[u32], w2: &[u32]) -> Result<QLaurent, Error> {
        self.0.lock().unwrap().count(w1, w2)
    }
}

fn mps_suite(params: &SuiteParams) -> SuiteReport {
    let sweep = partition_pair_sweep(4, params.max_size);
    let cache = Arc::new(SharedCache(Mutex::new(TropCache::new(params.seed))));
    let cases = crate::par::map_vec(sweep, |(p1, p2)| {
        let cache = cache.clone();
        case(format!("P{p1:?}|{p2:?}"), move || {
            if !mps_check(&p1, &p2).map_err(err_str)? {
                return Err("MPS identity failed".into());
            }
            // independently: abelian Poincare polynomials equal the refined
            // tropical counts of the induced weight vectors
            for r in enumerate_refinements(&p1, &p2) {
                let (spec, dim, stab) = build_abelianized(&r);
                let mut engine = HnEngine::new(spec, stab);
                let p = stable_poincare(&mut engine, &dim).map_err(err_str)?;
                let w1 = Refinement::weight_vector(&r.side1);
                let w2 = Refinement::weight_vector(&r.side2);
                let trop = cache.count(&w1, &w2).map_err(err_str)?;
                if p != trop {
                    return Err(format!(
                        "abelian side {} != tropical side {} at refinement {r:?}",
                        p.canonical_string(),
                        trop.canonical_string()
                    ));
                }
            }
            Ok(())
        })
    });
    SuiteReport::from_cases("mps", params.seed, cases)
}

fn comparison_suite(params: &SuiteParams) -> SuiteReport {
    let sweep = partition_pair_sweep(4, params.max_size);
    let cache = Arc::new(SharedCache(Mutex::new(TropCache::new(params.seed))));
    let cases = crate::par::map_vec(sweep, |(p1, p2)| {
        let cache = cache.clone();
        case(format!("P{p1:?}|{p2:?}"), move || {
            let quiver_side = bipartite_poincare(&p1, &p2).map_err(err_str)?;
            let tropical_side = {
                let mut shared = cache.0.lock().unwrap();
                refined_gw(&p1, &p2, &mut shared).map_err(err_str)?
            };
            let tropical = tropical_side
                .try_into_laurent()
                .ok_or_else(|| "refined invariant does not clear".to_string())?;
            if !tropical.is_bar_symmetric() {
                return Err("refined invariant is not bar-symmetric".into());
            }
            if tropical != quiver_side {
                return Err(format!(
                    "tropical {} != quiver {}",
                    tropical.canonical_string(),
                    quiver_side.canonical_string()
                ));
            }
            // q = 1: the Euler-characteristic identity against the classical
            // assembly from classical counts
            let classical = {
                let mut shared = cache.0.lock().unwrap();
                classical_gw(&p1, &p2, &mut shared).map_err(err_str)?
            };
            if quiver_side.eval_at_one() != classical {
                return Err("Euler characteristic mismatch at q = 1".into());
            }
            Ok(())
        })
    });
    SuiteReport::from_cases("comparison", params.seed, cases)
}

// ---------------------------------------------------------------------------
// specialization

fn specialization_case(l1: usize, l2: usize, k: u8, cache: &SharedCache) -> Result<(), String> {
    // multi-parameter saturation: one variable per factor, total degree
    // capped so the specialized comparison is exact
    let mut vars: Vec<CentralVar> = (0..l1)
        .map(|i| CentralVar {
            name: format!("s{}", i + 1),
            order: k,
        })
        .collect();
    vars.extend((0..l2).map(|j| CentralVar {
        name: format!("t{}", j + 1),
        order: k,
    }));
    let multi_ctx = SeriesContext::new(vars, Vec::new(), Some(k as u16));
    let lines = split_power_lines(l1, l2);
    let multi = saturate_central(&multi_ctx, &lines).map_err(err_str)?;

    // direct single-variable saturation of the power operators
    let single_ctx = SeriesContext::central_only(&["t"], k);
    let single_lines = vec![
        StandardLine::power(LatticeVec::X, 0, l1 as i64),
        StandardLine::power(LatticeVec::Y, 0, l2 as i64),
    ];
    let single = saturate_central(&single_ctx, &single_lines).map_err(err_str)?;

    let specialized = specialize_multiparameter(&multi, &single_ctx).map_err(err_str)?;
    if specialized.len() != single.rays.len() {
        return Err(format!(
            "direction counts differ: {} vs {}",
            specialized.len(),
            single.rays.len()
        ));
    }
    for ((g1, log1), (g2, log2)) in specialized.iter().zip(single.rays.iter()) {
        if g1 != g2 || log1 != log2 {
            return Err(format!("specialized operator differs at {g1}"));
        }
    }

    // the multi-parameter operators themselves are the weighted sums of
    // refined invariants: coefficient of s^P t^Q e_(m gamma) is
    // N^[(P', Q')]/(v - v^-1) with the zero parts dropped
    let v_minus_inv = QRational::new(
        QLaurent::one(),
        QLaurent::v_pow(1).sub(&QLaurent::v_pow(-1)),
    );
    for (gamma, log) in &multi.rays {
        let mut expected = TorusElement::zero(&multi_ctx);
        let max_m = {
            // largest multiple of gamma with any monomial alive
            let degree_cap = multi_ctx.max_total_degree() as i64;
            let weight = gamma.a + gamma.b;
            if weight == 0 {
                0
            } else {
                degree_cap / weight
            }
        };
        for m in 1..=max_m {
            let total1 = (m * gamma.a) as u32;
            let total2 = (m * gamma.b) as u32;
            for p in weak_compositions(total1, l1, k as u32) {
                for q in weak_compositions(total2, l2, k as u32) {
                    let mut md = Multidegree::UNIT;
                    let mut ok = true;
                    for (i, e) in p.iter().chain(q.iter()).enumerate() {
                        match Multidegree::central_var(i).pow(*e, &multi_ctx) {
                            Some(var_pow) => match md.mul(&var_pow, &multi_ctx) {
                                Some(next) => md = next,
                                None => {
                                    ok = false;
                                    break;
                                }
                            },
                            None => {
                                ok = false;
                                break;
                            }
                        }
                    }
                    if !ok {
                        continue;
                    }
                    let p_parts: Vec<u32> = p.iter().copied().filter(|x| *x > 0).collect();
                    let q_parts: Vec<u32> = q.iter().copied().filter(|x| *x > 0).collect();
                    if p_parts.is_empty() || q_parts.is_empty() {
                        continue;
                    }
                    let n_hat = {
                        let mut shared = cache.0.lock().unwrap();
                        refined_gw(&p_parts, &q_parts, &mut shared).map_err(err_str)?
                    };
                    expected.add_term(md, gamma.scale(m), &n_hat.mul(&v_minus_inv));
                }
            }
        }
        if &expected != log {
            return Err(format!(
                "operator at {gamma} differs from the weighted invariant sum"
            ));
        }
    }
    Ok(())
}

fn specialization_suite(params: &SuiteParams) -> SuiteReport {
    let cache = Arc::new(SharedCache(Mutex::new(TropCache::new(params.seed))));
    let mut jobs = Vec::new();
    for l1 in 1..=2usize {
        for l2 in 1..=2usize {
            for k in 1..=params.order.min(3) {
                jobs.push((l1, l2, k));
            }
        }
    }
    let cases = crate::par::map_vec(jobs, |(l1, l2, k)| {
        let cache = cache.clone();
        case(format!("l{l1}{l2}-k{k}"), move || {
            specialization_case(l1, l2, k, &cache)
        })
    });
    SuiteReport::from_cases("specialization", params.seed, cases)
}
