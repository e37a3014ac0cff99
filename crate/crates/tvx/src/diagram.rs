//! Scattering diagrams: perturbation, iterative saturation over square-zero
//! variables, asymptotic collapse, and path-ordered products.
//!
//! The iteration follows the nilpotent strategy: each line of a standard
//! diagram is expanded through `t_i -> sum_j u_(i,j)` into elementary lines
//! carrying square-free `u`-monomials and generic rational offsets. A
//! *scattering pair* is a pair of walls, not both from an earlier round, with
//! disjoint `u`-monomials meeting in a single point; it emits one outgoing
//! ray whose coefficient picks up the q-number of the pairing of the incoming
//! weighted directions. Square-zero variables force stabilization, and the
//! provenance tree of every ray is a rational tropical curve.
//!
//! Genericity is not assumed: every intersection is computed exactly, a
//! point registry rejects configurations where three mutually disjoint walls
//! meet, and callers resample offsets until the sample is generic.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::error::Error;
use crate::factorize::StandardLine;
use crate::geom::{clockwise_from, segment_crossing, QPoint, Support, SupportKind};
use crate::lattice::{cmp_slope_descending, LatticeVec, SlopeDescending};
use crate::laurent::QLaurent;
use crate::rat::{factorial, rat, Rat};
use crate::ratfn::QRational;
use crate::series::{Multidegree, SeriesContext};
use crate::torus::TorusElement;
use crate::wallop::{GeneratorImages, WallFactor};

/// Denominator of the rational offset grid used for generic translates.
pub const OFFSET_GRID: i64 = 10007;
/// Bound on offset numerators.
pub const OFFSET_BOUND: i64 = 1_000_000;
/// Resampling attempts before a degenerate configuration is reported.
pub const MAX_RESAMPLE: u32 = 32;

/// Where a wall came from.
#[derive(Clone, Debug)]
pub enum Provenance {
    /// Incoming elementary line: row (variable or end class) and weight.
    Leaf { row: u32, weight: u32 },
    /// Scattering of two earlier walls at a point; `left` has the smaller
    /// slope.
    Node {
        point: QPoint,
        left: usize,
        right: usize,
    },
}

/// An elementary wall `theta[c u_I e_A]` on a line or ray.
#[derive(Clone, Debug)]
pub struct ElementaryWall {
    pub support: Support,
    /// Weighted direction vector `A` (the support direction is its primitive
    /// part).
    pub dir_vec: LatticeVec,
    pub coeff: QRational,
    pub mask: u64,
    pub provenance: Provenance,
    pub born: u32,
}

/// Walls known to pass through one scattering point, and the rays born there.
#[derive(Clone, Debug, Default)]
pub struct PointRecord {
    pub through: Vec<usize>,
    pub born: Vec<usize>,
}

/// A scattering diagram in elementary form.
#[derive(Clone, Debug)]
pub struct ScatterDiagram {
    /// Nilpotent-only coefficient context.
    pub ctx: Arc<SeriesContext>,
    /// Row (central variable or end class) of each nilpotent bit.
    pub row_of_bit: Vec<u32>,
    pub walls: Vec<ElementaryWall>,
    pub n_initial: usize,
    pub rounds: u32,
    pub seed: u64,
    /// Scattering points discovered during saturation.
    pub points: BTreeMap<QPoint, PointRecord>,
}

impl ScatterDiagram {
    pub fn initial_walls(&self) -> &[ElementaryWall] {
        &self.walls[..self.n_initial]
    }

    pub fn rays(&self) -> impl Iterator<Item = (usize, &ElementaryWall)> {
        self.walls
            .iter()
            .enumerate()
            .filter(|(_, w)| w.born > 0)
    }

    /// Full nilpotent mask of the diagram.
    pub fn full_mask(&self) -> u64 {
        if self.row_of_bit.is_empty() {
            0
        } else {
            (1u64 << self.row_of_bit.len()) - 1
        }
    }

    /// The wall operator as an applicable factor (log form).
    pub fn wall_factor(&self, idx: usize) -> WallFactor {
        elementary_factor(&self.ctx, &self.walls[idx])
    }
}

/// `theta[c u_I e_A] = Ad exp(c u_I e_A / (v - v^-1))` as a log factor.
pub fn elementary_factor(ctx: &Arc<SeriesContext>, wall: &ElementaryWall) -> WallFactor {
    let (gamma, _) = wall.dir_vec.primitive_part();
    let denom = QLaurent::v_pow(1).sub(&QLaurent::v_pow(-1));
    let c = wall.coeff.mul(&QRational::new(QLaurent::one(), denom));
    let log = TorusElement::monomial(
        ctx,
        Multidegree::nilpotent_mask(wall.mask),
        wall.dir_vec,
        c,
    );
    WallFactor::Log { gamma, log }
}

fn sample_offset(rng: &mut ChaCha12Rng) -> QPoint {
    let px = rng.gen_range(-OFFSET_BOUND..=OFFSET_BOUND);
    let py = rng.gen_range(-OFFSET_BOUND..=OFFSET_BOUND);
    QPoint::new(rat(px, OFFSET_GRID), rat(py, OFFSET_GRID))
}

/// Expand a standard diagram into elementary perturbed lines at order `k`.
///
/// Each line must own its central variable; its operator log
/// `sum_(j,w) a'_(ijw) t_i^j e_(w alpha_i)` is expanded through
/// `t_i -> sum_j u_(i,j)` into one line per `(i, J, w)` with factor
/// `(#J)! a_(i #J w) u_J e_(w alpha_i)` where `a = (v - v^-1) a'`, each
/// translated by a sampled generic offset.
pub fn perturb_standard(
    lines: &[StandardLine],
    k: u8,
    rng: &mut ChaCha12Rng,
    seed: u64,
) -> Result<ScatterDiagram, Error> {
    let n = lines.len();
    {
        let mut vars: Vec<usize> = lines.iter().map(|l| l.var).collect();
        vars.sort_unstable();
        vars.dedup();
        assert_eq!(vars.len(), n, "each perturbed line must own its variable");
    }
    // Central context used only to read off the a' coefficients.
    let max_var = lines.iter().map(|l| l.var).max().unwrap_or(0);
    let names: Vec<String> = (0..=max_var).map(|i| format!("t{i}")).collect();
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let central_ctx = SeriesContext::central_only(&name_refs, k);

    // Nilpotent context: bits (line, level) in line-major order.
    let mut tags = Vec::new();
    let mut row_of_bit = Vec::new();
    for (i, _) in lines.iter().enumerate() {
        for j in 1..=k as u32 {
            tags.push((i as u32, j));
            row_of_bit.push(i as u32);
        }
    }
    let ctx = SeriesContext::nilpotent_only(tags);

    let v_minus = QLaurent::v_pow(1).sub(&QLaurent::v_pow(-1));
    let mut walls = Vec::new();
    for (i, line) in lines.iter().enumerate() {
        let log = line.log(&central_ctx)?;
        // a'_(i j w) table: monomial t_var^j at lattice w * direction
        let mut table: BTreeMap<(u32, u32), QRational> = BTreeMap::new();
        for ((md, alpha), c) in log.iter() {
            let j = md.central_exp(line.var) as u32;
            debug_assert_eq!(md.total_central_degree(&central_ctx) as u32, j);
            let (_, w) = alpha.primitive_part();
            table.insert((j, w as u32), c.clone());
        }
        for ((j, w), a_prime) in table {
            let a = a_prime.mul_laurent(&v_minus);
            let scale = QRational::from_rat(factorial(j));
            let coeff = a.mul(&scale);
            // one line per subset J of {1..k} with #J = j
            for mask in subsets_of_size(k as u32, j) {
                let shifted = mask << (i * k as usize);
                let base = sample_offset(rng);
                walls.push(ElementaryWall {
                    support: Support::line(base, line.direction),
                    dir_vec: line.direction.scale(w as i64),
                    coeff: coeff.clone(),
                    mask: shifted,
                    provenance: Provenance::Leaf {
                        row: i as u32,
                        weight: w,
                    },
                    born: 0,
                });
            }
        }
    }

    let n_initial = walls.len();
    Ok(ScatterDiagram {
        ctx,
        row_of_bit,
        walls,
        n_initial,
        rounds: 0,
        seed,
        points: BTreeMap::new(),
    })
}

fn binomial_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// All bitmasks of `{0..k-1}` with exactly `j` bits set, ascending.
fn subsets_of_size(k: u32, j: u32) -> Vec<u64> {
    let mut out = Vec::new();
    for mask in 0u64..(1 << k) {
        if mask.count_ones() == j {
            out.push(mask);
        }
    }
    out
}

/// Diagram with one elementary line per prescribed end, unit coefficients
/// and one nilpotent tag per end; the raw material of curve enumeration.
pub fn ends_diagram(
    directions: &[LatticeVec],
    weights: &[Vec<u32>],
    rng: &mut ChaCha12Rng,
    seed: u64,
) -> ScatterDiagram {
    assert_eq!(directions.len(), weights.len());
    let mut tags = Vec::new();
    let mut row_of_bit = Vec::new();
    for (i, row) in weights.iter().enumerate() {
        for (j, _) in row.iter().enumerate() {
            tags.push((i as u32, j as u32 + 1));
            row_of_bit.push(i as u32);
        }
    }
    let ctx = SeriesContext::nilpotent_only(tags);
    let mut walls = Vec::new();
    for (i, row) in weights.iter().enumerate() {
        for &w in row.iter() {
            let base = sample_offset(rng);
            walls.push(ElementaryWall {
                support: Support::line(base, directions[i]),
                dir_vec: directions[i].scale(w as i64),
                coeff: QRational::one(),
                mask: 1u64 << walls.len(),
                provenance: Provenance::Leaf {
                    row: i as u32,
                    weight: w,
                },
                born: 0,
            });
        }
    }
    let n_initial = walls.len();
    ScatterDiagram {
        ctx,
        row_of_bit,
        walls,
        n_initial,
        rounds: 0,
        seed,
        points: BTreeMap::new(),
    }
}

/// The single outgoing ray of a scattering pair, when the pair scatters.
///
/// Requires disjoint masks; returns `None` for parallel directions or
/// supports that do not meet in a point.
pub fn scatter_pair(
    ctx: &Arc<SeriesContext>,
    left: (usize, &ElementaryWall),
    right: (usize, &ElementaryWall),
    born: u32,
) -> Option<(QPoint, ElementaryWall)> {
    let (li, lw) = left;
    let (ri, rw) = right;
    if lw.mask & rw.mask != 0 {
        return None;
    }
    let point = lw.support.intersect(&rw.support)?;
    // order so the first has the smaller slope
    let (first, second, fi, si) =
        if cmp_slope_descending(&lw.dir_vec, &rw.dir_vec) == std::cmp::Ordering::Greater {
            (lw, rw, li, ri)
        } else {
            (rw, lw, ri, li)
        };
    let m = first.dir_vec.pairing(&second.dir_vec);
    if m == 0 {
        return None;
    }
    debug_assert!(m > 0, "slope ordering gives a positive pairing");
    let dir_vec = first.dir_vec.add(&second.dir_vec);
    let (prim, _) = dir_vec.primitive_part();
    let coeff = first
        .coeff
        .mul(&second.coeff)
        .mul_laurent(&QLaurent::q_number(m));
    let mask = first.mask | second.mask;
    let _ = ctx;
    Some((
        point.clone(),
        ElementaryWall {
            support: Support::ray(point.clone(), prim),
            dir_vec,
            coeff,
            mask,
            provenance: Provenance::Node {
                point,
                left: fi,
                right: si,
            },
            born,
        },
    ))
}

/// Run the saturation rounds in place. Errors on degenerate geometry.
pub fn saturate(diagram: &mut ScatterDiagram) -> Result<(), Error> {
    let ctx = diagram.ctx.clone();
    diagram.points.clear();
    let mut round: u32 = 1;
    let max_rounds = diagram.row_of_bit.len() as u32 + 2;
    loop {
        let new_start = diagram
            .walls
            .iter()
            .position(|w| w.born == round - 1)
            .unwrap_or(diagram.walls.len());
        let new_range: Vec<usize> = (new_start..diagram.walls.len())
            .filter(|&i| diagram.walls[i].born == round - 1)
            .collect();
        if new_range.is_empty() {
            break;
        }
        // candidate partners grouped by mask for cheap disjointness pruning
        let mut buckets: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        for (i, w) in diagram.walls.iter().enumerate() {
            buckets.entry(w.mask).or_default().push(i);
        }
        let walls_snapshot = &diagram.walls;
        let candidates: Vec<Vec<(usize, usize, QPoint, ElementaryWall)>> =
            crate::par::map_vec(new_range.clone(), |i| {
                let wi = &walls_snapshot[i];
                let mut found = Vec::new();
                for (mask, bucket) in buckets.iter() {
                    if mask & wi.mask != 0 {
                        continue;
                    }
                    for &j in bucket {
                        // pair once: j older, or both new with j < i
                        let wj = &walls_snapshot[j];
                        let both_new = wj.born == round - 1;
                        if (both_new && j >= i) || (!both_new && wj.born > round - 1) {
                            continue;
                        }
                        if let Some((p, ray)) =
                            scatter_pair(&ctx, (i, wi), (j, wj), round)
                        {
                            found.push((i.min(j), i.max(j), p, ray));
                        }
                    }
                }
                found
            });
        let mut added = 0usize;
        for group in candidates {
            for (a, b, point, ray) in group {
                // Several pairs may legitimately meet at one point: rays
                // with a common leaf set are forced onto one line by the
                // balancing of their curves, so a transversal wall crosses
                // them simultaneously. Those carry overlapping u-monomials
                // and commute. The genuinely degenerate configuration is a
                // pairwise-disjoint triple, which the pairwise iteration
                // cannot resolve; it is rejected and resampled.
                let ma = diagram.walls[a].mask;
                let mb = diagram.walls[b].mask;
                if let Some(record) = diagram.points.get(&point) {
                    for &e in &record.through {
                        if e == a || e == b {
                            continue;
                        }
                        let me = diagram.walls[e].mask;
                        if me & ma == 0 && me & mb == 0 {
                            return Err(Error::Degenerate { retries: 0 });
                        }
                    }
                }
                let ray_idx = diagram.walls.len();
                diagram.walls.push(ray);
                let record = diagram.points.entry(point).or_default();
                if !record.through.contains(&a) {
                    record.through.push(a);
                }
                if !record.through.contains(&b) {
                    record.through.push(b);
                }
                record.born.push(ray_idx);
                added += 1;
            }
        }
        diagram.rounds = round;
        if added == 0 {
            break;
        }
        round += 1;
        if round > max_rounds {
            return Err(Error::Verification(
                "saturation failed to stabilize within the nilpotency bound".into(),
            ));
        }
    }
    Ok(())
}

/// Perturb and saturate with bounded resampling on degenerate samples.
pub fn perturb_and_saturate(
    lines: &[StandardLine],
    k: u8,
    seed: u64,
) -> Result<ScatterDiagram, Error> {
    for attempt in 0..MAX_RESAMPLE {
        let mut rng = ChaCha12Rng::seed_from_u64(seed.wrapping_add(attempt as u64));
        let mut diagram = perturb_standard(lines, k, &mut rng, seed)?;
        match saturate(&mut diagram) {
            Ok(()) => return Ok(diagram),
            Err(Error::Degenerate { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Degenerate {
        retries: MAX_RESAMPLE,
    })
}

/// Saturate an ends diagram (used for curve enumeration), resampling offsets
/// on degeneracy.
pub fn ends_and_saturate(
    directions: &[LatticeVec],
    weights: &[Vec<u32>],
    seed: u64,
) -> Result<ScatterDiagram, Error> {
    for attempt in 0..MAX_RESAMPLE {
        let mut rng = ChaCha12Rng::seed_from_u64(seed.wrapping_add(attempt as u64));
        let mut diagram = ends_diagram(directions, weights, &mut rng, seed);
        match saturate(&mut diagram) {
            Ok(()) => return Ok(diagram),
            Err(Error::Degenerate { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Degenerate {
        retries: MAX_RESAMPLE,
    })
}

/// A collapsed wall: all factors sharing one support through the origin.
#[derive(Clone, Debug)]
pub struct CollapsedWall {
    pub direction: LatticeVec,
    pub kind: SupportKind,
    /// Indices into the diagram's wall arena.
    pub members: Vec<usize>,
}

/// Asymptotic collapse: translate every ray to the origin and every line
/// through the origin, merging walls with equal support (they commute).
pub fn asymptotic_collapse(diagram: &ScatterDiagram) -> Vec<CollapsedWall> {
    let mut groups: BTreeMap<(SlopeDescending, bool), Vec<usize>> = BTreeMap::new();
    for (i, w) in diagram.walls.iter().enumerate() {
        let (prim, _) = w.dir_vec.primitive_part();
        let is_ray = w.support.kind == SupportKind::Ray;
        groups
            .entry((SlopeDescending(prim), is_ray))
            .or_default()
            .push(i);
    }
    groups
        .into_iter()
        .map(|((dir, is_ray), members)| CollapsedWall {
            direction: dir.0,
            kind: if is_ray {
                SupportKind::Ray
            } else {
                SupportKind::Line
            },
            members,
        })
        .collect()
}

/// Per-direction total ray logs pulled back to central variables.
///
/// The log of the merged ray operator in direction `gamma` is
/// `sum c_d u_I(d) e_A(d) / (v - v^-1)`; under `t_i -> sum_j u_(i,j)` a
/// central monomial `t^j` maps to `prod_i j_i! * (sum of u-monomials with
/// those row counts)`, so the pullback divides by the factorials and checks
/// that masks with equal row counts carry equal coefficients (this is the
/// equivalence-under-perturbation property, and a genericity oracle).
pub fn merge_by_direction(
    diagram: &ScatterDiagram,
    central_ctx: &Arc<SeriesContext>,
) -> Result<Vec<(LatticeVec, TorusElement)>, Error> {
    let v_minus_inv = QRational::new(
        QLaurent::one(),
        QLaurent::v_pow(1).sub(&QLaurent::v_pow(-1)),
    );
    let n_rows = central_ctx.n_central();
    // (direction, row-count vector, lattice) -> (coefficient, witness mask)
    let mut sums: BTreeMap<(SlopeDescending, Vec<u8>, LatticeVec), BTreeMap<u64, QRational>> =
        BTreeMap::new();
    for (_, wall) in diagram.rays() {
        let (prim, _) = wall.dir_vec.primitive_part();
        let mut counts = vec![0u8; n_rows];
        for (bit, row) in diagram.row_of_bit.iter().enumerate() {
            if wall.mask & (1 << bit) != 0 {
                counts[*row as usize] += 1;
            }
        }
        let entry = sums
            .entry((SlopeDescending(prim), counts, wall.dir_vec))
            .or_default();
        let acc = entry.entry(wall.mask).or_insert_with(QRational::zero);
        *acc = acc.add(&wall.coeff);
    }

    // bits available per row, for the expected mask count
    let mut bits_per_row: BTreeMap<u32, u32> = BTreeMap::new();
    for row in &diagram.row_of_bit {
        *bits_per_row.entry(*row).or_insert(0) += 1;
    }

    let mut out: BTreeMap<SlopeDescending, TorusElement> = BTreeMap::new();
    for ((dir, counts, dir_vec), by_mask) in sums {
        // all masks with these row counts must agree
        let mut iter = by_mask.values();
        let first = iter.next().expect("nonempty group").clone();
        for other in iter {
            if *other != first {
                return Err(Error::Verification(
                    "perturbation-dependent coefficients in merged direction".into(),
                ));
            }
        }
        if first.is_zero() {
            continue;
        }
        // a nonzero coefficient must be carried by every mask with these row
        // counts: prod over rows of C(bits_i, j_i) of them
        let mut expected: u64 = 1;
        for (i, j) in counts.iter().enumerate() {
            let bits = bits_per_row.get(&(i as u32)).copied().unwrap_or(0) as u64;
            expected *= binomial_u64(bits, *j as u64);
        }
        if by_mask.len() as u64 != expected {
            return Err(Error::Verification(
                "merged direction misses perturbation classes".into(),
            ));
        }
        let mut md = Multidegree::UNIT;
        let mut fact = Rat::from_integer(1.into());
        for (i, j) in counts.iter().enumerate() {
            md = md.with_central_exp(i, *j);
            fact *= factorial(*j as u32);
        }
        let coeff = first
            .mul(&v_minus_inv)
            .mul(&QRational::from_rat(Rat::from_integer(1.into()) / fact));
        let log = out
            .entry(dir)
            .or_insert_with(|| TorusElement::zero(central_ctx));
        log.add_term(md, dir_vec, &coeff);
    }
    Ok(out
        .into_iter()
        .map(|(k, v)| (k.0, v))
        .filter(|(_, v)| !v.is_zero())
        .collect())
}

/// Check the local consistency loop around a scattering point: the
/// clockwise path-ordered product of every wall through the point and every
/// ray born there is the identity on both generators.
pub fn local_loop_identity(diagram: &ScatterDiagram, point: &QPoint) -> Result<bool, Error> {
    let record = diagram
        .points
        .get(point)
        .ok_or_else(|| Error::Verification("not a scattering point".into()))?;
    let mut participants: Vec<usize> = record.through.clone();
    participants.extend(record.born.iter().copied());
    participants.sort_unstable();
    participants.dedup();
    // crossing events on a small loop: both sides for walls extending
    // through the point, the forward side only for rays based at it
    let mut events: Vec<(LatticeVec, usize, i8)> = Vec::new();
    for &idx in &participants {
        let wall = &diagram.walls[idx];
        events.push((wall.dir_vec, idx, 1));
        let based_here = wall.support.kind == SupportKind::Ray && &wall.support.base == point;
        if !based_here {
            events.push((wall.dir_vec.neg(), idx, -1));
        }
    }
    // starting direction not parallel to any wall
    let start = (1..)
        .map(|i| LatticeVec::new(-1 - i, -2 * i - 1))
        .find(|s| {
            participants
                .iter()
                .all(|&idx| s.pairing(&diagram.walls[idx].dir_vec) != 0)
        })
        .expect("a generic start direction exists");
    events.sort_by(|a, b| clockwise_from(&start, &a.0, &b.0));
    // theta_pi = theta_1^e1 o ... o theta_s^es: the last crossed acts first
    let mut chain = Vec::new();
    for (_, idx, eps) in events.iter().rev() {
        let f = diagram.wall_factor(*idx);
        chain.push(if *eps > 0 { f } else { f.inverse() });
    }
    let images = GeneratorImages::from_chain(&chain, &diagram.ctx)?;
    Ok(images.is_identity())
}

/// A wall with an attached applicable operator, for path-ordered products.
pub struct OperatorWall {
    pub support: Support,
    pub factor: WallFactor,
}

/// Path-ordered product of the crossed wall operators along a closed
/// piecewise-linear loop, applied to the generators.
///
/// The sign of a crossing is `+1` when `(path direction, wall direction)` is
/// a positive basis. Errors when the path touches a wall non-transversally,
/// passes through a vertex on a wall, or crosses a singular point (two
/// non-parallel walls at one point).
pub fn path_ordered_product(
    ctx: &Arc<SeriesContext>,
    walls: &[OperatorWall],
    loop_vertices: &[QPoint],
) -> Result<GeneratorImages, Error> {
    assert!(loop_vertices.len() >= 3);
    for v in loop_vertices {
        for w in walls {
            if w.support.contains(v) {
                return Err(Error::InadmissiblePath(
                    "path vertex lies on a wall".into(),
                ));
            }
        }
    }
    let n = loop_vertices.len();
    let mut crossings: Vec<(usize, Rat, QPoint, usize, i8)> = Vec::new();
    for seg in 0..n {
        let p = &loop_vertices[seg];
        let q = &loop_vertices[(seg + 1) % n];
        let seg_a = q.x.clone() - p.x.clone();
        let seg_b = q.y.clone() - p.y.clone();
        for (wi, wall) in walls.iter().enumerate() {
            if let Some((u, point)) = segment_crossing(p, q, &wall.support) {
                // eps = sign of det(segment, wall direction)
                let det = seg_a.clone() * crate::rat::rat_int(wall.support.dir.b)
                    - seg_b.clone() * crate::rat::rat_int(wall.support.dir.a);
                let eps = if det > Rat::from_integer(0.into()) { 1 } else { -1 };
                crossings.push((seg, u, point, wi, eps));
            }
        }
    }
    // singular points on the path: two non-parallel walls at one crossing
    for i in 0..crossings.len() {
        for j in i + 1..crossings.len() {
            if crossings[i].2 == crossings[j].2 {
                let di = walls[crossings[i].3].support.dir;
                let dj = walls[crossings[j].3].support.dir;
                if di.pairing(&dj) != 0 {
                    return Err(Error::InadmissiblePath(
                        "path crosses a singular point".into(),
                    ));
                }
            }
        }
    }
    crossings.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    let mut chain = Vec::new();
    for (_, _, _, wi, eps) in crossings.iter().rev() {
        let f = walls[*wi].factor.clone();
        chain.push(if *eps > 0 { f } else { f.inverse() });
    }
    GeneratorImages::from_chain(&chain, ctx)
}

/// A clockwise rectangular loop around the origin avoiding the given wall
/// directions (all walls pass through the origin), starting in the third
/// quadrant.
pub fn enclosing_loop(dirs: &[LatticeVec]) -> Vec<QPoint> {
    // corner coordinates off any wall through the origin: x dy != y dx
    let candidates = [
        (rat(-31, 7), rat(-23, 11)),
        (rat(-37, 9), rat(-19, 13)),
        (rat(-41, 11), rat(-29, 17)),
    ];
    for (cx, cy) in candidates {
        let corners = [
            QPoint::new(cx.clone(), cy.clone()),
            QPoint::new(cx.clone(), -cy.clone()),
            QPoint::new(-cx.clone(), -cy.clone()),
            QPoint::new(-cx.clone(), cy.clone()),
        ];
        let ok = corners.iter().all(|c| {
            dirs.iter().all(|d| {
                c.x.clone() * rat(d.b, 1) != c.y.clone() * rat(d.a, 1)
            })
        });
        if ok {
            return corners.to_vec();
        }
    }
    unreachable!("one of the candidate rectangles is generic");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorize::{commutator_lines, saturate_central};
    use crate::rat::rat_int;

    #[test]
    fn nilpotent_two_line_lemma() {
        // two unit lines at order 1: saturation adds exactly one ray with
        // coefficient [<a1,a2>]_q = 1 in direction (1,1)
        let lines = commutator_lines(1, 1);
        let d = perturb_and_saturate(&lines, 1, 7).unwrap();
        assert_eq!(d.n_initial, 2);
        assert_eq!(d.walls.len(), 3);
        let ray = &d.walls[2];
        assert_eq!(ray.dir_vec, LatticeVec::new(1, 1));
        assert_eq!(ray.coeff, QRational::one());
        assert_eq!(ray.mask, 0b11);
        assert_eq!(d.points.len(), 1);
        let p = d.points.keys().next().unwrap();
        assert!(local_loop_identity(&d, p).unwrap());
    }

    #[test]
    fn single_line_unchanged() {
        let lines = vec![StandardLine::power(LatticeVec::X, 0, 1)];
        let d = perturb_and_saturate(&lines, 2, 7).unwrap();
        assert_eq!(d.walls.len(), d.n_initial);
    }

    #[test]
    fn perturbed_merge_matches_central_saturation() {
        // the nilpotent route and the direct composition route agree
        for (l1, l2, k) in [(1i64, 1i64, 2u8), (1, 1, 3), (2, 1, 2)] {
            let lines = commutator_lines(l1, l2);
            let d = perturb_and_saturate(&lines, k, 11).unwrap();
            let central_ctx = SeriesContext::central_only(&["t0", "t1"], k);
            let merged = merge_by_direction(&d, &central_ctx).unwrap();
            let central = saturate_central(&central_ctx, &lines).unwrap();
            let merged_map: BTreeMap<LatticeVec, TorusElement> =
                merged.into_iter().collect();
            assert_eq!(merged_map.len(), central.rays.len(), "l={l1},{l2} k={k}");
            for (gamma, log) in &central.rays {
                assert_eq!(
                    merged_map.get(gamma).unwrap(),
                    log,
                    "direction {gamma} l={l1},{l2} k={k}"
                );
            }
        }
    }

    #[test]
    fn local_loops_all_consistent() {
        let lines = commutator_lines(2, 1);
        let d = perturb_and_saturate(&lines, 2, 23).unwrap();
        assert!(!d.points.is_empty());
        for p in d.points.keys() {
            assert!(local_loop_identity(&d, p).unwrap());
        }
    }

    #[test]
    fn collapse_groups_by_direction() {
        let lines = commutator_lines(1, 1);
        let d = perturb_and_saturate(&lines, 2, 5).unwrap();
        let collapsed = asymptotic_collapse(&d);
        // some ray group exists in direction (1,1)
        assert!(collapsed
            .iter()
            .any(|c| c.direction == LatticeVec::new(1, 1) && c.kind == SupportKind::Ray));
        // lines grouped by direction: exactly two line groups
        assert_eq!(
            collapsed
                .iter()
                .filter(|c| c.kind == SupportKind::Line)
                .count(),
            2
        );
    }

    #[test]
    fn path_product_identity_iff_saturated() {
        // empty diagram: any loop gives the identity
        let ctx = SeriesContext::nilpotent_only(vec![(0, 1), (1, 1)]);
        let loop_pts = enclosing_loop(&[LatticeVec::X, LatticeVec::Y]);
        let id = path_ordered_product(&ctx, &[], &loop_pts).unwrap();
        assert!(id.is_identity());

        // unsaturated two-line diagram: the loop around the crossing is the
        // commutator defect, not the identity
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        let d = {
            let lines = commutator_lines(1, 1);
            perturb_standard(&lines, 1, &mut rng, 3).unwrap()
        };
        let crossing = d.walls[0]
            .support
            .intersect(&d.walls[1].support)
            .unwrap();
        let half = rat(1, 2);
        let square = [
            QPoint::new(crossing.x.clone() - half.clone(), crossing.y.clone() - rat(1, 3)),
            QPoint::new(crossing.x.clone() - half.clone(), crossing.y.clone() + rat(1, 3)),
            QPoint::new(crossing.x.clone() + half.clone(), crossing.y.clone() + rat(1, 3)),
            QPoint::new(crossing.x.clone() + half, crossing.y.clone() - rat(1, 3)),
        ];
        let unsat_walls: Vec<OperatorWall> = d
            .walls
            .iter()
            .enumerate()
            .map(|(i, w)| OperatorWall {
                support: w.support.clone(),
                factor: d.wall_factor(i),
            })
            .collect();
        let defect = path_ordered_product(&d.ctx, &unsat_walls, &square).unwrap();
        assert!(!defect.is_identity());

        // saturated diagram: identity
        let mut sat = d.clone();
        saturate(&mut sat).unwrap();
        let sat_walls: Vec<OperatorWall> = sat
            .walls
            .iter()
            .enumerate()
            .map(|(i, w)| OperatorWall {
                support: w.support.clone(),
                factor: sat.wall_factor(i),
            })
            .collect();
        let closed = path_ordered_product(&sat.ctx, &sat_walls, &square).unwrap();
        assert!(closed.is_identity());
    }

    #[test]
    fn merged_coefficient_is_q_number_weighted() {
        // l1 = l2 = 1 at k = 1: the merged (1,1) log must be t0 t1 e_(1,1)/(v - v^-1)
        let lines = commutator_lines(1, 1);
        let d = perturb_and_saturate(&lines, 1, 99).unwrap();
        let central_ctx = SeriesContext::central_only(&["t0", "t1"], 1);
        let merged = merge_by_direction(&d, &central_ctx).unwrap();
        assert_eq!(merged.len(), 1);
        let (gamma, log) = &merged[0];
        assert_eq!(*gamma, LatticeVec::new(1, 1));
        let sigma = Multidegree::central_var(0)
            .mul(&Multidegree::central_var(1), &central_ctx)
            .unwrap();
        let expected = QRational::new(
            QLaurent::one(),
            QLaurent::v_pow(1).sub(&QLaurent::v_pow(-1)),
        );
        assert_eq!(log.coeff(sigma, LatticeVec::new(1, 1)), expected);
        assert_eq!(log.num_terms(), 1);
        let _ = rat_int(0);
    }
}
