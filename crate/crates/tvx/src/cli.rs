//! Command-line surface: argument types, runners, and output formatting.

use std::io::Write;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::curve::{curve_of_wall, enumerate_curves, refined_count_multi};
use crate::diagram::{merge_by_direction, perturb_and_saturate};
use crate::error::Error;
use crate::factorize::{
    commutator_lines, saturate_central, saturate_central_classical, CentralSaturation,
};
use crate::invariants::{classical_gw, extract_omegas, refined_gw, OmegaSpectrum, TropCache};
use crate::lattice::LatticeVec;
use crate::laurent::QLaurent;
use crate::quiver::{build_bipartite, stable_poincare, HnEngine, Stability};
use crate::rat::format_rat;
use crate::series::{Multidegree, SeriesContext};
use crate::verify::{run_suite, SuiteParams};

pub const DEFAULT_SEED_STR: &str = "12648430"; // 0xC0FFEE

#[derive(Parser, Debug)]
#[command(
    name = "tvx",
    about = "Exact classical and quantum tropical vertex computations",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
    Svg,
}

#[derive(Args, Debug)]
pub struct CommonArgs {
    /// Seed for genericity sampling (reports embed it).
    #[arg(long, env = "TVX_SEED", default_value = DEFAULT_SEED_STR)]
    pub seed: u64,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Output path (stdout when absent).
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Slope-ordered commutator factorization with its spectrum table.
    Commutator {
        #[arg(long, default_value_t = 1)]
        l1: i64,
        #[arg(long, default_value_t = 1)]
        l2: i64,
        /// Truncation order per deformation variable.
        #[arg(long)]
        order: u8,
        /// Use the commutative classical engine instead.
        #[arg(long)]
        classical: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Saturate a perturbed scattering diagram and report its walls.
    Scatter {
        #[arg(long, default_value_t = 1)]
        l1: i64,
        #[arg(long, default_value_t = 1)]
        l2: i64,
        #[arg(long)]
        order: u8,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Enumerate tropical curves for a weight vector and count them.
    TropicalCount {
        /// Weight vector as `w11,w12/w21,w22`, one block per direction.
        #[arg(long)]
        w: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Refined and classical invariants of an ordered partition pair.
    RefinedGw {
        /// Parts of the first partition, comma separated.
        #[arg(long)]
        p1: String,
        /// Parts of the second partition, comma separated.
        #[arg(long)]
        p2: String,
        /// Accepted for interface compatibility; the computation is exact at
        /// every order.
        #[arg(long)]
        order: Option<u8>,
        /// Shorthand for `--format json`.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Poincare polynomial of a bipartite quiver moduli space.
    QuiverPoincare {
        #[arg(long)]
        l1: usize,
        #[arg(long)]
        l2: usize,
        /// Dimension vector, comma separated, sources then sinks.
        #[arg(long)]
        dim: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run a verification suite; exits 1 on any failed case.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 3)]
        max_lines: usize,
        #[arg(long, default_value_t = 4)]
        order: u8,
        #[arg(long, default_value_t = 6)]
        max_size: u32,
        /// Independent configurations per invariance case.
        #[arg(long, default_value_t = 10)]
        checks: u32,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Export a diagram or a curve as SVG.
    Export {
        /// Weight vector `w1/w2` for a curve export.
        #[arg(long)]
        w: Option<String>,
        #[arg(long, default_value_t = 1)]
        l1: i64,
        #[arg(long, default_value_t = 1)]
        l2: i64,
        /// Diagram order (diagram export).
        #[arg(long)]
        order: Option<u8>,
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn parse_u32_list(s: &str) -> Result<Vec<u32>, Error> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| Error::Usage(format!("invalid list entry `{p}`")))
        })
        .collect()
}

fn parse_weight_spec(s: &str) -> Result<(Vec<u32>, Vec<u32>), Error> {
    let mut blocks = s.split('/');
    let w1 = parse_u32_list(
        blocks
            .next()
            .ok_or_else(|| Error::Usage("empty weight spec".into()))?,
    )?;
    let w2 = parse_u32_list(
        blocks
            .next()
            .ok_or_else(|| Error::Usage("weight spec needs two blocks `w1/w2`".into()))?,
    )?;
    if blocks.next().is_some() {
        return Err(Error::Usage("weight spec has more than two blocks".into()));
    }
    if w1.is_empty() || w2.is_empty() || w1.iter().chain(&w2).any(|x| *x == 0) {
        return Err(Error::Usage("weights must be positive".into()));
    }
    Ok((w1, w2))
}

fn emit(common: &CommonArgs, text: &str) -> Result<(), Error> {
    match &common.out {
        Some(path) => {
            let mut f = std::fs::File::create(path)?;
            f.write_all(text.as_bytes())?;
            Ok(())
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct SpectrumRow {
    gamma: [i64; 2],
    k: u32,
    n: i64,
    omega: String,
    poincare: String,
}

#[derive(Serialize)]
struct CommutatorReport {
    seed: u64,
    l1: i64,
    l2: i64,
    order: u8,
    rows: Vec<SpectrumRow>,
    operators: Vec<crate::wallop::WallOperatorJson>,
}

fn commutator_spectra(
    l1: i64,
    l2: i64,
    order: u8,
) -> Result<(Arc<SeriesContext>, CentralSaturation, Vec<(LatticeVec, OmegaSpectrum)>), Error> {
    let ctx = SeriesContext::central_only(&["t1", "t2"], order);
    let sat = saturate_central(&ctx, &commutator_lines(l1, l2))?;
    let mut spectra = Vec::new();
    for (gamma, log) in &sat.rays {
        let mut sigma = Multidegree::UNIT;
        for _ in 0..gamma.a {
            sigma = sigma
                .mul(&Multidegree::central_var(0), &ctx)
                .ok_or_else(|| Error::Usage("order too small for this direction".into()))?;
        }
        for _ in 0..gamma.b {
            sigma = sigma
                .mul(&Multidegree::central_var(1), &ctx)
                .ok_or_else(|| Error::Usage("order too small for this direction".into()))?;
        }
        let spec = extract_omegas(*gamma, sigma, log)?;
        spectra.push((*gamma, spec));
    }
    Ok((ctx, sat, spectra))
}

pub fn run_commutator(
    l1: i64,
    l2: i64,
    order: u8,
    classical: bool,
    common: &CommonArgs,
) -> Result<i32, Error> {
    if order == 0 {
        return Err(Error::Usage("--order must be at least 1".into()));
    }
    if classical {
        let ctx = SeriesContext::central_only(&["t1", "t2"], order);
        let sat = saturate_central_classical(&ctx, &commutator_lines(l1, l2))?;
        let mut text = String::new();
        match common.format {
            Format::Json => {
                #[derive(Serialize)]
                struct Row {
                    gamma: [i64; 2],
                    wall_function: String,
                }
                #[derive(Serialize)]
                struct Report {
                    seed: u64,
                    rows: Vec<Row>,
                }
                let rows = sat
                    .rays
                    .iter()
                    .map(|(g, _)| {
                        Ok(Row {
                            gamma: [g.a, g.b],
                            wall_function: format!(
                                "{:?}",
                                sat.wall_function(*g)?.expect("ray exists")
                            ),
                        })
                    })
                    .collect::<Result<_, Error>>()?;
                let report = Report {
                    seed: common.seed,
                    rows,
                };
                text = serde_json::to_string_pretty(&report)? + "\n";
            }
            _ => {
                text.push_str(&format!("# classical commutator l1={l1} l2={l2} order={order} seed={}\n", common.seed));
                text.push_str("gamma\twall_function\n");
                for (g, _) in &sat.rays {
                    let f = sat.wall_function(*g)?.expect("ray exists");
                    text.push_str(&format!("{g}\t{f:?}\n"));
                }
            }
        }
        emit(common, &text)?;
        return Ok(0);
    }
    let (_, _, spectra) = commutator_spectra(l1, l2, order)?;
    let mut rows = Vec::new();
    for (gamma, spec) in &spectra {
        for ((k, n), omega) in &spec.entries {
            rows.push(SpectrumRow {
                gamma: [gamma.a, gamma.b],
                k: *k,
                n: *n,
                omega: format_rat(omega),
                poincare: spec.poincare_poly(*k).canonical_string(),
            });
        }
    }
    let text = match common.format {
        Format::Json => {
            let report = CommutatorReport {
                seed: common.seed,
                l1,
                l2,
                order,
                rows,
                operators: spectra
                    .iter()
                    .map(|(_, s)| s.to_wall_operator().to_json())
                    .collect(),
            };
            serde_json::to_string_pretty(&report)? + "\n"
        }
        Format::Csv => {
            let mut t = String::from("gamma_a,gamma_b,k,n,omega,poincare\n");
            for r in rows {
                t.push_str(&format!(
                    "{},{},{},{},{},\"{}\"\n",
                    r.gamma[0], r.gamma[1], r.k, r.n, r.omega, r.poincare
                ));
            }
            t
        }
        _ => {
            let mut t = format!(
                "# commutator l1={l1} l2={l2} order={order} seed={}\n",
                common.seed
            );
            t.push_str("gamma\tk\tn\tOmega_n\tP(k*gamma)\n");
            for r in rows {
                t.push_str(&format!(
                    "({},{})\t{}\t{}\t{}\t{}\n",
                    r.gamma[0], r.gamma[1], r.k, r.n, r.omega, r.poincare
                ));
            }
            t
        }
    };
    emit(common, &text)?;
    Ok(0)
}

pub fn run_scatter(l1: i64, l2: i64, order: u8, common: &CommonArgs) -> Result<i32, Error> {
    if order == 0 {
        return Err(Error::Usage("--order must be at least 1".into()));
    }
    let lines = commutator_lines(l1, l2);
    let diagram = perturb_and_saturate(&lines, order, common.seed)?;
    match common.format {
        Format::Svg => {
            let svg = crate::svg::render_diagram(&diagram);
            emit(common, &svg)?;
        }
        Format::Json => {
            #[derive(Serialize)]
            struct WallRow {
                base: [String; 2],
                direction: [i64; 2],
                kind: String,
                coeff: String,
                mask: u64,
                born: u32,
                provenance: String,
            }
            #[derive(Serialize)]
            struct Report {
                seed: u64,
                walls: Vec<WallRow>,
                merged: Vec<MergedRow>,
            }
            #[derive(Serialize)]
            struct MergedRow {
                gamma: [i64; 2],
                log: Vec<(String, [i64; 2], String)>,
            }
            let central_ctx = SeriesContext::central_only(&["t1", "t2"], order);
            let merged = merge_by_direction(&diagram, &central_ctx)?;
            let report = Report {
                seed: diagram.seed,
                walls: diagram
                    .walls
                    .iter()
                    .map(|w| WallRow {
                        base: [
                            format_rat(&w.support.base.x),
                            format_rat(&w.support.base.y),
                        ],
                        direction: [w.dir_vec.a, w.dir_vec.b],
                        kind: format!("{:?}", w.support.kind),
                        coeff: format!("{}", w.coeff),
                        mask: w.mask,
                        born: w.born,
                        provenance: match &w.provenance {
                            crate::diagram::Provenance::Leaf { row, weight } => {
                                format!("leaf({row},{weight})")
                            }
                            crate::diagram::Provenance::Node { left, right, .. } => {
                                format!("node({left},{right})")
                            }
                        },
                    })
                    .collect(),
                merged: merged
                    .iter()
                    .map(|(g, log)| MergedRow {
                        gamma: [g.a, g.b],
                        log: log
                            .iter()
                            .map(|((md, alpha), c)| {
                                (
                                    md.render(&central_ctx),
                                    [alpha.a, alpha.b],
                                    format!("{c}"),
                                )
                            })
                            .collect(),
                    })
                    .collect(),
            };
            emit(common, &(serde_json::to_string_pretty(&report)? + "\n"))?;
        }
        _ => {
            let mut t = format!(
                "# scatter l1={l1} l2={l2} order={order} seed={} walls={} rounds={}\n",
                common.seed,
                diagram.walls.len(),
                diagram.rounds
            );
            t.push_str("idx\tkind\tdirection\tmask\tcoeff\n");
            for (i, w) in diagram.walls.iter().enumerate() {
                t.push_str(&format!(
                    "{i}\t{:?}\t{}\t{:#x}\t{}\n",
                    w.support.kind, w.dir_vec, w.mask, w.coeff
                ));
            }
            emit(common, &t)?;
        }
    }
    Ok(0)
}

pub fn run_tropical_count(w: &str, common: &CommonArgs) -> Result<i32, Error> {
    let (w1, w2) = parse_weight_spec(w)?;
    let dirs = [LatticeVec::X, LatticeVec::Y];
    let weights = [w1.clone(), w2.clone()];
    let (diagram, curves) = enumerate_curves(&dirs, &weights, common.seed)?;
    let total = refined_count_multi(&dirs, &weights, common.seed, 2)?;
    match common.format {
        Format::Svg => {
            // one SVG per curve, concatenated
            let mut t = String::new();
            for c in &curves {
                t.push_str(&crate::svg::render_curve(c));
            }
            if curves.is_empty() {
                t.push_str(&crate::svg::render_axes());
            }
            emit(common, &t)?;
        }
        Format::Json => {
            #[derive(Serialize)]
            struct CurveRow {
                vertices: Vec<[String; 2]>,
                multiplicities: Vec<i64>,
                mu_q: String,
            }
            #[derive(Serialize)]
            struct Report {
                seed: u64,
                w1: Vec<u32>,
                w2: Vec<u32>,
                curves: Vec<CurveRow>,
                refined_count: QLaurent,
                classical_count: String,
            }
            let report = Report {
                seed: common.seed,
                w1,
                w2,
                curves: curves
                    .iter()
                    .map(|c| CurveRow {
                        vertices: c
                            .vertices
                            .iter()
                            .map(|v| [format_rat(&v.point.x), format_rat(&v.point.y)])
                            .collect(),
                        multiplicities: (0..c.vertices.len())
                            .map(|i| c.vertex_multiplicity(i))
                            .collect(),
                        mu_q: c.bg_multiplicity().canonical_string(),
                    })
                    .collect(),
                refined_count: total.clone(),
                classical_count: format_rat(&total.eval_at_one()),
            };
            emit(common, &(serde_json::to_string_pretty(&report)? + "\n"))?;
        }
        Format::Csv => {
            let mut t = String::from("curve,vertices,mu,mu_q\n");
            for (i, c) in curves.iter().enumerate() {
                t.push_str(&format!(
                    "{},{},{},\"{}\"\n",
                    i,
                    c.vertices.len(),
                    format_rat(&c.multiplicity()),
                    c.bg_multiplicity().canonical_string()
                ));
            }
            t.push_str(&format!(
                "total,,{},\"{}\"\n",
                format_rat(&total.eval_at_one()),
                total.canonical_string()
            ));
            emit(common, &t)?;
        }
        _ => {
            let mut t = format!(
                "# tropical-count w=({:?},{:?}) seed={} curves={}\n",
                w1,
                w2,
                common.seed,
                curves.len()
            );
            t.push_str("curve\tvertices\tmu\tmu_q\n");
            for (i, c) in curves.iter().enumerate() {
                t.push_str(&format!(
                    "{i}\t{}\t{}\t{}\n",
                    c.vertices.len(),
                    format_rat(&c.multiplicity()),
                    c.bg_multiplicity().canonical_string()
                ));
            }
            t.push_str(&format!(
                "total\t\t{}\t{}\n",
                format_rat(&total.eval_at_one()),
                total.canonical_string()
            ));
            emit(common, &t)?;
        }
    }
    let _ = diagram;
    Ok(0)
}

pub fn run_refined_gw(
    p1: &str,
    p2: &str,
    json_flag: bool,
    common: &CommonArgs,
) -> Result<i32, Error> {
    let p1 = parse_u32_list(p1)?;
    let p2 = parse_u32_list(p2)?;
    if p1.iter().chain(&p2).any(|x| *x == 0) {
        return Err(Error::Usage("partition parts must be positive".into()));
    }
    let mut cache = TropCache::new(common.seed);
    let refined = refined_gw(&p1, &p2, &mut cache)?;
    let classical = classical_gw(&p1, &p2, &mut cache)?;
    let refined_str = match refined.try_into_laurent() {
        Some(l) => l.canonical_string(),
        None => format!("{refined}"),
    };
    let format = if json_flag { Format::Json } else { common.format };
    let text = match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Report {
                seed: u64,
                p1: Vec<u32>,
                p2: Vec<u32>,
                classical: String,
                refined: String,
            }
            serde_json::to_string_pretty(&Report {
                seed: common.seed,
                p1,
                p2,
                classical: format_rat(&classical),
                refined: refined_str,
            })? + "\n"
        }
        Format::Csv => format!(
            "p1,p2,N,N_hat\n\"{p1:?}\",\"{p2:?}\",{},\"{}\"\n",
            format_rat(&classical),
            refined_str
        ),
        _ => {
            format!(
                "# refined-gw seed={}\nP1\tP2\tN\tN_hat\n{:?}\t{:?}\t{}\t{}\n",
                common.seed,
                p1,
                p2,
                format_rat(&classical),
                refined_str
            )
        }
    };
    emit(common, &text)?;
    Ok(0)
}

pub fn run_quiver_poincare(
    l1: usize,
    l2: usize,
    dim: &str,
    common: &CommonArgs,
) -> Result<i32, Error> {
    let d = parse_u32_list(dim)?;
    if d.len() != l1 + l2 {
        return Err(Error::Usage(format!(
            "--dim needs {} entries for K({l1},{l2})",
            l1 + l2
        )));
    }
    let quiver = build_bipartite(l1, l2);
    let stab = Stability::level(&quiver);
    let mut engine = HnEngine::new(quiver, stab);
    let sst = engine.sst(&d);
    let poincare = stable_poincare(&mut engine, &d)?;
    let text = match common.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Report {
                l1: usize,
                l2: usize,
                dim: Vec<u32>,
                poincare: QLaurent,
                euler: String,
                stack_series: String,
            }
            serde_json::to_string_pretty(&Report {
                l1,
                l2,
                dim: d,
                poincare: poincare.clone(),
                euler: format_rat(&poincare.eval_at_one()),
                stack_series: format!("{sst}"),
            })? + "\n"
        }
        _ => format!(
            "# quiver-poincare K({l1},{l2}) dim={d:?}\nP_hat\t{}\neuler\t{}\nstack\t{}\n",
            poincare.canonical_string(),
            format_rat(&poincare.eval_at_one()),
            sst
        ),
    };
    emit(common, &text)?;
    Ok(0)
}

pub fn run_verify_cmd(
    suite: &str,
    max_lines: usize,
    order: u8,
    max_size: u32,
    checks: u32,
    common: &CommonArgs,
) -> Result<i32, Error> {
    if order == 0 {
        return Err(Error::Usage("--order must be at least 1".into()));
    }
    let params = SuiteParams {
        seed: common.seed,
        max_lines,
        order,
        max_size,
        checks,
    };
    let report = run_suite(suite, &params)?;
    let text = match common.format {
        Format::Table | Format::Csv | Format::Svg => {
            let mut t = format!("# verify suite={} seed={}\n", report.suite, report.seed);
            for c in &report.cases {
                t.push_str(&format!(
                    "{}\t{}\t{}\n",
                    if c.pass { "pass" } else { "FAIL" },
                    c.id,
                    c.detail
                ));
            }
            t.push_str(&format!(
                "{}\t{} cases\n",
                if report.pass { "pass" } else { "FAIL" },
                report.cases.len()
            ));
            t
        }
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
    };
    emit(common, &text)?;
    Ok(if report.pass { 0 } else { 1 })
}

pub fn run_export(
    w: Option<&str>,
    l1: i64,
    l2: i64,
    order: Option<u8>,
    common: &CommonArgs,
) -> Result<i32, Error> {
    let svg = match (w, order) {
        (Some(w), _) => {
            let (w1, w2) = parse_weight_spec(w)?;
            let (diagram, curves) =
                enumerate_curves(&[LatticeVec::X, LatticeVec::Y], &[w1, w2], common.seed)?;
            let _ = diagram;
            if curves.is_empty() {
                crate::svg::render_axes()
            } else {
                let mut t = String::new();
                for c in &curves {
                    t.push_str(&crate::svg::render_curve(c));
                }
                t
            }
        }
        (None, Some(order)) => {
            let diagram = perturb_and_saturate(&commutator_lines(l1, l2), order, common.seed)?;
            crate::svg::render_diagram(&diagram)
        }
        (None, None) => {
            return Err(Error::Usage(
                "export needs --w for a curve or --order for a diagram".into(),
            ))
        }
    };
    emit(common, &svg)?;
    Ok(0)
}

pub fn dispatch(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Commutator {
            l1,
            l2,
            order,
            classical,
            common,
        } => run_commutator(l1, l2, order, classical, &common),
        Command::Scatter {
            l1,
            l2,
            order,
            common,
        } => run_scatter(l1, l2, order, &common),
        Command::TropicalCount { w, common } => run_tropical_count(&w, &common),
        Command::RefinedGw {
            p1,
            p2,
            order: _,
            json,
            common,
        } => run_refined_gw(&p1, &p2, json, &common),
        Command::QuiverPoincare {
            l1,
            l2,
            dim,
            common,
        } => run_quiver_poincare(l1, l2, &dim, &common),
        Command::Verify {
            suite,
            max_lines,
            order,
            max_size,
            checks,
            common,
        } => run_verify_cmd(&suite, max_lines, order, max_size, checks, &common),
        Command::Export {
            w,
            l1,
            l2,
            order,
            common,
        } => run_export(w.as_deref(), l1, l2, order, &common),
    }
}

/// Extract the tropical curve table of a saturated diagram (used by tests).
pub fn curves_of(diagram: &crate::diagram::ScatterDiagram) -> Vec<crate::curve::TropicalCurve> {
    let full = diagram.full_mask();
    diagram
        .rays()
        .filter(|(_, w)| w.mask == full)
        .map(|(i, _)| curve_of_wall(diagram, i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_spec_parsing() {
        assert_eq!(
            parse_weight_spec("1,2/1").unwrap(),
            (vec![1, 2], vec![1])
        );
        assert!(parse_weight_spec("1,2").is_err());
        assert!(parse_weight_spec("0/1").is_err());
        assert!(parse_weight_spec("1/2/3").is_err());
    }
}
