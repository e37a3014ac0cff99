//! Property tests for the algebraic invariants of the coefficient rings and
//! the torus automorphisms.

use proptest::prelude::*;

use tvx::lattice::LatticeVec;
use tvx::laurent::QLaurent;
use tvx::rat::{rat, rat_int, Rat};
use tvx::ratfn::QRational;
use tvx::series::{Multidegree, SeriesContext};
use tvx::torus::TorusElement;
use tvx::wallop::{GeneratorImages, SpectrumEntry, WallFactor, WallOperator};

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn arb_laurent() -> impl Strategy<Value = QLaurent> {
    proptest::collection::vec((-5i64..=5, arb_rat()), 0..5).prop_map(|terms| {
        let mut p = QLaurent::zero();
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bar_involution_is_involutive_ring_hom(p in arb_laurent(), q in arb_laurent()) {
        prop_assert_eq!(p.bar_involution().bar_involution(), p.clone());
        prop_assert_eq!(
            p.add(&q).bar_involution(),
            p.bar_involution().add(&q.bar_involution())
        );
        prop_assert_eq!(
            p.mul(&q).bar_involution(),
            p.bar_involution().mul(&q.bar_involution())
        );
    }

    #[test]
    fn laurent_division_inverts_multiplication(p in arb_laurent(), q in arb_laurent()) {
        prop_assume!(!q.is_zero());
        let prod = p.mul(&q);
        prop_assert_eq!(prod.try_div(&q).unwrap(), p);
    }
}

/// Random small torus elements over two central variables with Laurent
/// coefficients.
fn arb_torus(order: u8) -> impl Strategy<Value = TorusElement> {
    let ctx = SeriesContext::central_only(&["t1", "t2"], order);
    proptest::collection::vec(
        (0u8..=2, 0u8..=2, -2i64..=2, -2i64..=2, arb_laurent()),
        1..5,
    )
    .prop_map(move |terms| {
        let mut out = TorusElement::zero(&ctx);
        for (d1, d2, a, b, c) in terms {
            let md = Multidegree::UNIT
                .with_central_exp(0, d1.min(order))
                .with_central_exp(1, d2.min(order));
            out.add_term(md, LatticeVec::new(a, b), &QRational::from_laurent(c));
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn twisted_product_is_associative(
        a in arb_torus(5),
        b in arb_torus(5),
        c in arb_torus(5),
    ) {
        let left = a.twisted_mul(&b).unwrap().twisted_mul(&c).unwrap();
        let right = a.twisted_mul(&b.twisted_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn twisted_product_commutes_at_q_one(a in arb_torus(4), b in arb_torus(4)) {
        // the specialization v = 1 of ab - ba vanishes
        let comm = a.twisted_mul(&b).unwrap().sub(&b.twisted_mul(&a).unwrap());
        for (_, coeff) in comm.iter() {
            let p = coeff.try_into_laurent().expect("Laurent inputs stay Laurent");
            prop_assert_eq!(p.eval_at_one(), rat_int(0));
        }
    }
}

/// Collinear elements in the maximal ideal, for exp/log round trips.
fn arb_collinear(order: u8) -> impl Strategy<Value = TorusElement> {
    let ctx = SeriesContext::central_only(&["t1", "t2"], order);
    proptest::collection::vec((1u8..=2, 1u8..=2, 1i64..=2, arb_laurent()), 1..4).prop_map(
        move |terms| {
            let gamma = LatticeVec::new(1, 1);
            let mut out = TorusElement::zero(&ctx);
            for (d1, d2, m, c) in terms {
                let md = Multidegree::UNIT
                    .with_central_exp(0, d1.min(order))
                    .with_central_exp(1, d2.min(order));
                out.add_term(md, gamma.scale(m), &QRational::from_laurent(c));
            }
            out
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exp_log_round_trip_at_every_order(elt in arb_collinear(8), order in 1u8..=8) {
        // re-truncate to the chosen order, then round-trip exactly
        let ctx = SeriesContext::central_only(&["t1", "t2"], order);
        let mut trunc = TorusElement::zero(&ctx);
        for ((md, alpha), c) in elt.iter() {
            let mut ok = Multidegree::UNIT;
            let mut alive = true;
            for var in 0..2 {
                for _ in 0..md.central_exp(var) {
                    match ok.mul(&Multidegree::central_var(var), &ctx) {
                        Some(next) => ok = next,
                        None => {
                            alive = false;
                            break;
                        }
                    }
                }
            }
            if alive {
                trunc.add_term(ok, *alpha, c);
            }
        }
        let e = trunc.series_exp().unwrap();
        prop_assert_eq!(e.series_log().unwrap(), trunc.clone());
        let l = {
            let mut one_plus = trunc.clone();
            one_plus.add_term(Multidegree::UNIT, LatticeVec::ZERO, &QRational::one());
            one_plus.series_log().unwrap()
        };
        let mut back = l.series_exp().unwrap();
        back.add_term(Multidegree::UNIT, LatticeVec::ZERO, &QRational::one().neg());
        prop_assert_eq!(back, trunc);
    }
}

fn arb_wall_operator() -> impl Strategy<Value = WallOperator> {
    proptest::collection::vec(
        (1u32..=2, -1i64..=1, prop_oneof![Just(rat_int(1)), Just(rat_int(-1)), Just(rat(1, 2)), Just(rat_int(2))]),
        1..3,
    )
    .prop_map(|entries| {
        let sigma = Multidegree::UNIT
            .with_central_exp(0, 1)
            .with_central_exp(1, 1);
        WallOperator::new(
            LatticeVec::new(1, 1),
            sigma,
            entries
                .into_iter()
                .map(|(k, n, omega)| SpectrumEntry { k, n, omega })
                .collect(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn wall_automorphisms_are_algebra_maps(
        op in arb_wall_operator(),
        a in arb_torus(4),
        b in arb_torus(4),
    ) {
        let ctx = a.ctx().clone();
        let images = GeneratorImages::from_wall_operator(&op, &ctx).unwrap();
        // unit preserving
        prop_assert_eq!(
            images.apply(&TorusElement::one(&ctx)).unwrap(),
            TorusElement::one(&ctx)
        );
        // multiplicative
        let lhs = images.apply(&a.twisted_mul(&b).unwrap()).unwrap();
        let rhs = images
            .apply(&a)
            .unwrap()
            .twisted_mul(&images.apply(&b).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
        // filtration preserving: applying the factor to a generator never
        // lowers the central degree below the input's
        let factor = WallFactor::Spectrum(op);
        let img = factor.apply(&a).unwrap();
        let min_in = a
            .iter()
            .map(|((md, _), _)| md.total_central_degree(&ctx))
            .min()
            .unwrap_or(0);
        for ((md, _), _) in img.iter() {
            prop_assert!(md.total_central_degree(&ctx) >= min_in);
        }
    }

    #[test]
    fn adjoint_action_agrees_with_generator_images(
        op in arb_wall_operator(),
        a in -2i64..=2,
        b in -2i64..=2,
    ) {
        prop_assume!((a, b) != (0, 0));
        let ctx = SeriesContext::central_only(&["t1", "t2"], 4);
        let beta = LatticeVec::new(a, b);
        let direct = op.adjoint_action(&ctx, beta).unwrap();
        let images = GeneratorImages::from_wall_operator(&op, &ctx).unwrap();
        let via_images = images
            .apply(&TorusElement::generator(&ctx, beta))
            .unwrap();
        prop_assert_eq!(direct, via_images);
    }
}
