mod common;

use common::{examples, random_mobius, rng};
use cremona_core::cremona::{conic_lift, conjugate_extension, transported_conic_automorphism, ReductionChain, ReductionStep};
use cremona_core::curve::{random_invertible, ProjPoint};
use cremona_core::field::Field;
use cremona_core::galois::check_extension;
use cremona_core::scenario::Scenario;
use proptest::prelude::*;
use rand::Rng;

fn quartic_chain() -> ReductionChain {
    Scenario::load("quartic-i").unwrap().reduction_chain().unwrap().unwrap()
}

proptest! {
    #![proptest_config(common::config(20))]

    #[test]
    fn conic_lift_is_a_homomorphism(seed in any::<u64>()) {
        let f = Field::rational();
        let mut r = rng(seed);
        let (g, h) = (random_mobius(&f, &mut r), random_mobius(&f, &mut r));
        prop_assert!(conic_lift(&g.compose(&h)).proportional(&conic_lift(&g).mul(&conic_lift(&h))));
        prop_assert!(conic_lift(&g.inverse()).proportional(&conic_lift(&g).inverse().unwrap()));
    }

    #[test]
    fn random_chains_replay(seed in any::<u64>(), k in 0usize..2) {
        let mut r = rng(seed);
        let ex = &examples()[k];
        let field = ex.curve.field().clone();
        let mut chain = ReductionChain::new(ex.curve.clone());
        chain.push(ReductionStep::Linear(random_invertible(&field, &mut r))).unwrap();
        let phi = chain.end().param().unwrap().clone();
        let mut points = Vec::new();
        while points.len() < 3 {
            let (u, v) = (field.random_small(&mut r, 4), field.random_small(&mut r, 4));
            if let Some(q) = phi.eval(&u, &v) {
                if !points.contains(&q) {
                    points.push(q);
                }
            }
        }
        let points: [ProjPoint; 3] = points.try_into().unwrap();
        if chain.push(ReductionStep::StdQuadraticAt(points)).is_ok() {
            let rec = *chain.records().last().unwrap();
            let m = rec.multiplicities.unwrap();
            prop_assert_eq!(rec.degree_after, 2 * rec.degree_before - m.iter().sum::<u32>());
        }
        if r.gen_bool(0.5) {
            chain.push(ReductionStep::Linear(random_invertible(&field, &mut r))).unwrap();
        }
        prop_assert!(chain.replay().unwrap());
        let json = chain.to_json();
        let steps = ReductionChain::steps_from_json(&json, &field).unwrap();
        let rebuilt = ReductionChain::build(ex.curve.clone(), steps).unwrap();
        prop_assert_eq!(rebuilt.end().implicit().unwrap(), chain.end().implicit().unwrap());
    }
}

proptest! {
    #![proptest_config(common::config(6))]

    #[test]
    fn conjugated_extensions_preserve_the_start_curve(seed in any::<u64>(), conjugate in any::<bool>()) {
        let mut r = rng(seed);
        let mut chain = quartic_chain();
        if conjugate {
            chain = chain.conjugated(&random_invertible(chain.start().field(), &mut r)).unwrap();
        }
        let field = chain.start().field().clone();
        let g = random_mobius(&field, &mut r);
        let a = transported_conic_automorphism(chain.end().param().unwrap(), &g).unwrap();
        let j = conjugate_extension(&chain, &a).unwrap();
        let f = chain.start().implicit().unwrap();
        let p = ProjPoint::from_i64(&field, [1, 0, 0]).unwrap();
        let check = check_extension(&j, f, &p, Some((chain.start().param().unwrap(), &g)));
        prop_assert!(check.preserves_curve);
        prop_assert_eq!(check.restricts_to_deck, Some(true));
    }
}
