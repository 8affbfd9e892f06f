mod common;

use common::{examples, rng};
use cremona_core::curve::{multiplicity_implicit, multiplicity_param, random_invertible, ProjPoint};
use cremona_core::maps::linear_pushforward;
use proptest::prelude::*;
use rand::Rng;

#[test]
fn parametrizations_satisfy_the_equation() {
    for ex in examples() {
        let f = ex.curve.implicit().unwrap();
        assert!(ex.curve.param().unwrap().pull_back(f).is_zero(), "{}", ex.name);
    }
}

#[test]
fn multiplicity_oracles_agree() {
    for ex in examples() {
        let field = ex.curve.field().clone();
        let f = ex.curve.implicit().unwrap();
        let phi = ex.curve.param().unwrap();
        let mut r = rng(0x5eed);
        let mut points: Vec<ProjPoint> = ex.singular.iter().map(|(p, _)| p.clone()).collect();
        points.push(ex.point.clone());
        while points.len() < 20 {
            let (u, v) = (field.random_small(&mut r, 5), field.random_small(&mut r, 5));
            let q = if r.gen_bool(0.5) { phi.eval(&u, &v) } else { ProjPoint::new(u, v, field.random_small(&mut r, 5)).ok() };
            points.extend(q);
        }
        for (k, p) in points.iter().enumerate() {
            let a = multiplicity_implicit(f, p);
            assert_eq!(a, multiplicity_param(phi, p, 3, k as u64), "{} at {p}", ex.name);
        }
        for (p, m) in &ex.singular {
            assert_eq!(multiplicity_implicit(f, p), *m, "{} at {p}", ex.name);
        }
    }
}

#[test]
fn singularities_fit_the_genus_zero_budget() {
    for ex in examples() {
        let d = ex.curve.degree().unwrap();
        let used: u32 = ex.singular.iter().map(|(_, m)| m * (m - 1)).sum();
        assert!(used <= (d - 1) * (d - 2), "{}: {used}", ex.name);
    }
}

proptest! {
    #![proptest_config(common::config(10))]

    #[test]
    fn multiplicity_is_invariant_under_coordinate_changes(seed in any::<u64>()) {
        let mut r = rng(seed);
        for ex in examples() {
            let m = random_invertible(ex.curve.field(), &mut r);
            let moved = linear_pushforward(&ex.curve, &m).unwrap();
            let g = moved.implicit().unwrap();
            for (p, mult) in ex.singular.iter().chain([(ex.point.clone(), 0)].iter()) {
                let before = multiplicity_implicit(ex.curve.implicit().unwrap(), p);
                prop_assert_eq!(multiplicity_implicit(g, &p.apply(&m).unwrap()), before);
                if *mult > 0 {
                    prop_assert_eq!(before, *mult);
                }
            }
        }
    }
}
