mod common;

use common::{cyc, fields, random_element, random_form, rng};
use cremona_core::field::Field;
use cremona_core::poly::{gcd, parse_poly, resultant, uv, xyz, MultiPoly};
use proptest::prelude::*;

fn field_for(k: usize) -> Field {
    [Field::rational(), cyc(3), cyc(8), common::fp(7)][k].clone()
}

proptest! {
    #![proptest_config(common::config(60))]

    #[test]
    fn gcd_reconstructs_and_is_symmetric(seed in any::<u64>(), k in 0usize..4, dc in 0u32..3, da in 0u32..3, db in 1u32..3) {
        let f = field_for(k);
        let mut r = rng(seed);
        let (c, a, b) = (random_form(&f, &mut r, dc, false, 0.7), random_form(&f, &mut r, da, false, 0.7), random_form(&f, &mut r, db, false, 0.7));
        prop_assume!(!c.is_zero() && !a.is_zero() && !b.is_zero());
        let (fa, fb) = (&c * &a, &c * &b);
        let g = gcd(&fa, &fb);
        let (qa, qb) = (fa.exact_div(&g).unwrap(), fb.exact_div(&g).unwrap());
        prop_assert_eq!(&qa * &g, fa.clone());
        prop_assert_eq!(&qb * &g, fb.clone());
        prop_assert!(fa.exact_div(&c).is_ok() && g.exact_div(&c).is_ok(), "the common factor divides the gcd");
        prop_assert!(gcd(&qa, &qb).is_constant(), "cofactors are coprime");
        prop_assert!(gcd(&fb, &fa).proportional(&g));
    }

    #[test]
    fn resultant_sign_rule_and_multiplicativity(seed in any::<u64>(), k in 0usize..4, df in 1u32..4, dg in 1u32..3, dh in 1u32..3) {
        let f = field_for(k);
        let mut r = rng(seed);
        let form = |r: &mut _, d| random_form(&f, r, d, true, 1.0);
        let (p, q, h) = (form(&mut r, df), form(&mut r, dg), form(&mut r, dh));
        prop_assume!([&p, &q, &h].iter().all(|x| x.degree_in(0) == x.degree()));
        let res = |a: &MultiPoly, b: &MultiPoly| resultant(a, b, "u").unwrap();
        let sign = if (df * dg) % 2 == 1 { f.from_i64(-1) } else { f.one() };
        prop_assert_eq!(res(&q, &p), res(&p, &q).scale(&sign));
        let lhs = res(&p, &(&q * &h));
        prop_assert_eq!(lhs, &res(&p, &q) * &res(&p, &h));
    }

    #[test]
    fn substitution_is_a_ring_map(seed in any::<u64>(), k in 0usize..4) {
        let f = field_for(k);
        let mut r = rng(seed);
        let (a, b) = (random_form(&f, &mut r, 2, false, 0.6), random_form(&f, &mut r, 3, false, 0.6));
        let images: Vec<MultiPoly> = (0..3).map(|_| random_form(&f, &mut r, 2, true, 0.8)).collect();
        let c = random_element(&f, &mut r);
        let s = |p: &MultiPoly| p.substitute(&images);
        prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
        prop_assert_eq!(s(&(&a + &a.scale(&c))), &s(&a) + &s(&a).scale(&c));
        prop_assert_eq!(s(&MultiPoly::one(&f, &xyz())), MultiPoly::one(&f, &uv()));
    }

    #[test]
    fn render_then_parse_is_identity(seed in any::<u64>(), k in 0usize..6, d in 0u32..5) {
        let f = &fields()[k];
        let mut r = rng(seed);
        let p = random_form(f, &mut r, d, false, 0.5);
        let q = &p + &MultiPoly::constant(random_element(f, &mut r), &xyz());
        for x in [p, q] {
            prop_assert_eq!(parse_poly(&x.to_string(), f, &xyz()).unwrap(), x);
        }
    }
}
