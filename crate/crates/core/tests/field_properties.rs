mod common;

use common::{cyc, fields, random_element, rng};
use cremona_core::field::{cyclotomic_polynomial, sqrt_in_field, PrecisionBudget, SqrtResult};
use proptest::prelude::*;

proptest! {
    #![proptest_config(common::config(200))]

    #[test]
    fn ring_axioms(seed in any::<u64>(), k in 0usize..6) {
        let f = &fields()[k];
        let mut r = rng(seed);
        let (a, b, c) = (random_element(f, &mut r), random_element(f, &mut r), random_element(f, &mut r));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
    }

    #[test]
    fn inverses_and_powers(seed in any::<u64>(), k in 0usize..6, n in 0u64..9) {
        let f = &fields()[k];
        let a = random_element(f, &mut rng(seed));
        prop_assume!(!a.is_zero());
        prop_assert!((&a.inv().unwrap() * &a).is_one());
        let repeated = (0..n).fold(f.one(), |acc, _| &acc * &a);
        prop_assert_eq!(a.pow(n), repeated);
    }

    #[test]
    fn square_roots_of_squares(seed in any::<u64>(), k in 0usize..6) {
        let f = &fields()[k];
        let r = random_element(f, &mut rng(seed));
        let sq = &r * &r;
        match sqrt_in_field(&sq, &PrecisionBudget::default()) {
            SqrtResult::Root(s) => prop_assert_eq!(&s * &s, sq),
            other => prop_assert!(false, "no root of {} found: {:?}", sq, other),
        }
    }
}

#[test]
fn cyclotomic_generators_are_primitive_roots() {
    for n in 3..=24u32 {
        let f = cyc(n);
        let z = f.generator().unwrap();
        assert!(z.pow(u64::from(n)).is_one(), "ζ_{n}^{n}");
        for d in 1..n {
            if n % d == 0 {
                assert!(!z.pow(u64::from(d)).is_one(), "ζ_{n}^{d}");
            }
        }
        let phi = cyclotomic_polynomial(n);
        let value = phi.iter().rev().fold(f.zero(), |acc, &c| &(&acc * &z) + &f.from_i64(c));
        assert!(value.is_zero(), "Φ_{n}(ζ)");
    }
}
