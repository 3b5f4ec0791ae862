mod common;

use common::{fields, point, poly};
use dgreg::{MonomialOrder, Poly};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn triple() -> impl Strategy<Value = (Poly, Poly, Poly)> {
    fields().prop_flat_map(|f| (poly(f, 3, 5), poly(f, 3, 5), poly(f, 3, 5)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, rng_seed: RngSeed::Fixed(2), ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms((a, b, c) in triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert!((&a - &a).is_zero());
    }
}

proptest! {
    #[test]
    fn translation_round_trip((p, c) in fields().prop_flat_map(|f| (poly(f, 3, 6), point(f, 3)))) {
        let back: Vec<_> = c.iter().map(|x| x.neg()).collect();
        prop_assert_eq!(p.translate(&c).unwrap().translate(&back).unwrap(), p);
    }

    #[test]
    fn translation_moves_values((p, c) in fields().prop_flat_map(|f| (poly(f, 2, 6), point(f, 2)))) {
        let origin = vec![p.field().zero(); 2];
        prop_assert_eq!(p.translate(&c).unwrap().eval(&origin).unwrap(), p.eval(&c).unwrap());
    }

    #[test]
    fn linear_part_is_additive((p, q) in fields().prop_flat_map(|f| (poly(f, 3, 6), poly(f, 3, 6)))) {
        prop_assert_eq!((&p + &q).linear_part(), &p.linear_part() + &q.linear_part());
    }

    #[test]
    fn lead_of_product((p, q) in fields().prop_flat_map(|f| (poly(f, 3, 5), poly(f, 3, 5)))) {
        prop_assume!(!p.is_zero() && !q.is_zero());
        for ord in [MonomialOrder::grevlex(3), MonomialOrder::lex(3)] {
            let (mp, cp) = p.lead_term(&ord).unwrap().clone();
            let (mq, cq) = q.lead_term(&ord).unwrap().clone();
            let (m, c) = (&p * &q).lead_term(&ord).unwrap().clone();
            prop_assert_eq!(m, mp.mul(&mq));
            prop_assert_eq!(c, cp.mul(&cq));
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism((p, q, c) in fields().prop_flat_map(|f| (poly(f, 3, 5), poly(f, 3, 5), point(f, 3)))) {
        let (a, b) = (p.eval(&c).unwrap(), q.eval(&c).unwrap());
        prop_assert_eq!((&p * &q).eval(&c).unwrap(), a.mul(&b));
        prop_assert_eq!((&p + &q).eval(&c).unwrap(), a.add(&b));
    }

    #[test]
    fn display_parses_back(p in fields().prop_flat_map(|f| poly(f, 3, 6))) {
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let text = p.display_with(&names).to_string();
        prop_assert_eq!(Poly::parse(&text, &names, p.field()).unwrap(), p);
    }
}
