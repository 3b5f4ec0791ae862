mod common;

use common::{fields, fp, poly};
use dgreg::groebner::{lift, submodule_basis, submodule_contains, syzygies, Column, Ideal};
use dgreg::{Field, MonomialOrder, Poly};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn small_ideal(field: Field, n: usize) -> impl Strategy<Value = Vec<Poly>> {
    prop::collection::vec(poly(field, n, 3), 1..=3)
}

fn ideal_case() -> impl Strategy<Value = (Vec<Poly>, Poly)> {
    (fields(), 1usize..=3).prop_flat_map(|(f, n)| (small_ideal(f, n), poly(f, n, 4)))
}

fn ideal(gens: &[Poly]) -> Ideal {
    Ideal::new(gens[0].field(), gens[0].nvars(), gens.to_vec())
}

fn combine(c: &[Poly], g: &[Poly]) -> Poly {
    c.iter().zip(g).fold(Poly::zero(g[0].field(), g[0].nvars()), |acc, (a, b)| &acc + &(a * b))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, rng_seed: RngSeed::Fixed(3), ..ProptestConfig::default() })]

    #[test]
    fn basis_and_generators_span_each_other((gens, _) in ideal_case()) {
        let i = ideal(&gens);
        let n = i.nvars();
        for ord in [MonomialOrder::grevlex(n), MonomialOrder::lex(n)] {
            let g = i.groebner(ord).unwrap();
            let gi = Ideal::new(i.field(), n, g.clone());
            for p in &gens {
                prop_assert!(gi.normal_form(p, ord).unwrap().is_zero());
            }
            for p in &g {
                prop_assert!(i.contains(p).unwrap());
            }
        }
    }

    #[test]
    fn normal_form_is_idempotent((gens, p) in ideal_case()) {
        let i = ideal(&gens);
        let ord = MonomialOrder::grevlex(i.nvars());
        let r = i.normal_form(&p, ord).unwrap();
        prop_assert_eq!(i.normal_form(&r, ord).unwrap(), r.clone());
        prop_assert!(i.contains(&(&p - &r)).unwrap());
    }

    #[test]
    fn members_lift((gens, c) in (fields(), 1usize..=3).prop_flat_map(|(f, n)| {
        small_ideal(f, n).prop_flat_map(move |g| {
            let k = g.len();
            (Just(g), prop::collection::vec(poly(f, n, 3), k))
        })
    })) {
        let v = combine(&c, &gens);
        let cols: Vec<Column> = gens.iter().map(|g| vec![g.clone()]).collect();
        let l = lift(&[v.clone()], &cols, gens[0].field(), gens[0].nvars()).unwrap();
        prop_assert_eq!(combine(&l, &gens), v);
    }

    #[test]
    fn syzygies_are_sound_and_complete((gens, shift) in (fields(), 1usize..=3).prop_flat_map(|(f, n)| {
        (prop::collection::vec(poly(f, n, 3), 2..=4), 1usize..4)
    })) {
        let (f, n, k) = (gens[0].field(), gens[0].nvars(), gens.len());
        let cols: Vec<Column> = gens.iter().map(|g| vec![g.clone()]).collect();
        let syz = syzygies(&cols, 1, f, n).unwrap();
        for s in &syz {
            prop_assert_eq!(s.len(), k);
            prop_assert!(combine(s, &gens).is_zero());
        }
        // same module from a rotated generating list
        let perm: Vec<usize> = (0..k).map(|i| (i + shift) % k).collect();
        let rotated: Vec<Column> = perm.iter().map(|&i| cols[i].clone()).collect();
        let back: Vec<Column> = syzygies(&rotated, 1, f, n)
            .unwrap()
            .into_iter()
            .map(|s| {
                let mut v = vec![Poly::zero(f, n); k];
                for (j, &i) in perm.iter().enumerate() {
                    v[i] = s[j].clone();
                }
                v
            })
            .collect();
        let a = submodule_basis(&syz, k, f, n).unwrap();
        let b = submodule_basis(&back, k, f, n).unwrap();
        for v in &back {
            prop_assert!(submodule_contains(&a, v).unwrap());
        }
        for v in &syz {
            prop_assert!(submodule_contains(&b, v).unwrap());
        }
    }

    #[test]
    fn dimension_ignores_the_order((gens, _) in ideal_case()) {
        let i = ideal(&gens);
        let n = i.nvars();
        let g = i.dim_global_with(MonomialOrder::grevlex(n)).unwrap();
        let l = i.dim_global_with(MonomialOrder::lex(n)).unwrap();
        prop_assert_eq!(g, l);
        let leads = i.lead_monomials(MonomialOrder::grevlex(n)).unwrap();
        prop_assert_eq!(dgreg::groebner::monomial_dimension(&leads, n), g);
    }

    #[test]
    fn colon_and_saturation((gens, p) in ideal_case()) {
        let i = ideal(&gens);
        prop_assume!(!p.is_zero());
        let c = i.colon(&p).unwrap();
        prop_assert!(c.contains_ideal(&i).unwrap());
        for h in c.gens() {
            prop_assert!(i.contains(&(h * &p)).unwrap());
        }
        let s = i.saturate(&p).unwrap();
        prop_assert!(s.contains_ideal(&c).unwrap());
    }

    #[test]
    fn local_membership_two_ways((gens, p) in (1usize..=3).prop_flat_map(|n| (cone(n), form(n)))) {
        local_membership_agrees(&gens, &p)?;
    }

    #[test]
    fn local_membership_off_a_cone((gens, p) in (1usize..=2).prop_flat_map(|n| {
        (prop::collection::vec(poly(fp(), n, 3), 1..=2), poly(fp(), n, 3))
    })) {
        local_membership_agrees(&gens, &p)?;
    }
}

/// Homogeneous element of a random degree.
fn form(n: usize) -> impl Strategy<Value = Poly> {
    (poly(fp(), n, 8), 1u32..=4).prop_map(|(p, d)| p.homogeneous_part(d))
}

fn cone(n: usize) -> impl Strategy<Value = Vec<Poly>> {
    prop::collection::vec(form(n), 1..=3)
}

fn local_membership_agrees(gens: &[Poly], p: &Poly) -> Result<(), TestCaseError> {
    let i = ideal(gens);
    // multiplying by a unit at the origin never changes local membership
    let u = &Poly::one(fp(), i.nvars()) + &Poly::var(fp(), i.nvars(), 0);
    for q in [p.clone(), p * &u, &gens[0] * &u] {
        prop_assert_eq!(i.contains_locally(&q).unwrap(), i.contains_locally_via_colon(&q).unwrap());
    }
    prop_assert!(i.contains_locally(&(&gens[0] * &u)).unwrap());
    Ok(())
}
