mod common;

use common::{fp, poly};
use dgreg::groebner::Column;
use dgreg::module::{ComplexOfModules, ModuleFingerprint, PresentedModule, PrimeIdealSpec};
use dgreg::{Field, Poly};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn column(f: Field, n: usize, g: usize) -> impl Strategy<Value = Column> {
    prop::collection::vec(poly(f, n, 2), g)
}

fn module() -> impl Strategy<Value = PresentedModule> {
    (1usize..=2, 1usize..=2).prop_flat_map(|(n, g)| {
        let f = fp();
        (prop::collection::vec(poly(f, n, 2), 0..=1), prop::collection::vec(column(f, n, g), 0..=3))
            .prop_map(move |(amb, rels)| PresentedModule::new(f, n, amb, g, rels).unwrap())
    })
}

fn zero_map(source: &PresentedModule, target: &PresentedModule) -> Vec<Column> {
    let z = Poly::zero(source.field(), source.nvars());
    vec![vec![z; target.num_gens()]; source.num_gens()]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, rng_seed: RngSeed::Fixed(5), ..ProptestConfig::default() })]

    #[test]
    fn zero_differentials_give_back_the_terms((a, b) in (1usize..=2).prop_flat_map(|n| {
        let f = fp();
        let m = move |g| (prop::collection::vec(poly(f, n, 2), 0..=1), prop::collection::vec(column(f, n, g), 0..=2))
            .prop_map(move |(amb, rels)| PresentedModule::new(f, n, amb, g, rels).unwrap());
        (m(1), m(2))
    })) {
        let d = zero_map(&a, &b);
        let c = ComplexOfModules::new(-1, vec![a.clone(), b.clone()], vec![d]).unwrap();
        for (deg, t) in [(-1, &a), (0, &b)] {
            let h = ModuleFingerprint::of(&c.homology_at(deg).unwrap()).unwrap();
            prop_assert!(h.matches(&ModuleFingerprint::of(t).unwrap()).unwrap());
        }
    }

    #[test]
    fn nakayama_consistency(m in module()) {
        let origin = PrimeIdealSpec::origin(m.field(), m.nvars());
        prop_assert_eq!(m.is_locally_zero(&origin).unwrap(), m.min_generators_at_origin() == 0);
        prop_assert_eq!(m.is_locally_zero_at_origin(), m.min_generators_at_origin() == 0);
    }

    #[test]
    fn annihilator_is_sound(m in module()) {
        let ann = m.annihilator().unwrap();
        prop_assert!(m.is_annihilated_by(ann.gens()).unwrap());
        let (f, n, g) = (m.field(), m.nvars(), m.num_gens());
        let mm: Vec<Column> = (0..n)
            .flat_map(|i| (0..g).map(move |j| (i, j)))
            .map(|(i, j)| {
                let mut c = vec![Poly::zero(f, n); g];
                c[j] = Poly::var(f, n, i);
                c
            })
            .collect();
        let sub = m.submodule(&mm).unwrap();
        prop_assert!(sub.is_annihilated_by(ann.gens()).unwrap());
    }

    #[test]
    fn cyclic_annihilator_is_the_ideal((n, gens) in (1usize..=3).prop_flat_map(|n| (Just(n), prop::collection::vec(poly(fp(), n, 3), 1..=3)))) {
        let m = PresentedModule::cyclic(fp(), n, Vec::new(), &gens).unwrap();
        let ann = m.annihilator().unwrap();
        let i = dgreg::groebner::Ideal::new(fp(), n, gens);
        prop_assert!(ann.same_as(&i).unwrap());
    }

    #[test]
    fn nonzero_composites_are_rejected((n, a, b) in (1usize..=2).prop_flat_map(|n| (Just(n), poly(fp(), n, 3), poly(fp(), n, 3)))) {
        let free = PresentedModule::free(fp(), n, Vec::new(), 1).unwrap();
        let c = ComplexOfModules::new(-2, vec![free.clone(), free.clone(), free], vec![vec![vec![a.clone()]], vec![vec![b.clone()]]]);
        prop_assert_eq!(c.is_ok(), (&a * &b).is_zero());
    }
}
