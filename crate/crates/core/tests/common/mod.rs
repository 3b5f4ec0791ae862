#![allow(dead_code)]

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dgreg::dg::DGRingSpec;
use dgreg::field::DEFAULT_PRIME;
use dgreg::sample::{random_tower, TowerKind};
use dgreg::{Field, Monomial, Poly};

pub fn fp() -> Field {
    Field::Prime(DEFAULT_PRIME)
}

pub fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(fp()), Just(Field::Prime(7))]
}

/// Sparse polynomial in `n` variables with small exponents and coefficients.
pub fn poly(field: Field, n: usize, max_terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0u32..4, n), -9i64..10), 0..=max_terms).prop_map(move |terms| {
        Poly::from_terms(
            field,
            n,
            terms.into_iter().map(|(e, c)| (Monomial::from_exps(&e), field.from_i64(c))),
        )
    })
}

pub fn point(field: Field, n: usize) -> impl Strategy<Value = Vec<dgreg::FieldElem>> {
    prop::collection::vec(-5i64..6, n).prop_map(move |v| v.into_iter().map(|c| field.from_i64(c)).collect())
}

pub fn tower(seed: u64, kind: TowerKind) -> (DGRingSpec, Vec<u32>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = random_tower(&mut rng, fp(), kind);
    (t.spec, t.weights)
}

pub fn kinds() -> impl Strategy<Value = TowerKind> {
    prop_oneof![
        Just(TowerKind::Generic),
        Just(TowerKind::CompleteIntersection),
        Just(TowerKind::RegularBiased)
    ]
}
