mod common;

use common::{fp, kinds, tower};
use dgreg::dg::{fingerprints_match, realize};
use dgreg::regularity::{
    apply_matrix, h0_is_regular_local, is_local_cm, is_regular_sequence, is_sequence_regular, local_dim, minimal_generators,
    parameter_change_matrix, residue_dg_field, residue_dg_field_with, seq_depth, SearchConfig,
};
use dgreg::sample::{Sampler, TowerKind};
use dgreg::Poly;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn config(seed: u64) -> SearchConfig {
    SearchConfig { trials: 32, seed }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, rng_seed: RngSeed::Fixed(23), ..ProptestConfig::default() })]

    #[test]
    fn depth_is_bounded_by_dimension(seed in any::<u64>(), kind in kinds()) {
        let r = realize(&tower(seed, kind).0).unwrap();
        let d = seq_depth(&r, config(seed)).unwrap();
        let dim = local_dim(&r).unwrap();
        prop_assert!(d.value <= dim);
        prop_assert_eq!(d.witness.len(), d.value);
        prop_assert!(is_regular_sequence(&r, &d.witness).unwrap());
        let cm = is_local_cm(&r, config(seed)).unwrap();
        prop_assert_eq!(cm.value, cm.seq_depth.value == dim);
    }

    #[test]
    fn sequence_regular_rings_are_cm_and_regular(seed in any::<u64>(), kind in kinds()) {
        let r = realize(&tower(seed, kind).0).unwrap();
        let sr = is_sequence_regular(&r).unwrap();
        let cm = is_local_cm(&r, config(seed)).unwrap();
        let reg = h0_is_regular_local(&r).unwrap();
        if sr.value {
            prop_assert!(cm.value && reg);
            prop_assert!(r.has_constant_amplitude().unwrap());
        }
        if cm.value && cm.certified && reg {
            prop_assert!(sr.value);
        }
    }

    #[test]
    fn residue_fields_of_sequence_regular_rings(seed in any::<u64>()) {
        let r = realize(&tower(seed, TowerKind::RegularBiased).0).unwrap();
        prop_assume!(is_sequence_regular(&r).unwrap().value);
        let k = residue_dg_field(&r).unwrap();
        prop_assert!(k.consistent());
        prop_assert_eq!(k.amp, r.amplitude_profile().unwrap().amp);
        prop_assert_eq!(k.flat_dimension, local_dim(&r).unwrap());
    }

    #[test]
    fn regularity_survives_unit_rescaling(seed in any::<u64>(), kind in kinds(), c in 1i64..100) {
        let (spec, w) = tower(seed, kind);
        let r = realize(&spec).unwrap();
        let mut s = Sampler::with_weights(ChaCha8Rng::seed_from_u64(seed), fp(), w);
        let seq: Vec<Poly> = (0..2).map(|_| s.element()).filter(|p| !p.is_zero()).collect();
        let scaled: Vec<Poly> = seq.iter().enumerate().map(|(i, p)| p.scale(&fp().from_i64(c + i as i64))).collect();
        prop_assert_eq!(is_regular_sequence(&r, &seq).unwrap(), is_regular_sequence(&r, &scaled).unwrap());
    }

    #[test]
    fn parameter_changes_reproduce_the_target(seed in any::<u64>()) {
        let (spec, w) = tower(seed, TowerKind::RegularBiased);
        let r = realize(&spec).unwrap();
        let a = minimal_generators(&r);
        prop_assume!(!a.is_empty());
        let mut s = Sampler::with_weights(ChaCha8Rng::seed_from_u64(seed), fp(), w.clone());
        let degrees: Vec<u32> = a.iter().map(|p| p.weighted_degree(&w).unwrap_or(0)).collect();
        let t = s.graded_invertible(&degrees);
        let b = apply_matrix(&t, &a);
        let m = parameter_change_matrix(&r, &a, &b).unwrap();
        prop_assert!(m.det_is_local_unit());
        let j = r.h0_ideal();
        for ((row, u), bi) in m.numerators.iter().zip(&m.denominators).zip(&b) {
            prop_assert!(u.is_local_unit());
            let resid = &(u * bi) - &apply_matrix(&[row.clone()], &a)[0];
            prop_assert!(j.contains(&resid).unwrap());
        }
    }

    #[test]
    fn kappa_does_not_depend_on_the_parameters(seed in any::<u64>()) {
        let (spec, w) = tower(seed, TowerKind::RegularBiased);
        let r = realize(&spec).unwrap();
        prop_assume!(is_sequence_regular(&r).unwrap().value);
        let k1 = residue_dg_field(&r).unwrap();
        prop_assume!(!k1.parameters.is_empty());
        let mut s = Sampler::with_weights(ChaCha8Rng::seed_from_u64(seed ^ 1), fp(), w.clone());
        let degrees: Vec<u32> = k1.parameters.iter().map(|p| p.weighted_degree(&w).unwrap_or(0)).collect();
        let t = s.graded_invertible(&degrees);
        let k2 = residue_dg_field_with(&r, &apply_matrix(&t, &k1.parameters)).unwrap();
        prop_assert!(k2.consistent());
        let f1 = r.extend_koszul(&k1.parameters).unwrap().fingerprints().unwrap();
        let f2 = r.extend_koszul(&k2.parameters).unwrap().fingerprints().unwrap();
        prop_assert!(fingerprints_match(&f1, &f2, r.field(), r.nvars()).unwrap());
    }
}
