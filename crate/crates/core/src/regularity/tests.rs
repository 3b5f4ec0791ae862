use super::*;
use crate::dg::{realize, DGRingRealization, DGRingSpec, ExtensionModule};
use crate::field::Field;
use crate::poly::Poly;

fn f() -> Field {
    Field::prime(32003).unwrap()
}

fn names(n: usize) -> Vec<String> {
    ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
}

fn p(s: &str) -> Poly {
    Poly::parse(s, &names(2), f()).unwrap()
}

fn ring(gens: &[&str]) -> DGRingSpec {
    DGRingSpec::quotient(f(), names(2), gens.iter().map(|s| p(s)).collect())
}

fn real(spec: &DGRingSpec) -> DGRingRealization {
    realize(spec).unwrap()
}

fn example() -> DGRingSpec {
    ring(&["x*y"]).koszul(vec![p("x")])
}

fn counterexample() -> DGRingSpec {
    let one = names(1);
    let x = Poly::parse("x", &one, f()).unwrap();
    DGRingSpec::quotient(f(), one, vec![]).trivial_extension(ExtensionModule::cyclic(vec![x]), 2)
}

fn cfg() -> SearchConfig {
    SearchConfig::default()
}

#[test]
fn regular_elements_on_the_node() {
    let a = real(&ring(&["x*y"]));
    assert!(is_regular_element(&a, &p("x + y")).unwrap());
    assert!(!is_regular_element(&a, &p("x")).unwrap());
    assert!(is_regular_element(&a, &p("1 + x")).is_err());
    let b = real(&counterexample());
    let x = Poly::parse("x", &names(1), f()).unwrap();
    assert!(!is_regular_element(&b, &x).unwrap());
}

#[test]
fn regular_sequences() {
    let plane = real(&ring(&[]));
    assert!(is_regular_sequence(&plane, &[p("x"), p("y")]).unwrap());
    assert!(is_regular_sequence(&plane, &[]).unwrap());
    let node = real(&ring(&["x*y"]));
    assert!(!is_regular_sequence(&node, &[p("x")]).unwrap());
    assert!(is_regular_sequence(&node, &[p("x + y")]).unwrap());
}

#[test]
fn depths() {
    let plane = seq_depth(&real(&ring(&[])), cfg()).unwrap();
    assert_eq!((plane.value, plane.certified), (2, true));
    assert_eq!(plane.witness, vec![p("x"), p("y")]);
    assert_eq!(seq_depth(&real(&ring(&["x*y"])), cfg()).unwrap().value, 1);
    let b = seq_depth(&real(&counterexample()), cfg()).unwrap();
    assert_eq!((b.value, b.certified), (0, true));
}

#[test]
fn cohen_macaulay() {
    assert!(is_local_cm(&real(&ring(&["x*y"])), cfg()).unwrap().value);
    assert!(!is_local_cm(&real(&counterexample()), cfg()).unwrap().value);
    let embedded = is_local_cm(&real(&ring(&["x^2", "x*y"])), cfg()).unwrap();
    assert!(!embedded.value && embedded.certified);
}

#[test]
fn embedding_dimension() {
    let node = real(&ring(&["x*y"]));
    assert_eq!((embdim(&node), local_dim(&node).unwrap()), (2, 1));
    assert!(!h0_is_regular_local(&node).unwrap());
    let ex = real(&example());
    assert_eq!(embdim(&ex), 1);
    assert!(h0_is_regular_local(&ex).unwrap());
    let curve = real(&ring(&["x - y^2"]));
    assert_eq!(embdim(&curve), 1);
    assert!(h0_is_regular_local(&curve).unwrap());
}

#[test]
fn sequence_regularity() {
    let ex = is_sequence_regular(&real(&example())).unwrap();
    assert!(ex.value);
    assert_eq!(ex.witness, vec![p("y")]);
    assert!(!is_sequence_regular(&real(&counterexample())).unwrap().value);
    let node = is_sequence_regular(&real(&ring(&["x*y"]))).unwrap();
    assert_eq!((node.value, node.failed_at), (false, Some(0)));
}

#[test]
fn residue_fields() {
    let k = residue_dg_field(&real(&example())).unwrap();
    assert_eq!(k.parameters, vec![p("y")]);
    assert_eq!((k.amp, k.flat_dimension), (1, 1));
    assert!(k.consistent());
    let plane = residue_dg_field(&real(&ring(&[]))).unwrap();
    assert_eq!(plane.parameters, vec![p("x"), p("y")]);
    assert_eq!((plane.amp, plane.flat_dimension), (0, 2));
    assert!(plane.consistent());
    let point = residue_dg_field(&real(&ring(&["x", "y"]))).unwrap();
    assert!(point.parameters.is_empty());
    assert_eq!(point.flat_dimension, 0);
    assert!(residue_dg_field(&real(&ring(&["x*y"]))).is_err());
}

#[test]
fn parameter_changes() {
    let plane = real(&ring(&[]));
    let a = [p("x"), p("y")];
    let m = parameter_change_matrix(&plane, &a, &[p("x + y^2"), p("y")]).unwrap();
    assert_eq!(m.numerators, vec![vec![p("1"), p("y")], vec![p("0"), p("1")]]);
    assert!(m.det_at_origin.is_one());
    let swap = parameter_change_matrix(&plane, &a, &[p("y"), p("x")]).unwrap();
    assert_eq!(swap.det_at_origin, f().from_i64(-1));
    let shear = parameter_change_matrix(&plane, &a, &[p("x + y"), p("y")]).unwrap();
    assert_eq!(shear.numerators, vec![vec![p("1"), p("1")], vec![p("0"), p("1")]]);
    assert!(parameter_change_matrix(&plane, &a, &[p("x^2"), p("y")]).is_err());
}

#[test]
fn parameter_change_needs_a_unit_denominator() {
    // x = (x + x^2) / (1 + x) holds only after inverting 1 + x
    let one = names(1);
    let q = |s: &str| Poly::parse(s, &one, f()).unwrap();
    let line = real(&DGRingSpec::quotient(f(), one.clone(), vec![]));
    let m = parameter_change_matrix(&line, &[q("x + x^2")], &[q("x")]).unwrap();
    assert_eq!(m.denominators, vec![q("1 + x")]);
    assert_eq!(m.numerators, vec![vec![q("1")]]);
    assert!(m.det_is_local_unit());
}

#[test]
fn gl_invariance() {
    let plane = real(&ring(&[]));
    let id = vec![vec![p("1"), p("0")], vec![p("0"), p("1")]];
    let shear = vec![vec![p("1"), p("1")], vec![p("0"), p("1")]];
    assert!(verify_gl_invariance(&plane, &[p("x"), p("y")], &id).unwrap());
    assert!(verify_gl_invariance(&plane, &[p("x"), p("y")], &shear).unwrap());
    let node = real(&ring(&["x*y"]));
    let swap = vec![vec![p("0"), p("1")], vec![p("1"), p("0")]];
    assert!(verify_gl_invariance(&node, &[p("x"), p("y")], &swap).unwrap());
    let unit_entry = vec![vec![p("1 + x"), p("y")], vec![p("x"), p("2")]];
    assert!(verify_gl_invariance(&node, &[p("x"), p("y")], &unit_entry).unwrap());
    let singular = vec![vec![p("x"), p("0")], vec![p("0"), p("1")]];
    assert!(verify_gl_invariance(&node, &[p("x"), p("y")], &singular).is_err());
}

#[test]
fn kos_amp_examples() {
    let node = real(&ring(&["x*y"]));
    let r = verify_kos_amp(&node, &[p("x")], cfg()).unwrap();
    assert_eq!((r.predicted, r.computed, r.outcome), (1, 1, Outcome::Pass));
    let plane = real(&ring(&[]));
    let r = verify_kos_amp(&plane, &[p("x"), p("y")], cfg()).unwrap();
    assert_eq!((r.predicted, r.computed), (0, 0));
    let r = verify_kos_amp(&plane, &[p("x"), p("x*y")], cfg()).unwrap();
    assert_eq!((r.predicted, r.computed, r.outcome), (1, 1, Outcome::Pass));
}

#[test]
fn sop_and_double_cm() {
    let node = real(&ring(&["x*y"]));
    let r = verify_sop(&node, &[p("x + y")], cfg()).unwrap();
    assert!(r.regular && r.dimension_drops && r.outcome == Outcome::Pass);
    let r = verify_sop(&node, &[p("x")], cfg()).unwrap();
    assert!(!r.regular && !r.dimension_drops && r.outcome == Outcome::Pass);
    let plane = real(&ring(&[]));
    assert_eq!(verify_double_cm(&plane, &[p("x"), p("y")], cfg()).unwrap().outcome, Outcome::Pass);
    let d = verify_double_cm(&node, &[p("x")], cfg()).unwrap();
    assert!(!d.regular_on_a && !d.regular_on_h0);
}

#[test]
fn main_theorem_examples() {
    let sp = example();
    let r = verify_main(&sp, &real(&sp), cfg(), &[]).unwrap();
    assert!(r.sequence_regular.value && r.cm.value && r.h0_regular);
    assert_eq!(r.outcome, Outcome::Pass);
    let b = counterexample();
    let r = verify_main(&b, &real(&b), cfg(), &[]).unwrap();
    assert!(!r.sequence_regular.value && !r.cm.value && r.h0_regular);
    assert_eq!(r.outcome, Outcome::Pass);
    let node = ring(&["x*y"]);
    let r = verify_main(&node, &real(&node), cfg(), &[vec![f().one(), f().zero()]]).unwrap();
    assert_eq!(r.outcome, Outcome::Pass);
    assert!(r.cm_at_points[0].1);
}

#[test]
fn derived_quotients() {
    let plane = real(&ring(&[]));
    let r = verify_derived_quotient(&plane, &[p("x")]).unwrap();
    assert!(r.koszul_sequence_regular && r.quotient_regular);
    assert_eq!(r.extension, Some(vec![p("x"), p("y")]));
    let r = verify_derived_quotient(&plane, &[p("x^2")]).unwrap();
    assert!(!r.koszul_sequence_regular && !r.quotient_regular && r.outcome == Outcome::Pass);
    assert!(verify_derived_quotient(&real(&ring(&["x*y"])), &[p("x")]).is_err());
}

#[test]
fn points_on_the_locus() {
    let zero = f().zero();
    let one = f().one();
    let v = seq_regular_at_points(&example(), &[vec![zero.clone(), one.clone()]]).unwrap();
    assert!(v[0].sequence_regular.value);
    let node = ring(&["x*y"]);
    let v = seq_regular_at_points(&node, &[vec![one.clone(), zero.clone()], vec![zero.clone(), zero.clone()]]).unwrap();
    assert!(v[0].sequence_regular.value);
    assert!(!v[1].sequence_regular.value);
    assert!(seq_regular_at_points(&node, &[vec![one.clone(), one]]).is_err());
}

#[test]
fn nakayama_and_small_support() {
    let ex = real(&example());
    let r = nakayama_check(&ex, &DGModuleSpec::Koszul(vec![p("y")])).unwrap();
    assert!(!r.module_is_zero && !r.tensor_is_zero && r.holds());
    let r = nakayama_check(&ex, &DGModuleSpec::Zero).unwrap();
    assert!(r.module_is_zero && r.holds());
    let r = nakayama_check(&ex, &DGModuleSpec::Koszul(vec![p("1 + y")])).unwrap();
    assert!(r.module_is_zero && r.tensor_is_zero);
    let plane = ring(&[]);
    let origin = vec![f().zero(), f().zero()];
    assert!(in_small_support(&plane, &DGModuleSpec::Koszul(vec![p("x")]), &origin).unwrap());
    assert!(!in_small_support(&plane, &DGModuleSpec::Koszul(vec![p("x - 1")]), &origin).unwrap());
}

#[test]
fn report_for_the_example() {
    let r = regularity_report(&real(&example()), cfg()).unwrap();
    assert!(r.is_sequence_regular && r.is_local_cm && r.h0_is_regular_local);
    assert_eq!((r.amplitude.amp, r.local_dim, r.embdim, r.seq_depth, r.depth), (1, 1, 1, 1, 0));
    let k = r.kappa.unwrap();
    assert_eq!(k.parameters, vec!["y".to_string()]);
    assert_eq!(k.amp, 1);
    let b = regularity_report(&real(&counterexample()), cfg()).unwrap();
    assert_eq!(b.seq_depth, 0);
    assert!(!b.is_local_cm && !b.is_sequence_regular && b.h0_is_regular_local);
    assert!(b.kappa.is_none());
}
