use super::*;
use crate::field::Field;
use crate::groebner::Ideal;
use crate::monomial::{Monomial, MonomialOrder};
use crate::module::{ComplexOfModules, ModuleFingerprint, PresentedModule};
use crate::poly::Poly;

fn vars() -> Vec<String> {
    vec!["x".into(), "y".into()]
}

fn f() -> Field {
    Field::prime(32003).unwrap()
}

fn p(s: &str) -> Poly {
    Poly::parse(s, &vars(), f()).unwrap()
}

fn node_xy() -> DGRingSpec {
    DGRingSpec::quotient(f(), vars(), vec![p("x*y")])
}

fn cyclic_fp(gens: &[&str]) -> ModuleFingerprint {
    let ideal: Vec<Poly> = gens.iter().map(|s| p(s)).collect();
    ModuleFingerprint::of(&PresentedModule::cyclic(f(), 2, vec![], &ideal).unwrap()).unwrap()
}

fn revalidate(c: &ComplexOfModules) {
    ComplexOfModules::new(c.lo(), c.terms().to_vec(), c.diffs().to_vec()).expect("d∘d = 0");
}

#[test]
fn plain_quotient() {
    let r = realize(&node_xy()).unwrap();
    let prof = r.amplitude_profile().unwrap();
    assert_eq!((prof.inf, prof.sup, prof.amp), (0, 0, 0));
    assert!(r.has_constant_amplitude().unwrap());
    r.h0().unwrap();
}

#[test]
fn koszul_over_node() {
    let r = realize(&node_xy().koszul(vec![p("x")])).unwrap();
    revalidate(r.complex());
    let prof = r.amplitude_profile().unwrap();
    assert_eq!((prof.inf, prof.sup, prof.amp), (-1, 0, 1));
    assert!(r.h0().unwrap().same_as(&Ideal::new(f(), 2, vec![p("x")])).unwrap());
    let h1 = ModuleFingerprint::of(&r.cohomology(-1).unwrap()).unwrap();
    assert!(h1.matches(&cyclic_fp(&["x"])).unwrap());
    assert!(r.has_constant_amplitude().unwrap());
}

#[test]
fn trivial_extension_by_residue_field() {
    let one = vec!["x".to_string()];
    let x = Poly::parse("x", &one, f()).unwrap();
    let spec = DGRingSpec::quotient(f(), one, vec![]).trivial_extension(ExtensionModule::cyclic(vec![x.clone()]), 2);
    let r = realize(&spec).unwrap();
    assert_eq!(r.lo(), -2);
    assert_eq!(r.complex().terms()[1].num_gens(), 0);
    let h2 = r.cohomology(-2).unwrap();
    assert_eq!(h2.quotient_dim(4), 1);
    let prof = r.amplitude_profile().unwrap();
    assert_eq!((prof.inf, prof.amp), (-2, 2));
    assert!(!r.has_constant_amplitude().unwrap());
}

#[test]
fn trivext_not_constant_amplitude() {
    let spec = DGRingSpec::quotient(f(), vars(), vec![]).trivial_extension(ExtensionModule::cyclic(vec![p("x")]), 1);
    assert!(!realize(&spec).unwrap().has_constant_amplitude().unwrap());
}

#[test]
fn regular_sequence_kills_lower_cohomology() {
    let r = realize(&DGRingSpec::quotient(f(), vars(), vec![]).koszul(vec![p("x"), p("y")])).unwrap();
    revalidate(r.complex());
    let prof = r.amplitude_profile().unwrap();
    assert_eq!((prof.inf, prof.sup, prof.amp), (0, 0, 0));
    assert_eq!(r.lo(), -2);
}

#[test]
fn localization_at_a_point() {
    let s = node_xy().localize_at_point(&[f().zero(), f().one()]).unwrap();
    assert_eq!(s.base[0], p("x*y + x"));
    let leads = Ideal::new(f(), 2, s.base.clone()).lead_monomials(MonomialOrder::local(2)).unwrap();
    assert_eq!(leads, vec![Monomial::var(0)]);
    assert_eq!(node_xy().localize_at_point(&[f().zero(), f().zero()]).unwrap(), node_xy());
    assert!(realize(&node_xy().with_point(vec![f().one(), f().one()])).is_err());
}

#[test]
fn rejects_units_and_bad_shift() {
    assert!(realize(&node_xy().koszul(vec![p("1 + x")])).is_err());
    let bad = node_xy().trivial_extension(ExtensionModule::cyclic(vec![p("x")]), 0);
    assert!(realize(&bad).is_err());
}

#[test]
fn lift_independence() {
    let base = realize(&node_xy().koszul(vec![p("x")])).unwrap().fingerprints().unwrap();
    for lift in ["x*(1 + y)", "x + x*y", "3*x - x^2*y"] {
        let other = realize(&node_xy().koszul(vec![p(lift)])).unwrap().fingerprints().unwrap();
        assert!(fingerprints_match(&base, &other, f(), 2).unwrap(), "{lift}");
    }
}

#[test]
fn koszul_after_trivext_is_a_complex() {
    let spec = node_xy()
        .trivial_extension(ExtensionModule::cyclic(vec![p("x"), p("y")]), 1)
        .koszul(vec![p("x + y")]);
    let r = realize(&spec).unwrap();
    revalidate(r.complex());
    r.h0().unwrap();
}
