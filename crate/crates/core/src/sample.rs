//! Random weighted-homogeneous towers and rational points on their loci.
//!
//! Every polynomial a sampler produces is homogeneous for one positive weight
//! vector, so the torus `t · x_i = t^(w_i) x_i` acts on the whole tower and
//! every locus it defines is a cone through the origin.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::dg::{DGRingSpec, ExtensionModule};
use crate::field::{Field, FieldElem};
use crate::groebner::Ideal;
use crate::linalg::determinant;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Poly;

pub const MAX_SAMPLE_VARS: usize = 3;
pub const MAX_SAMPLE_DEGREE: u32 = 3;
pub const MAX_SAMPLE_STEPS: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TowerKind {
    /// Any mix of quotient, Koszul and trivial-extension steps.
    Generic,
    /// Complete-intersection base followed by Koszul steps only.
    CompleteIntersection,
    /// Shapes that often have regular `H^0`, to populate sequence-regular samples.
    RegularBiased,
}

#[derive(Clone, Debug)]
pub struct SampledTower {
    pub spec: DGRingSpec,
    pub weights: Vec<u32>,
}

pub fn default_names(n: usize) -> Vec<String> {
    ["x", "y", "z", "w", "u", "v"][..n].iter().map(|s| s.to_string()).collect()
}

/// Monomials of weighted degree `d` and total degree in `1..=max_deg`.
fn monomials_of_weight(n: usize, weights: &[u32], d: u32, max_deg: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    fn rec(i: usize, left: u32, deg: u32, max_deg: u32, weights: &[u32], exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == exps.len() {
            if left == 0 && deg >= 1 {
                out.push(Monomial::from_exps(exps));
            }
            return;
        }
        let mut e = 0;
        while e * weights[i] <= left && deg + e <= max_deg {
            exps[i] = e;
            rec(i + 1, left - e * weights[i], deg + e, max_deg, weights, exps, out);
            e += 1;
        }
        exps[i] = 0;
    }
    rec(0, d, 0, max_deg, weights, &mut exps, &mut out);
    out
}

pub struct Sampler<R: Rng> {
    pub rng: R,
    pub field: Field,
    pub n: usize,
    pub weights: Vec<u32>,
}

impl<R: Rng> Sampler<R> {
    pub fn new(mut rng: R, field: Field, n: usize) -> Self {
        let weights = (0..n).map(|_| rng.gen_range(1..=3)).collect();
        Sampler { rng, field, n, weights }
    }

    /// Sampler for a grading fixed in advance.
    pub fn with_weights(rng: R, field: Field, weights: Vec<u32>) -> Self {
        Sampler {
            rng,
            field,
            n: weights.len(),
            weights,
        }
    }

    /// Random `T` with `T(0)` invertible such that `T·a` is homogeneous with
    /// the degrees of `a` whenever each `a_j` is homogeneous of degree `degrees[j]`.
    pub fn graded_invertible(&mut self, degrees: &[u32]) -> Vec<Vec<Poly>> {
        let k = degrees.len();
        loop {
            let t: Vec<Vec<Poly>> = (0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| match degrees[i].cmp(&degrees[j]) {
                            std::cmp::Ordering::Equal => {
                                let c = self.field.random(&mut self.rng, 8);
                                Poly::constant(self.field, self.n, c)
                            }
                            std::cmp::Ordering::Greater => self.homogeneous(degrees[i] - degrees[j], false),
                            std::cmp::Ordering::Less => Poly::zero(self.field, self.n),
                        })
                        .collect()
                })
                .collect();
            let consts = t.iter().map(|r| r.iter().map(|p| p.constant_term()).collect()).collect();
            if !determinant(consts, self.field).is_zero() {
                return t;
            }
        }
    }

    fn coefficient(&mut self) -> FieldElem {
        self.field.random_nonzero(&mut self.rng, 5)
    }

    fn degrees(&self) -> Vec<u32> {
        let set: BTreeSet<u32> = (1..=3 * MAX_SAMPLE_DEGREE)
            .filter(|&d| !monomials_of_weight(self.n, &self.weights, d, MAX_SAMPLE_DEGREE).is_empty())
            .collect();
        set.into_iter().collect()
    }

    /// Random homogeneous polynomial of weighted degree `d`, or zero if none exists.
    pub fn homogeneous(&mut self, d: u32, nonlinear: bool) -> Poly {
        let mut monos = monomials_of_weight(self.n, &self.weights, d, MAX_SAMPLE_DEGREE);
        if nonlinear {
            monos.retain(|m| m.deg() >= 2);
        }
        let mut p = Poly::zero(self.field, self.n);
        if monos.is_empty() {
            return p;
        }
        let keep = self.rng.gen_range(1..=monos.len().min(3));
        monos.shuffle(&mut self.rng);
        for m in &monos[..keep] {
            let c = self.coefficient();
            p = &p + &Poly::monomial(self.field, self.n, *m, c);
        }
        p
    }

    /// Homogeneous element of a random weighted degree.
    pub fn element(&mut self) -> Poly {
        let ds = self.degrees();
        let d = *ds.choose(&mut self.rng).expect("some degree");
        self.homogeneous(d, false)
    }

    /// Homogeneous element of degree at least two in every term.
    pub fn nonlinear_element(&mut self) -> Poly {
        for _ in 0..16 {
            let ds = self.degrees();
            let d = *ds.choose(&mut self.rng).expect("some degree");
            let p = self.homogeneous(d, true);
            if !p.is_zero() {
                return p;
            }
        }
        let i = self.rng.gen_range(0..self.n);
        Poly::var(self.field, self.n, i).pow(2)
    }

    /// Homogeneous element whose linear part involves variable `i`.
    pub fn smooth_element(&mut self, i: usize) -> Poly {
        let d = self.weights[i];
        let rest = self.homogeneous(d, true);
        let c = self.coefficient();
        &Poly::monomial(self.field, self.n, Monomial::var(i), c) + &rest
    }

    fn module(&mut self) -> ExtensionModule {
        let k = self.rng.gen_range(0..=self.n);
        let gens = (0..k)
            .map(|_| {
                let i = self.rng.gen_range(0..self.n);
                if self.rng.gen_bool(0.5) {
                    self.smooth_element(i)
                } else {
                    self.element()
                }
            })
            .collect();
        ExtensionModule::cyclic(gens)
    }

    fn generic_steps(&mut self, spec: DGRingSpec) -> DGRingSpec {
        let mut spec = spec;
        for _ in 0..self.rng.gen_range(0..=MAX_SAMPLE_STEPS) {
            if self.rng.gen_bool(0.65) {
                let k = self.rng.gen_range(1..=2);
                let elems = (0..k).map(|_| self.element()).collect();
                spec = spec.koszul(elems);
            } else {
                let m = self.module();
                let shift = self.rng.gen_range(1..=2);
                spec = spec.trivial_extension(m, shift);
            }
        }
        spec
    }

    pub fn tower(&mut self, kind: TowerKind) -> DGRingSpec {
        let names = default_names(self.n);
        match kind {
            TowerKind::Generic => {
                let k = self.rng.gen_range(0..=self.n.min(2));
                let base = (0..k).map(|_| self.element()).collect();
                let spec = DGRingSpec::quotient(self.field, names, base);
                self.generic_steps(spec)
            }
            TowerKind::CompleteIntersection => {
                let base = loop {
                    let k = self.rng.gen_range(0..self.n);
                    let base: Vec<Poly> = (0..k).map(|_| self.element()).collect();
                    let dim = Ideal::new(self.field, self.n, base.clone()).dim_local_at_origin();
                    if matches!(dim, Ok(Some(d)) if d + k == self.n) {
                        break base;
                    }
                };
                let mut spec = DGRingSpec::quotient(self.field, names, base);
                if self.rng.gen_bool(0.7) {
                    let k = self.rng.gen_range(1..=2);
                    let elems = (0..k).map(|_| self.element()).collect();
                    spec = spec.koszul(elems);
                }
                spec
            }
            TowerKind::RegularBiased => self.regular_biased(names),
        }
    }

    fn regular_biased(&mut self, names: Vec<String>) -> DGRingSpec {
        let n = self.n;
        let i = self.rng.gen_range(0..n);
        let f = self.smooth_element(i);
        let shape = self.rng.gen_range(0..5);
        let mut spec = match shape {
            // the node pattern: quotient by f·g, then kill f
            0 => {
                let g = self.element();
                DGRingSpec::quotient(self.field, names, vec![&f * &g]).koszul(vec![f.clone()])
            }
            1 => DGRingSpec::quotient(self.field, names, vec![f.clone()]),
            // Koszul on an element that is already zero in H^0
            2 => {
                let g = self.element();
                DGRingSpec::quotient(self.field, names, vec![f.clone()]).koszul(vec![&f * &g])
            }
            3 => DGRingSpec::quotient(self.field, names, vec![]).koszul(vec![f.clone()]),
            _ => DGRingSpec::quotient(self.field, names, vec![])
                .trivial_extension(ExtensionModule::cyclic(vec![]), self.rng.gen_range(1..=2)),
        };
        if spec.steps.len() < MAX_SAMPLE_STEPS && self.rng.gen_bool(0.4) {
            let j = self.rng.gen_range(0..n);
            let extra = if self.rng.gen_bool(0.5) { self.smooth_element(j) } else { self.element() };
            spec = spec.koszul(vec![extra]);
        }
        spec
    }
}

/// Random tower with `1..=MAX_SAMPLE_VARS` variables.
pub fn random_tower<R: Rng>(rng: &mut R, field: Field, kind: TowerKind) -> SampledTower {
    let n = rng.gen_range(1..=MAX_SAMPLE_VARS);
    let mut s = Sampler::new(&mut *rng, field, n);
    let spec = s.tower(kind);
    SampledTower {
        spec,
        weights: s.weights.clone(),
    }
}

/// The polynomial in `x_i` obtained by substituting `values[j]` for `j > i`,
/// as dense coefficients; `None` if it involves a variable before `i`.
fn univariate(p: &Poly, i: usize, values: &[Option<FieldElem>]) -> Option<Vec<FieldElem>> {
    let field = p.field();
    let mut coeffs: Vec<FieldElem> = Vec::new();
    for (m, c) in p.terms() {
        if (0..i).any(|j| m.exp(j) > 0) {
            return None;
        }
        let mut v = c.clone();
        for j in i + 1..p.nvars() {
            let e = m.exp(j);
            if e > 0 {
                v = v.mul(&values[j].as_ref()?.pow(e));
            }
        }
        let e = m.exp(i) as usize;
        if coeffs.len() <= e {
            coeffs.resize(e + 1, field.zero());
        }
        coeffs[e] = coeffs[e].add(&v);
    }
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    Some(coeffs)
}

fn horner(coeffs: &[FieldElem], t: &FieldElem) -> FieldElem {
    let mut acc = t.field().zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(t).add(c);
    }
    acc
}

fn candidates(field: Field) -> Vec<FieldElem> {
    match field {
        Field::Prime(p) => (0..p as i64).map(|v| field.from_i64(v)).collect(),
        Field::Rational => (-32..=32).map(|v| field.from_i64(v)).collect(),
    }
}

/// Up to `count` distinct rational points other than the origin on `V(ideal)`.
/// Components are explored through a lex basis; when only one torus orbit is
/// found, further points are taken along it.
pub fn points_on_locus<R: Rng>(rng: &mut R, ideal: &[Poly], field: Field, n: usize, weights: &[u32], count: usize) -> Vec<Vec<FieldElem>> {
    let basis = match Ideal::new(field, n, ideal.to_vec()).groebner(MonomialOrder::lex(n)) {
        Ok(b) => b,
        Err(_) => return Vec::new(),
    };
    if basis.iter().any(|g| g.is_constant() && !g.is_zero()) {
        return Vec::new();
    }
    let all = candidates(field);
    let mut found: Vec<Vec<FieldElem>> = Vec::new();
    'attempt: for _ in 0..count * 24 {
        if found.len() >= count {
            break;
        }
        let mut values: Vec<Option<FieldElem>> = vec![None; n];
        for i in (0..n).rev() {
            let polys: Vec<Vec<FieldElem>> = basis.iter().filter_map(|g| univariate(g, i, &values)).filter(|c| !c.is_empty()).collect();
            if polys.iter().any(|c| c.len() == 1) {
                continue 'attempt;
            }
            let v = if polys.is_empty() {
                if rng.gen_bool(0.25) {
                    field.zero()
                } else {
                    field.random_nonzero(rng, 32)
                }
            } else {
                let roots: Vec<&FieldElem> = all.iter().filter(|t| polys.iter().all(|c| horner(c, t).is_zero())).collect();
                match roots.choose(rng) {
                    Some(r) => (*r).clone(),
                    None => continue 'attempt,
                }
            };
            values[i] = Some(v);
        }
        let pt: Vec<FieldElem> = values.into_iter().map(|v| v.expect("assigned")).collect();
        let on = ideal.iter().all(|g| g.eval(&pt).map(|v| v.is_zero()).unwrap_or(false));
        if on && pt.iter().any(|c| !c.is_zero()) && !found.contains(&pt) {
            found.push(pt);
        }
    }
    let seeds = found.clone();
    let mut guard = 0;
    while !seeds.is_empty() && found.len() < count && guard < count * 24 {
        guard += 1;
        let base = seeds.choose(rng).expect("nonempty");
        let t = field.random_nonzero(rng, 32);
        let pt: Vec<FieldElem> = base.iter().zip(weights).map(|(c, &w)| c.mul(&t.pow(w))).collect();
        if !found.contains(&pt) {
            found.push(pt);
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dg::Step;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn towers_are_weighted_homogeneous() {
        let f = Field::prime(32003).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for kind in [TowerKind::Generic, TowerKind::CompleteIntersection, TowerKind::RegularBiased] {
            for _ in 0..20 {
                let t = random_tower(&mut rng, f, kind);
                assert!(t.spec.polynomials().all(|p| p.is_weighted_homogeneous(&t.weights)));
                assert!(t.spec.validate().is_ok());
                for s in &t.spec.steps {
                    if let Step::TrivExt { shift, .. } = s {
                        assert!(*shift >= 1);
                    }
                }
            }
        }
    }

    #[test]
    fn points_lie_on_the_node() {
        let f = Field::prime(32003).unwrap();
        let names = default_names(2);
        let xy = Poly::parse("x*y", &names, f).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pts = points_on_locus(&mut rng, std::slice::from_ref(&xy), f, 2, &[1, 1], 10);
        assert_eq!(pts.len(), 10);
        for p in &pts {
            assert!(xy.eval(p).unwrap().is_zero());
            assert!(p.iter().any(|c| !c.is_zero()));
        }
        let unit = Poly::parse("x - 1", &names, f).unwrap();
        let one = points_on_locus(&mut rng, &[unit, Poly::parse("x", &names, f).unwrap()], f, 2, &[1, 1], 3);
        assert!(one.is_empty());
    }
}
