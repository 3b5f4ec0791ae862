//! Evaluation of one property on one instance.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use dgreg::dg::{fingerprints_match, realize, DGRingRealization};
use dgreg::groebner::{lift, syzygies, Column, Ideal};
use dgreg::linalg::determinant;
use dgreg::module::ComplexOfModules;
use dgreg::regularity::{
    apply_matrix, in_small_support, is_sequence_regular, minimal_generators, nakayama_check, residue_dg_field,
    residue_dg_field_with, seq_regular_at_points, verify_derived_quotient, verify_double_cm,
    verify_gl_invariance_against, verify_kos_amp, verify_main, verify_sop, CmVerdict, DGModuleSpec, Hypotheses,
    Outcome, SearchConfig,
};
use dgreg::sample::{points_on_locus, Sampler};
use dgreg::{Field, FieldElem, MonomialOrder, Poly, Result};

use crate::instance::{Instance, Property};

/// Random invertible matrices drawn per `gl` instance.
pub const GL_MATRICES: usize = 50;
/// Points sampled per `serre-points` instance.
pub const SERRE_POINTS: usize = 10;
/// Extra points at which `main` records local-CM as evidence.
const MAIN_POINTS: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Taint {
    /// Every side of the verdict rests on exact computation or a certificate.
    Certified,
    /// Some side rests on randomized search or sampling.
    Probabilistic,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub property: String,
    pub outcome: Outcome,
    pub taint: Taint,
    pub details: Value,
}

impl Verdict {
    pub(crate) fn new(property: impl Into<String>, outcome: Outcome, taint: Taint, details: Value) -> Self {
        Verdict {
            property: property.into(),
            outcome,
            taint,
            details,
        }
    }

    fn skipped(property: Property, reason: &str) -> Self {
        Verdict::new(property.name(), Outcome::Skipped, Taint::Certified, json!({ "reason": reason }))
    }
}

fn pass_if(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Counterexample
    }
}

fn show(ps: &[Poly], names: &[String]) -> Vec<String> {
    ps.iter().map(|p| p.display_with(names).to_string()).collect()
}

fn show_point(p: &[FieldElem]) -> Vec<String> {
    p.iter().map(|c| c.to_string()).collect()
}

fn taint_of(cm: &CmVerdict) -> Taint {
    if cm.certified {
        Taint::Certified
    } else {
        Taint::Probabilistic
    }
}

fn hypotheses_json(h: &Hypotheses) -> Value {
    json!({
        "local_cm": h.cm.value,
        "cm_certified": h.cm.certified,
        "seq_depth": h.cm.seq_depth.value,
        "local_dim": h.cm.local_dim,
        "constant_amplitude": h.constant_amplitude,
    })
}

/// Random matrix over `S` whose value at the origin is invertible.
pub fn random_invertible<R: Rng>(rng: &mut R, field: Field, nvars: usize, k: usize) -> Vec<Vec<Poly>> {
    loop {
        let t: Vec<Vec<Poly>> = (0..k)
            .map(|_| {
                (0..k)
                    .map(|_| {
                        let mut p = Poly::constant(field, nvars, field.random(rng, 8));
                        if nvars > 0 && rng.gen_bool(0.5) {
                            let v = Poly::var(field, nvars, rng.gen_range(0..nvars));
                            p = &p + &v.scale(&field.random(rng, 8));
                        }
                        p
                    })
                    .collect()
            })
            .collect();
        let consts = t.iter().map(|r| r.iter().map(|p| p.constant_term()).collect()).collect();
        if !determinant(consts, field).is_zero() {
            return t;
        }
    }
}

/// Matrices for `gl`: graded ones when the instance carries a grading, so that
/// `T·a` stays homogeneous.
fn gl_matrices<R: Rng>(rng: &mut R, a: &[Poly], weights: Option<&[u32]>, field: Field, nvars: usize) -> Vec<Vec<Vec<Poly>>> {
    match weights {
        Some(w) => {
            let degrees: Vec<u32> = a.iter().map(|p| p.weighted_degree(w).unwrap_or(0)).collect();
            let mut s = Sampler::with_weights(rng, field, w.to_vec());
            (0..GL_MATRICES).map(|_| s.graded_invertible(&degrees)).collect()
        }
        None => (0..GL_MATRICES).map(|_| random_invertible(rng, field, nvars, a.len())).collect(),
    }
}

/// Another minimal generating sequence of `m̄`: an invertible recombination
/// plus terms of order two, homogeneous of the same degree when a grading is known.
fn perturbed_generators<R: Rng>(rng: &mut R, a: &[Poly], weights: Option<&[u32]>, field: Field, nvars: usize) -> Vec<Poly> {
    match weights {
        Some(w) => {
            let degrees: Vec<u32> = a.iter().map(|p| p.weighted_degree(w).unwrap_or(0)).collect();
            let mut s = Sampler::with_weights(rng, field, w.to_vec());
            let t: Vec<Vec<Poly>> = s
                .graded_invertible(&degrees)
                .into_iter()
                .map(|r| r.iter().map(|p| Poly::constant(field, nvars, p.constant_term())).collect())
                .collect();
            apply_matrix(&t, a)
                .into_iter()
                .zip(&degrees)
                .map(|(b, &d)| &b + &s.homogeneous(d, true))
                .collect()
        }
        None => {
            let t: Vec<Vec<Poly>> = random_invertible(rng, field, nvars, a.len())
                .into_iter()
                .map(|r| r.iter().map(|p| Poly::constant(field, nvars, p.constant_term())).collect())
                .collect();
            apply_matrix(&t, a)
                .into_iter()
                .map(|b| {
                    let i = rng.gen_range(0..nvars);
                    let j = rng.gen_range(0..nvars);
                    let q = &Poly::var(field, nvars, i) * &Poly::var(field, nvars, j);
                    &b + &q.scale(&field.random(rng, 8))
                })
                .collect()
        }
    }
}

pub struct Context<'a> {
    pub instance: &'a Instance,
    pub real: &'a DGRingRealization,
    pub config: SearchConfig,
    pub seed: u64,
}

/// Runs the verifier for `property`; errors are budget or input diagnostics.
pub fn check(property: Property, ctx: &Context) -> Result<Vec<Verdict>> {
    let real = ctx.real;
    let names = &real.spec().vars;
    let field = real.field();
    let n = real.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed ^ 0x5eed);
    let elements = || ctx.instance.elements.clone().unwrap_or_else(|| minimal_generators(real));
    let name = property.name();
    let v = match property {
        Property::KosAmp => {
            let elems = elements();
            let r = verify_kos_amp(real, &elems, ctx.config)?;
            vec![Verdict::new(
                name,
                r.outcome,
                taint_of(&r.hypotheses.cm),
                json!({
                    "elements": show(&elems, names),
                    "hypotheses": hypotheses_json(&r.hypotheses),
                    "dim_h0": r.dim_h0,
                    "dim_quotient": r.dim_quotient,
                    "amp_base": r.amp_base,
                    "predicted": r.predicted,
                    "computed": r.computed,
                }),
            )]
        }
        Property::Sop => {
            let elems = elements();
            let r = verify_sop(real, &elems, ctx.config)?;
            vec![Verdict::new(
                name,
                r.outcome,
                taint_of(&r.hypotheses.cm),
                json!({
                    "elements": show(&elems, names),
                    "hypotheses": hypotheses_json(&r.hypotheses),
                    "regular": r.regular,
                    "dimension_drops": r.dimension_drops,
                }),
            )]
        }
        Property::DoubleCm => {
            let elems = elements();
            let r = verify_double_cm(real, &elems, ctx.config)?;
            let taint = if r.hypotheses.cm.certified && r.h0_cm.certified {
                Taint::Certified
            } else {
                Taint::Probabilistic
            };
            vec![Verdict::new(
                name,
                r.outcome,
                taint,
                json!({
                    "elements": show(&elems, names),
                    "hypotheses": hypotheses_json(&r.hypotheses),
                    "h0_cm": r.h0_cm.value,
                    "regular_on_a": r.regular_on_a,
                    "regular_on_h0": r.regular_on_h0,
                }),
            )]
        }
        Property::Main => {
            let points = match &ctx.instance.points {
                Some(p) => p.clone(),
                None => match &ctx.instance.weights {
                    Some(w) => points_on_locus(&mut rng, &ctx.instance.spec.h0_generators(), field, n, w, MAIN_POINTS),
                    None => Vec::new(),
                },
            };
            let r = verify_main(&ctx.instance.spec, real, ctx.config, &points)?;
            vec![Verdict::new(
                name,
                r.outcome,
                taint_of(&r.cm),
                json!({
                    "sequence_regular": r.sequence_regular.value,
                    "sequence_witness": show(&r.sequence_regular.witness, names),
                    "local_cm": r.cm.value,
                    "cm_certified": r.cm.certified,
                    "seq_depth": r.cm.seq_depth.value,
                    "local_dim": r.cm.local_dim,
                    "h0_regular": r.h0_regular,
                    "constant_amplitude": r.constant_amplitude,
                    "cm_at_points": r.cm_at_points.iter().map(|(p, cm)| json!({ "point": show_point(p), "local_cm": cm })).collect::<Vec<_>>(),
                }),
            )]
        }
        Property::DerivedQuotient => {
            if !is_sequence_regular(real)?.value {
                return Ok(vec![Verdict::skipped(property, "not sequence-regular")]);
            }
            let elems = elements();
            let r = verify_derived_quotient(real, &elems)?;
            vec![Verdict::new(
                name,
                r.outcome,
                Taint::Certified,
                json!({
                    "elements": show(&elems, names),
                    "koszul_sequence_regular": r.koszul_sequence_regular,
                    "quotient_regular": r.quotient_regular,
                    "extension": r.extension.as_deref().map(|e| show(e, names)),
                    "extension_is_regular": r.extension_is_regular,
                }),
            )]
        }
        Property::Redka => {
            if !is_sequence_regular(real)?.value {
                return Ok(vec![Verdict::skipped(property, "not sequence-regular")]);
            }
            let k = residue_dg_field(real)?;
            vec![Verdict::new(
                name,
                pass_if(k.consistent()),
                Taint::Certified,
                json!({
                    "parameters": show(&k.parameters, names),
                    "amp": k.amp,
                    "amp_of_base": k.amp_of_base,
                    "h0_is_residue_field": k.h0_is_residue_field,
                    "reduction_is_residue_field": k.reduction_is_residue_field,
                    "flat_dimension": k.flat_dimension,
                    "local_dim": k.local_dim,
                }),
            )]
        }
        Property::Nakayama => {
            if !is_sequence_regular(real)?.value {
                return Ok(vec![Verdict::skipped(property, "not sequence-regular")]);
            }
            let module = ctx
                .instance
                .module
                .clone()
                .unwrap_or_else(|| DGModuleSpec::Koszul(elements()));
            let r = nakayama_check(real, &module)?;
            let support = in_small_support(real.spec(), &module, &vec![field.zero(); n])?;
            let ok = r.holds() && support == !r.tensor_is_zero;
            let shown = match &module {
                DGModuleSpec::Zero => json!("zero"),
                DGModuleSpec::Koszul(b) => json!({ "koszul": show(b, names) }),
            };
            vec![Verdict::new(
                name,
                pass_if(ok),
                Taint::Certified,
                json!({
                    "module": shown,
                    "module_is_zero": r.module_is_zero,
                    "tensor_is_zero": r.tensor_is_zero,
                    "origin_in_small_support": support,
                }),
            )]
        }
        Property::SerrePoints => {
            if !is_sequence_regular(real)?.value {
                return Ok(vec![Verdict::skipped(property, "not sequence-regular")]);
            }
            let spec = &ctx.instance.spec;
            let points = match &ctx.instance.points {
                Some(p) => p.clone(),
                None => {
                    let weights = ctx.instance.weights.clone().unwrap_or_else(|| vec![1; n]);
                    points_on_locus(&mut rng, &spec.h0_generators(), field, n, &weights, SERRE_POINTS)
                }
            };
            if points.is_empty() {
                return Ok(vec![Verdict::skipped(property, "no rational points off the origin were found")]);
            }
            let verdicts = seq_regular_at_points(spec, &points)?;
            let ok = verdicts.iter().all(|v| v.sequence_regular.value);
            // off a cone, a point may lie on a component missing the base point
            let graded = ctx.instance.weights.is_some()
                || (spec.point.is_none() && spec.polynomials().all(|p| p.is_weighted_homogeneous(&vec![1; n])));
            let outcome = match (ok, graded) {
                (true, _) => Outcome::Pass,
                (false, true) => Outcome::Counterexample,
                (false, false) => Outcome::Inconclusive,
            };
            vec![Verdict::new(
                name,
                outcome,
                Taint::Probabilistic,
                json!({
                    "points": verdicts.iter().map(|v| json!({
                        "point": show_point(&v.point),
                        "sequence_regular": v.sequence_regular.value,
                    })).collect::<Vec<_>>(),
                    "requested": SERRE_POINTS,
                }),
            )]
        }
        Property::Gl => gl(ctx, &mut rng, elements())?,
        Property::Engine => engine(real, &mut rng)?,
    };
    Ok(v)
}

fn gl(ctx: &Context, rng: &mut ChaCha8Rng, a: Vec<Poly>) -> Result<Vec<Verdict>> {
    let real = ctx.real;
    let (field, n) = (real.field(), real.nvars());
    let names = &real.spec().vars;
    let mut out = Vec::new();
    if !a.is_empty() {
        let matrices = match &ctx.instance.matrix {
            Some(m) => vec![m.clone()],
            None => gl_matrices(rng, &a, ctx.instance.weights.as_deref(), field, n),
        };
        let base = real.extend_koszul(&a)?.fingerprints()?;
        let mut failures = Vec::new();
        for (i, t) in matrices.iter().enumerate() {
            if !verify_gl_invariance_against(real, &base, &a, t)? {
                failures.push(i);
            }
        }
        out.push(Verdict::new(
            "gl",
            pass_if(failures.is_empty()),
            Taint::Certified,
            json!({
                "elements": show(&a, names),
                "matrices": matrices.len(),
                "failures": failures,
            }),
        ));
    }
    if is_sequence_regular(real)?.value {
        let k1 = residue_dg_field(real)?;
        let params = perturbed_generators(rng, &k1.parameters, ctx.instance.weights.as_deref(), field, n);
        let k2 = residue_dg_field_with(real, &params)?;
        let f1 = real.extend_koszul(&k1.parameters)?.fingerprints()?;
        let f2 = real.extend_koszul(&k2.parameters)?.fingerprints()?;
        let same = fingerprints_match(&f1, &f2, field, n)?;
        out.push(Verdict::new(
            "gl-kappa",
            pass_if(same && k1.consistent() && k2.consistent()),
            Taint::Certified,
            json!({
                "first": show(&k1.parameters, names),
                "second": show(&k2.parameters, names),
                "fingerprints_match": same,
            }),
        ));
    }
    Ok(out)
}

fn product(v: &Column, gens: &[Poly], field: Field, n: usize) -> Poly {
    v.iter().zip(gens).fold(Poly::zero(field, n), |acc, (c, g)| &acc + &(c * g))
}

/// Gröbner two-sided membership, syzygy soundness, `d∘d = 0`, order-independent
/// dimension and colon containment, checked by direct arithmetic.
fn engine(real: &DGRingRealization, rng: &mut ChaCha8Rng) -> Result<Vec<Verdict>> {
    let (field, n) = (real.field(), real.nvars());
    let gens: Vec<Poly> = real.h0_ideal().gens().iter().filter(|g| !g.is_zero()).cloned().collect();
    let ideal = Ideal::new(field, n, gens.clone());
    let cols: Vec<Column> = gens.iter().map(|g| vec![g.clone()]).collect();
    let mut failures: Vec<String> = Vec::new();

    for (label, order) in [("grevlex", MonomialOrder::grevlex(n)), ("lex", MonomialOrder::lex(n))] {
        let basis = ideal.groebner(order)?;
        let reducer = Ideal::new(field, n, basis.clone());
        for g in &gens {
            if !reducer.normal_form(g, order)?.is_zero() {
                failures.push(format!("generator does not reduce to zero ({label})"));
            }
        }
        for b in &basis {
            if gens.is_empty() {
                failures.push("basis of the zero ideal is nonempty".into());
                continue;
            }
            let c = lift(std::slice::from_ref(b), &cols, field, n)?;
            if &product(&c, &gens, field, n) != b {
                failures.push(format!("basis element has a wrong lift ({label})"));
            }
        }
    }

    if !gens.is_empty() {
        for s in syzygies(&cols, 1, field, n)? {
            if !product(&s, &gens, field, n).is_zero() {
                failures.push("syzygy does not vanish".into());
            }
        }
    }
    let complex = real.complex();
    for d in complex.diffs() {
        let Some(rows) = d.first().map(|c| c.len()) else { continue };
        if rows == 0 {
            continue;
        }
        for s in syzygies(d, rows, field, n)? {
            for r in 0..rows {
                let entry = d.iter().zip(&s).fold(Poly::zero(field, n), |acc, (col, c)| &acc + &(c * &col[r]));
                if !entry.is_zero() {
                    failures.push("syzygy of a differential does not vanish".into());
                }
            }
        }
    }
    if let Err(e) = ComplexOfModules::new(complex.lo(), complex.terms().to_vec(), complex.diffs().to_vec()) {
        failures.push(format!("complex check failed: {e}"));
    }

    let dg = ideal.dim_global_with(MonomialOrder::grevlex(n))?;
    let dl = ideal.dim_global_with(MonomialOrder::lex(n))?;
    if dg != dl {
        failures.push(format!("dimension differs between orders: {dg:?} vs {dl:?}"));
    }

    if n > 0 {
        let f = &Poly::var(field, n, rng.gen_range(0..n)) + &Poly::var(field, n, rng.gen_range(0..n)).scale(&field.random(rng, 8));
        if !f.is_zero() {
            for c in ideal.colon(&f)?.gens() {
                if !ideal.contains(&(c * &f))? {
                    failures.push("colon element times f is not in the ideal".into());
                }
            }
        }
    }

    Ok(vec![Verdict::new(
        "engine",
        pass_if(failures.is_empty()),
        Taint::Certified,
        json!({
            "generators": gens.len(),
            "dimension": dg,
            "failures": failures,
        }),
    )])
}

fn translate_all(ps: &[Poly], point: &[FieldElem]) -> Result<Vec<Poly>> {
    ps.iter().map(|p| p.translate(point)).collect()
}

/// Realizes the instance and runs `property` on it. Elements, matrices and
/// modules are read in the document's coordinates.
pub fn run_property(property: Property, instance: &Instance, config: SearchConfig, seed: u64) -> Result<Vec<Verdict>> {
    let real = realize(&instance.spec)?;
    let moved;
    let local = match &instance.spec.point {
        None => instance,
        Some(p) => {
            let mut m = instance.clone();
            m.elements = instance.elements.as_deref().map(|e| translate_all(e, p)).transpose()?;
            m.matrix = instance
                .matrix
                .as_ref()
                .map(|t| t.iter().map(|r| translate_all(r, p)).collect::<Result<Vec<_>>>())
                .transpose()?;
            m.module = match &instance.module {
                Some(DGModuleSpec::Koszul(b)) => Some(DGModuleSpec::Koszul(translate_all(b, p)?)),
                other => other.clone(),
            };
            moved = m;
            &moved
        }
    };
    check(
        property,
        &Context {
            instance: local,
            real: &real,
            config,
            seed,
        },
    )
}
