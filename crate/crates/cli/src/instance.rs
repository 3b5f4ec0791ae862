//! Verification inputs: a tower plus the optional data each verifier reads,
//! either from a document or drawn from a seed.

use std::fmt::Write as _;

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use dgreg::dg::{DGRingSpec, Step};
use dgreg::field::DEFAULT_PRIME;
use dgreg::regularity::DGModuleSpec;
use dgreg::sample::{Sampler, TowerKind, MAX_SAMPLE_VARS};
use dgreg::{Field, FieldElem, Poly};

use crate::dsl::TowerDocument;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    KosAmp,
    Sop,
    DoubleCm,
    Gl,
    Main,
    DerivedQuotient,
    Redka,
    Nakayama,
    SerrePoints,
    Engine,
}

impl Property {
    pub const ALL: [Property; 10] = [
        Property::KosAmp,
        Property::Sop,
        Property::DoubleCm,
        Property::Gl,
        Property::Main,
        Property::DerivedQuotient,
        Property::Redka,
        Property::Nakayama,
        Property::SerrePoints,
        Property::Engine,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::KosAmp => "kos-amp",
            Property::Sop => "sop",
            Property::DoubleCm => "double-cm",
            Property::Gl => "gl",
            Property::Main => "main",
            Property::DerivedQuotient => "derived-quotient",
            Property::Redka => "redka",
            Property::Nakayama => "nakayama",
            Property::SerrePoints => "serre-points",
            Property::Engine => "engine",
        }
    }

    fn tower_kind<R: Rng>(self, rng: &mut R) -> TowerKind {
        match self {
            Property::KosAmp | Property::Sop | Property::DoubleCm => TowerKind::CompleteIntersection,
            Property::Redka | Property::Nakayama | Property::SerrePoints | Property::DerivedQuotient => {
                TowerKind::RegularBiased
            }
            Property::Engine => TowerKind::Generic,
            Property::Main | Property::Gl => match rng.gen_range(0..3) {
                0 => TowerKind::Generic,
                1 => TowerKind::CompleteIntersection,
                _ => TowerKind::RegularBiased,
            },
        }
    }
}

impl std::fmt::Display for Property {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub spec: DGRingSpec,
    /// Grading under which every polynomial of the tower is homogeneous.
    pub weights: Option<Vec<u32>>,
    pub elements: Option<Vec<Poly>>,
    pub matrix: Option<Vec<Vec<Poly>>>,
    pub module: Option<DGModuleSpec>,
    pub points: Option<Vec<Vec<FieldElem>>>,
    pub label: Option<String>,
}

impl From<&TowerDocument> for Instance {
    fn from(doc: &TowerDocument) -> Self {
        Instance {
            spec: doc.spec(),
            weights: None,
            elements: doc.elements.clone(),
            matrix: doc.matrix.clone(),
            module: doc.module.clone(),
            points: doc.points.clone(),
            label: doc.label.clone(),
        }
    }
}

fn sequence<R: Rng>(s: &mut Sampler<R>, max: usize) -> Vec<Poly> {
    let k = s.rng.gen_range(1..=max.max(1));
    (0..k)
        .map(|_| {
            if s.rng.gen_bool(0.3) {
                let i = s.rng.gen_range(0..s.n);
                s.smooth_element(i)
            } else {
                s.element()
            }
        })
        .collect()
}

/// The instance `corpus <property>` evaluates for this seed.
pub fn random_instance(property: Property, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = Field::Prime(DEFAULT_PRIME);
    let n = rng.gen_range(1..=MAX_SAMPLE_VARS);
    let kind = property.tower_kind(&mut rng);
    let mut s = Sampler::new(&mut rng, field, n);
    let spec = s.tower(kind);
    let mut inst = Instance {
        spec,
        weights: Some(s.weights.clone()),
        elements: None,
        matrix: None,
        module: None,
        points: None,
        label: Some(format!("random {property} instance, seed {seed}")),
    };
    match property {
        Property::KosAmp | Property::Sop | Property::DoubleCm => inst.elements = Some(sequence(&mut s, n)),
        Property::DerivedQuotient | Property::Gl => inst.elements = Some(sequence(&mut s, n.min(2))),
        Property::Nakayama => {
            inst.module = Some(match s.rng.gen_range(0..5) {
                0 => DGModuleSpec::Zero,
                1 => {
                    let unit = &Poly::one(field, n) + &s.element();
                    DGModuleSpec::Koszul(vec![unit])
                }
                _ => DGModuleSpec::Koszul(sequence(&mut s, 2)),
            })
        }
        _ => {}
    }
    inst
}

fn list(ps: &[Poly], names: &[String]) -> String {
    let items: Vec<String> = ps.iter().map(|p| p.display_with(names).to_string()).collect();
    format!("[{}]", items.join(", "))
}

fn point(p: &[FieldElem]) -> String {
    let items: Vec<String> = p.iter().map(|c| c.to_string()).collect();
    format!("[{}]", items.join(", "))
}

impl Instance {
    /// The instance as a document that parses back to it.
    pub fn to_document(&self) -> String {
        let names = &self.spec.vars;
        let mut out = String::new();
        if let Some(l) = &self.label {
            let _ = writeln!(out, "label: {l}");
        }
        let _ = writeln!(out, "field: {}", self.spec.field);
        let _ = writeln!(out, "vars: {}", names.join(" "));
        if !self.spec.base.is_empty() {
            let _ = writeln!(out, "quotient: {}", list(&self.spec.base, names));
        }
        for step in &self.spec.steps {
            match step {
                Step::Koszul(e) => {
                    let _ = writeln!(out, "koszul: {}", list(e, names));
                }
                Step::TrivExt { module, shift } => {
                    let cols: Vec<String> = module.relations.iter().map(|c| list(c, names)).collect();
                    let _ = writeln!(out, "trivext: {shift} gens {} [{}]", module.gens, cols.join(", "));
                }
            }
        }
        if let Some(p) = &self.spec.point {
            let _ = writeln!(out, "point: {}", point(p));
        }
        if let Some(e) = &self.elements {
            let _ = writeln!(out, "elements: {}", list(e, names));
        }
        if let Some(m) = &self.matrix {
            let rows: Vec<String> = m.iter().map(|r| list(r, names)).collect();
            let _ = writeln!(out, "matrix: [{}]", rows.join(", "));
        }
        match &self.module {
            Some(DGModuleSpec::Zero) => {
                let _ = writeln!(out, "module: zero");
            }
            Some(DGModuleSpec::Koszul(b)) => {
                let _ = writeln!(out, "module: koszul {}", list(b, names));
            }
            None => {}
        }
        if let Some(ps) = &self.points {
            let items: Vec<String> = ps.iter().map(|p| point(p)).collect();
            let _ = writeln!(out, "points: [{}]", items.join(", "));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;

    #[test]
    fn random_instances_round_trip() {
        for property in Property::ALL {
            for seed in 0..8 {
                let inst = random_instance(property, seed);
                let text = inst.to_document();
                let doc = parse(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
                let back = Instance::from(&doc);
                assert_eq!(back.spec, inst.spec, "{text}");
                assert_eq!(back.elements, inst.elements);
                assert_eq!(back.module, inst.module);
            }
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = random_instance(Property::Main, 11).to_document();
        let b = random_instance(Property::Main, 11).to_document();
        assert_eq!(a, b);
    }
}
