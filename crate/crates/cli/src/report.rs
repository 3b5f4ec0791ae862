//! Reports for single towers: `report`, `verify` and `kappa`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::Serialize;
use sha2::{Digest, Sha256};

use dgreg::dg::{realize, DGRingRealization, Step};
use dgreg::module::{FingerprintRecord, ModuleFingerprint, PresentationSummary};
use dgreg::regularity::{
    is_sequence_regular, regularity_report, residue_dg_field, summarize_residue, Outcome, RegularityReport,
    ResidueSummary, SearchConfig,
};
use dgreg::{AlgebraError, MonomialOrder, Poly};

use crate::checks::{run_property, Taint, Verdict};
use crate::dsl::{parse, Diagnostic};
use crate::instance::{random_instance, Instance, Property};

pub const SCHEMA: &str = "dgreg-report/1";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub seed: u64,
    pub trials: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        let c = SearchConfig::default();
        RunOptions {
            seed: c.seed,
            trials: c.trials,
        }
    }
}

impl RunOptions {
    pub fn config(&self) -> SearchConfig {
        SearchConfig {
            trials: self.trials,
            seed: self.seed,
        }
    }

    fn flags(&self) -> String {
        let mut s = format!(" --seed {}", self.seed);
        if self.trials != SearchConfig::default().trials {
            let _ = write!(s, " --trials {}", self.trials);
        }
        s
    }
}

/// Where the tower comes from.
#[derive(Clone, Debug)]
pub enum Input<'a> {
    Document { path: &'a str, text: &'a str },
    Random,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeRecord {
    pub degree: i32,
    pub fingerprint: FingerprintRecord,
    pub presentation: PresentationSummary,
}

#[derive(Clone, Debug, Serialize)]
pub struct TowerSummary {
    pub field: String,
    pub vars: Vec<String>,
    pub base: Vec<String>,
    pub steps: Vec<String>,
    pub point: Option<Vec<String>>,
    pub label: Option<String>,
    pub cohomology: Vec<DegreeRecord>,
}

#[derive(Clone, Debug, Serialize)]
pub struct KappaSection {
    pub summary: ResidueSummary,
    pub document: String,
    pub cohomology: Vec<DegreeRecord>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub version: &'static str,
    pub command: String,
    pub input: String,
    pub seed: u64,
    pub trials: usize,
    pub tower: Option<TowerSummary>,
    pub regularity: Option<RegularityReport>,
    pub kappa: Option<KappaSection>,
    pub verdicts: Vec<Verdict>,
    pub hashes: BTreeMap<String, String>,
    pub diagnostics: Vec<String>,
    pub reproduce: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Report {
    fn new(command: String, input: String, opts: RunOptions, reproduce: String) -> Self {
        Report {
            schema: SCHEMA,
            version: VERSION,
            command,
            input,
            seed: opts.seed,
            trials: opts.trials,
            tower: None,
            regularity: None,
            kappa: None,
            verdicts: Vec::new(),
            hashes: BTreeMap::new(),
            diagnostics: Vec::new(),
            reproduce,
            elapsed: Duration::ZERO,
        }
    }

    /// 0 when nothing failed, 1 on a counterexample, 2 on a diagnostic or an
    /// inconclusive verdict.
    pub fn exit_code(&self) -> i32 {
        if self.verdicts.iter().any(|v| v.outcome == Outcome::Counterexample) {
            1
        } else if !self.diagnostics.is_empty() || self.verdicts.iter().any(|v| v.outcome == Outcome::Inconclusive) {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

fn show(ps: &[Poly], names: &[String]) -> Vec<String> {
    ps.iter().map(|p| p.display_with(names).to_string()).collect()
}

fn sha256_lines(lines: &[String]) -> String {
    let mut h = Sha256::new();
    for l in lines {
        h.update(l.as_bytes());
        h.update(b"\n");
    }
    format!("{:x}", h.finalize())
}

fn cohomology_records(real: &DGRingRealization) -> dgreg::Result<Vec<DegreeRecord>> {
    let names = &real.spec().vars;
    let mut out = Vec::new();
    for d in real.support_degrees()? {
        let h = real.cohomology(d)?;
        out.push(DegreeRecord {
            degree: d,
            fingerprint: ModuleFingerprint::of(&h)?.record(names)?,
            presentation: h.summary(names),
        });
    }
    Ok(out)
}

fn tower_summary(instance: &Instance, real: &DGRingRealization) -> dgreg::Result<TowerSummary> {
    let spec = &instance.spec;
    let names = &spec.vars;
    let steps = spec
        .steps
        .iter()
        .map(|s| match s {
            Step::Koszul(e) => format!("koszul [{}]", show(e, names).join(", ")),
            Step::TrivExt { module, shift } => {
                let cols: Vec<String> = module.relations.iter().map(|c| format!("[{}]", show(c, names).join(", "))).collect();
                format!("trivext {shift} gens {} [{}]", module.gens, cols.join(", "))
            }
        })
        .collect();
    Ok(TowerSummary {
        field: spec.field.to_string(),
        vars: names.clone(),
        base: show(&spec.base, names),
        steps,
        point: spec.point.as_ref().map(|p| p.iter().map(|c| c.to_string()).collect()),
        label: instance.label.clone(),
        cohomology: cohomology_records(real)?,
    })
}

fn hashes(real: &DGRingRealization) -> dgreg::Result<BTreeMap<String, String>> {
    let names = &real.spec().vars;
    let ideal = real.h0_ideal();
    let global = ideal.groebner(MonomialOrder::grevlex(real.nvars()))?;
    let local = ideal.standard_basis_local()?;
    let mut out = BTreeMap::new();
    out.insert("h0_grevlex_basis".to_string(), sha256_lines(&show(&global, names)));
    out.insert("h0_local_standard_basis".to_string(), sha256_lines(&show(&local, names)));
    Ok(out)
}

fn load(input: &Input, property: Option<Property>, seed: u64) -> Result<(Instance, String), Diagnostic> {
    match input {
        Input::Document { text, .. } => {
            let doc = parse(text)?;
            Ok((Instance::from(&doc), text.to_string()))
        }
        Input::Random => {
            let inst = random_instance(property.unwrap_or(Property::Main), seed);
            let text = inst.to_document();
            Ok((inst, text))
        }
    }
}

fn origin(input: &Input) -> String {
    match input {
        Input::Document { path, .. } => path.to_string(),
        Input::Random => "--random".to_string(),
    }
}

/// Runs `body`, turning algebra errors into diagnostics.
fn finish(mut report: Report, start: Instant, body: impl FnOnce(&mut Report) -> dgreg::Result<()>) -> Report {
    if let Err(e) = body(&mut report) {
        report.diagnostics.push(describe(&e));
    }
    report.elapsed = start.elapsed();
    report
}

fn describe(e: &AlgebraError) -> String {
    match e {
        AlgebraError::BudgetExceeded(_) => format!("budget: {e}"),
        _ => format!("error: {e}"),
    }
}

fn parse_failure(mut report: Report, d: Diagnostic, start: Instant) -> Report {
    report.diagnostics.push(format!("parse: {d}"));
    report.elapsed = start.elapsed();
    report
}

/// The full regularity pipeline on one document.
pub fn run_report(input: Input, opts: RunOptions) -> Report {
    let start = Instant::now();
    let reproduce = format!("dgreg report {}{}", origin(&input), opts.flags());
    let (instance, text) = match load(&input, None, opts.seed) {
        Ok(x) => x,
        Err(d) => {
            let text = match input {
                Input::Document { text, .. } => text.to_string(),
                Input::Random => String::new(),
            };
            return parse_failure(Report::new("report".into(), text, opts, reproduce), d, start);
        }
    };
    let report = Report::new("report".into(), text, opts, reproduce);
    finish(report, start, |r| {
        let real = realize(&instance.spec)?;
        r.tower = Some(tower_summary(&instance, &real)?);
        r.hashes = hashes(&real)?;
        let reg = regularity_report(&real, opts.config())?;
        r.regularity = Some(reg);
        r.verdicts.extend(run_property(Property::Main, &instance, opts.config(), opts.seed)?);
        Ok(())
    })
}

/// One named verifier on a document or on the random instance for the seed.
pub fn run_verify(property: Property, input: Input, opts: RunOptions) -> Report {
    let start = Instant::now();
    let reproduce = format!("dgreg verify {property} {}{}", origin(&input), opts.flags());
    let command = format!("verify {property}");
    let (instance, text) = match load(&input, Some(property), opts.seed) {
        Ok(x) => x,
        Err(d) => {
            let text = match input {
                Input::Document { text, .. } => text.to_string(),
                Input::Random => String::new(),
            };
            return parse_failure(Report::new(command, text, opts, reproduce), d, start);
        }
    };
    let report = Report::new(command, text, opts, reproduce);
    finish(report, start, |r| {
        let real = realize(&instance.spec)?;
        r.tower = Some(tower_summary(&instance, &real)?);
        r.hashes = hashes(&real)?;
        r.verdicts = run_property(property, &instance, opts.config(), opts.seed)?;
        Ok(())
    })
}

/// The residue DG-field of a sequence-regular tower.
pub fn run_kappa(input: Input, opts: RunOptions) -> Report {
    let start = Instant::now();
    let reproduce = format!("dgreg kappa {}{}", origin(&input), opts.flags());
    let (instance, text) = match load(&input, None, opts.seed) {
        Ok(x) => x,
        Err(d) => {
            let text = match input {
                Input::Document { text, .. } => text.to_string(),
                Input::Random => String::new(),
            };
            return parse_failure(Report::new("kappa".into(), text, opts, reproduce), d, start);
        }
    };
    let report = Report::new("kappa".into(), text, opts, reproduce);
    finish(report, start, |r| {
        let real = realize(&instance.spec)?;
        r.tower = Some(tower_summary(&instance, &real)?);
        r.hashes = hashes(&real)?;
        let sr = is_sequence_regular(&real)?;
        if !sr.value {
            r.diagnostics
                .push("error: the tower is not sequence-regular, so it has no residue DG-field".into());
            return Ok(());
        }
        let k = residue_dg_field(&real)?;
        let names = &real.spec().vars;
        let kreal = realize(&k.spec)?;
        let kinst = Instance {
            spec: k.spec.clone(),
            weights: None,
            elements: None,
            matrix: None,
            module: None,
            points: None,
            label: Some("residue DG-field".into()),
        };
        r.kappa = Some(KappaSection {
            summary: summarize_residue(&k, names),
            document: kinst.to_document(),
            cohomology: cohomology_records(&kreal)?,
        });
        r.verdicts.push(Verdict {
            property: "redka".into(),
            outcome: if k.consistent() { Outcome::Pass } else { Outcome::Counterexample },
            taint: Taint::Certified,
            details: serde_json::json!({
                "amp": k.amp,
                "amp_of_base": k.amp_of_base,
                "h0_is_residue_field": k.h0_is_residue_field,
                "reduction_is_residue_field": k.reduction_is_residue_field,
                "flat_dimension": k.flat_dimension,
                "local_dim": k.local_dim,
            }),
        });
        Ok(())
    })
}

fn outcome_word(o: Outcome) -> &'static str {
    match o {
        Outcome::Pass => "pass",
        Outcome::Counterexample => "COUNTEREXAMPLE",
        Outcome::Skipped => "skipped",
        Outcome::Inconclusive => "inconclusive",
    }
}

fn render_cohomology(out: &mut String, records: &[DegreeRecord]) {
    for d in records {
        let f = &d.fingerprint;
        let _ = writeln!(
            out,
            "  H^{}: {} generator(s), Ann = ({}), dims {:?}",
            d.degree,
            f.min_generators,
            f.annihilator.join(", "),
            f.quotient_dims
        );
    }
}

/// Human-readable rendering.
pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dgreg {} {}", r.version, r.command);
    if let Some(t) = &r.tower {
        if let Some(l) = &t.label {
            let _ = writeln!(out, "label: {l}");
        }
        let _ = writeln!(out, "ring: {}[{}] / ({})", t.field, t.vars.join(", "), t.base.join(", "));
        for s in &t.steps {
            let _ = writeln!(out, "step: {s}");
        }
        if let Some(p) = &t.point {
            let _ = writeln!(out, "point: ({})", p.join(", "));
        }
        let _ = writeln!(out, "cohomology:");
        render_cohomology(&mut out, &t.cohomology);
    }
    if let Some(g) = &r.regularity {
        let a = &g.amplitude;
        let _ = writeln!(out, "amplitude: inf {} sup {} amp {}", a.inf, a.sup, a.amp);
        let _ = writeln!(out, "local dimension of H^0: {}", g.local_dim);
        let _ = writeln!(out, "embedding dimension: {}", g.embdim);
        let cert = if g.seq_depth_certified { "certified" } else { "search exhausted" };
        let _ = writeln!(out, "seq.depth: {} ({cert}; witness [{}])", g.seq_depth, g.seq_depth_witness.join(", "));
        let _ = writeln!(out, "depth: {}", g.depth);
        let _ = writeln!(out, "local-CM: {}", g.is_local_cm);
        let _ = writeln!(out, "H^0 regular local: {}", g.h0_is_regular_local);
        let _ = writeln!(out, "constant amplitude: {}", g.constant_amplitude);
        let _ = writeln!(
            out,
            "sequence-regular: {} (tested [{}])",
            g.is_sequence_regular,
            g.sequence_witness.join(", ")
        );
        if let Some(k) = &g.kappa {
            let _ = writeln!(out, "residue DG-field: {} with amp {}", k.tower, k.amp);
        }
        for c in &g.caveats {
            let _ = writeln!(out, "note: {c}");
        }
    }
    if let Some(k) = &r.kappa {
        let s = &k.summary;
        let _ = writeln!(out, "residue DG-field: {} with amp {}", s.tower, s.amp);
        let _ = writeln!(out, "flat dimension of the residue field: {}", s.flat_dimension);
        let _ = writeln!(out, "cohomology of the residue DG-field:");
        render_cohomology(&mut out, &k.cohomology);
    }
    for v in &r.verdicts {
        let taint = match v.taint {
            Taint::Certified => "certified",
            Taint::Probabilistic => "probabilistic",
        };
        let _ = writeln!(out, "verdict {}: {} [{taint}]", v.property, outcome_word(v.outcome));
    }
    for d in &r.diagnostics {
        let _ = writeln!(out, "{d}");
    }
    if r.exit_code() != 0 {
        let _ = writeln!(out, "reproduce: {}", r.reproduce);
    }
    let _ = writeln!(out, "time: {:.3}s", r.elapsed.as_secs_f64());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    const NODE: &str = "vars: x y\nquotient: [x*y]\nkoszul: [x]\n";

    fn doc(text: &str) -> Input<'_> {
        Input::Document { path: "t.dg", text }
    }

    #[test]
    fn exit_codes() {
        let mut r = Report::new("report".into(), String::new(), RunOptions::default(), String::new());
        assert_eq!(r.exit_code(), 0);
        r.verdicts.push(Verdict::new("main", Outcome::Inconclusive, Taint::Probabilistic, json!({})));
        assert_eq!(r.exit_code(), 2);
        r.verdicts.push(Verdict::new("main", Outcome::Counterexample, Taint::Certified, json!({})));
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn node_report() {
        let r = run_report(doc(NODE), RunOptions::default());
        assert_eq!(r.exit_code(), 0);
        let reg = r.regularity.as_ref().unwrap();
        assert!(reg.is_sequence_regular);
        assert_eq!(reg.depth, 0);
        assert_eq!(r.hashes.len(), 2);
        assert_eq!(r.to_json(), run_report(doc(NODE), RunOptions::default()).to_json());
    }

    #[test]
    fn parse_failures_are_diagnostics() {
        let r = run_verify(Property::Sop, doc("vars: x\nkoszul: [1]\n"), RunOptions::default());
        assert_eq!(r.exit_code(), 2);
        assert!(r.diagnostics[0].contains("line 2"), "{:?}", r.diagnostics);
        assert!(r.reproduce.starts_with("dgreg verify sop t.dg"));
    }

    #[test]
    fn kappa_needs_sequence_regularity() {
        let r = run_kappa(doc("vars: x\ntrivext: 2 [x]\n"), RunOptions::default());
        assert_eq!(r.exit_code(), 2);
        let r = run_kappa(doc(NODE), RunOptions::default());
        assert_eq!(r.kappa.unwrap().summary.parameters, ["y"]);
    }
}
