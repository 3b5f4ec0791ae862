//! Seeded randomized corpora: every instance is drawn from its own seed, so
//! any single failure replays with `dgreg verify <profile> --random --seed S`.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use dgreg::regularity::{Outcome, SearchConfig};

use crate::checks::{run_property, Verdict};
use crate::instance::{random_instance, Property};
use crate::report::{SCHEMA, VERSION};

#[derive(Clone, Copy, Debug)]
pub struct CorpusOptions {
    pub profile: Property,
    /// Instances to evaluate; skipped instances do not count.
    pub count: usize,
    pub seed: u64,
    pub trials: usize,
    /// Upper bound on drawn instances, skipped ones included.
    pub max_draws: usize,
}

impl CorpusOptions {
    pub fn new(profile: Property, count: usize, seed: u64) -> Self {
        CorpusOptions {
            profile,
            count,
            seed,
            trials: SearchConfig::default().trials,
            max_draws: count.saturating_mul(40).max(64),
        }
    }
}

/// Seed of the `index`-th draw of a corpus.
pub fn instance_seed(corpus_seed: u64, index: usize) -> u64 {
    corpus_seed.wrapping_mul(1_000_003).wrapping_add(index as u64)
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceResult {
    pub index: usize,
    pub seed: u64,
    pub outcome: Outcome,
    pub verdicts: Vec<Verdict>,
    pub error: Option<String>,
    pub reproduce: String,
}

impl InstanceResult {
    fn counts(&self) -> bool {
        self.error.is_some() || self.outcome != Outcome::Skipped
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusSummary {
    pub schema: &'static str,
    pub version: &'static str,
    pub profile: Property,
    pub seed: u64,
    pub trials: usize,
    pub requested: usize,
    pub drawn: usize,
    pub evaluated: usize,
    pub passed: usize,
    pub counterexamples: usize,
    pub inconclusive: usize,
    pub skipped: usize,
    pub errors: usize,
    pub results: Vec<InstanceResult>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CorpusSummary {
    pub fn failures(&self) -> impl Iterator<Item = &InstanceResult> {
        self.results
            .iter()
            .filter(|r| r.error.is_some() || matches!(r.outcome, Outcome::Counterexample | Outcome::Inconclusive))
    }

    pub fn exit_code(&self) -> i32 {
        if self.counterexamples > 0 {
            1
        } else if self.errors > 0 || self.evaluated < self.requested {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summaries serialize")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "corpus {} (seed {}): {} evaluated of {} drawn", self.profile, self.seed, self.evaluated, self.drawn);
        let _ = writeln!(
            out,
            "  pass {}  counterexample {}  inconclusive {}  skipped {}  errors {}",
            self.passed, self.counterexamples, self.inconclusive, self.skipped, self.errors
        );
        if self.evaluated < self.requested {
            let _ = writeln!(out, "  only {} of {} requested instances met the hypotheses", self.evaluated, self.requested);
        }
        for f in self.failures() {
            let what = match &f.error {
                Some(e) => e.clone(),
                None => format!("{:?}", f.outcome).to_lowercase(),
            };
            let _ = writeln!(out, "  #{} {what}: {}", f.index, f.reproduce);
        }
        let _ = writeln!(out, "time: {:.1}s", self.elapsed.as_secs_f64());
        out
    }
}

fn aggregate(verdicts: &[Verdict]) -> Outcome {
    let has = |o| verdicts.iter().any(|v| v.outcome == o);
    if has(Outcome::Counterexample) {
        Outcome::Counterexample
    } else if has(Outcome::Inconclusive) {
        Outcome::Inconclusive
    } else if has(Outcome::Pass) {
        Outcome::Pass
    } else {
        Outcome::Skipped
    }
}

fn evaluate(opts: &CorpusOptions, index: usize) -> InstanceResult {
    let seed = instance_seed(opts.seed, index);
    let instance = random_instance(opts.profile, seed);
    let config = SearchConfig {
        trials: opts.trials,
        seed,
    };
    let mut reproduce = format!("dgreg verify {} --random --seed {seed}", opts.profile);
    if opts.trials != SearchConfig::default().trials {
        let _ = write!(reproduce, " --trials {}", opts.trials);
    }
    match run_property(opts.profile, &instance, config, seed) {
        Ok(verdicts) => InstanceResult {
            index,
            seed,
            outcome: aggregate(&verdicts),
            verdicts,
            error: None,
            reproduce,
        },
        Err(e) => InstanceResult {
            index,
            seed,
            outcome: Outcome::Inconclusive,
            verdicts: Vec::new(),
            error: Some(e.to_string()),
            reproduce,
        },
    }
}

/// Draws instances in parallel batches until `count` of them were evaluated.
/// The result depends only on the options, not on scheduling.
pub fn run_corpus(opts: CorpusOptions) -> CorpusSummary {
    let start = Instant::now();
    let batch = rayon::current_num_threads().max(1) * 2;
    let mut kept: Vec<InstanceResult> = Vec::new();
    let mut evaluated = 0;
    let mut drawn = 0;
    let mut skipped = 0;
    'outer: while evaluated < opts.count && drawn < opts.max_draws {
        let hi = (drawn + batch).min(opts.max_draws);
        let mut results: Vec<InstanceResult> = (drawn..hi).into_par_iter().map(|i| evaluate(&opts, i)).collect();
        results.sort_by_key(|r| r.index);
        for r in results {
            drawn = r.index + 1;
            if r.counts() {
                evaluated += 1;
                kept.push(r);
                if evaluated == opts.count {
                    break 'outer;
                }
            } else {
                skipped += 1;
            }
        }
    }
    let count = |o: Outcome| kept.iter().filter(|r| r.error.is_none() && r.outcome == o).count();
    CorpusSummary {
        schema: SCHEMA,
        version: VERSION,
        profile: opts.profile,
        seed: opts.seed,
        trials: opts.trials,
        requested: opts.count,
        drawn,
        evaluated,
        passed: count(Outcome::Pass),
        counterexamples: count(Outcome::Counterexample),
        inconclusive: count(Outcome::Inconclusive),
        skipped,
        errors: kept.iter().filter(|r| r.error.is_some()).count(),
        results: kept,
        elapsed: start.elapsed(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_spread_per_corpus() {
        assert_eq!(instance_seed(0, 5), 5);
        assert_eq!(instance_seed(2, 1), 2_000_007);
    }

    #[test]
    fn aggregation() {
        let v = |o| Verdict::new("x", o, crate::checks::Taint::Certified, serde_json::Value::Null);
        assert_eq!(aggregate(&[]), Outcome::Skipped);
        assert_eq!(aggregate(&[v(Outcome::Skipped), v(Outcome::Pass)]), Outcome::Pass);
        assert_eq!(aggregate(&[v(Outcome::Inconclusive), v(Outcome::Pass)]), Outcome::Inconclusive);
        assert_eq!(aggregate(&[v(Outcome::Inconclusive), v(Outcome::Counterexample)]), Outcome::Counterexample);
    }

    #[test]
    fn small_corpus_is_deterministic() {
        let a = run_corpus(CorpusOptions::new(Property::Redka, 6, 3));
        let b = run_corpus(CorpusOptions::new(Property::Redka, 6, 3));
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.evaluated, 6);
        assert_eq!(a.exit_code(), 0);
        assert!(a.results.windows(2).all(|w| w[0].index < w[1].index));
    }
}
