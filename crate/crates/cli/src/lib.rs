//! Tower description language, reports and the randomized verification
//! corpus behind the `dgreg` command.

pub mod checks;
pub mod corpus;
pub mod dsl;
pub mod instance;
pub mod report;

pub use checks::{Taint, Verdict};
pub use corpus::{run_corpus, CorpusOptions, CorpusSummary};
pub use dsl::{parse, Diagnostic, TowerDocument};
pub use instance::{random_instance, Instance, Property};
pub use report::{render_text, run_kappa, run_report, run_verify, Input, Report, RunOptions};
