use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dgreg_cli::{random_instance, render_text, run_corpus, run_kappa, run_report, run_verify, CorpusOptions, Input, Property, Report, RunOptions};

#[derive(Parser)]
#[command(name = "dgreg", version, about = "Regularity of commutative DG-rings given as Koszul and trivial-extension towers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Common {
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random combinations tried per stage of the depth search.
    #[arg(long, default_value_t = 32)]
    trials: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Amplitude, depth, Cohen-Macaulayness and sequence-regularity of a tower.
    Report {
        file: String,
        #[command(flatten)]
        common: Common,
    },
    /// Check one statement on a tower, or on the random instance for the seed.
    Verify {
        #[arg(value_enum)]
        property: Property,
        #[arg(required_unless_present = "random")]
        file: Option<String>,
        #[arg(long, conflicts_with = "file")]
        random: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run a seeded corpus of random instances for one statement.
    Corpus {
        #[arg(value_enum)]
        profile: Property,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Print the random instance a seed produces, as a document.
    Sample {
        #[arg(value_enum)]
        profile: Property,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The residue DG-field of a sequence-regular tower.
    Kappa {
        file: String,
        #[command(flatten)]
        common: Common,
    },
}

fn read(path: &str) -> Result<String, ExitCode> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("dgreg: cannot read {path}: {e}");
        ExitCode::from(2)
    })
}

fn emit(report: &Report, json: bool) -> ExitCode {
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", render_text(report));
    }
    ExitCode::from(report.exit_code() as u8)
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    let opts = |c: &Common| RunOptions {
        seed: c.seed,
        trials: c.trials,
    };
    Ok(match cli.command {
        Command::Report { file, common } => {
            let text = read(&file)?;
            emit(&run_report(Input::Document { path: &file, text: &text }, opts(&common)), common.json)
        }
        Command::Kappa { file, common } => {
            let text = read(&file)?;
            emit(&run_kappa(Input::Document { path: &file, text: &text }, opts(&common)), common.json)
        }
        Command::Verify {
            property,
            file,
            random: _,
            common,
        } => match file {
            Some(file) => {
                let text = read(&file)?;
                emit(&run_verify(property, Input::Document { path: &file, text: &text }, opts(&common)), common.json)
            }
            None => emit(&run_verify(property, Input::Random, opts(&common)), common.json),
        },
        Command::Sample { profile, seed } => {
            print!("{}", random_instance(profile, seed).to_document());
            ExitCode::SUCCESS
        }
        Command::Corpus { profile, count, common } => {
            let mut o = CorpusOptions::new(profile, count, common.seed);
            o.trials = common.trials;
            let summary = run_corpus(o);
            if common.json {
                println!("{}", summary.to_json());
            } else {
                print!("{}", summary.render_text());
            }
            ExitCode::from(summary.exit_code() as u8)
        }
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(c) | Err(c) => c,
    }
}
