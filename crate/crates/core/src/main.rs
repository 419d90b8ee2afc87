use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use keypoly::classify::{self, GridSpec};
use keypoly::compositions::km_witness;
use keypoly::kohnert::{kohnert_diagrams, kohwt};
use keypoly::quasikey::enumerate_qkt;
use keypoly::{Model, WeakComposition};

const EXIT_COUNTEREXAMPLE: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "keypoly", version, about = "Key polynomials, Kohnert diagrams and quasi-key tableaux")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expand the key polynomial of a composition
    Expand {
        /// Composition, e.g. `0,2,1,2` or `[0,2,1,2]`
        alpha: WeakComposition,
        #[arg(long, value_enum, default_value_t = ModelArg::Demazure)]
        model: ModelArg,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Decide multiplicity-freeness by the pattern criterion
    Classify { alpha: WeakComposition },
    /// List the quasi-key tableaux of a shape
    Tableaux { alpha: WeakComposition },
    /// List the Kohnert diagrams of a composition
    Diagrams { alpha: WeakComposition },
    /// Run an exhaustive sweep over {0..=max-part}^n
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long = "max-part")]
        max_part: u32,
        #[arg(long, value_enum, default_value_t = Suite::Classification)]
        suite: Suite,
        /// Worker threads; 0 uses all cores
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Largest grid accepted without --force
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long)]
        force: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModelArg {
    Demazure,
    Kohnert,
    Quasikey,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Model {
        match m {
            ModelArg::Demazure => Model::Demazure,
            ModelArg::Kohnert => Model::Kohnert,
            ModelArg::Quasikey => Model::Quasikey,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Plain,
    Structured,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Classification,
    Models,
    Lemmas,
    Conjecture,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Expand { alpha, model, format } => {
            let p = Model::from(model).key_polynomial(&alpha);
            match format {
                Format::Plain => {
                    for line in p.plain_lines() {
                        println!("{line}");
                    }
                }
                Format::Structured => println!("{}", serde_json::to_string(&p).expect("serializable")),
            }
            ExitCode::SUCCESS
        }
        Command::Classify { alpha } => {
            match km_witness(&alpha) {
                None => println!("multiplicity-free"),
                Some(w) => {
                    let positions: Vec<String> = w.positions.iter().map(usize::to_string).collect();
                    println!("has multiplicity: contains {} at positions {}", w.pattern, positions.join(","));
                }
            }
            ExitCode::SUCCESS
        }
        Command::Tableaux { alpha } => {
            let all = enumerate_qkt(&alpha);
            println!("{} quasi-key tableau{} of shape {alpha}", all.len(), if all.len() == 1 { "" } else { "x" });
            for t in &all {
                println!();
                print!("{t}");
            }
            ExitCode::SUCCESS
        }
        Command::Diagrams { alpha } => {
            let all = kohnert_diagrams(&alpha);
            println!("{} Kohnert diagram{} of {alpha}", all.len(), if all.len() == 1 { "" } else { "s" });
            for d in &all {
                println!();
                println!("weight {:?}", kohwt(d).as_slice());
                print!("{d}");
            }
            ExitCode::SUCCESS
        }
        Command::Verify { n, max_part, suite, jobs, budget, force } => verify(n, max_part, suite, jobs, budget, force),
    }
}

fn to_json<T: serde::Serialize>(report: &T) -> String {
    serde_json::to_string(report).expect("serializable")
}

fn verify(n: usize, max_part: u32, suite: Suite, jobs: usize, budget: u64, force: bool) -> ExitCode {
    let spec = GridSpec { n, max_part };
    match spec.size() {
        Some(size) if size <= budget || force => {}
        size => {
            let size = size.map_or_else(|| "more than 2^64".to_string(), |s| s.to_string());
            eprintln!(
                "error: grid has {size} compositions, above the budget of {budget}; pass --force to run it anyway"
            );
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let result = match suite {
        Suite::Classification => classify::verify_classification(n, max_part, jobs).map(|r| (to_json(&r), r.passed())),
        Suite::Models => classify::cross_check_models(n, max_part, jobs).map(|r| (to_json(&r), r.passed())),
        Suite::Lemmas => classify::verify_lemmas(n, max_part, jobs).map(|r| (to_json(&r), r.passed())),
        Suite::Conjecture => classify::quasikey_zero_conjecture_sweep(n, max_part, jobs).map(|r| {
            if !r.counterexamples.is_empty() {
                eprintln!("conjecture sweep found {} counterexample(s)", r.counterexamples.len());
            }
            (to_json(&r), true)
        }),
    };
    match result {
        Ok((doc, passed)) => {
            println!("{doc}");
            eprintln!(
                "{} sweep over n={n}, max-part={max_part}: {}",
                suite.to_possible_value().expect("named").get_name(),
                if passed { "ok" } else { "COUNTEREXAMPLES FOUND" }
            );
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_COUNTEREXAMPLE)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
