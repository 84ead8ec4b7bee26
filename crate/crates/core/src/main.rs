use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use efsynth::error::Error;
use efsynth::formulas::{expand, render_core, render_macro, size_core, CoreStyle, MacroFormula};
use efsynth::semantics::{game_winner, GameResult};
use efsynth::{cli, distinguish, efgame, semantics, synthesis, StringStructure};

/// Synthesize and analyze minimal-rank first-order sentences separating
/// classified strings.
#[derive(Parser)]
#[command(name = "efsynth", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a separating sentence from a sample file.
    Synth {
        /// Sample file: `+ string` / `- string` lines.
        file: String,
        /// Minimize the number of disjuncts.
        #[arg(long)]
        minimize: bool,
        /// Also print the expansion into core first-order syntax.
        #[arg(long)]
        expand: bool,
        /// Largest positive-set size still solved by exact set cover.
        #[arg(long, default_value_t = 16)]
        exact_limit: usize,
    },
    /// Similarity of two strings: the last round count the Duplicator survives.
    Efsim { u: String, v: String },
    /// List the distinguishability formulas for a pair at a rank.
    Phi { u: String, v: String, r: u32 },
    /// Winner of the r-round game on two strings.
    Game {
        u: String,
        v: String,
        r: u32,
        /// Use the exponential minimax solver instead of the characterization.
        #[arg(long)]
        oracle: bool,
    },
    /// Evaluate a serialized formula on a string; exits 1 when false.
    Eval { string: String, formula_file: String },
    /// Check a serialized formula against a sample file; exits 1 on misfit.
    Check { file: String, formula_file: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Capacity(_) => ExitCode::from(4),
                _ => ExitCode::from(3),
            }
        }
    }
}

fn read_to_string(path: &str) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        message: format!("cannot read {path}: {e}"),
    })
}

fn load_formula(path: &str) -> Result<MacroFormula, Error> {
    MacroFormula::deserialize(read_to_string(path)?.trim())
}

fn parse_pair(u: &str, v: &str) -> Result<(StringStructure, StringStructure), Error> {
    let alphabet = efsynth::Alphabet::new(u.chars().chain(v.chars()))?;
    Ok((
        StringStructure::new(u, alphabet.clone())?,
        StringStructure::new(v, alphabet)?,
    ))
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::Synth { file, minimize, expand: want_expand, exact_limit } => {
            let sample = cli::parse_sample(&read_to_string(file)?)?;
            let hypothesis = if *minimize {
                synthesis::synthesize_minimized(&sample, *exact_limit)?
            } else {
                synthesis::synthesize(&sample)?
            };
            let formula = hypothesis.to_macro();
            let report = synthesis::check_consistent(&sample, &formula);
            if !report.consistent() {
                return Err(Error::InconsistentSample(format!(
                    "synthesized formula misclassifies {:?} / {:?}",
                    report.false_negatives, report.false_positives
                )));
            }
            if hypothesis.greedy_fallback {
                eprintln!(
                    "note: exact cover limit exceeded; disjunct count is a greedy upper bound"
                );
            }
            if cli.json {
                let mut doc = json!({
                    "rank": hypothesis.rank,
                    "disjuncts": hypothesis.disjuncts.len(),
                    "minimized": hypothesis.minimized,
                    "greedy_fallback": hypothesis.greedy_fallback,
                    "formula": serde_json::to_value(&formula).expect("serializable"),
                    "pretty": render_macro(&formula),
                });
                if *want_expand {
                    let core = expand(&formula);
                    doc["core"] = json!(render_core(&core, CoreStyle::Ascii));
                    doc["core_size"] = json!(size_core(&core));
                }
                println!("{doc}");
            } else {
                println!("rank: {}", hypothesis.rank);
                println!("disjuncts: {}", hypothesis.disjuncts.len());
                println!("formula: {}", render_macro(&formula));
                println!("serialized: {}", formula.serialize());
                if *want_expand {
                    println!("core: {}", render_core(&expand(&formula), CoreStyle::Ascii));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Efsim { u, v } => {
            let (u, v) = parse_pair(u, v)?;
            let value = efgame::efsim(&u, &v)?;
            let components = efgame::sim_components(&u, &v)?;
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "efsim": value,
                        "length": components.length,
                        "pref": components.pref,
                        "suff": components.suff,
                        "sub": components.sub,
                    })
                );
            } else {
                let show = |c: Option<u32>| {
                    c.map_or("inf".to_string(), |x| x.to_string())
                };
                println!("efsim: {value}");
                println!(
                    "components: length={} pref={} suff={} sub={}",
                    show(components.length),
                    show(components.pref),
                    show(components.suff),
                    show(components.sub)
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Phi { u, v, r } => {
            let (u, v) = parse_pair(u, v)?;
            let set = distinguish::phi_set(&u, &v, *r)?;
            if cli.json {
                let items: Vec<_> = set
                    .iter()
                    .map(|(m, family)| {
                        json!({
                            "family": family.to_string(),
                            "formula": serde_json::to_value(m).expect("serializable"),
                            "qr": m.qr(),
                            "pretty": render_macro(m),
                        })
                    })
                    .collect();
                println!("{}", json!({ "count": set.len(), "formulas": items }));
            } else {
                println!("count: {}", set.len());
                for (m, family) in set.iter() {
                    println!("[{family}] qr={} {}", m.qr(), render_macro(m));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Game { u, v, r, oracle } => {
            let (u, v) = parse_pair(u, v)?;
            let duplicator = if *oracle {
                game_winner(&u, &v, *r)? == GameResult::Duplicator
            } else {
                efgame::duplicator_wins(&u, &v, *r)
            };
            let winner = if duplicator { "duplicator" } else { "spoiler" };
            if cli.json {
                println!("{}", json!({ "rounds": r, "winner": winner }));
            } else {
                println!("{winner}");
            }
            Ok(if duplicator { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Eval { string, formula_file } => {
            let w = StringStructure::parse(string)?;
            let formula = load_formula(formula_file)?;
            let holds = semantics::eval_macro(&w, &formula);
            if cli.json {
                println!("{}", json!({ "holds": holds }));
            } else {
                println!("{holds}");
            }
            Ok(if holds { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Check { file, formula_file } => {
            let sample = cli::parse_sample(&read_to_string(file)?)?;
            let formula = load_formula(formula_file)?;
            let report = synthesis::check_consistent(&sample, &formula);
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "consistent": report.consistent(),
                        "false_negatives": report.false_negatives,
                        "false_positives": report.false_positives,
                    })
                );
            } else if report.consistent() {
                println!("consistent");
            } else {
                println!("inconsistent");
                for s in &report.false_negatives {
                    println!("  false negative: {s}");
                }
                for s in &report.false_positives {
                    println!("  false positive: {s}");
                }
            }
            Ok(if report.consistent() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}
