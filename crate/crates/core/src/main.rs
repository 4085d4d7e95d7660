use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use seminfo::io::report::run_paper_report;
use seminfo::io::{load_database, load_deduction, load_ops_script, write_database, write_ops, write_structure, IoError};
use seminfo::metrics::{complexity_of_set, Caveat};
use seminfo::{
    entails, evaluate, informativity, parse_formula, relevancy, search_minimal_update, BoundConfig, Database, Deduction,
    Formula, OpMode, UpdateCollection, Verdict,
};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "seminfo", version, about = "Semantic informativity of deductions over finite databases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load a database file and check that its structure models its theory.
    Check { db: PathBuf },
    /// Evaluate a sentence in the structure of a database.
    Eval {
        db: PathBuf,
        #[arg(long)]
        formula: String,
    },
    /// Apply an operations script and print the resulting database.
    Apply {
        db: PathBuf,
        ops: PathBuf,
        #[arg(long, default_value_t)]
        mode: OpMode,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Decide whether the theory of a database entails a sentence.
    Entails {
        db: PathBuf,
        #[arg(long)]
        formula: String,
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
    /// Find a shortest update of a database that makes a sentence true.
    Search {
        db: PathBuf,
        #[arg(long)]
        formula: String,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        fresh: usize,
        #[arg(long, default_value_t)]
        mode: OpMode,
    },
    /// Informational complexity over a collection of updates.
    Complexity(MetricArgs),
    /// Relevancy of a deduction over a collection of updates.
    Relevancy(MetricArgs),
    /// Semantic informativity of a deduction over a collection of updates.
    Informativity(MetricArgs),
    /// Recompute every bundled example and compare with the paper.
    PaperReport {
        #[arg(long, default_value_t)]
        mode: OpMode,
        #[arg(long, default_value_t = 4)]
        bound: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct MetricArgs {
    #[arg(long)]
    db: PathBuf,
    /// Operation scripts, one update each, all applied to the same database.
    #[arg(long, num_args = 1.., required = true)]
    updates: Vec<PathBuf>,
    #[arg(long, conflicts_with = "deduction", required_unless_present = "deduction")]
    formula: Option<String>,
    #[arg(long)]
    deduction: Option<PathBuf>,
    #[arg(long, default_value_t = 4)]
    bound: usize,
    #[arg(long, default_value_t)]
    mode: OpMode,
    #[arg(long)]
    json: bool,
}

enum Failure {
    Usage(String),
    Validation(String),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        if e.is_validation() {
            Failure::Validation(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Done,
    Caveated,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Caveated) => ExitCode::from(3),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Validation(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn sentence(text: &str, d: &Database) -> Result<(Formula, Vec<String>), Failure> {
    let parsed = parse_formula(text, d.signature()).map_err(|e| Failure::Usage(e.to_string()))?;
    if let Some(v) = parsed.formula.free_variables().into_iter().next() {
        return Err(Failure::Usage(format!("`{v}` is free; a sentence is required")));
    }
    Ok((parsed.formula, parsed.unknown.iter().map(|s| s.to_string()).collect()))
}

fn run(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Check { db } => {
            let d = load_database(&db)?;
            println!(
                "correct: {} elements, {} theory sentences",
                d.structure().size(),
                d.theory().len()
            );
            Ok(Outcome::Done)
        }
        Command::Eval { db, formula } => {
            let d = load_database(&db)?;
            let (f, unknown) = sentence(&formula, &d)?;
            let value = evaluate(d.structure(), &f).map_err(|e| Failure::Usage(e.to_string()))?;
            if unknown.is_empty() {
                println!("{value}");
            } else {
                println!("{value} (uninterpreted: {})", unknown.join(", "));
            }
            Ok(Outcome::Done)
        }
        Command::Apply { db, ops, mode, out } => {
            let d = load_database(&db)?;
            let u = load_ops_script(&ops, d, mode)?;
            eprintln!("mode: {mode}");
            for (i, w) in u.warnings() {
                eprintln!("warning: step {i}: {w}");
            }
            let text = write_database(u.last());
            match out {
                Some(path) => write_file(&path, &text)?,
                None => print!("{text}"),
            }
            Ok(Outcome::Done)
        }
        Command::Entails { db, formula, bound } => {
            let d = load_database(&db)?;
            let (f, _) = sentence(&formula, &d)?;
            let verdict = entails(d.theory(), &f, &BoundConfig::with_bound(bound));
            println!("{verdict}");
            match verdict {
                Verdict::Fails(w) => {
                    print!("{}", write_structure(&w));
                    Ok(Outcome::Done)
                }
                Verdict::HoldsUpToBound(_) => Ok(Outcome::Done),
                Verdict::Unknown(_) => Ok(Outcome::Caveated),
            }
        }
        Command::Search { db, formula, depth, fresh, mode } => {
            let d = load_database(&db)?;
            let (f, _) = sentence(&formula, &d)?;
            println!("mode: {mode}");
            match search_minimal_update(&d, &f, depth, fresh, mode) {
                Some(u) => {
                    println!("norm: {}", u.len() - 1);
                    print!("{}", write_ops(u.ops()));
                }
                None => println!("no satisfactory update within depth {depth} and {fresh} fresh elements"),
            }
            Ok(Outcome::Done)
        }
        Command::Complexity(args) => metric(args, Metric::Complexity),
        Command::Relevancy(args) => metric(args, Metric::Relevancy),
        Command::Informativity(args) => metric(args, Metric::Informativity),
        Command::PaperReport { mode, bound, json } => {
            let report = run_paper_report(mode, &BoundConfig::with_bound(bound));
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.render_text());
            }
            if report.all_derived_match() {
                Ok(Outcome::Done)
            } else {
                Err(Failure::Validation("some cases differ from the derived values".into()))
            }
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

#[derive(Clone, Copy)]
enum Metric {
    Complexity,
    Relevancy,
    Informativity,
}

#[derive(Serialize)]
struct MetricOutput {
    metric: &'static str,
    mode: OpMode,
    bound: usize,
    value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    complexity: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    relevancy: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    chosen_update: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    relevant: Option<Vec<String>>,
    caveats: Vec<Caveat>,
}

fn metric(args: MetricArgs, which: Metric) -> Result<Outcome, Failure> {
    let d = load_database(&args.db)?;
    let updates = args
        .updates
        .iter()
        .map(|p| load_ops_script(p, d.clone(), args.mode))
        .collect::<Result<Vec<_>, _>>()?;
    let coll = UpdateCollection::new(updates).map_err(|e| Failure::Validation(e.to_string()))?;
    let ded = match (&args.formula, &args.deduction) {
        (Some(text), _) => {
            let (f, _) = sentence(text, &d)?;
            Deduction::of_proposition(f).map_err(|e| Failure::Usage(e.to_string()))?
        }
        (None, Some(path)) => load_deduction(path, d.signature())?,
        (None, None) => return Err(Failure::Usage("one of --formula or --deduction is required".into())),
    };
    let cfg = BoundConfig::with_bound(args.bound);
    let mut out = MetricOutput {
        metric: "",
        mode: args.mode,
        bound: args.bound,
        value: String::new(),
        complexity: None,
        relevancy: None,
        chosen_update: None,
        relevant: None,
        caveats: Vec::new(),
    };
    match which {
        Metric::Complexity => {
            out.metric = "complexity";
            out.value = complexity_of_set(&coll, &ded.support().members).to_string();
        }
        Metric::Relevancy => {
            let r = relevancy(&coll, &ded, &cfg);
            out.metric = "relevancy";
            out.value = r.value.to_string();
            out.chosen_update = r.chosen_update;
            out.relevant = Some(r.relevant);
            out.caveats = r.caveats;
        }
        Metric::Informativity => {
            let i = informativity(&coll, &ded, &cfg);
            out.metric = "informativity";
            out.value = i.value.to_string();
            out.complexity = Some(i.complexity.to_string());
            out.relevancy = Some(i.relevancy.value.to_string());
            out.chosen_update = i.relevancy.chosen_update;
            out.relevant = Some(i.relevancy.relevant.clone());
            out.caveats = i.relevancy.caveats;
        }
    }
    if args.json {
        println!("{}", serde_json::to_string_pretty(&out).expect("metric output serializes"));
    } else {
        print_metric(&out);
    }
    Ok(if out.caveats.iter().any(Caveat::is_unknown) { Outcome::Caveated } else { Outcome::Done })
}

fn print_metric(out: &MetricOutput) {
    println!("mode: {}  bound: {}", out.mode, out.bound);
    println!("{}: {}", out.metric, out.value);
    if let Some(c) = &out.complexity {
        println!("complexity: {c}");
    }
    if let Some(r) = &out.relevancy {
        println!("relevancy: {r}");
    }
    if let Some(i) = out.chosen_update {
        println!("chosen update: {i}");
    }
    if let Some(rel) = &out.relevant {
        println!("relevant: {{{}}}", rel.join(", "));
    }
    for c in &out.caveats {
        println!("caveat: {c}");
    }
}
