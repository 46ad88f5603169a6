mod golden;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use permball::{
    basis, basis_via_poset_descent, enumerate_plus_irreducible, generating_set, monotone_inflate,
    neighbors, plus_irreducible_count, reduce, DistanceEngine, DistanceTable, Error, Limits,
    Method, Model, Permutation,
};
use serde_json::json;

use crate::golden::Golden;
use crate::output::{Format, Report};
use crate::verify::{Status, Suite};

#[derive(Parser)]
#[command(name = "permball", version, about = "Block and prefix transposition distances, balls and bases")]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,

    /// Longest permutation length any enumeration or search may touch.
    #[arg(long, env = "PERMBALL_MAX_LEN", default_value_t = permball::enumerate::DEFAULT_MAX_LEN, global = true)]
    max_len: usize,

    /// Cap on the states a single breadth-first search may hold.
    #[arg(long, global = true)]
    max_states: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ModelArg {
    /// td (block transpositions) or ptd (prefix transpositions).
    #[arg(long, short, default_value = "td", value_parser = parse_model)]
    model: Model,
}

#[derive(Subcommand)]
enum Command {
    /// Sorting distance of a permutation, or the distance between two.
    Distance {
        perm: String,
        #[arg(long)]
        to: Option<String>,
        #[command(flatten)]
        model: ModelArg,
    },
    /// Generating set of the ball B_k.
    Genset {
        #[command(flatten)]
        model: ModelArg,
        #[arg(short)]
        k: u32,
        #[arg(long, default_value = "direct", value_parser = parse_method)]
        method: Method,
    },
    /// Basis of the ball B_k as a permutation class.
    Basis {
        #[command(flatten)]
        model: ModelArg,
        #[arg(short)]
        k: u32,
        #[arg(long, value_enum, default_value = "exhaustive")]
        method: BasisMethod,
        /// Also search one length past the bound and report what is found there.
        #[arg(long)]
        probe_extra_length: bool,
    },
    /// Permutations of length n within distance k of the identity.
    Ball {
        #[command(flatten)]
        model: ModelArg,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        k: u32,
        #[arg(long)]
        count_only: bool,
    },
    /// Permutations one operation away.
    Neighbors {
        perm: String,
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        count_only: bool,
    },
    /// Plus irreducible permutations of length n.
    CountIrreducible {
        #[arg(short)]
        n: usize,
    },
    /// Collapse every strip to a single entry.
    Reduce { perm: String },
    /// Monotone inflation by a vector of multiplicities.
    Inflate {
        perm: String,
        #[arg(long, value_delimiter = ',', required = true)]
        vector: Vec<usize>,
    },
    /// Run the golden checks and invariant suite.
    Verify {
        #[command(flatten)]
        model: ModelArg,
        #[arg(short, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Golden file replacing the bundled one.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisMethod {
    Exhaustive,
    Descent,
}

fn parse_model(s: &str) -> Result<Model, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_budget() {
            Failure::Budget(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = Limits {
        max_len: cli.max_len,
        max_states: cli.max_states,
    };
    let start = Instant::now();
    let outcome = run(&cli.command, &limits);
    let elapsed = start.elapsed().as_millis();
    match outcome {
        Ok((report, failed)) => {
            print!("{}", report.render(cli.format, elapsed));
            if cli.format == Format::Json {
                println!();
            }
            if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("permball: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("permball: {msg}");
            ExitCode::from(3)
        }
    }
}

fn perm(s: &str) -> Result<Permutation, Failure> {
    Ok(s.parse::<Permutation>()?)
}

fn strings<'a>(xs: impl IntoIterator<Item = &'a Permutation>) -> Vec<String> {
    xs.into_iter().map(|p| p.to_string()).collect()
}

fn run(command: &Command, limits: &Limits) -> Result<(Report, bool), Failure> {
    let report = match command {
        Command::Distance { perm: p, to, model } => {
            let m = model.model;
            let p = perm(p)?;
            let engine = DistanceEngine::new(*limits);
            let (distance, target) = match to {
                Some(q) => {
                    let q = perm(q)?;
                    (engine.pairwise(&p, &q, m)?, q)
                }
                None => (engine.distance(&p, m)?, Permutation::identity(p.len())),
            };
            Report {
                command: "distance",
                parameters: json!({ "perm": p.to_string(), "to": to, "model": m.tag() }),
                result: json!({
                    "perm": p.to_string(),
                    "target": target.to_string(),
                    "model": m.tag(),
                    "distance": distance,
                }),
            }
        }
        Command::Genset { model, k, method } => {
            let r = generating_set(*k, model.model, *method, limits)?;
            Report {
                command: "genset",
                parameters: json!({ "model": model.model.tag(), "k": k, "method": method.name() }),
                result: json!({
                    "k": r.k,
                    "model": r.model.tag(),
                    "method": r.method.name(),
                    "element_length": r.element_length,
                    "count": r.elements.len(),
                    "elements": r.elements.to_strings(),
                }),
            }
        }
        Command::Basis {
            model,
            k,
            method,
            probe_extra_length,
        } => {
            let m = model.model;
            let (r, method_name) = match method {
                BasisMethod::Exhaustive => (basis(*k, m, *probe_extra_length, limits)?, "exhaustive"),
                BasisMethod::Descent => (basis_via_poset_descent(*k, m, limits)?, "descent"),
            };
            let probe = r.probe.as_ref().map(|p| {
                json!({ "length": p.length, "count": p.found.len(), "elements": p.found.to_strings() })
            });
            Report {
                command: "basis",
                parameters: json!({
                    "model": m.tag(),
                    "k": k,
                    "method": method_name,
                    "probe_extra_length": probe_extra_length,
                }),
                result: json!({
                    "k": r.k,
                    "model": r.model.tag(),
                    "method": method_name,
                    "length_bound": r.length_bound_used,
                    "count": r.elements.len(),
                    "elements": r.elements.to_strings(),
                    "probe": probe,
                }),
            }
        }
        Command::Ball {
            model,
            n,
            k,
            count_only,
        } => {
            let m = model.model;
            limits.check_len("ball", *n)?;
            let table = DistanceTable::build(*n, m, Some(*k), limits)?;
            let members = table.ball(*k);
            let mut result = json!({ "n": n, "k": k, "model": m.tag(), "count": members.len() });
            if !count_only {
                result["elements"] = json!(members.to_strings());
            }
            Report {
                command: "ball",
                parameters: json!({ "model": m.tag(), "n": n, "k": k, "count_only": count_only }),
                result,
            }
        }
        Command::Neighbors {
            perm: p,
            model,
            count_only,
        } => {
            let m = model.model;
            let p = perm(p)?;
            let ns = neighbors(&p, m);
            let mut result = json!({ "perm": p.to_string(), "model": m.tag(), "count": ns.len() });
            if !count_only {
                result["elements"] = json!(strings(&ns));
            }
            Report {
                command: "neighbors",
                parameters: json!({ "perm": p.to_string(), "model": m.tag(), "count_only": count_only }),
                result,
            }
        }
        Command::CountIrreducible { n } => {
            let count = if *n == 0 { 0u32.into() } else { plus_irreducible_count(n - 1) };
            let enumerated = if *n <= limits.max_len {
                Some(enumerate_plus_irreducible(*n, limits)?.len())
            } else {
                None
            };
            if let Some(e) = enumerated {
                if count != e.into() {
                    return Err(Failure::Usage(format!(
                        "recurrence gives {count} but enumeration gives {e}"
                    )));
                }
            }
            Report {
                command: "count-irreducible",
                parameters: json!({ "n": n }),
                result: json!({ "n": n, "count": count.to_string(), "enumerated": enumerated }),
            }
        }
        Command::Reduce { perm: p } => {
            let p = perm(p)?;
            let r = reduce(&p);
            Report {
                command: "reduce",
                parameters: json!({ "perm": p.to_string() }),
                result: json!({ "perm": p.to_string(), "reduced": r.to_string() }),
            }
        }
        Command::Inflate { perm: p, vector } => {
            let p = perm(p)?;
            let out = monotone_inflate(&p, &vector.clone().into())?;
            Report {
                command: "inflate",
                parameters: json!({ "perm": p.to_string(), "vector": vector }),
                result: json!({ "perm": p.to_string(), "vector": vector, "inflated": out.to_string() }),
            }
        }
        Command::Verify {
            model,
            k,
            max_n,
            golden,
        } => {
            let golden = match golden {
                Some(path) => Golden::load(path).map_err(Failure::Usage)?,
                None => Golden::builtin(),
            };
            let suite = Suite {
                model: model.model,
                k: *k,
                max_n: *max_n,
                limits: *limits,
                golden: &golden,
            };
            let checks = suite.run();
            let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
            let failed = count(Status::Fail);
            let report = Report {
                command: "verify",
                parameters: json!({ "model": model.model.tag(), "k": k, "max_n": max_n }),
                result: json!({
                    "checks": checks,
                    "passed": count(Status::Pass),
                    "failed": failed,
                    "skipped": count(Status::Skipped),
                }),
            };
            return Ok((report, failed > 0));
        }
    };
    Ok((report, false))
}
