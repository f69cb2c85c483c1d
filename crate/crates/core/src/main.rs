use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use laxcomma::cli::commands;
use laxcomma::cli::fixtures::KzFixture;
use laxcomma::cli::{load_spec, run_suite, Env, Mutation, SuiteOptions, SUITES};
use laxcomma::thin2::{kz_search, KzSearchBounds};
use laxcomma::Error;

#[derive(Parser)]
#[command(name = "laxcomma", version, about = "Finite category theory engine")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args)]
struct Out {
    /// Print the result as one JSON document.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and validate a spec file.
    Validate {
        file: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Run every `command` block of a spec file.
    Run {
        file: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Comma category of two functors, or comma object of two morphisms.
    Comma {
        file: PathBuf,
        a: String,
        b: String,
        /// Search in this po-category.
        #[arg(long = "in")]
        within: Option<String>,
        #[command(flatten)]
        out: Out,
    },
    /// Strict pullback of two functors, or of two morphisms.
    Pullback {
        file: PathBuf,
        a: String,
        b: String,
        #[arg(long = "in")]
        within: Option<String>,
        #[command(flatten)]
        out: Out,
    },
    /// Pointwise Kan extension of J along H.
    Kan {
        file: PathBuf,
        h: String,
        j: String,
        #[arg(long, conflicts_with = "left")]
        right: bool,
        #[arg(long)]
        left: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Coequalizer of two monotone maps, optionally in the lax slice over A's codomain.
    Coeq {
        file: PathBuf,
        g: String,
        h: String,
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        over: Option<Vec<String>>,
        #[command(flatten)]
        out: Out,
    },
    /// Is F left adjoint to G in a po-category.
    AdjointCheck {
        file: PathBuf,
        f: String,
        g: String,
        #[arg(long = "in")]
        within: Option<String>,
        #[command(flatten)]
        out: Out,
    },
    /// The rari coherence data of an object of a slice.
    KzWitness {
        file: PathBuf,
        b: String,
        #[command(flatten)]
        out: Out,
    },
    /// Run a property suite.
    Suite {
        name: String,
        #[arg(long)]
        max_elems: Option<usize>,
        /// Write the JSON report to PATH, or print it when no path is given.
        #[arg(long, value_name = "PATH", num_args = 0..=1)]
        json: Option<Option<PathBuf>>,
        #[arg(long, hide = true)]
        mutate: Option<String>,
    },
    /// List the suites.
    Suites {
        #[command(flatten)]
        out: Out,
    },
    /// Exhaustive search for lax idempotent, non-idempotent 2-monads.
    KzSearch {
        #[arg(long, default_value_t = 2)]
        max_objects: usize,
        #[arg(long, default_value_t = 3)]
        max_hom: usize,
        /// Write the fixture file here.
        #[arg(long)]
        write: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
}

/// Exit status 2: the request itself was malformed.
fn is_usage(e: &Error) -> bool {
    matches!(e, Error::UnknownSuite(_) | Error::BoundsTooLarge(_))
}

fn load(file: &PathBuf) -> Result<Env, (u8, String)> {
    let text = std::fs::read_to_string(file).map_err(|e| (2, format!("{}: {e}", file.display())))?;
    load_spec(&text).map_err(|e| (1, format!("{}: {e}", file.display())))
}

fn lib(e: Error) -> (u8, String) {
    (if is_usage(&e) { 2 } else { 1 }, e.to_string())
}

fn emit(json_mode: bool, v: &Value, text: impl FnOnce() -> String) {
    if json_mode {
        out(&pretty(v));
    } else {
        out(&text());
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn out(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json") + "\n"
}

fn category_text(c: &Value, indent: &str) -> String {
    let objs: Vec<&str> = c["objects"].as_array().into_iter().flatten().filter_map(Value::as_str).collect();
    let mut s = format!("{indent}objects ({}): {}\n", objs.len(), objs.join(" "));
    let mors = c["morphisms"].as_array().cloned().unwrap_or_default();
    s += &format!("{indent}morphisms ({}):\n", mors.len());
    for m in &mors {
        s += &format!("{indent}  {}: {} -> {}\n", str_of(&m["name"]), str_of(&m["src"]), str_of(&m["tgt"]));
    }
    s
}

fn str_of(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Object(m) => m.iter().map(|(k, v)| format!("{k} -> {}", str_of(v))).collect::<Vec<_>>().join(", "),
        other => other.to_string(),
    }
}

/// One line per field; categories are listed in full.
fn text(v: &Value) -> String {
    let Value::Object(m) = v else { return pretty(v) };
    let mut s = String::new();
    for (k, v) in m {
        if k == "category" || k == "quotient" {
            s += &format!("{k}:\n{}", category_text(v, "  "));
        } else {
            s += &format!("{k}: {}\n", str_of(v));
        }
    }
    s
}

/// Commands whose answer is a verdict exit 1 when it is negative.
fn verdict(v: &Value) -> u8 {
    match v.get("holds").or_else(|| v.get("found")) {
        Some(Value::Bool(false)) => 1,
        _ => 0,
    }
}

fn run(cli: Cli) -> Result<u8, (u8, String)> {
    match cli.cmd {
        Cmd::Validate { file, out: Out { json: j } } => {
            let env = load(&file)?;
            let v = json!({
                "valid": true,
                "categories": env.categories.len(),
                "preorders": env.preorders.len(),
                "pocategories": env.pocategories.len(),
                "functors": env.functors.len(),
                "nats": env.nats.len(),
                "monads": env.monads.len(),
                "commands": env.commands.len(),
            });
            emit(j, &v, || format!("{}: ok ({} blocks)\n", file.display(), env.len()));
            Ok(0)
        }
        Cmd::Run { file, out: Out { json: j } } => {
            let env = load(&file)?;
            let mut all = Vec::new();
            for c in &env.commands {
                all.push(commands::run_command(&env, c).map_err(lib)?);
            }
            let v = Value::Array(all);
            emit(j, &v, || pretty(&v));
            Ok(0)
        }
        Cmd::Comma { file, a, b, within, out: Out { json: j } } => {
            let env = load(&file)?;
            let v = commands::comma(&env, &a, &b, within.as_deref()).map_err(lib)?;
            emit(j, &v, || text(&v));
            Ok(verdict(&v))
        }
        Cmd::Pullback { file, a, b, within, out: Out { json: j } } => {
            let env = load(&file)?;
            let v = commands::pullback(&env, &a, &b, within.as_deref()).map_err(lib)?;
            emit(j, &v, || text(&v));
            Ok(verdict(&v))
        }
        Cmd::Kan { file, h, j: jf, right, left, out: Out { json: j } } => {
            if right == left {
                return Err((2, "pass exactly one of --right and --left".into()));
            }
            let env = load(&file)?;
            let v = commands::kan(&env, &h, &jf, right).map_err(lib)?;
            emit(j, &v, || text(&v));
            Ok(verdict(&v))
        }
        Cmd::Coeq { file, g, h, over, out: Out { json: j } } => {
            let env = load(&file)?;
            let over = over.as_ref().map(|o| (o[0].as_str(), o[1].as_str()));
            let v = commands::coeq(&env, &g, &h, over).map_err(lib)?;
            emit(j, &v, || text(&v));
            Ok(verdict(&v))
        }
        Cmd::AdjointCheck { file, f, g, within, out: Out { json: j } } => {
            let env = load(&file)?;
            let v = commands::adjoint_check(&env, &f, &g, within.as_deref()).map_err(lib)?;
            emit(j, &v, || text(&v));
            Ok(verdict(&v))
        }
        Cmd::KzWitness { file, b, out: Out { json: j } } => {
            let env = load(&file)?;
            let v = commands::kz(&env, &b).map_err(lib)?;
            emit(j, &v, || text(&v));
            Ok(verdict(&v))
        }
        Cmd::Suite { name, max_elems, json, mutate } => {
            let mutation = mutate.as_deref().map(str::parse::<Mutation>).transpose().map_err(|e| (2, e.to_string()))?;
            let opts = SuiteOptions { max_elems, mutation, zero_timing: false };
            let rep = run_suite(&name, &opts).map_err(lib)?;
            if let Some(Some(p)) = &json {
                std::fs::write(p, rep.to_json() + "\n").map_err(|e| (2, format!("{}: {e}", p.display())))?;
            }
            if json == Some(None) {
                out(&(rep.to_json() + "\n"));
            } else {
                out(&rep.to_text());
            }
            Ok(if rep.passed() { 0 } else { 1 })
        }
        Cmd::Suites { out: Out { json: j } } => {
            let v = json!(SUITES);
            emit(j, &v, || SUITES.iter().map(|s| format!("{s}\n")).collect());
            Ok(0)
        }
        Cmd::KzSearch { max_objects, max_hom, write, out: Out { json: j } } => {
            let rep = kz_search(KzSearchBounds { max_objects, max_hom }).map_err(lib)?;
            let fixtures = rep.hits.iter().map(laxcomma::cli::fixtures::monad_spec).collect();
            let fx = KzFixture::from_report(&rep, fixtures);
            if let Some(p) = write {
                std::fs::write(&p, fx.to_json()).map_err(|e| (2, format!("{}: {e}", p.display())))?;
            }
            let v = serde_json::to_value(&fx).expect("json");
            emit(j, &v, || {
                format!(
                    "{} categories, {} monads, {} candidates with a non-invertible mu, {} hits\n",
                    fx.categories,
                    fx.monads,
                    fx.stage1_candidates,
                    fx.fixtures.len()
                )
            });
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
