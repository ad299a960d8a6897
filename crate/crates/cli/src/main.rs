//! `umap`: construct Liouville-class numbers, map them through rational
//! functions over number fields and check the resulting inequalities.
//!
//! Exit status: 0 when every certified check passes, 1 on a certified
//! failure, 2 on a usage error.

mod args;
mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use commands::{ChainOpts, ClassifyOpts, CliError, LemmaOpts, Outcome};
use umap_core::exact::rational::Rational;

#[derive(Parser)]
#[command(name = "umap", version, about = "Exact checks for Liouville-class numbers under rational maps")]
struct Cli {
    /// Emit the report as JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Maximum refinement rounds per certified enclosure.
    #[arg(long, global = true, env = "UMAP_REFINE_BUDGET", default_value_t = 16)]
    refine_budget: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct NumberArgs {
    /// `series:BASE:SCHEDULE`, `cf:a0,a1,..`, `strong:k[:COUNT]` or JSON.
    #[arg(long, default_value = "series:10:factorial")]
    number: String,
    /// Indices: `N`, `A..B` or `A,B,C`.
    #[arg(long, value_parser = args::parse_k_list)]
    k: Option<args::KList>,
}

#[derive(Args)]
struct MapArgs {
    /// `Q`, `root:M:P` or `[c0,..,cm]@[lo,hi]`.
    #[arg(long, default_value = "[-2,0,1]@[1,2]")]
    field: String,
    /// Expression in `x` and `theta`, or `{"num": .., "den": ..}` JSON.
    #[arg(long, default_value = "theta*x")]
    map: String,
    /// `cor2:M:P` or `cor3:M:P`; overrides --number, --field and --map.
    #[arg(long)]
    preset: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Convergents, gaps and measured exponents of a number.
    Construct {
        #[command(flatten)]
        num: NumberArgs,
    },
    /// Continued fraction expansion with convergent numerators and denominators.
    Cf {
        #[command(flatten)]
        num: NumberArgs,
        #[arg(long, default_value_t = 8)]
        count: usize,
    },
    /// Growth-class checks on the witness of a number.
    Classify {
        #[command(flatten)]
        num: NumberArgs,
        /// `l` (growth class with C and eps), `strong` or `liouville`.
        #[arg(long, default_value = "l")]
        class: String,
        #[arg(long = "C", value_parser = args::parse_rational, default_value = "1.1")]
        c: Rational,
        #[arg(long, value_parser = args::parse_rational, default_value = "0")]
        eps: Rational,
        /// Exponent for the strong class.
        #[arg(long, default_value_t = 2)]
        n: u32,
        /// First index checked by the strong class.
        #[arg(long, default_value_t = 1)]
        start: usize,
        /// Exponent threshold for the liouville class.
        #[arg(long, value_parser = args::parse_rational, default_value = "2")]
        threshold: Rational,
    },
    /// Evaluate a map at rationals and optionally scan for degree drops.
    MapEval {
        #[command(flatten)]
        map: MapArgs,
        /// Comma-separated rationals.
        #[arg(long, value_delimiter = ',', value_parser = args::parse_rational, default_value = "11/100")]
        alpha: Vec<Rational>,
        /// Scan all rationals up to this height.
        #[arg(long)]
        scan: Option<u64>,
    },
    /// Check the height and approximation chain along the approximants.
    VerifyTheorem {
        #[command(flatten)]
        num: NumberArgs,
        #[command(flatten)]
        map: MapArgs,
        /// Growth constant; measured from the witness when omitted.
        #[arg(long = "C", value_parser = args::parse_rational)]
        c: Option<Rational>,
    },
    /// Separation audit of F(xi) against algebraic numbers of degree n.
    AuditDegree {
        #[command(flatten)]
        num: NumberArgs,
        #[command(flatten)]
        map: MapArgs,
        #[arg(long = "C", value_parser = args::parse_rational)]
        c: Option<Rational>,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        height: u64,
    },
    /// Exhaustive or randomized checks of the separation and height lemmas.
    CheckLemmas {
        #[arg(long)]
        lemma: u32,
        #[arg(long, default_value_t = 2)]
        deg: usize,
        #[arg(long, default_value_t = 5)]
        height: u64,
        #[arg(long, default_value = "[-2,0,1]@[1,2]")]
        field: String,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn resolve(num: &NumberArgs, map: &MapArgs) -> Result<(String, String, String), CliError> {
    match &map.preset {
        Some(p) => {
            let p = args::parse_preset(p).map_err(CliError::Usage)?;
            Ok((p.number, p.field, p.map))
        }
        None => Ok((num.number.clone(), map.field.clone(), map.map.clone())),
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let budget = cli.refine_budget.max(1);
    match &cli.command {
        Command::Construct { num } => commands::construct(&num.number, num.k.as_ref().map(|k| k.0.as_slice()).unwrap_or(&[1, 2, 3, 4, 5])),
        Command::Cf { num, count } => commands::cf(&num.number, *count, budget),
        Command::Classify { num, class, c, eps, n, start, threshold } => commands::classify(&ClassifyOpts {
            number: &num.number,
            ks: num.k.as_ref().map(|k| k.0.as_slice()).unwrap_or(&[1, 2, 3, 4, 5, 6]),
            class,
            c,
            eps,
            n: *n,
            start: *start,
            threshold,
        }),
        Command::MapEval { map, alpha, scan } => {
            let (field, expr) = match &map.preset {
                Some(p) => {
                    let p = args::parse_preset(p).map_err(CliError::Usage)?;
                    (p.field, p.map)
                }
                None => (map.field.clone(), map.map.clone()),
            };
            commands::map_eval(&field, &expr, alpha, *scan)
        }
        Command::VerifyTheorem { num, map, c } => {
            let (number, field, expr) = resolve(num, map)?;
            commands::verify_theorem(&ChainOpts {
                number: &number,
                field: &field,
                map: &expr,
                ks: num.k.as_ref().map(|k| k.0.as_slice()).unwrap_or(&[2, 3, 4, 5, 6]),
                c: c.as_ref(),
                budget,
            })
        }
        Command::AuditDegree { num, map, c, n, height } => {
            let (number, field, expr) = resolve(num, map)?;
            let opts = ChainOpts {
                number: &number,
                field: &field,
                map: &expr,
                ks: num.k.as_ref().map(|k| k.0.as_slice()).unwrap_or(&[2, 3, 4, 5, 6]),
                c: c.as_ref(),
                budget,
            };
            commands::audit_degree(&opts, *n, *height)
        }
        Command::CheckLemmas { lemma, deg, height, field, count, seed } => commands::check_lemmas(&LemmaOpts {
            lemma: *lemma,
            deg: *deg,
            height: *height,
            field,
            count: *count,
            seed: *seed,
        }),
    }
}

/// Plain rendering: one `key: value` line per field, records one per line.
fn render_table(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                match x {
                    Value::Object(_) => render_table(x, &key, out),
                    Value::Array(items) if items.iter().any(Value::is_object) => {
                        for (i, item) in items.iter().enumerate() {
                            out.push_str(&format!("{key}[{i}]: {item}\n"));
                        }
                    }
                    _ => out.push_str(&format!("{key}: {}\n", scalar(x))),
                }
            }
        }
        _ => out.push_str(&format!("{prefix}: {}\n", scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&outcome.report).expect("serializable report"));
            } else {
                let mut s = String::new();
                render_table(&outcome.report, "", &mut s);
                print!("{s}");
                println!("result: {}", if outcome.passed { "pass" } else { "FAIL" });
            }
            ExitCode::from(if outcome.passed { 0 } else { 1 })
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("failed: {msg}");
            ExitCode::from(1)
        }
    }
}
