use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use regent_cli::commands::{self, AxiomArgs, CommandOutcome, Suite};
use regent_cli::examples::run_example;
use regent_cli::instance::Instance;
use regent_cli::query::{parse_query, run_query, BudgetSpec, Overrides, QueryFile, QuerySpec};
use regent_cli::{exit, CliResult};
use regent_core::sampling::DEFAULT_SEED;
use regent_core::Budget;

#[derive(Parser)]
#[command(
    name = "regent",
    version,
    about = "Regular entailment relations on preordered groups"
)]
struct Cli {
    /// Print machine-readable JSON instead of a summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct BudgetFlags {
    /// Largest chain depth per forcing level.
    #[arg(long)]
    budget_k: Option<usize>,
    /// Largest number of forcing elements.
    #[arg(long)]
    budget_n: Option<usize>,
    /// Extra forcing elements added to the default pool.
    #[arg(long, allow_negative_numbers = true)]
    pool: Vec<String>,
}

impl BudgetFlags {
    fn budget(&self) -> Budget {
        let d = Budget::default();
        Budget::new(
            self.budget_k.unwrap_or(d.k_max),
            self.budget_n.unwrap_or(d.n_max),
        )
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the scripted checks of exa1, exa2 or exa3.
    Example { name: String },
    /// Execute a query file (`-` reads stdin).
    Query {
        file: String,
        #[command(flatten)]
        budget: BudgetFlags,
        #[arg(long)]
        seed: Option<u64>,
        /// Write the certificate document here.
        #[arg(long)]
        cert_out: Option<PathBuf>,
    },
    /// Replay a certificate document (`-` reads stdin).
    Verify { file: String },
    /// Decide or semi-decide `A |- B`.
    Entails {
        /// exa1, exa2, exa3 or a JSON group descriptor.
        #[arg(long, short)]
        group: String,
        #[arg(long, default_value = "sm")]
        system: String,
        /// Elements of A, one per value.
        #[arg(long = "lhs", short = 'a', num_args = 1.., required = true, allow_negative_numbers = true)]
        lhs: Vec<String>,
        /// Elements of B, one per value.
        #[arg(long = "rhs", short = 'b', num_args = 1.., required = true, allow_negative_numbers = true)]
        rhs: Vec<String>,
        /// lcd, lorenzen, interval or raw.
        #[arg(long)]
        backend: Option<String>,
        #[command(flatten)]
        budget: BudgetFlags,
        #[arg(long)]
        cert_out: Option<PathBuf>,
    },
    /// Sample a family of laws.
    Axioms {
        #[arg(long, short)]
        group: String,
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value = "sm")]
        system: String,
        /// lcd, interval, lorenzen or raw.
        #[arg(long)]
        backend: Option<String>,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Coordinate range for samples on Z^d.
        #[arg(long, default_value_t = 30)]
        range: i64,
        /// Largest multiple tried for the forced relation in the lemma suite.
        #[arg(long, default_value_t = 8)]
        p_max: usize,
        #[command(flatten)]
        budget: BudgetFlags,
    },
    /// Evaluate an expression over phi of integers, e.g. `meet(1, 4) - 2`.
    Lgroup {
        #[arg(long, short, default_value = "exa3")]
        group: String,
        #[arg(long)]
        backend: Option<String>,
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Compare the value with this expression.
        #[arg(long, allow_hyphen_values = true)]
        leq: Option<String>,
        #[command(flatten)]
        budget: BudgetFlags,
    },
}

fn read_input(file: &str) -> CliResult<String> {
    if file == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(file)?)
    }
}

fn write_cert(path: &Option<PathBuf>, cert: &Option<Value>) -> CliResult<()> {
    if let (Some(p), Some(c)) = (path, cert) {
        std::fs::write(p, serde_json::to_string_pretty(c)? + "\n")?;
    }
    Ok(())
}

fn run_query_cmd(
    file: &QueryFile,
    over: &Overrides,
    cert_out: &Option<PathBuf>,
) -> CliResult<CommandOutcome> {
    let o = run_query(file, over)?;
    write_cert(cert_out, &o.certificate)?;
    Ok(CommandOutcome {
        exit: o.exit,
        report: o.report,
    })
}

fn overrides(b: &BudgetFlags, seed: Option<u64>) -> Overrides {
    Overrides {
        k_max: b.budget_k,
        n_max: b.budget_n,
        pool: b.pool.clone(),
        seed,
    }
}

fn dispatch(command: &Command) -> CliResult<CommandOutcome> {
    match command {
        Command::Example { name } => {
            let r = run_example(name)?;
            Ok(CommandOutcome {
                exit: if r.passed { exit::HOLDS } else { exit::REFUTED },
                report: serde_json::to_value(&r)?,
            })
        }
        Command::Query {
            file,
            budget,
            seed,
            cert_out,
        } => {
            let q = parse_query(&read_input(file)?)?;
            run_query_cmd(&q, &overrides(budget, *seed), cert_out)
        }
        Command::Verify { file } => commands::verify(&read_input(file)?),
        Command::Entails {
            group,
            system,
            lhs,
            rhs,
            backend,
            budget,
            cert_out,
        } => {
            let q = QueryFile {
                group: if group.trim_start().starts_with('{') {
                    serde_json::from_str(group)?
                } else {
                    json!(group)
                },
                system: system.clone(),
                query: QuerySpec::Entails {
                    a: Value::Array(lhs.iter().map(|s| json!(s)).collect()),
                    b: Value::Array(rhs.iter().map(|s| json!(s)).collect()),
                    backend: backend.clone(),
                },
                budget: BudgetSpec::default(),
                seed: None,
            };
            run_query_cmd(&q, &overrides(budget, None), cert_out)
        }
        Command::Axioms {
            group,
            suite,
            system,
            backend,
            samples,
            seed,
            range,
            p_max,
            budget,
        } => {
            let args = AxiomArgs {
                suite: *suite,
                system: system.clone(),
                backend: backend.clone(),
                samples: *samples,
                seed: *seed,
                range: *range,
                budget: budget.budget(),
                p_max: *p_max,
            };
            commands::axioms(&Instance::parse(group)?, &args)
        }
        Command::Lgroup {
            group,
            backend,
            expr,
            leq,
            budget,
        } => commands::lgroup(
            &Instance::parse(group)?,
            backend.as_deref(),
            budget.budget(),
            expr,
            leq.as_deref(),
        ),
    }
}

fn summary(command: &Command, o: &CommandOutcome) -> String {
    let r = &o.report;
    if let Some(e) = r.get("error") {
        return format!("error: {}", e.as_str().unwrap_or_default());
    }
    match command {
        Command::Example { .. } => {
            let mut out = String::new();
            for c in r["claims"].as_array().into_iter().flatten() {
                let mark = if c["passed"] == json!(true) {
                    "PASS"
                } else {
                    "FAIL"
                };
                out += &format!(
                    "[{mark}] {} {} ({})\n",
                    c["id"].as_str().unwrap_or(""),
                    c["description"].as_str().unwrap_or(""),
                    c["verdict"].as_str().unwrap_or("")
                );
                if c["passed"] != json!(true) {
                    out += &format!("       {}\n", c["detail"]);
                }
            }
            out.trim_end().to_string()
        }
        Command::Verify { .. } => match &r["rejection"] {
            Value::Null => format!(
                "valid {} certificate",
                r["certificate"].as_str().unwrap_or("")
            ),
            rej => format!(
                "invalid: {}: {}",
                rej["part"].as_str().unwrap_or(""),
                rej["reason"].as_str().unwrap_or("")
            ),
        },
        Command::Axioms { .. } => r["text"].as_str().unwrap_or("").trim_end().to_string(),
        Command::Lgroup { .. } => {
            let mut out = r["display"].as_str().unwrap_or("").to_string();
            if !r["pair"].is_null() {
                out += &format!("  = ({}, {})", r["pair"][0], r["pair"][1]);
            }
            if !r["leq"].is_null() {
                out += &format!(
                    "\n<= {}: {}",
                    r["other"]["display"].as_str().unwrap_or(""),
                    r["leq"].as_str().unwrap_or("")
                );
            }
            out
        }
        Command::Query { .. } | Command::Entails { .. } => {
            serde_json::to_string_pretty(r).unwrap_or_default()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = dispatch(&cli.command).unwrap_or_else(CommandOutcome::from);
    let text = if cli.json {
        serde_json::to_string_pretty(&outcome.report).unwrap_or_default()
    } else {
        summary(&cli.command, &outcome)
    };
    if outcome.exit == exit::USAGE && !cli.json {
        eprintln!("{text}");
    } else {
        // A closed pipe (`regent ... | head`) is not an error.
        let _ = writeln!(std::io::stdout(), "{text}");
    }
    ExitCode::from(outcome.exit as u8)
}
