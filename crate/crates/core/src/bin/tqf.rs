use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tqf::bell::{r_closed_form, SpinorPairIndex};
use tqf::cache::ThetaCache;
use tqf::congruence::{congruence_rep_count, to_shifted, CongruenceCondition, CongruenceLattices};
use tqf::enumerate::set_default_budget;
use tqf::suites::{find_suite, suites};
use tqf::watson::watson_chain;
use tqf::{rep_count, Error, IntMatrix, QuadForm};

const BUDGET_ENV: &str = "TQF_BUDGET";

/// Exact representation counts for positive-definite integral quadratic forms.
#[derive(Parser)]
#[command(name = "tqf", version)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct FormSpec {
    /// Diagonal entries, e.g. `1,1,2`
    #[arg(long)]
    diag: Option<String>,
    /// Full Gram matrix, rows separated by `;`, e.g. `2,1;1,2`
    #[arg(long)]
    gram: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Number of integer vectors x with Q(x) = k
    Count {
        #[command(flatten)]
        form: FormSpec,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    /// Representation counts for 0..=upper (cached)
    Theta {
        #[command(flatten)]
        form: FormSpec,
        #[arg(long)]
        upper: u64,
        /// Cache directory (overrides TQF_CACHE_DIR)
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Closed formula for r(k, L_i) next to a direct count
    Bell {
        #[arg(long)]
        i: u8,
        #[arg(long)]
        k: i64,
    },
    /// Iterate the lambda_p transformation
    Watson {
        #[command(flatten)]
        form: FormSpec,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 10)]
        steps: usize,
    },
    /// Count solutions of Q(x) = a with Bx = w (mod s), directly and via the shifted form
    Congruence {
        #[command(flatten)]
        form: FormSpec,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        /// Matrix B (default: identity)
        #[arg(long)]
        b: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long)]
        s: String,
    },
    /// Run a named verification suite
    Verify {
        #[arg(long)]
        suite: String,
        /// Range bound; the meaning depends on the suite (see `suites`)
        #[arg(long)]
        max: Option<u64>,
    },
    /// List the verification suites
    Suites,
}

/// Exit statuses.
mod code {
    pub const OK: u8 = 0;
    pub const COUNTEREXAMPLE: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const BUDGET: u8 = 3;
    pub const IO: u8 = 4;
}

fn status_for(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => code::BUDGET,
        Error::Io(_) => code::IO,
        _ => code::USAGE,
    }
}

fn parse_vec(text: &str) -> Result<Vec<i64>, Error> {
    text.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::InvalidArgument(format!("not an integer: {t:?}"))))
        .collect()
}

fn parse_matrix(text: &str) -> Result<IntMatrix, Error> {
    let rows: Vec<Vec<i64>> = text.split(';').map(parse_vec).collect::<Result<_, _>>()?;
    IntMatrix::from_rows(&rows)
}

impl FormSpec {
    fn parse(&self) -> Result<QuadForm, Error> {
        match (&self.diag, &self.gram) {
            (Some(d), _) => QuadForm::diagonal(&parse_vec(d)?),
            (None, Some(g)) => QuadForm::new(parse_matrix(g)?),
            (None, None) => Err(Error::InvalidArgument("one of --diag or --gram is required".into())),
        }
    }
}

fn gram_json(f: &QuadForm) -> Value {
    json!(f.gram().to_rows())
}

/// What a command produced: text for humans and a JSON document.
struct Output {
    text: String,
    json: Value,
    status: u8,
}

fn document(query: Value, result: Value, oracle: Value, matched: Value) -> Value {
    json!({ "query": query, "result": result, "oracle": oracle, "match": matched })
}

fn run(cli: &Cli) -> Result<Output, Error> {
    match &cli.command {
        Command::Count { form, k } => {
            let f = form.parse()?;
            let r = rep_count(&f, *k)?;
            Ok(Output {
                text: r.to_string(),
                json: document(json!({"command": "count", "gram": gram_json(&f), "k": k}), json!(r), Value::Null, Value::Null),
                status: code::OK,
            })
        }
        Command::Theta { form, upper, cache_dir } => {
            let f = form.parse()?;
            let cache = match cache_dir {
                Some(d) => ThetaCache::with_dir(d),
                None => ThetaCache::from_env(),
            };
            let series = cache.get_or_compute(&f, *upper)?;
            let counts: Vec<String> = series.counts().iter().map(u64::to_string).collect();
            Ok(Output {
                text: counts.join(" "),
                json: document(
                    json!({"command": "theta", "gram": gram_json(&f), "upper": upper}),
                    json!(series.counts()),
                    Value::Null,
                    Value::Null,
                ),
                status: code::OK,
            })
        }
        Command::Bell { i, k } => {
            let idx = SpinorPairIndex::new(*i)?;
            let formula = r_closed_form(idx, *k)?;
            let oracle = rep_count(&idx.lattice(), *k)?;
            let matched = formula == oracle;
            Ok(Output {
                text: format!("formula={formula} oracle={oracle} match={matched}"),
                json: document(json!({"command": "bell", "i": i, "k": k}), json!(formula), json!(oracle), json!(matched)),
                status: if matched { code::OK } else { code::COUNTEREXAMPLE },
            })
        }
        Command::Watson { form, p, steps } => {
            let f = form.parse()?;
            let chain = watson_chain(&f, *p, *steps)?;
            let fixed = chain.last().is_some_and(|s| tqf::is_isometric(&s.input, &s.output).ok().flatten().is_some());
            let mut lines = vec![format!("0: {f}")];
            let mut steps_json = Vec::new();
            for (n, step) in chain.iter().enumerate() {
                lines.push(format!("{}: {} (divisor {})", n + 1, step.output, step.scale_divisor));
                steps_json.push(json!({"gram": gram_json(&step.output), "scale_divisor": step.scale_divisor}));
            }
            lines.push(if fixed {
                format!("fixed point after {} steps", chain.len())
            } else {
                format!("no fixed point within {} steps", chain.len())
            });
            Ok(Output {
                text: lines.join("\n"),
                json: document(
                    json!({"command": "watson", "gram": gram_json(&f), "p": p, "steps": steps}),
                    json!({"chain": steps_json, "fixed_point": fixed}),
                    Value::Null,
                    Value::Null,
                ),
                status: code::OK,
            })
        }
        Command::Congruence { form, a, b, w, s } => {
            let f = form.parse()?;
            let w = parse_vec(w)?;
            let b = match b {
                Some(text) => parse_matrix(text)?,
                None => IntMatrix::identity(w.len()),
            };
            let cond = CongruenceCondition::new(b, w, parse_vec(s)?)?;
            let direct = congruence_rep_count(&f, *a, &cond)?;
            let (shifted, d) = match to_shifted(&f, *a, &cond) {
                Ok(problem) => (tqf::shifted_rep_count(&problem.target, problem.value)?, Some(CongruenceLattices::new(&cond)?.index_d)),
                Err(Error::Unsolvable) => (0, None),
                Err(e) => return Err(e),
            };
            let matched = direct == shifted;
            Ok(Output {
                text: format!("direct={direct} shifted={shifted} d={} match={matched}", d.map_or("none".into(), |d| d.to_string())),
                json: document(
                    json!({"command": "congruence", "gram": gram_json(&f), "a": a, "b": cond.b().to_rows(), "w": cond.w(), "s": cond.s()}),
                    json!({"count": direct, "index_d": d}),
                    json!(shifted),
                    json!(matched),
                ),
                status: if matched { code::OK } else { code::COUNTEREXAMPLE },
            })
        }
        Command::Verify { suite, max } => {
            let Some(s) = find_suite(suite) else {
                let names: Vec<&str> = suites().iter().map(|s| s.name).collect();
                return Err(Error::InvalidArgument(format!("unknown suite {suite:?}; known: {}", names.join(", "))));
            };
            let max = max.unwrap_or(s.default_max);
            let report = s.run(max)?;
            let text = match &report.failure {
                None => "PASS".to_string(),
                Some(why) => format!("FAIL: {why}"),
            };
            Ok(Output {
                text,
                json: document(
                    json!({"command": "verify", "suite": s.name, "max": max}),
                    json!({"passed": report.passed(), "checks": report.checked, "failure": report.failure}),
                    Value::Null,
                    json!(report.passed()),
                ),
                status: if report.passed() { code::OK } else { code::COUNTEREXAMPLE },
            })
        }
        Command::Suites => {
            let lines: Vec<String> =
                suites().iter().map(|s| format!("{:<18} {} [max: {}, default {}]", s.name, s.summary, s.max_meaning, s.default_max)).collect();
            let list: Vec<Value> = suites()
                .iter()
                .map(|s| json!({"name": s.name, "summary": s.summary, "max": s.max_meaning, "default_max": s.default_max}))
                .collect();
            Ok(Output {
                text: lines.join("\n"),
                json: document(json!({"command": "suites"}), json!(list), Value::Null, Value::Null),
                status: code::OK,
            })
        }
    }
}

fn apply_budget_env() -> Result<(), Error> {
    if let Ok(text) = std::env::var(BUDGET_ENV) {
        let nodes = text
            .trim()
            .parse::<u64>()
            .map_err(|_| Error::InvalidArgument(format!("{BUDGET_ENV} must be a non-negative integer, got {text:?}")))?;
        set_default_budget(nodes);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { code::USAGE } else { code::OK });
        }
    };
    let result = apply_budget_env().and_then(|()| run(&cli));
    match result {
        Ok(out) => {
            match cli.format {
                Format::Text => println!("{}", out.text),
                Format::Json => println!("{}", out.json),
            }
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("tqf: {e}");
            ExitCode::from(status_for(&e))
        }
    }
}
