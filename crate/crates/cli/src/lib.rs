//! `descent-forge`: minimal-descent representatives, realization of descent
//! values inside a conjugacy class, class statistics and exhaustive checks.
//!
//! [`run`] is the whole program; `main` only wires it to the process.

mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use descent_core::oracle::{self, cache, Check, ClassDistribution, OracleConfig, VerificationReport};
use descent_core::{eulerian_row, lyndon_count, min_des_representative, realize, Error, Partition, SearchBudget};
use serde_json::json;

use render::{grid, key_values, Output};

pub const CACHE_ENV: &str = "DESCENT_FORGE_CACHE";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "descent-forge", version, about = "Descent statistics on conjugacy classes of S_n")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Directory for cached class distributions (overridden by DESCENT_FORGE_CACHE).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Member of the class with exactly one descent.
    MinRep {
        /// Cycle type, e.g. 4,4,3.
        #[arg(long = "type")]
        lambda: Partition,
    },
    /// Member of the class with a given number of descents.
    Realize {
        #[arg(long = "type")]
        lambda: Partition,
        #[arg(long)]
        target: usize,
        /// Print the conjugation path that produced the result.
        #[arg(long)]
        trace: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest degree for which the class maximum is found by enumeration.
        #[arg(long, default_value_t = 9)]
        exhaustive_limit: usize,
    },
    /// Descent distribution of one class, or of every class of S_n.
    ClassStats {
        #[arg(long = "type", conflicts_with_all = ["n", "all"], required_unless_present = "n")]
        lambda: Option<Partition>,
        #[arg(long, requires = "all", value_parser = positive)]
        n: Option<usize>,
        #[arg(long, requires = "n")]
        all: bool,
    },
    /// Run exhaustive checks; exits 1 if any fails.
    Verify {
        #[arg(long, value_parser = positive)]
        n: usize,
        /// Comma-separated check names, or "all".
        #[arg(long, default_value = "all", value_parser = parse_checks)]
        checks: CheckList,
        /// Worker threads (default: available parallelism).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Eulerian numbers A(n,0..n-1).
    Eulerian {
        #[arg(long, value_parser = positive)]
        n: usize,
    },
    /// Number of binary Lyndon words of length n.
    Lyndon {
        #[arg(long, value_parser = positive)]
        n: usize,
        /// Compare with the number of n-cycles having one descent (2 <= n <= 9).
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Debug, Clone)]
struct CheckList(Vec<Check>);

fn parse_checks(s: &str) -> Result<CheckList, String> {
    Check::parse_list(s).map(CheckList).map_err(|e| e.to_string())
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    messages: Vec<String>,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure { code: 2, messages: vec![msg.into()] }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotAttained { .. } | Error::NotReached { .. } | Error::IdentityOnly => 1,
            Error::BudgetExceeded { .. }
            | Error::InvalidPartition(_)
            | Error::Parse(_)
            | Error::UnknownCheck(_)
            | Error::Empty
            | Error::ValueOutOfRange { .. }
            | Error::RepeatedValue { .. }
            | Error::DegreeMismatch { .. }
            | Error::IndexOutOfRange { .. } => 2,
            _ => 1,
        };
        Failure { code, messages: vec![e.to_string()] }
    }
}

/// Runs the program on `argv` (program name first), reading the cache
/// directory override from the environment.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_env(argv, std::env::var_os(CACHE_ENV), out, err)
}

/// Like [`run`], with the cache override passed explicitly.
pub fn run_with_env<I, T>(argv: I, cache_env: Option<OsString>, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => return report_clap_error(e, out, err),
    };
    let cache_dir = cache_env.filter(|v| !v.is_empty()).map(PathBuf::from).or(cli.cache_dir.clone());
    let (output, failure) = match dispatch(&cli.command, cache_dir) {
        Ok(pair) => pair,
        Err(f) => (None, Some(f)),
    };
    if let Some(output) = output {
        if output.write(cli.format, out).is_err() {
            let _ = writeln!(err, "error: could not write output");
            return 1;
        }
    }
    match failure {
        None => 0,
        Some(f) => {
            for m in &f.messages {
                let _ = writeln!(err, "error: {m}");
            }
            f.code
        }
    }
}

fn report_clap_error(e: clap::Error, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    use clap::error::ErrorKind;
    match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
            let _ = write!(out, "{e}");
            0
        }
        ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand | ErrorKind::MissingSubcommand => {
            let _ = writeln!(err, "error: a subcommand is required");
            2
        }
        _ => {
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("invalid arguments");
            let line = line.strip_prefix("error: ").unwrap_or(line);
            let _ = writeln!(err, "error: {line}");
            2
        }
    }
}

/// Output to print, plus a failure to report after printing it.
type Dispatched = (Option<Output>, Option<Failure>);

fn dispatch(cmd: &Command, cache_dir: Option<PathBuf>) -> Result<Dispatched, Failure> {
    match cmd {
        Command::MinRep { lambda } => Ok((Some(min_rep(lambda)), None)),
        Command::Realize { lambda, target, trace, seed, exhaustive_limit } => {
            let budget = SearchBudget { exhaustive_limit: *exhaustive_limit, seed: *seed, ..SearchBudget::default() };
            Ok((Some(realize_cmd(lambda, *target, *trace, &budget)?), None))
        }
        Command::ClassStats { lambda, n, .. } => {
            let cfg = OracleConfig::default();
            let out = match (lambda, n) {
                (Some(lambda), _) => class_stats_one(&oracle::class_distribution(lambda, &cfg)?),
                (None, Some(n)) => {
                    let classes = match &cache_dir {
                        Some(dir) => cache::load_or_compute(dir, *n, &cfg)?,
                        None => oracle::enumerate_all_classes(*n, &cfg)?,
                    };
                    class_stats_all(*n, &classes)
                }
                (None, None) => return Err(Failure::usage("class-stats needs --type or --n with --all")),
            };
            Ok((Some(out), None))
        }
        Command::Verify { n, checks, threads } => verify(*n, &checks.0, *threads),
        Command::Eulerian { n } => Ok((Some(eulerian(*n)), None)),
        Command::Lyndon { n, verify } => lyndon(*n, *verify),
    }
}

fn min_rep(lambda: &Partition) -> Output {
    let tau = min_des_representative(lambda);
    let fields = [
        ("type", lambda.to_string()),
        ("permutation", tau.to_string()),
        ("cycles", tau.to_cycle_string()),
        ("des", tau.des().to_string()),
    ];
    Output {
        json: json!({
            "type": lambda,
            "permutation": tau,
            "cycles": tau.to_cycle_string(),
            "des": tau.des(),
        }),
        csv_header: fields.iter().map(|f| f.0.to_string()).collect(),
        csv_rows: vec![fields.iter().map(|f| f.1.clone()).collect()],
        text: key_values(&fields),
    }
}

fn realize_cmd(lambda: &Partition, target: usize, trace: bool, budget: &SearchBudget) -> Result<Output, Failure> {
    let r = realize(lambda, target, budget)?;
    let p = &r.permutation;
    let fields = [
        ("type", lambda.to_string()),
        ("target", target.to_string()),
        ("permutation", p.to_string()),
        ("cycles", p.to_cycle_string()),
        ("des", p.des().to_string()),
    ];
    let mut json = json!({
        "type": lambda,
        "target": target,
        "permutation": p,
        "cycles": p.to_cycle_string(),
        "des": p.des(),
    });
    let mut text = key_values(&fields);
    let (csv_header, csv_rows) = if trace {
        json["trace"] = serde_json::to_value(&r.trace).expect("trace serializes");
        let rows: Vec<Vec<String>> =
            r.trace.steps.iter().map(|s| vec![s.perm.to_string(), s.des.to_string(), s.step.to_string()]).collect();
        text.push('\n');
        text.push_str(&grid(&["perm", "des", "step"], &rows));
        (vec!["perm".into(), "des".into(), "step".into()], rows)
    } else {
        (fields.iter().map(|f| f.0.to_string()).collect(), vec![fields.iter().map(|f| f.1.clone()).collect()])
    };
    Ok(Output { json, csv_header, csv_rows, text })
}

const CLASS_CSV_HEADER: [&str; 7] = ["lambda", "des", "count", "class_size", "min_des", "max_des", "contiguous"];

fn class_csv_rows(d: &ClassDistribution) -> Vec<Vec<String>> {
    d.counts
        .iter()
        .map(|(des, count)| {
            vec![
                d.lambda.to_string(),
                des.to_string(),
                count.to_string(),
                d.class_size.to_string(),
                d.min_des.to_string(),
                d.max_des.to_string(),
                d.contiguous.to_string(),
            ]
        })
        .collect()
}

fn class_text_row(d: &ClassDistribution) -> Vec<String> {
    let dist = d.counts.iter().map(|(k, c)| format!("{k}:{c}")).collect::<Vec<_>>().join(" ");
    vec![
        d.lambda.to_string(),
        d.class_size.to_string(),
        d.min_des.to_string(),
        d.max_des.to_string(),
        d.contiguous.to_string(),
        dist,
    ]
}

const CLASS_TEXT_HEADER: [&str; 6] = ["type", "size", "min", "max", "contiguous", "des:count"];

fn class_stats_one(d: &ClassDistribution) -> Output {
    Output {
        json: serde_json::to_value(d).expect("distribution serializes"),
        csv_header: CLASS_CSV_HEADER.iter().map(|s| s.to_string()).collect(),
        csv_rows: class_csv_rows(d),
        text: grid(&CLASS_TEXT_HEADER, &[class_text_row(d)]),
    }
}

fn class_stats_all(n: usize, classes: &[ClassDistribution]) -> Output {
    Output {
        json: json!({ "n": n, "classes": classes }),
        csv_header: CLASS_CSV_HEADER.iter().map(|s| s.to_string()).collect(),
        csv_rows: classes.iter().flat_map(class_csv_rows).collect(),
        text: grid(&CLASS_TEXT_HEADER, &classes.iter().map(class_text_row).collect::<Vec<_>>()),
    }
}

fn counterexample_summary(r: &VerificationReport) -> String {
    let Some(c) = &r.counterexample else { return String::new() };
    let perms = c.permutations.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ");
    let mut s = format!("{}: {perms}", c.message);
    if let Some(i) = c.index {
        s.push_str(&format!(" i={i}"));
    }
    if let Some(k) = c.k {
        s.push_str(&format!(" k={k}"));
    }
    if let Some(l) = &c.lambda {
        s.push_str(&format!(" type={l}"));
    }
    s
}

fn verify(n: usize, checks: &[Check], threads: Option<usize>) -> Result<Dispatched, Failure> {
    let cfg = OracleConfig::default();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| Failure { code: 1, messages: vec![e.to_string()] })?;
    let reports = pool.install(|| oracle::run_checks(n, checks, &cfg))?;

    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            let counterexample = r
                .counterexample
                .as_ref()
                .map(|c| serde_json::to_string(c).expect("counterexample serializes"))
                .unwrap_or_default();
            vec![
                r.n.to_string(),
                r.check_name.clone(),
                r.passed.to_string(),
                r.cases_checked.to_string(),
                counterexample,
            ]
        })
        .collect();
    let text_rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            let status = if r.passed { "pass" } else { "FAIL" };
            vec![r.check_name.clone(), status.to_string(), r.cases_checked.to_string(), counterexample_summary(r)]
        })
        .collect();
    let output = Output {
        json: serde_json::to_value(&reports).expect("reports serialize"),
        csv_header: ["n", "check_name", "passed", "cases_checked", "counterexample"].map(String::from).to_vec(),
        csv_rows: rows,
        text: grid(&["check", "result", "cases", "counterexample"], &text_rows),
    };
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed)
        .map(|r| format!("check {} failed at n={}: {}", r.check_name, r.n, counterexample_summary(r)))
        .collect();
    let failure = (!failed.is_empty()).then_some(Failure { code: 1, messages: failed });
    Ok((Some(output), failure))
}

fn eulerian(n: usize) -> Output {
    let row = eulerian_row(n);
    let values: Vec<String> = row.coefficients.iter().map(|c| c.to_string()).collect();
    Output {
        json: serde_json::to_value(&row).expect("row serializes"),
        csv_header: ["n", "k", "coefficient"].map(String::from).to_vec(),
        csv_rows: values.iter().enumerate().map(|(k, v)| vec![n.to_string(), k.to_string(), v.clone()]).collect(),
        text: format!("{}\n", values.join(" ")),
    }
}

fn lyndon(n: usize, verify: bool) -> Result<Dispatched, Failure> {
    let count = lyndon_count(n).to_string();
    if !verify {
        return Ok((
            Some(Output {
                json: json!({ "n": n, "lyndon_count": count }),
                csv_header: vec!["n".into(), "lyndon_count".into()],
                csv_rows: vec![vec![n.to_string(), count.clone()]],
                text: format!("{count}\n"),
            }),
            None,
        ));
    }
    if !(2..=9).contains(&n) {
        return Err(Failure::usage(format!("--verify needs 2 <= n <= 9, got {n}")));
    }
    let class = oracle::full_cycle_des_one(n, &OracleConfig::default())?.to_string();
    let matches = class == count;
    let fields = [
        ("n", n.to_string()),
        ("lyndon_count", count.clone()),
        ("class_count", class.clone()),
        ("matches", matches.to_string()),
    ];
    let output = Output {
        json: json!({ "n": n, "lyndon_count": count, "class_count": class, "matches": matches }),
        csv_header: fields.iter().map(|f| f.0.to_string()).collect(),
        csv_rows: vec![fields.iter().map(|f| f.1.clone()).collect()],
        text: key_values(&fields),
    };
    let failure = (!matches).then(|| Failure {
        code: 1,
        messages: vec![format!("lyndon count {count} differs from class count {class} at n={n}")],
    });
    Ok((Some(output), failure))
}
