//! Command-line front end: parse complexes, run the analysis and oracles,
//! emit machine-readable reports with enough witness data to re-verify every
//! claim offline.

use std::fs;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{self, BallReport, Verdict};
use crate::complex::Complex;
use crate::corpus;
use crate::oracle::{
    self, ConstructionTree, Mode, OracleError, SearchConfig, ShellingCertificate,
};
use crate::parse::{self, InputFormat};
use crate::validation::{self, ValidationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CLAIM_FAILED: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_NONCONSTRUCTIBLE: i32 = 10;
pub const EXIT_PROVEN_ABSENT: i32 = 11;
pub const EXIT_BUDGET: i32 = 12;

const ENV_BUDGET_SECS: &str = "BALLCHECK_BUDGET_SECS";
const ENV_FACET_CAP: &str = "BALLCHECK_FACET_CAP";

#[derive(Parser)]
#[command(
    name = "ballcheck",
    about = "Spanning-edge analysis and exact shellability/constructibility oracles for simplicial 3-balls"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the nonconstructibility analysis on a 3-ball.
    ///
    /// Exit code 0 means the sufficient condition did not fire (Unknown),
    /// 10 means Nonconstructible, 2 means the input failed validation.
    Analyze(InputArgs),
    /// Search for a shelling order or construction tree.
    ///
    /// Exit code 0: certificate found and replay-verified; 11: exhaustive
    /// search completed with no certificate; 12: time or facet budget hit.
    Oracle(OracleArgs),
    /// Check a complex against a claimed category.
    Validate(ValidateArgs),
    /// List or export the built-in instances.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputArg {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Shellable,
    Constructible,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Ball,
    Literal,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClaimArg {
    Ball3,
    Ball2,
    Sphere2,
}

#[derive(Args)]
struct InputArgs {
    /// `corpus:NAME`, `random:3ball:N`, `random:2ball:N`, or a file path.
    input: String,
    /// Input format for file paths (default: by extension, text otherwise).
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Report format.
    #[arg(long, value_enum, default_value = "json")]
    output: OutputArg,
    /// Seed for `random:` inputs.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum)]
    method: MethodArg,
    /// Divide criterion for the constructibility recursion.
    #[arg(long, value_enum, default_value = "ball")]
    mode: ModeArg,
    /// Wall-clock budget in seconds (env BALLCHECK_BUDGET_SECS, default 120).
    #[arg(long)]
    budget_secs: Option<u64>,
    /// Facet cap for the exhaustive constructibility branch
    /// (env BALLCHECK_FACET_CAP, default 14).
    #[arg(long)]
    facet_cap: Option<usize>,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum)]
    claim: ClaimArg,
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Print the available instance names.
    List,
    /// Write an instance to stdout.
    Export {
        name: String,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
}

pub fn run() -> i32 {
    run_cli(Cli::parse())
}

pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_cli(Cli::parse_from(args))
}

fn run_cli(cli: Cli) -> i32 {
    match cli.command {
        Command::Analyze(args) => cmd_analyze(&args),
        Command::Oracle(args) => cmd_oracle(&args),
        Command::Validate(args) => cmd_validate(&args),
        Command::Corpus { action } => cmd_corpus(&action),
    }
}

fn load_complex(args: &InputArgs) -> Result<(Option<String>, Complex), String> {
    if let Some(name) = args.input.strip_prefix("corpus:") {
        let inst = corpus::by_name(name)
            .ok_or_else(|| format!("unknown corpus instance `{name}`"))?;
        return Ok((Some(inst.name), inst.complex));
    }
    if let Some(spec) = args.input.strip_prefix("random:") {
        let (kind, count) = spec
            .split_once(':')
            .ok_or_else(|| format!("bad random spec `{spec}`; use random:3ball:N"))?;
        let n: usize = count
            .parse()
            .map_err(|_| format!("bad facet count `{count}`"))?;
        let complex = match kind {
            "3ball" => corpus::random_shellable_ball(args.seed, n),
            "2ball" => corpus::random_2ball(args.seed, n),
            other => return Err(format!("unknown random kind `{other}`")),
        }
        .map_err(|e| e.to_string())?;
        return Ok((Some(format!("random:{kind}:{n}:seed{}", args.seed)), complex));
    }
    let source = fs::read_to_string(&args.input)
        .map_err(|e| format!("cannot read `{}`: {e}", args.input))?;
    let format = match args.format {
        Some(FormatArg::Text) => InputFormat::Text,
        Some(FormatArg::Json) => InputFormat::Json,
        None if args.input.ends_with(".json") => InputFormat::Json,
        None => InputFormat::Text,
    };
    parse::parse_complex(&source, format).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct AnalyzeReport<'a> {
    name: Option<&'a str>,
    #[serde(flatten)]
    report: &'a BallReport,
}

fn cmd_analyze(args: &InputArgs) -> i32 {
    let (name, complex) = match load_complex(args) {
        Ok(x) => x,
        Err(e) => return input_error(&e),
    };
    let report = analysis::theorem_decide(&complex);
    match args.output {
        OutputArg::Json => print_json(&AnalyzeReport {
            name: name.as_deref(),
            report: &report,
        }),
        OutputArg::Text => print_analyze_text(name.as_deref(), &report),
    }
    match report.verdict {
        Verdict::Unknown => EXIT_OK,
        Verdict::Nonconstructible => EXIT_NONCONSTRUCTIBLE,
        Verdict::InvalidInput => EXIT_INVALID_INPUT,
    }
}

fn print_analyze_text(name: Option<&str>, report: &BallReport) {
    if let Some(name) = name {
        println!("instance: {name}");
    }
    println!("verdict: {:?}", report.verdict);
    if report.verdict == Verdict::InvalidInput {
        for f in &report.validation.failures {
            println!("  validation failure [{}]: {}", f.check, f.detail);
        }
        return;
    }
    println!("reduced: {}", report.reduced);
    for t in &report.reduced_violations {
        println!("  interior 2-face with multiple boundary edges: {t}");
    }
    println!("interior graph components: {}", report.interior.components.len());
    for (i, comp) in report.interior.components.iter().enumerate() {
        let vs: Vec<String> = comp.vertices().iter().map(|v| v.to_string()).collect();
        println!("  component {i}: {{{}}} with {} edges", vs.join(","), comp.edges().len());
    }
    println!("spanning edges: {}", report.spanning.len());
    for info in &report.spanning {
        match &info.witness {
            None => println!("  {} strict", info.edge),
            Some(w) => println!(
                "  {} nonstrict (interior component {}, boundary piece {})",
                info.edge, w.interior_component, w.boundary_piece
            ),
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "kebab-case")]
enum OracleOutcome {
    Found,
    Absent,
    Timeout,
    BudgetExceeded,
}

#[derive(Serialize)]
struct OracleReport<'a> {
    name: Option<&'a str>,
    method: &'a str,
    mode: Mode,
    outcome: OracleOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    shelling: Option<&'a ShellingCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    construction: Option<&'a ConstructionTree>,
    verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

fn cmd_oracle(args: &OracleArgs) -> i32 {
    let (name, complex) = match load_complex(&args.input) {
        Ok(x) => x,
        Err(e) => return input_error(&e),
    };
    let budget_secs = args
        .budget_secs
        .or_else(|| env_parse(ENV_BUDGET_SECS))
        .unwrap_or(120);
    let facet_cap = args
        .facet_cap
        .or_else(|| env_parse(ENV_FACET_CAP))
        .unwrap_or(14);
    let cfg = SearchConfig {
        mode: match args.mode {
            ModeArg::Ball => Mode::Ball,
            ModeArg::Literal => Mode::Literal,
        },
        budget: Duration::from_secs(budget_secs),
        facet_cap,
    };
    let (method, result) = match args.method {
        MethodArg::Shellable => (
            "shellable",
            oracle::is_shellable(&complex, cfg.budget).map(|found| {
                found.map(|cert| {
                    let verified = oracle::verify_shelling(&complex, &cert) == Ok(true);
                    (Some(cert), None, verified)
                })
            }),
        ),
        MethodArg::Constructible => (
            "constructible",
            oracle::is_constructible(&complex, &cfg).map(|found| {
                found.map(|tree| {
                    let verified =
                        oracle::verify_construction(&complex, &tree, &cfg) == Ok(true);
                    (None, Some(tree), verified)
                })
            }),
        ),
    };
    let (outcome, shelling, construction, verified, detail, code) = match result {
        Ok(Some((cert, tree, verified))) => {
            if !verified {
                return input_error("internal error: certificate failed replay verification");
            }
            (OracleOutcome::Found, cert, tree, true, None, EXIT_OK)
        }
        Ok(None) => (OracleOutcome::Absent, None, None, false, None, EXIT_PROVEN_ABSENT),
        Err(e @ OracleError::Timeout(_)) => (
            OracleOutcome::Timeout,
            None,
            None,
            false,
            Some(e.to_string()),
            EXIT_BUDGET,
        ),
        Err(e @ OracleError::BudgetExceeded { .. }) => (
            OracleOutcome::BudgetExceeded,
            None,
            None,
            false,
            Some(e.to_string()),
            EXIT_BUDGET,
        ),
    };
    match args.input.output {
        OutputArg::Json => print_json(&OracleReport {
            name: name.as_deref(),
            method,
            mode: cfg.mode,
            outcome,
            shelling: shelling.as_ref(),
            construction: construction.as_ref(),
            verified,
            detail,
        }),
        OutputArg::Text => {
            if let Some(name) = &name {
                println!("instance: {name}");
            }
            match (&shelling, &construction) {
                (Some(cert), _) => {
                    println!("{method}: found, verified ({} facets)", cert.order.len());
                    for f in &cert.order {
                        println!("  {f}");
                    }
                }
                (_, Some(_)) => println!("{method}: found, verified"),
                _ => println!(
                    "{method}: {}",
                    detail.unwrap_or_else(|| "no certificate exists".to_string())
                ),
            }
        }
    }
    code
}

#[derive(Serialize)]
struct ValidateOutput<'a> {
    name: Option<&'a str>,
    #[serde(flatten)]
    report: &'a ValidationReport,
}

fn cmd_validate(args: &ValidateArgs) -> i32 {
    let (name, complex) = match load_complex(&args.input) {
        Ok(x) => x,
        Err(e) => return input_error(&e),
    };
    let report = match args.claim {
        ClaimArg::Ball3 => validation::validate_3ball(&complex),
        ClaimArg::Ball2 => validation::is_2ball(&complex),
        ClaimArg::Sphere2 => validation::is_2sphere(&complex),
    };
    match args.input.output {
        OutputArg::Json => print_json(&ValidateOutput {
            name: name.as_deref(),
            report: &report,
        }),
        OutputArg::Text => {
            println!(
                "claim {:?}: {}",
                report.category_claimed,
                if report.passed { "pass" } else { "fail" }
            );
            for f in &report.failures {
                println!("  [{}] {}", f.check, f.detail);
            }
        }
    }
    if report.passed {
        EXIT_OK
    } else {
        EXIT_CLAIM_FAILED
    }
}

fn cmd_corpus(action: &CorpusAction) -> i32 {
    match action {
        CorpusAction::List => {
            for name in corpus::names() {
                println!("{name}");
            }
            EXIT_OK
        }
        CorpusAction::Export { name, format } => {
            let Some(inst) = corpus::by_name(name) else {
                return input_error(&format!("unknown corpus instance `{name}`"));
            };
            match format {
                FormatArg::Text => print!("{}", parse::export_text(&inst.complex)),
                FormatArg::Json => {
                    print!("{}", parse::export_json(Some(&inst.name), &inst.complex))
                }
            }
            EXIT_OK
        }
    }
}

fn env_parse<T: std::str::FromStr>(key: &str) -> Option<T> {
    std::env::var(key).ok().and_then(|v| v.parse().ok())
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("report is serializable")
    );
}

fn input_error(message: &str) -> i32 {
    eprintln!("error: {message}");
    EXIT_INVALID_INPUT
}
