use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hypalg_core::classify::{classify, ClassifyError};
use hypalg_core::oracle::{guess_annihilator, series, GuessOutcome, MIN_GUARD};
use hypalg_core::params::ParamsError;
use hypalg_core::{Execution, HypergeomSpec};
use hyperio::svg::write_interlacing_svg;
use hyperio::trace::{rational_string, GuessDoc, OracleDoc, ReportDoc};
use hyperio::{christol_from_pair, document_from_json, emit_trace_json, parse_expression, to_spec, InputDocument};
use hyperio::{InputError, TraceDocument};

const EXIT_INPUT: u8 = 2;
const EXIT_ILL_DEFINED: u8 = 3;

#[derive(Parser)]
#[command(name = "hypalg", version, about = "Decide whether a hypergeometric series over Q is algebraic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a series as polynomial, algebraic or transcendental.
    Classify(ClassifyArgs),
}

#[derive(Args)]
struct ClassifyArgs {
    /// An expression such as `2F1([1/2, 1/3], [2/3]; 4x)`, a recurrence
    /// `rec: A = ...; B = ...`, or a path to a file holding either or a JSON
    /// input document.
    input: String,
    /// Read the input as a recurrence even without the `rec:` prefix.
    #[arg(long)]
    recurrence: bool,
    /// Write the JSON trace to this file (`-` for stdout).
    #[arg(long, value_name = "PATH")]
    trace: Option<PathBuf>,
    /// Write an SVG interlacing diagram to this file.
    #[arg(long, value_name = "PATH")]
    diagram: Option<PathBuf>,
    /// Also run Christol's criterion for integrality up to rescaling.
    #[arg(long)]
    globally_bounded: bool,
    /// Print the first N coefficients.
    #[arg(long, value_name = "N")]
    terms: Option<usize>,
    /// Search for an algebraic relation of bidegree at most (DX, DY).
    #[arg(long, value_name = "DX,DY", value_parser = parse_bidegree)]
    guess: Option<(usize, usize)>,
    /// Number of coefficients used by --guess [default: enough for the
    /// largest ansatz plus twice the minimum guard].
    #[arg(long, value_name = "M", requires = "guess")]
    guess_terms: Option<usize>,
    /// Evaluate independent checks on all cores.
    #[arg(long)]
    parallel: bool,
}

/// Writes to stdout, ignoring a closed pipe so `hypalg ... | head` stays quiet.
fn emit(args: std::fmt::Arguments) {
    let _ = std::io::stdout().lock().write_fmt(args);
}

macro_rules! out {
    ($($arg:tt)*) => {
        emit(format_args!("{}\n", format_args!($($arg)*)))
    };
}

fn parse_bidegree(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected DX,DY")?;
    let n = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    Ok((n(a)?, n(b)?))
}

enum Failure {
    Input(String),
    IllDefined(String),
    Other(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        if e.is_ill_defined() {
            Failure::IllDefined(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::Params(p) => params_failure(p),
            other => Failure::Other(other.to_string()),
        }
    }
}

fn params_failure(e: ParamsError) -> Failure {
    match e {
        e @ ParamsError::IllDefined { .. } => Failure::IllDefined(e.to_string()),
        e => Failure::Input(e.to_string()),
    }
}

fn read_input(args: &ClassifyArgs) -> Result<InputDocument, Failure> {
    let path = Path::new(&args.input);
    let text = if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
    } else {
        args.input.clone()
    };
    let text = text.trim();
    if text.starts_with('{') {
        return Ok(document_from_json(text)?);
    }
    if args.recurrence && !text.starts_with("rec:") {
        return Ok(parse_expression(&format!("rec: {text}"))?);
    }
    Ok(parse_expression(text)?)
}

fn write_output(path: &Path, content: &str) -> Result<(), Failure> {
    if path == Path::new("-") {
        emit(format_args!("{content}"));
        return Ok(());
    }
    std::fs::write(path, content).map_err(|e| Failure::Other(format!("{}: {e}", path.display())))
}

fn oracles(args: &ClassifyArgs, spec: &HypergeomSpec, exec: Execution) -> Result<OracleDoc, Failure> {
    let mut doc = OracleDoc::default();
    if let Some(n) = args.terms {
        let u = series(spec, n).map_err(params_failure)?;
        let shown: Vec<String> = u.iter().map(ToString::to_string).collect();
        out!("terms: {}", shown.join(", "));
        doc.terms = Some(u.iter().map(rational_string).collect());
    }
    if args.globally_bounded {
        match christol_from_pair(&spec.canonical().pair, exec) {
            Ok(report) => {
                match report.first_failure() {
                    None => out!("christol: globally bounded (N = {})", report.modulus),
                    Some(f) => out!(
                        "christol: not globally bounded (λ = {}: {})",
                        f.lambda,
                        f.failure_witness.as_deref().unwrap_or("")
                    ),
                }
                doc.christol = Some(ReportDoc::new(&report));
            }
            Err(reason) => {
                out!("christol: not applicable ({reason})");
                doc.christol_skipped = Some(reason);
            }
        }
    }
    if let Some((dx, dy)) = args.guess {
        let ansatz = (dx + 1) * (dy + 1);
        let m = args.guess_terms.unwrap_or(ansatz + 2 * MIN_GUARD);
        // every coefficient beyond the largest ansatz serves as a check
        let guard = m.saturating_sub(ansatz);
        let u = series(spec, m).map_err(params_failure)?;
        let out = guess_annihilator(&u, dx, dy, guard).map_err(|e| Failure::Input(e.to_string()))?;
        match &out {
            GuessOutcome::Found(a) => out!("guess: bidegree ({}, {}): {} = 0", a.dx, a.dy, a.poly),
            GuessOutcome::NoneUpTo { dx, dy } => out!("guess: no relation of bidegree up to ({dx}, {dy})"),
        }
        doc.guess = Some(GuessDoc::new(dx, dy, m, guard, &out));
    }
    Ok(doc)
}

fn run(args: ClassifyArgs) -> Result<(), Failure> {
    let exec = if args.parallel { Execution::Parallel } else { Execution::Sequential };
    let input = read_input(&args)?;
    let spec = to_spec(&input)?;
    let trace = classify(&spec, exec)?;
    out!("{}", trace.verdict);
    for node in &trace.nodes {
        out!("  {}: {}{}", node.name, node.outcome, if node.terminal { " (decides)" } else { "" });
    }
    let oracle = oracles(&args, &spec, exec)?;
    if let Some(path) = &args.diagram {
        let report = trace.ic_report.clone().or_else(|| christol_from_pair(&spec.canonical().pair, exec).ok());
        match report {
            Some(r) => {
                write_interlacing_svg(&r, path).map_err(|e| Failure::Other(format!("{}: {e}", path.display())))?
            }
            None => eprintln!("hypalg: no criterion report to draw"),
        }
    }
    if let Some(path) = &args.trace {
        let mut doc = TraceDocument::new(&trace, Some(input.to_string()));
        if !oracle.is_empty() {
            doc.oracle = Some(oracle);
        }
        write_output(path, &emit_trace_json(&doc))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    // `hypalg <input>` is shorthand for `hypalg classify <input>`.
    let mut argv: Vec<String> = std::env::args().collect();
    let first = argv.get(1).map(String::as_str);
    if !matches!(first, None | Some("classify" | "help" | "-h" | "--help" | "-V" | "--version")) {
        argv.insert(1, "classify".into());
    }
    let Command::Classify(args) = Cli::parse_from(argv).command;
    match run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(m)) => {
            eprintln!("hypalg: {m}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::IllDefined(m)) => {
            eprintln!("hypalg: {m}");
            ExitCode::from(EXIT_ILL_DEFINED)
        }
        Err(Failure::Other(m)) => {
            eprintln!("hypalg: {m}");
            ExitCode::FAILURE
        }
    }
}
