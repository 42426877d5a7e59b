use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use xswap::sample::{sample_many, SampleConstraint};
use xswap::statefile::{self, StateFile, StateFileError, StateSpec};
use xswap::swap::{self, OutcomeRegime, SwapOutcomeSet, ThresholdReport};
use xswap::sweep::{csv_string, run_sweep, SweepFamily, SweepSpec, DEFAULT_POINTS};
use xswap::verify::{run_verification, VerifyReport, VERIFY_BOUND};
use xswap::XState;

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_INVALID_STATE: u8 = 3;
const EXIT_IO: u8 = 4;
const EXIT_SAMPLER_CAP: u8 = 5;

#[derive(Parser)]
#[command(
    name = "xswap",
    about = "Entanglement swapping for two-qubit X-states",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Machine,
}

#[derive(Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum ConstraintArg {
    #[default]
    Any,
    Separable,
    Entangled,
}

impl From<ConstraintArg> for SampleConstraint {
    fn from(arg: ConstraintArg) -> Self {
        match arg {
            ConstraintArg::Any => SampleConstraint::Any,
            ConstraintArg::Separable => SampleConstraint::Separable,
            ConstraintArg::Entangled => SampleConstraint::Entangled,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Swap the two states of a file, or one state against itself,
    /// and report the four Bell outcomes.
    Swap {
        /// State file with one state (equal inputs) or two.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Classify the equal-input outcome regime of a single state.
    Classify {
        /// State file with exactly one state.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Sweep a parameter family over a grid and emit CSV.
    Sweep {
        /// One of: pure, werner, alpha, beta.
        #[arg(long)]
        family: SweepFamily,
        #[arg(long, default_value_t = 0.0)]
        start: f64,
        #[arg(long, default_value_t = 1.0)]
        stop: f64,
        #[arg(long, default_value_t = DEFAULT_POINTS)]
        points: usize,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-check the closed forms against the brute-force oracle on
    /// random seeded inputs.
    Verify {
        /// Number of random pairs (the same number of equal-input cases
        /// is checked on top).
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Sample random X-states as a stream of one-state documents,
    /// one JSON document per line.
    Sample {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t)]
        constraint: ConstraintArg,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Swap { input, format } => cmd_swap(&input, format),
        Command::Classify { input, format } => cmd_classify(&input, format),
        Command::Sweep {
            family,
            start,
            stop,
            points,
            out,
        } => cmd_sweep(family, start, stop, points, out.as_deref()),
        Command::Verify { n, seed, format } => cmd_verify(n, seed, format),
        Command::Sample {
            n,
            seed,
            constraint,
            out,
        } => cmd_sample(n, seed, constraint.into(), out.as_deref()),
    }
}

fn read_states(path: &Path) -> Result<Vec<XState>, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_IO, format!("cannot read {}: {e}", path.display())))?;
    statefile::parse_states(&text).map_err(|e| {
        let code = match &e {
            StateFileError::Parse(_) | StateFileError::WrongCount { .. } => EXIT_PARSE,
            StateFileError::State(_) => EXIT_INVALID_STATE,
        };
        Failure::new(code, e.to_string())
    })
}

fn write_output(out: Option<&Path>, content: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, content).map_err(|e| {
            Failure::new(EXIT_IO, format!("cannot write {}: {e}", path.display()))
        }),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn cmd_swap(input: &Path, format: Format) -> Result<u8, Failure> {
    let states = read_states(input)?;
    let equal_inputs = states.len() == 1;
    let (x, xp) = (&states[0], states.last().expect("nonempty"));
    let outcomes = swap::swap_outcomes(x, xp)
        .map_err(|e| Failure::new(EXIT_INVALID_STATE, e.to_string()))?;
    let report = if equal_inputs {
        Some(
            swap::thresholds(x)
                .map_err(|e| Failure::new(EXIT_INVALID_STATE, e.to_string()))?,
        )
    } else {
        None
    };
    match format {
        Format::Text => print_swap_text(&states, &outcomes, report.as_ref()),
        Format::Machine => {
            let value = swap_json(&states, &outcomes, report.as_ref());
            println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
        }
    }
    Ok(0)
}

fn print_swap_text(
    states: &[XState],
    outcomes: &SwapOutcomeSet,
    report: Option<&ThresholdReport>,
) {
    if states.len() == 1 {
        println!("inputs: one state, swapped against itself");
    } else {
        println!("inputs: two states");
    }
    for (i, state) in states.iter().enumerate() {
        println!("input {}: {}", i + 1, state_line(state));
    }
    println!();
    for outcome in &outcomes.outcomes {
        match (&outcome.state, outcome.concurrence) {
            (Some(state), Some(c)) => {
                println!(
                    "outcome {}: probability = {:.9e}, concurrence = {:.9e}",
                    outcome.label, outcome.probability, c
                );
                println!("  {}", state_line(state));
            }
            _ => println!(
                "outcome {}: probability = 0, state undefined",
                outcome.label
            ),
        }
    }
    println!();
    println!(
        "probability sum defect = {:.3e}",
        outcomes.probability_sum_defect()
    );
    if let Some(report) = report {
        print_threshold_text(report);
    }
}

fn print_threshold_text(report: &ThresholdReport) {
    println!("C_in     = {:.9e}", report.c_in);
    println!("C_th_min = {:.9e}", report.c_th_min);
    println!("C_th_max = {:.9e}", report.c_th_max);
    println!("regime   = {}", report.regime);
    println!("condition: {}", regime_condition(report.regime));
}

fn state_line(x: &XState) -> String {
    format!(
        "diag = [{:.9e}, {:.9e}, {:.9e}, {:.9e}], o14 = {}, o23 = {}",
        x.d11,
        x.d22,
        x.d33,
        x.d44,
        complex_text(x.o14),
        complex_text(x.o23)
    )
}

fn complex_text(z: xswap::Complex64) -> String {
    format!("{:.9e} {} {:.9e}i", z.re, if z.im < 0.0 { "-" } else { "+" }, z.im.abs())
}

/// Which of the two outcome-entanglement inequalities fired, in words.
fn regime_condition(regime: OutcomeRegime) -> &'static str {
    match regime {
        OutcomeRegime::FourEntangled => {
            "|o14|^2 + |o23|^2 exceeds d11*d33 + d22*d44, \
             so all four outcomes are entangled"
        }
        OutcomeRegime::TwoEntangled => {
            "|o14|^2 + |o23|^2 exceeds 2*sqrt(d11*d22*d33*d44) but not \
             d11*d33 + d22*d44, so only the two psi outcomes are entangled"
        }
        OutcomeRegime::AllSeparable => {
            "|o14|^2 + |o23|^2 reaches neither bound, \
             so every outcome is separable"
        }
    }
}

fn state_json(x: &XState) -> Value {
    serde_json::to_value(StateSpec::from_xstate(x)).expect("state specs serialize")
}

fn threshold_json(report: &ThresholdReport) -> Value {
    json!({
        "c_in": report.c_in,
        "c_th_min": report.c_th_min,
        "c_th_max": report.c_th_max,
        "regime": report.regime.to_string(),
        "condition": regime_condition(report.regime),
    })
}

fn swap_json(
    states: &[XState],
    outcomes: &SwapOutcomeSet,
    report: Option<&ThresholdReport>,
) -> Value {
    let outcome_values: Vec<Value> = outcomes
        .outcomes
        .iter()
        .map(|o| {
            json!({
                "label": o.label.to_string(),
                "probability": o.probability,
                "state": o.state.as_ref().map(state_json),
                "concurrence": o.concurrence,
            })
        })
        .collect();
    json!({
        "inputs": states.iter().map(state_json).collect::<Vec<Value>>(),
        "equal_inputs": states.len() == 1,
        "outcomes": outcome_values,
        "probability_sum_defect": outcomes.probability_sum_defect(),
        "thresholds": report.map(threshold_json),
    })
}

fn cmd_classify(input: &Path, format: Format) -> Result<u8, Failure> {
    let states = read_states(input)?;
    if states.len() != 1 {
        return Err(Failure::new(
            EXIT_PARSE,
            format!("classify needs exactly one state, found {}", states.len()),
        ));
    }
    let report = swap::thresholds(&states[0])
        .map_err(|e| Failure::new(EXIT_INVALID_STATE, e.to_string()))?;
    match format {
        Format::Text => print_threshold_text(&report),
        Format::Machine => println!(
            "{}",
            serde_json::to_string_pretty(&threshold_json(&report)).expect("serializable")
        ),
    }
    Ok(0)
}

fn cmd_sweep(
    family: SweepFamily,
    start: f64,
    stop: f64,
    points: usize,
    out: Option<&Path>,
) -> Result<u8, Failure> {
    let spec = SweepSpec::new(family, start, stop, points)
        .map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
    let rows = run_sweep(&spec).map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
    write_output(out, &csv_string(&rows))?;
    Ok(0)
}

fn cmd_verify(n: usize, seed: u64, format: Format) -> Result<u8, Failure> {
    if n == 0 {
        return Err(Failure::new(EXIT_PARSE, "verify needs --n of at least 1"));
    }
    let report = run_verification(n, seed)
        .map_err(|e| Failure::new(EXIT_INVALID_STATE, e.to_string()))?;
    match format {
        Format::Text => print_verify_text(&report),
        Format::Machine => println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "cases": report.cases,
                "max_probability_deviation": report.max_probability_deviation,
                "max_matrix_deviation": report.max_matrix_deviation,
                "max_concurrence_deviation": report.max_concurrence_deviation,
                "bound": VERIFY_BOUND,
                "pass": report.pass,
            }))
            .expect("serializable")
        ),
    }
    Ok(if report.pass { 0 } else { EXIT_VERIFY_FAILED })
}

fn print_verify_text(report: &VerifyReport) {
    println!("cases compared               = {}", report.cases);
    println!(
        "max probability deviation    = {:.3e}",
        report.max_probability_deviation
    );
    println!(
        "max outcome matrix deviation = {:.3e}",
        report.max_matrix_deviation
    );
    println!(
        "max concurrence deviation    = {:.3e}",
        report.max_concurrence_deviation
    );
    println!("bound                        = {VERIFY_BOUND:.0e}");
    println!("result: {}", if report.pass { "PASS" } else { "FAIL" });
}

fn cmd_sample(
    n: usize,
    seed: u64,
    constraint: SampleConstraint,
    out: Option<&Path>,
) -> Result<u8, Failure> {
    if n == 0 {
        return Err(Failure::new(EXIT_PARSE, "sample needs --n of at least 1"));
    }
    let states = sample_many(n, seed, constraint)
        .map_err(|e| Failure::new(EXIT_SAMPLER_CAP, e.to_string()))?;
    let mut content = String::new();
    for state in &states {
        content.push_str(&StateFile::single(state).to_json());
        content.push('\n');
    }
    write_output(out, &content)?;
    Ok(0)
}
