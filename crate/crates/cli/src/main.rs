//! Command-line front end: presentations, Hessenberg data, equivariant
//! integrals and the verification suites, reported as text or JSON.

use std::fs;
use std::process::ExitCode;
use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use zscheme::cohomology::{equivariant_presentation_of, ordinary_presentation_of};
use zscheme::exactalg::{int, parse_polynomial, QPoly, Rational};
use zscheme::fundscheme::{zscheme_ideal, ZSchemeIdeal};
use zscheme::hessenberg::{analyze, hessenberg_ideal, product_formula};
use zscheme::pushforward::{fiber_sum_oracle, jacobian_nondivisibility, Integrator};
use zscheme::regvariety::{flag_model_a, projective_space_model, ModelFile, RegularModel};
use zscheme::rootsys::{require_valid, HessenbergSpace};
use zscheme::suite::{run_suite, Suite, SuiteConfig};

const SCHEMA_VERSION: u32 = 1;

const EXIT_INPUT: u8 = 2;
const EXIT_INVARIANT: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "zscheme", version, about = "Equivariant cohomology of regular B-varieties via the zero scheme")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Abort after this many seconds (exit code 3).
    #[arg(long, global = true, value_name = "SECONDS")]
    timeout: Option<u64>,
    /// Use the Hessenberg space of negative roots of height at least 2.
    #[arg(long, global = true)]
    omega_from_condition: bool,
    /// Include wall-clock timings in the report.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Equivariant and ordinary presentations with certificates.
    Present {
        /// pn:N, flag:L or file:PATH
        model: String,
    },
    /// Poincaré polynomial, product formula, fixed points and certificates.
    Hessenberg {
        rank: usize,
        /// Comma-separated negative roots, or peterson, full, none.
        omega: Option<String>,
    },
    /// Equivariant integral of a class, cross-checked on fibers.
    Integrate(IntegrateArgs),
    /// Run a verification suite: pn, flag, hessenberg, pushforward or all.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct IntegrateArgs {
    /// pn:N, flag:L or file:PATH
    model: String,
    /// Class expression in the coordinates and v.
    expression: Option<String>,
    #[arg(long = "class", value_name = "EXPR", conflicts_with = "expression")]
    class: Option<String>,
    /// Integrate the Jacobian class.
    #[arg(long, conflicts_with_all = ["expression", "class"])]
    class_jacobian: bool,
    /// Values of v at which to compare with the fiber sums.
    #[arg(long = "at", value_delimiter = ',', default_value = "1,2")]
    at: Vec<String>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    suite: String,
    #[arg(long, default_value_t = 2024)]
    seed: u64,
    /// Largest flag rank (3 takes minutes).
    #[arg(long, default_value_t = 2)]
    flag_rank_max: usize,
    /// Scale the first generator of every push-forward model.
    #[arg(long, hide = true, value_name = "FACTOR")]
    perturb_generator: Option<String>,
}

#[derive(Debug)]
enum Failure {
    Core(zscheme::Error),
    Input { code: &'static str, message: String },
    Invariant { code: &'static str, message: String },
}

impl Failure {
    fn code(&self) -> &'static str {
        match self {
            Failure::Core(e) => e.code(),
            Failure::Input { code, .. } | Failure::Invariant { code, .. } => code,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Input { message, .. } | Failure::Invariant { message, .. } => message.clone(),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            Failure::Input { .. } => EXIT_INPUT,
            Failure::Invariant { .. } => EXIT_INVARIANT,
            Failure::Core(e) => match e.code() {
                "CERTIFICATE_FAILED" | "NONPOLYNOMIAL_TRACE" | "J_NOT_INVERTIBLE" | "SINGULAR_J_AT_FIBER"
                | "CHECK_FAILED" | "CONGRUENCE_FAILED" | "MISMATCH" => EXIT_INVARIANT,
                _ => EXIT_INPUT,
            },
        }
    }
}

impl From<zscheme::Error> for Failure {
    fn from(e: zscheme::Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<Output, Failure>;

/// A finished command: its JSON result, a text rendering, and whether any
/// reported check failed.
struct Output {
    model: Option<String>,
    result: Value,
    text: String,
    statistics: Option<Statistics>,
    failed: bool,
}

#[derive(Serialize, Debug)]
struct Statistics {
    max_coefficient_bits: u64,
}

#[derive(Serialize)]
struct RunReport<'a> {
    schema_version: u32,
    command: &'a [String],
    #[serde(skip_serializing_if = "Option::is_none")]
    model: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<&'a Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    statistics: Option<&'a Statistics>,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
}

fn load_model(selector: &str) -> Result<RegularModel, Failure> {
    let bad = |message: String| Failure::Input {
        code: "INVALID_SELECTOR",
        message,
    };
    let (kind, arg) = selector
        .split_once(':')
        .ok_or_else(|| bad(format!("model selector `{selector}` must be pn:N, flag:L or file:PATH")))?;
    let number = || {
        arg.parse::<usize>()
            .map_err(|_| bad(format!("`{arg}` is not a non-negative integer")))
    };
    match kind {
        "pn" => Ok(projective_space_model(number()?)?),
        "flag" => Ok(flag_model_a(number()?)?),
        "file" => {
            let text = fs::read_to_string(arg).map_err(|e| Failure::Input {
                code: "IO_ERROR",
                message: format!("{arg}: {e}"),
            })?;
            let file: ModelFile = serde_json::from_str(&text).map_err(|e| Failure::Input {
                code: "INVALID_MODEL_FILE",
                message: format!("{arg}: {e}"),
            })?;
            Ok(file.build()?)
        }
        _ => Err(bad(format!("unknown model kind `{kind}`"))),
    }
}

fn to_value<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("reports serialize")
}

fn bits(polys: &[QPoly]) -> Statistics {
    Statistics {
        max_coefficient_bits: polys.iter().map(QPoly::max_bit_length).max().unwrap_or(0),
    }
}

fn present(selector: &str) -> Outcome {
    let model = load_model(selector)?;
    let z = zscheme_ideal(&model)?;
    let equivariant = equivariant_presentation_of(&z)?;
    let ordinary = ordinary_presentation_of(&z)?;
    let nondivisibility = jacobian_nondivisibility(&z)?;
    let mut text = format!(
        "model {}\nring {}\ngenerators:\n",
        equivariant.model, equivariant.ring
    );
    for g in &equivariant.generators {
        text.push_str(&format!("  {g}\n"));
    }
    text.push_str(&format!(
        "equivariant series {}\nordinary series {}\neuler {}\nregular sequence {}\n",
        equivariant.series, ordinary.series, equivariant.euler, equivariant.certificates.regular_sequence
    ));
    Ok(Output {
        model: Some(equivariant.model.clone()),
        statistics: Some(bits(&z.groebner().elements())),
        result: json!({
            "equivariant": to_value(&equivariant),
            "ordinary": to_value(&ordinary),
            "jacobian_nondivisibility": to_value(&nondivisibility),
        }),
        text,
        failed: false,
    })
}

fn hessenberg(rank: usize, omega: Option<&str>, from_condition: bool) -> Outcome {
    let space = match (omega, from_condition) {
        (Some(_), true) => {
            return Err(Failure::Input {
                code: "CONFLICTING_OMEGA",
                message: "give either an omega or --omega-from-condition".into(),
            })
        }
        (None, true) => HessenbergSpace::from_height_condition(rank)?,
        (Some(text), false) => HessenbergSpace::parse(text, rank)?,
        (None, false) => {
            return Err(Failure::Input {
                code: "MISSING_OMEGA",
                message: "an omega is required".into(),
            })
        }
    };
    if let Err(e) = require_valid(&space) {
        let formula = product_formula(&space);
        let note = match formula.diagnostic() {
            Some(d) => format!("; the product formula is {d}"),
            None => String::new(),
        };
        return Err(Failure::Input {
            code: e.code(),
            message: format!("{e}{note}"),
        });
    }
    let report = analyze(&space)?;
    let h = hessenberg_ideal(&space)?;
    let text = format!(
        "omega {}\npoincare {}\nproduct formula matches\nfixed points {}\neuler {}\ncomplete intersection {} (degrees {:?})\npoincare duality {}\n",
        report.poincare.omega,
        report.poincare.series,
        report.poincare.fixed_points,
        report.poincare.euler,
        report.complete_intersection.passed,
        report.complete_intersection.degrees,
        report.duality.passed,
    );
    let failed = !(report.complete_intersection.passed && report.duality.passed);
    Ok(Output {
        model: Some(format!("flag:{rank}")),
        statistics: Some(bits(&h.groebner()?.elements())),
        result: to_value(&report),
        text,
        failed,
    })
}

fn parse_values(items: &[String]) -> Result<Vec<Rational>, Failure> {
    items
        .iter()
        .map(|s| {
            let v: Rational = s.trim().parse().map_err(|_| Failure::Input {
                code: "INVALID_VALUE",
                message: format!("`{s}` is not a rational number"),
            })?;
            if v == int(0) {
                return Err(Failure::Input {
                    code: "INVALID_VALUE",
                    message: "fiber values must be nonzero".into(),
                });
            }
            Ok(v)
        })
        .collect()
}

fn class_of(z: &ZSchemeIdeal, integrator: &Integrator, args: &IntegrateArgs) -> Result<QPoly, Failure> {
    if args.class_jacobian {
        return Ok(integrator.jacobian().clone());
    }
    let text = args
        .expression
        .as_deref()
        .or(args.class.as_deref())
        .ok_or_else(|| Failure::Input {
            code: "MISSING_CLASS",
            message: "give a class expression or --class-jacobian".into(),
        })?;
    Ok(parse_polynomial(text, z.ring())?)
}

fn integrate(args: &IntegrateArgs) -> Outcome {
    let values = parse_values(&args.at)?;
    let model = load_model(&args.model)?;
    let z = zscheme_ideal(&model)?;
    let integrator = Integrator::new(&z)?;
    let class = class_of(&z, &integrator, args)?;
    let result = integrator.integrate(&class)?;
    let mut oracle = serde_json::Map::new();
    for v0 in &values {
        let expected = result.value.0.eval(v0);
        let found = fiber_sum_oracle(&z, &class, v0)?;
        if found != expected {
            return Err(Failure::Invariant {
                code: "ORACLE_MISMATCH",
                message: format!("at v = {v0} the fiber sum is {found} but the trace gives {expected}"),
            });
        }
        oracle.insert(v0.to_string(), Value::String(found.to_string()));
    }
    if !result.degree_contract {
        return Err(Failure::Invariant {
            code: "DEGREE_CONTRACT",
            message: format!("{} is not of degree deg f - {}", result.value, 2 * z.nvars()),
        });
    }
    let polynomial = result.value.to_string();
    let text = format!("{polynomial}\n");
    Ok(Output {
        model: Some(result.model.clone()),
        statistics: Some(bits(&z.groebner().elements())),
        result: json!({
            "class": class.to_string(),
            "polynomial": polynomial,
            "checks": {
                "class_degree": result.class_degree,
                "degree_contract": result.degree_contract,
                "fiber_sums": oracle,
                "method": result.method,
            },
        }),
        text,
        failed: false,
    })
}

fn verify(args: &VerifyArgs, timings: bool) -> Outcome {
    let suite: Suite = args.suite.parse().map_err(|e: zscheme::Error| Failure::Input {
        code: "UNKNOWN_SUITE",
        message: e.to_string(),
    })?;
    let perturbation = match &args.perturb_generator {
        Some(s) => Some(s.parse::<Rational>().map_err(|_| Failure::Input {
            code: "INVALID_VALUE",
            message: format!("`{s}` is not a rational number"),
        })?),
        None => None,
    };
    let config = SuiteConfig {
        flag_ranks: (1..=args.flag_rank_max).collect(),
        seed: args.seed,
        perturbation,
        record_timing: timings,
        ..SuiteConfig::default()
    };
    let report = run_suite(suite, &config);
    let mut text = String::new();
    for c in &report.criteria {
        let verdict = if c.passed { "PASS" } else { "FAIL" };
        let time = c.elapsed_ms.map(|ms| format!(" ({ms} ms)")).unwrap_or_default();
        text.push_str(&format!("{verdict} criterion {}: {}{time}\n", c.id, c.title));
        for k in c.checks.iter().filter(|k| !k.passed) {
            text.push_str(&format!("  failed {}: {}\n", k.name, k.detail));
        }
    }
    Ok(Output {
        model: None,
        statistics: None,
        failed: !report.passed,
        result: to_value(&report),
        text,
    })
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Present { model } => present(model),
        Command::Hessenberg { rank, omega } => hessenberg(*rank, omega.as_deref(), cli.omega_from_condition),
        Command::Integrate(args) => integrate(args),
        Command::Verify(args) => verify(args, cli.timings),
    }
}

fn run_with_timeout(cli: Cli) -> (Cli, Outcome) {
    let Some(seconds) = cli.timeout else {
        let outcome = run(&cli);
        return (cli, outcome);
    };
    let (tx, rx) = mpsc::channel();
    let worker = thread::spawn(move || {
        let outcome = run(&cli);
        let _ = tx.send(());
        (cli, outcome)
    });
    match rx.recv_timeout(Duration::from_secs(seconds)) {
        Ok(()) => worker.join().expect("worker thread panicked"),
        Err(_) => {
            let failure = Failure::Invariant {
                code: "TIMEOUT",
                message: format!("no result within {seconds} s"),
            };
            let json = std::env::args().any(|a| a == "--json");
            emit(json, &command_echo(), Err(&failure), None);
            std::process::exit(EXIT_INVARIANT.into());
        }
    }
}

fn command_echo() -> Vec<String> {
    std::env::args().skip(1).collect()
}

fn emit(json: bool, command: &[String], outcome: Result<&Output, &Failure>, elapsed_ms: Option<u128>) -> u8 {
    match outcome {
        Ok(out) => {
            if json {
                let report = RunReport {
                    schema_version: SCHEMA_VERSION,
                    command,
                    model: out.model.as_deref(),
                    result: Some(&out.result),
                    error: None,
                    statistics: out.statistics.as_ref(),
                    elapsed_ms,
                };
                println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
            } else {
                print!("{}", out.text);
                if let Some(ms) = elapsed_ms {
                    println!("elapsed {ms} ms");
                }
            }
            if out.failed {
                EXIT_INVARIANT
            } else {
                0
            }
        }
        Err(failure) => {
            if json {
                let report = RunReport {
                    schema_version: SCHEMA_VERSION,
                    command,
                    model: None,
                    result: None,
                    error: Some(json!({ "code": failure.code(), "message": failure.message() })),
                    statistics: None,
                    elapsed_ms: None,
                };
                println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
            } else {
                eprintln!("error[{}]: {}", failure.code(), failure.message());
            }
            failure.exit_code()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (cli, outcome) = run_with_timeout(cli);
    let elapsed = cli.timings.then(|| start.elapsed().as_millis());
    ExitCode::from(emit(cli.json, &command_echo(), outcome.as_ref(), elapsed))
}
