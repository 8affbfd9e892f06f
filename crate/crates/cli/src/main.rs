use std::io::Write;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use cremona_core::context::{SolveContext, DEFAULT_SEED};
use cremona_core::curve::ProjPoint;
use cremona_core::error::Error;
use cremona_core::field::PrecisionBudget;
use cremona_core::galois::{ExtensionClass, GaloisVerdict};
use cremona_core::scenario::{analyze, reduce, render_report, OutputFormat, Report, Scenario, Timings};

const EXIT_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_UNDETERMINED: u8 = 3;

/// Galois points of plane curves and extensions of their groups to plane
/// Cremona transformations, in exact arithmetic.
#[derive(Parser)]
#[command(name = "galois-cremona", version)]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Degree bound for the Möbius ansatz over the base.
    #[arg(long, global = true)]
    degree_bound: Option<u32>,
    /// Search budget for numerical root finding (1 to 24).
    #[arg(long, global = true)]
    precision_budget: Option<u32>,
    /// Give up after this many seconds; the verdict is then undetermined.
    #[arg(long, global = true)]
    timeout: Option<f64>,
    /// Include wall-clock timings per stage.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Degree and equations of a curve.
    Curve {
        #[command(subcommand)]
        action: CurveAction,
    },
    /// Galois test and extension of deck transformations.
    Galois {
        #[command(subcommand)]
        action: GaloisAction,
    },
    /// Replays a reduction chain.
    Cremona {
        #[command(subcommand)]
        action: CremonaAction,
    },
    /// Runs a built-in or file scenario and checks its expected verdicts.
    Verify { scenario: String },
}

#[derive(Subcommand)]
enum CurveAction {
    Info {
        file: String,
        #[arg(long)]
        point: Option<String>,
    },
}

#[derive(Subcommand)]
enum GaloisAction {
    /// Decides whether the point is a Galois point.
    Test {
        file: String,
        /// Center as comma-separated coordinates, e.g. `1,0,0`.
        #[arg(long)]
        point: Option<String>,
    },
    /// Classifies the extension of one element of the deck group.
    Extend {
        file: String,
        #[arg(long)]
        point: Option<String>,
        /// Index of the element in the deck group, identity first.
        #[arg(long)]
        generator: usize,
    },
}

#[derive(Subcommand)]
enum CremonaAction {
    Reduce { file: String },
}

struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Cancelled => Failure(EXIT_UNDETERMINED, "undetermined: timed out".into()),
            Error::Input(_) | Error::Parse(_) | Error::Field(_) | Error::Poly(_) => Failure(EXIT_INPUT, e.to_string()),
            other => Failure(EXIT_FAILED, other.to_string()),
        }
    }
}

fn load(file: &str, point: Option<&str>) -> Result<Scenario, Failure> {
    let mut s = Scenario::load(file)?;
    if let Some(text) = point {
        let coords: Vec<&str> = text.split(',').map(str::trim).collect();
        s.point = Some(ProjPoint::parse(&s.field, &coords).map_err(|e| Failure(EXIT_INPUT, format!("--point: {e}")))?);
    }
    Ok(s)
}

fn context(cli: &Cli) -> SolveContext {
    let mut ctx = SolveContext::with_seed(cli.seed);
    ctx.degree_bound = cli.degree_bound;
    if let Some(level) = cli.precision_budget {
        ctx.precision = PrecisionBudget::from_level(level);
    }
    if let Some(secs) = cli.timeout {
        let token = ctx.cancel.clone();
        let limit = Duration::from_secs_f64(secs.max(0.0));
        std::thread::spawn(move || {
            std::thread::sleep(limit);
            token.cancel();
        });
    }
    ctx
}

fn run(cli: &Cli) -> Result<(Report, u8), Failure> {
    let ctx = context(cli);
    let mut timings = Timings::default();
    let shown = |t: &Timings| cli.timings.then(|| t.clone());
    match &cli.command {
        Command::Curve { action: CurveAction::Info { file, point } } => {
            let r = Report::curve_summary(&load(file, point.as_deref())?, &ctx)?;
            let code = r.exit_code.unwrap_or(0) as u8;
            Ok((r, code))
        }
        Command::Galois { action: GaloisAction::Test { file, point } } => {
            let a = analyze(&load(file, point.as_deref())?, &ctx, &mut timings)?;
            let mut r = Report::from_analysis(&a, cli.seed, shown(&timings).as_ref());
            r.chain = None;
            r.pairing = None;
            r.line_equivalence = None;
            Ok((r, a.exit_code() as u8))
        }
        Command::Galois { action: GaloisAction::Extend { file, point, generator } } => {
            let a = analyze(&load(file, point.as_deref())?, &ctx, &mut timings)?;
            if a.certificate.verdict != GaloisVerdict::Galois {
                return Err(Failure(
                    EXIT_UNDETERMINED,
                    format!("not a Galois point ({:?}); nothing to extend", a.certificate.verdict),
                ));
            }
            let Some(e) = a.extensions.get(*generator) else {
                return Err(Failure(
                    EXIT_INPUT,
                    format!("--generator {generator}: the group has {} elements", a.extensions.len()),
                ));
            };
            let mut r = Report::from_analysis(&a, cli.seed, shown(&timings).as_ref());
            r.extensions = Some(vec![cremona_core::scenario::extension_report(&a, e)]);
            r.extendable_elements = None;
            r.chain = None;
            r.pairing = None;
            r.line_equivalence = None;
            let code = if a.checks.iter().any(|c| !c.passed) {
                EXIT_FAILED
            } else if e.class == ExtensionClass::Undetermined {
                EXIT_UNDETERMINED
            } else {
                0
            };
            r.exit_code = Some(i32::from(code));
            Ok((r, code))
        }
        Command::Cremona { action: CremonaAction::Reduce { file } } => {
            let s = load(file, None)?;
            if s.chain.is_none() {
                return Err(Failure(EXIT_INPUT, format!("{file}: the scenario has no \"chain\"")));
            }
            let red = reduce(&s, &ctx, &mut timings)?;
            let r = Report::from_reduction(&s, &red, cli.seed, shown(&timings).as_ref());
            let code = r.exit_code.unwrap_or(0) as u8;
            Ok((r, code))
        }
        Command::Verify { scenario } => {
            let a = analyze(&load(scenario, None)?, &ctx, &mut timings)?;
            let r = Report::from_analysis(&a, cli.seed, shown(&timings).as_ref());
            Ok((r, a.exit_code() as u8))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = if cli.json { OutputFormat::Json } else { OutputFormat::Human };
    match run(&cli) {
        Ok((report, code)) => {
            let mut text = render_report(&report, format);
            if cli.json {
                text.push('\n');
            }
            // a closed pipe is not an error of the computation
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(code)
        }
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
