use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use sp3geom::bigfloat::{MAX_DIGITS, MIN_DIGITS};
use sp3geom::json::{
    dual_quartic_to_json, line_from_json, point_from_json, rat_to_json, section_from_json, section_to_json, vec_to_json,
};
use sp3geom::projection::projection_center;
use sp3geom::quartic::{classify_orbit, f_eval, gradient_vanishes};
use sp3geom::report::RunReport;
use sp3geom::section::{dual_quartic, random_section, section_through_line};
use sp3geom::verify::{run_section_checks, run_suite, SectionCheck, SectionOptions, Suite};
use sp3geom::GeomError;

const EXIT_CHECK_FAILED: u8 = 2;
const EXIT_INPUT: u8 = 3;

/// Exact and high-precision computations on the lagrangian grassmannian in P^13.
///
/// JSON arguments may be given inline, as a file path, or as `-` for stdin.
#[derive(Parser)]
#[command(name = "sp3geom", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Orbit of a point of P^13 under the symplectic group.
    Classify {
        /// Point as {"u", "X": [6], "Y": [6], "z"}.
        point: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Double projection of a point from a line of the grassmannian.
    Project {
        /// Line as {"axis": [v, v]} (optionally with "space" and "span").
        #[arg(long)]
        line: String,
        #[arg(long)]
        point: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a randomized identity suite.
    Verify {
        #[arg(long, default_value = "core")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Linear sections of the grassmannian.
    Section {
        #[command(subcommand)]
        action: SectionCommand,
    },
}

#[derive(Subcommand)]
enum SectionCommand {
    /// Draw a random section with a smooth dual quartic.
    New {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Force the section through the line with this axis, given as {"axis": [v, v]}.
        #[arg(long)]
        line: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dual plane quartic of a section.
    DualQuartic {
        #[arg(long, default_value = "-")]
        section: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Numeric checks on points sampled from the dual quartic curve.
    Verify {
        #[arg(long, default_value = "-")]
        section: String,
        /// Comma-separated subset of pivots, fibration, line-section.
        #[arg(long, default_value = "pivots,fibration")]
        checks: String,
        #[arg(long, default_value_t = 20)]
        points: usize,
        /// Working precision in decimal digits.
        #[arg(long, default_value_t = 60)]
        prec: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
    Checks,
}

impl From<GeomError> for Failure {
    fn from(e: GeomError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read_json(arg: &str) -> Result<Value, Failure> {
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("reading stdin: {e}")))?;
        s
    } else if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Failure::Input(format!("reading {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("invalid JSON: {e}")))
}

fn emit(v: &Value, out: Option<&PathBuf>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(v).expect("values serialize");
    match out {
        Some(p) => std::fs::write(p, text + "\n").map_err(|e| Failure::Input(format!("writing {}: {e}", p.display()))),
        None => {
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout(), "{text}");
            Ok(())
        }
    }
}

fn emit_report(mut report: RunReport, start: Instant, out: Option<&PathBuf>) -> Result<(), Failure> {
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    emit(&serde_json::to_value(&report).expect("reports serialize"), out)?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let start = Instant::now();
    match cli.command {
        Command::Classify { point, out } => {
            let p = point_from_json(&read_json(&point)?)?;
            if p.is_zero() {
                return Err(Failure::Input("the zero vector is not a point".into()));
            }
            let v = json!({
                "orbit": classify_orbit(&p),
                "F": rat_to_json(&f_eval(&p)),
                "grad_zero": gradient_vanishes(&p),
            });
            emit(&v, out.as_ref())
        }
        Command::Project { line, point, out } => {
            let line = line_from_json(&read_json(&line)?)?;
            let p = point_from_json(&read_json(&point)?)?;
            let pd = projection_center(&line)?;
            let v = match pd.double_project(&p) {
                Ok(image) => json!({ "image": vec_to_json(&image) }),
                Err(GeomError::BaseLocus) => json!({ "error": "base_locus" }),
                Err(e) => return Err(e.into()),
            };
            emit(&v, out.as_ref())
        }
        Command::Verify { suite, seed, trials, out } => {
            let suite: Suite = suite.parse()?;
            let precision = (suite == Suite::Section).then_some(60);
            let mut report = RunReport::new(format!("verify --suite {}", suite_name(suite)), Some(seed), precision);
            report.checks = run_suite(suite, seed, trials);
            emit_report(report, start, out.as_ref())
        }
        Command::Section { action } => run_section(action, start),
    }
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Core => "core",
        Suite::Incidence => "incidence",
        Suite::Projection => "projection",
        Suite::Section => "section",
    }
}

fn run_section(action: SectionCommand, start: Instant) -> Result<(), Failure> {
    match action {
        SectionCommand::New { seed, line, out } => {
            let v = match line {
                Some(l) => {
                    let axis = line_from_json(&read_json(&l)?)?.axis;
                    let (sec, line) = section_through_line(&axis, seed)?;
                    section_to_json(&sec, Some(&line))
                }
                None => section_to_json(&random_section(seed)?, None),
            };
            emit(&v, out.as_ref())
        }
        SectionCommand::DualQuartic { section, out } => {
            let (sec, _) = section_from_json(&read_json(&section)?)?;
            let q = dual_quartic(&sec)?;
            emit(&dual_quartic_to_json(&q), out.as_ref())?;
            if q.smooth {
                Ok(())
            } else {
                Err(Failure::Checks)
            }
        }
        SectionCommand::Verify { section, checks, points, prec, out } => {
            if !(MIN_DIGITS..=MAX_DIGITS).contains(&prec) {
                return Err(Failure::Input(format!("precision must be between {MIN_DIGITS} and {MAX_DIGITS} digits")));
            }
            let checks: Vec<SectionCheck> =
                checks.split(',').filter(|s| !s.trim().is_empty()).map(str::parse).collect::<Result<_, _>>()?;
            let (sec, line) = section_from_json(&read_json(&section)?)?;
            let opts = SectionOptions { points, digits: prec, checks };
            let mut report = RunReport::new("section verify", Some(sec.seed), Some(prec));
            report.checks = run_section_checks(&sec, line.as_ref(), &opts);
            emit_report(report, start, out.as_ref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INPUT) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(EXIT_CHECK_FAILED),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
