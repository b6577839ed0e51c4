use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hopfcross::catalog::{dump_json, load_json, resolve, Named};
use hopfcross::expr::{evaluate, parse, Environment};
use hopfcross::hopf::verify_hopf;
use hopfcross::qt::{check_qt, check_weak_r, is_triangular};
use hopfcross::report::{Check, Number};
use hopfcross::{repro, Error, Field, Report};

/// Exact computations with finite-dimensional Hopf algebras.
///
/// Algebra names: sweedler4, c2, dual:<name>, double:<name>.
#[derive(Parser, Debug)]
#[command(name = "hopfcross", version)]
struct Cli {
    /// Ground field: Q or p:<odd prime>.
    #[arg(long, global = true, default_value = "Q")]
    field: String,

    /// Emit `timing_ms: null` so that reports are byte-identical across runs.
    #[arg(long, global = true)]
    no_timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the structure constants of an algebra as catalog JSON.
    Build {
        name: Option<String>,
        /// Read the algebra from a catalog JSON file instead of by name.
        #[arg(long, conflicts_with = "name")]
        json: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite and print its JSON report.
    Check {
        kind: Kind,
        name: Option<String>,
        #[arg(long, conflicts_with = "name")]
        json: Option<PathBuf>,
    },
    /// Recompute published values and compare them exactly.
    Repro { target: Target },
    /// Evaluate a morphism expression and print the resulting map.
    Eval {
        expr: String,
        #[arg(long, default_value = "sweedler4")]
        algebra: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Hopf,
    Qt,
    Triangular,
    WeakR,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Target {
    #[value(name = "lemma-2.1")]
    CanonicalPairings,
    #[value(name = "example-2.2")]
    BraidedDouble,
    #[value(name = "theorem-1.4")]
    Xi,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    checks: &'a [Check],
    numbers: &'a [Number],
    timing_ms: Option<u128>,
}

/// Bad input; exits with status 2.
enum Failure {
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Input(e.to_string())
    }
}

/// Writes to stdout, treating a closed pipe as the reader having seen enough.
fn to_stdout(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn load(name: Option<&str>, json: Option<&PathBuf>, field: Field) -> Result<Named, Failure> {
    match (name, json) {
        (_, Some(p)) => Ok(Named {
            hopf: Arc::new(load_json(p)?),
            r: None,
        }),
        (Some(n), None) => Ok(resolve(n, field)?),
        (None, None) => Err(Failure::Input("give an algebra name or --json <path>".into())),
    }
}

fn emit(rep: &Report, started: Instant, no_timing: bool) -> ExitCode {
    let doc = JsonReport {
        checks: &rep.checks,
        numbers: &rep.numbers,
        timing_ms: (!no_timing).then(|| started.elapsed().as_millis()),
    };
    to_stdout(&(serde_json::to_string_pretty(&doc).expect("report serializes") + "\n"));
    for c in &rep.checks {
        match &c.witness {
            Some(w) if !c.passed => eprintln!("{}: fail ({w})", c.name),
            _ => eprintln!("{}: {}", c.name, if c.passed { "pass" } else { "fail" }),
        }
    }
    for n in &rep.numbers {
        match &n.expected {
            Some(e) => eprintln!("{} = {} (expected {e})", n.label, n.value),
            None => eprintln!("{} = {}", n.label, n.value),
        }
    }
    let failed = rep.failures().len();
    eprintln!("{} checks, {failed} failed", rep.checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn check(kind: Kind, named: &Named) -> Result<Report, Failure> {
    let h = &named.hopf;
    let r = || {
        named
            .r
            .as_ref()
            .ok_or_else(|| Failure::Input(format!("{} has no default quasitriangular element", h.name)))
    };
    Ok(match kind {
        Kind::Hopf => verify_hopf(h),
        Kind::Qt => check_qt(h, &r()?.value),
        Kind::Triangular => {
            let r = r()?;
            let mut rep = check_qt(h, &r.value);
            rep.record(
                "triangular",
                (!is_triangular(h, r)).then(|| format!("{}₂₁·{} ≠ 1⊗1", r.role, r.role)),
            );
            rep
        }
        Kind::WeakR => check_weak_r(h, h, &r()?.value),
    })
}

fn reproduce(target: Target) -> Result<Report, Failure> {
    Ok(match target {
        Target::CanonicalPairings => repro::canonical_element_pairings()?,
        Target::BraidedDouble => {
            let bd = repro::braided_double_of_sweedler_double()?;
            let mut rep = repro::braided_double_coactions(&bd)?;
            rep.extend("", repro::strict_braiding_of_double(&bd));
            rep
        }
        Target::Xi => {
            let bd = repro::braided_double_of_sweedler_double()?;
            let mut rep = repro::xi_is_identity_when_v_equals_r()?;
            rep.extend("", repro::xi_bijective_and_projection(&bd)?);
            rep
        }
    })
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let field = Field::parse(&cli.field)?;
    let started = Instant::now();
    match cli.command {
        Command::Build { name, json, out } => {
            let named = load(name.as_deref(), json.as_ref(), field)?;
            let text = dump_json(&named.hopf);
            match out {
                Some(p) => std::fs::write(&p, text + "\n")
                    .map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
                None => to_stdout(&(text + "\n")),
            }
            eprintln!("{}: dimension {} over {}", named.hopf.name, named.hopf.dim(), field);
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { kind, name, json } => {
            let named = load(name.as_deref(), json.as_ref(), field)?;
            let rep = check(kind, &named)?;
            Ok(emit(&rep, started, cli.no_timing))
        }
        Command::Repro { target } => {
            if field != Field::Rational {
                return Err(Failure::Input("repro works over Q only".into()));
            }
            let rep = reproduce(target)?;
            Ok(emit(&rep, started, cli.no_timing))
        }
        Command::Eval { expr, algebra } => {
            let e = parse(&expr)?;
            let named = resolve(&algebra, field)?;
            let mut env = Environment::for_algebra(&named.hopf)?;
            if let Some(r) = named.r {
                env = env.with_quasitriangular(r)?;
            }
            let map = evaluate(&e, &env)?;
            to_stdout(&map.to_string());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
