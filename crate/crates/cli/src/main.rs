use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gammakit::io::{self, DocError};
use gammakit::trace::to_csv;
use gammakit::{
    canonical_example, classify_point, fejer_riesz, is_s_extreme, is_superficial, royal_profile,
    synthesize, trace_boundary, witness_non_extreme, Error, Family, GammaInner, ToleranceConfig,
};
use num_complex::Complex64;
use serde_json::json;

const ENV_PREFIX: &str = "GAMMAKIT_TOL_";

#[derive(Parser)]
#[command(
    name = "gammakit",
    version,
    about = "Rational inner functions of the symmetrized bidisc"
)]
struct Cli {
    /// Override a tolerance, e.g. `--tol eps_root=1e-11`. Repeatable.
    #[arg(long = "tol", value_name = "KEY=VAL", global = true)]
    tol: Vec<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a point (s, p) of C^2 against the symmetrized bidisc.
    Membership {
        #[arg(long, value_name = "RE,IM", allow_hyphen_values = true)]
        s: String,
        #[arg(long, value_name = "RE,IM", allow_hyphen_values = true)]
        p: String,
    },
    /// Degree, royal profile, type, extremity and superficiality of a function.
    Analyze { file: PathBuf },
    /// Build a function from a synthesis spec.
    Synthesize {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Spectral factor of a nonnegative trigonometric polynomial.
    Factorize {
        #[arg(long)]
        trig: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Boundary trace as CSV.
    Trace {
        file: PathBuf,
        #[arg(long, default_value_t = 1024)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write one of the built-in example functions.
    Example {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// h-nu: index.
        #[arg(long, default_value_t = 0)]
        nu: usize,
        /// h-nu: radius in (0, 1).
        #[arg(long, default_value_t = 0.5)]
        r: f64,
        /// geodesic: the point beta with |beta| <= 1.
        #[arg(
            long,
            value_name = "RE,IM",
            allow_hyphen_values = true,
            default_value = "0.5,0"
        )]
        beta: String,
        /// superficial: unimodular omega.
        #[arg(
            long,
            value_name = "RE,IM",
            allow_hyphen_values = true,
            default_value = "1,0"
        )]
        omega: String,
        /// superficial: denominator of the inner function, as a JSON coefficient array.
        #[arg(long, default_value = "[[1.0,0.0],[0.5,0.0]]")]
        den: String,
        /// superficial: degree bound; defaults to the degree of `den`.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split a non-extreme function into two distinct ones with it as midpoint.
    Witness {
        file: PathBuf,
        #[arg(long)]
        out_plus: PathBuf,
        #[arg(long)]
        out_minus: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    HNu,
    Geodesic,
    Superficial,
}

/// Failure classes mapped to exit codes 1 and 2.
enum Failure {
    Invalid(String),
    Parse(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<DocError> for Failure {
    fn from(e: DocError) -> Self {
        match e {
            DocError::Parse { .. } => Failure::Parse(e.to_string()),
            DocError::Validation(inner) => Failure::Invalid(inner.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn tolerances(overrides: &[String]) -> Result<ToleranceConfig, Failure> {
    let mut tol = ToleranceConfig::default();
    for key in ToleranceConfig::KEYS {
        let var = format!("{ENV_PREFIX}{}", key.to_ascii_uppercase());
        if let Ok(value) = std::env::var(&var) {
            tol.set(key, &value)
                .map_err(|e| Failure::Parse(format!("{var}: {e}")))?;
        }
    }
    for item in overrides {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| Failure::Parse(format!("--tol expects KEY=VAL, got `{item}`")))?;
        tol.set(key, value)
            .map_err(|e| Failure::Parse(e.to_string()))?;
    }
    Ok(tol)
}

fn parse_complex(text: &str) -> Result<Complex64, Failure> {
    let bad = || Failure::Parse(format!("expected RE,IM, got `{text}`"));
    let (re, im) = text.split_once(',').ok_or_else(bad)?;
    let re: f64 = re.trim().parse().map_err(|_| bad())?;
    let im: f64 = im.trim().parse().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
        }
        None => {
            say(text);
            Ok(())
        }
    }
}

/// Print to stdout, ignoring a closed pipe.
fn say(text: &str) {
    let _ = writeln!(std::io::stdout(), "{}", text.trim_end());
}

fn load(path: &Path, tol: &ToleranceConfig) -> Result<GammaInner, Failure> {
    Ok(io::inner_from_json(&read(path)?, tol)?)
}

fn analyze(h: &GammaInner) -> Result<String, Failure> {
    let profile = royal_profile(h)?;
    let superficial = is_superficial(h).map(|w| [w.re, w.im]);
    let report = json!({
        "n": h.n(),
        "degree": h.degree(),
        "type": [profile.n, profile.k],
        "s_extreme": is_s_extreme(h)?,
        "superficial": superficial.is_some(),
        "omega": superficial,
        "profile": profile,
    });
    Ok(serde_json::to_string_pretty(&report).expect("reports always serialize"))
}

fn run(cli: Cli) -> Outcome {
    let tol = tolerances(&cli.tol)?;
    match cli.command {
        Command::Membership { s, p } => {
            let region = classify_point(parse_complex(&s)?, parse_complex(&p)?, &tol);
            say(region.label());
        }
        Command::Analyze { file } => say(&analyze(&load(&file, &tol)?)?),
        Command::Synthesize { spec, out } => {
            let spec = io::spec_from_json(&read(&spec)?, &tol)?;
            let h = synthesize(&spec, &tol)?;
            emit(out.as_deref(), &io::inner_to_json(&h))?;
        }
        Command::Factorize { trig, out } => {
            let f = io::trig_from_json(&read(&trig)?, &tol)?;
            let d = fejer_riesz(&f, &tol)?;
            emit(out.as_deref(), &io::poly_to_json(&d))?;
        }
        Command::Trace { file, samples, out } => {
            let h = load(&file, &tol)?;
            emit(out.as_deref(), &to_csv(&trace_boundary(&h, samples)?))?;
        }
        Command::Example {
            family,
            nu,
            r,
            beta,
            omega,
            den,
            m,
            out,
        } => {
            let family = match family {
                FamilyArg::HNu => Family::HNu { nu, r },
                FamilyArg::Geodesic => Family::Geodesic {
                    beta: parse_complex(&beta)?,
                },
                FamilyArg::Superficial => {
                    let den = io::poly_from_json(&den)?;
                    let m = m.unwrap_or(den.degree().unwrap_or(0));
                    Family::Superficial {
                        omega: parse_complex(&omega)?,
                        den,
                        m,
                    }
                }
            };
            let h = canonical_example(&family, &tol)?;
            emit(out.as_deref(), &io::inner_to_json(&h))?;
        }
        Command::Witness {
            file,
            out_plus,
            out_minus,
        } => {
            let h = load(&file, &tol)?;
            let (_, plus, minus) = witness_non_extreme(&h)?;
            emit(Some(&out_plus), &io::inner_to_json(&plus))?;
            emit(Some(&out_minus), &io::inner_to_json(&minus))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
