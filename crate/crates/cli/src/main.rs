//! `theta-means`: evaluate the special functions, run identity checks,
//! trace mean iterations and write verification reports.

mod literal;

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use theta_means::hypergeometric::{hgf, HParams};
use theta_means::means::{limit_via_hgf, mu1, mu2, mu_iterate, ITERATE_CAP, ITERATE_TOL};
use theta_means::theta::{lambda_map, theta_pq, zeta_map, Tau, THETA_TOL};
use theta_means::verify::{self, CheckOutcome, IdentityReport, CATALOG, DEFAULT_SEED};
use theta_means::{Cx, Error};

use literal::{fmt_complex, fmt_real, parse_complex};

const TOL_ENV: &str = "THETA_MEANS_TOL";

#[derive(Parser)]
#[command(name = "theta-means", version, about = "Theta constants, hypergeometric functions and compound means")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function and print its value with diagnostics.
    Eval {
        #[command(subcommand)]
        kind: EvalKind,
    },
    /// Run one identity check and print its report record.
    Check {
        /// Identity id; see the list below.
        id: String,
        /// Number of samples (catalog default if omitted).
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Pass threshold; overrides THETA_MEANS_TOL and the catalog value.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_tolerance)]
        tol: Option<f64>,
    },
    /// Run the (mu1, mu2) iteration from (x, y) and compare its limit with
    /// the hypergeometric expression.
    Iterate {
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, allow_hyphen_values = true)]
        y: f64,
        /// Print every iterate.
        #[arg(long)]
        trace: bool,
    },
    /// Run several identity checks with default settings and write one record each.
    #[command(group(ArgGroup::new("which").required(true).args(["all", "only"])))]
    Report {
        /// Every identity in the catalog.
        #[arg(long)]
        all: bool,
        /// Comma-separated identity ids.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Output file (standard output if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum EvalKind {
    /// Gauss hypergeometric function F(a, b, c; z).
    Hgf {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        a: Cx,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        b: Cx,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        c: Cx,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Cx,
    },
    /// Theta constant theta_pq(tau), p, q in {0, 1}.
    Theta {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        p: u8,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        q: u8,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        tau: Cx,
    },
    /// lambda(tau) = theta_10^4 / theta_00^4.
    Lambda {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        tau: Cx,
    },
    /// zeta(tau) = 4 theta_01^4 theta_10^4 / theta_00^8.
    Zeta {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        tau: Cx,
    },
    /// mu1(x, y) on -x < y.
    Mu1 {
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, allow_hyphen_values = true)]
        y: f64,
    },
    /// mu2(x, y) on -x < y.
    Mu2 {
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, allow_hyphen_values = true)]
        y: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Failure of a command, mapped onto the exit code.
enum Failure {
    Usage(String),
    Domain(Error),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Domain(_) => 3,
            Failure::Io(_) => 4,
        }
    }
}

/// Library errors are argument values the mathematics rejects.
impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn io_failure(e: impl std::fmt::Display) -> Failure {
    Failure::Io(e.to_string())
}

fn identity_list() -> String {
    let mut s = String::from("Identities (default samples, tolerance, sampling region):\n");
    for c in CATALOG {
        s.push_str(&format!("  {:<18} {:>5}  {:<6e}  {}\n", c.id, c.samples, c.tolerance, c.region));
    }
    s.push_str(&format!("\n{TOL_ENV} overrides every default tolerance."));
    s
}

fn main() -> ExitCode {
    let list = identity_list();
    let cmd = Cli::command()
        .mut_subcommand("check", |c| c.after_long_help(list.clone()))
        .mut_subcommand("report", |c| c.after_long_help(list.clone()));
    let cli = match cmd.try_get_matches().and_then(|m| Cli::from_arg_matches(&m)) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            match &f {
                Failure::Usage(m) => eprintln!("error: {m}"),
                Failure::Domain(e) => eprintln!("error: {e}"),
                Failure::Io(m) => eprintln!("I/O error: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}

/// `Ok(false)` when some identity check failed.
fn run(command: Command) -> Result<bool, Failure> {
    match command {
        Command::Eval { kind } => eval(kind).map(|()| true),
        Command::Check { id, samples, seed, tol } => {
            let tol = match tol {
                Some(t) => Some(t),
                None => env_tolerance()?,
            };
            if verify::find(&id).is_none() {
                return Err(Failure::Usage(format!("unknown identity id {id:?}")));
            }
            if samples == Some(0) {
                return Err(Failure::Usage("--samples must be positive".into()));
            }
            let outcome = verify::run_check(&id, samples, seed, tol)?;
            print_diagnostics(&outcome);
            let line = serde_json::to_string(&outcome.report).map_err(io_failure)?;
            println!("{line}");
            Ok(outcome.report.passed)
        }
        Command::Iterate { x, y, trace } => iterate(x, y, trace).map(|()| true),
        Command::Report { all, only, format, out } => {
            let ids: Vec<String> = if all { CATALOG.iter().map(|c| c.id.to_string()).collect() } else { only };
            if let Some(bad) = ids.iter().find(|id| verify::find(id).is_none()) {
                return Err(Failure::Usage(format!("unknown identity id {bad:?}")));
            }
            let tol = env_tolerance()?;
            let mut reports = Vec::with_capacity(ids.len());
            for id in &ids {
                let outcome = verify::run_check(id, None, DEFAULT_SEED, tol)?;
                print_diagnostics(&outcome);
                reports.push(outcome.report);
            }
            let text = render(&reports, format)?;
            match out {
                Some(path) => File::create(&path)
                    .and_then(|mut f| f.write_all(text.as_bytes()))
                    .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
                None => io::stdout().write_all(text.as_bytes()).map_err(io_failure)?,
            }
            Ok(reports.iter().all(|r| r.passed))
        }
    }
}

fn parse_tolerance(s: &str) -> Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(t) if t >= 0.0 => Ok(t),
        _ => Err(format!("{s:?} is not a non-negative number")),
    }
}

fn env_tolerance() -> Result<Option<f64>, Failure> {
    match std::env::var(TOL_ENV) {
        Ok(s) => parse_tolerance(&s).map(Some).map_err(|m| Failure::Usage(format!("{TOL_ENV}: {m}"))),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(Failure::Usage(format!("{TOL_ENV}: {e}"))),
    }
}

fn print_diagnostics(outcome: &CheckOutcome) {
    let r = &outcome.report;
    eprintln!(
        "{}: {} (max_rel_err {:e}, tolerance {:e}, skipped {})",
        r.identity_id,
        if r.passed { "passed" } else { "FAILED" },
        r.max_rel_err,
        r.tolerance,
        outcome.skipped
    );
    for e in &outcome.errors {
        eprintln!("  sample error: {e}");
    }
}

fn render(reports: &[IdentityReport], format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(reports).map_err(io_failure)?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in reports {
                w.serialize(r).map_err(io_failure)?;
            }
            let bytes = w.into_inner().map_err(io_failure)?;
            String::from_utf8(bytes).map_err(io_failure)
        }
    }
}

fn eval(kind: EvalKind) -> Result<(), Failure> {
    match kind {
        EvalKind::Hgf { a, b, c, z } => {
            let v = hgf(&HParams::new(a, b, c)?, z)?;
            println!("value = {}", fmt_complex(v.value));
            println!("terms_used = {}", v.terms_used);
            println!("path_note = {}", v.path_note);
        }
        EvalKind::Theta { p, q, tau } => {
            let v = theta_pq(p, q, Tau::new(tau)?, THETA_TOL)?;
            println!("value = {}", fmt_complex(v));
        }
        EvalKind::Lambda { tau } => println!("value = {}", fmt_complex(lambda_map(Tau::new(tau)?)?)),
        EvalKind::Zeta { tau } => println!("value = {}", fmt_complex(zeta_map(Tau::new(tau)?)?)),
        EvalKind::Mu1 { x, y } => println!("value = {}", fmt_real(mu1(x, y)?)),
        EvalKind::Mu2 { x, y } => println!("value = {}", fmt_real(mu2(x, y)?)),
    }
    Ok(())
}

fn iterate(x: f64, y: f64, trace: bool) -> Result<(), Failure> {
    let t = mu_iterate(x, y, ITERATE_TOL, ITERATE_CAP)?;
    if trace {
        println!("{:>3}  {:>22}  {:>22}  {:>22}", "n", "x_n", "y_n", "x_n - y_n");
        for (n, &(a, b)) in t.pairs.iter().enumerate() {
            println!("{n:>3}  {:>22}  {:>22}  {:>22}", fmt_real(a), fmt_real(b), fmt_real(a - b));
        }
    }
    println!("limit = {}", fmt_real(t.limit));
    println!("limit_via_hgf = {}", fmt_real(limit_via_hgf(&t)?));
    println!("n_index = {}", t.n_index);
    println!("iterations = {}", t.iterations);
    Ok(())
}
