mod fmt;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use ratekit::representations::eval_with;
use ratekit::verify::{self, CaseReport};
use ratekit::{Error, IntegralSpec, Method, Variant};

use report::{Format, Grid, GridParameter, Report, RunConfig, TableRow};

const DEFAULT_REL_TOL: f64 = 1e-11;

#[derive(Parser)]
#[command(
    name = "ratekit",
    version,
    about = "Evaluate and verify generalized reaction-rate integrals"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Human)]
    format: Format,
    /// Worker threads (default: RATEKIT_THREADS, then available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one integral.
    Eval {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        method: MethodArgs,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Seed for the random parameter draws.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Check one integral instead of random draws.
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Sweep b or beta over a grid.
    Table {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        method: MethodArgs,
        /// Grid over b as start:stop:count.
        #[arg(long, conflicts_with = "beta_grid", required_unless_present = "beta_grid")]
        b_grid: Option<String>,
        /// Grid over beta as start:stop:count.
        #[arg(long)]
        beta_grid: Option<String>,
        /// Space the grid points logarithmically.
        #[arg(long)]
        log_grid: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Repr,
    Ode,
    Limit,
    Identities,
    All,
}

#[derive(Args)]
struct SpecArgs {
    #[arg(long)]
    variant: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    delta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    rho: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    /// Upper limit of i2.
    #[arg(long)]
    cutoff: Option<f64>,
    /// Sets delta = m * rho.
    #[arg(long)]
    m: Option<u32>,
}

#[derive(Args)]
struct MethodArgs {
    /// auto, quadrature, contour or series.
    #[arg(long, default_value = "auto")]
    method: String,
    #[arg(long, default_value_t = DEFAULT_REL_TOL)]
    rel_tol: f64,
}

/// Failure carrying its exit status.
struct Fail {
    code: u8,
    message: String,
}

impl Fail {
    fn usage(message: impl Into<String>) -> Self {
        Fail {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail {
            code: if e.is_numeric() { 3 } else { 2 },
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Fail {
    fn from(e: std::io::Error) -> Self {
        Fail {
            code: 3,
            message: format!("writing output: {e}"),
        }
    }
}

impl SpecArgs {
    fn any_given(&self) -> bool {
        self.variant.is_some()
            || [self.alpha, self.a, self.b, self.delta, self.rho, self.beta, self.cutoff]
                .iter()
                .any(Option::is_some)
            || self.m.is_some()
    }

    /// Missing shape parameters default to 1; `--m` fixes `delta = m·rho`.
    fn build(&self) -> Result<IntegralSpec, Fail> {
        let variant: Variant = self
            .variant
            .as_deref()
            .ok_or_else(|| Fail::usage("--variant is required"))?
            .parse()?;
        let rho = self.rho.unwrap_or(1.0);
        let delta = match (self.m, self.delta) {
            (Some(m), Some(d)) if (d - m as f64 * rho).abs() > 1e-12 * d.abs() => {
                return Err(Fail::usage(format!("--delta {d} contradicts --m {m} with --rho {rho}")))
            }
            (Some(m), _) => m as f64 * rho,
            (None, d) => d.unwrap_or(1.0),
        };
        let spec = IntegralSpec {
            variant,
            alpha: self.alpha.unwrap_or(1.0),
            a: self.a.unwrap_or(1.0),
            b: self.b.unwrap_or(1.0),
            delta,
            rho,
            beta: self.beta,
            cutoff: self.cutoff,
        };
        match variant {
            Variant::I1Beta | Variant::I2Beta if spec.beta.is_none() => {
                return Err(Fail::usage(format!("--beta is required for {}", variant.as_str())))
            }
            Variant::I2 if spec.cutoff.is_none() => return Err(Fail::usage("--cutoff is required for i2")),
            _ => {}
        }
        spec.validate()?;
        Ok(spec)
    }
}

fn parse_method(args: &MethodArgs) -> Result<(Method, f64), Fail> {
    let method: Method = args.method.parse()?;
    if !(1e-13..=1e-2).contains(&args.rel_tol) {
        return Err(Fail::usage(format!(
            "--rel-tol must lie in [1e-13, 1e-2], got {}",
            args.rel_tol
        )));
    }
    Ok((method, args.rel_tol))
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>, Fail> {
    if let Some(n) = flag {
        return if n == 0 {
            Err(Fail::usage("--threads must be at least 1"))
        } else {
            Ok(Some(n))
        };
    }
    match std::env::var("RATEKIT_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Fail::usage(format!(
                "RATEKIT_THREADS must be a positive integer, got '{v}'"
            ))),
        },
        Err(_) => Ok(None),
    }
}

fn run(cli: Cli) -> Result<u8, Fail> {
    if let Some(n) = thread_count(cli.threads)? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Fail::usage(format!("cannot start thread pool: {e}")))?;
    }
    let format = cli.format;
    let mut out = std::io::stdout().lock();
    let code = match cli.command {
        Command::Eval { spec, method } => {
            let spec = spec.build()?;
            let (method, rel_tol) = parse_method(&method)?;
            let result = eval_with(&spec, method, rel_tol)?;
            let config = RunConfig::new("eval", format)
                .with_spec(spec)
                .with_method(method, rel_tol);
            let rows = vec![TableRow::new(&spec, &result)];
            report::write_rows(&mut out, &Report::rows(config, rows))?;
            0
        }
        Command::Verify { suite, seed, spec } => {
            let given = if spec.any_given() { Some(spec.build()?) } else { None };
            if given.is_some() && matches!(suite, Suite::Identities) {
                return Err(Fail::usage("the identities suite takes no integral parameters"));
            }
            let cases = run_suite(suite, seed, given.as_ref());
            let mut config = RunConfig::new(&format!("verify {}", suite_name(suite)), format).with_seed(seed);
            if let Some(s) = given {
                config = config.with_spec(s);
            }
            let report = Report::checks(config, cases);
            report::write_cases(&mut out, &report)?;
            if report.summary.failed == 0 {
                0
            } else {
                1
            }
        }
        Command::Table {
            mut spec,
            method,
            b_grid,
            beta_grid,
            log_grid,
        } => {
            let (parameter, text) = match (b_grid, beta_grid) {
                (Some(g), None) => (GridParameter::B, g),
                (None, Some(g)) => (GridParameter::Beta, g),
                _ => return Err(Fail::usage("give exactly one of --b-grid and --beta-grid")),
            };
            let grid = Grid::parse(parameter, &text, log_grid).map_err(Fail::usage)?;
            if parameter == GridParameter::Beta {
                // the grid supplies beta; the base spec only needs a valid one
                spec.beta = spec.beta.or(Some(grid.start));
            }
            let base = spec.build()?;
            if parameter == GridParameter::Beta && !matches!(base.variant, Variant::I1Beta | Variant::I2Beta) {
                return Err(Fail::usage("--beta-grid needs a pathway variant"));
            }
            let (method, rel_tol) = parse_method(&method)?;
            let specs: Vec<IntegralSpec> = grid
                .points()
                .into_iter()
                .map(|x| match parameter {
                    GridParameter::B => base.with_b(x),
                    GridParameter::Beta => base.with_beta(x),
                })
                .collect();
            for s in &specs {
                s.validate()?;
            }
            let rows: Vec<TableRow> = specs
                .par_iter()
                .map(|s| eval_with(s, method, rel_tol).map(|r| TableRow::new(s, &r)))
                .collect::<Result<_, Error>>()?;
            let config = RunConfig::new("table", format)
                .with_spec(base)
                .with_method(method, rel_tol)
                .with_grid(grid);
            report::write_rows(&mut out, &Report::rows(config, rows))?;
            0
        }
    };
    out.flush()?;
    Ok(code)
}

fn suite_name(suite: Suite) -> &'static str {
    match suite {
        Suite::Repr => "repr",
        Suite::Ode => "ode",
        Suite::Limit => "limit",
        Suite::Identities => "identities",
        Suite::All => "all",
    }
}

fn run_suite(suite: Suite, seed: u64, spec: Option<&IntegralSpec>) -> Vec<CaseReport> {
    match (suite, spec) {
        (Suite::Repr, None) => verify::repr_suite(seed),
        (Suite::Ode, None) => verify::ode_suite(seed),
        (Suite::Limit, None) => verify::limit_suite(seed),
        (Suite::Identities, _) => verify::identities_suite(seed),
        (Suite::All, None) => verify::all_suites(seed),
        (Suite::Repr, Some(s)) => vec![verify::repr_case(s, "given spec".into())],
        (Suite::Ode, Some(s)) => verify::ode_cases_for(s, seed),
        (Suite::Limit, Some(s)) => verify::limit_cases(s, "given spec"),
        (Suite::All, Some(s)) => {
            let mut cases = vec![verify::repr_case(s, "given spec".into())];
            cases.extend(verify::ode_cases_for(s, seed));
            cases.extend(verify::limit_cases(s, "given spec"));
            cases
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
