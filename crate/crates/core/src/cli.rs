//! Command-line front end: weight tables, the `zeta` curve and the
//! verification report.
//!
//! Exit codes: 0 success, 1 numerical failure, 2 usage error.

use crate::error::Error;
use crate::models::{ModelKind, ModelProblem};
use crate::rational_fit::RationalFit;
use crate::verify::{self, CheckOutcome};
use crate::weights::{Discretized, ExtraKnots, Method, WeightTable};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NUMERICAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Smallest accepted `--grid`.
pub const MIN_GRID: usize = 100;
/// Scale and shift of the display column, as in the published figure.
const DISPLAY_SCALE: f64 = 10.0;
const DISPLAY_SHIFT: f64 = 1.5;

#[derive(Debug, Parser)]
#[command(
    name = "heller",
    version,
    about = "Derivative weights for discretized continua"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Weight table, one row per eigenvalue.
    Weights(WeightsArgs),
    /// Interpolated zeta(x) and its slope on a grid, plus the knots (CSV).
    ZetaCurve(CurveArgs),
    /// Run the reference checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelChoice {
    ChebyshevMod,
    Pwke,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KnotChoice {
    /// Drop the extra knot at the largest submatrix eigenvalue.
    Published,
    All,
}

impl From<KnotChoice> for ExtraKnots {
    fn from(k: KnotChoice) -> Self {
        match k {
            KnotChoice::Published => ExtraKnots::SkipLast,
            KnotChoice::All => ExtraKnots::All,
        }
    }
}

#[derive(Debug, Args)]
struct ModelArgs {
    #[arg(long, value_enum, default_value_t = ModelChoice::ChebyshevMod)]
    model: ModelChoice,
    /// First diagonal element (chebyshev-mod).
    #[arg(long = "A", default_value_t = 1.0 / 3.0, allow_negative_numbers = true)]
    a: f64,
    /// First off-diagonal element (chebyshev-mod).
    #[arg(long = "B", default_value_t = 1.0 / 3.0, allow_negative_numbers = true)]
    b: f64,
    /// Angular momentum (pwke).
    #[arg(long, default_value_t = 1)]
    ell: u32,
    /// Laguerre basis scale (pwke).
    #[arg(long, default_value_t = 1.3)]
    lambda: f64,
    /// Matrix size; 10 for chebyshev-mod and 5 for pwke when omitted.
    #[arg(long = "N")]
    n: Option<usize>,
    /// Extra knots entering the interpolation schemes.
    #[arg(long, value_enum, default_value_t = KnotChoice::Published)]
    knots: KnotChoice,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct WeightsArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Comma-separated methods, or `all` for every method the model supports.
    #[arg(long, default_value = "all")]
    methods: String,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Debug, Args)]
struct CurveArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Number of curve points.
    #[arg(long, default_value_t = 1000)]
    grid: usize,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Run a single check.
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(verify::CHECKS))]
    check: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Validated settings for one invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub model: ModelProblem,
    pub n: usize,
    pub methods: Vec<Method>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub grid: usize,
    pub knots: ExtraKnots,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Numerical(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numerical(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

impl ModelArgs {
    fn problem(&self) -> CliResult<ModelProblem> {
        let built = match self.model {
            ModelChoice::ChebyshevMod => ModelProblem::chebyshev_modified(self.a, self.b),
            ModelChoice::Pwke => ModelProblem::partial_wave(self.ell, self.lambda),
        };
        built.map_err(|e| Failure::Usage(e.to_string()))
    }

    fn size(&self) -> CliResult<usize> {
        let n = self.n.unwrap_or(match self.model {
            ModelChoice::ChebyshevMod => 10,
            ModelChoice::Pwke => 5,
        });
        if n < 2 {
            return Err(Failure::Usage(format!("--N must be at least 2, got {n}")));
        }
        Ok(n)
    }
}

fn parse_methods(list: &str, model: &ModelProblem) -> CliResult<Vec<Method>> {
    if list.trim() == "all" {
        return Ok(Method::ALL
            .into_iter()
            .filter(|m| m.supports(model))
            .collect());
    }
    let mut methods = Vec::new();
    for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let m: Method = name
            .parse()
            .map_err(|e: Error| Failure::Usage(e.to_string()))?;
        if !m.supports(model) {
            return Err(Failure::Usage(format!(
                "method {m} is not available for model {}",
                model.kind().name()
            )));
        }
        if !methods.contains(&m) {
            methods.push(m);
        }
    }
    if methods.is_empty() {
        return Err(Failure::Usage("--methods is empty".into()));
    }
    Ok(methods)
}

impl RunConfig {
    fn for_weights(args: &WeightsArgs) -> CliResult<Self> {
        let model = args.model.problem()?;
        let n = args.model.size()?;
        let methods = parse_methods(&args.methods, &model)?;
        if n < 3
            && methods
                .iter()
                .any(|m| matches!(m, Method::Broad | Method::JmatrixInterp))
        {
            return Err(Failure::Usage(
                "interpolation schemes need --N of at least 3".into(),
            ));
        }
        Ok(Self {
            model,
            n,
            methods,
            format: args.format,
            out: args.model.out.clone(),
            grid: 0,
            knots: args.model.knots.into(),
        })
    }

    fn for_curve(args: &CurveArgs) -> CliResult<Self> {
        if args.model.model != ModelChoice::ChebyshevMod {
            return Err(Failure::Usage(
                "zeta-curve is only defined for --model chebyshev-mod".into(),
            ));
        }
        let model = args.model.problem()?;
        let n = args.model.size()?;
        if n < 3 {
            return Err(Failure::Usage(format!(
                "zeta-curve needs --N >= 3, got {n}"
            )));
        }
        if args.grid < MIN_GRID {
            return Err(Failure::Usage(format!(
                "--grid must be at least {MIN_GRID}, got {}",
                args.grid
            )));
        }
        Ok(Self {
            model,
            n,
            methods: vec![Method::JmatrixInterp],
            format: Format::Csv,
            out: args.model.out.clone(),
            grid: args.grid,
            knots: args.model.knots.into(),
        })
    }

    /// Decimals shown in table output.
    pub fn display_decimals(&self) -> usize {
        match self.model.kind() {
            ModelKind::ChebyshevModified { .. } => 6,
            ModelKind::PartialWave { .. } => 8,
        }
    }
}

/// 17 significant digits, locale independent.
fn csv_number(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn render_csv(table: &WeightTable) -> String {
    let mut s = String::from("mu,eps");
    for m in table.methods() {
        let _ = write!(s, ",{m}");
    }
    s.push('\n');
    for (mu, e, row) in table.rows() {
        let _ = write!(s, "{mu},{}", csv_number(e));
        for v in row {
            let _ = write!(s, ",{}", csv_number(v));
        }
        s.push('\n');
    }
    s
}

pub fn render_table(table: &WeightTable, decimals: usize) -> String {
    let width = (decimals + 5).max(
        table
            .methods()
            .iter()
            .map(|m| m.name().len())
            .max()
            .unwrap_or(0),
    );
    let mut s = format!("{:>3}  {:>width$}", "mu", "eps");
    for m in table.methods() {
        let _ = write!(s, "  {:>width$}", m.name());
    }
    s.push('\n');
    for (mu, e, row) in table.rows() {
        let _ = write!(s, "{mu:>3}  {e:>width$.decimals$}");
        for v in row {
            let _ = write!(s, "  {v:>width$.decimals$}");
        }
        s.push('\n');
    }
    s
}

pub fn cmd_weights(config: &RunConfig) -> crate::Result<String> {
    let d = Discretized::new(&config.model, config.n)?;
    let table = d.table(&config.methods, config.knots)?;
    Ok(match config.format {
        Format::Csv => render_csv(&table),
        Format::Table => render_table(&table, config.display_decimals()),
    })
}

/// CSV rows `kind,x,zeta,dzeta_dx,display,fitted` for the interpolated
/// `zeta(x)` on `[0, N - 1]`, followed by the eigenvalue and fractional knots.
pub fn cmd_zeta_curve(config: &RunConfig) -> crate::Result<String> {
    let d = Discretized::new(&config.model, config.n)?;
    let fit = RationalFit::fit(&d.jmatrix_knots(config.knots)?)?;
    let top = (config.n - 1) as f64;
    let mut s = String::from("kind,x,zeta,dzeta_dx,display,fitted\n");
    let row = |s: &mut String, kind: &str, x: f64, zeta: f64, fitted: &str| {
        let (_, slope) = fit.eval_deriv(x)?;
        let _ = writeln!(
            s,
            "{kind},{},{},{},{},{fitted}",
            csv_number(x),
            csv_number(zeta),
            csv_number(slope),
            csv_number(slope * DISPLAY_SCALE - DISPLAY_SHIFT)
        );
        crate::Result::Ok(())
    };
    for i in 0..config.grid {
        let x = top * i as f64 / (config.grid - 1) as f64;
        let zeta = fit.eval(x)?;
        row(&mut s, "curve", x, zeta, "")?;
    }
    for (mu, &e) in d.eigenvalues().iter().enumerate() {
        row(&mut s, "eigen", mu as f64, e, "true")?;
    }
    let extra = d.jmatrix_extra_knots()?;
    let used = match config.knots {
        ExtraKnots::SkipLast => extra.len() - 1,
        ExtraKnots::All => extra.len(),
    };
    for (k, &(x, e)) in extra.iter().enumerate() {
        row(
            &mut s,
            "tilde",
            x,
            e,
            if k < used { "true" } else { "false" },
        )?;
    }
    Ok(s)
}

/// Report lines and whether every check passed.
pub fn cmd_verify(check: Option<&str>) -> Option<(String, bool)> {
    let outcomes: Vec<CheckOutcome> = match check {
        Some(name) => verify::run_check(name)?,
        None => verify::run_all(),
    };
    let all = outcomes.iter().all(|o| o.passed);
    let mut s = String::new();
    for o in &outcomes {
        let _ = writeln!(s, "{o}");
    }
    Some((s, all))
}

fn emit(out: Option<&PathBuf>, text: &str) -> CliResult<()> {
    let written = match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    written.map_err(|e| Failure::Usage(format!("cannot write output: {e}")))
}

fn dispatch(cli: Cli) -> CliResult<i32> {
    match cli.command {
        Command::Weights(args) => {
            let config = RunConfig::for_weights(&args)?;
            let text = cmd_weights(&config)?;
            emit(config.out.as_ref(), &text)?;
            Ok(EXIT_OK)
        }
        Command::ZetaCurve(args) => {
            let config = RunConfig::for_curve(&args)?;
            let text = cmd_zeta_curve(&config)?;
            emit(config.out.as_ref(), &text)?;
            Ok(EXIT_OK)
        }
        Command::Verify(args) => {
            let (text, passed) = cmd_verify(args.check.as_deref())
                .ok_or_else(|| Failure::Usage("unknown check".into()))?;
            emit(args.out.as_ref(), &text)?;
            Ok(if passed { EXIT_OK } else { EXIT_NUMERICAL })
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Numerical(e)) => {
            eprintln!("numerical failure: {e}");
            EXIT_NUMERICAL
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("heller").chain(args.iter().copied())).unwrap()
    }

    fn weights_config(args: &[&str]) -> CliResult<RunConfig> {
        match parse(args).command {
            Command::Weights(w) => RunConfig::for_weights(&w),
            _ => unreachable!(),
        }
    }

    #[test]
    fn methods_all_depends_on_model() {
        let c = weights_config(&["weights"]).unwrap();
        assert_eq!(c.methods, Method::ALL.to_vec());
        let c = weights_config(&["weights", "--model", "pwke"]).unwrap();
        assert!(!c.methods.contains(&Method::Broad));
        assert_eq!(c.n, 5);
        assert_eq!(c.display_decimals(), 8);
    }

    #[test]
    fn usage_errors() {
        assert!(matches!(
            weights_config(&["weights", "--model", "pwke", "--methods", "broad"]),
            Err(Failure::Usage(_))
        ));
        assert!(matches!(
            weights_config(&["weights", "--methods", "nope"]),
            Err(Failure::Usage(_))
        ));
        assert!(matches!(
            weights_config(&["weights", "--N", "1"]),
            Err(Failure::Usage(_))
        ));
        assert!(matches!(
            weights_config(&["weights", "--B", "0"]),
            Err(Failure::Usage(_))
        ));
        for args in [
            &["zeta-curve", "--grid", "50"][..],
            &["zeta-curve", "--model", "pwke"],
        ] {
            let Command::ZetaCurve(a) = parse(args).command else {
                unreachable!()
            };
            assert!(matches!(RunConfig::for_curve(&a), Err(Failure::Usage(_))));
        }
        assert!(Cli::try_parse_from(["heller", "frobnicate"]).is_err());
    }

    #[test]
    fn csv_is_full_precision() {
        let c = weights_config(&["weights", "--methods", "oracle", "--format", "csv"]).unwrap();
        let text = cmd_weights(&c).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("mu,eps,oracle"));
        let row4: Vec<f64> = lines
            .nth(4)
            .unwrap()
            .split(',')
            .map(|v| v.parse().unwrap())
            .collect();
        assert_eq!(row4[0], 4.0);
        assert!((row4[2] - 0.286976).abs() < 5e-7);
        assert_eq!(text, cmd_weights(&c).unwrap());
    }

    #[test]
    fn chebyshev_closed_form_rows() {
        let c = weights_config(&[
            "weights",
            "--A",
            "0",
            "--B",
            "0.5",
            "--methods",
            "jmatrix-exact",
            "--format",
            "csv",
        ])
        .unwrap();
        let text = cmd_weights(&c).unwrap();
        for (mu, line) in text.lines().skip(1).enumerate() {
            let w: f64 = line.split(',').nth(2).unwrap().parse().unwrap();
            let h = std::f64::consts::PI / 11.0;
            assert!((w - h * ((mu as f64 + 1.0) * h).sin()).abs() < 1e-12);
        }
    }

    #[test]
    fn zeta_curve_knots() {
        let c = match parse(&["zeta-curve"]).command {
            Command::ZetaCurve(a) => RunConfig::for_curve(&a).unwrap(),
            _ => unreachable!(),
        };
        let text = cmd_zeta_curve(&c).unwrap();
        let knots: Vec<&str> = text
            .lines()
            .skip(1)
            .filter(|l| !l.starts_with("curve"))
            .collect();
        assert_eq!(knots.len(), 19);
        assert_eq!(knots.iter().filter(|l| l.starts_with("eigen")).count(), 10);
        assert_eq!(
            text.lines().filter(|l| l.starts_with("curve")).count(),
            1000
        );

        let d = Discretized::new(&c.model, c.n).unwrap();
        let interp = d.jmatrix_interp(ExtraKnots::SkipLast).unwrap();
        for (mu, line) in knots.iter().take(10).enumerate() {
            let f: Vec<&str> = line.split(',').collect();
            assert_eq!(f[2].parse::<f64>().unwrap(), d.eigenvalues()[mu]);
            assert_eq!(f[3].parse::<f64>().unwrap(), interp[mu]);
        }
    }
}
