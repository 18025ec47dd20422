//! Command-line front end: CSV sweeps, optimal-density report and the
//! analytic-versus-simulation validation run.
//!
//! Exit codes: 0 success, 1 validation disagreement, 2 usage error,
//! 3 numerical failure.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::analytic::{
    ase, ase_lower, ase_upper, cp_exact, cp_g1_lower, cp_g1_upper, cp_g2_lower, cp_g2_upper,
    optimal_density_closed, optimal_density_numeric, AseObjective, DensitySearch,
    QuadratureSpec,
};
use crate::error::Error;
use crate::mc::{estimate_cp, SimParams, DEFAULT_TRIALS, DEFAULT_WINDOW_K};
use crate::model::{db_to_linear, DerivedConstants, NetworkConfig, PathlossModel};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISAGREEMENT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Smallest trial count accepted by `validate`.
pub const MIN_VALIDATE_TRIALS: usize = 10_000;

#[derive(Debug, Parser)]
#[command(
    name = "cellscale",
    version,
    about = "Coverage and area spectral efficiency of dense cellular networks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coverage probability against BS density.
    CpSweep(SweepArgs),
    /// Area spectral efficiency against BS density, with bounds and the rate envelope.
    AseSweep(SweepArgs),
    /// ASE-maximizing density, numeric per model and closed form for the upper bound.
    OptimalDensity(SweepArgs),
    /// Compares analytic coverage with Monte Carlo estimates on a density grid.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Pathloss exponent (> 2).
    #[arg(long, default_value_t = 4.0, allow_negative_numbers = true)]
    pub alpha: f64,
    /// SIR thresholds in dB, comma separated.
    #[arg(long = "tau-db", value_delimiter = ',', allow_negative_numbers = true)]
    pub tau_db: Option<Vec<f64>>,
    /// BS transmit power in dBm. Cancels in every SIR.
    #[arg(long = "p-bs", default_value_t = 20.0, allow_negative_numbers = true)]
    pub p_bs: f64,
    /// Pathloss models, comma separated: upm, g1, g2, minb.
    #[arg(long, value_delimiter = ',')]
    pub model: Option<Vec<PathlossModel>>,
    #[arg(long = "lambda-min", allow_negative_numbers = true)]
    pub lambda_min: Option<f64>,
    #[arg(long = "lambda-max", allow_negative_numbers = true)]
    pub lambda_max: Option<f64>,
    /// Number of log-spaced densities.
    #[arg(long)]
    pub points: Option<usize>,
    /// Monte Carlo trials per point (0 disables simulation).
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Simulation window radius in typical cell radii.
    #[arg(long = "window-k", default_value_t = DEFAULT_WINDOW_K, allow_negative_numbers = true)]
    pub window_k: f64,
    /// Output path, or `stdout`.
    #[arg(long, default_value = "stdout")]
    pub output: String,
    /// Quadrature relative tolerance.
    #[arg(long = "rel-tol", default_value_t = 1e-11, allow_negative_numbers = true)]
    pub rel_tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub sweep: SweepArgs,
    /// Pathloss model used by the simulator when it should differ from --model.
    #[arg(long = "mc-model")]
    pub mc_model: Option<PathlossModel>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Numerical(String),
    Io(io::Error),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn numerical(lambda: f64, e: Error) -> CliError {
    CliError::Numerical(format!("at lambda = {lambda:e}: {e}"))
}

/// Resolved sweep settings shared by every subcommand.
#[derive(Debug, Clone)]
struct Settings {
    alpha: f64,
    tau_db: Vec<f64>,
    tau_defaulted: bool,
    p_bs_mw: f64,
    models: Vec<PathlossModel>,
    lambdas: Vec<f64>,
    trials: usize,
    seed: u64,
    window_k: f64,
    quad: QuadratureSpec,
}

struct Defaults {
    tau_db: &'static [f64],
    models: &'static [PathlossModel],
    lambda_min: f64,
    lambda_max: f64,
    points: usize,
    trials: usize,
}

const ALL_ANALYTIC: &[PathlossModel] = &[
    PathlossModel::Unbounded,
    PathlossModel::BoundedG1,
    PathlossModel::BoundedG2,
];

const CP_DEFAULTS: Defaults = Defaults {
    tau_db: &[0.0, 10.0],
    models: ALL_ANALYTIC,
    lambda_min: 1e-6,
    lambda_max: 10.0,
    points: 40,
    trials: 0,
};

const ASE_DEFAULTS: Defaults = Defaults {
    tau_db: &[10.0],
    models: ALL_ANALYTIC,
    lambda_min: 1e-4,
    lambda_max: 10.0,
    points: 40,
    trials: 0,
};

const OPT_DEFAULTS: Defaults = Defaults {
    tau_db: &[10.0],
    models: &[PathlossModel::BoundedG1, PathlossModel::BoundedG2],
    lambda_min: 1e-4,
    lambda_max: 10.0,
    points: 1,
    trials: 0,
};

const VALIDATE_DEFAULTS: Defaults = Defaults {
    tau_db: &[10.0],
    models: ALL_ANALYTIC,
    lambda_min: 1e-3,
    lambda_max: 2.0,
    points: 6,
    trials: DEFAULT_TRIALS,
};

/// `n` log-spaced values from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| {
            if i == 0 {
                lo
            } else if i + 1 == n {
                hi
            } else {
                (a + (b - a) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

fn usage(flag: &str, msg: &str) -> CliError {
    CliError::Usage(format!("--{flag}: {msg}"))
}

fn resolve(args: &SweepArgs, d: &Defaults) -> CliResult<Settings> {
    if !(args.alpha > 2.0 && args.alpha.is_finite()) {
        return Err(usage("alpha", "pathloss exponent must be finite and > 2"));
    }
    let tau_defaulted = args.tau_db.is_none();
    let tau_db = args.tau_db.clone().unwrap_or_else(|| d.tau_db.to_vec());
    if tau_db.is_empty() || tau_db.iter().any(|t| !t.is_finite()) {
        return Err(usage("tau-db", "thresholds must be finite dB values"));
    }
    if !args.p_bs.is_finite() {
        return Err(usage("p-bs", "must be a finite dBm value"));
    }
    let models = args.model.clone().unwrap_or_else(|| d.models.to_vec());
    if models.is_empty() {
        return Err(usage("model", "at least one model is required"));
    }
    let lambda_min = args.lambda_min.unwrap_or(d.lambda_min);
    let lambda_max = args.lambda_max.unwrap_or(d.lambda_max);
    if !(lambda_min > 0.0 && lambda_min.is_finite()) {
        return Err(usage("lambda-min", "must be finite and > 0"));
    }
    if !(lambda_max >= lambda_min && lambda_max.is_finite()) {
        return Err(usage("lambda-max", "must be finite and >= --lambda-min"));
    }
    let points = args.points.unwrap_or(d.points);
    if points == 0 {
        return Err(usage("points", "must be >= 1"));
    }
    if !(args.window_k > 0.0 && args.window_k.is_finite()) {
        return Err(usage("window-k", "must be finite and > 0"));
    }
    let quad = QuadratureSpec::adaptive(args.rel_tol)
        .map_err(|_| usage("rel-tol", "must lie in (0, 1e-7]"))?;
    Ok(Settings {
        alpha: args.alpha,
        tau_db,
        tau_defaulted,
        p_bs_mw: db_to_linear(args.p_bs),
        models,
        lambdas: log_grid(lambda_min, lambda_max, points),
        trials: args.trials.unwrap_or(d.trials),
        seed: args.seed,
        window_k: args.window_k,
        quad,
    })
}

fn open_output<'a>(path: &str, stdout: &'a mut dyn Write) -> CliResult<Box<dyn Write + 'a>> {
    if path == "stdout" || path == "-" {
        Ok(Box::new(stdout))
    } else {
        let f = File::create(PathBuf::from(path))
            .map_err(|e| usage("output", &format!("cannot create '{path}': {e}")))?;
        Ok(Box::new(BufWriter::new(f)))
    }
}

/// Twelve significant digits; empty for values that were not computed.
fn fmt_num(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.11e}")).unwrap_or_default()
}

/// One CSV record of a density sweep.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepRow {
    pub tau_db: f64,
    pub lambda_bs: f64,
    pub model: String,
    pub cp_analytic: Option<f64>,
    pub cp_lower: Option<f64>,
    pub cp_upper: Option<f64>,
    pub cp_mc_mean: Option<f64>,
    pub cp_mc_stderr: Option<f64>,
    pub ase_analytic: Option<f64>,
    pub ase_upper: Option<f64>,
    pub ase_lower: Option<f64>,
    pub ase_mc_mean: Option<f64>,
    /// `lambda exp(-kappa_U lambda)`, the envelope of the upper bound.
    pub rate_fn: Option<f64>,
}

impl SweepRow {
    pub const HEADER: [&'static str; 13] = [
        "tau_db",
        "lambda_bs",
        "model",
        "cp_analytic",
        "cp_lower",
        "cp_upper",
        "cp_mc_mean",
        "cp_mc_stderr",
        "ase_analytic",
        "ase_upper",
        "ase_lower",
        "ase_mc_mean",
        "rate_fn",
    ];

    fn record(&self) -> Vec<String> {
        vec![
            format!("{}", self.tau_db),
            fmt_num(Some(self.lambda_bs)),
            self.model.clone(),
            fmt_num(self.cp_analytic),
            fmt_num(self.cp_lower),
            fmt_num(self.cp_upper),
            fmt_num(self.cp_mc_mean),
            fmt_num(self.cp_mc_stderr),
            fmt_num(self.ase_analytic),
            fmt_num(self.ase_upper),
            fmt_num(self.ase_lower),
            fmt_num(self.ase_mc_mean),
            fmt_num(self.rate_fn),
        ]
    }
}

fn sweep_row(
    s: &Settings,
    tau_db: f64,
    model: PathlossModel,
    lambda: f64,
    with_ase: bool,
) -> CliResult<SweepRow> {
    let cfg = NetworkConfig::new(lambda, s.alpha, db_to_linear(tau_db), s.p_bs_mw)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let num = |e| numerical(lambda, e);
    let mut row = SweepRow {
        tau_db,
        lambda_bs: lambda,
        model: model.tag().to_string(),
        ..SweepRow::default()
    };
    let cp = match model {
        PathlossModel::MinBounded => None,
        m => Some(cp_exact(&cfg, m, &s.quad).map_err(num)?),
    };
    row.cp_analytic = cp.map(|c| c.value);
    let bounds = match model {
        PathlossModel::BoundedG1 => Some((cp_g1_lower(&cfg), cp_g1_upper(&cfg))),
        PathlossModel::BoundedG2 => Some((cp_g2_lower(&cfg, &s.quad), cp_g2_upper(&cfg))),
        _ => None,
    };
    if let Some((lo, hi)) = bounds {
        row.cp_lower = Some(lo.map_err(num)?.value);
        row.cp_upper = Some(hi.map_err(num)?.value);
    }
    let mc = if s.trials > 0 {
        let p = SimParams::for_config(&cfg, model, s.window_k, s.trials, s.seed)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        Some(estimate_cp(&cfg, model, &p).map_err(num)?)
    } else {
        None
    };
    row.cp_mc_mean = mc.map(|e| e.mean);
    row.cp_mc_stderr = mc.map(|e| e.stderr);
    if with_ase {
        row.ase_analytic = cp.map(|c| ase(&cfg, c).value);
        if model.is_bounded() && model != PathlossModel::MinBounded {
            row.ase_upper = Some(ase_upper(&cfg).map_err(num)?.value.max(0.0));
            row.ase_lower = Some(ase_lower(&cfg).map_err(num)?.value.max(0.0));
        }
        row.ase_mc_mean = mc.map(|e| e.mean * lambda * cfg.rate());
        let k = DerivedConstants::for_config(&cfg).map_err(num)?;
        row.rate_fn = Some(lambda * (-k.kappa_upper * lambda).exp());
    }
    Ok(row)
}

fn run_sweep(s: &Settings, with_ase: bool, out: &mut dyn Write, command: &str) -> CliResult<()> {
    let taus: Vec<String> = s.tau_db.iter().map(|t| t.to_string()).collect();
    let note = if s.tau_defaulted {
        " (default thresholds, assumed)"
    } else {
        ""
    };
    writeln!(
        out,
        "# {command} alpha={} tau_db={}{note}",
        s.alpha,
        taus.join(",")
    )?;
    let mut jobs = Vec::new();
    for &t in &s.tau_db {
        for &m in &s.models {
            for &l in &s.lambdas {
                jobs.push((t, m, l));
            }
        }
    }
    let rows: Vec<CliResult<SweepRow>> = jobs
        .par_iter()
        .map(|&(t, m, l)| sweep_row(s, t, m, l, with_ase))
        .collect();
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SweepRow::HEADER).map_err(csv_err)?;
    for row in rows {
        w.write_record(row?.record()).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(io::Error::other(e))
}

fn run_optimal(s: &Settings, out: &mut dyn Write) -> CliResult<()> {
    let search = DensitySearch {
        lambda_lo: s.lambdas[0],
        lambda_hi: *s.lambdas.last().expect("non-empty grid"),
        ..DensitySearch::default()
    };
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "tau_db",
        "model",
        "lambda_star",
        "ase_at_lambda_star",
        "lambda_star_upper",
        "ase_at_lambda_star_upper",
        "relative_gap",
    ])
    .map_err(csv_err)?;
    for &tau_db in &s.tau_db {
        let tau = db_to_linear(tau_db);
        let closed = optimal_density_closed(s.alpha, tau).map_err(|e| numerical(f64::NAN, e))?;
        let template = NetworkConfig::new(closed, s.alpha, tau, s.p_bs_mw)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        for &model in &s.models {
            let objective = AseObjective::Exact(model);
            let star = optimal_density_numeric(&template, objective, &search, &s.quad).map_err(|e| {
                CliError::Numerical(format!("model {model}: {e}"))
            })?;
            let ase_star = crate::analytic::ase_exact(&template.with_lambda(star), model, &s.quad)
                .map_err(|e| numerical(star, e))?
                .value;
            let ase_closed = crate::analytic::ase_exact(&template.with_lambda(closed), model, &s.quad)
                .map_err(|e| numerical(closed, e))?
                .value;
            w.write_record([
                format!("{tau_db}"),
                model.tag().to_string(),
                fmt_num(Some(star)),
                fmt_num(Some(ase_star)),
                fmt_num(Some(closed)),
                fmt_num(Some(ase_closed)),
                fmt_num(Some((closed - star).abs() / star)),
            ])
            .map_err(csv_err)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// One analytic-versus-simulation comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationPoint {
    pub tau_db: f64,
    pub lambda_bs: f64,
    pub model: PathlossModel,
    pub mc_model: PathlossModel,
    pub cp_analytic: f64,
    pub cp_mc_mean: f64,
    pub cp_mc_stderr: f64,
    pub z_score: f64,
}

impl ValidationPoint {
    pub fn agrees(&self) -> bool {
        self.z_score.abs() <= 3.0
    }
}

fn run_validate(
    s: &Settings,
    mc_model: Option<PathlossModel>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<bool> {
    if s.trials < MIN_VALIDATE_TRIALS {
        return Err(usage(
            "trials",
            &format!("validation needs at least {MIN_VALIDATE_TRIALS} trials"),
        ));
    }
    if s.models.contains(&PathlossModel::MinBounded) {
        return Err(usage("model", "minb has no analytical coverage to validate against"));
    }
    let mut points = Vec::new();
    for &tau_db in &s.tau_db {
        for &model in &s.models {
            let sim_model = mc_model.unwrap_or(model);
            for &lambda in &s.lambdas {
                let cfg = NetworkConfig::new(lambda, s.alpha, db_to_linear(tau_db), s.p_bs_mw)
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                let cp = cp_exact(&cfg, model, &s.quad).map_err(|e| numerical(lambda, e))?;
                let p = SimParams::for_config(&cfg, sim_model, s.window_k, s.trials, s.seed)
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                let est = estimate_cp(&cfg, sim_model, &p).map_err(|e| numerical(lambda, e))?;
                points.push(ValidationPoint {
                    tau_db,
                    lambda_bs: lambda,
                    model,
                    mc_model: sim_model,
                    cp_analytic: cp.value,
                    cp_mc_mean: est.mean,
                    cp_mc_stderr: est.stderr,
                    z_score: est.z_score(cp.value),
                });
            }
        }
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "tau_db",
        "lambda_bs",
        "model",
        "mc_model",
        "cp_analytic",
        "cp_mc_mean",
        "cp_mc_stderr",
        "z_score",
        "agree",
    ])
    .map_err(csv_err)?;
    for p in &points {
        w.write_record([
            format!("{}", p.tau_db),
            fmt_num(Some(p.lambda_bs)),
            p.model.tag().to_string(),
            p.mc_model.tag().to_string(),
            fmt_num(Some(p.cp_analytic)),
            fmt_num(Some(p.cp_mc_mean)),
            fmt_num(Some(p.cp_mc_stderr)),
            format!("{:.3}", p.z_score),
            p.agrees().to_string(),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    let failing: Vec<&ValidationPoint> = points.iter().filter(|p| !p.agrees()).collect();
    for p in &failing {
        writeln!(
            err,
            "disagreement: model {} vs simulated {} at tau_db {} lambda {:e}: z = {:.3}",
            p.model, p.mc_model, p.tau_db, p.lambda_bs, p.z_score
        )?;
    }
    Ok(failing.is_empty())
}

/// Runs the command line `args` (including the program name), writing the
/// report to `out` (unless `--output` names a file) and diagnostics to `err`.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    return EXIT_OK;
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    let result = dispatch(cli.command, out, err);
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_DISAGREEMENT,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Numerical(msg)) => {
            let _ = writeln!(err, "numerical failure {msg}");
            EXIT_NUMERICAL
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "i/o error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<bool> {
    match cmd {
        Command::CpSweep(a) => {
            let s = resolve(&a, &CP_DEFAULTS)?;
            let mut o = open_output(&a.output, out)?;
            run_sweep(&s, false, &mut o, "cp-sweep")?;
            o.flush()?;
            Ok(true)
        }
        Command::AseSweep(a) => {
            let s = resolve(&a, &ASE_DEFAULTS)?;
            let mut o = open_output(&a.output, out)?;
            run_sweep(&s, true, &mut o, "ase-sweep")?;
            o.flush()?;
            Ok(true)
        }
        Command::OptimalDensity(a) => {
            let mut s = resolve(&a, &OPT_DEFAULTS)?;
            // The bracket is [lambda-min, lambda-max] regardless of --points.
            s.lambdas = vec![
                a.lambda_min.unwrap_or(OPT_DEFAULTS.lambda_min),
                a.lambda_max.unwrap_or(OPT_DEFAULTS.lambda_max),
            ];
            let mut o = open_output(&a.output, out)?;
            run_optimal(&s, &mut o)?;
            o.flush()?;
            Ok(true)
        }
        Command::Validate(a) => {
            let s = resolve(&a.sweep, &VALIDATE_DEFAULTS)?;
            let mut o = open_output(&a.sweep.output, out)?;
            let ok = run_validate(&s, a.mc_model, &mut o, err)?;
            o.flush()?;
            Ok(ok)
        }
    }
}
