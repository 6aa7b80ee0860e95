//! Command-line front end of `thermal-jc`.
//!
//! Every command writes plain CSV (or, for `oracle-check`, a text report).
//! Exit codes: 0 success, 1 computation error, 2 invalid arguments, 3 oracle
//! tolerance breach.

pub mod format;

use std::f64::consts::PI;
use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use thermal_jc::oracle::{compare_with_analytic, FockBasis, X_FORM_TOLERANCE};
use thermal_jc::sweep::{
    robust_time_map, sweep_time_mpn, Grid1D, Measure, ModelDefaults, RobustWindow, SweepEngine,
};
use thermal_jc::thermal::TruncationSpec;
use thermal_jc::Error;

use format::{number, number_min_decimals, write_csv};

const SWEEP_HEADER: &str = "nbar1,nbar2,gt,d1,concurrence";
const ROBUST_HEADER: &str = "nbar1,nbar2,measure,gtau_over_pi,peak,present";

#[derive(Parser, Debug)]
#[command(name = "thermal-jc", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Discord and concurrence at a single point, as one CSV row.
    Measure(MeasureArgs),
    /// Discord and concurrence over a (nbar, gt) grid.
    Sweep(SweepArgs),
    /// Robust revival time gτ/π over a (nbar1, nbar2) grid.
    RobustMap(RobustMapArgs),
    /// Compare the analytic state with a brute-force Fock-space evolution.
    OracleCheck(OracleArgs),
}

/// Model options shared by all commands.
#[derive(Args, Debug)]
struct ModelOpts {
    /// Coupling ratio g2/g1 (times are given as g1 t).
    #[arg(long, default_value_t = 1.0)]
    g_ratio: f64,
    /// Neglected thermal weight per cavity in the photon-number series.
    #[arg(long, default_value = "1e-14")]
    epsilon: f64,
}

impl ModelOpts {
    fn defaults(&self) -> Result<ModelDefaults, Failure> {
        Ok(ModelDefaults {
            g_ratio: self.g_ratio,
            truncation: TruncationSpec::epsilon(self.epsilon)?,
        })
    }
}

#[derive(Args, Debug)]
struct RunOpts {
    /// Worker threads (defaults to one per core).
    #[arg(long, env = "THERMAL_JC_THREADS")]
    threads: Option<usize>,
    /// Write the CSV to this file instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct MeasureArgs {
    /// Mean photon number of cavity 1.
    #[arg(long)]
    nbar1: f64,
    /// Mean photon number of cavity 2.
    #[arg(long)]
    nbar2: f64,
    /// Dimensionless time g1 t (a trailing `pi` multiplies by π).
    #[arg(long, value_parser = real)]
    gt: f64,
    #[command(flatten)]
    model: ModelOpts,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct SweepArgs {
    /// First gt value.
    #[arg(long, value_parser = real, default_value = "0")]
    gt_start: f64,
    /// Last gt value (included when on the grid).
    #[arg(long, value_parser = real, default_value = "4pi")]
    gt_stop: f64,
    /// gt spacing.
    #[arg(long, value_parser = real, default_value = "0.05")]
    gt_step: f64,
    /// First mean photon number.
    #[arg(long, default_value_t = 0.0)]
    nbar_start: f64,
    /// Last mean photon number.
    #[arg(long, default_value_t = 1.0)]
    nbar_stop: f64,
    /// Mean photon number spacing.
    #[arg(long, default_value_t = 0.1)]
    nbar_step: f64,
    /// Only nbar1 = nbar2 instead of the full nbar1 x nbar2 grid.
    #[arg(long)]
    diagonal: bool,
    #[command(flatten)]
    model: ModelOpts,
    #[command(flatten)]
    run: RunOpts,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MeasureChoice {
    Discord,
    Concurrence,
    Both,
}

impl MeasureChoice {
    fn measures(self) -> &'static [Measure] {
        match self {
            MeasureChoice::Discord => &[Measure::Discord],
            MeasureChoice::Concurrence => &[Measure::Concurrence],
            MeasureChoice::Both => &[Measure::Discord, Measure::Concurrence],
        }
    }
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct RobustMapArgs {
    /// First mean photon number (both axes).
    #[arg(long, default_value_t = 0.0)]
    nbar_start: f64,
    /// Last mean photon number (both axes).
    #[arg(long, default_value_t = 0.5)]
    nbar_stop: f64,
    /// Mean photon number spacing (both axes).
    #[arg(long, default_value_t = 0.05)]
    nbar_step: f64,
    /// Which measure to locate the revival peak of.
    #[arg(long, value_enum, default_value_t = MeasureChoice::Discord)]
    measure: MeasureChoice,
    /// Search window start, in units of π.
    #[arg(long, default_value_t = RobustWindow::default().start)]
    window_start: f64,
    /// Search window end, in units of π.
    #[arg(long, default_value_t = RobustWindow::default().stop)]
    window_stop: f64,
    /// Search step, in units of π.
    #[arg(long, default_value_t = RobustWindow::default().step)]
    window_step: f64,
    /// Peaks below this value are reported as absent.
    #[arg(long, default_value_t = RobustWindow::default().presence)]
    presence: f64,
    #[command(flatten)]
    model: ModelOpts,
    #[command(flatten)]
    run: RunOpts,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct OracleArgs {
    /// Mean photon number of cavity 1.
    #[arg(long)]
    nbar1: f64,
    /// Mean photon number of cavity 2.
    #[arg(long)]
    nbar2: f64,
    /// First gt value.
    #[arg(long, value_parser = real, default_value = "0")]
    gt_start: f64,
    /// Last gt value.
    #[arg(long, value_parser = real, default_value = "4pi")]
    gt_stop: f64,
    /// gt spacing.
    #[arg(long, value_parser = real, default_value = "0.1")]
    gt_step: f64,
    /// Largest accepted coefficient deviation.
    #[arg(long, default_value_t = 1e-8)]
    tolerance: f64,
    /// Photon-number cutoff of both cavities (default: sized from nbar).
    #[arg(long)]
    ncut: Option<usize>,
    /// Worker threads (defaults to one per core).
    #[arg(long, env = "THERMAL_JC_THREADS")]
    threads: Option<usize>,
    #[command(flatten)]
    model: ModelOpts,
}

/// A real number, optionally followed by `pi` (`4pi`, `0.5*pi`, `pi`).
fn real(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let (body, scale) = match t.strip_suffix("pi").or_else(|| t.strip_suffix('π')) {
        Some(rest) => (rest.trim_end_matches('*').trim(), PI),
        None => (t, 1.0),
    };
    let value = if body.is_empty() {
        1.0
    } else {
        body.parse::<f64>().map_err(|e| format!("`{s}`: {e}"))?
    };
    Ok(value * scale)
}

enum Failure {
    Usage(String),
    Compute(String),
    Breach(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Compute(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Breach(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Compute(m) | Failure::Breach(m) => f.write_str(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParams(_) | Error::InvalidGrid(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Compute(format!("write failed: {e}"))
    }
}

/// Parses `args` (including the program name) and runs the command, returning
/// the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = match cli.command {
        Command::Measure(a) => cmd_measure(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::RobustMap(a) => cmd_robust_map(a),
        Command::OracleCheck(a) => cmd_oracle_check(a),
    };
    match result {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("thermal-jc: {f}");
            f.code()
        }
    }
}

fn sweep_row(nbar1: f64, nbar2: f64, gt: f64, d1: f64, concurrence: f64) -> String {
    [nbar1, nbar2, gt, d1, concurrence].map(number).join(",")
}

fn cmd_measure(a: MeasureArgs) -> Result<(), Failure> {
    let defaults = a.model.defaults()?;
    let m = defaults.measures(a.nbar1, a.nbar2, a.gt)?;
    let row = sweep_row(a.nbar1, a.nbar2, a.gt, m.d1, m.concurrence);
    write_csv(None, SWEEP_HEADER, &[row])?;
    Ok(())
}

fn cmd_sweep(a: SweepArgs) -> Result<(), Failure> {
    let defaults = a.model.defaults()?;
    let time = Grid1D::new(a.gt_start, a.gt_stop, a.gt_step)?;
    let nbar = Grid1D::new(a.nbar_start, a.nbar_stop, a.nbar_step)?;
    let engine = SweepEngine::new(a.run.threads)?;
    let records = sweep_time_mpn(&engine, &time, &nbar, a.diagonal, &defaults)?;
    let rows: Vec<String> = records
        .iter()
        .map(|r| sweep_row(r.nbar1, r.nbar2, r.gt, r.d1, r.concurrence))
        .collect();
    write_csv(a.run.output.as_deref(), SWEEP_HEADER, &rows)?;
    Ok(())
}

fn cmd_robust_map(a: RobustMapArgs) -> Result<(), Failure> {
    let defaults = a.model.defaults()?;
    let nbar = Grid1D::new(a.nbar_start, a.nbar_stop, a.nbar_step)?;
    let window = RobustWindow {
        start: a.window_start,
        stop: a.window_stop,
        step: a.window_step,
        presence: a.presence,
    };
    window.grid()?;
    let engine = SweepEngine::new(a.run.threads)?;
    let mut rows = Vec::new();
    for &measure in a.measure.measures() {
        for r in robust_time_map(&engine, &nbar, &nbar, measure, &window, &defaults)? {
            rows.push(format!(
                "{},{},{},{},{},{}",
                number(r.nbar1),
                number(r.nbar2),
                r.measure,
                number_min_decimals(r.gtau_over_pi, 3),
                number(r.peak_value),
                r.present
            ));
        }
    }
    write_csv(a.run.output.as_deref(), ROBUST_HEADER, &rows)?;
    Ok(())
}

fn cmd_oracle_check(a: OracleArgs) -> Result<(), Failure> {
    if a.tolerance.is_nan() || a.tolerance <= 0.0 {
        return Err(Failure::Usage(format!(
            "tolerance {} must be > 0",
            a.tolerance
        )));
    }
    let defaults = a.model.defaults()?;
    let p = defaults.params(a.nbar1, a.nbar2)?;
    let times = Grid1D::new(a.gt_start, a.gt_stop, a.gt_step)?.points();
    let basis = match a.ncut {
        Some(n) => FockBasis::new(n, n)?,
        None => FockBasis::for_params(&p),
    };
    let engine = SweepEngine::new(a.threads)?;
    let report = engine
        .install(|| compare_with_analytic(&p, &times, &defaults.truncation, &basis))
        .map_err(|e| match e {
            Error::Leakage { .. } | Error::NotXForm(_) => Failure::Breach(e.to_string()),
            e => e.into(),
        })?;
    println!("{report}");
    let worst = report.max_deviation();
    if worst >= a.tolerance {
        return Err(Failure::Breach(format!(
            "FAIL: max deviation {worst:.3e} is not below tolerance {:.1e}",
            a.tolerance
        )));
    }
    if report.x_form_residual > X_FORM_TOLERANCE {
        return Err(Failure::Breach(format!(
            "FAIL: X-form residual {:.3e} exceeds {X_FORM_TOLERANCE:.1e}",
            report.x_form_residual
        )));
    }
    println!(
        "PASS: max deviation {worst:.3e} below tolerance {:.1e}",
        a.tolerance
    );
    Ok(())
}
