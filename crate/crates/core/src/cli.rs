//! Command-line front end. All quantities are dimensionless: `mass-ratio` is
//! m/omega, `temp-ratio` is T/omega, `sep` is omega L and times are gamma0 tau.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numerical failure.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::dynamics::Evolver;
use crate::entanglement::{detect_events, Measure, CONCURRENCE_CUTOFF, NEGATIVITY_CUTOFF};
use crate::error::Error;
use crate::experiments::{
    evolve_scan, run_verification, thermal_scan, Axis, MeasureSelection, Reduction, Scale,
    SweepConfig, VerifyOptions,
};
use crate::field_bath::{gray_factor, FieldBathConfig};
use crate::io::{fmt_f64, write_map_csv, write_trajectory_csv, write_with_manifest};
use crate::xstate::{XState, C64};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "massent",
    version,
    about = "Two-qubit entanglement dynamics in a massive scalar field bath"
)]
struct Cli {
    /// Flat key=value file; keys are flag names, flags given on the command line win.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print Omega, lambda and the rate coefficients (units of gamma0).
    Coeffs(BathArgs),
    /// Propagate an initial state and write the trajectory as CSV.
    Evolve(EvolveArgs),
    /// Sweep a (time, separation) or (temperature, separation) grid.
    Map(MapArgs),
    /// Run the self-verification suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
struct BathArgs {
    /// m / omega
    #[arg(long, default_value_t = 0.0)]
    mass_ratio: f64,
    /// omega L
    #[arg(long)]
    sep: f64,
    /// T / omega; omit for the vacuum
    #[arg(long)]
    temp_ratio: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum MeasureArg {
    Concurrence,
    Negativity,
    Both,
}

impl From<MeasureArg> for MeasureSelection {
    fn from(m: MeasureArg) -> Self {
        match m {
            MeasureArg::Concurrence => MeasureSelection::Concurrence,
            MeasureArg::Negativity => MeasureSelection::Negativity,
            MeasureArg::Both => MeasureSelection::Both,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
struct EvolveArgs {
    /// E, G, A, S, bell-GE, diag:e,g,a,s, or eight values
    /// rho_G,rho_A,rho_S,rho_E,re_GE,im_GE,re_AS,im_AS
    #[arg(long, allow_hyphen_values = true)]
    initial: String,
    #[command(flatten)]
    bath: BathArgs,
    /// final gamma0 tau
    #[arg(long, default_value_t = 10.0)]
    tmax: f64,
    /// number of time steps (rows minus one)
    #[arg(long, default_value_t = 100)]
    steps: usize,
    /// measure whose births and deaths are reported on stderr
    #[arg(long, value_enum, default_value_t = MeasureArg::Concurrence)]
    measure: MeasureArg,
    /// write the CSV (and a manifest) here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum MapMode {
    /// instantaneous measures over (gamma0 tau, omega L)
    TimeSep,
    /// maxima over time on (T / omega, omega L)
    TempSep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum ScaleArg {
    Linear,
    Log,
}

impl From<ScaleArg> for Scale {
    fn from(s: ScaleArg) -> Self {
        match s {
            ScaleArg::Linear => Scale::Linear,
            ScaleArg::Log => Scale::Log,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
struct MapArgs {
    #[arg(value_enum)]
    mode: MapMode,
    #[arg(long, allow_hyphen_values = true, default_value = "E")]
    initial: String,
    #[arg(long, default_value_t = 0.0)]
    mass_ratio: f64,
    /// T / omega for time-sep maps; omit for the vacuum
    #[arg(long)]
    temp_ratio: Option<f64>,
    /// first axis: gamma0 tau (time-sep) or T / omega (temp-sep)
    #[arg(long)]
    axis1_min: Option<f64>,
    /// default 20 / Omega (time-sep) or 0.5 (temp-sep)
    #[arg(long)]
    axis1_max: Option<f64>,
    #[arg(long, default_value_t = 101)]
    axis1_count: usize,
    #[arg(long, value_enum, default_value_t = ScaleArg::Linear)]
    axis1_scale: ScaleArg,
    #[arg(long, default_value_t = 0.01)]
    sep_min: f64,
    /// default 4 / Omega
    #[arg(long)]
    sep_max: Option<f64>,
    #[arg(long, default_value_t = 101)]
    sep_count: usize,
    #[arg(long, value_enum, default_value_t = ScaleArg::Linear)]
    sep_scale: ScaleArg,
    #[arg(long, value_enum, default_value_t = MeasureArg::Both)]
    measure: MeasureArg,
    /// concurrence contour cutoff recorded in the manifest
    #[arg(long, default_value_t = CONCURRENCE_CUTOFF)]
    cutoff_c: f64,
    /// negativity contour cutoff recorded in the manifest
    #[arg(long, default_value_t = NEGATIVITY_CUTOFF)]
    cutoff_n: f64,
    #[arg(long, default_value = "map.csv")]
    output: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// relative error injected into the coefficients (failure-path check)
    #[arg(long, hide = true, default_value_t = 0.0)]
    inject_perturbation: f64,
}

/// Parses an initial-state spec.
pub fn parse_initial(spec: &str) -> crate::Result<XState> {
    let spec = spec.trim();
    let named = match spec {
        "E" => Some(XState::excited()),
        "G" => Some(XState::ground()),
        "A" => Some(XState::antisymmetric()),
        "S" => Some(XState::symmetric()),
        "bell-GE" => Some(XState::bell_ge()),
        _ => None,
    };
    if let Some(s) = named {
        return Ok(s);
    }
    let numbers = |list: &str| -> crate::Result<Vec<f64>> {
        list.split(',')
            .map(|x| {
                x.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad number {x:?} in initial state")))
            })
            .collect()
    };
    if let Some(rest) = spec.strip_prefix("diag:") {
        let v = numbers(rest)?;
        let [e, g, a, s] = v[..] else {
            return Err(Error::Parse("diag: needs four populations e,g,a,s".into()));
        };
        return XState::diagonal(g, a, s, e);
    }
    let v = numbers(spec).map_err(|_| Error::Parse(format!("unknown initial state {spec:?}")))?;
    let [g, a, s, e, re_ge, im_ge, re_as, im_as] = v[..] else {
        return Err(Error::Parse(format!(
            "expected 8 values for a raw initial state, got {}",
            v.len()
        )));
    };
    XState::new(g, a, s, e, C64::new(re_ge, im_ge), C64::new(re_as, im_as))
}

/// Parses a `key = value` config file. `#` starts a comment.
pub fn parse_config(text: &str) -> crate::Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("config line {}: expected key=value", n + 1)))?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

/// Appends config-file entries as flags unless the flag is already given.
fn merge_config(args: Vec<OsString>) -> crate::Result<Vec<OsString>> {
    let strs: Vec<String> = args
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let path = strs.iter().enumerate().find_map(|(i, a)| {
        if a == "--config" {
            strs.get(i + 1).cloned()
        } else {
            a.strip_prefix("--config=").map(str::to_string)
        }
    });
    let Some(path) = path else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Error::Parse(format!("cannot read config {path}: {e}")))?;
    let mut merged = args;
    for (key, value) in parse_config(&text)? {
        let flag = format!("--{key}");
        let given = strs
            .iter()
            .any(|a| *a == flag || a.starts_with(&format!("{flag}=")));
        if !given {
            merged.push(format!("{flag}={value}").into());
        }
    }
    Ok(merged)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParameter { .. }
        | Error::NotAState(_)
        | Error::NonXForm { .. }
        | Error::Parse(_) => EXIT_USAGE,
        _ => EXIT_NUMERIC,
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match merge_config(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{text}")
            } else {
                write!(stdout, "{text}")
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Coeffs(a) => cmd_coeffs(a, stdout),
        Command::Evolve(a) => cmd_evolve(a, stdout, stderr),
        Command::Map(a) => cmd_map(a, stdout, stderr),
        Command::Verify(a) => cmd_verify(a, stdout),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn bath(a: &BathArgs) -> crate::Result<FieldBathConfig> {
    FieldBathConfig::dimensionless(a.mass_ratio, a.sep, a.temp_ratio)
}

fn cmd_coeffs(a: &BathArgs, out: &mut dyn Write) -> crate::Result<i32> {
    let cfg = bath(a)?;
    let c = cfg.coefficients();
    let rows = [
        ("Omega", cfg.gray_factor()),
        ("lambda", cfg.spatial_factor()),
        ("A1", c.a1),
        ("B1", c.b1),
        ("A2", c.a2),
        ("B2", c.b2),
    ];
    for (name, v) in rows {
        writeln!(out, "{name:<7}{v:.11e}")?;
    }
    Ok(EXIT_OK)
}

fn cmd_evolve(a: &EvolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> crate::Result<i32> {
    let initial = parse_initial(&a.initial)?;
    let cfg = bath(&a.bath)?;
    if a.steps == 0 {
        return Err(Error::InvalidParameter {
            name: "steps",
            value: 0.0,
            reason: "must be >= 1",
        });
    }
    crate::error::positive("tmax", a.tmax)?;
    let evolver = Evolver::new(&cfg.coefficients())?;
    let taus: Vec<f64> = (0..=a.steps)
        .map(|k| a.tmax * k as f64 / a.steps as f64)
        .collect();
    let traj = evolver.trajectory(&initial, &taus)?;

    let mut csv = Vec::new();
    write_trajectory_csv(&mut csv, &traj)?;
    match &a.output {
        Some(path) => {
            write_with_manifest(path, &csv, "evolve", a)?;
        }
        None => out.write_all(&csv)?,
    }

    let measure = match a.measure {
        MeasureArg::Negativity => Measure::Negativity,
        _ => Measure::Concurrence,
    };
    let events = detect_events(&traj, Some(&evolver), measure, 0.0)?;
    let list = |v: &[f64]| v.iter().map(|&t| fmt_f64(t)).collect::<Vec<_>>().join(" ");
    writeln!(err, "method: {}", traj.method.as_str())?;
    writeln!(
        err,
        "{} births: [{}]",
        measure.as_str(),
        list(&events.births)
    )?;
    writeln!(
        err,
        "{} deaths: [{}]",
        measure.as_str(),
        list(&events.deaths)
    )?;
    Ok(EXIT_OK)
}

fn cmd_map(a: &MapArgs, out: &mut dyn Write, err: &mut dyn Write) -> crate::Result<i32> {
    let initial = parse_initial(&a.initial)?;
    crate::error::non_negative("mass_ratio", a.mass_ratio)?;
    let gray = gray_factor(a.mass_ratio, 1.0)?;
    let stretch = if gray > 0.0 { 1.0 / gray } else { 1.0 };
    let (reduction, default_max) = match a.mode {
        MapMode::TimeSep => (Reduction::Instantaneous, 20.0 * stretch),
        MapMode::TempSep => (Reduction::MaxOverTime, 0.5),
    };
    let config = SweepConfig {
        mass_ratio: a.mass_ratio,
        temp_ratio: a.temp_ratio,
        initial,
        axis1: Axis::new(
            a.axis1_min.unwrap_or(0.0),
            a.axis1_max.unwrap_or(default_max),
            a.axis1_count,
            a.axis1_scale.into(),
        )?,
        axis2: Axis::new(
            a.sep_min,
            a.sep_max.unwrap_or(4.0 * stretch),
            a.sep_count,
            a.sep_scale.into(),
        )?,
        measure: a.measure.into(),
        reduction,
    };
    let mut result = match a.mode {
        MapMode::TimeSep => evolve_scan(&config)?,
        MapMode::TempSep => thermal_scan(&config)?,
    };
    result.metadata.cutoff_c = a.cutoff_c;
    result.metadata.cutoff_n = a.cutoff_n;

    let mut csv = Vec::new();
    write_map_csv(&mut csv, &result)?;
    #[derive(Serialize)]
    struct Params<'a> {
        #[serde(flatten)]
        args: &'a MapArgs,
        sweep: &'a SweepConfig,
    }
    let params = Params {
        args: a,
        sweep: &result.config,
    };
    write_with_manifest(&a.output, &csv, "map", &params)?;

    for m in [Measure::Concurrence, Measure::Negativity] {
        if config.measure.includes(m) {
            writeln!(
                err,
                "{}: {} of {} cells above cutoff {}",
                m.as_str(),
                result.count_above_cutoff(m),
                result.cells.len(),
                fmt_f64(result.cutoff(m))
            )?;
        }
    }
    writeln!(out, "{}", a.output.display())?;
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> crate::Result<i32> {
    let report = run_verification(&VerifyOptions {
        seed: a.seed,
        coefficient_perturbation: a.inject_perturbation,
    })?;
    writeln!(out, "{report}")?;
    Ok(if report.passed() {
        EXIT_OK
    } else {
        EXIT_VERIFY
    })
}
