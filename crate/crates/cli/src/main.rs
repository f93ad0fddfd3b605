//! `gravcat`: point evaluation, sweeps, grids, threshold search and the geometry helper.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use gravcat::model::{gamma_from_geometry, PhysicalGeometry};
use gravcat::sweep::{
    available_workers, emit, evaluate_point, find_threshold, run_sweep, write_csv, write_json, Axis, AxisName,
    Direction, FixedParams, Format, Quantity, Scale, SweepSpec, ThresholdQuery,
};
use gravcat::Error;
use serde::Deserialize;

/// Environment variable capping the number of sweep workers.
const WORKERS_ENV: &str = "GRAVCAT_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "gravcat", version, about = "Thermal steering, concurrence and geometric discord of two gravcats")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate every measure at one (omega, gamma, T) point and print it as a JSON line
    Point(PointArgs),
    /// Sweep one parameter and write a table
    Sweep(SweepArgs),
    /// Sweep two parameters on a row-major grid and write a table
    Grid(GridArgs),
    /// Bisect for the point where a quantity vanishes or sets in
    Threshold(ThresholdArgs),
    /// Print the coupling gamma for a double-well geometry
    Geometry(GeometryArgs),
}

#[derive(Args, Debug, Default, Clone, Copy)]
struct FixedArgs {
    /// Temperature T (> 0)
    #[arg(long, allow_negative_numbers = true)]
    temp: Option<f64>,
    /// Coupling gamma (>= 0)
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    /// Tunnelling splitting omega (>= 0)
    #[arg(long, allow_negative_numbers = true)]
    omega: Option<f64>,
}

#[derive(Args, Debug)]
struct ConfigArgs {
    /// JSON config file; a previous output's `meta` block, a `spec` object or flat keys. Flags override it
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Output file (standard output when omitted)
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Table format: csv or json
    #[arg(long)]
    format: Option<Format>,
    /// Worker threads; 0 uses all cores. Capped by GRAVCAT_WORKERS
    #[arg(long)]
    workers: Option<usize>,
    /// Leave the JSON metadata timestamp null so reruns are byte-identical
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Args, Debug)]
struct PointArgs {
    #[command(flatten)]
    fixed: FixedArgs,
    #[command(flatten)]
    config: ConfigArgs,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Swept parameter: temp, gamma or omega
    #[arg(long)]
    axis: Option<AxisName>,
    /// First axis value
    #[arg(long, allow_negative_numbers = true)]
    min: Option<f64>,
    /// Last axis value
    #[arg(long, allow_negative_numbers = true)]
    max: Option<f64>,
    /// Number of points including both ends (>= 2)
    #[arg(long)]
    count: Option<usize>,
    /// Spacing: linear or log
    #[arg(long)]
    scale: Option<Scale>,
    /// Comma-separated subset of s_ab,s_ba,delta12,concurrence,gqd
    #[arg(long, value_delimiter = ',')]
    quantities: Option<Vec<Quantity>>,
    #[command(flatten)]
    fixed: FixedArgs,
    #[command(flatten)]
    output: OutputArgs,
    #[command(flatten)]
    config: ConfigArgs,
}

#[derive(Args, Debug)]
struct GridArgs {
    /// Outer (row-major) parameter: temp, gamma or omega
    #[arg(long)]
    axis1: Option<AxisName>,
    /// Outer axis first value
    #[arg(long, allow_negative_numbers = true)]
    min1: Option<f64>,
    /// Outer axis last value
    #[arg(long, allow_negative_numbers = true)]
    max1: Option<f64>,
    /// Outer axis point count (>= 2)
    #[arg(long)]
    count1: Option<usize>,
    /// Outer axis spacing: linear or log
    #[arg(long)]
    scale1: Option<Scale>,
    /// Inner parameter: temp, gamma or omega
    #[arg(long)]
    axis2: Option<AxisName>,
    /// Inner axis first value
    #[arg(long, allow_negative_numbers = true)]
    min2: Option<f64>,
    /// Inner axis last value
    #[arg(long, allow_negative_numbers = true)]
    max2: Option<f64>,
    /// Inner axis point count (>= 2)
    #[arg(long)]
    count2: Option<usize>,
    /// Inner axis spacing: linear or log
    #[arg(long)]
    scale2: Option<Scale>,
    /// Comma-separated subset of s_ab,s_ba,delta12,concurrence,gqd
    #[arg(long, value_delimiter = ',')]
    quantities: Option<Vec<Quantity>>,
    #[command(flatten)]
    fixed: FixedArgs,
    #[command(flatten)]
    output: OutputArgs,
    #[command(flatten)]
    config: ConfigArgs,
}

#[derive(Args, Debug)]
struct ThresholdArgs {
    /// Quantity to track: s_ab, s_ba, delta12, concurrence or gqd
    #[arg(long)]
    quantity: Option<Quantity>,
    /// Parameter to bisect over: temp, gamma or omega
    #[arg(long)]
    axis: Option<AxisName>,
    /// Lower end of the bracket
    #[arg(long, allow_negative_numbers = true)]
    lo: Option<f64>,
    /// Upper end of the bracket
    #[arg(long, allow_negative_numbers = true)]
    hi: Option<f64>,
    /// Final bracket width
    #[arg(long, allow_negative_numbers = true)]
    tol: Option<f64>,
    /// Expected orientation: vanishing (non-zero at lo) or onset (non-zero at hi)
    #[arg(long)]
    direction: Option<Direction>,
    #[command(flatten)]
    fixed: FixedArgs,
    #[command(flatten)]
    config: ConfigArgs,
}

#[derive(Args, Debug)]
struct GeometryArgs {
    /// Gravitational constant
    #[arg(long = "G", allow_negative_numbers = true)]
    g: f64,
    /// Particle mass
    #[arg(long, allow_negative_numbers = true)]
    m: f64,
    /// Distance between the near wells
    #[arg(long, allow_negative_numbers = true)]
    d1: f64,
    /// Well separation within one particle
    #[arg(long, allow_negative_numbers = true)]
    d: f64,
}

/// Config-file contents; every field optional so flags can fill the gaps.
#[derive(Deserialize, Debug, Default)]
struct FileConfig {
    axis1: Option<Axis>,
    axis2: Option<Axis>,
    fixed: Option<FixedParams>,
    #[serde(flatten)]
    flat: FixedParams,
    quantities: Option<Vec<Quantity>>,
    quantity: Option<Quantity>,
    axis: Option<AxisName>,
    lo: Option<f64>,
    hi: Option<f64>,
    #[serde(alias = "tolerance")]
    tol: Option<f64>,
    direction: Option<Direction>,
    format: Option<Format>,
    workers: Option<usize>,
}

impl FileConfig {
    fn fixed(&self) -> FixedParams {
        let mut f = self.fixed.unwrap_or_default();
        for name in [AxisName::Temp, AxisName::Gamma, AxisName::Omega] {
            if let Some(v) = self.flat.get(name) {
                f.set(name, v);
            }
        }
        f
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter { name, reason } => CliError::Usage(format!("--{name}: {reason}")),
            Error::InvalidBracket { .. } => CliError::Usage(format!("--lo/--hi: {e}")),
            Error::Io { .. } => CliError::Io(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn missing(flag: &str) -> CliError {
    usage(format!("--{flag}: required (flag or config file)"))
}

fn load_config(path: Option<&Path>) -> Result<FileConfig, CliError> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("--config: {}: {e}", path.display())))?;
    let bad = |e: serde_json::Error| usage(format!("--config: {}: {e}", path.display()));
    let mut value: serde_json::Value = serde_json::from_str(&text).map_err(bad)?;
    if let Some(meta) = value.get_mut("meta").map(serde_json::Value::take) {
        value = meta;
    }
    if let Some(spec) = value.get_mut("spec").map(serde_json::Value::take) {
        value = spec;
    }
    serde_json::from_value(value).map_err(bad)
}

impl From<FixedArgs> for FixedParams {
    fn from(a: FixedArgs) -> Self {
        FixedParams { temp: a.temp, gamma: a.gamma, omega: a.omega }
    }
}

fn merge_fixed(mut base: FixedParams, flags: FixedArgs) -> FixedParams {
    let flags = FixedParams::from(flags);
    for name in [AxisName::Temp, AxisName::Gamma, AxisName::Omega] {
        if let Some(v) = flags.get(name) {
            base.set(name, v);
        }
    }
    base
}

/// Drops fixed values for swept axes unless they were given as flags.
fn unfix_swept(fixed: &mut FixedParams, flags: FixedArgs, swept: &[AxisName]) {
    let flags = FixedParams::from(flags);
    for &name in swept {
        if flags.get(name).is_none() {
            match name {
                AxisName::Temp => fixed.temp = None,
                AxisName::Gamma => fixed.gamma = None,
                AxisName::Omega => fixed.omega = None,
            }
        }
    }
}

struct AxisFlags {
    name: Option<AxisName>,
    min: Option<f64>,
    max: Option<f64>,
    count: Option<usize>,
    scale: Option<Scale>,
}

fn build_axis(base: Option<Axis>, flags: AxisFlags, suffix: &str) -> Result<Axis, CliError> {
    let flag = |s: &str| format!("{s}{suffix}");
    let axis = Axis {
        name: flags.name.or(base.map(|a| a.name)).ok_or_else(|| missing(&flag("axis")))?,
        min: flags.min.or(base.map(|a| a.min)).ok_or_else(|| missing(&flag("min")))?,
        max: flags.max.or(base.map(|a| a.max)).ok_or_else(|| missing(&flag("max")))?,
        count: flags.count.or(base.map(|a| a.count)).ok_or_else(|| missing(&flag("count")))?,
        scale: flags.scale.or(base.map(|a| a.scale)).unwrap_or_default(),
    };
    axis.validate().map_err(|e| match e {
        Error::InvalidParameter { name, reason } => usage(format!("--{}: {reason}", flag(name))),
        other => other.into(),
    })?;
    Ok(axis)
}

fn worker_count(requested: Option<usize>) -> Result<usize, CliError> {
    let mut n = match requested.unwrap_or(0) {
        0 => available_workers(),
        n => n,
    };
    if let Ok(cap) = std::env::var(WORKERS_ENV) {
        let cap: usize = cap
            .trim()
            .parse()
            .ok()
            .filter(|&c| c > 0)
            .ok_or_else(|| usage(format!("{WORKERS_ENV}: expected a positive integer, got `{cap}`")))?;
        n = n.min(cap);
    }
    Ok(n)
}

fn run_table(spec: SweepSpec, output: OutputArgs, cfg: &FileConfig) -> Result<(), CliError> {
    spec.validate()?;
    let workers = worker_count(output.workers.or(cfg.workers))?;
    let format = output.format.or(cfg.format).unwrap_or_default();
    let mut table = run_sweep(&spec, workers)?;
    if !output.no_timestamp {
        table.meta.timestamp = SystemTime::now().duration_since(UNIX_EPOCH).ok().map(|d| d.as_secs());
    }
    match output.out {
        Some(path) => emit(&table, format, &path)?,
        None => {
            let stdout = std::io::stdout().lock();
            match format {
                Format::Csv => write_csv(&table, stdout),
                Format::Json => write_json(&table, stdout),
            }
            .map_err(|e| CliError::Io(format!("standard output: {e}")))?;
        }
    }
    Ok(())
}

fn point(args: PointArgs) -> Result<(), CliError> {
    let cfg = load_config(args.config.config.as_deref())?;
    let f = merge_fixed(cfg.fixed(), args.fixed);
    let omega = f.omega.ok_or_else(|| missing("omega"))?;
    let gamma = f.gamma.ok_or_else(|| missing("gamma"))?;
    let temp = f.temp.ok_or_else(|| missing("temp"))?;
    let report = evaluate_point(omega, gamma, temp)?;
    println!("{}", serde_json::to_string(&report).map_err(|e| CliError::Io(e.to_string()))?);
    Ok(())
}

fn sweep(args: SweepArgs) -> Result<(), CliError> {
    let cfg = load_config(args.config.config.as_deref())?;
    let flags = AxisFlags { name: args.axis, min: args.min, max: args.max, count: args.count, scale: args.scale };
    let axis1 = build_axis(cfg.axis1, flags, "")?;
    let mut fixed = merge_fixed(cfg.fixed(), args.fixed);
    unfix_swept(&mut fixed, args.fixed, &[axis1.name]);
    let spec = SweepSpec {
        axis1,
        axis2: None,
        fixed,
        quantities: args.quantities.or(cfg.quantities.clone()).unwrap_or_else(|| Quantity::ALL.to_vec()),
    };
    run_table(spec, args.output, &cfg)
}

fn grid(args: GridArgs) -> Result<(), CliError> {
    let cfg = load_config(args.config.config.as_deref())?;
    let flags1 = AxisFlags { name: args.axis1, min: args.min1, max: args.max1, count: args.count1, scale: args.scale1 };
    let flags2 = AxisFlags { name: args.axis2, min: args.min2, max: args.max2, count: args.count2, scale: args.scale2 };
    let axis1 = build_axis(cfg.axis1, flags1, "1")?;
    let axis2 = build_axis(cfg.axis2, flags2, "2")?;
    if axis1.name == axis2.name {
        return Err(usage(format!("--axis2: must differ from --axis1 (both {})", axis1.name)));
    }
    let mut fixed = merge_fixed(cfg.fixed(), args.fixed);
    unfix_swept(&mut fixed, args.fixed, &[axis1.name, axis2.name]);
    let spec = SweepSpec {
        axis1,
        axis2: Some(axis2),
        fixed,
        quantities: args.quantities.or(cfg.quantities.clone()).unwrap_or_else(|| Quantity::ALL.to_vec()),
    };
    run_table(spec, args.output, &cfg)
}

fn threshold(args: ThresholdArgs) -> Result<(), CliError> {
    let cfg = load_config(args.config.config.as_deref())?;
    let axis = args.axis.or(cfg.axis).ok_or_else(|| missing("axis"))?;
    if FixedParams::from(args.fixed).get(axis).is_some() {
        return Err(usage(format!("--{}: cannot be fixed while it is the bisection axis", axis_flag(axis))));
    }
    let mut fixed = merge_fixed(cfg.fixed(), args.fixed);
    unfix_swept(&mut fixed, args.fixed, &[axis]);
    for name in [AxisName::Temp, AxisName::Gamma, AxisName::Omega] {
        if name != axis && fixed.get(name).is_none() {
            return Err(missing(axis_flag(name)));
        }
    }
    let query = ThresholdQuery {
        quantity: args.quantity.or(cfg.quantity).ok_or_else(|| missing("quantity"))?,
        axis,
        lo: args.lo.or(cfg.lo).ok_or_else(|| missing("lo"))?,
        hi: args.hi.or(cfg.hi).ok_or_else(|| missing("hi"))?,
        fixed,
        direction: args.direction.or(cfg.direction),
        tolerance: args.tol.or(cfg.tol).unwrap_or(1e-10),
    };
    let t = find_threshold(&query)?;
    println!("{}", t.value);
    Ok(())
}

fn axis_flag(name: AxisName) -> &'static str {
    match name {
        AxisName::Temp => "temp",
        AxisName::Gamma => "gamma",
        AxisName::Omega => "omega",
    }
}

fn geometry(args: GeometryArgs) -> Result<(), CliError> {
    let geo = PhysicalGeometry::new(args.g, args.m, args.d1, args.d)?;
    println!("{}", gamma_from_geometry(&geo)?);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Point(a) => point(a),
        Command::Sweep(a) => sweep(a),
        Command::Grid(a) => grid(a),
        Command::Threshold(a) => threshold(a),
        Command::Geometry(a) => geometry(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
