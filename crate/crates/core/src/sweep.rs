//! Parameter scans, threshold search and table emission.
//!
//! A [`SweepSpec`] names one or two swept axes among `T`, `gamma` and `omega`
//! and pins the remaining ones in [`FixedParams`]. Rows come out in row-major
//! order (first axis outermost) regardless of how many workers evaluated them.

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::correlations::{evaluate, CorrelationReport};
use crate::error::{Error, Result};
use crate::model::{ModelParams, XState};

/// Values at or below this count as "vanished".
pub const ZERO_TOL: f64 = 1e-12;

/// Hard cap on bisection steps; the bracket shrinks by 2⁻²⁰⁰ long before.
const MAX_BISECTIONS: usize = 200;

pub const CSV_COLUMNS: [&str; 8] = ["T", "gamma", "omega", "s_ab", "s_ba", "delta12", "concurrence", "gqd"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AxisName {
    #[serde(rename = "T", alias = "temp")]
    Temp,
    #[serde(rename = "gamma")]
    Gamma,
    #[serde(rename = "omega")]
    Omega,
}

impl AxisName {
    pub fn as_str(self) -> &'static str {
        match self {
            AxisName::Temp => "T",
            AxisName::Gamma => "gamma",
            AxisName::Omega => "omega",
        }
    }
}

impl fmt::Display for AxisName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AxisName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T" | "temp" => Ok(AxisName::Temp),
            "gamma" => Ok(AxisName::Gamma),
            "omega" => Ok(AxisName::Omega),
            _ => Err(Error::param("axis", format!("unknown axis `{s}` (expected temp, gamma or omega)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

impl FromStr for Scale {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" | "lin" => Ok(Scale::Linear),
            "log" => Ok(Scale::Log),
            _ => Err(Error::param("scale", format!("unknown scale `{s}` (expected linear or log)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub name: AxisName,
    pub min: f64,
    pub max: f64,
    pub count: usize,
    #[serde(default)]
    pub scale: Scale,
}

impl Axis {
    pub fn validate(&self) -> Result<()> {
        if !self.min.is_finite() || !self.max.is_finite() {
            return Err(Error::param("min", format!("axis {} bounds must be finite", self.name)));
        }
        if !(self.min < self.max) {
            return Err(Error::param(
                "max",
                format!("axis {}: min {} must be < max {}", self.name, self.min, self.max),
            ));
        }
        if self.count < 2 {
            return Err(Error::param("count", format!("axis {}: count must be >= 2", self.name)));
        }
        if self.scale == Scale::Log && !(self.min > 0.0) {
            return Err(Error::param("min", format!("axis {}: log scale needs min > 0", self.name)));
        }
        Ok(())
    }

    /// Grid points, both endpoints included; log axes are geometric.
    pub fn points(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    return self.max;
                }
                let f = i as f64 / last;
                match self.scale {
                    Scale::Linear => self.min + (self.max - self.min) * f,
                    Scale::Log => self.min * (self.max / self.min).powf(f),
                }
            })
            .collect()
    }
}

/// Values for the parameters that are not swept.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FixedParams {
    #[serde(rename = "T", alias = "temp", default, skip_serializing_if = "Option::is_none")]
    pub temp: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
}

impl FixedParams {
    pub fn get(&self, name: AxisName) -> Option<f64> {
        match name {
            AxisName::Temp => self.temp,
            AxisName::Gamma => self.gamma,
            AxisName::Omega => self.omega,
        }
    }

    pub fn set(&mut self, name: AxisName, value: f64) {
        match name {
            AxisName::Temp => self.temp = Some(value),
            AxisName::Gamma => self.gamma = Some(value),
            AxisName::Omega => self.omega = Some(value),
        }
    }

    fn with(mut self, name: AxisName, value: f64) -> Self {
        self.set(name, value);
        self
    }

    /// Checks that `swept` and the fixed values together cover all three
    /// parameters exactly once.
    fn check_cover(&self, swept: &[AxisName]) -> Result<()> {
        for name in [AxisName::Temp, AxisName::Gamma, AxisName::Omega] {
            let is_swept = swept.contains(&name);
            match (is_swept, self.get(name).is_some()) {
                (true, true) => {
                    return Err(Error::InvalidSpec(format!("{name} is both swept and fixed")))
                }
                (false, false) => {
                    return Err(Error::param(flag_name(name), format!("missing fixed value for {name}")))
                }
                _ => {}
            }
        }
        Ok(())
    }

    fn resolve(&self) -> (f64, f64, f64) {
        (
            self.omega.expect("checked"),
            self.gamma.expect("checked"),
            self.temp.expect("checked"),
        )
    }
}

fn flag_name(name: AxisName) -> &'static str {
    match name {
        AxisName::Temp => "temp",
        AxisName::Gamma => "gamma",
        AxisName::Omega => "omega",
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    SAb,
    SBa,
    Delta12,
    Concurrence,
    Gqd,
}

impl Quantity {
    pub const ALL: [Quantity; 5] = [
        Quantity::SAb,
        Quantity::SBa,
        Quantity::Delta12,
        Quantity::Concurrence,
        Quantity::Gqd,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Quantity::SAb => "s_ab",
            Quantity::SBa => "s_ba",
            Quantity::Delta12 => "delta12",
            Quantity::Concurrence => "concurrence",
            Quantity::Gqd => "gqd",
        }
    }

    pub fn of(self, r: &CorrelationReport<f64>) -> f64 {
        match self {
            Quantity::SAb => r.s_ab,
            Quantity::SBa => r.s_ba,
            Quantity::Delta12 => r.delta12,
            Quantity::Concurrence => r.concurrence,
            Quantity::Gqd => r.gqd,
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Quantity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Quantity::ALL
            .into_iter()
            .find(|q| q.as_str() == s)
            .ok_or_else(|| Error::param("quantity", format!("unknown quantity `{s}`")))
    }
}

fn all_quantities() -> Vec<Quantity> {
    Quantity::ALL.to_vec()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub axis1: Axis,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis2: Option<Axis>,
    #[serde(default)]
    pub fixed: FixedParams,
    #[serde(default = "all_quantities")]
    pub quantities: Vec<Quantity>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.axis1.validate()?;
        let mut swept = vec![self.axis1.name];
        if let Some(a2) = &self.axis2 {
            a2.validate()?;
            if a2.name == self.axis1.name {
                return Err(Error::InvalidSpec(format!("axis {} listed twice", a2.name)));
            }
            swept.push(a2.name);
        }
        self.fixed.check_cover(&swept)?;
        if self.quantities.is_empty() {
            return Err(Error::param("quantities", "select at least one quantity"));
        }
        Ok(())
    }

    /// Emitted column names in canonical order.
    pub fn columns(&self) -> Vec<&'static str> {
        let mut cols = vec!["T", "gamma", "omega"];
        cols.extend(
            Quantity::ALL
                .into_iter()
                .filter(|q| self.quantities.contains(q))
                .map(Quantity::as_str),
        );
        cols
    }

    fn grid(&self) -> Vec<FixedParams> {
        let outer = self.axis1.points();
        match &self.axis2 {
            None => outer
                .into_iter()
                .map(|x| self.fixed.with(self.axis1.name, x))
                .collect(),
            Some(a2) => {
                let inner = a2.points();
                outer
                    .iter()
                    .flat_map(|&x| {
                        inner
                            .iter()
                            .map(move |&y| self.fixed.with(self.axis1.name, x).with(a2.name, y))
                    })
                    .collect()
            }
        }
    }

    pub fn row_count(&self) -> usize {
        self.axis1.count * self.axis2.map_or(1, |a| a.count)
    }
}

/// Evaluates every measure at one point.
///
/// The corner `omega = gamma = 0` has `H = 0` and hence the maximally mixed
/// state at any temperature; it is evaluated as such instead of rejected.
pub fn evaluate_point(omega: f64, gamma: f64, temp: f64) -> Result<CorrelationReport<f64>> {
    if omega == 0.0 && gamma == 0.0 {
        if !(temp > 0.0) || !temp.is_finite() {
            return Err(Error::param("temp", format!("must be finite and > 0, got {temp}")));
        }
        return Ok(CorrelationReport::from_state(omega, gamma, temp, &XState::maximally_mixed()));
    }
    evaluate(&ModelParams::new(omega, gamma)?, temp)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableMeta {
    pub version: String,
    /// Seconds since the Unix epoch; `None` keeps emissions reproducible.
    pub timestamp: Option<u64>,
    pub columns: Vec<String>,
    pub spec: SweepSpec,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResultTable {
    pub meta: TableMeta,
    pub rows: Vec<CorrelationReport<f64>>,
}

/// Number of workers to use when none is requested.
pub fn available_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Evaluates the grid with `workers` threads (0 means [`available_workers`]).
pub fn run_sweep(spec: &SweepSpec, workers: usize) -> Result<ResultTable> {
    spec.validate()?;
    let grid = spec.grid();
    let eval = |f: &FixedParams| {
        let (omega, gamma, temp) = f.resolve();
        evaluate_point(omega, gamma, temp)
    };
    let workers = if workers == 0 { available_workers() } else { workers };
    let rows: Result<Vec<_>> = if workers == 1 {
        grid.iter().map(eval).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::InvalidSpec(format!("cannot start {workers} workers: {e}")))?;
        pool.install(|| grid.par_iter().map(eval).collect())
    };
    let rows = rows?;
    debug_assert_eq!(rows.len(), spec.row_count());
    Ok(ResultTable {
        meta: TableMeta {
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: None,
            columns: spec.columns().into_iter().map(String::from).collect(),
            spec: spec.clone(),
        },
        rows,
    })
}

/// Which side of the bracket carries the non-zero quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Positive at `lo`, zero at `hi`.
    Vanishing,
    /// Zero at `lo`, positive at `hi`.
    Onset,
}

impl FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vanishing" => Ok(Direction::Vanishing),
            "onset" => Ok(Direction::Onset),
            _ => Err(Error::param("direction", format!("unknown direction `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdQuery {
    pub quantity: Quantity,
    pub axis: AxisName,
    pub lo: f64,
    pub hi: f64,
    #[serde(default)]
    pub fixed: FixedParams,
    /// Expected orientation of the bracket; `None` accepts either.
    #[serde(default)]
    pub direction: Option<Direction>,
    pub tolerance: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Threshold {
    /// Midpoint of the final bracket.
    pub value: f64,
    pub lo: f64,
    pub hi: f64,
    pub direction: Direction,
    pub evaluations: usize,
}

impl ThresholdQuery {
    fn eval(&self, x: f64) -> Result<f64> {
        let (omega, gamma, temp) = self.fixed.with(self.axis, x).resolve();
        let r = evaluate_point(omega, gamma, temp)?;
        let v = self.quantity.of(&r);
        if v.is_nan() {
            return Err(Error::InvalidSpec(format!("{} is NaN at {}={x}", self.quantity, self.axis)));
        }
        Ok(v)
    }
}

/// Bisects on "quantity > [`ZERO_TOL`]" inside `[lo, hi]` until the bracket is
/// no wider than the tolerance.
///
/// Monotonicity is not assumed outside the bracket; within it only the two
/// endpoint classifications are maintained.
pub fn find_threshold(q: &ThresholdQuery) -> Result<Threshold> {
    if !(q.tolerance > 0.0) || !q.tolerance.is_finite() {
        return Err(Error::param("tol", format!("must be finite and > 0, got {}", q.tolerance)));
    }
    if !q.lo.is_finite() || !q.hi.is_finite() || !(q.lo < q.hi) {
        return Err(Error::param("lo", format!("need finite lo < hi, got [{}, {}]", q.lo, q.hi)));
    }
    q.fixed.check_cover(&[q.axis])?;

    let (mut lo, mut hi) = (q.lo, q.hi);
    let (f_lo, f_hi) = (q.eval(lo)?, q.eval(hi)?);
    let mut evaluations = 2;
    let lo_alive = f_lo > ZERO_TOL;
    let hi_alive = f_hi > ZERO_TOL;
    let direction = match (lo_alive, hi_alive) {
        (true, false) => Direction::Vanishing,
        (false, true) => Direction::Onset,
        _ => return Err(Error::InvalidBracket { lo, hi, f_lo, f_hi }),
    };
    if q.direction.is_some_and(|d| d != direction) {
        return Err(Error::InvalidBracket { lo, hi, f_lo, f_hi });
    }

    while hi - lo > q.tolerance && evaluations < MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let alive = q.eval(mid)? > ZERO_TOL;
        evaluations += 1;
        if alive == lo_alive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Threshold {
        value: 0.5 * (lo + hi),
        lo,
        hi,
        direction,
        evaluations,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::param("format", format!("unknown format `{s}` (expected csv or json)"))),
        }
    }
}

/// 17 significant digits in scientific notation; round-trips every `f64`.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn row_values(spec: &SweepSpec, r: &CorrelationReport<f64>) -> Vec<f64> {
    let mut v = vec![r.temp, r.gamma, r.omega];
    v.extend(
        Quantity::ALL
            .into_iter()
            .filter(|q| spec.quantities.contains(q))
            .map(|q| q.of(r)),
    );
    v
}

fn join_row(values: &[f64]) -> String {
    values.iter().map(|&x| format_float(x)).collect::<Vec<_>>().join(",")
}

pub fn write_csv<W: Write>(table: &ResultTable, mut w: W) -> std::io::Result<()> {
    writeln!(w, "{}", table.meta.spec.columns().join(","))?;
    for r in &table.rows {
        writeln!(w, "{}", join_row(&row_values(&table.meta.spec, r)))?;
    }
    w.flush()
}

/// `{"meta": {...}, "rows": [[...], ...]}` with one row per line.
pub fn write_json<W: Write>(table: &ResultTable, mut w: W) -> std::io::Result<()> {
    let meta = serde_json::to_string(&table.meta).map_err(std::io::Error::other)?;
    write!(w, "{{\"meta\":{meta},\"rows\":[")?;
    for (i, r) in table.rows.iter().enumerate() {
        let sep = if i == 0 { "\n" } else { ",\n" };
        write!(w, "{sep}[{}]", join_row(&row_values(&table.meta.spec, r)))?;
    }
    writeln!(w, "\n]}}")?;
    w.flush()
}

pub fn to_bytes(table: &ResultTable, format: Format) -> Vec<u8> {
    let mut buf = Vec::new();
    match format {
        Format::Csv => write_csv(table, &mut buf),
        Format::Json => write_json(table, &mut buf),
    }
    .expect("writing to memory");
    buf
}

/// Writes the table to `path`; errors carry the path.
pub fn emit(table: &ResultTable, format: Format, path: &Path) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(io_err)?;
    let w = BufWriter::new(file);
    match format {
        Format::Csv => write_csv(table, w),
        Format::Json => write_json(table, w),
    }
    .map_err(io_err)
}

#[derive(Deserialize)]
struct JsonTable {
    meta: TableMeta,
    rows: Vec<Vec<f64>>,
}

/// Parses the output of [`write_json`].
pub fn parse_json(text: &str) -> Result<ResultTable> {
    let raw: JsonTable = serde_json::from_str(text)?;
    let columns = raw.meta.spec.columns();
    let mut rows = Vec::with_capacity(raw.rows.len());
    for values in raw.rows {
        if values.len() != columns.len() {
            return Err(Error::InvalidSpec(format!(
                "row has {} values, expected {}",
                values.len(),
                columns.len()
            )));
        }
        let mut r = CorrelationReport {
            temp: f64::NAN,
            gamma: f64::NAN,
            omega: f64::NAN,
            s_ab: f64::NAN,
            s_ba: f64::NAN,
            delta12: f64::NAN,
            concurrence: f64::NAN,
            gqd: f64::NAN,
        };
        for (col, v) in columns.iter().zip(values) {
            let slot = match *col {
                "T" => &mut r.temp,
                "gamma" => &mut r.gamma,
                "omega" => &mut r.omega,
                "s_ab" => &mut r.s_ab,
                "s_ba" => &mut r.s_ba,
                "delta12" => &mut r.delta12,
                "concurrence" => &mut r.concurrence,
                "gqd" => &mut r.gqd,
                _ => unreachable!("columns() only yields known names"),
            };
            *slot = v;
        }
        rows.push(r);
    }
    Ok(ResultTable { meta: raw.meta, rows })
}
