//! Run configuration and the sweep drivers behind the `sqbath` binary.
//!
//! Configuration is a flat `key = value` file; command-line flags are applied
//! on top as further `key = value` pairs. Output tables are CSV with a header
//! row and 12 significant digits.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::bath::{build_liouvillian, BathError, BathParams, R12_MIN};
use crate::evolve::{initial_state_eg, propagate, trajectory, EvolveError};
use crate::linalg::{ComplexMatrix, C64};
use crate::measures::{self, default_qfi_step, CoherenceBasis, MeasureError, MeasureReport};
use crate::oracle::{self, OracleError};
use crate::state::{DensityMatrix, StateError};
use crate::teleport::{teleport_report, TeleportReport};

/// Trace error allowed on an emitted row.
pub const ROW_TRACE_TOL: f64 = 1e-10;
/// Most negative eigenvalue allowed on an emitted row.
pub const ROW_MIN_EIG: f64 = -1e-9;

pub const MEASURE_COLUMNS: [&str; 11] = [
    "c_rel",
    "concurrence",
    "discord",
    "consonance",
    "lqu",
    "qfi",
    "max_fidelity",
    "fidelity_deviation",
    "det_t",
    "trace_err",
    "min_eig",
];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("physics invariant violated: {0}")]
    Physics(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Physics(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<BathError> for CliError {
    fn from(e: BathError) -> Self {
        match e {
            BathError::InvalidParameter { .. } | BathError::NearSingular { .. } => CliError::Config(e.to_string()),
            BathError::Linalg(_) => CliError::Physics(e.to_string()),
        }
    }
}

impl From<EvolveError> for CliError {
    fn from(e: EvolveError) -> Self {
        match e {
            EvolveError::InvalidTime(_) => CliError::Config(e.to_string()),
            _ => CliError::Physics(e.to_string()),
        }
    }
}

impl From<MeasureError> for CliError {
    fn from(e: MeasureError) -> Self {
        match e {
            MeasureError::Bath(b) => b.into(),
            MeasureError::Evolve(ev) => ev.into(),
            other => CliError::Physics(other.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::InvalidArgument(_) => CliError::Config(e.to_string()),
            other => CliError::Physics(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Evolve,
    SweepR12,
    SweepTemp,
    State,
    Qfi,
}

impl FromStr for Mode {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "evolve" => Ok(Mode::Evolve),
            "sweep-r12" => Ok(Mode::SweepR12),
            "sweep-temp" => Ok(Mode::SweepTemp),
            "state" => Ok(Mode::State),
            "qfi" => Ok(Mode::Qfi),
            other => Err(CliError::Config(format!("unknown mode '{other}'"))),
        }
    }
}

/// `START:STOP:STEP`, inclusive of `STOP` up to rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRange {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl SweepRange {
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|k| self.start + k as f64 * self.step).collect()
    }
}

impl FromStr for SweepRange {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || CliError::Config(format!("range must be START:STOP:STEP, got '{s}'"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let nums: Vec<f64> = parts.iter().map(|p| p.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|_| bad())?;
        let range = SweepRange { start: nums[0], stop: nums[1], step: nums[2] };
        if !(range.step > 0.0) || !(range.stop >= range.start) || nums.iter().any(|v| !v.is_finite()) {
            return Err(CliError::Config(format!("range '{s}' must be non-empty with step > 0")));
        }
        Ok(range)
    }
}

fn parse_basis(s: &str) -> Result<CoherenceBasis, CliError> {
    match s {
        "dressed" => Ok(CoherenceBasis::Dressed),
        "computational" => Ok(CoherenceBasis::Computational),
        other => Err(CliError::Config(format!("coherence_basis must be dressed|computational, got '{other}'"))),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub bath: BathParams,
    /// Evaluation time for sweeps.
    pub t: f64,
    pub t_max: f64,
    pub dt: f64,
    pub range: Option<SweepRange>,
    pub coherence_basis: CoherenceBasis,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub seed: u64,
    pub qfi_step: Option<f64>,
    /// Monte-Carlo teleportation samples in `state` mode (0 = off).
    pub mc_samples: usize,
}

impl RunConfig {
    pub fn new(mode: Mode) -> Self {
        Self {
            mode,
            bath: BathParams::default(),
            t: 1.0,
            t_max: 10.0,
            dt: 0.01,
            range: None,
            coherence_basis: CoherenceBasis::Dressed,
            out: None,
            svg: None,
            seed: 0,
            qfi_step: None,
            mc_samples: 0,
        }
    }

    /// Applies one `key = value` setting. Unknown keys are errors.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let num = || -> Result<f64, CliError> {
            value.trim().parse::<f64>().map_err(|_| CliError::Config(format!("{key}: '{value}' is not a number")))
        };
        let value = value.trim();
        match key.trim().replace('-', "_").as_str() {
            "t" => self.t = num()?,
            "t_max" => self.t_max = num()?,
            "dt" => self.dt = num()?,
            "r12" => self.bath.r12 = num()?,
            "temp" | "temperature" => self.bath.temperature = num()?,
            "squeeze" => self.bath.squeeze_r = num()?,
            "phi" => self.bath.squeeze_phase = num()?,
            "gamma1" => self.bath.gamma1 = num()?,
            "gamma2" => self.bath.gamma2 = num()?,
            "mu_dot_rhat" => self.bath.mu_dot_rhat = num()?,
            "omega1" => self.bath.omega1 = num()?,
            "omega2" => self.bath.omega2 = num()?,
            "distance_scale" => self.bath.distance_scale = num()?,
            "range" => self.range = Some(value.parse()?),
            "coherence_basis" => self.coherence_basis = parse_basis(value)?,
            "out" => self.out = Some(PathBuf::from(value)),
            "svg" => self.svg = Some(PathBuf::from(value)),
            "seed" => {
                self.seed = value.parse().map_err(|_| CliError::Config(format!("seed: '{value}' is not an integer")))?
            }
            "qfi_step" => self.qfi_step = Some(num()?),
            "mc_samples" => {
                self.mc_samples =
                    value.parse().map_err(|_| CliError::Config(format!("mc_samples: '{value}' is not an integer")))?
            }
            other => return Err(CliError::Config(format!("unknown config key '{other}'"))),
        }
        Ok(())
    }

    /// Parses a flat `key = value` file (`#` starts a comment) into this config.
    pub fn apply_file(&mut self, text: &str) -> Result<(), CliError> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected key = value", lineno + 1)))?;
            self.set(key, value)?;
        }
        Ok(())
    }

    /// Config file first, then overrides in order.
    pub fn build(mode: Mode, file: Option<&str>, overrides: &[(String, String)]) -> Result<Self, CliError> {
        let mut cfg = Self::new(mode);
        if let Some(text) = file {
            cfg.apply_file(text)?;
        }
        for (k, v) in overrides {
            cfg.set(k, v)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.bath.validate()?;
        if !(self.dt > 0.0) || !(self.t_max > 0.0) || !(self.t >= 0.0) {
            return Err(CliError::Config("need dt > 0, t_max > 0, t >= 0".into()));
        }
        if let Some(h) = self.qfi_step {
            if !(h > 0.0) {
                return Err(CliError::Config(format!("qfi_step must be > 0, got {h}")));
            }
        }
        match self.mode {
            Mode::SweepR12 => {
                let r = self.r12_range();
                if r.start <= R12_MIN || r.stop > 10.0 {
                    return Err(CliError::Config(format!("r12 range must lie in ({R12_MIN}, 10]")));
                }
            }
            Mode::SweepTemp if self.temp_range().start <= 0.0 => {
                return Err(CliError::Config("temperature range must be > 0".into()));
            }
            _ => {}
        }
        Ok(())
    }

    pub fn r12_range(&self) -> SweepRange {
        self.range.unwrap_or(SweepRange { start: 0.05, stop: 1.5, step: 0.05 })
    }

    pub fn temp_range(&self) -> SweepRange {
        self.range.unwrap_or(SweepRange { start: 0.5, stop: 3.0, step: 0.1 })
    }

    fn h_for(&self, r12: f64) -> f64 {
        self.qfi_step.unwrap_or_else(|| default_qfi_step(r12))
    }
}

/// Numeric table with a named first column.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

/// 12 significant digits, scientific notation, no negative zero.
pub fn format_value(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.11e}")
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&v| format_value(v)).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }
}

/// One output row: measures of `rho` plus invariant diagnostics.
pub fn measure_row(rho: &DensityMatrix, basis: CoherenceBasis, qfi: f64) -> Result<Vec<f64>, CliError> {
    let report = measures::measure_all(rho, basis)?;
    let tele = teleport_report(rho).map_err(|e| CliError::Physics(e.to_string()))?;
    let trace_err = rho.trace_error();
    let min_eig = rho.min_eigenvalue().map_err(|e| CliError::Physics(e.to_string()))?;
    if trace_err > ROW_TRACE_TOL || min_eig < ROW_MIN_EIG {
        return Err(CliError::Physics(format!("trace_err = {trace_err:e}, min_eig = {min_eig:e}")));
    }
    if !report.is_finite() || !qfi.is_finite() {
        return Err(CliError::Physics("non-finite measure value".into()));
    }
    Ok(vec![
        report.c_rel,
        report.concurrence,
        report.discord,
        report.consonance,
        report.lqu,
        qfi,
        tele.max_fidelity,
        tele.fidelity_deviation,
        tele.det_t,
        trace_err,
        min_eig,
    ])
}

fn header(first: &str) -> Vec<String> {
    std::iter::once(first).chain(MEASURE_COLUMNS).map(String::from).collect()
}

/// Time series from `|eg⟩` at fixed bath parameters.
pub fn run_evolve(cfg: &RunConfig) -> Result<Table, CliError> {
    let l = build_liouvillian(&cfg.bath)?;
    let traj = trajectory(&l, &initial_state_eg(), cfg.t_max, cfg.dt)?;
    let qfi = measures::qfi_series(&cfg.bath, cfg.t_max, cfg.dt, Some(cfg.h_for(cfg.bath.r12)))?;
    let rows = traj
        .times
        .par_iter()
        .zip(traj.states.par_iter().zip(qfi.par_iter()))
        .map(|(&t, (rho, &q))| {
            let mut row = vec![t];
            row.extend(measure_row(rho, cfg.coherence_basis, q)?);
            Ok(row)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Table { header: header("t"), rows })
}

fn point_row(params: &BathParams, cfg: &RunConfig) -> Result<Vec<f64>, CliError> {
    let l = build_liouvillian(params)?;
    let rho = propagate(&l, &initial_state_eg(), cfg.t)?;
    let q = measures::qfi(params, cfg.t, Some(cfg.h_for(params.r12)))?;
    measure_row(&rho, cfg.coherence_basis, q)
}

/// Measures at fixed `t` across the r12 range.
pub fn run_sweep_r12(cfg: &RunConfig) -> Result<Table, CliError> {
    let rows = cfg
        .r12_range()
        .points()
        .par_iter()
        .map(|&r12| {
            let mut row = vec![r12];
            row.extend(point_row(&cfg.bath.with_r12(r12), cfg)?);
            Ok(row)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Table { header: header("r12"), rows })
}

/// Measures at fixed `t` across the temperature range.
pub fn run_sweep_temp(cfg: &RunConfig) -> Result<Table, CliError> {
    let rows = cfg
        .temp_range()
        .points()
        .par_iter()
        .map(|&temp| {
            let mut row = vec![temp];
            row.extend(point_row(&cfg.bath.with_temperature(temp), cfg)?);
            Ok(row)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Table { header: header("temp"), rows })
}

/// QFI time series with a step-halving stability column.
pub fn run_qfi(cfg: &RunConfig) -> Result<Table, CliError> {
    let h = cfg.h_for(cfg.bath.r12);
    let full = measures::qfi_series(&cfg.bath, cfg.t_max, cfg.dt, Some(h))?;
    let half = measures::qfi_series(&cfg.bath, cfg.t_max, cfg.dt, Some(0.5 * h))?;
    let rows = full
        .iter()
        .zip(&half)
        .enumerate()
        .map(|(k, (&a, &b))| {
            let rel = if a.abs() > 0.0 { (a - b).abs() / a.abs() } else { (a - b).abs() };
            vec![k as f64 * cfg.dt, a, b, rel]
        })
        .collect();
    Ok(Table { header: ["t", "qfi", "qfi_half_step", "rel_change"].map(String::from).to_vec(), rows })
}

/// Parses one complex entry: `a`, `bi`, `a+bi`, `a-bi` (also `i`, `-i`).
pub fn parse_complex(token: &str) -> Result<C64, CliError> {
    let bad = || CliError::Config(format!("cannot parse complex entry '{token}'"));
    let s = token.trim();
    if s.is_empty() {
        return Err(bad());
    }
    let imag_part = |t: &str| -> Result<f64, CliError> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => t.parse::<f64>().map_err(|_| bad()),
        }
    };
    let Some(body) = s.strip_suffix(['i', 'j']) else {
        return Ok(C64::new(s.parse::<f64>().map_err(|_| bad())?, 0.0));
    };
    // split at the last sign that is not leading and not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => {
            let re = body[..k].parse::<f64>().map_err(|_| bad())?;
            Ok(C64::new(re, imag_part(&body[k..])?))
        }
        None => Ok(C64::new(0.0, imag_part(body)?)),
    }
}

/// Reads a 4-line × 4-entry state file.
pub fn parse_state(text: &str) -> Result<DensityMatrix, CliError> {
    let rows: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
    if rows.len() != 4 {
        return Err(CliError::Config(format!("state file needs 4 rows, found {}", rows.len())));
    }
    let mut entries = Vec::with_capacity(16);
    for (i, row) in rows.iter().enumerate() {
        let cells: Vec<&str> = row.split_whitespace().collect();
        if cells.len() != 4 {
            return Err(CliError::Config(format!("state row {} needs 4 entries, found {}", i + 1, cells.len())));
        }
        for cell in cells {
            entries.push(parse_complex(cell)?);
        }
    }
    DensityMatrix::new(ComplexMatrix::from_row_major(4, entries)).map_err(|e: StateError| CliError::Config(e.to_string()))
}

fn basis_name(b: CoherenceBasis) -> &'static str {
    match b {
        CoherenceBasis::Dressed => "dressed",
        CoherenceBasis::Computational => "computational",
    }
}

/// Structured `key = value` report of every measure on one state.
pub fn state_report(rho: &DensityMatrix, cfg: &RunConfig) -> Result<String, CliError> {
    let m: MeasureReport = measures::measure_all(rho, cfg.coherence_basis)?;
    let t: TeleportReport = teleport_report(rho).map_err(|e| CliError::Physics(e.to_string()))?;
    let mut s = String::new();
    let f = format_value;
    writeln!(s, "coherence_basis = {}", basis_name(cfg.coherence_basis)).unwrap();
    writeln!(s, "c_rel = {}", f(m.c_rel)).unwrap();
    writeln!(s, "concurrence = {}", f(m.concurrence)).unwrap();
    writeln!(s, "discord = {}", f(m.discord)).unwrap();
    writeln!(s, "consonance = {}", f(m.consonance)).unwrap();
    writeln!(s, "lqu = {}", f(m.lqu)).unwrap();
    for (i, row) in t.t_matrix.iter().enumerate() {
        writeln!(s, "t_row{} = {} {} {}", i + 1, f(row[0]), f(row[1]), f(row[2])).unwrap();
    }
    writeln!(s, "max_fidelity = {}", f(t.max_fidelity)).unwrap();
    writeln!(s, "max_fidelity_svd = {}", f(t.max_fidelity_svd)).unwrap();
    writeln!(s, "fidelity_deviation = {}", f(t.fidelity_deviation)).unwrap();
    writeln!(s, "det_t = {}", f(t.det_t)).unwrap();
    writeln!(s, "deviation_in_regime = {}", t.in_regime).unwrap();
    writeln!(s, "useful = {}", t.useful).unwrap();
    if cfg.mc_samples > 0 {
        let mc = oracle::avg_fidelity_monte_carlo(rho, cfg.mc_samples, cfg.seed)?;
        writeln!(s, "mc_mean_fidelity = {}", f(mc.mean)).unwrap();
        writeln!(s, "mc_fidelity_stddev = {}", f(mc.stddev)).unwrap();
    }
    Ok(s)
}

pub fn run_state(cfg: &RunConfig, state_text: &str) -> Result<String, CliError> {
    state_report(&parse_state(state_text)?, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_parsing() {
        let cases = [
            ("0.5", C64::new(0.5, 0.0)),
            ("-0.25+0.1i", C64::new(-0.25, 0.1)),
            ("1e-3-2E-4i", C64::new(1e-3, -2e-4)),
            ("3i", C64::new(0.0, 3.0)),
            ("-i", C64::new(0.0, -1.0)),
            ("2+i", C64::new(2.0, 1.0)),
            ("+0.5-0i", C64::new(0.5, 0.0)),
            ("1.5e+2+1e-2i", C64::new(150.0, 0.01)),
        ];
        for (s, want) in cases {
            assert_eq!(parse_complex(s).unwrap(), want, "{s}");
        }
        for s in ["", "abc", "1+2", "1+2k", "--1i"] {
            assert!(parse_complex(s).is_err(), "{s}");
        }
    }

    #[test]
    fn config_file_and_overrides() {
        let text = "# comment\nr12 = 0.2\ntemp=2\nrange = 0.1:0.5:0.1\ncoherence_basis = computational\n";
        let overrides = vec![("r12".to_string(), "0.3".to_string())];
        let cfg = RunConfig::build(Mode::SweepR12, Some(text), &overrides).unwrap();
        assert_eq!(cfg.bath.r12, 0.3);
        assert_eq!(cfg.bath.temperature, 2.0);
        assert_eq!(cfg.coherence_basis, CoherenceBasis::Computational);
        assert_eq!(cfg.r12_range().points().len(), 5);
    }

    #[test]
    fn config_errors() {
        let err = RunConfig::build(Mode::Evolve, Some("r21 = 0.1"), &[]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(RunConfig::build(Mode::Evolve, Some("r12"), &[]).is_err());
        assert!(RunConfig::build(Mode::Evolve, Some("dt = -1"), &[]).is_err());
        assert!(RunConfig::build(Mode::SweepR12, Some("range = 0.001:1:0.1"), &[]).is_err());
        assert!(RunConfig::build(Mode::Evolve, Some("range = 1:0:0.1"), &[]).is_err());
        assert!(RunConfig::build(Mode::Evolve, Some("temp = 0"), &[]).is_err());
        assert!("bogus".parse::<Mode>().is_err());
    }

    #[test]
    fn csv_formatting() {
        let t = Table { header: vec!["a".into(), "b".into()], rows: vec![vec![-0.0, 2.0 / 3.0]] };
        assert_eq!(t.to_csv(), "a,b\n0.00000000000e0,6.66666666667e-1\n");
    }

    #[test]
    fn state_file_errors() {
        assert!(parse_state("1 0 0 0\n0 0 0 0\n0 0 0 0\n").is_err());
        assert!(parse_state("1 0 0\n0 0 0 0\n0 0 0 0\n0 0 0 0\n").is_err());
        let not_psd = "1.5 0 0 0\n0 -0.5 0 0\n0 0 0 0\n0 0 0 0\n";
        assert_eq!(parse_state(not_psd).unwrap_err().exit_code(), 2);
    }
}
