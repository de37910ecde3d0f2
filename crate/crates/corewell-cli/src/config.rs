//! Run configuration: INI-style sections of `key = value` lines.
//!
//! Recognized sections are `[well]`, `[solver]`, `[output]`, and
//! `[degeneracy]`. Unknown sections or keys are rejected with the offending
//! line number so a typo never silently falls back to a default.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use corewell::{Matching, Sector, WellConfig};

#[derive(Debug)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(n) => write!(f, "line {n}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

fn err_at(line: usize, message: impl Into<String>) -> ConfigError {
    ConfigError { line: Some(line), message: message.into() }
}

fn err(message: impl Into<String>) -> ConfigError {
    ConfigError { line: None, message: message.into() }
}

/// Either one core radius or an inclusive sweep grid, all in fm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadiusSpec {
    Single(f64),
    Range { start: f64, stop: f64, step: f64 },
}

impl RadiusSpec {
    /// Materialize the grid; a single radius becomes a one-point grid.
    pub fn grid(&self) -> Vec<f64> {
        match *self {
            RadiusSpec::Single(r) => vec![r],
            RadiusSpec::Range { start, stop, step } => {
                // i*step instead of accumulation keeps the points exact
                // multiples; the slack absorbs one ulp at the far end
                let count = ((stop - start) / step + 1e-9).floor() as usize;
                (0..=count).map(|i| start + step * i as f64).collect()
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct WellSection {
    pub m1: f64,
    pub m2: f64,
    pub v0: f64,
    pub radius: RadiusSpec,
    pub u0: f64,
    pub kappa: i32,
    pub sigma0: f64,
    pub sector: Sector,
}

#[derive(Debug, Clone, Copy)]
pub struct SolverSection {
    pub n_max: usize,
    pub scan_points: usize,
    /// Verified upper bound on the final bracket width of each eigenvalue.
    pub tol_e: f64,
    pub matching: Matching,
}

impl Default for SolverSection {
    fn default() -> Self {
        SolverSection { n_max: 8, scan_points: 2000, tol_e: 1e-9, matching: Matching::Weighted }
    }
}

#[derive(Debug, Clone, Default)]
pub struct OutputSection {
    pub dir: Option<PathBuf>,
    pub plots: bool,
}

/// Partner configuration for the degeneracy command; unset keys inherit
/// the `[well]` values, so the two configs differ only where stated.
#[derive(Debug, Clone, Copy, Default)]
pub struct DegeneracySection {
    pub u0: Option<f64>,
    pub kappa: Option<i32>,
}

#[derive(Debug, Clone)]
pub struct Config {
    pub well: WellSection,
    pub solver: SolverSection,
    pub output: OutputSection,
    pub degeneracy: Option<DegeneracySection>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Config, ConfigError> {
        let text = fs::read_to_string(path)
            .map_err(|e| err(format!("cannot read {}: {e}", path.display())))?;
        parse_config(&text)
    }

    /// The solver-facing config at one radius.
    pub fn well_config_at(&self, r0: f64) -> WellConfig {
        let w = &self.well;
        let mut cfg = WellConfig::new(w.m1, w.m2, w.v0, r0);
        cfg.u0 = w.u0;
        cfg.kappa = w.kappa;
        cfg.sigma0 = w.sigma0;
        cfg.sector = w.sector;
        cfg.matching = self.solver.matching;
        cfg
    }

    /// The `[degeneracy]` partner at the same radius, when declared.
    pub fn degeneracy_partner_at(&self, r0: f64) -> Option<WellConfig> {
        self.degeneracy.map(|d| {
            let mut cfg = self.well_config_at(r0);
            if let Some(u0) = d.u0 {
                cfg.u0 = u0;
            }
            if let Some(kappa) = d.kappa {
                cfg.kappa = kappa;
            }
            cfg
        })
    }
}

struct Entry {
    value: String,
    line: usize,
    used: bool,
}

struct RawConfig {
    entries: Vec<(&'static str, String, Entry)>,
    sections: Vec<&'static str>,
}

const SECTIONS: [(&str, &[&str]); 4] = [
    ("well", &["m1", "m2", "V0", "r0", "r0_start", "r0_stop", "r0_step", "U0", "kappa", "sigma0", "sector"]),
    ("solver", &["n_max", "scan_points", "tol_E", "matching"]),
    ("output", &["dir", "plots"]),
    ("degeneracy", &["U0", "kappa"]),
];

impl RawConfig {
    fn take(&mut self, section: &str, key: &str) -> Option<(String, usize)> {
        for (s, k, e) in self.entries.iter_mut() {
            if *s == section && k == key {
                e.used = true;
                return Some((e.value.clone(), e.line));
            }
        }
        None
    }

    fn has_section(&self, name: &str) -> bool {
        self.sections.contains(&name)
    }
}

fn scan_lines(text: &str) -> Result<RawConfig, ConfigError> {
    let mut raw = RawConfig { entries: Vec::new(), sections: Vec::new() };
    let mut current: Option<(&'static str, &'static [&'static str])> = None;
    for (idx, full) in text.lines().enumerate() {
        let line_no = idx + 1;
        let stripped = match full.find(['#', ';']) {
            Some(pos) => &full[..pos],
            None => full,
        };
        let trimmed = stripped.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(body) = trimmed.strip_prefix('[') {
            let name = body
                .strip_suffix(']')
                .ok_or_else(|| err_at(line_no, "section header is missing the closing ']'"))?
                .trim();
            let known = SECTIONS
                .iter()
                .find(|(s, _)| *s == name)
                .ok_or_else(|| err_at(line_no, format!("unknown section [{name}]")))?;
            if raw.sections.contains(&known.0) {
                return Err(err_at(line_no, format!("duplicate section [{name}]")));
            }
            raw.sections.push(known.0);
            current = Some(*known);
            continue;
        }
        let (section, keys) = current
            .ok_or_else(|| err_at(line_no, "key/value line before any [section] header"))?;
        let (key, value) = trimmed
            .split_once('=')
            .ok_or_else(|| err_at(line_no, "expected 'key = value'"))?;
        let key = key.trim();
        let value = value.trim();
        let key = *keys
            .iter()
            .find(|k| **k == key)
            .ok_or_else(|| err_at(line_no, format!("unknown key '{key}' in [{section}]")))?;
        if raw.entries.iter().any(|(s, k, _)| *s == section && k == key) {
            return Err(err_at(line_no, format!("duplicate key '{key}' in [{section}]")));
        }
        if value.is_empty() {
            return Err(err_at(line_no, format!("empty value for '{key}'")));
        }
        raw.entries.push((section, key.to_string(), Entry { value: value.to_string(), line: line_no, used: false }));
    }
    Ok(raw)
}

fn parse_num<T: std::str::FromStr>(
    raw: &mut RawConfig,
    section: &str,
    key: &str,
    kind: &str,
) -> Result<Option<(T, usize)>, ConfigError> {
    match raw.take(section, key) {
        None => Ok(None),
        Some((text, line)) => {
            let v = text
                .parse::<T>()
                .map_err(|_| err_at(line, format!("{key}: expected {kind}, got '{text}'")))?;
            Ok(Some((v, line)))
        }
    }
}

fn require<T>(v: Option<(T, usize)>, section: &str, key: &str) -> Result<T, ConfigError> {
    v.map(|(x, _)| x)
        .ok_or_else(|| err(format!("[{section}] is missing required key '{key}'")))
}

fn resolve_radius(raw: &mut RawConfig) -> Result<RadiusSpec, ConfigError> {
    let single = parse_num::<f64>(raw, "well", "r0", "a number")?;
    let start = parse_num::<f64>(raw, "well", "r0_start", "a number")?;
    let stop = parse_num::<f64>(raw, "well", "r0_stop", "a number")?;
    let step = parse_num::<f64>(raw, "well", "r0_step", "a number")?;
    let range_parts = [start.is_some(), stop.is_some(), step.is_some()];
    let have_range = range_parts.iter().any(|&b| b);
    match (single, have_range) {
        (Some((_, line)), true) => {
            Err(err_at(line, "r0 conflicts with r0_start/r0_stop/r0_step; give one or the other"))
        }
        (Some((r, line)), false) => {
            if r <= 0.0 {
                return Err(err_at(line, format!("r0 must be positive, got {r}")));
            }
            Ok(RadiusSpec::Single(r))
        }
        (None, true) => {
            if !range_parts.iter().all(|&b| b) {
                return Err(err(
                    "a radius sweep needs all three of r0_start, r0_stop, r0_step".to_string(),
                ));
            }
            let (start, start_line) = start.unwrap();
            let (stop, _) = stop.unwrap();
            let (step, step_line) = step.unwrap();
            if step <= 0.0 {
                return Err(err_at(step_line, format!("r0_step must be positive, got {step}")));
            }
            if !(start > 0.0) {
                return Err(err_at(start_line, format!("r0_start must be positive, got {start}")));
            }
            if stop < start {
                return Err(err_at(start_line, format!("r0_stop {stop} is below r0_start {start}")));
            }
            Ok(RadiusSpec::Range { start, stop, step })
        }
        (None, false) => {
            Err(err("[well] needs either r0 or the r0_start/r0_stop/r0_step triple".to_string()))
        }
    }
}

pub fn parse_config(text: &str) -> Result<Config, ConfigError> {
    let mut raw = scan_lines(text)?;
    if !raw.has_section("well") {
        return Err(err("missing [well] section".to_string()));
    }

    // masses and depth first so a malformed value is reported at its own
    // line before any missing-radius complaint
    let m1 = require(parse_num(&mut raw, "well", "m1", "a number")?, "well", "m1")?;
    let m2 = require(parse_num(&mut raw, "well", "m2", "a number")?, "well", "m2")?;
    let v0 = require(parse_num(&mut raw, "well", "V0", "a number")?, "well", "V0")?;
    let radius = resolve_radius(&mut raw)?;
    let sector = match raw.take("well", "sector") {
        None => Sector::Particle,
        Some((v, line)) => match v.as_str() {
            "particle" => Sector::Particle,
            "antiparticle" => Sector::Antiparticle,
            other => {
                return Err(err_at(line, format!("sector must be particle or antiparticle, got '{other}'")))
            }
        },
    };
    let well = WellSection {
        m1,
        m2,
        v0,
        radius,
        u0: parse_num(&mut raw, "well", "U0", "a number")?.map_or(0.0, |(v, _)| v),
        kappa: parse_num(&mut raw, "well", "kappa", "an integer")?.map_or(0, |(v, _)| v),
        sigma0: parse_num(&mut raw, "well", "sigma0", "a number")?.map_or(0.0, |(v, _)| v),
        sector,
    };

    let mut solver = SolverSection::default();
    if let Some((v, _)) = parse_num::<usize>(&mut raw, "solver", "n_max", "a nonnegative integer")? {
        solver.n_max = v;
    }
    if let Some((v, line)) = parse_num::<usize>(&mut raw, "solver", "scan_points", "a nonnegative integer")? {
        if v < 16 {
            return Err(err_at(line, format!("scan_points must be at least 16, got {v}")));
        }
        solver.scan_points = v;
    }
    if let Some((v, line)) = parse_num::<f64>(&mut raw, "solver", "tol_E", "a number")? {
        if !(v > 0.0) {
            return Err(err_at(line, format!("tol_E must be positive, got {v}")));
        }
        solver.tol_e = v;
    }
    if let Some((v, line)) = raw.take("solver", "matching") {
        solver.matching = match v.as_str() {
            "weighted" => Matching::Weighted,
            "plain" => Matching::Plain,
            other => {
                return Err(err_at(line, format!("matching must be weighted or plain, got '{other}'")))
            }
        };
    }

    let mut output = OutputSection::default();
    if let Some((v, _)) = raw.take("output", "dir") {
        output.dir = Some(PathBuf::from(v));
    }
    if let Some((v, line)) = raw.take("output", "plots") {
        output.plots = match v.as_str() {
            "true" => true,
            "false" => false,
            other => return Err(err_at(line, format!("plots must be true or false, got '{other}'"))),
        };
    }

    let degeneracy = if raw.has_section("degeneracy") {
        Some(DegeneracySection {
            u0: parse_num(&mut raw, "degeneracy", "U0", "a number")?.map(|(v, _)| v),
            kappa: parse_num(&mut raw, "degeneracy", "kappa", "an integer")?.map(|(v, _)| v),
        })
    } else {
        None
    };

    Ok(Config { well, solver, output, degeneracy })
}
