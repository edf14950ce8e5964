//! `key = value` run configuration with line-precise diagnostics.
//!
//! Lines are trimmed; empty lines and `#` comments are skipped; keys are
//! case-sensitive; unknown keys and out-of-range values are rejected with
//! their line number, and every invalid line is reported, not just the
//! first.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::{DMatrix, DVector};
use rstab_core::cert::KernelMode;
use rstab_core::sim::DisturbanceSpec;

/// One rejected configuration line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at line {}", self.message, self.line)
    }
}

/// Which worked system a simulation command should run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SystemChoice {
    #[default]
    Example1,
    Custom,
}

/// Disturbance selection before vectors are resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DisturbanceChoice {
    Zero,
    #[default]
    Prime,
    Residue,
}

/// Parsed configuration with documented defaults applied.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub system: SystemChoice,
    pub q: u64,
    pub gain: Option<f64>,
    pub decay: Option<f64>,
    pub mode: KernelMode,
    /// `None` until resolved against the per-simulator default.
    pub lambda: Option<f64>,
    pub window: Option<usize>,
    pub steps: usize,
    pub horizon: f64,
    pub step_size: f64,
    pub x0: Vec<f64>,
    pub matrix: Option<DMatrix<f64>>,
    pub disturbance: DisturbanceChoice,
    pub dist_vector: Vec<f64>,
    pub residue_modulus: Option<u64>,
    pub residue: Option<u64>,
    pub seed: u64,
    pub out: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            system: SystemChoice::Example1,
            q: 5,
            gain: None,
            decay: None,
            mode: KernelMode::Absolute,
            lambda: None,
            window: None,
            steps: 200,
            horizon: 50.0,
            step_size: 0.05,
            x0: vec![1.0, 1.0],
            matrix: None,
            disturbance: DisturbanceChoice::Prime,
            dist_vector: vec![0.0, 0.5],
            residue_modulus: None,
            residue: None,
            seed: 0,
            out: None,
        }
    }
}

impl RunConfig {
    /// Discount for discrete traces (default 0.9).
    pub fn discrete_lambda(&self) -> f64 {
        self.lambda.unwrap_or(0.9)
    }

    /// Discount for hybrid sample traces (default 0.995).
    pub fn hybrid_lambda(&self) -> f64 {
        self.lambda.unwrap_or(0.995)
    }

    /// Resolve the configured disturbance against a state dimension.
    pub fn disturbance_spec(&self, dim: usize) -> Result<DisturbanceSpec, String> {
        let vector = || -> Result<DVector<f64>, String> {
            if self.dist_vector.len() != dim {
                return Err(format!(
                    "dist_vector has {} entries, state dimension is {dim}",
                    self.dist_vector.len()
                ));
            }
            Ok(DVector::from_vec(self.dist_vector.clone()))
        };
        match self.disturbance {
            DisturbanceChoice::Zero => Ok(DisturbanceSpec::Zero),
            DisturbanceChoice::Prime => Ok(DisturbanceSpec::PrimeIndexed { vector: vector()? }),
            DisturbanceChoice::Residue => {
                let modulus = self
                    .residue_modulus
                    .ok_or("disturbance = residue requires key `m`")?;
                let residue = self.residue.ok_or("disturbance = residue requires key `r0`")?;
                Ok(DisturbanceSpec::ResidueClass {
                    modulus,
                    residue,
                    vector: vector()?,
                })
            }
        }
    }
}

fn parse_vector(text: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.is_empty() || parts.iter().any(|p| p.is_empty()) {
        return Err("expected comma-separated numbers".into());
    }
    parts
        .iter()
        .map(|p| {
            p.parse::<f64>()
                .map_err(|_| format!("`{p}` is not a number"))
        })
        .collect()
}

fn parse_matrix(text: &str) -> Result<DMatrix<f64>, String> {
    let rows: Vec<Vec<f64>> = text
        .split(';')
        .map(|row| parse_vector(row.trim()))
        .collect::<Result<_, _>>()?;
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err("matrix must be square: rows separated by `;`".into());
    }
    let flat: Vec<f64> = rows.into_iter().flatten().collect();
    Ok(DMatrix::from_row_slice(n, n, &flat))
}

/// Apply one `key = value` assignment. Shared by file parsing and by the
/// `--set` command-line overrides.
pub fn apply_assignment(cfg: &mut RunConfig, key: &str, value: &str) -> Result<(), String> {
    match key {
        "system" => {
            cfg.system = match value {
                "example1" => SystemChoice::Example1,
                "custom" => SystemChoice::Custom,
                other => return Err(format!("unknown system `{other}` (example1|custom)")),
            }
        }
        "q" => {
            let q: u64 = value.parse().map_err(|_| "q must be a positive integer")?;
            if q == 0 {
                return Err("q must be >= 1".into());
            }
            cfg.q = q;
        }
        "M" => {
            let m: f64 = value.parse().map_err(|_| "M must be a number")?;
            if !(m >= 0.0 && m.is_finite()) {
                return Err("M out of range [0, inf)".into());
            }
            cfg.gain = Some(m);
        }
        "r" => {
            let r: f64 = value.parse().map_err(|_| "r must be a number")?;
            if !(r > 0.0 && r < 1.0) {
                return Err("r out of range (0,1)".into());
            }
            cfg.decay = Some(r);
        }
        "mode" => cfg.mode = value.parse::<KernelMode>()?,
        "lambda" => {
            let l: f64 = value.parse().map_err(|_| "lambda must be a number")?;
            if !(l > 0.0 && l <= 1.0) {
                return Err("lambda out of range (0,1]".into());
            }
            cfg.lambda = Some(l);
        }
        "window" => {
            if value == "unbounded" {
                cfg.window = None;
            } else {
                let w: usize = value
                    .parse()
                    .map_err(|_| "window must be a positive integer or `unbounded`")?;
                if w == 0 {
                    return Err("window must be >= 1".into());
                }
                cfg.window = Some(w);
            }
        }
        "K" => {
            cfg.steps = value
                .parse()
                .map_err(|_| "K must be a nonnegative integer")?;
        }
        "T" => {
            let t: f64 = value.parse().map_err(|_| "T must be a number")?;
            if !(t > 0.0 && t.is_finite()) {
                return Err("T out of range (0, inf)".into());
            }
            cfg.horizon = t;
        }
        "h" => {
            let h: f64 = value.parse().map_err(|_| "h must be a number")?;
            if !(h > 0.0 && h.is_finite()) {
                return Err("h out of range (0, inf)".into());
            }
            cfg.step_size = h;
        }
        "x0" => cfg.x0 = parse_vector(value)?,
        "A" => {
            cfg.matrix = Some(parse_matrix(value)?);
            cfg.system = SystemChoice::Custom;
        }
        "disturbance" => {
            cfg.disturbance = match value {
                "zero" => DisturbanceChoice::Zero,
                "prime" => DisturbanceChoice::Prime,
                "residue" => DisturbanceChoice::Residue,
                other => {
                    return Err(format!(
                        "unknown disturbance `{other}` (zero|prime|residue)"
                    ))
                }
            }
        }
        "dist_vector" => cfg.dist_vector = parse_vector(value)?,
        "m" => {
            let m: u64 = value.parse().map_err(|_| "m must be a positive integer")?;
            if m == 0 {
                return Err("m must be >= 1".into());
            }
            cfg.residue_modulus = Some(m);
        }
        "r0" => {
            cfg.residue = Some(value.parse().map_err(|_| "r0 must be a nonnegative integer")?);
        }
        "seed" => {
            cfg.seed = value.parse().map_err(|_| "seed must be a nonnegative integer")?;
        }
        "out" => cfg.out = Some(value.to_string()),
        other => return Err(format!("unknown key `{other}`")),
    }
    // cross-field range check shared by `m`/`r0`
    if let (Some(m), Some(r0)) = (cfg.residue_modulus, cfg.residue) {
        if r0 >= m {
            return Err(format!("r0 out of range [0, {m})"));
        }
    }
    Ok(())
}

/// Parse a whole configuration file, reporting every invalid line.
pub fn parse_config(text: &str) -> Result<RunConfig, Vec<ConfigError>> {
    let mut cfg = RunConfig::default();
    let mut errors = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            errors.push(ConfigError {
                line: line_no,
                message: format!("`{line}` is not a `key = value` assignment"),
            });
            continue;
        };
        if let Err(message) = apply_assignment(&mut cfg, key.trim(), value.trim()) {
            errors.push(ConfigError {
                line: line_no,
                message,
            });
        }
    }
    if errors.is_empty() {
        Ok(cfg)
    } else {
        Err(errors)
    }
}

/// Parse repeated `--set key=value` overrides on top of a config.
pub fn apply_overrides(
    cfg: &mut RunConfig,
    overrides: &BTreeMap<String, String>,
) -> Result<(), String> {
    for (key, value) in overrides {
        apply_assignment(cfg, key, value).map_err(|e| format!("--set {key}: {e}"))?;
    }
    Ok(())
}
