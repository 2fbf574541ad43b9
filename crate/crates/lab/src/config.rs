//! Run configuration: a TOML file with dotted sections.
//!
//! ```toml
//! seed = 7
//! [group]
//! m = 2
//! n = 2
//! [orbit]
//! case = "sunn"
//! kappa = 2.0
//! x = 0.7
//! y = 0.3
//! [init]
//! q = [1.0, 0.4]
//! p = [0.3, -0.2]
//! [integrator]
//! dt = 1e-3
//! t_max = 5.0
//! [tolerances]
//! regularity = 1e-4
//! [output]
//! dir = "out"
//! ```

use std::path::{Path, PathBuf};

use reduction_core::dynamics::IntegratorConfig;
use reduction_core::reduction::{sumn_setup, sun1n_setup, sunn_setup, Case, Setup};
use serde::{Deserialize, Serialize};

use crate::LabError;

/// Overrides `output.dir`.
pub const OUTPUT_ENV: &str = "REDUCTION_LAB_OUTPUT";

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub group: Group,
    pub orbit: Orbit,
    pub init: Init,
    pub integrator: Integrator,
    #[serde(default)]
    pub tolerances: Tolerances,
    pub output: Output,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Group {
    pub m: usize,
    pub n: usize,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Orbit {
    pub case: String,
    pub kappa: f64,
    /// Forced to `-y` for `sumn`; may be omitted there.
    #[serde(default)]
    pub x: Option<f64>,
    pub y: f64,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Init {
    pub q: Vec<f64>,
    pub p: Vec<f64>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Integrator {
    pub dt: f64,
    pub t_max: f64,
    #[serde(default = "one")]
    pub sample_every: usize,
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Smallest allowed distance to a singular wall.
    #[serde(default = "default_regularity")]
    pub regularity: f64,
    /// `compare` passes iff `max_dq` is at most this.
    #[serde(default = "default_compare")]
    pub compare: f64,
}

fn default_regularity() -> f64 {
    1e-4
}

fn default_compare() -> f64 {
    1e-6
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            regularity: default_regularity(),
            compare: default_compare(),
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Output {
    pub dir: PathBuf,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, LabError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| LabError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn from_toml_str(text: &str) -> Result<Self, LabError> {
        let value: toml::Table = text
            .parse()
            .map_err(|e| LabError::Usage(format!("config is not valid TOML: {e}")))?;
        Self::from_table(value)
    }

    pub fn from_table(table: toml::Table) -> Result<Self, LabError> {
        let cfg: RunConfig = toml::Value::Table(table)
            .try_into()
            .map_err(|e: toml::de::Error| LabError::Usage(format!("config: {}", e.message())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn case(&self) -> Result<Case, LabError> {
        Case::parse(&self.orbit.case).ok_or_else(|| {
            LabError::Usage(format!(
                "orbit.case must be one of sunn, sun1n, sumn (got {:?})",
                self.orbit.case
            ))
        })
    }

    /// Checks everything that can be checked without running anything,
    /// including the orbit consistency conditions.
    pub fn validate(&self) -> Result<(), LabError> {
        let usage = |msg: String| Err(LabError::Usage(msg));
        let (m, n) = (self.group.m, self.group.n);
        if n == 0 || m < n {
            return usage(format!("group: need m >= n >= 1 (got m = {m}, n = {n})"));
        }
        match self.case()? {
            Case::Sunn if m != n => {
                return usage(format!(
                    "orbit.case = sunn needs m = n (got m = {m}, n = {n})"
                ))
            }
            Case::Sun1n if m != n + 1 => {
                return usage(format!(
                    "orbit.case = sun1n needs m = n + 1 (got m = {m}, n = {n})"
                ))
            }
            Case::Sumn if m <= n => {
                return usage(format!(
                    "orbit.case = sumn needs m > n (got m = {m}, n = {n})"
                ))
            }
            Case::Sumn => {
                if let Some(x) = self.orbit.x {
                    if x != -self.orbit.y {
                        return usage(format!(
                            "orbit.x must equal -orbit.y for sumn (got x = {x}, y = {})",
                            self.orbit.y
                        ));
                    }
                }
            }
            Case::Sunn | Case::Sun1n if self.orbit.x.is_none() => {
                return usage("orbit.x is required for sunn and sun1n".into())
            }
            _ => {}
        }
        for (name, v) in [("init.q", &self.init.q), ("init.p", &self.init.p)] {
            if v.len() != n {
                return usage(format!(
                    "{name} must have n = {n} entries (got {})",
                    v.len()
                ));
            }
            if v.iter().any(|x| !x.is_finite()) {
                return usage(format!("{name} must be finite"));
            }
        }
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(LabError::Usage(format!(
                    "{name} must be positive and finite (got {v})"
                )))
            }
        };
        positive("integrator.dt", self.integrator.dt)?;
        positive("integrator.t_max", self.integrator.t_max)?;
        positive("tolerances.regularity", self.tolerances.regularity)?;
        positive("tolerances.compare", self.tolerances.compare)?;
        if self.integrator.sample_every == 0 {
            return usage("integrator.sample_every must be at least 1".into());
        }
        self.integrator_config()
            .validate()
            .map_err(|e| LabError::Usage(format!("integrator: {e}")))?;
        self.setup()?;
        Ok(())
    }

    pub fn setup(&self) -> Result<Setup, LabError> {
        let o = &self.orbit;
        let built = match self.case()? {
            Case::Sunn => sunn_setup(self.group.n, o.kappa, o.x.unwrap_or_default(), o.y),
            Case::Sun1n => sun1n_setup(self.group.n, o.kappa, o.x.unwrap_or_default(), o.y),
            Case::Sumn => sumn_setup(self.group.m, self.group.n, o.kappa, o.y),
        };
        built.map_err(|e| LabError::Usage(format!("orbit: {e}")))
    }

    pub fn integrator_config(&self) -> IntegratorConfig {
        IntegratorConfig {
            dt: self.integrator.dt,
            t_max: self.integrator.t_max,
            regularity_floor: self.tolerances.regularity,
            sample_every: self.integrator.sample_every,
        }
    }

    /// `output.dir`, unless the environment overrides it.
    pub fn output_dir(&self) -> PathBuf {
        match std::env::var_os(OUTPUT_ENV) {
            Some(dir) if !dir.is_empty() => PathBuf::from(dir),
            _ => self.output.dir.clone(),
        }
    }
}

/// Replaces the number at a dotted key, keeping integer keys integral.
pub fn set_number(table: &mut toml::Table, key: &str, value: f64) -> Result<(), LabError> {
    let unknown = || LabError::Usage(format!("unknown numeric parameter {key:?}"));
    let mut parts: Vec<&str> = key.split('.').collect();
    let last = parts.pop().ok_or_else(unknown)?;
    let mut cur = table;
    for part in parts {
        cur = cur
            .get_mut(part)
            .and_then(toml::Value::as_table_mut)
            .ok_or_else(unknown)?;
    }
    let slot = cur.get_mut(last).ok_or_else(unknown)?;
    *slot = match slot {
        toml::Value::Float(_) => toml::Value::Float(value),
        toml::Value::Integer(_) if value.fract() == 0.0 && value.abs() < 9e15 => {
            toml::Value::Integer(value as i64)
        }
        toml::Value::Integer(_) => {
            return Err(LabError::Usage(format!(
                "{key} takes integers (got {value})"
            )))
        }
        _ => return Err(unknown()),
    };
    Ok(())
}
