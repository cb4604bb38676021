//! Run configuration shared by the command-line harness and the library drivers.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::asymptotics::K_MAX;
use crate::error::{Error, Result};
use crate::special::EvalAccuracy;

/// Smallest t_max accepted: the first zero of ζ sits at 14.13.
pub const MIN_T_MAX: f64 = 15.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub t_max: f64,
    pub n: usize,
    #[serde(rename = "K")]
    pub k_depth: usize,
    pub k_max: usize,
    pub abs_tol: f64,
    pub max_terms: usize,
    pub include_sub_gamma1_lambdas: bool,
    pub threads: usize,
    pub output_dir: PathBuf,
    pub stride: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        let acc = EvalAccuracy::default();
        Self {
            t_max: 1000.0,
            n: 1,
            k_depth: 3,
            k_max: K_MAX,
            abs_tol: acc.abs_tol,
            max_terms: acc.max_terms,
            include_sub_gamma1_lambdas: false,
            threads: 1,
            output_dir: PathBuf::from("."),
            stride: 1,
        }
    }
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("bad value {value:?} for {key}")))
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.t_max >= MIN_T_MAX) {
            return Err(Error::Config(format!(
                "t_max must be at least {MIN_T_MAX}, got {}",
                self.t_max
            )));
        }
        if !(self.abs_tol > 0.0) {
            return Err(Error::Config("abs_tol must be positive".into()));
        }
        if self.threads == 0 || self.stride == 0 || self.k_max == 0 {
            return Err(Error::Config("threads, stride and k_max must be positive".into()));
        }
        self.accuracy().map(|_| ())
    }

    pub fn accuracy(&self) -> Result<EvalAccuracy> {
        EvalAccuracy::new(self.abs_tol, self.max_terms)
    }

    /// Sets one field from its textual form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key.trim() {
            "t_max" => self.t_max = parse(key, value)?,
            "n" => self.n = parse(key, value)?,
            "K" | "k" => self.k_depth = parse(key, value)?,
            "k_max" => self.k_max = parse(key, value)?,
            "abs_tol" => self.abs_tol = parse(key, value)?,
            "max_terms" => self.max_terms = parse(key, value)?,
            "include_sub_gamma1_lambdas" => self.include_sub_gamma1_lambdas = parse(key, value)?,
            "threads" => self.threads = parse(key, value)?,
            "output_dir" => self.output_dir = PathBuf::from(value),
            "stride" => self.stride = parse(key, value)?,
            other => return Err(Error::Config(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_key_values(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", i + 1)))?;
            self.set(k, v)?;
        }
        Ok(())
    }

    /// Reads a key=value file, or a JSON file holding either a config or a
    /// record with a `config` field (as written to run.json).
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        if text.trim_start().starts_with('{') {
            let v: serde_json::Value = serde_json::from_str(&text)?;
            let inner = v.get("config").cloned().unwrap_or(v);
            return Ok(serde_json::from_value(inner)?);
        }
        let mut c = Self::default();
        c.apply_key_values(&text)?;
        Ok(c)
    }
}
