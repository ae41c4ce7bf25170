//! Run configuration: flat `key = value` text with `#` comments.
//!
//! ```text
//! # model
//! omega = 2
//! alpha = 1
//! beta  = 0.5
//! z     = 0
//! amp_list = 0, 0.5, 1+1i, 2
//! suites = core, phermion
//! ```

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::fock::MAX_BOSON_LEVELS;
use crate::quadrature::QuadratureSpec;
use crate::report::{ParamEcho, Suite};
use crate::scs::check_amplitude;
use crate::su2::{build_hermitian, ModelParams};
use crate::C64;

/// Boson truncation used by the algebra suites when none is configured.
pub const DEFAULT_ALGEBRA_LEVELS: usize = 8;
/// Boson truncation for coherent-state work.
pub const DEFAULT_SCS_LEVELS: usize = 64;
/// Boson truncation for the resolution of identity.
pub const DEFAULT_IDENTITY_LEVELS: usize = 32;

pub const KEYS: [&str; 13] = [
    "omega",
    "alpha",
    "beta",
    "z",
    "hermitian_limit",
    "n_max",
    "amp_list",
    "quad_r",
    "quad_nr",
    "quad_ntheta",
    "seed",
    "samples",
    "suites",
];

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub omega: f64,
    pub alpha: f64,
    pub beta: f64,
    pub z: f64,
    /// Admit `α = β`.
    pub hermitian_limit: bool,
    /// Overrides every suite's default truncation when set.
    pub n_max: Option<usize>,
    pub amp_list: Vec<C64>,
    pub quadrature: QuadratureSpec,
    pub seed: u64,
    /// Number of random parameter points for the property checks.
    pub samples: usize,
    pub suites: Vec<Suite>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            omega: 2.0,
            alpha: 1.0,
            beta: 0.5,
            z: 0.0,
            hermitian_limit: false,
            n_max: None,
            amp_list: vec![
                C64::new(0.0, 0.0),
                C64::new(0.5, 0.0),
                C64::new(1.0, 1.0),
                C64::new(2.0, 0.0),
            ],
            quadrature: QuadratureSpec::default(),
            seed: 0,
            samples: 200,
            suites: Suite::default_set(),
        }
    }
}

fn config_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

fn parse_real(key: &str, v: &str) -> Result<f64> {
    let x: f64 = v
        .parse()
        .map_err(|_| config_err(format!("{key}: '{v}' is not a number")))?;
    if !x.is_finite() {
        return Err(config_err(format!("{key}: '{v}' is not finite")));
    }
    Ok(x)
}

fn parse_count<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| config_err(format!("{key}: '{v}' is not a non-negative integer")))
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(config_err(format!("{key}: '{v}' is not a boolean"))),
    }
}

fn parse_float_part(s: &str, whole: &str) -> Result<f64> {
    let x: f64 = s
        .parse()
        .map_err(|_| config_err(format!("'{whole}' is not a complex number")))?;
    if !x.is_finite() {
        return Err(config_err(format!("'{whole}' is not finite")));
    }
    Ok(x)
}

/// Parses `a`, `bi`, `a+bi`, `a-bi` (also with `j`, and bare `i`, `-i`).
/// Whitespace is ignored.
pub fn parse_complex(text: &str) -> Result<C64> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() || !t.is_ascii() {
        return Err(config_err(format!("'{text}' is not a complex number")));
    }
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return Ok(C64::new(parse_float_part(&t, text)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (parse_float_part(&body[..k], text)?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => parse_float_part(s, text)?,
    };
    Ok(C64::new(re, im))
}

/// Comma-separated complex numbers, optionally in brackets.
pub fn parse_amp_list(text: &str) -> Result<Vec<C64>> {
    let t = text.trim();
    let t = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .unwrap_or(t);
    if t.trim().is_empty() {
        return Ok(Vec::new());
    }
    t.split(',').map(parse_complex).collect()
}

fn parse_suites(text: &str) -> Result<Vec<Suite>> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if item == "all" {
            out.extend(Suite::ALL);
        } else {
            out.push(item.parse()?);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

impl RunConfig {
    /// Defaults overridden by the entries of `text`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        let mut seen = HashSet::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| config_err(format!("line {}: expected key = value", lineno + 1)))?;
            let key = key.trim();
            if !seen.insert(key.replace('-', "_")) {
                return Err(config_err(format!("line {}: duplicate key '{key}'", lineno + 1)));
            }
            cfg.set(key, value.trim())
                .map_err(|e| config_err(format!("line {}: {}", lineno + 1, strip_prefix(&e))))?;
        }
        Ok(cfg)
    }

    /// Sets one key; `-` and `_` are interchangeable in key names.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.replace('-', "_");
        match key.as_str() {
            "omega" => self.omega = parse_real(&key, value)?,
            "alpha" => self.alpha = parse_real(&key, value)?,
            "beta" => self.beta = parse_real(&key, value)?,
            "z" => self.z = parse_real(&key, value)?,
            "hermitian_limit" => self.hermitian_limit = parse_bool(&key, value)?,
            "n_max" => self.n_max = Some(parse_count(&key, value)?),
            "amp_list" => self.amp_list = parse_amp_list(value)?,
            "quad_r" => self.quadrature.radius = parse_real(&key, value)?,
            "quad_nr" => self.quadrature.n_radial = parse_count(&key, value)?,
            "quad_ntheta" => self.quadrature.n_angular = parse_count(&key, value)?,
            "seed" => self.seed = parse_count(&key, value)?,
            "samples" => self.samples = parse_count(&key, value)?,
            "suites" => self.suites = parse_suites(value)?,
            _ => return Err(config_err(format!("unknown key '{key}'"))),
        }
        Ok(())
    }

    pub fn params(&self) -> Result<ModelParams> {
        if self.hermitian_limit {
            ModelParams::hermitian_limit(self.omega, self.alpha, self.beta)
        } else {
            ModelParams::new(self.omega, self.alpha, self.beta)
        }
    }

    /// Truncation used by `suite`.
    pub fn levels(&self, suite: Suite) -> usize {
        self.n_max.unwrap_or(match suite {
            Suite::Scs => DEFAULT_SCS_LEVELS,
            Suite::Identity => DEFAULT_IDENTITY_LEVELS,
            _ => DEFAULT_ALGEBRA_LEVELS,
        })
    }

    /// Checks the model at the configured `z`, the truncation bounds, the
    /// quadrature and, for coherent-state work at `levels`, the amplitudes.
    pub fn validate(&self, amplitude_levels: Option<usize>) -> Result<ModelParams> {
        let p = self.params()?;
        build_hermitian(&p, self.z)?;
        for s in &self.suites {
            let n = self.levels(*s);
            if !(2..=MAX_BOSON_LEVELS).contains(&n) {
                return Err(Error::Dimension(n));
            }
        }
        let q = &self.quadrature;
        if !(q.radius > 0.0) || q.n_radial == 0 || q.n_angular == 0 {
            return Err(config_err("quadrature needs quad_r > 0 and positive node counts"));
        }
        if let Some(n) = amplitude_levels {
            if !(2..=MAX_BOSON_LEVELS).contains(&n) {
                return Err(Error::Dimension(n));
            }
            for a in &self.amp_list {
                check_amplitude(*a, n)?;
            }
        }
        Ok(p)
    }

    pub fn echo(&self) -> ParamEcho {
        ParamEcho {
            omega: self.omega,
            alpha: self.alpha,
            beta: self.beta,
            z: self.z,
            hermitian_limit: self.hermitian_limit,
        }
    }
}

fn strip_prefix(e: &Error) -> String {
    match e {
        Error::Config(m) => m.clone(),
        other => other.to_string(),
    }
}
