//! One-parameter scans of the metric construction.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::linalg::eig2;
use crate::phermion::build_phermion;
use crate::su2::{build_hermitian, build_rho, ModelParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParam {
    Z,
    Omega,
    Alpha,
    Beta,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::Z => "z",
            SweepParam::Omega => "omega",
            SweepParam::Alpha => "alpha",
            SweepParam::Beta => "beta",
        }
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "z" => Ok(SweepParam::Z),
            "omega" => Ok(SweepParam::Omega),
            "alpha" => Ok(SweepParam::Alpha),
            "beta" => Ok(SweepParam::Beta),
            _ => Err(Error::Config(format!(
                "cannot sweep '{s}'; expected one of z, omega, alpha, beta"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub param: SweepParam,
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl SweepSpec {
    pub fn grid(&self) -> Result<Vec<f64>> {
        if !(self.lo.is_finite() && self.hi.is_finite()) || self.steps == 0 {
            return Err(Error::Config("sweep needs finite bounds and steps >= 1".into()));
        }
        if self.steps == 1 {
            return Ok(vec![self.lo]);
        }
        let h = (self.hi - self.lo) / (self.steps - 1) as f64;
        Ok((0..self.steps)
            .map(|k| {
                if k + 1 == self.steps {
                    self.hi
                } else {
                    self.lo + h * k as f64
                }
            })
            .collect())
    }
}

/// Per-row outcome of the metric construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Ok,
    InvalidParams,
    DomainError,
    DegenerateError,
    ConsistencyError,
}

impl From<&Error> for RowStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Domain { .. } => RowStatus::DomainError,
            Error::Degenerate { .. } => RowStatus::DegenerateError,
            Error::Consistency { .. } => RowStatus::ConsistencyError,
            _ => RowStatus::InvalidParams,
        }
    }
}

/// CSV row; numeric cells are empty when the construction failed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub param: SweepParam,
    pub value: f64,
    pub epsilon: Option<f64>,
    pub theta: Option<f64>,
    pub omega_cap: Option<f64>,
    pub delta: Option<f64>,
    pub lambda: Option<f64>,
    pub min_eig_rho: Option<f64>,
    pub anticomm_residual: Option<f64>,
    pub status: RowStatus,
}

pub const CSV_COLUMNS: [&str; 10] = [
    "param",
    "value",
    "epsilon",
    "theta",
    "omega_cap",
    "delta",
    "lambda",
    "min_eig_rho",
    "anticomm_residual",
    "status",
];

fn evaluate(cfg: &RunConfig, param: SweepParam, value: f64) -> SweepRow {
    let (mut omega, mut alpha, mut beta, mut z) = (cfg.omega, cfg.alpha, cfg.beta, cfg.z);
    match param {
        SweepParam::Z => z = value,
        SweepParam::Omega => omega = value,
        SweepParam::Alpha => alpha = value,
        SweepParam::Beta => beta = value,
    }
    let empty = |status| SweepRow {
        param,
        value,
        epsilon: None,
        theta: None,
        omega_cap: None,
        delta: None,
        lambda: None,
        min_eig_rho: None,
        anticomm_residual: None,
        status,
    };
    let params = if cfg.hermitian_limit {
        ModelParams::hermitian_limit(omega, alpha, beta)
    } else {
        ModelParams::new(omega, alpha, beta)
    };
    let outcome = params.and_then(|p| {
        let m = build_rho(&p, z)?;
        let (_, d) = build_hermitian(&p, z)?;
        let pair = build_phermion(&p, z)?;
        Ok((m, d, pair))
    });
    match outcome {
        Err(e) => empty(RowStatus::from(&e)),
        Ok((m, d, pair)) => {
            let (l0, l1) = eig2(&m.rho);
            SweepRow {
                param,
                value,
                epsilon: Some(m.epsilon),
                theta: Some(m.theta),
                omega_cap: Some(d.omega_cap),
                delta: Some(d.delta),
                lambda: Some(d.lambda),
                min_eig_rho: Some(l0.re.min(l1.re)),
                anticomm_residual: Some(pair.anticommutator_residual()),
                status: RowStatus::Ok,
            }
        }
    }
}

/// Evaluates every grid point. Failed points are kept and flagged.
pub fn run_sweep(cfg: &RunConfig, spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    let grid = spec.grid()?;
    Ok(grid
        .par_iter()
        .map(|&v| evaluate(cfg, spec.param, v))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z_sweep_default_positive() {
        let spec = SweepSpec {
            param: SweepParam::Z,
            lo: -5.0,
            hi: 5.0,
            steps: 101,
        };
        let rows = run_sweep(&RunConfig::default(), &spec).unwrap();
        assert_eq!(rows.len(), 101);
        assert_eq!(rows[50].value, 0.0);
        let ok: Vec<_> = rows.iter().filter(|r| r.status == RowStatus::Ok).collect();
        assert!(!ok.is_empty());
        assert!(ok.iter().all(|r| r.min_eig_rho.unwrap() > 0.0));
        assert!(ok.iter().all(|r| r.anticomm_residual.unwrap() < 1e-12));
    }

    #[test]
    fn hermitian_sweep_has_zero_epsilon() {
        let cfg = RunConfig {
            alpha: 0.7,
            beta: 0.7,
            hermitian_limit: true,
            ..RunConfig::default()
        };
        let spec = SweepSpec {
            param: SweepParam::Z,
            lo: -2.0,
            hi: 2.0,
            steps: 9,
        };
        for r in run_sweep(&cfg, &spec).unwrap() {
            assert_eq!(r.epsilon, Some(0.0));
        }
    }

    #[test]
    fn degenerate_row_is_flagged_not_dropped() {
        // α+β−ωz = 0 at z = 0.75 for the defaults
        let spec = SweepSpec {
            param: SweepParam::Z,
            lo: 0.0,
            hi: 1.5,
            steps: 3,
        };
        let rows = run_sweep(&RunConfig::default(), &spec).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[1].status, RowStatus::DegenerateError);
        assert_eq!(rows[1].epsilon, None);
        assert_eq!(rows[0].status, RowStatus::Ok);
        assert_eq!(rows[2].status, RowStatus::Ok);
    }

    #[test]
    fn grid_endpoints() {
        let g = SweepSpec {
            param: SweepParam::Omega,
            lo: 1.0,
            hi: 2.0,
            steps: 4,
        }
        .grid()
        .unwrap();
        assert_eq!(g.first(), Some(&1.0));
        assert_eq!(g.last(), Some(&2.0));
        assert!("mass".parse::<SweepParam>().is_err());
    }
}
