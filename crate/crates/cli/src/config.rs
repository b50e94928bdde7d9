//! Suite configuration and parsing of parameter lists.

use std::collections::BTreeMap;

use mirabolic::scalar::{parse_scalar, Param, Scalar};
use mirabolic::whittaker::symbolic_u;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("unknown suite `{0}` (available: {1})")]
    UnknownSuite(String, String),
    #[error("rank {0} is out of range (2..=4)")]
    BadRank(u8),
    #[error("expected {want} values for {what}, got {got}")]
    WrongLength { what: &'static str, want: usize, got: usize },
    #[error("cannot parse `{0}`: {1}")]
    Parse(String, String),
    #[error("unknown representation `{0}` (vector, dual, trivial)")]
    UnknownRep(String),
}

/// Symbolic parameters, or a rational point.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum Params {
    #[default]
    Symbolic,
    Numeric(Vec<Scalar>),
}

impl Params {
    /// `sym`, or a comma-separated list of rational scalars.
    pub fn parse(s: &str) -> Result<Self, ConfigError> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("sym") || s.eq_ignore_ascii_case("symbolic") {
            return Ok(Params::Symbolic);
        }
        let vals = s
            .split(',')
            .map(|x| {
                let v = parse_scalar(x.trim()).map_err(|e| ConfigError::Parse(x.to_string(), e.to_string()))?;
                if v.constant_value().is_none() {
                    return Err(ConfigError::Parse(x.to_string(), "not a rational number".into()));
                }
                Ok(v)
            })
            .collect::<Result<_, _>>()?;
        Ok(Params::Numeric(vals))
    }

    fn describe(&self) -> String {
        match self {
            Params::Symbolic => "sym".into(),
            Params::Numeric(v) => v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Restrict to one rank; `None` runs the suite's default ranks.
    pub n: Option<u8>,
    pub u: Params,
    pub lambda: Params,
    pub degree: Option<usize>,
    pub jobs: Option<usize>,
    pub seed: u64,
    pub timings: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { n: None, u: Params::Symbolic, lambda: Params::Symbolic, degree: None, jobs: None, seed: 0, timings: false }
    }
}

/// The part of the configuration echoed into reports.
#[derive(Clone, Debug, Serialize)]
pub struct ConfigEcho {
    pub n: Option<u8>,
    pub u: String,
    pub lambda: String,
    pub degree: Option<usize>,
    pub seed: u64,
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if let Some(n) = self.n {
            if !(2..=4).contains(&n) {
                return Err(ConfigError::BadRank(n));
            }
            if let Params::Numeric(v) = &self.u {
                if v.len() != n as usize - 1 {
                    return Err(ConfigError::WrongLength { what: "--u", want: n as usize - 1, got: v.len() });
                }
            }
            if let Params::Numeric(v) = &self.lambda {
                if v.len() != n as usize {
                    return Err(ConfigError::WrongLength { what: "--lambda", want: n as usize, got: v.len() });
                }
            }
        }
        Ok(())
    }

    /// Ranks to run: the requested one if it is among `defaults` or `allowed`.
    pub fn ranks(&self, defaults: &[u8], allowed: &[u8]) -> Vec<u8> {
        match self.n {
            Some(n) if defaults.contains(&n) || allowed.contains(&n) => vec![n],
            Some(_) => Vec::new(),
            None => defaults.to_vec(),
        }
    }

    /// Spectral parameters at rank `n`: numeric if given, else symbolic up
    /// to rank 3 and `(5, 7, 11)` at rank 4.
    pub fn u_at(&self, n: u8) -> Vec<Scalar> {
        match &self.u {
            Params::Numeric(v) if v.len() == n as usize - 1 => v.clone(),
            _ if n >= 4 => [5, 7, 11, 13, 17].iter().take(n as usize - 1).map(|&x| Scalar::from_int(x)).collect(),
            _ => symbolic_u(n),
        }
    }

    /// `λ`-point at rank `n`, if a numeric one was requested.
    pub fn lambda_at(&self, n: u8) -> Option<BTreeMap<Param, Scalar>> {
        match &self.lambda {
            Params::Numeric(v) if v.len() == n as usize => {
                Some(v.iter().enumerate().map(|(k, x)| (Param::Lambda(k as u8 + 1), x.clone())).collect())
            }
            _ => None,
        }
    }

    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho { n: self.n, u: self.u.describe(), lambda: self.lambda.describe(), degree: self.degree, seed: self.seed }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_lists() {
        assert_eq!(Params::parse("sym").unwrap(), Params::Symbolic);
        assert_eq!(Params::parse("1, 3/2").unwrap(), Params::Numeric(vec![Scalar::one(), Scalar::frac(3, 2)]));
        assert!(Params::parse("hbar").is_err());
        assert!(Params::parse("1,,2").is_err());
    }

    #[test]
    fn rank_four_defaults_to_numeric_u() {
        let c = SuiteConfig::default();
        assert_eq!(c.u_at(4), vec![Scalar::from_int(5), Scalar::from_int(7), Scalar::from_int(11)]);
        assert_eq!(c.u_at(3), symbolic_u(3));
    }

    #[test]
    fn validation() {
        let mut c = SuiteConfig { n: Some(5), ..Default::default() };
        assert_eq!(c.validate(), Err(ConfigError::BadRank(5)));
        c.n = Some(3);
        c.u = Params::Numeric(vec![Scalar::one()]);
        assert!(matches!(c.validate(), Err(ConfigError::WrongLength { .. })));
    }
}
