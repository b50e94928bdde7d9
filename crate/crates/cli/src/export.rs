//! Deterministic JSON exports of twists, R-matrices and bivectors.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use mirabolic::extremal::{dyn_twist_matrix, gauge_check};
use mirabolic::scalar::parse_scalar;
use mirabolic::twist::{classical_cg, r_matrix, twist_matrix};
use mirabolic::whittaker::symbolic_u;
use mirabolic::{Algebra, CheckReport, Param, Rep, Scalar, ScalarMatrix};
use serde_json::Value;

use crate::config::{ConfigError, Params};

/// `vector`, `dual` or `trivial` over `gl_n`.
pub fn parse_rep(s: &str, n: u8) -> Result<Rep, ConfigError> {
    match s.trim() {
        "vector" => Ok(Rep::vector(n)),
        "dual" => Ok(Rep::vector(n).dual()),
        "trivial" => Ok(Rep::trivial(Algebra::gl(n))),
        other => Err(ConfigError::UnknownRep(other.to_string())),
    }
}

/// One representation name for both factors, or `V,W`.
pub fn parse_rep_pair(s: &str, n: u8) -> Result<(Rep, Rep), ConfigError> {
    match s.split_once(',') {
        Some((a, b)) => Ok((parse_rep(a, n)?, parse_rep(b, n)?)),
        None => {
            let r = parse_rep(s, n)?;
            Ok((r.clone(), r))
        }
    }
}

pub fn u_vector(n: u8, u: &Params) -> Result<Vec<Scalar>, ConfigError> {
    match u {
        Params::Symbolic => Ok(symbolic_u(n)),
        Params::Numeric(v) if v.len() == n as usize - 1 => Ok(v.clone()),
        Params::Numeric(v) => Err(ConfigError::WrongLength { what: "--u", want: n as usize - 1, got: v.len() }),
    }
}

fn lambda_point(n: u8, lambda: &Params) -> Result<Option<BTreeMap<Param, Scalar>>, ConfigError> {
    match lambda {
        Params::Symbolic => Ok(None),
        Params::Numeric(v) if v.len() == n as usize => {
            Ok(Some(v.iter().enumerate().map(|(k, x)| (Param::Lambda(k as u8 + 1), x.clone())).collect()))
        }
        Params::Numeric(v) => Err(ConfigError::WrongLength { what: "--lambda", want: n as usize, got: v.len() }),
    }
}

pub fn twist_json(n: u8, reps: &str, u: &Params) -> Result<Value> {
    let (v, w) = parse_rep_pair(reps, n)?;
    Ok(twist_matrix(&v, &w, &u_vector(n, u)?)?.to_json())
}

pub fn rmatrix_json(n: u8, reps: &str, u: &Params) -> Result<Value> {
    let (v, w) = parse_rep_pair(reps, n)?;
    Ok(r_matrix(&v, &w, &u_vector(n, u)?)?.to_json())
}

pub fn classical_json(n: u8, u: &Params) -> Result<Value> {
    Ok(classical_cg(&u_vector(n, u)?)?.to_json())
}

pub fn dyn_twist_json(n: u8, reps: &str, lambda: &Params) -> Result<Value> {
    let (v, w) = parse_rep_pair(reps, n)?;
    let mut j = dyn_twist_matrix(&v, &w)?;
    if let Some(pt) = lambda_point(n, lambda)? {
        j.matrix = j.matrix.try_map(|x| x.substitute(&pt))?;
    }
    Ok(j.to_json())
}

/// Reads the `matrix` field (rows of scalar strings) of an exported file.
pub fn read_matrix(v: &Value) -> Result<ScalarMatrix> {
    let rows = v.get("matrix").and_then(Value::as_array).ok_or_else(|| anyhow!("missing `matrix` array"))?;
    let rows: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| anyhow!("matrix rows must be arrays"))?
                .iter()
                .map(|x| {
                    let s = x.as_str().ok_or_else(|| anyhow!("matrix entries must be strings"))?;
                    parse_scalar(s).with_context(|| format!("entry `{s}`"))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        bail!("ragged matrix");
    }
    Ok(ScalarMatrix::from_rows(rows))
}

/// Checks `r2` against the gauge transform of `r1` by `s_v ⊗ s_w`.
pub fn gauge_check_values(n: u8, reps: &str, s_v: &Value, s_w: Option<&Value>, r1: &Value, r2: &Value) -> Result<CheckReport> {
    let (v, w) = parse_rep_pair(reps, n)?;
    let sv = read_matrix(s_v).context("S")?;
    let sw = match s_w {
        Some(x) => read_matrix(x).context("S_W")?,
        None => sv.clone(),
    };
    Ok(gauge_check(&v, &w, &sv, &sw, &read_matrix(r1).context("R1")?, &read_matrix(r2).context("R2")?)?)
}

pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rmatrix_gl2_is_four_by_four() {
        let v = rmatrix_json(2, "vector", &Params::Symbolic).unwrap();
        assert_eq!(v["format"], 1);
        let m = read_matrix(&v).unwrap();
        assert_eq!((m.rows(), m.cols()), (4, 4));
    }

    #[test]
    fn round_trip_through_json() {
        let v = dyn_twist_json(2, "vector", &Params::Symbolic).unwrap();
        let m = read_matrix(&v).unwrap();
        let again: Value = serde_json::from_str(&to_pretty(&v)).unwrap();
        assert_eq!(read_matrix(&again).unwrap(), m);
    }

    #[test]
    fn bad_inputs() {
        assert!(parse_rep("adjoint", 2).is_err());
        assert!(twist_json(3, "vector", &Params::Numeric(vec![Scalar::one()])).is_err());
        assert!(read_matrix(&serde_json::json!({"matrix": [["1", "x+"]]})).is_err());
    }
}
