//! Exact coefficient arithmetic: rational functions over ℚ in named parameters.

mod gcd;
mod param;
mod parse;
mod poly;
mod rational;

pub use gcd::gcd as poly_gcd;
pub use num_rational::BigRational;
pub use param::Param;
pub use parse::parse_scalar;
pub use poly::{Mono, Poly};
pub use rational::Scalar;
pub(crate) use rational::translate_poly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes after substitution")]
    DenominatorVanishes,
    #[error("pole at hbar = 0")]
    PoleAtZero,
    #[error("parse error: {0}")]
    Parse(String),
}

impl std::str::FromStr for Scalar {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_scalar(s)
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_scalar(&s).map_err(serde::de::Error::custom)
    }
}

/// `ℏ`.
pub fn hbar() -> Scalar {
    Scalar::hbar()
}

/// `u_k`.
pub fn u(k: u8) -> Scalar {
    Scalar::param(Param::U(k))
}

/// `λ_k`.
pub fn lambda(k: u8) -> Scalar {
    Scalar::param(Param::Lambda(k))
}

/// Formal spectral symbol `s_k`.
pub fn spectral(k: u8) -> Scalar {
    Scalar::param(Param::Spectral(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sum() {
        assert_eq!(Scalar::frac(1, 2) + Scalar::frac(1, 3), Scalar::frac(5, 6));
    }

    #[test]
    fn cancellation() {
        assert!(((u(1) - u(1)) * hbar()).is_zero());
    }

    #[test]
    fn exact_division() {
        let num = u(1).pow(2) - hbar().pow(2);
        let den = u(1) - hbar();
        assert_eq!(num / den, u(1) + hbar());
    }

    #[test]
    fn printing_round_trips() {
        let f = (u(1) * hbar() - Scalar::frac(3, 2)) / (lambda(1) - lambda(2) + hbar());
        let s = f.to_string();
        assert_eq!(parse_scalar(&s).unwrap(), f);
        assert_eq!(s, "(hbar*u1 - 3/2)/(hbar + lambda1 - lambda2)");
    }

    #[test]
    fn substitution() {
        let mut b = std::collections::BTreeMap::new();
        b.insert(Param::Lambda(1), lambda(1) - hbar());
        assert_eq!(
            (lambda(1) - lambda(2)).substitute(&b).unwrap(),
            lambda(1) - hbar() - lambda(2)
        );
        let mut z = std::collections::BTreeMap::new();
        z.insert(Param::Hbar, Scalar::zero());
        assert_eq!(
            Scalar::one().checked_div(&hbar()).unwrap().substitute(&z),
            Err(ScalarError::DenominatorVanishes)
        );
        let mut n = std::collections::BTreeMap::new();
        n.insert(Param::U(1), Scalar::from_int(3));
        n.insert(Param::U(2), Scalar::from_int(1));
        assert_eq!((u(1) / (u(1) - u(2))).substitute(&n).unwrap(), Scalar::frac(3, 2));
    }

    #[test]
    fn series() {
        let f = Scalar::one() / (Scalar::one() - hbar());
        assert_eq!(f.h_series(2).unwrap(), vec![Scalar::one(); 3]);
        let g = u(1) + hbar() * u(2);
        assert_eq!(g.h_series(1).unwrap(), vec![u(1), u(2)]);
        assert_eq!((Scalar::one() / hbar()).h_series(3), Err(ScalarError::PoleAtZero));
    }

    #[test]
    fn multivariate_gcd_reduces() {
        let a = (lambda(1) - lambda(2) + hbar()) * (u(1) + Scalar::from_int(2));
        let b = (lambda(1) - lambda(2) + hbar()) * (u(2) - hbar());
        assert_eq!(a / b, (u(1) + Scalar::from_int(2)) / (u(2) - hbar()));
    }
}
