use std::fmt;
use std::str::FromStr;

use super::ScalarError;

/// A named commuting parameter.
///
/// The derived ordering is the fixed variable order used for monomial
/// comparison and for printing: `hbar` first, then `u_k`, `lambda_k`, `h_k`
/// and finally the formal spectral symbols `s_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    Hbar,
    U(u8),
    Lambda(u8),
    H(u8),
    Spectral(u8),
}

impl Param {
    pub fn index(self) -> Option<u8> {
        match self {
            Param::Hbar => None,
            Param::U(k) | Param::Lambda(k) | Param::H(k) | Param::Spectral(k) => Some(k),
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Hbar => write!(f, "hbar"),
            Param::U(k) => write!(f, "u{k}"),
            Param::Lambda(k) => write!(f, "lambda{k}"),
            Param::H(k) => write!(f, "h{k}"),
            Param::Spectral(k) => write!(f, "s{k}"),
        }
    }
}

impl FromStr for Param {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "hbar" {
            return Ok(Param::Hbar);
        }
        let split = s
            .find(|c: char| c.is_ascii_digit())
            .ok_or_else(|| ScalarError::Parse(format!("unknown parameter `{s}`")))?;
        let (head, digits) = s.split_at(split);
        let k: u8 = digits
            .parse()
            .map_err(|_| ScalarError::Parse(format!("bad parameter index in `{s}`")))?;
        match head {
            "u" => Ok(Param::U(k)),
            "lambda" => Ok(Param::Lambda(k)),
            "h" => Ok(Param::H(k)),
            "s" => Ok(Param::Spectral(k)),
            _ => Err(ScalarError::Parse(format!("unknown parameter `{s}`"))),
        }
    }
}
