//! The recurrences and solution pairs used throughout: Apéry's ζ(3) and ζ(2)
//! relations, Fibonacci, Pell, and the borderline `c_n = n+1, b_n = 2n+1`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::coeff::CoeffExpr;
use crate::rational::{int, Rational};
use crate::recurrence::{propagate, Recurrence, RecurrenceError, SolutionSeq};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairName {
    Apery3,
    Apery2,
    Fib,
    Pell,
    Borderline,
}

impl PairName {
    pub const ALL: [PairName; 5] = [PairName::Apery3, PairName::Apery2, PairName::Fib, PairName::Pell, PairName::Borderline];

    pub fn as_str(self) -> &'static str {
        match self {
            PairName::Apery3 => "apery3",
            PairName::Apery2 => "apery2",
            PairName::Fib => "fib",
            PairName::Pell => "pell",
            PairName::Borderline => "borderline",
        }
    }
}

impl fmt::Display for PairName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown pair {0:?} (expected apery3, apery2, fib, pell or borderline)")]
pub struct UnknownPair(String);

impl FromStr for PairName {
    type Err = UnknownPair;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "apery3" | "zeta3" => PairName::Apery3,
            "apery2" | "zeta2" => PairName::Apery2,
            "fib" | "fibonacci" => PairName::Fib,
            "pell" => PairName::Pell,
            "borderline" => PairName::Borderline,
            _ => return Err(UnknownPair(s.to_string())),
        })
    }
}

/// A self-adjoint three-term recurrence with two distinguished solutions.
#[derive(Clone, Debug)]
pub struct NamedPair {
    pub name: PairName,
    pub recurrence: Arc<Recurrence>,
    pub a_initial: [Rational; 2],
    pub b_initial: [Rational; 2],
}

fn expr(s: &str) -> CoeffExpr {
    s.parse().expect("built-in coefficient parses")
}

impl NamedPair {
    pub fn get(name: PairName) -> NamedPair {
        let (c, b, a_init, b_init) = match name {
            PairName::Apery3 => ("(n+1)^3", "34n^3+51n^2+27n+5", [1, 5], [0, 6]),
            PairName::Apery2 => ("(-1)^n*(n+1)^2", "(-1)^n*(11n^2+11n+3)", [1, 3], [0, 5]),
            PairName::Fib => ("(-1)^n", "(-1)^n", [0, 1], [1, 1]),
            PairName::Pell => ("(-1)^n", "(-1)^n*2", [1, 2], [1, 3]),
            PairName::Borderline => ("n+1", "2n+1", [1, 1], [0, 1]),
        };
        NamedPair {
            name,
            recurrence: Arc::new(Recurrence::three_term(expr(c), expr(b), 1)),
            a_initial: a_init.map(int),
            b_initial: b_init.map(int),
        }
    }

    /// `(A, B)` propagated through storage index `n_max`.
    pub fn solutions(&self, n_max: i64) -> Result<(SolutionSeq, SolutionSeq), RecurrenceError> {
        let (a, b) = rayon::join(
            || propagate(&self.recurrence, &self.a_initial, n_max),
            || propagate(&self.recurrence, &self.b_initial, n_max),
        );
        Ok((a?, b?))
    }
}
