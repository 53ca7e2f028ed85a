//! Declarative seed descriptions and their textual form
//! (`bound:<n>`, `general:<eps>:<lambda>`, `L:<eps>`, `R:<eps>`,
//! `complex:<re>:<im>:<L|R>`).

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::potential::Endpoint;
use crate::solution::SolutionEvaluator;
use crate::trm::{self, TrmParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    L,
    R,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::L => "L",
            Side::R => "R",
        })
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "L" | "l" => Ok(Side::L),
            "R" | "r" => Ok(Side::R),
            _ => Err(Error::InvalidParameter(format!(
                "side must be L or R, got {s:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SeedSpec {
    Bound { n: usize },
    General { epsilon: f64, lambda: f64 },
    Left { epsilon: f64 },
    Right { epsilon: f64 },
    Complex { epsilon: Complex64, side: Side },
}

impl SeedSpec {
    pub fn from_side(side: Side, epsilon: f64) -> SeedSpec {
        match side {
            Side::L => SeedSpec::Left { epsilon },
            Side::R => SeedSpec::Right { epsilon },
        }
    }

    pub fn energy(&self, p: &TrmParams) -> Complex64 {
        match *self {
            SeedSpec::Bound { n } => Complex64::new(p.bound_energy(n), 0.0),
            SeedSpec::General { epsilon, .. }
            | SeedSpec::Left { epsilon }
            | SeedSpec::Right { epsilon } => Complex64::new(epsilon, 0.0),
            SeedSpec::Complex { epsilon, .. } => epsilon,
        }
    }

    pub fn real_energy(&self, p: &TrmParams) -> Result<f64> {
        let e = self.energy(p);
        if e.im != 0.0 {
            return Err(Error::Precondition(format!(
                "seed {self} has a complex energy"
            )));
        }
        Ok(e.re)
    }

    /// ψ_L-like seeds: pure L or R, including a general seed with λ = 0.
    pub fn is_boundary(&self) -> bool {
        matches!(
            self,
            SeedSpec::Left { .. } | SeedSpec::Right { .. } | SeedSpec::General { lambda: 0.0, .. }
        )
    }

    pub(crate) fn endpoints(&self) -> (Endpoint, Endpoint) {
        use Endpoint::{Diverging, Vanishing};
        match self {
            SeedSpec::Bound { .. } => (Vanishing, Vanishing),
            SeedSpec::General { lambda, .. } if *lambda == 0.0 => (Vanishing, Diverging),
            SeedSpec::General { .. } => (Diverging, Diverging),
            SeedSpec::Left { .. } | SeedSpec::Complex { side: Side::L, .. } => {
                (Vanishing, Diverging)
            }
            SeedSpec::Right { .. } | SeedSpec::Complex { side: Side::R, .. } => {
                (Diverging, Vanishing)
            }
        }
    }

    pub fn build(&self, p: &TrmParams) -> Result<SolutionEvaluator> {
        match *self {
            SeedSpec::Bound { n } => trm::bound_state(p, n),
            SeedSpec::General { epsilon, lambda } => trm::general_solution(p, epsilon, lambda),
            SeedSpec::Left { epsilon } => trm::psi_l(p, Complex64::new(epsilon, 0.0)),
            SeedSpec::Right { epsilon } => trm::psi_r(p, Complex64::new(epsilon, 0.0)),
            SeedSpec::Complex { epsilon, side } => match side {
                Side::L => trm::psi_l(p, epsilon),
                Side::R => trm::psi_r(p, epsilon),
            },
        }
    }
}

impl fmt::Display for SeedSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeedSpec::Bound { n } => write!(f, "bound:{n}"),
            SeedSpec::General { epsilon, lambda } => write!(f, "general:{epsilon}:{lambda}"),
            SeedSpec::Left { epsilon } => write!(f, "L:{epsilon}"),
            SeedSpec::Right { epsilon } => write!(f, "R:{epsilon}"),
            SeedSpec::Complex { epsilon, side } => {
                write!(f, "complex:{}:{}:{side}", epsilon.re, epsilon.im)
            }
        }
    }
}

fn number(field: &str, text: &str) -> Result<f64> {
    let v: f64 = text
        .trim()
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("{field} must be a number, got {text:?}")))?;
    if !v.is_finite() {
        return Err(Error::InvalidParameter(format!("{field} must be finite")));
    }
    Ok(v)
}

impl FromStr for SeedSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::InvalidParameter(format!("unrecognized seed {s:?}"));
        match parts.as_slice() {
            ["bound", n] => {
                let n = n.trim().parse().map_err(|_| {
                    Error::InvalidParameter(format!(
                        "bound-state index must be a non-negative integer, got {n:?}"
                    ))
                })?;
                Ok(SeedSpec::Bound { n })
            }
            ["general", e, l] => Ok(SeedSpec::General {
                epsilon: number("epsilon", e)?,
                lambda: number("lambda", l)?,
            }),
            ["L", e] => Ok(SeedSpec::Left {
                epsilon: number("epsilon", e)?,
            }),
            ["R", e] => Ok(SeedSpec::Right {
                epsilon: number("epsilon", e)?,
            }),
            ["complex", re, im, side] => {
                let epsilon =
                    Complex64::new(number("real part", re)?, number("imaginary part", im)?);
                if epsilon.im == 0.0 {
                    return Err(Error::InvalidParameter(
                        "complex seed needs a nonzero imaginary part".into(),
                    ));
                }
                Ok(SeedSpec::Complex {
                    epsilon,
                    side: side.parse()?,
                })
            }
            _ => Err(bad()),
        }
    }
}
