//! Probabilistic Stirling numbers of both kinds and their degenerate versions.
//!
//! For a random variable `Y` with `e_Y(t) = E[e^{Yt}] - 1`:
//!
//! * `S_2^Y(n, k) = n! [t^n] e_Y(t)^k / k!`
//! * `S_1^Y(n, k) = n! [t^n] ē_Y(t)^k / k!`, where `ē_Y` is the compositional
//!   inverse of `e_Y`; it exists exactly when `E[Y] != 0`.
//!
//! The degenerate numbers replace `E[e^{Yt}]` with `E[e_λ^Y(t)]`. Both
//! triangles are lower-triangular and mutually inverse.
//!
//! Besides the series route, the submodules compute the same numbers along
//! independent paths: moments of partial sums ([`moments`]) and per-family
//! closed forms ([`closed_form`]).

pub mod closed_form;
pub mod cumulants;
pub mod moments;
pub mod verify;

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::combinatorics::Triangle;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::rv::RvSpec;
use crate::series::EgfSeries;

/// Which of the four probabilistic Stirling triangles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    SecondKind,
    FirstKind,
    DegenerateSecondKind,
    DegenerateFirstKind,
}

impl Kind {
    pub const ALL: [Kind; 4] = [
        Kind::SecondKind,
        Kind::FirstKind,
        Kind::DegenerateSecondKind,
        Kind::DegenerateFirstKind,
    ];

    pub fn code(self) -> &'static str {
        match self {
            Kind::SecondKind => "S2Y",
            Kind::FirstKind => "S1Y",
            Kind::DegenerateSecondKind => "S2YL",
            Kind::DegenerateFirstKind => "S1YL",
        }
    }

    pub fn is_degenerate(self) -> bool {
        matches!(self, Kind::DegenerateSecondKind | Kind::DegenerateFirstKind)
    }

    pub fn is_first_kind(self) -> bool {
        matches!(self, Kind::FirstKind | Kind::DegenerateFirstKind)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Kind::ALL
            .into_iter()
            .find(|k| k.code().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown kind {s:?}")))
    }
}

/// `e_Y(t) = E[e^{Yt}] - 1`.
pub fn e_y_series(rv: &RvSpec, order: usize) -> EgfSeries {
    rv.mgf_series(order).add_constant(&-Rational::one())
}

/// `e_{Y,λ}(t) = E[e_λ^Y(t)] - 1`.
pub fn e_y_degen_series(rv: &RvSpec, lambda: &Rational, order: usize) -> EgfSeries {
    rv.degen_mgf_series(lambda, order).add_constant(&-Rational::one())
}

/// `ē_Y`, the compositional inverse of `e_Y`.
pub fn e_y_inverse(rv: &RvSpec, order: usize) -> Result<EgfSeries> {
    rv.require_nonzero_mean()?;
    Ok(e_y_series(rv, order.max(1)).comp_inverse()?.truncate(order))
}

/// `ē_{Y,λ}`, the compositional inverse of `e_{Y,λ}`.
pub fn e_y_degen_inverse(rv: &RvSpec, lambda: &Rational, order: usize) -> Result<EgfSeries> {
    rv.require_nonzero_mean()?;
    Ok(e_y_degen_series(rv, lambda, order.max(1)).comp_inverse()?.truncate(order))
}

pub fn s2y_triangle(rv: &RvSpec, order: usize) -> Triangle {
    Triangle::from_divided_powers(&e_y_series(rv, order))
}

/// Errors with [`Error::ZeroMean`] when `E[Y] = 0`.
pub fn s1y_triangle(rv: &RvSpec, order: usize) -> Result<Triangle> {
    Ok(Triangle::from_divided_powers(&e_y_inverse(rv, order)?))
}

pub fn s2y_degen_triangle(rv: &RvSpec, lambda: &Rational, order: usize) -> Triangle {
    Triangle::from_divided_powers(&e_y_degen_series(rv, lambda, order))
}

/// Errors with [`Error::ZeroMean`] when `E[Y] = 0`.
pub fn s1y_degen_triangle(rv: &RvSpec, lambda: &Rational, order: usize) -> Result<Triangle> {
    Ok(Triangle::from_divided_powers(&e_y_degen_inverse(rv, lambda, order)?))
}

/// Any of the four triangles; `lambda` is ignored by the non-degenerate kinds.
pub fn triangle(rv: &RvSpec, kind: Kind, lambda: &Rational, order: usize) -> Result<Triangle> {
    match kind {
        Kind::SecondKind => Ok(s2y_triangle(rv, order)),
        Kind::FirstKind => s1y_triangle(rv, order),
        Kind::DegenerateSecondKind => Ok(s2y_degen_triangle(rv, lambda, order)),
        Kind::DegenerateFirstKind => s1y_degen_triangle(rv, lambda, order),
    }
}

/// The second-kind triangle and its first-kind partner, at `λ` when given.
pub(crate) fn triangle_pair(
    rv: &RvSpec,
    lambda: Option<&Rational>,
    order: usize,
) -> Result<(Triangle, Triangle)> {
    match lambda {
        None => Ok((s2y_triangle(rv, order), s1y_triangle(rv, order)?)),
        Some(l) => Ok((s2y_degen_triangle(rv, l, order), s1y_degen_triangle(rv, l, order)?)),
    }
}

pub(crate) fn kronecker(n: usize, l: usize) -> Rational {
    if n == l {
        Rational::one()
    } else {
        Rational::zero()
    }
}
