//! Cumulants, the inverse cumulant series `f_Y`, and the Adell–Bényi
//! numbers `s_Y(n, k)`.
//!
//! With `K(t) = log E[e^{Yt}] = log(1 + e_Y(t))`, the cumulants are the EGF
//! coefficients of `K` and satisfy
//! `κ_n = Σ_j (-1)^{j-1} (j-1)! S_2^Y(n, j)`.
//! `f_Y` is the compositional inverse of `K`.

use num_traits::Zero;

use crate::combinatorics::Triangle;
use crate::error::Result;
use crate::rational::{factorial_r, sign, Rational};
use crate::rv::RvSpec;
use crate::series::EgfSeries;
use crate::stirling::{e_y_degen_series, e_y_series, s2y_triangle};

/// `κ_1..=κ_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CumulantSequence {
    values: Vec<Rational>,
}

impl CumulantSequence {
    pub fn max_n(&self) -> usize {
        self.values.len()
    }

    /// `κ_n` for `1 <= n <= max_n`.
    pub fn get(&self, n: usize) -> &Rational {
        assert!(n >= 1, "cumulants start at n = 1");
        &self.values[n - 1]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

/// Cumulants from the second-kind triangle.
pub fn cumulants(rv: &RvSpec, max_n: usize) -> CumulantSequence {
    let s2 = s2y_triangle(rv, max_n);
    let values = (1..=max_n)
        .map(|n| {
            (1..=n)
                .map(|j| sign(j as i64 - 1) * factorial_r(j - 1) * s2.get(n, j))
                .sum()
        })
        .collect();
    CumulantSequence { values }
}

/// `K(t) = log(1 + e_Y(t))`.
pub fn cgf_series(rv: &RvSpec, order: usize) -> EgfSeries {
    e_y_series(rv, order)
        .log1p()
        .expect("e_Y has zero constant term")
}

/// `log(1 + e_{Y,λ}(t))`.
pub fn cgf_degen_series(rv: &RvSpec, lambda: &Rational, order: usize) -> EgfSeries {
    e_y_degen_series(rv, lambda, order)
        .log1p()
        .expect("e_Y,λ has zero constant term")
}

/// `f_Y`, the compositional inverse of the cumulant generating function.
pub fn fy_series(rv: &RvSpec, order: usize) -> Result<EgfSeries> {
    rv.require_nonzero_mean()?;
    Ok(cgf_series(rv, order.max(1)).comp_inverse()?.truncate(order))
}

/// Degenerate `f_{Y,λ}`, the compositional inverse of `log(1 + e_{Y,λ})`.
pub fn fy_degen_series(rv: &RvSpec, lambda: &Rational, order: usize) -> Result<EgfSeries> {
    rv.require_nonzero_mean()?;
    Ok(cgf_degen_series(rv, lambda, order.max(1)).comp_inverse()?.truncate(order))
}

/// Adell–Bényi triangle `s_Y(n, k) = (-1)^{n-k} n! [t^n] K(t)^k / k!`.
pub fn adell_benyi_triangle(rv: &RvSpec, max_n: usize) -> Triangle {
    let powers = cgf_series(rv, max_n).divided_powers();
    Triangle::from_fn(max_n, |n, k| sign((n - k) as i64) * powers[k].coeff(n))
}

pub fn adell_benyi_s(rv: &RvSpec, n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    adell_benyi_triangle(rv, n).get(n, k)
}
