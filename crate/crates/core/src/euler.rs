//! Probabilistic Euler polynomials and expansions of polynomials in them.
//!
//! `E_n^Y(x)` is defined by
//!
//! `2 / (E[e^{Yt}] + 1) · E[e^{Yt}]^x = Σ_n E_n^Y(x) t^n / n!`
//!
//! and its degenerate version replaces `E[e^{Yt}]` by `E[e_λ^Y(t)]`. Both
//! satisfy `E_n(x+1) + E_n(x) = 2 Σ_k S_2(n,k) (x)_k` with the matching
//! probabilistic Stirling numbers, and this gives an explicit expansion of
//! any polynomial in the basis `{E_r}` through the first-kind numbers.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::Rng;

use crate::combinatorics::{stirling2_triangle, Triangle};
use crate::error::{Error, Result};
use crate::rational::{binomial_r, factorial_r, int, parse_rational, sign, Rational};
use crate::rv::RvSpec;
use crate::series::EgfSeries;
use crate::stirling::verify::Report;
use crate::stirling::{s1y_degen_triangle, s1y_triangle, s2y_degen_triangle, s2y_triangle};

/// A polynomial in `x` with rational coefficients, lowest degree first.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// `x`.
    pub fn x() -> Self {
        Poly::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// `q(x + c)`.
    pub fn shift(&self, c: &Rational) -> Poly {
        let step = Poly::new(vec![c.clone(), Rational::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, a| acc.mul(&step).add(&Poly::constant(a.clone())))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * int(i as i64))
                .collect(),
        )
    }

    /// The falling factorial `(x)_k` as a polynomial.
    pub fn falling(k: usize) -> Poly {
        (0..k).fold(Poly::constant(Rational::one()), |acc, i| {
            acc.mul(&Poly::new(vec![int(-(i as i64)), Rational::one()]))
        })
    }
}

impl fmt::Display for Poly {
    /// Comma-separated coefficients, lowest degree first; `0` for zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(", "))
    }
}

impl FromStr for Poly {
    type Err = Error;

    /// Parses comma-separated coefficients, lowest degree first: `"0,0,1"`
    /// is `x²`.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let coeffs = s.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(coeffs))
    }
}

/// `Δ^r q(x) = Σ_i C(r, i) (-1)^{r-i} q(x + i)`.
pub fn forward_difference(q: &Poly, r: usize) -> Poly {
    (0..=r).fold(Poly::zero(), |acc, i| {
        acc.add(&q.shift(&int(i as i64)).scale(&(binomial_r(r, i) * sign((r - i) as i64))))
    })
}

/// `E_n^Y(x)` for `n = 0..=max_n`, degenerate at `λ` when given.
pub fn euler_polys(rv: &RvSpec, lambda: Option<&Rational>, max_n: usize) -> Vec<Poly> {
    let m = match lambda {
        None => rv.mgf_series(max_n),
        Some(l) => rv.degen_mgf_series(l, max_n),
    };
    let a = m
        .add_constant(&Rational::one())
        .recip()
        .expect("M(0) + 1 = 2")
        .scale(&int(2));
    let log_m = m
        .add_constant(&-Rational::one())
        .log1p()
        .expect("M(0) = 1");
    // Coefficient of x^k is A(t) · log(M)^k / k!.
    let columns: Vec<EgfSeries> = log_m
        .divided_powers()
        .iter()
        .map(|p| a.mul(p).expect("equal orders"))
        .collect();
    (0..=max_n)
        .map(|n| Poly::new((0..=n).map(|k| columns[k].coeff(n)).collect()))
        .collect()
}

pub fn euler_poly(rv: &RvSpec, n: usize, lambda: Option<&Rational>) -> Poly {
    euler_polys(rv, lambda, n).pop().expect("n + 1 polynomials")
}

/// Which of the three equivalent coefficient formulas to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExpansionFormula {
    /// `a_r = ½ Σ_j S_1(j,r) / j! (Δ^j q(1) + Δ^j q(0))`.
    ForwardDifference,
    /// The forward differences written out as point values `q(i+1) + q(i)`.
    PointValues,
    /// The forward differences written through derivatives at 0 and 1.
    Derivatives,
}

impl ExpansionFormula {
    pub const ALL: [ExpansionFormula; 3] = [
        ExpansionFormula::ForwardDifference,
        ExpansionFormula::PointValues,
        ExpansionFormula::Derivatives,
    ];
}

/// `{E_0, .., E_N}` with the first-kind triangle needed to expand in it.
#[derive(Clone, Debug)]
pub struct EulerBasis {
    polys: Vec<Poly>,
    first_kind: Triangle,
    stirling2: Triangle,
}

impl EulerBasis {
    /// Needs `E[Y] != 0`; otherwise `E_n` has degree below `n` and the
    /// family is not a basis.
    pub fn new(rv: &RvSpec, lambda: Option<&Rational>, max_n: usize) -> Result<Self> {
        let first_kind = match lambda {
            None => s1y_triangle(rv, max_n)?,
            Some(l) => s1y_degen_triangle(rv, l, max_n)?,
        };
        Ok(EulerBasis {
            polys: euler_polys(rv, lambda, max_n),
            first_kind,
            stirling2: stirling2_triangle(max_n),
        })
    }

    pub fn max_n(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn poly(&self, n: usize) -> &Poly {
        &self.polys[n]
    }

    /// Coefficients `a_0..=a_n` with `q = Σ a_r E_r`, `n = deg q`.
    pub fn expand(&self, q: &Poly, formula: ExpansionFormula) -> Result<Vec<Rational>> {
        let Some(n) = q.degree() else {
            return Ok(Vec::new());
        };
        if n > self.max_n() {
            return Err(Error::InvalidParameter(format!(
                "degree {n} exceeds the basis size {}",
                self.max_n()
            )));
        }
        let zero = Rational::zero();
        let one = Rational::one();
        // b_j = (Δ^j q(1) + Δ^j q(0)) / j!
        let b: Vec<Rational> = match formula {
            ExpansionFormula::ForwardDifference => (0..=n)
                .map(|j| {
                    let d = forward_difference(q, j);
                    (d.eval(&one) + d.eval(&zero)) / factorial_r(j)
                })
                .collect(),
            ExpansionFormula::PointValues => (0..=n)
                .map(|j| {
                    let sum: Rational = (0..=j)
                        .map(|i| {
                            binomial_r(j, i)
                                * sign((j - i) as i64)
                                * (q.eval(&int(i as i64 + 1)) + q.eval(&int(i as i64)))
                        })
                        .sum();
                    sum / factorial_r(j)
                })
                .collect(),
            ExpansionFormula::Derivatives => {
                let mut at = Vec::with_capacity(n + 1);
                let mut d = q.clone();
                for l in 0..=n {
                    at.push((d.eval(&one) + d.eval(&zero)) / factorial_r(l));
                    d = d.derivative();
                }
                (0..=n)
                    .map(|j| (j..=n).map(|l| self.stirling2.get(l, j) * &at[l]).sum())
                    .collect()
            }
        };
        let half = Rational::new(1.into(), 2.into());
        Ok((0..=n)
            .map(|r| {
                let sum: Rational = (r..=n).map(|j| self.first_kind.get(j, r) * &b[j]).sum();
                sum * &half
            })
            .collect())
    }

    /// `Σ a_r E_r`.
    pub fn reconstruct(&self, coeffs: &[Rational]) -> Result<Poly> {
        if coeffs.len() > self.polys.len() {
            return Err(Error::InvalidParameter(format!(
                "{} coefficients exceed the basis size {}",
                coeffs.len(),
                self.polys.len()
            )));
        }
        Ok(coeffs
            .iter()
            .zip(&self.polys)
            .fold(Poly::zero(), |acc, (a, e)| acc.add(&e.scale(a))))
    }
}

/// Expands `q` in the (degenerate, when `λ` is given) Euler basis of `rv`.
pub fn expand_in_euler_basis(
    rv: &RvSpec,
    q: &Poly,
    lambda: Option<&Rational>,
    formula: ExpansionFormula,
) -> Result<Vec<Rational>> {
    let n = q.degree().unwrap_or(0);
    EulerBasis::new(rv, lambda, n)?.expand(q, formula)
}

/// `E_n(x+1) + E_n(x) = 2 Σ_k S_2(n,k) (x)_k` for `n <= max_n`, compared
/// coefficient by coefficient.
pub fn verify_euler_addition(rv: &RvSpec, lambda: Option<&Rational>, max_n: usize) -> Report {
    let polys = euler_polys(rv, lambda, max_n);
    let s2 = match lambda {
        None => s2y_triangle(rv, max_n),
        Some(l) => s2y_degen_triangle(rv, l, max_n),
    };
    let mut report = Report::new();
    for (n, e) in polys.iter().enumerate() {
        let lhs = e.shift(&Rational::one()).add(e);
        let rhs = (0..=n).fold(Poly::zero(), |acc, k| {
            acc.add(&Poly::falling(k).scale(&(int(2) * s2.get(n, k))))
        });
        for i in 0..=n {
            report.expect_eq("euler-addition", n, i, &rhs.coeff(i), &lhs.coeff(i));
        }
    }
    report
}

/// A random polynomial of degree at most `max_degree` with small rational
/// coefficients `num/den`, `|num| <= 20`, `1 <= den <= 9`.
pub fn random_poly<R: Rng + ?Sized>(rng: &mut R, max_degree: usize) -> Poly {
    let degree = rng.random_range(0..=max_degree);
    Poly::new(
        (0..=degree)
            .map(|_| Rational::new(rng.random_range(-20..=20).into(), rng.random_range(1..=9).into()))
            .collect(),
    )
}

/// Expands each polynomial with all three formulas, checks that they agree
/// and that reconstructing gives the polynomial back.
pub fn verify_euler_roundtrip(rv: &RvSpec, lambda: Option<&Rational>, polys: &[Poly]) -> Result<Report> {
    let max_n = polys.iter().filter_map(Poly::degree).max().unwrap_or(0);
    let basis = EulerBasis::new(rv, lambda, max_n)?;
    let mut report = Report::new();
    for (i, q) in polys.iter().enumerate() {
        let reference = basis.expand(q, ExpansionFormula::ForwardDifference)?;
        for formula in [ExpansionFormula::PointValues, ExpansionFormula::Derivatives] {
            let other = basis.expand(q, formula)?;
            for (r, (a, b)) in reference.iter().zip(&other).enumerate() {
                report.expect_eq(&format!("{formula:?} vs ForwardDifference, poly #{i}"), r, r, a, b);
            }
        }
        let back = basis.reconstruct(&reference)?;
        for d in 0..=max_n {
            report.expect_eq(&format!("reconstruction, poly #{i}"), d, d, &q.coeff(d), &back.coeff(d));
        }
    }
    Ok(report)
}
