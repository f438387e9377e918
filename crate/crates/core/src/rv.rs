//! The random variables the library works with, with exact moment and
//! degenerate moment generating series.
//!
//! Every degenerate series comes from one construction:
//! `E[e_λ^Y(t)] = M_Y(log e_λ(t))` with `log e_λ(t) = log(1 + λt)/λ`,
//! so `degen_mgf_series` is `mgf_series` composed with that delta series.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, parse_rational, Rational};
use crate::series::EgfSeries;

/// A random variable with rational parameters.
///
/// Construct through [`RvSpec::from_str`] or the checked constructors so the
/// parameter ranges hold.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RvSpec {
    /// The point mass at `c`; `Constant(1)` is the `Y = 1` reduction.
    Constant { c: Rational },
    Bernoulli { p: Rational },
    Binomial { m: u32, p: Rational },
    Poisson { alpha: Rational },
    Geometric { p: Rational },
    /// Rate `alpha`, so `E[Y] = 1/alpha`.
    Exponential { alpha: Rational },
    /// Shape `alpha`, rate `beta`.
    Gamma { alpha: Rational, beta: Rational },
    Normal { mu: Rational, sigma2: Rational },
    Uniform { a: Rational, b: Rational },
}

fn positive(name: &str, value: &Rational) -> Result<()> {
    if value.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be > 0, got {value}")))
    }
}

impl RvSpec {
    pub fn constant(c: Rational) -> Self {
        RvSpec::Constant { c }
    }

    pub fn bernoulli(p: Rational) -> Result<Self> {
        RvSpec::Bernoulli { p }.validated()
    }

    pub fn binomial(m: u32, p: Rational) -> Result<Self> {
        RvSpec::Binomial { m, p }.validated()
    }

    pub fn poisson(alpha: Rational) -> Result<Self> {
        RvSpec::Poisson { alpha }.validated()
    }

    pub fn geometric(p: Rational) -> Result<Self> {
        RvSpec::Geometric { p }.validated()
    }

    pub fn exponential(alpha: Rational) -> Result<Self> {
        RvSpec::Exponential { alpha }.validated()
    }

    pub fn gamma(alpha: Rational, beta: Rational) -> Result<Self> {
        RvSpec::Gamma { alpha, beta }.validated()
    }

    pub fn normal(mu: Rational, sigma2: Rational) -> Result<Self> {
        RvSpec::Normal { mu, sigma2 }.validated()
    }

    pub fn uniform(a: Rational, b: Rational) -> Result<Self> {
        RvSpec::Uniform { a, b }.validated()
    }

    /// Checks the parameter ranges of the family.
    pub fn validate(&self) -> Result<()> {
        match self {
            RvSpec::Constant { .. } => Ok(()),
            RvSpec::Bernoulli { p } | RvSpec::Binomial { p, .. } => {
                if let RvSpec::Binomial { m: 0, .. } = self {
                    return Err(Error::InvalidParameter("m must be a positive integer".into()));
                }
                if p.is_positive() && *p <= Rational::one() {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter(format!("p must satisfy 0 < p <= 1, got {p}")))
                }
            }
            RvSpec::Geometric { p } => {
                if p.is_positive() && *p < Rational::one() {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter(format!("p must satisfy 0 < p < 1, got {p}")))
                }
            }
            RvSpec::Poisson { alpha } | RvSpec::Exponential { alpha } => positive("alpha", alpha),
            RvSpec::Gamma { alpha, beta } => {
                positive("alpha", alpha)?;
                positive("beta", beta)
            }
            RvSpec::Normal { sigma2, .. } => positive("sigma2", sigma2),
            RvSpec::Uniform { a, b } => {
                if a < b {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter(format!("uniform needs a < b, got a={a}, b={b}")))
                }
            }
        }
    }

    fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    pub fn family(&self) -> &'static str {
        match self {
            RvSpec::Constant { .. } => "constant",
            RvSpec::Bernoulli { .. } => "bernoulli",
            RvSpec::Binomial { .. } => "binomial",
            RvSpec::Poisson { .. } => "poisson",
            RvSpec::Geometric { .. } => "geometric",
            RvSpec::Exponential { .. } => "exponential",
            RvSpec::Gamma { .. } => "gamma",
            RvSpec::Normal { .. } => "normal",
            RvSpec::Uniform { .. } => "uniform",
        }
    }

    /// `E[Y]`.
    pub fn mean(&self) -> Rational {
        match self {
            RvSpec::Constant { c } => c.clone(),
            RvSpec::Bernoulli { p } => p.clone(),
            RvSpec::Binomial { m, p } => p * int(i64::from(*m)),
            RvSpec::Poisson { alpha } => alpha.clone(),
            RvSpec::Geometric { p } => p.recip(),
            RvSpec::Exponential { alpha } => alpha.recip(),
            RvSpec::Gamma { alpha, beta } => alpha / beta,
            RvSpec::Normal { mu, .. } => mu.clone(),
            RvSpec::Uniform { a, b } => (a + b) / int(2),
        }
    }

    /// Errors with [`Error::ZeroMean`] when `E[Y] = 0`.
    pub fn require_nonzero_mean(&self) -> Result<()> {
        if self.mean().is_zero() {
            Err(Error::ZeroMean { rv: self.to_string() })
        } else {
            Ok(())
        }
    }

    /// `E[e^{Yt}]` truncated at `order`; coefficient `n` is `E[Y^n]`.
    pub fn mgf_series(&self, order: usize) -> EgfSeries {
        let one = Rational::one();
        let e_t_minus_1 = || EgfSeries::exponential(&one, order).add_constant(&-one.clone());
        match self {
            RvSpec::Constant { c } => EgfSeries::exponential(c, order),
            RvSpec::Bernoulli { p } => e_t_minus_1().scale(p).add_constant(&one),
            RvSpec::Binomial { m, p } => e_t_minus_1()
                .scale(p)
                .pow_binomial(&int(i64::from(*m)))
                .expect("p(e^t - 1) has zero constant term"),
            RvSpec::Poisson { alpha } => e_t_minus_1()
                .scale(alpha)
                .exp()
                .expect("alpha(e^t - 1) has zero constant term"),
            RvSpec::Geometric { p } => {
                // p e^t / (1 - (1 - p) e^t)
                let e_t = EgfSeries::exponential(&one, order);
                let denominator = e_t.scale(&-(&one - p)).add_constant(&one);
                let inverse = denominator.recip().expect("constant term p is nonzero");
                e_t.scale(p).mul(&inverse).expect("equal orders")
            }
            RvSpec::Exponential { alpha } => {
                // 1 / (1 - t/alpha): coefficients n!/alpha^n
                EgfSeries::linear(-alpha.recip(), order)
                    .add_constant(&one)
                    .recip()
                    .expect("constant term 1")
            }
            RvSpec::Gamma { alpha, beta } => EgfSeries::linear(-beta.recip(), order)
                .pow_binomial(&-alpha)
                .expect("-t/beta has zero constant term"),
            RvSpec::Normal { mu, sigma2 } => {
                let mut exponent = EgfSeries::zero(order).into_coeffs();
                if order >= 1 {
                    exponent[1] = mu.clone();
                }
                if order >= 2 {
                    // sigma2 t^2 / 2 has EGF coefficient sigma2 at n = 2
                    exponent[2] = sigma2.clone();
                }
                EgfSeries::from_coeffs(exponent).exp().expect("zero constant term")
            }
            RvSpec::Uniform { a, b } => {
                // (e^{bt} - e^{at}) / ((b - a) t): dividing by t shifts EGF
                // coefficients, g_n -> g_{n+1} / (n + 1).
                let width = b - a;
                let numerator = EgfSeries::exponential(b, order + 1)
                    .sub(&EgfSeries::exponential(a, order + 1))
                    .expect("equal orders");
                EgfSeries::from_fn(order, |n| {
                    numerator.coeff(n + 1) / (&width * int(n as i64 + 1))
                })
            }
        }
    }

    /// `E[e_λ^Y(t)]`; coefficient `n` is `E[(Y)_{n,λ}]`. At `λ = 0` this is
    /// exactly [`RvSpec::mgf_series`].
    pub fn degen_mgf_series(&self, lambda: &Rational, order: usize) -> EgfSeries {
        self.mgf_series(order)
            .compose(&log_degen_exp_series(lambda, order))
            .expect("log e_λ(t) has zero constant term")
    }

    /// `E[Y^n]`.
    pub fn moment(&self, n: usize) -> Rational {
        self.mgf_series(n).coeff(n)
    }

    /// Exact probability mass function for the finitely supported families.
    pub fn finite_pmf(&self) -> Option<Vec<(Rational, Rational)>> {
        match self {
            RvSpec::Constant { c } => Some(vec![(c.clone(), Rational::one())]),
            RvSpec::Bernoulli { p } => Some(vec![
                (Rational::zero(), Rational::one() - p),
                (Rational::one(), p.clone()),
            ]),
            RvSpec::Binomial { m, p } => {
                let m = *m as usize;
                let q = Rational::one() - p;
                Some(
                    (0..=m)
                        .map(|i| {
                            let prob = crate::rational::binomial_r(m, i)
                                * crate::rational::pow(p, i as i64)
                                * crate::rational::pow(&q, (m - i) as i64);
                            (int(i as i64), prob)
                        })
                        .collect(),
                )
            }
            _ => None,
        }
    }
}

/// `log e_λ(t) = log(1 + λt) / λ`, EGF coefficients `(-λ)^{n-1} (n-1)!`;
/// this is `t` at `λ = 0`.
pub fn log_degen_exp_series(lambda: &Rational, order: usize) -> EgfSeries {
    let mut coefficient = Rational::one();
    EgfSeries::from_fn(order, |n| {
        if n == 0 {
            return Rational::zero();
        }
        if n > 1 {
            coefficient = &coefficient * -lambda * int(n as i64 - 1);
        }
        coefficient.clone()
    })
}

impl fmt::Display for RvSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = format_rational;
        match self {
            RvSpec::Constant { c } => write!(f, "constant:c={}", r(c)),
            RvSpec::Bernoulli { p } => write!(f, "bernoulli:p={}", r(p)),
            RvSpec::Binomial { m, p } => write!(f, "binomial:m={m},p={}", r(p)),
            RvSpec::Poisson { alpha } => write!(f, "poisson:alpha={}", r(alpha)),
            RvSpec::Geometric { p } => write!(f, "geometric:p={}", r(p)),
            RvSpec::Exponential { alpha } => write!(f, "exponential:alpha={}", r(alpha)),
            RvSpec::Gamma { alpha, beta } => {
                write!(f, "gamma:alpha={},beta={}", r(alpha), r(beta))
            }
            RvSpec::Normal { mu, sigma2 } => write!(f, "normal:mu={},sigma2={}", r(mu), r(sigma2)),
            RvSpec::Uniform { a, b } => write!(f, "uniform:a={},b={}", r(a), r(b)),
        }
    }
}

impl FromStr for RvSpec {
    type Err = Error;

    /// Parses the canonical form `family:key=value,...`, e.g.
    /// `normal:mu=1,sigma2=2`. Keys may appear in any order.
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let (family, params) = text.split_once(':').unwrap_or((text, ""));
        let mut values: Vec<(String, String)> = Vec::new();
        for item in params.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {item:?}")))?;
            let key = key.trim().to_ascii_lowercase();
            if values.iter().any(|(k, _)| *k == key) {
                return Err(Error::Parse(format!("duplicate parameter {key:?}")));
            }
            values.push((key, value.trim().to_string()));
        }
        let family = family.trim().to_ascii_lowercase();
        let expected: &[&str] = match family.as_str() {
            "constant" => &["c"],
            "bernoulli" | "geometric" => &["p"],
            "binomial" => &["m", "p"],
            "poisson" | "exponential" => &["alpha"],
            "gamma" => &["alpha", "beta"],
            "normal" => &["mu", "sigma2"],
            "uniform" => &["a", "b"],
            other => return Err(Error::Parse(format!("unknown distribution {other:?}"))),
        };
        if let Some((extra, _)) = values.iter().find(|(k, _)| !expected.contains(&k.as_str())) {
            return Err(Error::Parse(format!("{family} has no parameter {extra:?}")));
        }
        let get = |key: &str| -> Result<Rational> {
            let (_, raw) = values
                .iter()
                .find(|(k, _)| k == key)
                .ok_or_else(|| Error::Parse(format!("{family} needs parameter {key:?}")))?;
            parse_rational(raw)
        };
        let spec = match family.as_str() {
            "constant" => RvSpec::Constant { c: get("c")? },
            "bernoulli" => RvSpec::Bernoulli { p: get("p")? },
            "binomial" => {
                let m = get("m")?;
                if !m.is_integer() || !m.is_positive() {
                    return Err(Error::InvalidParameter(format!("m must be a positive integer, got {m}")));
                }
                let m = u32::try_from(m.to_integer())
                    .map_err(|_| Error::InvalidParameter("m is too large".into()))?;
                RvSpec::Binomial { m, p: get("p")? }
            }
            "poisson" => RvSpec::Poisson { alpha: get("alpha")? },
            "geometric" => RvSpec::Geometric { p: get("p")? },
            "exponential" => RvSpec::Exponential { alpha: get("alpha")? },
            "gamma" => RvSpec::Gamma { alpha: get("alpha")?, beta: get("beta")? },
            "normal" => RvSpec::Normal { mu: get("mu")?, sigma2: get("sigma2")? },
            "uniform" => RvSpec::Uniform { a: get("a")?, b: get("b")? },
            _ => unreachable!(),
        };
        spec.validated()
    }
}
