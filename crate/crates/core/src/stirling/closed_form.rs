//! Per-family closed forms for the probabilistic Stirling numbers, and the
//! vanishing identities that come with them (sums that are zero whenever
//! `0 <= n < k`).
//!
//! Everything here is built from classical Stirling numbers (by their
//! recurrences), degenerate Stirling numbers, Frobenius–Euler numbers and
//! falling factorials; no moment generating function is expanded.
//!
//! The degenerate first kind for the normal family is an infinite series in
//! `j`. It is evaluated term by term in exact arithmetic and summed in `f64`
//! over a fixed number of terms, see [`ClosedValue::Truncated`].

use std::fmt;

use num_traits::{One, Zero};

use crate::combinatorics::{
    degen_falling_factorial, degen_stirling1_triangle, degen_stirling2_triangle, falling_factorial,
    frobenius_euler_series, Triangle,
};
use crate::error::{Error, Result};
use crate::rational::{binomial_r, factorial_r, int, pow, ratio, sign, to_f64, Rational};
use crate::rv::RvSpec;
use crate::series::EgfSeries;
use crate::stirling::Kind;

/// Terms used for the normal degenerate first-kind series.
pub const DEFAULT_SERIES_TERMS: usize = 40;

/// A closed-form value: exact, or a partial sum of an infinite series.
#[derive(Clone, Debug, PartialEq)]
pub enum ClosedValue {
    Exact(Rational),
    Truncated { value: f64, terms: usize },
}

impl ClosedValue {
    pub fn exact(&self) -> Option<&Rational> {
        match self {
            ClosedValue::Exact(v) => Some(v),
            ClosedValue::Truncated { .. } => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ClosedValue::Exact(v) => to_f64(v),
            ClosedValue::Truncated { value, .. } => *value,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ClosedValue::Exact(v) => v.is_zero(),
            ClosedValue::Truncated { value, .. } => *value == 0.0,
        }
    }
}

impl fmt::Display for ClosedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedValue::Exact(v) => write!(f, "{v}"),
            ClosedValue::Truncated { value, terms } => write!(f, "{value:e} (partial sum, {terms} terms)"),
        }
    }
}

/// Sums that vanish for `0 <= n < k`, one per family identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VanishingIdentity {
    /// `Σ_j C(k,j) (-1)^j H_n^{(j)}(1/(1-p))`.
    GeometricFrobeniusEuler,
    /// Same with degenerate Frobenius–Euler numbers.
    GeometricDegenerateFrobeniusEuler,
    /// `Σ_j C(k,j) (-1)^{k-j} (αj + n - 1)_n`.
    GammaSecondKind,
    /// `Σ_j C(k,j) (-1)^j (j + (n-1)α)_{n,α}`.
    GammaFirstKind,
    /// The gamma degenerate second-kind double sum.
    GammaDegenerateSecondKind,
    /// `Σ_j Σ_l (-1)^j C(k,j) (j/2)_l 2^l (σ²/μ²)^l S_1(n,l)`.
    NormalFirstKind,
    /// The normal degenerate first-kind triple series, without `λ^{-k}`.
    NormalDegenerateFirstKind,
    UniformSecondKind,
    /// `Σ_j C(k,j) C(n+j,j)^{-1} (-1)^{k-j} S_2(n+j,j)`; needs `a = 0`.
    UniformOrigin,
    UniformDegenerateSecondKind,
    /// Needs `a = 0`.
    UniformOriginDegenerate,
}

impl VanishingIdentity {
    pub const ALL: [VanishingIdentity; 11] = [
        VanishingIdentity::GeometricFrobeniusEuler,
        VanishingIdentity::GeometricDegenerateFrobeniusEuler,
        VanishingIdentity::GammaSecondKind,
        VanishingIdentity::GammaFirstKind,
        VanishingIdentity::GammaDegenerateSecondKind,
        VanishingIdentity::NormalFirstKind,
        VanishingIdentity::NormalDegenerateFirstKind,
        VanishingIdentity::UniformSecondKind,
        VanishingIdentity::UniformOrigin,
        VanishingIdentity::UniformDegenerateSecondKind,
        VanishingIdentity::UniformOriginDegenerate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VanishingIdentity::GeometricFrobeniusEuler => "geometric-frobenius-euler",
            VanishingIdentity::GeometricDegenerateFrobeniusEuler => "geometric-degenerate-frobenius-euler",
            VanishingIdentity::GammaSecondKind => "gamma-second-kind",
            VanishingIdentity::GammaFirstKind => "gamma-first-kind",
            VanishingIdentity::GammaDegenerateSecondKind => "gamma-degenerate-second-kind",
            VanishingIdentity::NormalFirstKind => "normal-first-kind",
            VanishingIdentity::NormalDegenerateFirstKind => "normal-degenerate-first-kind",
            VanishingIdentity::UniformSecondKind => "uniform-second-kind",
            VanishingIdentity::UniformOrigin => "uniform-origin",
            VanishingIdentity::UniformDegenerateSecondKind => "uniform-degenerate-second-kind",
            VanishingIdentity::UniformOriginDegenerate => "uniform-origin-degenerate",
        }
    }

    pub fn is_degenerate(self) -> bool {
        matches!(
            self,
            VanishingIdentity::GeometricDegenerateFrobeniusEuler
                | VanishingIdentity::GammaDegenerateSecondKind
                | VanishingIdentity::NormalDegenerateFirstKind
                | VanishingIdentity::UniformDegenerateSecondKind
                | VanishingIdentity::UniformOriginDegenerate
        )
    }

    /// Whether the identity is stated for this random variable.
    pub fn applies_to(self, rv: &RvSpec) -> bool {
        use VanishingIdentity::*;
        match (self, rv) {
            (GeometricFrobeniusEuler | GeometricDegenerateFrobeniusEuler, RvSpec::Geometric { .. }) => true,
            (GammaSecondKind | GammaFirstKind | GammaDegenerateSecondKind, RvSpec::Gamma { .. }) => true,
            (NormalFirstKind | NormalDegenerateFirstKind, RvSpec::Normal { mu, .. }) => !mu.is_zero(),
            (UniformSecondKind | UniformDegenerateSecondKind, RvSpec::Uniform { .. }) => true,
            (UniformOrigin | UniformOriginDegenerate, RvSpec::Uniform { a, .. }) => a.is_zero(),
            _ => false,
        }
    }

    /// Identities stated for `rv`, degenerate ones included when asked.
    pub fn for_rv(rv: &RvSpec, degenerate: bool) -> Vec<VanishingIdentity> {
        Self::ALL
            .into_iter()
            .filter(|id| id.applies_to(rv) && (degenerate || !id.is_degenerate()))
            .collect()
    }
}

impl fmt::Display for VanishingIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Stirling numbers of the second kind by `S(n,k) = k S(n-1,k) + S(n-1,k-1)`.
fn stirling2_recurrence(max_n: usize) -> Triangle {
    let mut t = Triangle::from_fn(max_n, |n, k| if n == 0 && k == 0 { Rational::one() } else { Rational::zero() });
    for n in 1..=max_n {
        for k in 1..=n {
            let v = int(k as i64) * t.get(n - 1, k) + t.get(n - 1, k - 1);
            t.set(n, k, v);
        }
    }
    t
}

/// Signed Stirling numbers of the first kind by
/// `s(n,k) = s(n-1,k-1) - (n-1) s(n-1,k)`.
fn stirling1_recurrence(max_n: usize) -> Triangle {
    let mut t = Triangle::from_fn(max_n, |n, k| if n == 0 && k == 0 { Rational::one() } else { Rational::zero() });
    for n in 1..=max_n {
        for k in 1..=n {
            let v = t.get(n - 1, k - 1) - int(n as i64 - 1) * t.get(n - 1, k);
            t.set(n, k, v);
        }
    }
    t
}

/// Precomputed tables for evaluating closed forms of one random variable at
/// one `λ`, for `n <= max_n`.
#[derive(Clone, Debug)]
pub struct ClosedForms {
    rv: RvSpec,
    lambda: Rational,
    max_n: usize,
    terms: usize,
    s1: Triangle,
    s2: Triangle,
    s1l: Triangle,
    s2l: Triangle,
    /// Series of `((1-u)/(e_λ(t)-u))^r`, at `λ = 0` and at `λ`.
    frobenius: Option<(Vec<EgfSeries>, Vec<EgfSeries>)>,
}

impl ClosedForms {
    pub fn new(rv: &RvSpec, lambda: &Rational, max_n: usize) -> Result<Self> {
        Self::with_terms(rv, lambda, max_n, DEFAULT_SERIES_TERMS)
    }

    /// `terms` is the number of series terms for the normal degenerate
    /// first kind.
    pub fn with_terms(rv: &RvSpec, lambda: &Rational, max_n: usize, terms: usize) -> Result<Self> {
        rv.validate()?;
        let s2_n = match rv {
            RvSpec::Normal { .. } => (2 * max_n).max(max_n + terms),
            _ => 2 * max_n,
        };
        let frobenius = match rv {
            RvSpec::Geometric { p } => {
                let u = (Rational::one() - p).recip();
                Some((
                    frobenius_euler_series(&u, &Rational::zero(), max_n, max_n)?,
                    frobenius_euler_series(&u, lambda, max_n, max_n)?,
                ))
            }
            _ => None,
        };
        Ok(ClosedForms {
            rv: rv.clone(),
            lambda: lambda.clone(),
            max_n,
            terms,
            s1: stirling1_recurrence(max_n),
            s2: stirling2_recurrence(s2_n),
            s1l: degen_stirling1_triangle(lambda, max_n),
            s2l: degen_stirling2_triangle(lambda, max_n),
            frobenius,
        })
    }

    pub fn rv(&self) -> &RvSpec {
        &self.rv
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn terms(&self) -> usize {
        self.terms
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if n > self.max_n {
            return Err(Error::InvalidParameter(format!(
                "n = {n} exceeds the table size {}",
                self.max_n
            )));
        }
        Ok(())
    }

    /// Whether a closed form exists for this family and kind.
    pub fn is_available(&self, kind: Kind) -> bool {
        !matches!(
            (&self.rv, kind),
            (RvSpec::Constant { .. }, _) | (RvSpec::Uniform { .. }, Kind::FirstKind | Kind::DegenerateFirstKind)
        )
    }

    /// The closed-form value of `kind` at `(n, k)`.
    ///
    /// Zero for `k > n`. First kinds need `E[Y] != 0`. The uniform first
    /// kinds and the constant variable have no closed form and give
    /// [`Error::NotAvailable`].
    pub fn value(&self, kind: Kind, n: usize, k: usize) -> Result<ClosedValue> {
        self.check_n(n)?;
        if !self.is_available(kind) {
            return Err(Error::NotAvailable(format!(
                "no closed form for {kind} of {}",
                self.rv.family()
            )));
        }
        if kind.is_first_kind() {
            self.rv.require_nonzero_mean()?;
        }
        if k > n {
            return Ok(ClosedValue::Exact(Rational::zero()));
        }
        if let (RvSpec::Normal { .. }, Kind::DegenerateFirstKind) = (&self.rv, kind) {
            let value = self.normal_degen_first_terms(n, k, false).iter().sum();
            return Ok(ClosedValue::Truncated { value, terms: self.terms });
        }
        Ok(ClosedValue::Exact(self.exact_value(kind, n, k)))
    }

    fn exact_value(&self, kind: Kind, n: usize, k: usize) -> Rational {
        let lam = &self.lambda;
        let (s1, s2, s1l, s2l) = (&self.s1, &self.s2, &self.s1l, &self.s2l);
        match (&self.rv, kind) {
            (RvSpec::Bernoulli { p }, Kind::SecondKind) => pow(p, k as i64) * s2.get(n, k),
            (RvSpec::Bernoulli { p }, Kind::FirstKind) => pow(p, -(n as i64)) * s1.get(n, k),
            (RvSpec::Bernoulli { p }, Kind::DegenerateSecondKind) => pow(p, k as i64) * s2l.get(n, k),
            (RvSpec::Bernoulli { p }, Kind::DegenerateFirstKind) => pow(p, -(n as i64)) * s1l.get(n, k),

            (RvSpec::Binomial { m, p }, kind) => {
                let m = int(i64::from(*m));
                let mut sum = Rational::zero();
                for j in k..=n {
                    for i in j..=n {
                        sum += match kind {
                            Kind::SecondKind => {
                                pow(&m, j as i64) * pow(p, i as i64) * s2.get(j, k) * s1.get(i, j) * s2.get(n, i)
                            }
                            Kind::DegenerateSecondKind => {
                                pow(&m, j as i64) * pow(p, i as i64) * s2.get(j, k) * s1.get(i, j) * s2l.get(n, i)
                            }
                            Kind::FirstKind => {
                                pow(p, -(j as i64)) * pow(&m, -(i as i64)) * s1.get(j, k) * s2.get(i, j) * s1.get(n, i)
                            }
                            Kind::DegenerateFirstKind => {
                                pow(p, -(j as i64)) * pow(&m, -(i as i64)) * s1l.get(j, k) * s2.get(i, j) * s1.get(n, i)
                            }
                        };
                    }
                }
                sum
            }

            (RvSpec::Poisson { alpha }, kind) => (k..=n)
                .map(|j| match kind {
                    Kind::SecondKind => pow(alpha, j as i64) * s2.get(j, k) * s2.get(n, j),
                    Kind::FirstKind => pow(alpha, -(j as i64)) * s1.get(j, k) * s1.get(n, j),
                    Kind::DegenerateSecondKind => pow(alpha, j as i64) * s2.get(j, k) * s2l.get(n, j),
                    Kind::DegenerateFirstKind => pow(alpha, -(j as i64)) * s1l.get(j, k) * s1.get(n, j),
                })
                .sum(),

            (RvSpec::Geometric { p }, Kind::SecondKind | Kind::DegenerateSecondKind) => {
                let sum = self.geometric_sum(n, k, kind.is_degenerate());
                sum * pow(&(p - Rational::one()), -(k as i64)) / factorial_r(k)
            }
            (RvSpec::Geometric { p }, kind) => {
                let q = p - Rational::one();
                let nm1 = int(n as i64 - 1);
                (k..=n)
                    .map(|j| {
                        let first = if kind.is_degenerate() { s1l.get(j, k) } else { s1.get(j, k) };
                        binomial_r(n, j)
                            * falling_factorial(&nm1, n - j)
                            * pow(p, j as i64)
                            * pow(&q, (n - j) as i64)
                            * first
                    })
                    .sum()
            }

            (RvSpec::Exponential { alpha }, Kind::SecondKind) => {
                binomial_r(n, k) * falling_factorial(&int(n as i64 - 1), n - k) * pow(alpha, -(n as i64))
            }
            (RvSpec::Exponential { alpha }, Kind::FirstKind) => {
                sign((n - k) as i64)
                    * binomial_r(n, k)
                    * falling_factorial(&int(n as i64 - 1), n - k)
                    * pow(alpha, k as i64)
            }
            (RvSpec::Exponential { alpha }, Kind::DegenerateSecondKind) => (k..=n)
                .map(|j| {
                    binomial_r(j, k)
                        * falling_factorial(&int(j as i64 - 1), j - k)
                        * pow(alpha, -(j as i64))
                        * pow(lam, (n - j) as i64)
                        * s1.get(n, j)
                })
                .sum(),
            (RvSpec::Exponential { alpha }, Kind::DegenerateFirstKind) => (k..=n)
                .map(|j| {
                    binomial_r(n, j)
                        * sign((n - j) as i64)
                        * falling_factorial(&int(n as i64 - 1), n - j)
                        * pow(alpha, j as i64)
                        * pow(lam, (j - k) as i64)
                        * s2.get(j, k)
                })
                .sum(),

            (RvSpec::Gamma { beta, .. }, Kind::SecondKind) => {
                self.gamma_second_sum(n, k) / (factorial_r(k) * pow(beta, n as i64))
            }
            (RvSpec::Gamma { alpha, beta }, Kind::FirstKind) => {
                self.gamma_first_sum(n, k) * pow(beta, k as i64) * pow(&(-alpha.recip()), n as i64)
                    / factorial_r(k)
            }
            (RvSpec::Gamma { .. }, Kind::DegenerateSecondKind) => {
                self.gamma_degen_second_sum(n, k) / factorial_r(k)
            }
            (RvSpec::Gamma { alpha, beta }, Kind::DegenerateFirstKind) => {
                let mut sum = Rational::zero();
                let nm1 = int(n as i64 - 1);
                for l in k..=n {
                    let outer = s2.get(l, k) * pow(lam, (l - k) as i64) * pow(beta, l as i64) / factorial_r(l);
                    let inner: Rational = (0..=l)
                        .map(|j| {
                            binomial_r(l, j)
                                * sign((n - j) as i64)
                                * degen_falling_factorial(&(int(j as i64) + &nm1 * alpha), n, alpha)
                        })
                        .sum();
                    sum += outer * inner;
                }
                sum * pow(alpha, -(n as i64))
            }

            (RvSpec::Normal { mu, sigma2 }, Kind::SecondKind) => self.normal_second(n, k, mu, sigma2),
            (RvSpec::Normal { mu, sigma2 }, Kind::FirstKind) => {
                pow(&(-mu / sigma2), k as i64) * self.normal_first_sum(n, k) / factorial_r(k)
            }
            (RvSpec::Normal { mu, sigma2 }, Kind::DegenerateSecondKind) => (k..=n)
                .map(|m| self.normal_second(m, k, mu, sigma2) * pow(lam, (n - m) as i64) * s1.get(n, m))
                .sum(),

            (RvSpec::Uniform { .. }, Kind::SecondKind) => self.uniform_second_sum(n, k) / factorial_r(k),
            (RvSpec::Uniform { .. }, Kind::DegenerateSecondKind) => {
                self.uniform_degen_second_sum(n, k) / factorial_r(k)
            }

            (RvSpec::Normal { .. }, Kind::DegenerateFirstKind)
            | (RvSpec::Uniform { .. }, _)
            | (RvSpec::Constant { .. }, _) => unreachable!("handled by value()"),
        }
    }

    /// The second-kind closed form specialised to `Uniform(0, b)`.
    pub fn uniform_origin_value(&self, kind: Kind, n: usize, k: usize) -> Result<Rational> {
        self.check_n(n)?;
        let b = match &self.rv {
            RvSpec::Uniform { a, b } if a.is_zero() => b,
            _ => {
                return Err(Error::NotAvailable(format!(
                    "the origin form needs uniform with a = 0, got {}",
                    self.rv
                )))
            }
        };
        if k > n {
            return Ok(Rational::zero());
        }
        match kind {
            Kind::SecondKind => Ok(pow(b, n as i64) * self.uniform_origin_sum(n, k) / factorial_r(k)),
            Kind::DegenerateSecondKind => Ok(self.uniform_origin_degen_sum(n, k) / factorial_r(k)),
            _ => Err(Error::NotAvailable(format!("no closed form for {kind} of uniform"))),
        }
    }

    /// The sum behind `identity` at `(n, k)`; it should vanish for `n < k`.
    pub fn vanishing_sum(&self, identity: VanishingIdentity, n: usize, k: usize) -> Result<ClosedValue> {
        use VanishingIdentity::*;
        self.check_n(n.max(k))?;
        if !identity.applies_to(&self.rv) {
            return Err(Error::NotAvailable(format!("{identity} is not stated for {}", self.rv)));
        }
        let exact = match identity {
            GeometricFrobeniusEuler => self.geometric_sum(n, k, false),
            GeometricDegenerateFrobeniusEuler => self.geometric_sum(n, k, true),
            GammaSecondKind => self.gamma_second_sum(n, k),
            GammaFirstKind => self.gamma_first_sum(n, k),
            GammaDegenerateSecondKind => self.gamma_degen_second_sum(n, k),
            NormalFirstKind => self.normal_first_sum(n, k),
            NormalDegenerateFirstKind => {
                let value = self.normal_degen_first_terms(n, k, true).iter().sum();
                return Ok(ClosedValue::Truncated { value, terms: self.terms });
            }
            UniformSecondKind => self.uniform_second_sum(n, k),
            UniformOrigin => self.uniform_origin_sum(n, k),
            UniformDegenerateSecondKind => self.uniform_degen_second_sum(n, k),
            UniformOriginDegenerate => self.uniform_origin_degen_sum(n, k),
        };
        Ok(ClosedValue::Exact(exact))
    }

    fn frobenius(&self, degenerate: bool) -> &[EgfSeries] {
        let (plain, degen) = self.frobenius.as_ref().expect("geometric tables");
        if degenerate {
            degen
        } else {
            plain
        }
    }

    fn geometric_sum(&self, n: usize, k: usize, degenerate: bool) -> Rational {
        let h = self.frobenius(degenerate);
        (0..=k)
            .map(|j| binomial_r(k, j) * sign(j as i64) * h[j].coeff(n))
            .sum()
    }

    fn gamma_params(&self) -> (&Rational, &Rational) {
        match &self.rv {
            RvSpec::Gamma { alpha, beta } => (alpha, beta),
            _ => unreachable!("gamma only"),
        }
    }

    fn gamma_second_sum(&self, n: usize, k: usize) -> Rational {
        let (alpha, _) = self.gamma_params();
        (0..=k)
            .map(|j| {
                binomial_r(k, j)
                    * sign((k - j) as i64)
                    * falling_factorial(&(alpha * int(j as i64) + int(n as i64 - 1)), n)
            })
            .sum()
    }

    fn gamma_first_sum(&self, n: usize, k: usize) -> Rational {
        let (alpha, _) = self.gamma_params();
        let shift = int(n as i64 - 1) * alpha;
        (0..=k)
            .map(|j| binomial_r(k, j) * sign(j as i64) * degen_falling_factorial(&(int(j as i64) + &shift), n, alpha))
            .sum()
    }

    fn gamma_degen_second_sum(&self, n: usize, k: usize) -> Rational {
        let (alpha, beta) = self.gamma_params();
        let mut sum = Rational::zero();
        for l in 0..=n {
            let outer = pow(beta, -(l as i64)) * pow(&self.lambda, (n - l) as i64) * self.s1.get(n, l);
            if outer.is_zero() {
                continue;
            }
            let inner: Rational = (0..=k)
                .map(|j| {
                    binomial_r(k, j)
                        * sign((k - j) as i64)
                        * falling_factorial(&(alpha * int(j as i64) + int(l as i64 - 1)), l)
                })
                .sum();
            sum += outer * inner;
        }
        sum
    }

    fn normal_params(&self) -> (&Rational, &Rational) {
        match &self.rv {
            RvSpec::Normal { mu, sigma2 } => (mu, sigma2),
            _ => unreachable!("normal only"),
        }
    }

    /// `Σ_{j=k}^n (n!/j!) C(j, n-j) μ^{2j-n} (σ²/2)^{n-j} S_2(j, k)`.
    fn normal_second(&self, n: usize, k: usize, mu: &Rational, sigma2: &Rational) -> Rational {
        let half = sigma2 / int(2);
        (k..=n)
            .filter(|&j| 2 * j >= n)
            .map(|j| {
                factorial_r(n) / factorial_r(j)
                    * binomial_r(j, n - j)
                    * pow(mu, 2 * j as i64 - n as i64)
                    * pow(&half, (n - j) as i64)
                    * self.s2.get(j, k)
            })
            .sum()
    }

    /// `Σ_m S_1(n,m) 2^m c^m Σ_{l=0}^j (-1)^{j+l} C(j,l) (l/2)_m`, `c = σ²/μ²`.
    fn normal_inner(&self, n: usize, j: usize) -> Rational {
        let (mu, sigma2) = self.normal_params();
        let c2 = int(2) * sigma2 / (mu * mu);
        let mut sum = Rational::zero();
        for m in 0..=n {
            let s = self.s1.get(n, m);
            if s.is_zero() {
                continue;
            }
            let diff: Rational = (0..=j)
                .map(|l| sign((j + l) as i64) * binomial_r(j, l) * falling_factorial(&ratio(l as i64, 2), m))
                .sum();
            sum += s * pow(&c2, m as i64) * diff;
        }
        sum
    }

    fn normal_first_sum(&self, n: usize, k: usize) -> Rational {
        let (mu, sigma2) = self.normal_params();
        let c2 = int(2) * sigma2 / (mu * mu);
        let mut sum = Rational::zero();
        for j in 0..=k {
            let coeff = sign(j as i64) * binomial_r(k, j);
            let half_j = ratio(j as i64, 2);
            for l in 0..=n {
                sum += &coeff * falling_factorial(&half_j, l) * pow(&c2, l as i64) * self.s1.get(n, l);
            }
        }
        sum
    }

    /// Terms `j = k, .., k + terms - 1` of the normal degenerate first-kind
    /// series, each exact and then rounded. With `vanishing` the `λ^{-k}`
    /// prefactor is left out, i.e. every term carries `λ^j`.
    fn normal_degen_first_terms(&self, n: usize, k: usize, vanishing: bool) -> Vec<f64> {
        let (mu, sigma2) = self.normal_params();
        let ratio = mu / sigma2;
        (k..k + self.terms)
            .map(|j| {
                let lam_exp = if vanishing { j } else { j - k };
                let s2 = self.s2.get(j, k);
                let scale = pow(&self.lambda, lam_exp as i64);
                if s2.is_zero() || scale.is_zero() {
                    return 0.0;
                }
                let term = scale * pow(&ratio, j as i64) * s2 / factorial_r(j) * self.normal_inner(n, j);
                to_f64(&term)
            })
            .collect()
    }

    fn uniform_params(&self) -> (&Rational, &Rational) {
        match &self.rv {
            RvSpec::Uniform { a, b } => (a, b),
            _ => unreachable!("uniform only"),
        }
    }

    /// `Σ_j Σ_l C(n,l) C(k,j) C(l+j,j)^{-1} (-1)^{k-j} (aj)^{n-l} (b-a)^l S_2(l+j,j)`.
    fn uniform_second_sum(&self, n: usize, k: usize) -> Rational {
        let (a, b) = self.uniform_params();
        let width = b - a;
        let mut sum = Rational::zero();
        for j in 0..=k {
            let aj = a * int(j as i64);
            let cj = binomial_r(k, j) * sign((k - j) as i64);
            for l in 0..=n {
                sum += &cj * binomial_r(n, l) / binomial_r(l + j, j)
                    * pow(&aj, (n - l) as i64)
                    * pow(&width, l as i64)
                    * self.s2.get(l + j, j);
            }
        }
        sum
    }

    fn uniform_degen_second_sum(&self, n: usize, k: usize) -> Rational {
        let (a, b) = self.uniform_params();
        let width = b - a;
        let mut sum = Rational::zero();
        for m in 0..=n {
            let outer = pow(&self.lambda, (n - m) as i64) * self.s1.get(n, m);
            if outer.is_zero() {
                continue;
            }
            let mut inner = Rational::zero();
            for j in 0..=k {
                let aj = a * int(j as i64);
                let cj = binomial_r(k, j) * sign((k - j) as i64);
                for l in 0..=m {
                    inner += &cj * binomial_r(m, l) / binomial_r(l + j, j)
                        * pow(&aj, (m - l) as i64)
                        * pow(&width, l as i64)
                        * self.s2.get(l + j, j);
                }
            }
            sum += outer * inner;
        }
        sum
    }

    fn uniform_origin_sum(&self, n: usize, k: usize) -> Rational {
        (0..=k)
            .map(|j| binomial_r(k, j) / binomial_r(n + j, j) * sign((k - j) as i64) * self.s2.get(n + j, j))
            .sum()
    }

    fn uniform_origin_degen_sum(&self, n: usize, k: usize) -> Rational {
        let (_, b) = self.uniform_params();
        (0..=n)
            .map(|m| {
                pow(b, m as i64) * pow(&self.lambda, (n - m) as i64) * self.s1.get(n, m) * self.uniform_origin_sum(m, k)
            })
            .sum()
    }
}

/// One closed-form value, building the tables for this `n` only.
pub fn closed_form(rv: &RvSpec, kind: Kind, lambda: &Rational, n: usize, k: usize) -> Result<ClosedValue> {
    ClosedForms::new(rv, lambda, n)?.value(kind, n, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{stirling1_triangle, stirling2_triangle};

    fn rv(text: &str) -> RvSpec {
        text.parse().unwrap()
    }

    #[test]
    fn recurrences_match_library_triangles() {
        assert_eq!(stirling2_recurrence(10), stirling2_triangle(10));
        assert_eq!(stirling1_recurrence(10), stirling1_triangle(10));
    }

    #[test]
    fn geometric_half() {
        let v = closed_form(&rv("geometric:p=1/2"), Kind::SecondKind, &int(0), 1, 1).unwrap();
        assert_eq!(v, ClosedValue::Exact(int(2)));
    }

    #[test]
    fn exponential_values() {
        let cf = ClosedForms::new(&rv("exponential:alpha=1"), &int(0), 4).unwrap();
        assert_eq!(cf.value(Kind::SecondKind, 3, 2).unwrap(), ClosedValue::Exact(int(6)));
        assert_eq!(cf.value(Kind::FirstKind, 3, 2).unwrap(), ClosedValue::Exact(int(-6)));
    }

    #[test]
    fn unavailable_and_preconditions() {
        let cf = ClosedForms::new(&rv("uniform:a=0,b=1"), &ratio(1, 2), 3).unwrap();
        assert!(matches!(cf.value(Kind::FirstKind, 2, 1), Err(Error::NotAvailable(_))));
        let cf = ClosedForms::new(&rv("normal:mu=0,sigma2=1"), &int(0), 3).unwrap();
        assert!(matches!(cf.value(Kind::FirstKind, 2, 1), Err(Error::ZeroMean { .. })));
        assert_eq!(cf.value(Kind::SecondKind, 2, 3).unwrap(), ClosedValue::Exact(int(0)));
    }

    #[test]
    fn normal_degenerate_tail_is_exactly_zero() {
        let cf = ClosedForms::new(&rv("normal:mu=1,sigma2=1"), &ratio(1, 2), 4).unwrap();
        let terms = cf.normal_degen_first_terms(3, 1, false);
        assert!(terms[3..].iter().all(|t| *t == 0.0));
    }
}
