//! Checks of the structural identities, each producing a [`Report`] that
//! names the first violation found.

use std::fmt;

use num_traits::Zero;

use crate::combinatorics::Triangle;
use crate::error::{Error, Result};
use crate::rational::{to_f64, Rational};
use crate::rv::RvSpec;
use crate::stirling::closed_form::{ClosedForms, ClosedValue, VanishingIdentity};
use crate::stirling::cumulants::{cgf_series, cumulants};
use crate::stirling::moments::{s2y_degen_triangle_via_moments, s2y_triangle_via_moments};
use crate::stirling::{e_y_series, kronecker, s2y_degen_triangle, s2y_triangle, triangle, triangle_pair, Kind};

/// Absolute tolerance for checks against partial sums of a series.
pub const SERIES_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub check: String,
    pub n: usize,
    pub k: usize,
    pub expected: String,
    pub actual: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at (n={}, k={}): expected {}, got {}",
            self.check, self.n, self.k, self.expected, self.actual
        )
    }
}

/// Outcome of one verification: how many equalities were checked and the
/// first one that failed, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub checks: usize,
    pub violation: Option<Violation>,
}

impl Report {
    pub fn new() -> Self {
        Report { checks: 0, violation: None }
    }

    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }

    /// Records one exact comparison. Only the first failure is kept.
    pub fn expect_eq(&mut self, check: &str, n: usize, k: usize, expected: &Rational, actual: &Rational) {
        self.checks += 1;
        if expected != actual && self.violation.is_none() {
            self.violation = Some(Violation {
                check: check.to_string(),
                n,
                k,
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }

    /// Records one comparison with an absolute tolerance.
    pub fn expect_close(&mut self, check: &str, n: usize, k: usize, expected: f64, actual: f64, tol: f64) {
        self.checks += 1;
        let ok = (expected - actual).abs() <= tol;
        if !ok && self.violation.is_none() {
            self.violation = Some(Violation {
                check: check.to_string(),
                n,
                k,
                expected: format!("{expected:e}"),
                actual: format!("{actual:e}"),
            });
        }
    }

    /// Compares an exact value with a closed value: exact equality, or the
    /// series tolerance for partial sums.
    pub fn expect_value(&mut self, check: &str, n: usize, k: usize, expected: &Rational, actual: &ClosedValue) {
        match actual {
            ClosedValue::Exact(v) => self.expect_eq(check, n, k, expected, v),
            ClosedValue::Truncated { value, .. } => {
                self.expect_close(check, n, k, to_f64(expected), *value, SERIES_TOLERANCE)
            }
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.checks += other.checks;
        if self.violation.is_none() {
            self.violation = other.violation;
        }
    }
}

impl Default for Report {
    fn default() -> Self {
        Self::new()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(f, "{} checks passed", self.checks),
            Some(v) => write!(f, "{v}"),
        }
    }
}

/// Checks `Σ_k A(n,k) B(k,l) = δ_{nl}` and `Σ_k B(n,k) A(k,l) = δ_{nl}`
/// for all `n, l` up to the smaller table size.
pub fn check_orthogonality(second: &Triangle, first: &Triangle) -> Report {
    let size = second.max_n().min(first.max_n());
    let mut report = Report::new();
    for (name, a, b) in [("second*first", second, first), ("first*second", first, second)] {
        for n in 0..=size {
            for l in 0..=n {
                let sum: Rational = (l..=n).map(|k| a.get(n, k) * b.get(k, l)).sum();
                report.expect_eq(name, n, l, &kronecker(n, l), &sum);
            }
        }
    }
    report
}

/// Orthogonality of the probabilistic Stirling triangles of `rv` up to
/// `order`, degenerate at `λ` when given.
pub fn verify_orthogonality(rv: &RvSpec, lambda: Option<&Rational>, order: usize) -> Result<Report> {
    let (second, first) = triangle_pair(rv, lambda, order)?;
    Ok(check_orthogonality(&second, &first))
}

/// Every vanishing identity stated for `rv`, for `0 <= n < k <= max_k`.
/// Degenerate identities are checked only when `λ` is given.
pub fn verify_vanishing(rv: &RvSpec, lambda: Option<&Rational>, max_k: usize) -> Result<Report> {
    let identities = VanishingIdentity::for_rv(rv, lambda.is_some());
    if identities.is_empty() {
        return Err(Error::NotAvailable(format!("no vanishing identity is stated for {rv}")));
    }
    let zero = Rational::zero();
    let cf = ClosedForms::new(rv, lambda.unwrap_or(&zero), max_k)?;
    let mut report = Report::new();
    for id in identities {
        for k in 1..=max_k {
            for n in 0..k {
                let v = cf.vanishing_sum(id, n, k)?;
                report.expect_value(id.name(), n, k, &zero, &v);
            }
        }
    }
    Ok(report)
}

/// Compares every available closed form of `rv` with the series triangles
/// for `n, k <= max_n`.
pub fn verify_closed_forms(rv: &RvSpec, lambda: &Rational, max_n: usize) -> Result<Report> {
    let cf = ClosedForms::new(rv, lambda, max_n)?;
    let mut report = Report::new();
    let mut any = false;
    for kind in Kind::ALL {
        if !cf.is_available(kind) || (kind.is_first_kind() && rv.mean().is_zero()) {
            continue;
        }
        any = true;
        let generic = triangle(rv, kind, lambda, max_n)?;
        for n in 0..=max_n {
            for k in 0..=n {
                let v = cf.value(kind, n, k)?;
                report.expect_value(kind.code(), n, k, &generic.get(n, k), &v);
            }
        }
        if let (RvSpec::Uniform { a, .. }, Kind::SecondKind | Kind::DegenerateSecondKind) = (rv, kind) {
            if a.is_zero() {
                let name = format!("{}-origin", kind.code());
                for n in 0..=max_n {
                    for k in 0..=n {
                        let v = cf.uniform_origin_value(kind, n, k)?;
                        report.expect_eq(&name, n, k, &generic.get(n, k), &v);
                    }
                }
            }
        }
    }
    if !any {
        return Err(Error::NotAvailable(format!("no closed form is available for {rv}")));
    }
    Ok(report)
}

/// Independent oracles for the series triangles: moments of partial sums,
/// the cumulant relation, the diagonal `E[Y]^n`, and the inverse contract
/// `e_Y(ē_Y(t)) = t`.
pub fn verify_oracles(rv: &RvSpec, lambda: &Rational, max_n: usize) -> Result<Report> {
    let mut report = Report::new();
    let s2 = s2y_triangle(rv, max_n);
    let via = s2y_triangle_via_moments(rv, max_n);
    for (n, k, v) in s2.entries() {
        report.expect_eq("S2Y-moments", n, k, &via.get(n, k), v);
    }
    let s2l = s2y_degen_triangle(rv, lambda, max_n);
    let via = s2y_degen_triangle_via_moments(rv, lambda, max_n);
    for (n, k, v) in s2l.entries() {
        report.expect_eq("S2YL-moments", n, k, &via.get(n, k), v);
    }
    let mean = rv.mean();
    let mut power = Rational::from_integer(1.into());
    for n in 0..=max_n {
        report.expect_eq("diagonal", n, n, &power, &s2.get(n, n));
        power *= &mean;
    }
    let kappa = cumulants(rv, max_n);
    let k = cgf_series(rv, max_n);
    for n in 1..=max_n {
        report.expect_eq("cumulants", n, 0, &k.coeff(n), kappa.get(n));
    }
    if !mean.is_zero() {
        let e = e_y_series(rv, max_n);
        let inverse = e.comp_inverse()?;
        let round = e.compose(&inverse)?;
        for n in 0..=max_n {
            report.expect_eq("inverse", n, 0, &kronecker(n, 1), &round.coeff(n));
        }
    }
    Ok(report)
}
