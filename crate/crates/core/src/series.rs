//! Truncated formal power series in the exponential-generating-function
//! convention.
//!
//! An [`EgfSeries`] of order `N` stores `N + 1` coefficients where
//! `coeffs[n] = n! [t^n] f(t)`. Every operation consumes and produces this
//! convention, works in exact rationals, and never changes the order:
//! binary operations require equal orders.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{binomial_row, factorial_r, Rational};

/// Truncation order used when none is given.
pub const DEFAULT_ORDER: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EgfSeries {
    coeffs: Vec<Rational>,
}

impl EgfSeries {
    /// Builds a series from EGF coefficients; the order is `coeffs.len() - 1`.
    ///
    /// Panics if `coeffs` is empty.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        EgfSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        EgfSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    /// Builds a series from ordinary coefficients `[t^n] f`.
    pub fn from_ordinary(ordinary: &[Rational]) -> Self {
        Self::from_fn(ordinary.len() - 1, |n| &ordinary[n] * factorial_r(n))
    }

    pub fn zero(order: usize) -> Self {
        Self::from_fn(order, |_| Rational::zero())
    }

    pub fn constant(value: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = value;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    /// The series `t`.
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    /// `c * t`.
    pub fn linear(c: Rational, order: usize) -> Self {
        Self::variable(order).scale(&c)
    }

    /// `e^{ct}`: coefficients `c^n`.
    pub fn exponential(c: &Rational, order: usize) -> Self {
        let mut acc = Rational::one();
        Self::from_fn(order, |n| {
            if n > 0 {
                acc *= c;
            }
            acc.clone()
        })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// `n! [t^n]`, zero beyond the truncation order.
    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    /// Ordinary coefficients `[t^n] f`.
    pub fn ordinary(&self) -> Vec<Rational> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c / factorial_r(n))
            .collect()
    }

    /// Drops or zero-extends coefficients so that the result has `order`.
    pub fn truncate(&self, order: usize) -> Self {
        Self::from_fn(order, |n| self.coeff(n))
    }

    pub fn is_delta(&self) -> bool {
        self.coeffs[0].is_zero() && self.order() >= 1 && !self.coeffs[1].is_zero()
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    fn require_zero_constant(&self, op: &'static str) -> Result<()> {
        if self.coeffs[0].is_zero() {
            Ok(())
        } else {
            Err(Error::NonzeroConstant { op })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self::from_fn(self.order(), |n| &self.coeffs[n] + &other.coeffs[n]))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self::from_fn(self.order(), |n| &self.coeffs[n] - &other.coeffs[n]))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_fn(self.order(), |n| &self.coeffs[n] * c)
    }

    pub fn add_constant(&self, c: &Rational) -> Self {
        let mut s = self.clone();
        s.coeffs[0] += c;
        s
    }

    /// EGF Cauchy product `c_n = sum_i C(n,i) a_i b_{n-i}`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let order = self.order();
        let mut out = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let row = binomial_row(n);
            let mut acc = Rational::zero();
            for (i, c) in row.into_iter().enumerate() {
                let (a, b) = (&self.coeffs[i], &other.coeffs[n - i]);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc += a * b * Rational::from_integer(c);
            }
            out.push(acc);
        }
        EgfSeries { coeffs: out }
    }

    /// `self^k` for a nonnegative integer `k`.
    pub fn powi(&self, k: usize) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..k {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Multiplicative inverse.
    pub fn recip(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NonUnit);
        }
        let inv0 = a0.recip();
        let mut out: Vec<Rational> = vec![inv0.clone()];
        for n in 1..=self.order() {
            let row = binomial_row(n);
            let mut acc = Rational::zero();
            for i in 1..=n {
                let a = &self.coeffs[i];
                if a.is_zero() {
                    continue;
                }
                acc += a * &out[n - i] * Rational::from_integer(row[i].clone());
            }
            out.push(-acc * &inv0);
        }
        Ok(EgfSeries { coeffs: out })
    }

    /// `exp(a)` from the differential equation `b' = a' b`, which in EGF
    /// coefficients reads `b_{n+1} = sum_i C(n,i) a_{i+1} b_{n-i}`.
    pub fn exp(&self) -> Result<Self> {
        self.require_zero_constant("exp")?;
        let order = self.order();
        let mut out: Vec<Rational> = vec![Rational::one()];
        for n in 0..order {
            let row = binomial_row(n);
            let mut acc = Rational::zero();
            for i in 0..=n {
                let a = &self.coeffs[i + 1];
                if a.is_zero() {
                    continue;
                }
                acc += a * &out[n - i] * Rational::from_integer(row[i].clone());
            }
            out.push(acc);
        }
        Ok(EgfSeries { coeffs: out })
    }

    /// `log(1 + a)` from `(1 + a) g' = a'`.
    pub fn log1p(&self) -> Result<Self> {
        self.require_zero_constant("log1p")?;
        let order = self.order();
        // h = g', h_n = g_{n+1}
        let mut h: Vec<Rational> = Vec::with_capacity(order);
        for n in 0..order {
            let row = binomial_row(n);
            let mut acc = self.coeffs[n + 1].clone();
            for i in 1..=n {
                let a = &self.coeffs[i];
                if a.is_zero() {
                    continue;
                }
                acc -= a * &h[n - i] * Rational::from_integer(row[i].clone());
            }
            h.push(acc);
        }
        let mut coeffs = vec![Rational::zero()];
        coeffs.extend(h);
        Ok(EgfSeries { coeffs })
    }

    /// `(1 + a)^e = sum_j binom(e, j) a^j` for rational `e`.
    pub fn pow_binomial(&self, e: &Rational) -> Result<Self> {
        self.require_zero_constant("pow_binomial")?;
        let order = self.order();
        let mut acc = Self::one(order);
        let mut power = Self::one(order);
        let mut coefficient = Rational::one();
        for j in 1..=order {
            // binom(e, j) = binom(e, j-1) * (e - j + 1) / j
            coefficient = coefficient * (e - Rational::from_integer((j - 1).into()))
                / Rational::from_integer(j.into());
            if coefficient.is_zero() {
                break;
            }
            power = power.mul_unchecked(self);
            for n in j..=order {
                acc.coeffs[n] += &power.coeffs[n] * &coefficient;
            }
        }
        Ok(acc)
    }

    /// `f(g(t))` where `self = f`; `g` must have zero constant term.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        self.check_order(g)?;
        g.require_zero_constant("compose")?;
        Ok(self.compose_unchecked(g))
    }

    fn compose_unchecked(&self, g: &Self) -> Self {
        let order = self.order();
        let mut acc = Self::constant(self.coeffs[0].clone(), order);
        let mut power = Self::one(order);
        for j in 1..=order {
            power = power.mul_unchecked(g);
            let f_j = &self.coeffs[j];
            if f_j.is_zero() {
                continue;
            }
            let weight = f_j / factorial_r(j);
            for n in j..=order {
                if !power.coeffs[n].is_zero() {
                    acc.coeffs[n] += &power.coeffs[n] * &weight;
                }
            }
        }
        acc
    }

    /// Compositional inverse of a delta series, found coefficient by
    /// coefficient: with `g_1..g_{n-1}` fixed, the `t^n` coefficient of
    /// `f(g(t))` is `f_1 g_n` plus known terms, which must vanish for `n > 1`.
    pub fn comp_inverse(&self) -> Result<Self> {
        if !self.is_delta() {
            return Err(Error::NotDelta);
        }
        let order = self.order();
        let f1 = self.coeffs[1].clone();
        let mut g = Self::zero(order);
        g.coeffs[1] = f1.recip();
        for n in 2..=order {
            let f_n = self.truncate(n);
            let g_n = g.truncate(n);
            let residual = f_n.compose_unchecked(&g_n).coeffs[n].clone();
            g.coeffs[n] = -residual / &f1;
        }
        Ok(g)
    }

    /// `self^k / k!` for `k = 0..=order`.
    pub fn divided_powers(&self) -> Vec<Self> {
        let order = self.order();
        let mut out = Vec::with_capacity(order + 1);
        let mut power = Self::one(order);
        out.push(power.clone());
        for k in 1..=order {
            power = power
                .mul_unchecked(self)
                .scale(&Rational::from_integer(k.into()).recip());
            out.push(power.clone());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn series(values: &[i64]) -> EgfSeries {
        EgfSeries::from_coeffs(values.iter().map(|&v| int(v)).collect())
    }

    fn exp_t(order: usize) -> EgfSeries {
        EgfSeries::exponential(&int(1), order)
    }

    #[test]
    fn mul_examples() {
        assert_eq!(exp_t(3).mul(&exp_t(3)).unwrap(), series(&[1, 2, 4, 8]));
        let a = series(&[3, -1, 4, 1]);
        assert_eq!(a.mul(&EgfSeries::one(3)).unwrap(), a);
        let t = EgfSeries::variable(3);
        assert_eq!(t.mul(&t).unwrap(), series(&[0, 0, 2, 0]));
        assert_eq!(
            t.mul(&EgfSeries::variable(4)),
            Err(Error::OrderMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn recip_examples() {
        assert_eq!(
            EgfSeries::constant(int(2), 4).recip().unwrap(),
            EgfSeries::constant(ratio(1, 2), 4)
        );
        assert_eq!(exp_t(5).recip().unwrap(), EgfSeries::exponential(&int(-1), 5));
        assert_eq!(EgfSeries::variable(3).recip(), Err(Error::NonUnit));
        let a = series(&[2, 1, -3, 5, 7]);
        assert_eq!(a.recip().unwrap().recip().unwrap(), a);
    }

    #[test]
    fn exp_examples() {
        assert_eq!(EgfSeries::zero(4).exp().unwrap(), EgfSeries::one(4));
        assert_eq!(EgfSeries::variable(5).exp().unwrap(), exp_t(5));
        let bell = exp_t(4).add_constant(&int(-1)).exp().unwrap();
        assert_eq!(bell, series(&[1, 1, 2, 5, 15]));
        assert!(matches!(exp_t(3).exp(), Err(Error::NonzeroConstant { .. })));
    }

    #[test]
    fn log1p_examples() {
        assert_eq!(EgfSeries::zero(4).log1p().unwrap(), EgfSeries::zero(4));
        let em1 = exp_t(6).add_constant(&int(-1));
        assert_eq!(em1.log1p().unwrap(), EgfSeries::variable(6));
        assert_eq!(EgfSeries::variable(3).log1p().unwrap(), series(&[0, 1, -1, 2]));
        assert!(exp_t(3).log1p().is_err());
    }

    #[test]
    fn pow_binomial_examples() {
        let a = series(&[0, 2, 3, -1]);
        assert_eq!(a.pow_binomial(&int(0)).unwrap(), EgfSeries::one(3));
        assert_eq!(a.pow_binomial(&int(1)).unwrap(), a.add_constant(&int(1)));
        let half = EgfSeries::variable(2).pow_binomial(&ratio(1, 2)).unwrap();
        // 2! * binom(1/2, 2) = 2 * (-1/8)
        assert_eq!(half.coeffs(), &[int(1), ratio(1, 2), ratio(-1, 4)]);
        assert!(exp_t(2).pow_binomial(&int(2)).is_err());
    }

    #[test]
    fn compose_examples() {
        let f = series(&[5, 1, -2, 7]);
        assert_eq!(f.compose(&EgfSeries::variable(3)).unwrap(), f);
        let em1 = exp_t(7).add_constant(&int(-1));
        let log = EgfSeries::variable(7).log1p().unwrap();
        assert_eq!(em1.compose(&log).unwrap(), EgfSeries::variable(7));
        let em1 = exp_t(3).add_constant(&int(-1));
        // e^{e^t - 1} - 1: Bell numbers without the constant term
        assert_eq!(em1.compose(&em1).unwrap(), series(&[0, 1, 2, 5]));
        assert!(f.compose(&exp_t(3)).is_err());
    }

    #[test]
    fn comp_inverse_examples() {
        let f = EgfSeries::linear(int(3), 5);
        assert_eq!(f.comp_inverse().unwrap(), EgfSeries::linear(ratio(1, 3), 5));
        let em1 = exp_t(8).add_constant(&int(-1));
        assert_eq!(em1.comp_inverse().unwrap(), EgfSeries::variable(8).log1p().unwrap());
        // t / (1 - t) inverts to t / (1 + t)
        let order = 8;
        let geometric = EgfSeries::one(order)
            .sub(&EgfSeries::variable(order))
            .unwrap()
            .recip()
            .unwrap()
            .mul(&EgfSeries::variable(order))
            .unwrap();
        let expected = EgfSeries::one(order)
            .add(&EgfSeries::variable(order))
            .unwrap()
            .recip()
            .unwrap()
            .mul(&EgfSeries::variable(order))
            .unwrap();
        assert_eq!(geometric.comp_inverse().unwrap(), expected);
        assert_eq!(series(&[0, 0, 1]).comp_inverse(), Err(Error::NotDelta));
        assert_eq!(series(&[1, 1, 1]).comp_inverse(), Err(Error::NotDelta));
    }

    #[test]
    fn ordinary_round_trip() {
        let a = series(&[1, 2, 6, 24]);
        assert_eq!(a.ordinary(), vec![int(1), int(2), int(3), int(4)]);
        assert_eq!(EgfSeries::from_ordinary(&a.ordinary()), a);
    }
}
