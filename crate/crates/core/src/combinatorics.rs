//! Classical and degenerate Stirling numbers, falling factorials, the
//! degenerate exponential and logarithm, and Frobenius–Euler numbers.
//!
//! A step `λ = 0` is accepted everywhere and means the non-degenerate limit:
//! `(x)_{n,0} = x^n`, `e_0^x(t) = e^{xt}`, `log_0(1+t) = log(1+t)`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{binomial_r, factorial_r, int, sign, Rational};
use crate::series::EgfSeries;

/// Lower-triangular table `T(n, k)` for `0 <= k <= n <= max_n`.
///
/// Entries with `k > n` are zero and are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle {
    rows: Vec<Vec<Rational>>,
}

impl Triangle {
    pub fn from_fn(max_n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        Triangle {
            rows: (0..=max_n).map(|n| (0..=n).map(|k| f(n, k)).collect()).collect(),
        }
    }

    /// `T(n, k) = n! [t^n] f(t)^k / k!`, the table every Stirling-type
    /// family in this crate is read from.
    pub fn from_divided_powers(f: &EgfSeries) -> Self {
        let powers = f.divided_powers();
        Self::from_fn(f.order(), |n, k| powers[k].coeff(n))
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `T(n, k)`; zero for `k > n`.
    ///
    /// Panics if `n > max_n`.
    pub fn get(&self, n: usize, k: usize) -> Rational {
        assert!(n <= self.max_n(), "row {n} beyond table size {}", self.max_n());
        self.rows[n].get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, n: usize, k: usize, value: Rational) {
        assert!(k <= n, "({n}, {k}) lies above the diagonal");
        self.rows[n][k] = value;
    }

    pub fn row(&self, n: usize) -> &[Rational] {
        &self.rows[n]
    }

    /// `(n, k, T(n, k))` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(n, row)| row.iter().enumerate().map(move |(k, v)| (n, k, v)))
    }

    /// Matrix product `sum_k self(n, k) other(k, l)`.
    pub fn compose(&self, other: &Triangle) -> Triangle {
        let size = self.max_n().min(other.max_n());
        Triangle::from_fn(size, |n, l| {
            (l..=n).fold(Rational::zero(), |acc, k| acc + self.get(n, k) * other.get(k, l))
        })
    }

    /// `a_n = sum_{k<=n} T(n, k) b_k`.
    pub fn apply(&self, b: &[Rational]) -> Vec<Rational> {
        (0..b.len().min(self.rows.len()))
            .map(|n| (0..=n).fold(Rational::zero(), |acc, k| acc + self.get(n, k) * &b[k]))
            .collect()
    }

    /// `a_n = sum_{k=n}^{m} T(k, n) b_k` with `m = b.len() - 1`.
    pub fn apply_transposed(&self, b: &[Rational]) -> Vec<Rational> {
        let m = b.len().min(self.rows.len());
        (0..m)
            .map(|n| (n..m).fold(Rational::zero(), |acc, k| acc + self.get(k, n) * &b[k]))
            .collect()
    }
}

/// `(x)_n = x (x - 1) ... (x - n + 1)`, with `(x)_0 = 1`.
pub fn falling_factorial(x: &Rational, n: usize) -> Rational {
    degen_falling_factorial(x, n, &Rational::one())
}

/// `(x)_{n,λ} = x (x - λ) ... (x - (n - 1) λ)`.
pub fn degen_falling_factorial(x: &Rational, n: usize, lambda: &Rational) -> Rational {
    let mut acc = Rational::one();
    let mut factor = x.clone();
    for _ in 0..n {
        acc *= &factor;
        factor -= lambda;
    }
    acc
}

/// `S_2(n, k) = (1/k!) sum_j C(k, j) (-1)^{k-j} j^n`.
pub fn stirling2(n: usize, k: usize) -> Rational {
    degen_stirling2(n, k, &Rational::zero())
}

/// Signed `S_1(n, k)`: coefficient of `x^k` in `(x)_n`.
pub fn stirling1(n: usize, k: usize) -> Rational {
    falling_factorial_coefficients(n)
        .get(k)
        .cloned()
        .unwrap_or_else(Rational::zero)
}

/// Power-basis coefficients of `(x)_n`, lowest degree first.
pub fn falling_factorial_coefficients(n: usize) -> Vec<Rational> {
    let mut coeffs = vec![Rational::one()];
    for i in 0..n {
        // multiply by (x - i)
        let shift = int(i as i64);
        let mut next = vec![Rational::zero(); coeffs.len() + 1];
        for (d, c) in coeffs.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= c * &shift;
        }
        coeffs = next;
    }
    coeffs
}

/// `S_{2,λ}(n, k) = (1/k!) sum_j C(k, j) (-1)^{k-j} (j)_{n,λ}`.
pub fn degen_stirling2(n: usize, k: usize, lambda: &Rational) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let sum = (0..=k).fold(Rational::zero(), |acc, j| {
        acc + binomial_r(k, j)
            * sign((k - j) as i64)
            * degen_falling_factorial(&int(j as i64), n, lambda)
    });
    sum / factorial_r(k)
}

/// `S_{1,λ}(n, k) = n! [t^n] (log_λ(1+t))^k / k!`.
pub fn degen_stirling1(n: usize, k: usize, lambda: &Rational) -> Rational {
    if k > n {
        return Rational::zero();
    }
    degen_stirling1_triangle(lambda, n).get(n, k)
}

pub fn stirling2_triangle(max_n: usize) -> Triangle {
    Triangle::from_fn(max_n, stirling2)
}

pub fn stirling1_triangle(max_n: usize) -> Triangle {
    Triangle::from_fn(max_n, |n, k| falling_factorial_coefficients(n)[k].clone())
}

pub fn degen_stirling2_triangle(lambda: &Rational, max_n: usize) -> Triangle {
    Triangle::from_fn(max_n, |n, k| degen_stirling2(n, k, lambda))
}

pub fn degen_stirling1_triangle(lambda: &Rational, max_n: usize) -> Triangle {
    Triangle::from_divided_powers(&degen_log_series(lambda, max_n))
}

/// `e_λ^x(t) = (1 + λt)^{x/λ}`, coefficients `(x)_{n,λ}`.
pub fn degen_exp_series(x: &Rational, lambda: &Rational, order: usize) -> EgfSeries {
    EgfSeries::from_fn(order, |n| degen_falling_factorial(x, n, lambda))
}

/// `log_λ(1 + t) = ((1 + t)^λ - 1) / λ`; `log(1 + t)` at `λ = 0`.
pub fn degen_log_series(lambda: &Rational, order: usize) -> EgfSeries {
    let t = EgfSeries::variable(order);
    if lambda.is_zero() {
        return t.log1p().expect("t has zero constant term");
    }
    t.pow_binomial(lambda)
        .expect("t has zero constant term")
        .add_constant(&-Rational::one())
        .scale(&lambda.recip())
}

/// `(1 - u) / (e_λ(t) - u)`, whose powers generate the (degenerate)
/// Frobenius–Euler numbers.
fn frobenius_euler_base(u: &Rational, lambda: &Rational, order: usize) -> Result<EgfSeries> {
    if u.is_one() {
        return Err(Error::InvalidParameter(
            "Frobenius-Euler numbers need u != 1".into(),
        ));
    }
    let denominator = degen_exp_series(&Rational::one(), lambda, order).add_constant(&-u);
    Ok(denominator.recip()?.scale(&(Rational::one() - u)))
}

/// Series `((1 - u)/(e_λ(t) - u))^r` for `r = 0..=max_r`.
pub fn frobenius_euler_series(
    u: &Rational,
    lambda: &Rational,
    order: usize,
    max_r: usize,
) -> Result<Vec<EgfSeries>> {
    let base = frobenius_euler_base(u, lambda, order)?;
    let mut out = Vec::with_capacity(max_r + 1);
    let mut power = EgfSeries::one(order);
    out.push(power.clone());
    for _ in 0..max_r {
        power = power.mul(&base)?;
        out.push(power.clone());
    }
    Ok(out)
}

/// Frobenius–Euler number `H_n^{(r)}(u)`.
pub fn frobenius_euler(n: usize, r: usize, u: &Rational) -> Result<Rational> {
    degen_frobenius_euler(n, r, u, &Rational::zero())
}

/// Degenerate Frobenius–Euler number `h_{n,λ}^{(r)}(u)`.
pub fn degen_frobenius_euler(n: usize, r: usize, u: &Rational, lambda: &Rational) -> Result<Rational> {
    Ok(frobenius_euler_base(u, lambda, n)?.powi(r).coeff(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn falling_factorials() {
        assert_eq!(falling_factorial(&ratio(7, 3), 0), int(1));
        assert_eq!(falling_factorial(&int(5), 3), int(60));
        assert_eq!(falling_factorial(&ratio(1, 2), 2), ratio(-1, 4));
        assert_eq!(degen_falling_factorial(&int(2), 3, &int(0)), int(8));
        assert_eq!(degen_falling_factorial(&int(5), 3, &int(1)), int(60));
        assert_eq!(degen_falling_factorial(&int(3), 2, &int(2)), int(3));
    }

    #[test]
    fn stirling_second_kind() {
        for n in 0..8 {
            assert_eq!(stirling2(n, n), int(1));
        }
        assert_eq!(stirling2(4, 2), int(7));
        assert_eq!(stirling2(3, 2), int(3));
        assert_eq!(stirling2(2, 3), int(0));
        assert_eq!(stirling2(3, 0), int(0));
    }

    #[test]
    fn stirling_first_kind() {
        for n in 0..8 {
            assert_eq!(stirling1(n, n), int(1));
        }
        assert_eq!(stirling1(3, 2), int(-3));
        assert_eq!(stirling1(4, 2), int(11));
        assert_eq!(stirling1(3, 1), int(2));
        assert_eq!(stirling1(2, 4), int(0));
    }

    #[test]
    fn degenerate_stirling_numbers() {
        let lambda = ratio(2, 7);
        for n in 0..=8 {
            for k in 0..=8 {
                assert_eq!(degen_stirling2(n, k, &int(0)), stirling2(n, k));
                assert_eq!(degen_stirling1(n, k, &int(0)), stirling1(n, k));
            }
            assert_eq!(degen_stirling2(n, n, &lambda), int(1));
        }
        assert_eq!(degen_stirling2(2, 1, &lambda), int(1) - &lambda);
        assert_eq!(degen_stirling1(2, 1, &lambda), &lambda - int(1));
    }

    #[test]
    fn degenerate_diagonal_matches_series_definition() {
        let lambda = ratio(-3, 5);
        let e_minus_1 = degen_exp_series(&int(1), &lambda, 7).add_constant(&int(-1));
        let table = Triangle::from_divided_powers(&e_minus_1);
        assert_eq!(table, degen_stirling2_triangle(&lambda, 7));
    }

    #[test]
    fn degenerate_orthogonality_small() {
        let lambda = ratio(1, 3);
        let product = degen_stirling2_triangle(&lambda, 6).compose(&degen_stirling1_triangle(&lambda, 6));
        assert_eq!(product, Triangle::from_fn(6, |n, k| int((n == k) as i64)));
    }

    #[test]
    fn degenerate_exp_and_log() {
        assert_eq!(
            degen_exp_series(&int(1), &int(0), 5),
            EgfSeries::exponential(&int(1), 5)
        );
        let e = degen_exp_series(&int(1), &int(1), 5);
        assert_eq!(e.coeffs()[..3], [int(1), int(1), int(0)]);
        assert!(e.coeffs()[2..].iter().all(Zero::is_zero));
        assert_eq!(degen_log_series(&int(0), 5), EgfSeries::variable(5).log1p().unwrap());
        assert_eq!(degen_log_series(&int(1), 5), EgfSeries::variable(5));
        let lambda = ratio(3, 4);
        let e_minus_1 = degen_exp_series(&int(1), &lambda, 9).add_constant(&int(-1));
        let log = degen_log_series(&lambda, 9);
        let t = EgfSeries::variable(9);
        assert_eq!(e_minus_1.compose(&log).unwrap(), t);
        assert_eq!(log.compose(&e_minus_1).unwrap(), t);
    }

    #[test]
    fn frobenius_euler_numbers() {
        for r in 0..4 {
            assert_eq!(frobenius_euler(0, r, &int(2)).unwrap(), int(1));
        }
        for n in 0..5 {
            assert_eq!(frobenius_euler(n, 0, &int(3)).unwrap(), int((n == 0) as i64));
        }
        assert_eq!(frobenius_euler(1, 1, &int(2)).unwrap(), int(1));
        assert_eq!(frobenius_euler(1, 1, &int(3)).unwrap(), ratio(1, 2));
        assert!(frobenius_euler(2, 1, &int(1)).is_err());
    }

    #[test]
    fn degenerate_frobenius_euler_numbers() {
        let lambda = ratio(1, 2);
        for n in 0..=6 {
            for r in 0..=3 {
                assert_eq!(
                    degen_frobenius_euler(n, r, &int(2), &int(0)).unwrap(),
                    frobenius_euler(n, r, &int(2)).unwrap()
                );
            }
        }
        assert_eq!(degen_frobenius_euler(0, 3, &int(2), &lambda).unwrap(), int(1));
        assert_eq!(degen_frobenius_euler(1, 1, &int(2), &lambda).unwrap(), int(1));
        assert!(degen_frobenius_euler(1, 1, &int(1), &lambda).is_err());
    }

    #[test]
    fn triangle_access() {
        let mut t = stirling2_triangle(4);
        assert_eq!(t.get(2, 3), int(0));
        assert_eq!(t.entries().count(), 15);
        t.set(3, 1, int(9));
        assert_eq!(t.get(3, 1), int(9));
        let b = vec![int(1), int(2), int(3)];
        assert_eq!(t.apply(&b).len(), 3);
    }
}
