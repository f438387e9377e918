//! Moments of partial sums `S_j = Y_1 + ... + Y_j` of i.i.d. copies of `Y`.
//!
//! These give the probabilistic Stirling numbers of the second kind without
//! touching any series powers:
//!
//! `S_2^Y(n, k) = (1/k!) Σ_j C(k, j) (-1)^{k-j} E[S_j^n]`

use num_traits::Zero;

use crate::combinatorics::{stirling1_triangle, Triangle};
use crate::rational::{binomial_r, factorial_r, pow, sign, Rational};
use crate::rv::RvSpec;

/// `E[S_j^n]` for `0 <= j <= max_j`, `0 <= n <= max_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialSumMoments {
    table: Vec<Vec<Rational>>,
}

impl PartialSumMoments {
    pub fn max_j(&self) -> usize {
        self.table.len() - 1
    }

    pub fn max_n(&self) -> usize {
        self.table[0].len() - 1
    }

    /// `E[S_j^n]`.
    pub fn get(&self, j: usize, n: usize) -> &Rational {
        &self.table[j][n]
    }

    /// `E[(S_j)_{n,λ}] = Σ_i S_1(n, i) λ^{n-i} E[S_j^i]`, given the
    /// classical first-kind triangle.
    fn degenerate(&self, s1: &Triangle, lambda: &Rational, j: usize, n: usize) -> Rational {
        (0..=n)
            .map(|i| s1.get(n, i) * pow(lambda, (n - i) as i64) * &self.table[j][i])
            .sum()
    }
}

/// Builds the moment table with the convolution recurrence
/// `E[S_j^n] = Σ_i C(n, i) E[S_{j-1}^i] E[Y^{n-i}]`.
pub fn partial_sum_moments(rv: &RvSpec, max_j: usize, max_n: usize) -> PartialSumMoments {
    let y: Vec<Rational> = (0..=max_n).map(|n| rv.moment(n)).collect();
    let mut table = Vec::with_capacity(max_j + 1);
    let mut row = vec![Rational::zero(); max_n + 1];
    row[0] = Rational::from_integer(1.into());
    table.push(row);
    for j in 1..=max_j {
        let prev: &Vec<Rational> = &table[j - 1];
        let row = (0..=max_n)
            .map(|n| (0..=n).map(|i| binomial_r(n, i) * &prev[i] * &y[n - i]).sum())
            .collect();
        table.push(row);
    }
    PartialSumMoments { table }
}

fn alternating(k: usize, mut moment: impl FnMut(usize) -> Rational) -> Rational {
    let sum: Rational = (0..=k)
        .map(|j| binomial_r(k, j) * sign((k - j) as i64) * moment(j))
        .sum();
    sum / factorial_r(k)
}

/// `S_2^Y(n, k)` from moments of partial sums.
pub fn s2y_via_moments(rv: &RvSpec, n: usize, k: usize) -> Rational {
    let m = partial_sum_moments(rv, k, n);
    alternating(k, |j| m.get(j, n).clone())
}

/// `S_{2,λ}^Y(n, k)` from degenerate falling moments of partial sums.
pub fn s2y_degen_via_moments(rv: &RvSpec, lambda: &Rational, n: usize, k: usize) -> Rational {
    let m = partial_sum_moments(rv, k, n);
    let s1 = stirling1_triangle(n);
    alternating(k, |j| m.degenerate(&s1, lambda, j, n))
}

/// The whole `S_2^Y` triangle up to `max_n` from one moment table.
pub fn s2y_triangle_via_moments(rv: &RvSpec, max_n: usize) -> Triangle {
    let m = partial_sum_moments(rv, max_n, max_n);
    Triangle::from_fn(max_n, |n, k| alternating(k, |j| m.get(j, n).clone()))
}

/// The whole `S_{2,λ}^Y` triangle up to `max_n` from one moment table.
pub fn s2y_degen_triangle_via_moments(rv: &RvSpec, lambda: &Rational, max_n: usize) -> Triangle {
    let m = partial_sum_moments(rv, max_n, max_n);
    let s1 = stirling1_triangle(max_n);
    Triangle::from_fn(max_n, |n, k| alternating(k, |j| m.degenerate(&s1, lambda, j, n)))
}
