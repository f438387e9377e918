//! Algebraic invariants of truncated EGF series, with a brute-force
//! composition oracle on ordinary coefficients.

use num_traits::{One, Zero};
use proptest::prelude::*;

use prob_stirling::rational::{ratio, Rational};
use prob_stirling::EgfSeries;

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| ratio(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn series_of(order: usize) -> impl Strategy<Value = EgfSeries> {
    prop::collection::vec(rational(), order + 1).prop_map(EgfSeries::from_coeffs)
}

fn zero_constant(order: usize) -> impl Strategy<Value = EgfSeries> {
    series_of(order).prop_map(|s| {
        let mut c = s.into_coeffs();
        c[0] = Rational::zero();
        EgfSeries::from_coeffs(c)
    })
}

fn delta(order: usize) -> impl Strategy<Value = EgfSeries> {
    (zero_constant(order), nonzero_rational()).prop_map(|(s, f1)| {
        let mut c = s.into_coeffs();
        c[1] = f1;
        EgfSeries::from_coeffs(c)
    })
}

/// Multiplies ordinary coefficient lists, truncated to `order`.
fn ordinary_mul(a: &[Rational], b: &[Rational], order: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); order + 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if i + j <= order {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// `f(g)` as `Σ_j f_j g^j` on ordinary coefficients, with repeated naive
/// multiplication.
fn brute_force_compose(f: &EgfSeries, g: &EgfSeries) -> EgfSeries {
    let order = f.order();
    let (fo, go) = (f.ordinary(), g.ordinary());
    let mut acc = vec![Rational::zero(); order + 1];
    let mut power = vec![Rational::zero(); order + 1];
    power[0] = Rational::one();
    for fj in &fo {
        for (a, p) in acc.iter_mut().zip(&power) {
            *a += fj * p;
        }
        power = ordinary_mul(&power, &go, order);
    }
    EgfSeries::from_ordinary(&acc)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_commutative_and_associative(
        (a, b, c) in (0usize..7).prop_flat_map(|o| (series_of(o), series_of(o), series_of(o)))
    ) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn product_matches_ordinary_convolution(
        (a, b) in (0usize..7).prop_flat_map(|o| (series_of(o), series_of(o)))
    ) {
        let expected = EgfSeries::from_ordinary(&ordinary_mul(&a.ordinary(), &b.ordinary(), a.order()));
        prop_assert_eq!(a.mul(&b).unwrap(), expected);
    }

    #[test]
    fn reciprocal_inverts(
        (a, c0) in (0usize..7).prop_flat_map(|o| (series_of(o), nonzero_rational()))
    ) {
        let mut c = a.into_coeffs();
        c[0] = c0;
        let a = EgfSeries::from_coeffs(c);
        let one = EgfSeries::one(a.order());
        prop_assert_eq!(a.mul(&a.recip().unwrap()).unwrap(), one);
    }

    #[test]
    fn exp_and_log_are_inverse(a in (0usize..7).prop_flat_map(zero_constant)) {
        let e = a.exp().unwrap();
        let minus_one = -Rational::one();
        prop_assert_eq!(e.add_constant(&minus_one).log1p().unwrap(), a.clone());
        let l = a.log1p().unwrap();
        prop_assert_eq!(l.exp().unwrap().add_constant(&minus_one), a);
    }

    #[test]
    fn binomial_powers_add(
        (a, e1, e2) in (0usize..7).prop_flat_map(|o| (zero_constant(o), rational(), rational()))
    ) {
        let lhs = a.pow_binomial(&e1).unwrap().mul(&a.pow_binomial(&e2).unwrap()).unwrap();
        prop_assert_eq!(lhs, a.pow_binomial(&(e1 + e2)).unwrap());
    }

    #[test]
    fn binomial_integer_power_is_repeated_product(a in (0usize..7).prop_flat_map(zero_constant), k in 0usize..5) {
        let base = a.add_constant(&Rational::one());
        prop_assert_eq!(a.pow_binomial(&Rational::from_integer(k.into())).unwrap(), base.powi(k));
    }

    #[test]
    fn compose_matches_brute_force(
        (f, g) in (0usize..7).prop_flat_map(|o| (series_of(o), zero_constant(o)))
    ) {
        prop_assert_eq!(f.compose(&g).unwrap(), brute_force_compose(&f, &g));
    }

    #[test]
    fn compositional_inverse_is_two_sided(f in (1usize..8).prop_flat_map(delta)) {
        let g = f.comp_inverse().unwrap();
        let t = EgfSeries::variable(f.order());
        prop_assert_eq!(f.compose(&g).unwrap(), t.clone());
        prop_assert_eq!(g.compose(&f).unwrap(), t);
    }

    #[test]
    fn divided_powers_match_powers(f in (0usize..7).prop_flat_map(zero_constant)) {
        let powers = f.divided_powers();
        for (k, p) in powers.iter().enumerate() {
            let k_fact: Rational = (1..=k).map(|i| Rational::from_integer(i.into())).product();
            prop_assert_eq!(p.scale(&k_fact), f.powi(k));
        }
    }
}

#[test]
fn preconditions() {
    let f = EgfSeries::from_coeffs(vec![ratio(1, 1), ratio(1, 1)]);
    assert!(f.log1p().is_err());
    assert!(f.exp().is_err());
    assert!(f.comp_inverse().is_err());
    assert!(EgfSeries::zero(3).recip().is_err());
    assert!(EgfSeries::one(3).compose(&EgfSeries::one(3)).is_err());
    assert!(EgfSeries::one(3).mul(&EgfSeries::one(2)).is_err());
}
