//! Closed forms against the series triangles, and the vanishing identities.

use prob_stirling::rational::{int, ratio};
use prob_stirling::stirling::closed_form::{ClosedForms, ClosedValue, VanishingIdentity};
use prob_stirling::stirling::verify::{verify_closed_forms, verify_vanishing};
use prob_stirling::stirling::{s1y_degen_triangle, Kind};
use prob_stirling::{Error, RvSpec};

const GRID: [&str; 11] = [
    "bernoulli:p=1/2",
    "binomial:m=3,p=1/3",
    "poisson:alpha=1",
    "geometric:p=1/3",
    "exponential:alpha=2",
    "gamma:alpha=2,beta=3",
    "gamma:alpha=1/2,beta=2",
    "normal:mu=1,sigma2=2",
    "normal:mu=-1/2,sigma2=1/3",
    "uniform:a=0,b=1",
    "uniform:a=1/2,b=2",
];

fn rv(text: &str) -> RvSpec {
    text.parse().unwrap()
}

#[test]
fn every_family_matches_series() {
    for spec in GRID {
        for lambda in [int(0), ratio(1, 2), int(-2)] {
            let report = verify_closed_forms(&rv(spec), &lambda, 7).unwrap();
            assert!(report.passed(), "{spec} λ={lambda}: {report}");
        }
    }
}

#[test]
fn every_identity_vanishes() {
    for spec in GRID {
        let r = rv(spec);
        if VanishingIdentity::for_rv(&r, true).is_empty() {
            continue;
        }
        for lambda in [ratio(1, 2), int(3)] {
            let report = verify_vanishing(&r, Some(&lambda), 5).unwrap();
            assert!(report.passed(), "{spec} λ={lambda}: {report}");
        }
        assert!(verify_vanishing(&r, None, 5).unwrap().passed(), "{spec}");
    }
}

#[test]
fn normal_degenerate_first_kind_is_truncated() {
    let r = rv("normal:mu=1,sigma2=1");
    let lambda = ratio(1, 2);
    let cf = ClosedForms::new(&r, &lambda, 4).unwrap();
    let generic = s1y_degen_triangle(&r, &lambda, 4).unwrap();
    for n in 1..=4 {
        for k in 1..=n {
            match cf.value(Kind::DegenerateFirstKind, n, k).unwrap() {
                ClosedValue::Truncated { value, terms } => {
                    assert_eq!(terms, 40);
                    let exact = prob_stirling::rational::to_f64(&generic.get(n, k));
                    assert!((value - exact).abs() < 1e-9, "({n},{k}) {value} vs {exact}");
                }
                other => panic!("expected a partial sum, got {other}"),
            }
        }
    }
}

#[test]
fn missing_closed_forms() {
    let cf = ClosedForms::new(&rv("uniform:a=0,b=1"), &int(0), 3).unwrap();
    assert!(matches!(cf.value(Kind::FirstKind, 2, 1), Err(Error::NotAvailable(_))));
    assert!(matches!(cf.value(Kind::DegenerateFirstKind, 2, 1), Err(Error::NotAvailable(_))));
    let cf = ClosedForms::new(&rv("constant:c=1"), &int(0), 3).unwrap();
    assert!(matches!(cf.value(Kind::SecondKind, 2, 1), Err(Error::NotAvailable(_))));
}
