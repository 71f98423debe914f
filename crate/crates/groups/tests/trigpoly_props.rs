use proptest::prelude::*;
use rootform_core::scalar::{q, Field, Q};
use rootform_groups::TrigPoly;

fn poly(terms: &[(i64, u32, i32)]) -> TrigPoly<Q> {
    terms
        .iter()
        .fold(TrigPoly::zero(), |acc, &(k, sp, cp)| acc.add(&TrigPoly::monomial(Q::from_i64(k), sp, cp)))
}

fn arb_poly() -> impl Strategy<Value = TrigPoly<Q>> {
    prop::collection::vec((-5i64..=5, 0u32..4, -3i32..=3), 0..5).prop_map(|v| poly(&v))
}

#[test]
fn pythagoras_reduces_to_one() {
    let s = TrigPoly::<Q>::s();
    let c = TrigPoly::<Q>::c();
    assert_eq!(s.mul(&s).add(&c.mul(&c)), TrigPoly::one());
    // tan² + 1 = sec²
    let t = TrigPoly::<Q>::tan();
    let sec = TrigPoly::<Q>::sec();
    assert_eq!(t.mul(&t).add(&TrigPoly::one()), sec.mul(&sec));
    assert_eq!(t.deriv(), sec.mul(&sec));
    assert_eq!(sec.deriv(), sec.mul(&t));
}

#[test]
fn normal_form_and_units() {
    // 1 - 2s² = 2c² - 1
    let a = poly(&[(1, 0, 0), (-2, 2, 0)]);
    let b = poly(&[(2, 0, 2), (-1, 0, 0)]);
    assert_eq!(a, b);
    assert!(a.inv().is_none());
    let u = TrigPoly::monomial(q(3, 2), 0, -2);
    assert_eq!(u.mul(&u.inv().unwrap()), TrigPoly::one());
    assert!(TrigPoly::<Q>::s().inv().is_none());
    assert_eq!(TrigPoly::monomial(Q::one(), 0, -3).c_denominator(), 3);
    assert_eq!(TrigPoly::<Q>::s().c_denominator(), 0);
}

proptest! {
    #[test]
    fn evaluation_is_a_ring_map(a in arb_poly(), b in arb_poly(), t in -1.3f64..1.3) {
        let tol = 1e-8 * (1.0 + a.eval(t).abs()) * (1.0 + b.eval(t).abs());
        prop_assert!((a.mul(&b).eval(t) - a.eval(t) * b.eval(t)).abs() < tol);
        prop_assert!((a.add(&b).eval(t) - a.eval(t) - b.eval(t)).abs() < tol);
    }

    #[test]
    fn derivative_obeys_leibniz(a in arb_poly(), b in arb_poly()) {
        let lhs = a.mul(&b).deriv();
        let rhs = a.deriv().mul(&b).add(&a.mul(&b.deriv()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivative_matches_finite_difference(a in arb_poly(), t in -1.2f64..1.2) {
        let h = 1e-6;
        let fd = (a.eval(t + h) - a.eval(t - h)) / (2.0 * h);
        let d = a.deriv().eval(t);
        prop_assert!((fd - d).abs() < 1e-4 * (1.0 + d.abs()));
    }

    #[test]
    fn zero_iff_vanishes_at_samples(a in arb_poly()) {
        let d = a.sub(&a);
        prop_assert!(d.is_zero());
        let vanishes = [0.1, 0.4, 0.7, 1.0, -0.3, -0.8].iter().all(|&t| a.eval(t).abs() < 1e-9);
        prop_assert_eq!(vanishes, a.is_zero());
    }
}
