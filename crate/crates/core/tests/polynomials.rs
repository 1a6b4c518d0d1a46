use num_bigint::BigInt;
use num_rational::Ratio;
use proptest::prelude::*;
use stringy_core::poly::Monomial;
use stringy_core::{BivariateLaurentPolynomial as Laurent, UnivariatePolynomial as Uni};

fn uni_strategy() -> impl Strategy<Value = Uni> {
    prop::collection::vec(-50i64..50, 0..7).prop_map(|cs| Uni::from_coeffs(&cs.into_iter().map(BigInt::from).collect::<Vec<_>>()))
}

fn laurent_strategy() -> impl Strategy<Value = Laurent> {
    prop::collection::vec((-3i64..4, -3i64..4, -20i64..20), 0..8).prop_map(|ts| {
        let mut p = Laurent::zero();
        for (a, b, c) in ts {
            p.add_term(a, b, BigInt::from(c));
        }
        p
    })
}

/// Evaluates a Laurent polynomial at a rational point.
fn eval(p: &Laurent, u: Ratio<i64>, v: Ratio<i64>) -> Ratio<BigInt> {
    let big = |r: Ratio<i64>| Ratio::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()));
    let (u, v) = (big(u), big(v));
    let mut acc = Ratio::from_integer(BigInt::from(0));
    for ((a, b), c) in p.terms() {
        let term = Ratio::from_integer(c.clone()) * num_traits::pow::Pow::pow(&u, a as i32) * num_traits::pow::Pow::pow(&v, b as i32);
        acc += term;
    }
    acc
}

proptest! {
    #[test]
    fn univariate_ring_laws(a in uni_strategy(), b in uni_strategy(), c in uni_strategy()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert_eq!((&a * &b).value_at_one(), a.value_at_one() * b.value_at_one());
    }

    #[test]
    fn reversal_is_an_involution(a in uni_strategy(), extra in 0usize..4) {
        let n = a.degree().unwrap_or(0) + extra;
        let r = a.reverse(n).unwrap();
        prop_assert_eq!(r.reverse(n).unwrap(), a.clone());
        let sym = &a + &r;
        prop_assert!(sym.is_palindromic(n));
        prop_assert!(a.reverse(n.saturating_sub(extra + 1)).is_none() || a.degree().unwrap_or(0) == 0);
    }

    #[test]
    fn truncations_split_a_polynomial(a in uni_strategy(), k in 0usize..8) {
        let low = a.truncate_below(Ratio::from_integer(k as i64));
        let high = &a - &a.truncate_above(k.saturating_sub(1));
        if k > 0 {
            prop_assert_eq!(&low + &high, a.clone());
        }
        prop_assert!(low.degree().map_or(true, |d| d < k));
    }

    #[test]
    fn substitution_is_a_ring_map(a in uni_strategy(), b in uni_strategy()) {
        let m = Monomial::new(BigInt::from(-1), 1, 1);
        prop_assert_eq!((&a * &b).substitute(&m), &a.substitute(&m) * &b.substitute(&m));
    }

    #[test]
    fn laurent_ring_laws(a in laurent_strategy(), b in laurent_strategy(), c in laurent_strategy()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a - &a, Laurent::zero());
        prop_assert_eq!(a.shift(2, -1).shift(-2, 1), a.clone());
    }

    #[test]
    fn laurent_evaluation_is_multiplicative(a in laurent_strategy(), b in laurent_strategy()) {
        let (u, v) = (Ratio::new(2, 3), Ratio::new(-5, 7));
        prop_assert_eq!(eval(&(&a * &b), u, v), eval(&a, u, v) * eval(&b, u, v));
    }

    #[test]
    fn inverting_u_twice_is_the_identity(a in laurent_strategy()) {
        let inv = Monomial::new(BigInt::from(1), -1, 0);
        let v = Monomial::v();
        prop_assert_eq!(a.substitute(&inv, &v).substitute(&inv, &v), a.clone());
        let swapped = a.substitute(&Monomial::v(), &Monomial::u());
        prop_assert_eq!(swapped.len(), a.len());
    }

    #[test]
    fn powers_add_exponents(a in laurent_strategy(), i in 0usize..3, j in 0usize..3) {
        prop_assert_eq!(&a.pow(i) * &a.pow(j), a.pow(i + j));
    }
}

#[test]
fn zero_coefficients_are_dropped() {
    let mut p = Laurent::zero();
    p.add_term(1, 2, BigInt::from(3));
    p.add_term(1, 2, BigInt::from(-3));
    assert!(p.is_zero());
    let mut q = Uni::zero();
    q.add_term(4, BigInt::from(2));
    q.add_term(4, BigInt::from(-2));
    assert_eq!(q.degree(), None);
}

#[test]
fn coefficients_grow_past_machine_integers() {
    let two = Uni::from_coeffs(&[BigInt::from(1), BigInt::from(1)]);
    let p = two.pow(100);
    assert_eq!(p.value_at_one(), BigInt::from(2).pow(100));
    assert_eq!(p.coeff(50).to_string(), "100891344545564193334812497256");
}
