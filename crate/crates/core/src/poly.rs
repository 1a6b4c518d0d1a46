//! Sparse exact polynomials: univariate in `t` and bivariate Laurent in `u, v`.
//!
//! Both types are generic over the coefficient ring; the rest of the crate uses
//! arbitrary-precision integers through the aliases at the crate root.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_rational::Ratio;
use num_traits::{One, Zero};

/// Coefficient ring for the polynomial types.
pub trait Ring:
    Clone + PartialEq + fmt::Debug + fmt::Display + Zero + One + Neg<Output = Self> + Send + Sync
{
}

impl<T> Ring for T where
    T: Clone + PartialEq + fmt::Debug + fmt::Display + Zero + One + Neg<Output = T> + Send + Sync
{
}

/// Polynomial in one variable with nonnegative exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly<R> {
    coeffs: BTreeMap<usize, R>,
}

impl<R: Ring> UniPoly<R> {
    pub fn zero() -> Self {
        UniPoly { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(R::one(), 0)
    }

    pub fn monomial(c: R, deg: usize) -> Self {
        let mut p = Self::zero();
        p.add_term(deg, c);
        p
    }

    /// `1 - t`
    pub fn one_minus_t() -> Self {
        Self::from_coeffs(&[R::one(), -R::one()])
    }

    /// `t - 1`
    pub fn t_minus_one() -> Self {
        Self::from_coeffs(&[-R::one(), R::one()])
    }

    pub fn from_coeffs(cs: &[R]) -> Self {
        let mut p = Self::zero();
        for (i, c) in cs.iter().enumerate() {
            p.add_term(i, c.clone());
        }
        p
    }

    pub fn add_term(&mut self, deg: usize, c: R) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(deg).or_insert_with(R::zero);
        *e = e.clone() + c;
        if e.is_zero() {
            self.coeffs.remove(&deg);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest exponent with a nonzero coefficient; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, deg: usize) -> R {
        self.coeffs.get(&deg).cloned().unwrap_or_else(R::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &R)> {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    /// Dense coefficient vector of length `len` (higher terms must be absent).
    pub fn coeff_vec(&self, len: usize) -> Vec<R> {
        (0..len).map(|i| self.coeff(i)).collect()
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut p = Self::zero();
        for (d, x) in self.terms() {
            p.add_term(d, x.clone() * c.clone());
        }
        p
    }

    pub fn shift(&self, k: usize) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(|(d, c)| (d + k, c.clone())).collect() }
    }

    /// Keeps exactly the terms of degree strictly below `bound`.
    pub fn truncate_below(&self, bound: Ratio<i64>) -> Self {
        UniPoly {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(d, _)| Ratio::from_integer(**d as i64) < bound)
                .map(|(d, c)| (*d, c.clone()))
                .collect(),
        }
    }

    /// Keeps terms of degree at most `max_deg`.
    pub fn truncate_above(&self, max_deg: usize) -> Self {
        UniPoly { coeffs: self.coeffs.range(..=max_deg).map(|(d, c)| (*d, c.clone())).collect() }
    }

    /// `t^n p(1/t)`; `None` if some exponent exceeds `n`.
    pub fn reverse(&self, n: usize) -> Option<Self> {
        if self.degree().is_some_and(|d| d > n) {
            return None;
        }
        Some(UniPoly { coeffs: self.coeffs.iter().map(|(d, c)| (n - d, c.clone())).collect() })
    }

    /// Structural test of `p(t) = t^n p(1/t)`.
    pub fn is_palindromic(&self, n: usize) -> bool {
        self.reverse(n).as_ref() == Some(self)
    }

    /// Sum of all coefficients, i.e. the value at `t = 1`.
    pub fn value_at_one(&self) -> R {
        self.coeffs.values().fold(R::zero(), |a, c| a + c.clone())
    }

    /// Substitutes `t -> c u^a v^b`, producing a Laurent polynomial.
    pub fn substitute(&self, image: &Monomial<R>) -> LaurentPoly<R> {
        let mut out = LaurentPoly::zero();
        for (d, c) in self.terms() {
            let k = d as i64;
            let mut coef = c.clone();
            for _ in 0..d {
                coef = coef * image.coeff.clone();
            }
            out.add_term(image.u * k, image.v * k, coef);
        }
        out
    }
}

impl<R: Ring> fmt::Display for UniPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(d, c)| match d {
                0 => format!("{c}"),
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{d}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<R: Ring> fmt::Debug for UniPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl<R: Ring> Add for &UniPoly<R> {
    type Output = UniPoly<R>;
    fn add(self, rhs: &UniPoly<R>) -> UniPoly<R> {
        let mut p = self.clone();
        p += rhs;
        p
    }
}

impl<R: Ring> Add for UniPoly<R> {
    type Output = UniPoly<R>;
    fn add(self, rhs: UniPoly<R>) -> UniPoly<R> {
        &self + &rhs
    }
}

impl<R: Ring> AddAssign<&UniPoly<R>> for UniPoly<R> {
    fn add_assign(&mut self, rhs: &UniPoly<R>) {
        for (d, c) in rhs.terms() {
            self.add_term(d, c.clone());
        }
    }
}

impl<R: Ring> SubAssign<&UniPoly<R>> for UniPoly<R> {
    fn sub_assign(&mut self, rhs: &UniPoly<R>) {
        for (d, c) in rhs.terms() {
            self.add_term(d, -c.clone());
        }
    }
}

impl<R: Ring> Sub for &UniPoly<R> {
    type Output = UniPoly<R>;
    fn sub(self, rhs: &UniPoly<R>) -> UniPoly<R> {
        let mut p = self.clone();
        p -= rhs;
        p
    }
}

impl<R: Ring> Sub for UniPoly<R> {
    type Output = UniPoly<R>;
    fn sub(self, rhs: UniPoly<R>) -> UniPoly<R> {
        &self - &rhs
    }
}

impl<R: Ring> Neg for UniPoly<R> {
    type Output = UniPoly<R>;
    fn neg(self) -> UniPoly<R> {
        UniPoly { coeffs: self.coeffs.into_iter().map(|(d, c)| (d, -c)).collect() }
    }
}

impl<R: Ring> Mul for &UniPoly<R> {
    type Output = UniPoly<R>;
    fn mul(self, rhs: &UniPoly<R>) -> UniPoly<R> {
        let mut p = UniPoly::zero();
        for (d1, c1) in self.terms() {
            for (d2, c2) in rhs.terms() {
                p.add_term(d1 + d2, c1.clone() * c2.clone());
            }
        }
        p
    }
}

impl<R: Ring> Mul for UniPoly<R> {
    type Output = UniPoly<R>;
    fn mul(self, rhs: UniPoly<R>) -> UniPoly<R> {
        &self * &rhs
    }
}

/// A single term `coeff * u^u * v^v`, used as the image of a variable.
#[derive(Clone, Debug, PartialEq)]
pub struct Monomial<R> {
    pub coeff: R,
    pub u: i64,
    pub v: i64,
}

impl<R: Ring> Monomial<R> {
    pub fn new(coeff: R, u: i64, v: i64) -> Self {
        Monomial { coeff, u, v }
    }

    pub fn u() -> Self {
        Monomial::new(R::one(), 1, 0)
    }

    pub fn v() -> Self {
        Monomial::new(R::one(), 0, 1)
    }

    /// `uv`
    pub fn uv() -> Self {
        Monomial::new(R::one(), 1, 1)
    }

    /// `u^{-1} v`
    pub fn v_over_u() -> Self {
        Monomial::new(R::one(), -1, 1)
    }

    fn pow(&self, k: i64) -> LaurentPoly<R> {
        // integer powers of a monomial with unit coefficient (+-1) or k >= 0
        let mut c = R::one();
        if k >= 0 {
            for _ in 0..k {
                c = c * self.coeff.clone();
            }
        } else {
            assert!(
                self.coeff == R::one() || self.coeff == -R::one(),
                "negative power of a monomial with non-unit coefficient"
            );
            for _ in 0..(-k) {
                c = c * self.coeff.clone();
            }
        }
        LaurentPoly::monomial(c, self.u * k, self.v * k)
    }
}

/// Laurent polynomial in `u, v` with integer (possibly negative) exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly<R> {
    terms: BTreeMap<(i64, i64), R>,
}

impl<R: Ring> LaurentPoly<R> {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(R::one(), 0, 0)
    }

    pub fn monomial(c: R, a: i64, b: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(a, b, c);
        p
    }

    pub fn add_term(&mut self, a: i64, b: i64, c: R) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((a, b)).or_insert_with(R::zero);
        *e = e.clone() + c;
        if e.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: i64, b: i64) -> R {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(R::zero)
    }

    /// Terms in canonical (lexicographic exponent) order.
    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &R)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True if no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|&(a, b)| a >= 0 && b >= 0)
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut p = Self::zero();
        for (e, x) in self.terms() {
            p.add_term(e.0, e.1, x.clone() * c.clone());
        }
        p
    }

    /// Multiplies by `u^a v^b`.
    pub fn shift(&self, a: i64, b: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| ((e.0 + a, e.1 + b), c.clone())).collect() }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Monomial substitution `u -> image_u`, `v -> image_v`.
    pub fn substitute(&self, image_u: &Monomial<R>, image_v: &Monomial<R>) -> Self {
        let mut out = Self::zero();
        for ((a, b), c) in self.terms() {
            let t = &(&image_u.pow(a) * &image_v.pow(b)) * &LaurentPoly::monomial(c.clone(), 0, 0);
            out += &t;
        }
        out
    }

    /// Largest total degree `a + b` present.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|(a, b)| a + b).max()
    }
}

impl<R: Ring> fmt::Display for LaurentPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let var = |name: &str, e: i64| match e {
            0 => String::new(),
            1 => format!("*{name}"),
            _ => format!("*{name}^{e}"),
        };
        let parts: Vec<String> =
            self.terms().map(|((a, b), c)| format!("{c}{}{}", var("u", a), var("v", b))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<R: Ring> fmt::Debug for LaurentPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl<R: Ring> AddAssign<&LaurentPoly<R>> for LaurentPoly<R> {
    fn add_assign(&mut self, rhs: &LaurentPoly<R>) {
        for ((a, b), c) in rhs.terms() {
            self.add_term(a, b, c.clone());
        }
    }
}

impl<R: Ring> SubAssign<&LaurentPoly<R>> for LaurentPoly<R> {
    fn sub_assign(&mut self, rhs: &LaurentPoly<R>) {
        for ((a, b), c) in rhs.terms() {
            self.add_term(a, b, -c.clone());
        }
    }
}

impl<R: Ring> Add for &LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn add(self, rhs: &LaurentPoly<R>) -> LaurentPoly<R> {
        let mut p = self.clone();
        p += rhs;
        p
    }
}

impl<R: Ring> Add for LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn add(self, rhs: LaurentPoly<R>) -> LaurentPoly<R> {
        &self + &rhs
    }
}

impl<R: Ring> Sub for &LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn sub(self, rhs: &LaurentPoly<R>) -> LaurentPoly<R> {
        let mut p = self.clone();
        p -= rhs;
        p
    }
}

impl<R: Ring> Sub for LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn sub(self, rhs: LaurentPoly<R>) -> LaurentPoly<R> {
        &self - &rhs
    }
}

impl<R: Ring> Neg for LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn neg(self) -> LaurentPoly<R> {
        LaurentPoly { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl<R: Ring> Mul for &LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn mul(self, rhs: &LaurentPoly<R>) -> LaurentPoly<R> {
        let mut p = LaurentPoly::zero();
        for ((a1, b1), c1) in self.terms() {
            for ((a2, b2), c2) in rhs.terms() {
                p.add_term(a1 + a2, b1 + b2, c1.clone() * c2.clone());
            }
        }
        p
    }
}

impl<R: Ring> Mul for LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn mul(self, rhs: LaurentPoly<R>) -> LaurentPoly<R> {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type U = UniPoly<BigInt>;
    type L = LaurentPoly<BigInt>;

    fn u(cs: &[i64]) -> U {
        U::from_coeffs(&cs.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>())
    }

    fn l(terms: &[(i64, i64, i64)]) -> L {
        let mut p = L::zero();
        for &(a, b, c) in terms {
            p.add_term(a, b, BigInt::from(c));
        }
        p
    }

    #[test]
    fn substitute_examples() {
        let uv = l(&[(1, 1, 1)]);
        let inv_u = Monomial::new(BigInt::from(1), -1, 0);
        assert_eq!(uv.substitute(&inv_u, &Monomial::v()), l(&[(-1, 1, 1)]));
        let p = l(&[(0, 0, 1), (1, 1, 1)]);
        assert_eq!(p.substitute(&inv_u, &Monomial::v()), l(&[(0, 0, 1), (-1, 1, 1)]));
        // tilde S = t + t^2 with t = uv, then u -> 1/u
        let ts = u(&[0, 1, 1]).substitute(&Monomial::uv());
        assert_eq!(ts.substitute(&inv_u, &Monomial::v()), l(&[(-1, 1, 1), (-2, 2, 1)]));
    }

    #[test]
    fn truncation_examples() {
        assert_eq!(u(&[1, 0, -1]).truncate_below(Ratio::from_integer(1)), u(&[1]));
        assert_eq!(u(&[1, 1, 1]).truncate_below(Ratio::new(3, 2)), u(&[1, 1]));
        assert_eq!(U::zero().truncate_below(Ratio::new(7, 3)), U::zero());
    }

    #[test]
    fn palindromes() {
        assert!(u(&[0, 1, 1, 0]).is_palindromic(3));
        assert!(!u(&[0, 1, 2, 0]).is_palindromic(3));
        assert!(u(&[1, 2, 1]).is_palindromic(2));
        assert!(!u(&[1, 2, 1]).is_palindromic(1));
    }

    fn arb_laurent() -> impl Strategy<Value = L> {
        prop::collection::vec((-3i64..4, -3i64..4, -20i64..21), 0..6).prop_map(|ts| l(&ts))
    }

    fn arb_uni() -> impl Strategy<Value = U> {
        prop::collection::vec(-20i64..21, 0..7).prop_map(|cs| u(&cs))
    }

    fn arb_monomial() -> impl Strategy<Value = Monomial<BigInt>> {
        (prop_oneof![Just(1i64), Just(-1i64)], -2i64..3, -2i64..3).prop_map(|(c, a, b)| Monomial::new(BigInt::from(c), a, b))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_laurent(), b in arb_laurent(), c in arb_laurent()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn identity_substitution(a in arb_laurent()) {
            prop_assert_eq!(a.substitute(&Monomial::u(), &Monomial::v()), a);
        }

        #[test]
        fn substitution_composes(a in arb_laurent(), m1 in arb_monomial(), m2 in arb_monomial(),
                                 n1 in arb_monomial(), n2 in arb_monomial()) {
            // first (m1, m2), then (n1, n2)
            let step = a.substitute(&m1, &m2).substitute(&n1, &n2);
            // composite images: m1(n1, n2) and m2(n1, n2)
            let img = |m: &Monomial<BigInt>| {
                let p = L::monomial(m.coeff.clone(), m.u, m.v).substitute(&n1, &n2);
                let ((a, b), c) = p.terms().next().map(|(e, c)| (e, c.clone())).unwrap();
                Monomial::new(c, a, b)
            };
            prop_assert_eq!(step, a.substitute(&img(&m1), &img(&m2)));
        }

        #[test]
        fn truncation_splits(p in arb_uni(), num in 0i64..20, den in 1i64..4) {
            let r = Ratio::new(num, den);
            let low = p.truncate_below(r);
            prop_assert_eq!(&low + &(&p - &low), p);
        }

        #[test]
        fn uni_ring_axioms(a in arb_uni(), b in arb_uni(), c in arb_uni()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }
    }
}
