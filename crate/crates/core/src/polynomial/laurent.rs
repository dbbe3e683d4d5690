use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::PolyError;
use crate::scalar::Ring;

/// Monomial `x^a` with integer exponents in `Z[x_1^{±1}, .., x_n^{±1}]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LaurentMonomial {
    exps: Box<[i32]>,
}

impl LaurentMonomial {
    pub fn one(n: usize) -> Self {
        LaurentMonomial {
            exps: vec![0; n].into_boxed_slice(),
        }
    }

    pub fn new(exps: Vec<i32>) -> Self {
        LaurentMonomial {
            exps: exps.into_boxed_slice(),
        }
    }

    /// `x_i^e`, 1-based.
    pub fn power(n: usize, i: usize, e: i32) -> Self {
        let mut m = Self::one(n);
        m.exps[i - 1] = e;
        m
    }

    pub fn ambient(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[i32] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> i32 {
        self.exps[i - 1]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_polynomial(&self) -> bool {
        self.exps.iter().all(|&e| e >= 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.exps.len(), other.exps.len(), "ambient size mismatch");
        LaurentMonomial::new(self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn inverse(&self) -> Self {
        LaurentMonomial::new(self.exps.iter().map(|e| -e).collect())
    }

    fn degree(&self) -> i64 {
        self.exps.iter().map(|&e| e as i64).sum()
    }
}

impl fmt::Display for LaurentMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// Sparse Laurent polynomial in `x_1..x_n`; the target ring of the
/// presentation map.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPolynomial<C> {
    n: usize,
    terms: BTreeMap<LaurentMonomial, C>,
}

impl<C: Ring> LaurentPolynomial<C> {
    pub fn zero(n: usize) -> Self {
        LaurentPolynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::term(LaurentMonomial::one(n), C::one())
    }

    pub fn term(m: LaurentMonomial, c: C) -> Self {
        let mut p = Self::zero(m.ambient());
        p.add_term(m, c);
        p
    }

    /// `x_i^e`.
    pub fn x_pow(n: usize, i: usize, e: i32) -> Self {
        Self::term(LaurentMonomial::power(n, i, e), C::one())
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (LaurentMonomial, C)>) -> Self {
        let mut p = Self::zero(n);
        for (m, c) in terms {
            assert_eq!(m.ambient(), n, "monomial ambient size mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LaurentMonomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &LaurentMonomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// The single monomial of a one-term polynomial with coefficient one.
    pub fn as_monomial(&self) -> Option<&LaurentMonomial> {
        match self.terms.iter().next() {
            Some((m, c)) if self.terms.len() == 1 && c.is_one() => Some(m),
            _ => None,
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(LaurentMonomial::is_polynomial)
    }

    pub(crate) fn add_term(&mut self, m: LaurentMonomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_ambient(&self, other: &Self) -> Result<(), PolyError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(PolyError::AmbientMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ambient(other)?;
        let mut out = Self::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn mul_monomial(&self, m: &LaurentMonomial) -> Self {
        Self::from_terms(self.n, self.terms.iter().map(|(mm, c)| (mm.mul(m), c.clone())))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.n);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Writes the polynomial as `numerator / denominator` with the smallest
    /// monomial denominator that makes the numerator a polynomial.
    pub fn as_fraction(&self) -> (Self, LaurentMonomial) {
        let mut low = vec![0i32; self.n];
        for m in self.terms.keys() {
            for (l, &e) in low.iter_mut().zip(m.exponents()) {
                *l = (*l).min(e);
            }
        }
        let denominator = LaurentMonomial::new(low.iter().map(|&l| -l).collect());
        (self.mul_monomial(&denominator), denominator)
    }

    /// Terms in a fixed display order: higher total degree first, then
    /// lexicographically larger exponent vectors.
    pub fn display_order(&self) -> Vec<(&LaurentMonomial, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| b.0.cmp(a.0)));
        v
    }
}

impl<'a, C: Ring> Add<&'a LaurentPolynomial<C>> for &'a LaurentPolynomial<C> {
    type Output = LaurentPolynomial<C>;

    fn add(self, rhs: &'a LaurentPolynomial<C>) -> LaurentPolynomial<C> {
        self.try_add(rhs).expect("Laurent addition")
    }
}

impl<'a, C: Ring> Sub<&'a LaurentPolynomial<C>> for &'a LaurentPolynomial<C> {
    type Output = LaurentPolynomial<C>;

    fn sub(self, rhs: &'a LaurentPolynomial<C>) -> LaurentPolynomial<C> {
        self.try_add(&-rhs).expect("Laurent subtraction")
    }
}

impl<'a, C: Ring> Mul<&'a LaurentPolynomial<C>> for &'a LaurentPolynomial<C> {
    type Output = LaurentPolynomial<C>;

    fn mul(self, rhs: &'a LaurentPolynomial<C>) -> LaurentPolynomial<C> {
        self.try_mul(rhs).expect("Laurent multiplication")
    }
}

impl<C: Ring> Neg for &LaurentPolynomial<C> {
    type Output = LaurentPolynomial<C>;

    fn neg(self) -> LaurentPolynomial<C> {
        LaurentPolynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type L = LaurentPolynomial<BigInt>;

    #[test]
    fn inverse_cancels() {
        let x = L::x_pow(2, 1, 1);
        let xinv = L::x_pow(2, 1, -1);
        assert_eq!(&x * &xinv, L::one(2));
    }

    #[test]
    fn fraction_form() {
        // (x2^2 + 1) / x1
        let f = &L::x_pow(2, 1, -1) + &(&L::x_pow(2, 1, -1) * &L::x_pow(2, 2, 2));
        let (num, den) = f.as_fraction();
        assert_eq!(den, LaurentMonomial::new(vec![1, 0]));
        assert_eq!(num, &L::one(2) + &L::x_pow(2, 2, 2));
        assert!(num.is_polynomial());
        assert!(!f.is_polynomial());
    }

    #[test]
    fn subtraction_to_zero() {
        let f = &L::x_pow(3, 2, -3) + &L::x_pow(3, 1, 2);
        assert!((&f - &f).is_zero());
    }
}
