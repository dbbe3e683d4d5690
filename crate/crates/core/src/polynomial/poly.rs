use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Monomial, PolyError, Variable, YHeavyOrder};
use crate::scalar::Ring;

/// Sparse polynomial in `x_1..x_n, y_1..y_n` with coefficients in `C`.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<C> {
    n: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Ring> Polynomial<C> {
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, C::one())
    }

    pub fn constant(n: usize, c: C) -> Self {
        Self::term(Monomial::one(n), c)
    }

    pub fn var(n: usize, v: Variable) -> Self {
        Self::term(Monomial::var(n, v), C::one())
    }

    pub fn x(n: usize, i: usize) -> Self {
        Self::var(n, Variable::x(i))
    }

    pub fn y(n: usize, i: usize) -> Self {
        Self::var(n, Variable::y(i))
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let n = m.ambient();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { n, terms }
    }

    /// Builds a polynomial from (possibly repeated) terms, merging duplicates.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Terms sorted in descending order under `ord`.
    pub fn sorted_terms(&self, ord: YHeavyOrder) -> Vec<(&Monomial, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| ord.compare(b.0, a.0));
        v
    }

    pub fn leading_term(&self, ord: YHeavyOrder) -> Result<(&Monomial, &C), PolyError> {
        self.terms
            .iter()
            .max_by(|a, b| ord.compare(a.0, b.0))
            .ok_or(PolyError::ZeroPolynomial)
    }

    pub fn leading_monomial(&self, ord: YHeavyOrder) -> Result<&Monomial, PolyError> {
        self.leading_term(ord).map(|(m, _)| m)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: C) {
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

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
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

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        let mut out = Self::zero(self.n);
        if c.is_zero() {
            return out;
        }
        for (mm, cc) in &self.terms {
            out.terms.insert(mm.mul(m), cc.clone() * c.clone());
        }
        // multiplication by a nonzero c can still produce zero divisors in
        // rings like Z/nZ; drop anything that vanished
        out.terms.retain(|_, v| !v.is_zero());
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        self.mul_term(&Monomial::one(self.n), c)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.n);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, v: Variable) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let lowered = m.clone().with_exponent(v, e - 1);
            out.add_term(lowered, c.clone() * C::from_int(e as i64));
        }
        out
    }

    /// Evaluates at `x_i = xs[i-1]`, `y_i = ys[i-1]` in any ring receiving `C`.
    pub fn eval<F>(&self, xs: &[F], ys: &[F]) -> F
    where
        F: Ring,
        C: Into<F>,
    {
        assert_eq!(xs.len(), self.n, "x point has wrong length");
        assert_eq!(ys.len(), self.n, "y point has wrong length");
        let mut total = F::zero();
        for (m, c) in &self.terms {
            let mut t: F = c.clone().into();
            for (v, e) in m.support() {
                let base = match v.kind {
                    super::VarKind::X => &xs[v.index - 1],
                    super::VarKind::Y => &ys[v.index - 1],
                };
                for _ in 0..e {
                    t = t * base.clone();
                }
            }
            total = total + t;
        }
        total
    }

    pub fn map_coefficients<D: Ring>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::from_terms(self.n, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn is_homogeneous_in_y(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::y_degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }
}

impl<'a, C: Ring> Add<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;

    /// Panics on ambient mismatch; use [`Polynomial::try_add`] to handle it.
    fn add(self, rhs: &'a Polynomial<C>) -> Polynomial<C> {
        self.try_add(rhs).expect("polynomial addition")
    }
}

impl<'a, C: Ring> Sub<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;

    fn sub(self, rhs: &'a Polynomial<C>) -> Polynomial<C> {
        self.try_sub(rhs).expect("polynomial subtraction")
    }
}

impl<'a, C: Ring> Mul<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;

    fn mul(self, rhs: &'a Polynomial<C>) -> Polynomial<C> {
        self.try_mul(rhs).expect("polynomial multiplication")
    }
}

impl<C: Ring> Add for Polynomial<C> {
    type Output = Polynomial<C>;

    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<C: Ring> Sub for Polynomial<C> {
    type Output = Polynomial<C>;

    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<C: Ring> Mul for Polynomial<C> {
    type Output = Polynomial<C>;

    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<C: Ring> Neg for Polynomial<C> {
    type Output = Polynomial<C>;

    fn neg(self) -> Self {
        Polynomial {
            n: self.n,
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<C: Ring> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn neg(self) -> Polynomial<C> {
        -(self.clone())
    }
}
