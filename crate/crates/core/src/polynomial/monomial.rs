use std::fmt;

use serde::{Deserialize, Serialize};

/// Which family a variable belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VarKind {
    X,
    Y,
}

/// A variable `x_i` or `y_i`, with a 1-based index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Variable {
    pub kind: VarKind,
    pub index: usize,
}

impl Variable {
    pub fn x(index: usize) -> Self {
        Variable {
            kind: VarKind::X,
            index,
        }
    }

    pub fn y(index: usize) -> Self {
        Variable {
            kind: VarKind::Y,
            index,
        }
    }

    /// Position in the dense exponent layout `x_1..x_n, y_1..y_n`.
    pub(crate) fn slot(&self, n: usize) -> usize {
        assert!(
            self.index >= 1 && self.index <= n,
            "variable index {} outside 1..={}",
            self.index,
            n
        );
        match self.kind {
            VarKind::X => self.index - 1,
            VarKind::Y => n + self.index - 1,
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            VarKind::X => write!(f, "x{}", self.index),
            VarKind::Y => write!(f, "y{}", self.index),
        }
    }
}

/// A monomial `x^a y^b` in `Z[x_1..x_n, y_1..y_n]`.
///
/// Exponents are stored densely as `x_1..x_n` followed by `y_1..y_n`. The
/// derived `Ord` is only a storage order; use [`super::YHeavyOrder`] to
/// compare monomials algebraically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial {
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial {
            exps: vec![0; 2 * n].into_boxed_slice(),
        }
    }

    pub fn from_exponents(x: &[u32], y: &[u32]) -> Self {
        assert_eq!(x.len(), y.len(), "x and y exponent vectors differ in length");
        let mut exps = Vec::with_capacity(2 * x.len());
        exps.extend_from_slice(x);
        exps.extend_from_slice(y);
        Monomial {
            exps: exps.into_boxed_slice(),
        }
    }

    pub(crate) fn from_raw(exps: Vec<u32>) -> Self {
        debug_assert!(exps.len().is_multiple_of(2));
        Monomial {
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn var(n: usize, v: Variable) -> Self {
        let mut m = Monomial::one(n);
        m.exps[v.slot(n)] = 1;
        m
    }

    /// Squarefree product of the given variables.
    pub fn product_of(n: usize, vars: impl IntoIterator<Item = Variable>) -> Self {
        let mut m = Monomial::one(n);
        for v in vars {
            m.exps[v.slot(n)] += 1;
        }
        m
    }

    /// Number of vertices `n`; the ring has `2n` variables.
    pub fn ambient(&self) -> usize {
        self.exps.len() / 2
    }

    pub fn raw(&self) -> &[u32] {
        &self.exps
    }

    pub fn x_exponents(&self) -> &[u32] {
        &self.exps[..self.ambient()]
    }

    pub fn y_exponents(&self) -> &[u32] {
        &self.exps[self.ambient()..]
    }

    pub fn exponent(&self, v: Variable) -> u32 {
        self.exps[v.slot(self.ambient())]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn y_degree(&self) -> u32 {
        self.y_exponents().iter().sum()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Variables with nonzero exponent, x-variables first.
    pub fn support(&self) -> impl Iterator<Item = (Variable, u32)> + '_ {
        let n = self.ambient();
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(move |(s, &e)| {
                let v = if s < n {
                    Variable::x(s + 1)
                } else {
                    Variable::y(s - n + 1)
                };
                (v, e)
            })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::from_raw(
            self.exps
                .iter()
                .zip(other.exps.iter())
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.exps.len(), other.exps.len(), "ambient size mismatch");
        Monomial::from_raw(self.exps.iter().zip(other.exps.iter()).map(|(&a, &b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial::from_raw(
            self.exps.iter().zip(other.exps.iter()).map(|(&a, &b)| a - b).collect(),
        ))
    }

    pub(crate) fn with_exponent(mut self, v: Variable, e: u32) -> Monomial {
        let s = v.slot(self.ambient());
        self.exps[s] = e;
        self
    }
}

impl fmt::Display for Monomial {
    /// y-variables first, matching their precedence in the y-heavy orders.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut vars: Vec<(Variable, u32)> = self.support().collect();
        vars.sort_by_key(|(v, _)| (v.kind == VarKind::X, v.index));
        for (k, (v, e)) in vars.into_iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}
