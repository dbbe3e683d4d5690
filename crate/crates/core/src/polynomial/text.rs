//! Plain-text polynomial format.
//!
//! A polynomial is an integer-coefficient sum of monomials in `x1..xn` and
//! `y1..yn`, e.g. `y1*y2*y3 - y1 - y2 - y3 - 2` or `3x1^2y2 + 1`. `*` between
//! factors is optional. Laurent polynomials use the same syntax with negative
//! exponents (`x1^-1*x2^2 + x1^-1`) and no y-variables. Canonical printing
//! lists terms in descending order under the active monomial order.

use std::fmt::{self, Display};
use std::str::FromStr;

use thiserror::Error;

use super::{LaurentMonomial, LaurentPolynomial, Monomial, Polynomial, VarKind, Variable, YHeavyOrder};
use crate::scalar::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected {found} at byte {pos}")]
    Unexpected { pos: usize, found: String },
    #[error("bad coefficient `{0}`")]
    BadCoefficient(String),
    #[error("variable {var} exceeds ambient size {n}")]
    IndexOutOfRange { var: String, n: usize },
    #[error("variable index must be at least 1 at byte {0}")]
    ZeroIndex(usize),
    #[error("negative exponent on {0} outside a Laurent polynomial")]
    NegativeExponent(String),
    #[error("y-variable {0} in a Laurent polynomial")]
    YInLaurent(String),
}

struct RawTerm {
    negative: bool,
    coef: Option<String>,
    factors: Vec<(VarKind, usize, i64)>,
}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.bytes[start..self.pos]).unwrap())
    }

    fn unexpected(&self) -> ParseError {
        ParseError::Unexpected {
            pos: self.pos,
            found: match self.peek() {
                Some(b) => format!("`{}`", b as char),
                None => "end of input".to_string(),
            },
        }
    }

    fn term(&mut self, negative: bool) -> Result<RawTerm, ParseError> {
        self.skip_ws();
        let mut coef = None;
        if let Some(d) = self.digits() {
            let mut c = d.to_string();
            if self.peek() == Some(b'/') {
                self.pos += 1;
                let den = self.digits().ok_or_else(|| self.unexpected())?;
                c.push('/');
                c.push_str(den);
            }
            coef = Some(c);
        }
        let mut factors = Vec::new();
        loop {
            let save = self.pos;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
            }
            let kind = match self.peek() {
                Some(b'x') => VarKind::X,
                Some(b'y') => VarKind::Y,
                _ => {
                    if self.pos > save && self.bytes[save..self.pos].contains(&b'*') {
                        return Err(self.unexpected());
                    }
                    self.pos = save;
                    break;
                }
            };
            self.pos += 1;
            let at = self.pos;
            let index: usize =
                self.digits()
                    .ok_or_else(|| self.unexpected())?
                    .parse()
                    .map_err(|_| ParseError::Unexpected {
                        pos: at,
                        found: "huge index".into(),
                    })?;
            if index == 0 {
                return Err(ParseError::ZeroIndex(at));
            }
            let mut exp = 1i64;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                let neg = if self.peek() == Some(b'-') {
                    self.pos += 1;
                    true
                } else {
                    false
                };
                let e: i64 =
                    self.digits()
                        .ok_or_else(|| self.unexpected())?
                        .parse()
                        .map_err(|_| ParseError::Unexpected {
                            pos: at,
                            found: "huge exponent".into(),
                        })?;
                exp = if neg { -e } else { e };
            }
            factors.push((kind, index, exp));
        }
        if coef.is_none() && factors.is_empty() {
            return Err(self.unexpected());
        }
        Ok(RawTerm {
            negative,
            coef,
            factors,
        })
    }

    fn terms(mut self) -> Result<Vec<RawTerm>, ParseError> {
        let mut out = Vec::new();
        self.skip_ws();
        if self.peek().is_none() {
            return Ok(out);
        }
        let mut negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            out.push(self.term(negative)?);
            self.skip_ws();
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                _ => return Err(self.unexpected()),
            }
            self.pos += 1;
        }
    }
}

fn coefficient<C: Ring + FromStr>(t: &RawTerm) -> Result<C, ParseError> {
    let c = match &t.coef {
        None => C::one(),
        Some(s) => s.parse::<C>().map_err(|_| ParseError::BadCoefficient(s.clone()))?,
    };
    Ok(if t.negative { -c } else { c })
}

fn max_index(terms: &[RawTerm]) -> usize {
    terms
        .iter()
        .flat_map(|t| t.factors.iter().map(|f| f.1))
        .max()
        .unwrap_or(0)
}

/// Parses a polynomial; `n` fixes the ambient size, otherwise the largest
/// variable index is used.
pub fn parse_polynomial<C: Ring + FromStr>(s: &str, n: Option<usize>) -> Result<Polynomial<C>, ParseError> {
    let terms = Lexer {
        bytes: s.as_bytes(),
        pos: 0,
    }
    .terms()?;
    let n = n.unwrap_or_else(|| max_index(&terms));
    let mut out = Polynomial::zero(n);
    for t in &terms {
        let c = coefficient::<C>(t)?;
        let mut m = Monomial::one(n);
        for &(kind, index, e) in &t.factors {
            let v = Variable { kind, index };
            if index > n {
                return Err(ParseError::IndexOutOfRange { var: v.to_string(), n });
            }
            if e < 0 {
                return Err(ParseError::NegativeExponent(v.to_string()));
            }
            let cur = m.exponent(v);
            m = m.with_exponent(v, cur + e as u32);
        }
        out.add_term(m, c);
    }
    Ok(out)
}

/// Parses a Laurent polynomial in the x-variables.
pub fn parse_laurent<C: Ring + FromStr>(s: &str, n: Option<usize>) -> Result<LaurentPolynomial<C>, ParseError> {
    let terms = Lexer {
        bytes: s.as_bytes(),
        pos: 0,
    }
    .terms()?;
    let n = n.unwrap_or_else(|| max_index(&terms));
    let mut out = LaurentPolynomial::zero(n);
    for t in &terms {
        let c = coefficient::<C>(t)?;
        let mut exps = vec![0i32; n];
        for &(kind, index, e) in &t.factors {
            let v = Variable { kind, index };
            if kind == VarKind::Y {
                return Err(ParseError::YInLaurent(v.to_string()));
            }
            if index > n {
                return Err(ParseError::IndexOutOfRange { var: v.to_string(), n });
            }
            exps[index - 1] += e as i32;
        }
        out.add_term(LaurentMonomial::new(exps), c);
    }
    Ok(out)
}

fn write_terms<'a, C, M>(
    f: &mut fmt::Formatter<'_>,
    terms: impl IntoIterator<Item = (&'a M, &'a C)>,
    is_one: impl Fn(&M) -> bool,
) -> fmt::Result
where
    C: Ring + Display + PartialOrd + 'a,
    M: Display + 'a,
{
    let mut first = true;
    for (m, c) in terms {
        let negative = *c < C::zero();
        let abs = if negative { -c.clone() } else { c.clone() };
        if first {
            if negative {
                write!(f, "-")?;
            }
        } else if negative {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        if is_one(m) {
            write!(f, "{abs}")?;
        } else if abs.is_one() {
            write!(f, "{m}")?;
        } else {
            write!(f, "{abs}*{m}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Displays a polynomial with terms in descending order under a given order.
pub struct Ordered<'a, C> {
    poly: &'a Polynomial<C>,
    order: YHeavyOrder,
}

impl<C: Ring> Polynomial<C> {
    pub fn display_with(&self, order: YHeavyOrder) -> Ordered<'_, C> {
        Ordered { poly: self, order }
    }
}

impl<C: Ring + Display + PartialOrd> Display for Ordered<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.poly.sorted_terms(self.order), Monomial::is_one)
    }
}

impl<C: Ring + Display + PartialOrd> Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with(YHeavyOrder::default()).fmt(f)
    }
}

impl<C: Ring + Display + PartialOrd> Display for LaurentPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.display_order(), LaurentMonomial::is_one)
    }
}

/// Renders a Laurent polynomial as `(numerator)/denominator`.
pub fn fraction_string<C: Ring + Display + PartialOrd>(p: &LaurentPolynomial<C>) -> String {
    let (num, den) = p.as_fraction();
    if den.is_one() {
        return num.to_string();
    }
    let num_s = num.to_string();
    let num_s = if num.num_terms() > 1 {
        format!("({num_s})")
    } else {
        num_s
    };
    let den_s = den.to_string();
    let den_s = if den.exponents().iter().filter(|&&e| e != 0).count() > 1 {
        format!("({den_s})")
    } else {
        den_s
    };
    format!("{num_s}/{den_s}")
}
