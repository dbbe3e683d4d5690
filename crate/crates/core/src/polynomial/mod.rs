//! Exact sparse polynomials over `Z[x_1..x_n, y_1..y_n]`, Laurent polynomials
//! in the x-variables, y-heavy monomial orders, division and the Buchberger
//! criterion.

mod division;
mod laurent;
mod monomial;
mod order;
mod poly;
mod text;

use thiserror::Error;

pub use division::{
    buchberger_is_groebner, normal_form, reduce, s_polynomial, GroebnerCheck, GroebnerVerdict, Reduction,
};
pub use laurent::{LaurentMonomial, LaurentPolynomial};
pub use monomial::{Monomial, VarKind, Variable};
pub use order::YHeavyOrder;
pub use poly::Polynomial;
pub use text::{fraction_string, parse_laurent, parse_polynomial, Ordered, ParseError};

use crate::presentation::adjacent_cluster_variables;
use crate::quiver::Seed;
use crate::scalar::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("ambient sizes differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("divisor {index} is the zero polynomial")]
    ZeroDivisor { index: usize },
    #[error("divisor {index} has a leading coefficient other than 1 or -1")]
    NonUnitLeadingCoefficient { index: usize },
}

/// The presentation map `x_i -> x_i`, `y_i -> x_i'` into the Laurent ring.
pub fn pi_map<C: Ring>(seed: &Seed, f: &Polynomial<C>) -> Result<LaurentPolynomial<C>, PolyError> {
    let n = seed.n();
    if f.ambient() != n {
        return Err(PolyError::AmbientMismatch {
            left: f.ambient(),
            right: n,
        });
    }
    let adjacent: Vec<LaurentPolynomial<C>> = adjacent_cluster_variables(seed);
    let mut powers: Vec<Vec<LaurentPolynomial<C>>> = vec![vec![LaurentPolynomial::one(n)]; n];
    let mut out = LaurentPolynomial::zero(n);
    for (m, c) in f.terms() {
        let x_part = LaurentMonomial::new(m.x_exponents().iter().map(|&e| e as i32).collect());
        let mut image = LaurentPolynomial::term(x_part, c.clone());
        for (i, &e) in m.y_exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let cache = &mut powers[i];
            while cache.len() <= e as usize {
                let next = cache.last().unwrap() * &adjacent[i];
                cache.push(next);
            }
            image = &image * &cache[e as usize];
        }
        out = &out + &image;
    }
    Ok(out)
}
