//! Multivariate division with unit leading coefficients, and the Buchberger
//! S-pair criterion.
//!
//! Divisors must have leading coefficient `±1`, so division never leaves the
//! coefficient ring. Reduction always works on the largest remaining monomial
//! and uses the first divisor (smallest index) whose leading monomial divides
//! it; the output is therefore a deterministic function of the inputs.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{Monomial, PolyError, Polynomial, YHeavyOrder};
use crate::scalar::Ring;

/// Result of dividing `f` by `g_1..g_s`: `f = sum q_i g_i + remainder`.
#[derive(Clone, Debug, PartialEq)]
pub struct Reduction<C> {
    pub quotients: Vec<Polynomial<C>>,
    pub remainder: Polynomial<C>,
}

struct Divisor<C> {
    lead: Monomial,
    lead_coef: C,
    tail: Vec<(Monomial, C)>,
}

fn prepare<C: Ring>(divisors: &[Polynomial<C>], ord: YHeavyOrder) -> Result<Vec<Divisor<C>>, PolyError> {
    divisors
        .iter()
        .enumerate()
        .map(|(index, g)| {
            let (lead, lc) = g.leading_term(ord).map_err(|_| PolyError::ZeroDivisor { index })?;
            if !lc.is_sign_unit() {
                return Err(PolyError::NonUnitLeadingCoefficient { index });
            }
            let tail = g
                .terms()
                .filter(|(m, _)| *m != lead)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect();
            Ok(Divisor {
                lead: lead.clone(),
                lead_coef: lc.clone(),
                tail,
            })
        })
        .collect()
}

fn reduce_prepared<C: Ring>(f: &Polynomial<C>, divisors: &[Divisor<C>], ord: YHeavyOrder, track: bool) -> Reduction<C> {
    let n = f.ambient();
    let mut work: BTreeMap<Vec<u32>, C> = f.terms().map(|(m, c)| (ord.key(m), c.clone())).collect();
    let mut remainder = Polynomial::zero(n);
    let mut quotients = if track {
        vec![Polynomial::zero(n); divisors.len()]
    } else {
        Vec::new()
    };
    while let Some((key, c)) = work.pop_last() {
        let m = ord.monomial_from_key(&key);
        let hit = divisors.iter().position(|d| d.lead.divides(&m));
        let Some(i) = hit else {
            remainder.add_term(m, c);
            continue;
        };
        let d = &divisors[i];
        let shift = m.checked_div(&d.lead).expect("leading monomial divides");
        // lead_coef is ±1, hence its own inverse
        let q = c * d.lead_coef.clone();
        for (tm, tc) in &d.tail {
            let k = ord.key(&tm.mul(&shift));
            let delta = -(q.clone() * tc.clone());
            match work.get_mut(&k) {
                Some(v) => {
                    *v = v.clone() + delta;
                    if v.is_zero() {
                        work.remove(&k);
                    }
                }
                None => {
                    work.insert(k, delta);
                }
            }
        }
        if track {
            quotients[i].add_term(shift, q);
        }
    }
    Reduction { quotients, remainder }
}

/// Full division with quotients, for checking `f - r` against the ideal.
pub fn reduce<C: Ring>(
    f: &Polynomial<C>,
    divisors: &[Polynomial<C>],
    ord: YHeavyOrder,
) -> Result<Reduction<C>, PolyError> {
    check_ambients(f, divisors)?;
    let prepared = prepare(divisors, ord)?;
    Ok(reduce_prepared(f, &prepared, ord, true))
}

/// Remainder of `f` on division by `divisors`.
pub fn normal_form<C: Ring>(
    f: &Polynomial<C>,
    divisors: &[Polynomial<C>],
    ord: YHeavyOrder,
) -> Result<Polynomial<C>, PolyError> {
    check_ambients(f, divisors)?;
    let prepared = prepare(divisors, ord)?;
    Ok(reduce_prepared(f, &prepared, ord, false).remainder)
}

fn check_ambients<C: Ring>(f: &Polynomial<C>, divisors: &[Polynomial<C>]) -> Result<(), PolyError> {
    for g in divisors {
        if g.ambient() != f.ambient() {
            return Err(PolyError::AmbientMismatch {
                left: f.ambient(),
                right: g.ambient(),
            });
        }
    }
    Ok(())
}

/// `S(f, g)` for unit leading coefficients.
pub fn s_polynomial<C: Ring>(
    f: &Polynomial<C>,
    g: &Polynomial<C>,
    ord: YHeavyOrder,
) -> Result<Polynomial<C>, PolyError> {
    let (mf, cf) = f.leading_term(ord)?;
    let (mg, cg) = g.leading_term(ord)?;
    if !cf.is_sign_unit() || !cg.is_sign_unit() {
        return Err(PolyError::NonUnitLeadingCoefficient {
            index: usize::from(cf.is_sign_unit()),
        });
    }
    let l = mf.lcm(mg);
    let left = f.mul_term(&l.checked_div(mf).unwrap(), cf);
    let right = g.mul_term(&l.checked_div(mg).unwrap(), cg);
    left.try_sub(&right)
}

#[derive(Clone, Debug, PartialEq)]
pub enum GroebnerVerdict<C> {
    Yes,
    /// The first pair `(i, j)`, `i < j`, whose S-polynomial has a nonzero
    /// remainder, together with that remainder.
    No {
        i: usize,
        j: usize,
        remainder: Polynomial<C>,
    },
}

impl<C> GroebnerVerdict<C> {
    pub fn is_yes(&self) -> bool {
        matches!(self, GroebnerVerdict::Yes)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerCheck<C> {
    pub verdict: GroebnerVerdict<C>,
    pub pairs_total: usize,
    /// Pairs skipped because their leading monomials are coprime.
    pub pairs_skipped: usize,
    pub pairs_reduced: usize,
}

/// Decides whether `basis` is a Gröbner basis of the ideal it generates by
/// reducing every S-polynomial. Pairs are reduced in parallel; the reported
/// witness is always the lexicographically smallest failing pair.
pub fn buchberger_is_groebner<C: Ring>(
    basis: &[Polynomial<C>],
    ord: YHeavyOrder,
) -> Result<GroebnerCheck<C>, PolyError> {
    if let Some(first) = basis.first() {
        check_ambients(first, basis)?;
    }
    let prepared = prepare(basis, ord)?;
    let mut pairs = Vec::new();
    let mut skipped = 0;
    for i in 0..prepared.len() {
        for j in i + 1..prepared.len() {
            if prepared[i].lead.is_coprime(&prepared[j].lead) {
                skipped += 1;
            } else {
                pairs.push((i, j));
            }
        }
    }
    let failures: Vec<Option<Polynomial<C>>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let s = s_polynomial(&basis[i], &basis[j], ord).expect("leading coefficients checked");
            let r = reduce_prepared(&s, &prepared, ord, false).remainder;
            (!r.is_zero()).then_some(r)
        })
        .collect();
    let verdict = pairs
        .iter()
        .zip(failures)
        .find_map(|(&(i, j), r)| r.map(|remainder| GroebnerVerdict::No { i, j, remainder }))
        .unwrap_or(GroebnerVerdict::Yes);
    Ok(GroebnerCheck {
        verdict,
        pairs_total: pairs.len() + skipped,
        pairs_skipped: skipped,
        pairs_reduced: pairs.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::parse_polynomial;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn p(s: &str) -> Polynomial<BigInt> {
        parse_polynomial(s, Some(3)).unwrap()
    }

    fn three_cycle_generators() -> Vec<Polynomial<BigInt>> {
        vec![
            p("y1x1 - x2 - x3"),
            p("y2x2 - x3 - x1"),
            p("y3x3 - x1 - x2"),
            p("y1y2y3 - y1 - y2 - y3 - 2"),
        ]
    }

    const ORD: YHeavyOrder = YHeavyOrder::YGradedLex;

    #[test]
    fn self_reduction_vanishes() {
        let g = p("y1x1 - x2 - x3");
        assert!(normal_form(&g, std::slice::from_ref(&g), ORD).unwrap().is_zero());
    }

    #[test]
    fn irreducible_stays_put() {
        let g = p("y1x1 - x2 - x3");
        assert_eq!(normal_form(&p("x1"), &[g], ORD).unwrap(), p("x1"));
    }

    #[test]
    fn generator_reduces_to_zero() {
        let gens = three_cycle_generators();
        let r = normal_form(&p("y1y2y3 - y1 - y2 - y3 - 2"), &gens, ORD).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn non_unit_leading_coefficient_rejected() {
        let err = normal_form(&p("x1"), &[p("2x1 + 1")], ORD).unwrap_err();
        assert_eq!(err, PolyError::NonUnitLeadingCoefficient { index: 0 });
        let ok = normal_form(&p("x1"), &[p("-x1 + 1")], ORD).unwrap();
        assert_eq!(ok, p("1"));
    }

    #[test]
    fn three_cycle_is_groebner() {
        let check = buchberger_is_groebner(&three_cycle_generators(), ORD).unwrap();
        assert!(check.verdict.is_yes());
        assert_eq!(check.pairs_total, 6);
        // x_iy_i are pairwise coprime
        assert_eq!(check.pairs_skipped, 3);
    }

    #[test]
    fn inconsistent_pair_has_constant_witness() {
        let g = vec![p("x1"), p("x1 + 1")];
        let check = buchberger_is_groebner(&g, ORD).unwrap();
        match check.verdict {
            GroebnerVerdict::No { i, j, remainder } => {
                assert_eq!((i, j), (0, 1));
                assert!(remainder.leading_monomial(ORD).unwrap().is_one());
                assert!(remainder.leading_term(ORD).unwrap().1.is_sign_unit());
            }
            GroebnerVerdict::Yes => panic!("expected a witness"),
        }
    }

    #[test]
    fn singleton_is_groebner() {
        let check = buchberger_is_groebner(&[p("y1x1 - x2 - 1")], ORD).unwrap();
        assert!(check.verdict.is_yes());
        assert_eq!(check.pairs_total, 0);
    }

    #[test]
    fn missing_cycle_polynomial_is_detected() {
        // without the cycle relation the defining polynomials of the 3-cycle
        // are still a Gröbner basis of the ideal they generate
        let gens = three_cycle_generators()[..3].to_vec();
        assert!(buchberger_is_groebner(&gens, ORD).unwrap().verdict.is_yes());
        // but the cycle relation is not in that ideal
        let r = normal_form(&p("y1y2y3 - y1 - y2 - y3 - 2"), &gens, ORD).unwrap();
        assert!(!r.is_zero());
    }

    fn arb_small() -> impl Strategy<Value = Polynomial<BigInt>> {
        proptest::collection::vec(
            (
                proptest::collection::vec(0u32..2, 3),
                proptest::collection::vec(0u32..2, 3),
                -3i64..4,
            ),
            0..4,
        )
        .prop_map(|ts| {
            Polynomial::from_terms(
                3,
                ts.into_iter()
                    .map(|(x, y, c)| (Monomial::from_exponents(&x, &y), BigInt::from(c))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn reduction_trace_reexpands(f in arb_small(), a in arb_small()) {
            let gens = three_cycle_generators();
            let f = &f + &(&a * &gens[3]);
            let red = reduce(&f, &gens, ORD).unwrap();
            let mut rebuilt = red.remainder.clone();
            for (q, g) in red.quotients.iter().zip(&gens) {
                rebuilt = &rebuilt + &(q * g);
            }
            prop_assert_eq!(&rebuilt, &f);
            // nothing in the remainder is divisible by a leading monomial
            for (m, _) in red.remainder.terms() {
                for g in &gens {
                    prop_assert!(!g.leading_monomial(ORD).unwrap().divides(m));
                }
            }
        }

        #[test]
        fn ideal_members_reduce_to_zero(cs in proptest::collection::vec(arb_small(), 4)) {
            let gens = three_cycle_generators();
            let mut h = Polynomial::zero(3);
            for (c, g) in cs.iter().zip(&gens) {
                h = &h + &(c * g);
            }
            prop_assert!(normal_form(&h, &gens, ORD).unwrap().is_zero());
        }
    }
}
