//! Generators of the ideal of relations among `x_1..x_n` and the adjacent
//! cluster variables: defining polynomials, cycle polynomials, their leading
//! monomials, and Gröbner certification.

use thiserror::Error;

use crate::polynomial::{
    buchberger_is_groebner, normal_form, pi_map, LaurentMonomial, LaurentPolynomial, Monomial, PolyError, Polynomial,
    Variable, YHeavyOrder,
};
use crate::quiver::{DirectedCycle, QuiverError, Seed};
use crate::scalar::Ring;

/// Longest cycle the `2^k` brute-force expansion accepts by default.
pub const DEFAULT_MAX_ORACLE_CYCLE: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("cycle term for S = {subset:?} has a negative exponent; exchange monomials do not divide as expected")]
    NonIntegralTerm { subset: Vec<usize> },
    #[error("cycle of length {len} exceeds the expansion bound {max}")]
    CycleTooLong { len: usize, max: usize },
    #[error("generator {index}: expected leading monomial {expected}, found {found}")]
    LeadingTermMismatch {
        index: usize,
        expected: String,
        found: String,
    },
    #[error("monomial order {0} is not y-heavy")]
    NotYHeavy(YHeavyOrder),
}

/// `x_i^{-1}(p_i^+ + p_i^-)` at unfrozen vertices and `x_i^{-1}` at frozen ones.
pub fn adjacent_cluster_variables<C: Ring>(seed: &Seed) -> Vec<LaurentPolynomial<C>> {
    let n = seed.n();
    (1..=n)
        .map(|i| {
            let inv = LaurentPolynomial::x_pow(n, i, -1);
            match seed.exchange_monomials::<C>(i) {
                Ok((plus, minus)) => &inv * &(&plus + &minus),
                Err(_) => inv,
            }
        })
        .collect()
}

fn exponent_monomial<C: Ring>(n: usize, exps: &[u32]) -> Polynomial<C> {
    Polynomial::term(Monomial::from_exponents(exps, &vec![0; n]), C::one())
}

/// `y_i x_i - p_i^+ - p_i^-` (unfrozen) or `y_i x_i - 1` (frozen).
pub fn defining_polynomial<C: Ring>(seed: &Seed, i: usize) -> Result<Polynomial<C>, PresentationError> {
    let n = seed.n();
    if i == 0 || i > n {
        return Err(QuiverError::IndexOutOfRange(i).into());
    }
    let lead = Polynomial::term(Monomial::product_of(n, [Variable::x(i), Variable::y(i)]), C::one());
    if seed.is_frozen(i) {
        return Ok(&lead - &Polynomial::one(n));
    }
    let (plus, minus) = seed.exchange_exponents(i)?;
    let tail = &exponent_monomial::<C>(n, plus) + &exponent_monomial::<C>(n, minus);
    Ok(&lead - &tail)
}

/// Subsets `S` of `Z/kZ` with `S ∩ (S+1) = ∅`, as bitmasks; there are `L_k`
/// (Lucas number) of them.
pub fn cyclic_independent_sets(k: usize) -> Vec<u64> {
    assert!(k < 64, "cycle too long for bitmask enumeration");
    let full: u64 = if k == 0 { 0 } else { (1u64 << k) - 1 };
    (0..=full)
        .filter(|&s| {
            let rotated = ((s << 1) | (s >> (k - 1))) & full;
            s & rotated == 0
        })
        .collect()
}

/// The pieces of the inclusion–exclusion expansion along a cycle, with all
/// divisions already carried out.
struct CycleExpansion {
    /// `(S, monomial)` with the monomial `prod_{i∈S} (p_{v_i}^+/x_{v_{i+1}})(p_{v_{i+1}}^-/x_{v_i}) * prod_{i∉S∪(S+1)} y_{v_i}`.
    subsets: Vec<(u64, Monomial)>,
    all_plus: Monomial,
    all_minus: Monomial,
}

fn checked_monomial(x: Vec<i64>, y: Vec<u32>, subset: u64, k: usize) -> Result<Monomial, PresentationError> {
    if x.iter().any(|&e| e < 0) {
        return Err(PresentationError::NonIntegralTerm {
            subset: (0..k).filter(|i| subset >> i & 1 == 1).map(|i| i + 1).collect(),
        });
    }
    let x: Vec<u32> = x.into_iter().map(|e| e as u32).collect();
    Ok(Monomial::from_exponents(&x, &y))
}

fn expand_cycle(seed: &Seed, c: &DirectedCycle) -> Result<CycleExpansion, PresentationError> {
    seed.quiver().check_cycle(c)?;
    let n = seed.n();
    let v = c.vertices();
    let k = v.len();
    let mut subsets = Vec::new();
    for s in cyclic_independent_sets(k) {
        let mut x = vec![0i64; n];
        let mut y = vec![0u32; n];
        let mut covered = 0u64;
        for i in 0..k {
            if s >> i & 1 == 0 {
                continue;
            }
            let next = (i + 1) % k;
            covered |= 1 << i | 1 << next;
            let (plus, _) = seed.exchange_exponents(v[i])?;
            let (_, minus_next) = seed.exchange_exponents(v[next])?;
            for j in 0..n {
                x[j] += plus[j] as i64 + minus_next[j] as i64;
            }
            x[v[next] - 1] -= 1;
            x[v[i] - 1] -= 1;
        }
        for i in 0..k {
            if covered >> i & 1 == 0 {
                y[v[i] - 1] += 1;
            }
        }
        subsets.push((s, checked_monomial(x, y, s, k)?));
    }
    let mut plus_total = vec![0i64; n];
    let mut minus_total = vec![0i64; n];
    for &vi in v {
        let (plus, minus) = seed.exchange_exponents(vi)?;
        for j in 0..n {
            plus_total[j] += plus[j] as i64;
            minus_total[j] += minus[j] as i64;
        }
        plus_total[vi - 1] -= 1;
        minus_total[vi - 1] -= 1;
    }
    let full = (1u64 << k) - 1;
    Ok(CycleExpansion {
        subsets,
        all_plus: checked_monomial(plus_total, vec![0; n], full, k)?,
        all_minus: checked_monomial(minus_total, vec![0; n], full, k)?,
    })
}

fn sign<C: Ring>(negative: bool) -> C {
    if negative {
        -C::one()
    } else {
        C::one()
    }
}

/// The cycle polynomial
/// `sum_S (-1)^|S| (prod_{i∈S} ...) (prod_{i∉S∪(S+1)} y_{v_i}) - prod p^+/x - prod p^-/x`.
///
/// Accepts any directed cycle of unfrozen vertices, minimal or not.
pub fn cycle_polynomial<C: Ring>(seed: &Seed, c: &DirectedCycle) -> Result<Polynomial<C>, PresentationError> {
    let e = expand_cycle(seed, c)?;
    let n = seed.n();
    let mut terms: Vec<(Monomial, C)> = e
        .subsets
        .into_iter()
        .map(|(s, m)| (m, sign(s.count_ones() % 2 == 1)))
        .collect();
    terms.push((e.all_plus, -C::one()));
    terms.push((e.all_minus, -C::one()));
    Ok(Polynomial::from_terms(n, terms))
}

/// The inclusion–exclusion side of the product expansion, with `y_v` standing
/// in for `x_v'`: `prod p^+/x + prod p^-/x + sum_{S≠∅} (-1)^{|S|+1} ...`.
/// Its image under the presentation map equals `prod_v x_v'`.
pub fn cycle_expansion_rhs<C: Ring>(seed: &Seed, c: &DirectedCycle) -> Result<Polynomial<C>, PresentationError> {
    let e = expand_cycle(seed, c)?;
    let n = seed.n();
    let mut terms: Vec<(Monomial, C)> = e
        .subsets
        .into_iter()
        .filter(|(s, _)| *s != 0)
        .map(|(s, m)| (m, sign(s.count_ones() % 2 == 0)))
        .collect();
    terms.push((e.all_plus, C::one()));
    terms.push((e.all_minus, C::one()));
    Ok(Polynomial::from_terms(n, terms))
}

/// Number of subsets visited by the inclusion–exclusion sum for a cycle of
/// length `k`.
pub fn expansion_subset_count(k: usize) -> usize {
    cyclic_independent_sets(k).len()
}

/// One term of the product `prod_i x_{v_i}^{-1}(p_{v_i}^+ + p_{v_i}^-)`: a
/// choice of `p^+` (`true`) or `p^-` at each cycle vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChoiceGraph {
    cycle: DirectedCycle,
    signs: Vec<bool>,
}

impl ChoiceGraph {
    pub fn new(cycle: DirectedCycle, signs: Vec<bool>) -> Option<Self> {
        (signs.len() == cycle.len()).then_some(ChoiceGraph { cycle, signs })
    }

    /// All `2^k` choices, ordered by the binary number with bit `i` set when
    /// vertex `v_{i+1}` takes `p^+`.
    pub fn all(cycle: &DirectedCycle) -> impl Iterator<Item = ChoiceGraph> + '_ {
        let k = cycle.len();
        (0u64..1 << k).map(move |bits| ChoiceGraph {
            cycle: cycle.clone(),
            signs: (0..k).map(|i| bits >> i & 1 == 1).collect(),
        })
    }

    pub fn cycle(&self) -> &DirectedCycle {
        &self.cycle
    }

    pub fn signs(&self) -> &[bool] {
        &self.signs
    }

    /// `prod_i x_{v_i}^{-1} p_{v_i}^{sign_i}`.
    pub fn monomial(&self, seed: &Seed) -> Result<LaurentMonomial, PresentationError> {
        let mut m = vec![0i32; seed.n()];
        for (&v, &plus) in self.cycle.vertices().iter().zip(&self.signs) {
            let (p, q) = seed.exchange_exponents(v)?;
            for (slot, &e) in m.iter_mut().zip(if plus { p } else { q }) {
                *slot += e as i32;
            }
            m[v - 1] -= 1;
        }
        Ok(LaurentMonomial::new(m))
    }
}

/// Brute-force expansion of `prod_i x_{v_i}^{-1}(p_{v_i}^+ + p_{v_i}^-)` over
/// all `2^k` choice graphs.
pub fn choice_expansion_oracle<C: Ring>(
    seed: &Seed,
    c: &DirectedCycle,
    max_len: usize,
) -> Result<LaurentPolynomial<C>, PresentationError> {
    seed.quiver().check_cycle(c)?;
    let k = c.len();
    if k > max_len {
        return Err(PresentationError::CycleTooLong { len: k, max: max_len });
    }
    let mut out = LaurentPolynomial::zero(seed.n());
    for g in ChoiceGraph::all(c) {
        out = &out + &LaurentPolynomial::term(g.monomial(seed)?, C::one());
    }
    Ok(out)
}

/// Generators of the ideal of relations, in a fixed order: defining
/// polynomials by vertex, then cycle polynomials by canonical cycle order.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation<C> {
    seed: Seed,
    order: YHeavyOrder,
    defining: Vec<Polynomial<C>>,
    cycles: Vec<(DirectedCycle, Polynomial<C>)>,
}

impl<C: Ring> Presentation<C> {
    pub fn seed(&self) -> &Seed {
        &self.seed
    }

    pub fn order(&self) -> YHeavyOrder {
        self.order
    }

    pub fn defining(&self) -> &[Polynomial<C>] {
        &self.defining
    }

    pub fn cycles(&self) -> &[(DirectedCycle, Polynomial<C>)] {
        &self.cycles
    }

    /// All generators, defining polynomials first.
    pub fn generators(&self) -> Vec<Polynomial<C>> {
        self.defining
            .iter()
            .cloned()
            .chain(self.cycles.iter().map(|(_, p)| p.clone()))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.defining.len() + self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Builds the full generating set: `n` defining polynomials plus one cycle
/// polynomial per vertex-minimal cycle.
pub fn generators<C: Ring>(seed: &Seed, order: YHeavyOrder) -> Result<Presentation<C>, PresentationError> {
    let defining = (1..=seed.n())
        .map(|i| defining_polynomial(seed, i))
        .collect::<Result<_, _>>()?;
    let cycles = seed
        .quiver()
        .vertex_minimal_cycles()
        .into_iter()
        .map(|c| cycle_polynomial(seed, &c).map(|p| (c, p)))
        .collect::<Result<_, _>>()?;
    Ok(Presentation {
        seed: seed.clone(),
        order,
        defining,
        cycles,
    })
}

/// `{x_i y_i} ∪ {prod_{v∈c} y_v : c vertex-minimal}`, checked against the
/// computed leading terms of the generators.
pub fn initial_ideal_generators<C: Ring>(seed: &Seed, order: YHeavyOrder) -> Result<Vec<Monomial>, PresentationError> {
    if !order.is_y_heavy() {
        return Err(PresentationError::NotYHeavy(order));
    }
    let pres = generators::<C>(seed, order)?;
    let n = seed.n();
    let expected: Vec<Monomial> = (1..=n)
        .map(|i| Monomial::product_of(n, [Variable::x(i), Variable::y(i)]))
        .chain(
            pres.cycles()
                .iter()
                .map(|(c, _)| Monomial::product_of(n, c.vertices().iter().map(|&v| Variable::y(v)))),
        )
        .collect();
    for (index, (g, want)) in pres.generators().iter().zip(&expected).enumerate() {
        let (lm, lc) = g.leading_term(order)?;
        if lm != want || !lc.is_one() {
            return Err(PresentationError::LeadingTermMismatch {
                index,
                expected: want.to_string(),
                found: lm.to_string(),
            });
        }
    }
    Ok(expected)
}

/// Why certification failed.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness<C> {
    /// Generator `index` does not map to zero.
    NotInKernel { index: usize, image: LaurentPolynomial<C> },
    /// Generator `index` cannot be used for integral division.
    NonUnitLeadingCoefficient { index: usize },
    /// The S-polynomial of generators `i < j` has a nonzero remainder.
    SPairRemainder {
        i: usize,
        j: usize,
        remainder: Polynomial<C>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict<C> {
    Certified,
    Failed(Witness<C>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate<C> {
    pub verdict: Verdict<C>,
    pub pairs_total: usize,
    pub pairs_reduced: usize,
    pub pairs_skipped: usize,
}

impl<C> Certificate<C> {
    pub fn is_certified(&self) -> bool {
        matches!(self.verdict, Verdict::Certified)
    }
}

/// Certifies an arbitrary candidate generating set: every element maps to
/// zero, and all S-polynomials reduce to zero.
pub fn certify_generators<C: Ring>(
    seed: &Seed,
    gens: &[Polynomial<C>],
    order: YHeavyOrder,
) -> Result<Certificate<C>, PresentationError> {
    let mut kernel_failure = None;
    for (index, g) in gens.iter().enumerate() {
        let image = pi_map(seed, g)?;
        if !image.is_zero() {
            kernel_failure = Some(Witness::NotInKernel { index, image });
            break;
        }
    }
    let check = match buchberger_is_groebner(gens, order) {
        Ok(check) => check,
        Err(PolyError::NonUnitLeadingCoefficient { index }) | Err(PolyError::ZeroDivisor { index }) => {
            let witness = kernel_failure.unwrap_or(Witness::NonUnitLeadingCoefficient { index });
            return Ok(Certificate {
                verdict: Verdict::Failed(witness),
                pairs_total: 0,
                pairs_reduced: 0,
                pairs_skipped: 0,
            });
        }
        Err(e) => return Err(e.into()),
    };
    let verdict = match (kernel_failure, check.verdict) {
        (Some(w), _) => Verdict::Failed(w),
        (None, crate::polynomial::GroebnerVerdict::No { i, j, remainder }) => {
            Verdict::Failed(Witness::SPairRemainder { i, j, remainder })
        }
        (None, crate::polynomial::GroebnerVerdict::Yes) => Verdict::Certified,
    };
    Ok(Certificate {
        verdict,
        pairs_total: check.pairs_total,
        pairs_reduced: check.pairs_reduced,
        pairs_skipped: check.pairs_skipped,
    })
}

/// Certifies that the generators of `seed` form a Gröbner basis of the kernel
/// of the presentation map.
pub fn certify_groebner<C: Ring>(seed: &Seed, order: YHeavyOrder) -> Result<Certificate<C>, PresentationError> {
    let pres = generators::<C>(seed, order)?;
    certify_generators(seed, &pres.generators(), order)
}

/// Ideal membership by reduction against a presentation.
pub fn verify_relation<C: Ring>(pres: &Presentation<C>, f: &Polynomial<C>) -> Result<bool, PresentationError> {
    Ok(normal_form(f, &pres.generators(), pres.order())?.is_zero())
}
