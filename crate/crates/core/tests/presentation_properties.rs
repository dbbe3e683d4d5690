use lbca::gallery;
use lbca::polynomial::{parse_polynomial, pi_map, Monomial};
use lbca::presentation::{
    choice_expansion_oracle, cycle_expansion_rhs, cycle_polynomial, expansion_subset_count, generators,
    verify_relation, DEFAULT_MAX_ORACLE_CYCLE,
};
use lbca::quiver::{random_quiver, RandomQuiverConfig};
use lbca::{IceQuiver, Seed, YHeavyOrder, ZPolynomial};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ORD: YHeavyOrder = YHeavyOrder::YGradedLex;

fn quiver_from(seed: u64, n: usize, mult: u32) -> IceQuiver {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_quiver(
        &mut rng,
        &RandomQuiverConfig {
            n,
            max_multiplicity: mult,
            ..RandomQuiverConfig::default()
        },
    )
}

fn random_poly<R: Rng>(rng: &mut R, n: usize, terms: usize, max_exp: u32) -> ZPolynomial {
    let items = (0..terms).map(|_| {
        let x: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
        let y: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
        (Monomial::from_exponents(&x, &y), BigInt::from(rng.gen_range(-3i64..=3)))
    });
    ZPolynomial::from_terms(n, items)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn presentation_map_is_a_ring_homomorphism(seed in any::<u64>(), n in 1usize..=4) {
        let q = Seed::from(quiver_from(seed, n, 2));
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let f = random_poly(&mut rng, n, 3, 2);
        let g = random_poly(&mut rng, n, 3, 2);
        let pf = pi_map(&q, &f).unwrap();
        let pg = pi_map(&q, &g).unwrap();
        prop_assert_eq!(pi_map(&q, &(&f * &g)).unwrap(), &pf * &pg);
        prop_assert_eq!(pi_map(&q, &(&f + &g)).unwrap(), &pf + &pg);
    }

    #[test]
    fn cycle_expansions_agree_with_brute_force(seed in any::<u64>(), n in 3usize..=7) {
        let q = quiver_from(seed, n, 2);
        let s = Seed::from(q.clone());
        for c in q.simple_cycles().into_iter().filter(|c| c.len() <= 8) {
            let poly: ZPolynomial = cycle_polynomial(&s, &c).unwrap();
            prop_assert!(pi_map(&s, &poly).unwrap().is_zero(), "cycle {}", c);
            let rhs = cycle_expansion_rhs::<BigInt>(&s, &c).unwrap();
            let oracle = choice_expansion_oracle::<BigInt>(&s, &c, DEFAULT_MAX_ORACLE_CYCLE).unwrap();
            prop_assert_eq!(oracle, pi_map(&s, &rhs).unwrap());
        }
    }

    #[test]
    fn leading_terms_are_the_initial_generators(seed in any::<u64>(), n in 1usize..=6) {
        let q = quiver_from(seed, n, 2);
        let s = Seed::from(q.clone());
        let pres = generators::<BigInt>(&s, ORD).unwrap();
        for (i, g) in pres.defining().iter().enumerate() {
            let (lm, lc) = g.leading_term(ORD).unwrap();
            prop_assert_eq!(lm.to_string(), format!("y{}*x{}", i + 1, i + 1));
            prop_assert_eq!(lc, &BigInt::from(1));
        }
        for (c, g) in pres.cycles() {
            let (lm, lc) = g.leading_term(ORD).unwrap();
            let mut vs = c.vertices().to_vec();
            vs.sort();
            let want: Vec<String> = vs.iter().map(|v| format!("y{v}")).collect();
            prop_assert_eq!(lm.to_string(), want.join("*"));
            prop_assert_eq!(lc, &BigInt::from(1));
        }
        for g in pres.generators() {
            prop_assert!(pi_map(&s, &g).unwrap().is_zero());
        }
    }

    #[test]
    fn membership_agrees_with_the_presentation_map(seed in any::<u64>(), n in 1usize..=4) {
        let q = Seed::from(quiver_from(seed, n, 2));
        let pres = generators::<BigInt>(&q, ORD).unwrap();
        let gens = pres.generators();
        let mut rng = ChaCha8Rng::seed_from_u64(seed.rotate_left(17));
        let mut member = ZPolynomial::zero(n);
        for g in &gens {
            let a = random_poly(&mut rng, n, 2, 1);
            member = &member + &(&a * g);
        }
        prop_assert!(verify_relation(&pres, &member).unwrap());
        prop_assert!(pi_map(&q, &member).unwrap().is_zero());
        let other = random_poly(&mut rng, n, 3, 2);
        let candidate = &member + &other;
        prop_assert_eq!(verify_relation(&pres, &candidate).unwrap(), pi_map(&q, &candidate).unwrap().is_zero());
    }
}

#[test]
fn lucas_counts() {
    let lucas = [2usize, 1, 3, 4, 7, 11, 18, 29, 47, 76, 123];
    for (k, &l) in lucas.iter().enumerate().skip(3) {
        assert_eq!(expansion_subset_count(k), l);
    }
}

#[test]
fn non_minimal_cycle_is_a_relation() {
    let s = Seed::from(gallery::chorded_square());
    let pres = generators::<BigInt>(&s, ORD).unwrap();
    assert_eq!(pres.cycles().len(), 1);
    let long = cycle_polynomial::<BigInt>(&s, &lbca::DirectedCycle::new(vec![1, 2, 3, 4]).unwrap()).unwrap();
    assert!(pi_map(&s, &long).unwrap().is_zero());
    assert!(verify_relation(&pres, &long).unwrap());
}

#[test]
fn pure_cycle_term_counts() {
    for k in 3..=9 {
        let s = Seed::from(gallery::oriented_cycle(k));
        let c = lbca::DirectedCycle::new((1..=k).collect()).unwrap();
        let p = cycle_polynomial::<BigInt>(&s, &c).unwrap();
        assert!(pi_map(&s, &p).unwrap().is_zero());
        assert!(p.num_terms() <= expansion_subset_count(k) + 2);
    }
    let p: ZPolynomial = parse_polynomial("y1y2y3 - y1 - y2 - y3 - 2", Some(3)).unwrap();
    assert_eq!(p.num_terms(), 5);
}
