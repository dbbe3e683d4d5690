use lbca::singularity::{jacobian_rank, on_variety, path_quiver, path_singular_locus, sample_path_point};
use lbca::{QPoint, Seed};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn no_adjacent_zeros(p: &QPoint) -> bool {
    p.x.windows(2).all(|w| !(w[0].is_zero() && w[1].is_zero()))
}

#[test]
fn locus_is_nonempty_exactly_when_n_is_3_mod_4() {
    for n in 1..=11 {
        let seed = Seed::from(path_quiver(n));
        let locus: Vec<QPoint> = path_singular_locus(n);
        assert_eq!(!locus.is_empty(), n % 4 == 3, "n = {n}");
        assert!(locus.len() <= 1);
        for p in &locus {
            assert!(on_variety(&seed, p).unwrap());
            assert!(jacobian_rank(&seed, p).unwrap().rank < n);
            assert!(no_adjacent_zeros(p));
            assert!(p.y.iter().all(Zero::is_zero));
            for (i, x) in p.x.iter().enumerate() {
                let i = i + 1;
                let want = if i % 2 == 1 {
                    0
                } else if (i / 2) % 2 == 0 {
                    1
                } else {
                    -1
                };
                assert_eq!(*x, BigRational::from_integer(BigInt::from(want)));
            }
        }
    }
}

#[test]
fn sampled_points_are_smooth() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for n in 1..=6 {
        let seed = Seed::from(path_quiver(n));
        for _ in 0..100 {
            let p: QPoint = sample_path_point(n, &mut rng, 12);
            assert!(on_variety(&seed, &p).unwrap());
            assert!(no_adjacent_zeros(&p));
            let j = jacobian_rank(&seed, &p).unwrap();
            assert_eq!(j.rank, n);
            assert_eq!((j.matrix.len(), j.matrix[0].len()), (n, 2 * n));
        }
    }
}

#[test]
fn generic_points_are_off_the_variety() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 1..=6 {
        let seed = Seed::from(path_quiver(n));
        let draw = |rng: &mut ChaCha8Rng| -> Vec<BigRational> {
            (0..n)
                .map(|_| {
                    BigRational::new(
                        BigInt::from(rng.gen_range(-50..=50)),
                        BigInt::from(rng.gen_range(1..=50)),
                    )
                })
                .collect()
        };
        let p = QPoint::new(draw(&mut rng), draw(&mut rng));
        assert!(!on_variety(&seed, &p).unwrap());
    }
}

#[test]
fn jacobian_covers_cycle_generators() {
    // the triangle adds a cycle polynomial, so the matrix has n + 1 rows
    let seed = Seed::from(lbca::gallery::oriented_cycle(3));
    let one = BigRational::from_integer(BigInt::from(1));
    let two = BigRational::from_integer(BigInt::from(2));
    let p = QPoint::new(vec![one.clone(); 3], vec![two.clone(); 3]);
    assert!(on_variety(&seed, &p).unwrap());
    let j = jacobian_rank(&seed, &p).unwrap();
    assert_eq!(j.matrix.len(), 4);
    assert_eq!(j.rank, 3);
}
