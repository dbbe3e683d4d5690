//! Small named quivers and exchange matrices used throughout the tests, the
//! acceptance suite and the CLI corpus.

use rand::Rng;

use crate::quiver::{random_quiver, ExchangeMatrix, IceQuiver, RandomQuiverConfig, Seed};

/// `1 => 2` (double arrow), `2 -> 3`, `2 -> 4`, with vertex 4 frozen.
pub fn double_edge_quiver() -> IceQuiver {
    IceQuiver::new(4, [(1, 2, 2), (2, 3, 1), (2, 4, 1)], [4]).unwrap()
}

/// The oriented cycle `1 -> 2 -> .. -> k -> 1`, nothing frozen.
pub fn oriented_cycle(k: usize) -> IceQuiver {
    IceQuiver::new(k, (1..=k).map(|i| (i, i % k + 1, 1)), []).unwrap()
}

/// Two oriented triangles `1 -> 2 -> 5 -> 1` and `2 -> 3 -> 4 -> 2` sharing
/// vertex 2.
pub fn bowtie() -> IceQuiver {
    IceQuiver::new(
        5,
        [(1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 2, 1), (2, 5, 1), (5, 1, 1)],
        [],
    )
    .unwrap()
}

/// The oriented 4-cycle with the chord `2 -> 4`.
pub fn chorded_square() -> IceQuiver {
    IceQuiver::new(4, [(1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 1, 1), (2, 4, 1)], []).unwrap()
}

/// The path `1 -> 2 -> .. -> n` with nothing frozen.
pub fn path_quiver(n: usize) -> IceQuiver {
    IceQuiver::new(n, (1..n).map(|i| (i, i + 1, 1)), []).unwrap()
}

/// `B = [[0, 3], [-2, 0], [1, 2]]` with `D = diag(3, 2)`.
pub fn skew_symmetrizable_example() -> ExchangeMatrix {
    ExchangeMatrix::new(vec![vec![0, 3], vec![-2, 0], vec![1, 2]], vec![3, 2]).unwrap()
}

/// Every named example above, as seeds.
pub fn named_examples() -> Vec<(&'static str, Seed)> {
    vec![
        ("double-edge", Seed::from(double_edge_quiver())),
        ("triangle", Seed::from(oriented_cycle(3))),
        ("square", Seed::from(oriented_cycle(4))),
        ("pentagon", Seed::from(oriented_cycle(5))),
        ("bowtie", Seed::from(bowtie())),
        ("chorded-square", Seed::from(chorded_square())),
        ("matrix-example", Seed::from(skew_symmetrizable_example())),
    ]
}

/// `count` random quivers on 1 to `max_n` vertices (uniformly), with
/// multiplicities up to `max_multiplicity`.
pub fn random_corpus<R: Rng + ?Sized>(
    rng: &mut R,
    count: usize,
    max_n: usize,
    max_multiplicity: u32,
) -> Vec<IceQuiver> {
    (0..count)
        .map(|_| {
            let cfg = RandomQuiverConfig {
                n: rng.gen_range(1..=max_n.max(1)),
                max_multiplicity,
                ..RandomQuiverConfig::default()
            };
            random_quiver(rng, &cfg)
        })
        .collect()
}
