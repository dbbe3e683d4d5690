//! Jacobian smoothness tests on the variety of the ideal of relations, and
//! the singular locus of the path quivers `1 -> 2 -> .. -> n`.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polynomial::{Polynomial, Variable, YHeavyOrder};
use crate::presentation::{generators, PresentationError};
use crate::quiver::{IceQuiver, Seed};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SingularityError {
    #[error("point has {found} coordinates per block, the seed has {expected} vertices")]
    Dimension { expected: usize, found: usize },
    #[error("the point does not lie on the variety")]
    NotOnVariety,
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

/// A point `(x_1..x_n, y_1..y_n)` with exact coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPoint<F> {
    pub x: Vec<F>,
    pub y: Vec<F>,
}

impl<F: Field> RationalPoint<F> {
    pub fn new(x: Vec<F>, y: Vec<F>) -> Self {
        RationalPoint { x, y }
    }

    pub fn from_ints(x: &[i64], y: &[i64]) -> Self {
        RationalPoint {
            x: x.iter().map(|&v| F::from_int(v)).collect(),
            y: y.iter().map(|&v| F::from_int(v)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    fn check(&self, n: usize) -> Result<(), SingularityError> {
        for found in [self.x.len(), self.y.len()] {
            if found != n {
                return Err(SingularityError::Dimension { expected: n, found });
            }
        }
        Ok(())
    }
}

impl<F: fmt::Display> fmt::Display for RationalPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[F]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ");
        write!(f, "x=({}), y=({})", join(&self.x), join(&self.y))
    }
}

#[derive(Serialize, Deserialize)]
struct PointJson {
    x: Vec<String>,
    y: Vec<String>,
}

impl Serialize for RationalPoint<BigRational> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strings = |v: &[BigRational]| v.iter().map(|c| c.to_string()).collect();
        PointJson {
            x: strings(&self.x),
            y: strings(&self.y),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalPoint<BigRational> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PointJson::deserialize(d)?;
        let parse = |v: Vec<String>| -> Result<Vec<BigRational>, D::Error> {
            v.iter()
                .map(|s| {
                    BigRational::from_str(s.trim()).map_err(|_| serde::de::Error::custom(format!("bad rational {s:?}")))
                })
                .collect()
        };
        Ok(RationalPoint {
            x: parse(raw.x)?,
            y: parse(raw.y)?,
        })
    }
}

/// The Jacobian of all generators with respect to `x_1..x_n, y_1..y_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobianEval<F> {
    pub matrix: Vec<Vec<F>>,
    pub rank: usize,
}

impl<F> JacobianEval<F> {
    /// Rank below the number of vertices.
    pub fn is_singular(&self, n: usize) -> bool {
        self.rank < n
    }
}

pub fn path_quiver(n: usize) -> IceQuiver {
    crate::gallery::path_quiver(n)
}

fn relation_generators<F: Field>(seed: &Seed) -> Result<Vec<Polynomial<F>>, SingularityError> {
    Ok(generators::<F>(seed, YHeavyOrder::YGradedLex)?.generators())
}

/// Every generator vanishes at `p`.
pub fn on_variety<F: Field>(seed: &Seed, p: &RationalPoint<F>) -> Result<bool, SingularityError> {
    p.check(seed.n())?;
    Ok(relation_generators::<F>(seed)?
        .iter()
        .all(|g| g.eval(&p.x, &p.y).is_zero()))
}

/// Rank by fraction-free (Bareiss) elimination; every division is exact.
pub fn matrix_rank<F: Field>(m: &[Vec<F>]) -> usize {
    let mut a: Vec<Vec<F>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev = F::one();
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = a[rank][col].clone() * a[r][c].clone() - a[r][col].clone() * a[rank][c].clone();
                a[r][c] = v / prev.clone();
            }
            a[r][col] = F::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// The Jacobian at `p` and its rank. `p` must lie on the variety.
pub fn jacobian_rank<F: Field>(seed: &Seed, p: &RationalPoint<F>) -> Result<JacobianEval<F>, SingularityError> {
    if !on_variety(seed, p)? {
        return Err(SingularityError::NotOnVariety);
    }
    let n = seed.n();
    let vars: Vec<Variable> = (1..=n).map(Variable::x).chain((1..=n).map(Variable::y)).collect();
    let matrix: Vec<Vec<F>> = relation_generators::<F>(seed)?
        .iter()
        .map(|g| vars.iter().map(|&v| g.derivative(v).eval(&p.x, &p.y)).collect())
        .collect();
    let rank = matrix_rank(&matrix);
    Ok(JacobianEval { matrix, rank })
}

/// Singular points of the variety of the path quiver on `n` vertices.
///
/// A dependency among the Jacobian rows can only use rows with `x_i = 0`,
/// since `x_i` is the lone entry of column `y_i`, and two adjacent `x`'s never
/// vanish together. Each column `x_j` outside the support forces the
/// coefficients on rows `j-1` and `j+1` to cancel, so the support runs over
/// every odd index and `n` is odd. The relations at odd rows then pin down
/// the even coordinates as alternating signs, which closes up only when
/// `n ≡ 3 (mod 4)`.
pub fn path_singular_locus<F: Field>(n: usize) -> Vec<RationalPoint<F>> {
    if n.is_multiple_of(2) {
        return Vec::new();
    }
    let mut x = vec![F::zero(); n];
    // x_{i-1} + x_{i+1} = 0 at odd i, starting from x_0 = 1
    let mut prev = F::one();
    for i in (2..n).step_by(2) {
        x[i - 1] = -prev;
        prev = x[i - 1].clone();
    }
    // the last odd row needs x_{n-1} + x_{n+1} = 0 with x_{n+1} = 1
    if !(prev + F::one()).is_zero() {
        return Vec::new();
    }
    let point = RationalPoint {
        x,
        y: vec![F::zero(); n],
    };
    let seed = Seed::from(path_quiver(n));
    let verified = matches!(jacobian_rank(&seed, &point), Ok(j) if j.is_singular(n));
    if verified {
        vec![point]
    } else {
        Vec::new()
    }
}

fn nonzero_rational<F: Field, R: Rng + ?Sized>(rng: &mut R, max_abs: i64) -> F {
    let mut num = 0;
    while num == 0 {
        num = rng.gen_range(-max_abs..=max_abs);
    }
    let den = rng.gen_range(1..=max_abs);
    F::from_int(num) / F::from_int(den)
}

/// A point on the path-quiver variety with every `x_i` nonzero: `x` is drawn
/// at random and `y_i = (x_{i-1} + x_{i+1}) / x_i` with `x_0 = x_{n+1} = 1`.
pub fn sample_path_point<F: Field, R: Rng + ?Sized>(n: usize, rng: &mut R, max_abs: i64) -> RationalPoint<F> {
    let x: Vec<F> = (0..n).map(|_| nonzero_rational(rng, max_abs.max(1))).collect();
    let at = |i: usize| {
        if i == 0 || i == n + 1 {
            F::one()
        } else {
            x[i - 1].clone()
        }
    };
    let y = (1..=n).map(|i| (at(i - 1) + at(i + 1)) / at(i)).collect();
    RationalPoint { x, y }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::Rational64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type Q = BigRational;

    fn q(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&a| Q::from_integer(BigInt::from(a))).collect()
    }

    #[test]
    fn path_quivers() {
        let q3 = path_quiver(3);
        assert_eq!(q3.arrows().collect::<Vec<_>>(), vec![(1, 2, 1), (2, 3, 1)]);
        assert!(q3.frozen().is_empty());
        assert_eq!(path_quiver(1).arrows().count(), 0);
        assert!((1..8).all(|n| path_quiver(n).is_acyclic()));
    }

    #[test]
    fn variety_membership() {
        let seed = Seed::from(path_quiver(3));
        assert!(on_variety(&seed, &RationalPoint::new(q(&[0, -1, 0]), q(&[0, 0, 0]))).unwrap());
        assert!(on_variety(&seed, &RationalPoint::new(q(&[1, 1, 1]), q(&[2, 2, 2]))).unwrap());
        assert!(!on_variety(&seed, &RationalPoint::new(q(&[1, 1, 1]), q(&[0, 0, 0]))).unwrap());
        assert!(matches!(
            on_variety(&seed, &RationalPoint::new(q(&[1, 1]), q(&[0, 0]))),
            Err(SingularityError::Dimension { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn jacobian_ranks() {
        let seed = Seed::from(path_quiver(3));
        let j = jacobian_rank(&seed, &RationalPoint::new(q(&[0, -1, 0]), q(&[0, 0, 0]))).unwrap();
        assert_eq!(j.rank, 2);
        assert_eq!((j.matrix.len(), j.matrix[0].len()), (3, 6));
        let j = jacobian_rank(&seed, &RationalPoint::new(q(&[1, 1, 1]), q(&[2, 2, 2]))).unwrap();
        assert_eq!(j.rank, 3);
        assert_eq!(
            jacobian_rank(&seed, &RationalPoint::new(q(&[1, 1, 1]), q(&[0, 0, 0]))),
            Err(SingularityError::NotOnVariety)
        );
    }

    #[test]
    fn bareiss_rank() {
        let m = vec![q(&[1, 2, 3]), q(&[2, 4, 6]), q(&[0, 1, 1])];
        assert_eq!(matrix_rank(&m), 2);
        let m: Vec<Vec<Rational64>> = vec![
            vec![Rational64::new(1, 2), Rational64::new(1, 3)],
            vec![Rational64::new(3, 2), Rational64::new(1, 1)],
        ];
        assert_eq!(matrix_rank(&m), 1);
        assert_eq!(matrix_rank::<Q>(&[]), 0);
    }

    #[test]
    fn singular_loci() {
        assert_eq!(
            path_singular_locus::<Q>(3),
            vec![RationalPoint::new(q(&[0, -1, 0]), q(&[0, 0, 0]))]
        );
        assert!(path_singular_locus::<Q>(4).is_empty());
        assert_eq!(
            path_singular_locus::<Q>(7),
            vec![RationalPoint::new(q(&[0, -1, 0, 1, 0, -1, 0]), q(&[0; 7]))]
        );
        for n in 1..=11 {
            assert_eq!(!path_singular_locus::<Q>(n).is_empty(), n % 4 == 3, "n = {n}");
        }
    }

    #[test]
    fn sampled_points_are_smooth() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=4 {
            let seed = Seed::from(path_quiver(n));
            for _ in 0..10 {
                let p: RationalPoint<Q> = sample_path_point(n, &mut rng, 9);
                assert_eq!(jacobian_rank(&seed, &p).unwrap().rank, n);
            }
        }
    }

    #[test]
    fn point_json() {
        let p = RationalPoint::new(
            vec![
                Q::new(BigInt::from(1), BigInt::from(2)),
                Q::from_integer(BigInt::from(-1)),
            ],
            q(&[0, 3]),
        );
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"{"x":["1/2","-1"],"y":["0","3"]}"#);
        assert_eq!(serde_json::from_str::<RationalPoint<Q>>(&text).unwrap(), p);
        assert!(serde_json::from_str::<RationalPoint<Q>>(r#"{"x":["a"],"y":["0"]}"#).is_err());
    }
}
