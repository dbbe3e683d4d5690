//! Lower bound cluster algebras in exact arithmetic.
//!
//! Starting from an ice quiver or a skew-symmetrizable exchange matrix, the
//! crate builds the presentation by `x_i` and the adjacent cluster variables
//! `x_i'`, certifies that the defining and cycle polynomials form a Gröbner
//! basis under a y-heavy order, analyses the Stanley–Reisner complex of the
//! initial ideal, and locates singular points of path-quiver varieties.
//!
//! ```
//! use lbca::{gallery, presentation, Seed, YHeavyOrder, ZPresentation};
//!
//! let seed = Seed::from(gallery::oriented_cycle(3));
//! let pres: ZPresentation = presentation::generators(&seed, YHeavyOrder::YGradedLex).unwrap();
//! assert_eq!(pres.cycles()[0].1.to_string(), "y1*y2*y3 - y1 - y2 - y3 - 2");
//! ```

pub mod complex;
pub mod gallery;
pub mod limits;
pub mod polynomial;
pub mod presentation;
pub mod quiver;
pub mod scalar;
pub mod singularity;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use complex::{ComplexSpec, Face, SheddingTree, Topology};
pub use polynomial::{LaurentPolynomial, Monomial, Polynomial, YHeavyOrder};
pub use presentation::Presentation;
pub use quiver::{DirectedCycle, ExchangeMatrix, IceQuiver, Seed};
pub use scalar::{Field, Ring};
pub use singularity::{JacobianEval, RationalPoint};

pub type ZPolynomial = Polynomial<BigInt>;
pub type ZLaurent = LaurentPolynomial<BigInt>;
pub type ZPresentation = Presentation<BigInt>;
pub type ZCertificate = presentation::Certificate<BigInt>;
pub type QPoint = RationalPoint<BigRational>;
pub type QJacobian = JacobianEval<BigRational>;
