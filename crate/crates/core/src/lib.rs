//! Ramification index and residue of elements of loop groups G(A((t))).
//!
//! For g in GL_N or SL_N over a Laurent series ring, r(g) is the least r ≥ 0
//! such that g⁻¹·g(t(1 + u·t^r)) is integral, and the residue is the constant
//! term of that cocycle, a homomorphism from G_a (or G_m when r = 0) to G.
//! Everything is exact: coefficients live in ℚ, 𝔽_p, 𝔽_p(a) or the dual
//! numbers over ℚ, and the core is generic over them through [`Scalar`].
//!
//! ```
//! use ramification::{index, parse::parse_matrix, IndexResult, Exp};
//!
//! let g = parse_matrix::<ramification::Rational>("[[1, t^-2], [0, 1]]", &()).unwrap();
//! assert_eq!(index(&g).unwrap(), IndexResult::Positive(Exp::from_integer(2)));
//! ```

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod grass;
pub mod index;
pub mod jets;
pub mod linalg;
pub mod matrix;
pub mod oracle;
pub mod parse;
pub mod poly;
pub mod report;
pub mod ring;
pub mod scalar;
pub mod series;
pub mod suites;

pub use error::{Error, Result};

pub use index::{analyze, index, residue, Analysis, IndexResult, ResidueHom};
pub use matrix::{Group, PolyMatrix, SeriesMatrix};
pub use poly::{AuxPoly, Var};
pub use scalar::{Dual, Fp, PrimeModulus, RatFunc, Rational, RingDescriptor, Scalar};
pub use series::{Exp, Precision, Series};

pub type QSeries = Series<Rational>;
pub type FpSeries = Series<Fp>;
pub type DualSeries = Series<Dual<Rational>>;
pub type QMatrix = SeriesMatrix<Rational>;
pub type FpMatrix = SeriesMatrix<Fp>;
pub type DualMatrix = SeriesMatrix<Dual<Rational>>;
pub type RatFuncMatrix = SeriesMatrix<RatFunc<Fp>>;
