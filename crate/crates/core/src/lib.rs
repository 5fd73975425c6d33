//! Exact enumeration of pattern-avoiding permutations.
//!
//! Counts are computed three ways and compared: brute force over `S_n`,
//! closed forms in Fibonacci-type numbers, and rational generating functions
//! with exact coefficients. Polynomial and generating-function code is
//! generic over [`scalar::Coefficient`]; the aliases below fix the usual
//! choices.

pub mod bijections;
pub mod constructions;
pub mod det;
pub mod families;
pub mod gf;
pub mod perm;
pub mod poly;
pub mod registry;
pub mod scalar;
pub mod sequences;
pub mod verify;

pub use bijections::{Theorem, Tiling, TilingConstraint};
pub use families::{FamilySpec, RSequence, RestrictionSpec};
pub use perm::{PatternSet, Permutation};
pub use registry::FormulaId;

pub type Count = num_bigint::BigInt;
pub type Poly = poly::Polynomial<num_bigint::BigInt>;
pub type Gf = gf::RationalGf<num_bigint::BigInt>;
pub type QGf = gf::RationalGf<num_rational::BigRational>;
