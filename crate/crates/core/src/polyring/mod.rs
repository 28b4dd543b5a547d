//! Graded polynomial rings over ℚ and degree-sliced linear algebra for their ideals.

mod poly;
mod ring;
mod slice;

pub use poly::{mono_degree, mono_mul, Homogeneity, Mono, Poly};
pub use ring::{parse_rational, GradedVar, Ring, VarKind};
pub use slice::{dense_rank, homogeneous_gens, solve_particular, slice_dimension, DegreeSlice, Echelon, Row, SliceSet};

/// Exact rational scalar.
pub type Q = num_rational::BigRational;

/// Shorthand for the rational `n / d`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// The integer `n` as a rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}
