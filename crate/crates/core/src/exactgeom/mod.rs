//! Exact rational polyhedral kernel: convex hulls, Minkowski sums, inner
//! normal fans, common refinements and fan statistics.
//!
//! There is no floating point anywhere in this module. Cones and fans work on
//! primitive integer vectors (a rational direction is always a positive
//! multiple of one); polytope vertices are arbitrary rationals.

mod cone;
pub mod dd;
mod fan;
pub mod linalg;
mod polytope;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub use cone::Cone;
pub use fan::{common_refinement, containment_map, Fan, FanJson};
pub use linalg::IntVec;
pub use polytope::{Facet, Polytope};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty input")]
    Empty,
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("region is unbounded")]
    Unbounded,
    #[error("fan is not pointed")]
    NotPointed,
    #[error("fan is not complete: {0}")]
    Incomplete(String),
    #[error("not a refinement: {0}")]
    NotARefinement(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("malformed fan: {0}")]
    Malformed(String),
}

/// A point of `Q^d`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatVector(Vec<BigRational>);

impl RatVector {
    pub fn new(coords: Vec<BigRational>) -> Self {
        RatVector(coords)
    }

    pub fn from_ints(v: &[i64]) -> Self {
        RatVector(v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_ints(&vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn add(&self, other: &RatVector) -> RatVector {
        RatVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn dot(&self, other: &RatVector) -> BigRational {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// Integer coordinates, if every entry is an integer fitting in `i64`.
    pub fn to_ints(&self) -> Option<IntVec> {
        use num_traits::ToPrimitive;
        self.0
            .iter()
            .map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None })
            .collect()
    }
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Convex hull of `points`.
pub fn convex_hull(points: &[RatVector]) -> Result<Polytope, GeomError> {
    Polytope::convex_hull(points)
}

pub fn minkowski_sum(p: &Polytope, q: &Polytope) -> Result<Polytope, GeomError> {
    p.minkowski_sum(q)
}

pub fn inner_normal_fan(p: &Polytope) -> Result<Fan, GeomError> {
    p.inner_normal_fan()
}
