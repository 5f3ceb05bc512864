//! Exact integer linear algebra: Hermite and Smith normal forms, integer
//! kernels and solves, sublattices of `Zⁿ` with their indices and coset
//! transversals.
//!
//! Everything is generic over [`Int`], implemented for the primitive signed
//! integers and for `BigInt`. The crate-root aliases use `BigInt`.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

mod lattice;
mod matrix;
mod normal_form;

pub use lattice::{primitive, Index, Lattice};
pub use matrix::{ext_gcd, Matrix};
pub use normal_form::{hnf, kernel, snf, solve_in_span, Hermite, SmithDecomposition};

/// Exact integer scalar.
pub trait Int:
    Clone + Debug + Display + Hash + Ord + Integer + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

impl<T> Int for T where
    T: Clone + Debug + Display + Hash + Ord + Integer + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IntlatError {
    #[error("lattice has infinite index")]
    IndexInfinite,
}

/// Converts a small-integer vector to any scalar.
pub fn lift_vec<T: Int>(v: &[i64]) -> Vec<T> {
    v.iter().map(|&x| T::from_i64(x).expect("i64 fits scalar")).collect()
}
