//! Free nilpotent groups `N_{r,c}` through the Magnus embedding: truncated
//! noncommutative series, the Hall basis of basic commutators, Mal'cev
//! coordinate extraction and the resulting pc presentation.

mod build;
mod hall;
mod series;

pub use build::{build_free_nilpotent, build_free_nilpotent_bounded, FreeNilpotent, DEFAULT_MAX_HIRSCH};
pub use hall::{hall_basis, witt_rank, HallBasis, HallElement};
pub use series::{Monomial, TruncatedSeries};

use crate::pc::PcError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FreenilError {
    #[error("series have different rank or class")]
    RankClassMismatch,
    #[error("series is not invertible (constant term is not 1)")]
    NotAUnit,
    #[error("series is not in the group generated by the letters")]
    NotInGroup,
    #[error("rank and class must be at least 1")]
    BadParameters,
    #[error("Hall basis has {size} elements, above the bound {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error(transparent)]
    Pc(#[from] PcError),
}
