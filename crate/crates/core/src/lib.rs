pub mod cli;
pub mod freenil;
pub mod intlat;
pub mod oracle;
pub mod pc;
pub mod twisted;

pub use freenil::{build_free_nilpotent, FreeNilpotent};
pub use pc::{GroupMap, PcElement, PcPresentation, Subgroup};
pub use twisted::{ReidemeisterResult, TwistedClass};

/// Integer matrices, lattices and Magnus series over arbitrary precision
/// integers.
pub type IntMatrix = intlat::Matrix<num_bigint::BigInt>;
pub type Lattice = intlat::Lattice<num_bigint::BigInt>;
pub type Series = freenil::TruncatedSeries<num_bigint::BigInt>;
