//! Power-conjugate presentations of finitely generated nilpotent groups:
//! collection to normal form, subgroups by sifting, abelian sections,
//! central series, quotients by tails and homomorphism checks.
//!
//! Conventions: `[x, y] = x⁻¹y⁻¹xy` and `x^y = y⁻¹xy`. Maps act on the
//! right in the mathematics but are applied here as ordinary functions.

mod element;
mod maps;
mod parse;
mod presentation;
mod section;
mod series;
mod subgroup;

pub use element::{invert_word, PcElement, Word};
pub use maps::{check_map, induced_map, quotient_mod, GroupMap, MapKind, Quotient};
pub use parse::{
    parse_automorphism, parse_presentation, parse_word, write_automorphism, write_presentation, AutomorphismSpec,
};
pub use presentation::{word_to_string, PcPresentation, Relations};
pub use section::AbelianSection;
pub(crate) use series::kernel_of_coordinates;
pub use series::{lower_central_series, upper_central_series, CentralSeriesData, SeriesKind};
pub use subgroup::Subgroup;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PcError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed presentation: {0}")]
    Structure(String),
    #[error("inconsistent presentation: overlap {0} fails")]
    Inconsistent(String),
    #[error("not nilpotent: {0}")]
    NotNilpotent(String),
    #[error("generating sequence does not refine the lower central series: {0}")]
    NotRefined(String),
    #[error("relation not preserved: {0}")]
    RelationViolated(String),
    #[error("map is not bijective on the abelianization")]
    NotBijective,
    #[error("subgroup is not a tail of the generating sequence")]
    NotTailCompatible,
    #[error("map does not preserve the kernel of the projection")]
    KernelNotPreserved,
    #[error("expected {expected} generator images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub const HEISENBERG: &str = "pcgroup H\ngens a b c\norders 0 0 0\nconj b a = b c^-1\n";
    pub const Z2: &str = "pcgroup Z2\ngens g1 g2\norders 0 0\n";

    pub fn heisenberg() -> PcPresentation {
        parse_presentation(HEISENBERG).unwrap()
    }

    pub fn z2() -> PcPresentation {
        parse_presentation(Z2).unwrap()
    }

    pub fn heisenberg_mod(p: i64) -> PcPresentation {
        let text = format!(
            "pcgroup H{p}\ngens a b c\norders {p} {p} {p}\nconj b a = b c^{}\n",
            p - 1
        );
        parse_presentation(&text).unwrap()
    }
}
