//! Twisted conjugacy in finitely generated nilpotent groups.
//!
//! `g ~_φ f` when `(xφ)·g = f·x` for some `x`. Class enumeration and the
//! decision procedure run down the lower central series: the classes of `G`
//! above a class `[ḡ]` of `G/C` (with `C` the last nontrivial term) are the
//! cosets of `L(C, φ_g) = {c ∈ C : ∃x, (xφ_g) = c·x}` in `C`, where
//! `φ_g(x) = g⁻¹·(xφ)·g` and `g` is the canonical lift of `ḡ`.

mod abelian;
mod layered;
mod predicates;
mod report;
mod spectrum;
mod uc;

pub use abelian::{abelian_group, reidemeister_abelian};
pub use layered::{
    decide, fix_subgroup, l_subgroup, lift_classes, reidemeister, reidemeister_layered, LSubgroupResult, Tower,
};
pub use predicates::{formanek_fixed, theorem2_rinf};
pub use report::{render_result, result_json, witness_json, witness_string};
pub use spectrum::{random_automorphism, spectrum_sample, SpectrumSample, SpectrumValue};
pub use uc::infinity_witness_uc;

use crate::pc::{PcElement, PcError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TwistedError {
    #[error("subgroup is not central")]
    NotCentral,
    #[error("subgroup is not mapped into itself")]
    NotAdmissible,
    #[error("map is not an automorphism")]
    NotAutomorphism,
    #[error("μ is not well defined: {0}")]
    MuNotWellDefined(String),
    #[error("no downstairs classes given")]
    EmptyDownstairs,
    #[error("upper central factor {0} has torsion")]
    TorsionPresent(usize),
    #[error("no automorphism sampler for this group: {0}")]
    SamplingUnsupported(String),
    #[error(transparent)]
    Pc(#[from] PcError),
}

/// One twisted-conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedClass {
    pub representative: PcElement,
    /// Index into the coset transversal chosen at each layer, first layer first.
    pub layer_trace: Vec<usize>,
}

/// Why a Reidemeister number is infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InfinityWitness {
    /// At `layer` of the lower central series, above the class of
    /// `representative`, `L(C, φ_g)` has infinite index in `C`. `vector` is a
    /// nonzero integer vector (in the coordinates of `C`) orthogonal to every
    /// generator of `L`, so the classes are separated by `vector · c`.
    DegenerateLattice {
        layer: usize,
        representative: PcElement,
        vector: Vec<i64>,
    },
    /// The map induced on the upper central factor `ζ_{i+1}/ζ_i` fixes the
    /// nonzero vector `vector`; `element` is a preimage in `ζ_{i+1}`.
    FixedOnFactor {
        factor: usize,
        vector: Vec<i64>,
        element: PcElement,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReidemeisterResult {
    Finite { count: usize, classes: Vec<TwistedClass> },
    Infinite(InfinityWitness),
}

impl ReidemeisterResult {
    pub fn count(&self) -> Option<usize> {
        match self {
            ReidemeisterResult::Finite { count, .. } => Some(*count),
            ReidemeisterResult::Infinite(_) => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ReidemeisterResult::Infinite(_))
    }

    pub fn representatives(&self) -> Vec<PcElement> {
        match self {
            ReidemeisterResult::Finite { classes, .. } => classes.iter().map(|c| c.representative.clone()).collect(),
            ReidemeisterResult::Infinite(_) => Vec::new(),
        }
    }
}
