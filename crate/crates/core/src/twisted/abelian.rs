use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::intlat::{Index, Lattice};
use crate::pc::{PcElement, PcPresentation, Relations};

use super::{InfinityWitness, ReidemeisterResult, TwistedClass, TwistedError};

/// `Z_{d₁} ⊕ … ⊕ Z_{dₙ}` as a pc group on `g1 … gn`, with `0` for `Z`.
pub fn abelian_group(invariants: &[i64]) -> Result<PcPresentation, TwistedError> {
    let n = invariants.len();
    let names = (1..=n).map(|i| format!("g{i}")).collect();
    let orders = invariants.iter().map(|&d| (d != 0).then_some(d)).collect();
    let name = if invariants.iter().all(|&d| d == 0) {
        format!("Z{n}")
    } else {
        let parts: Vec<String> = invariants
            .iter()
            .map(|&d| if d == 0 { "Z".to_string() } else { format!("Z{d}") })
            .collect();
        parts.join("x")
    };
    Ok(PcPresentation::new(name, names, orders, Relations::default())?)
}

/// Classes of the automorphism of `⊕ Z_{dᵢ}` whose matrix has the given
/// columns. They are the cosets of `im(φ − 1) + ⊕ dᵢZ`; representatives are
/// coordinate vectors, reduced into `[0, dᵢ)` on torsion coordinates.
pub fn reidemeister_abelian(invariants: &[i64], columns: &[Vec<i64>]) -> Result<ReidemeisterResult, TwistedError> {
    let n = invariants.len();
    if columns.len() != n || columns.iter().any(|c| c.len() != n) {
        return Err(TwistedError::NotAutomorphism);
    }
    let torsion: Vec<Vec<BigInt>> = invariants
        .iter()
        .enumerate()
        .filter(|(_, &d)| d != 0)
        .map(|(i, &d)| {
            let mut v = vec![BigInt::zero(); n];
            v[i] = BigInt::from(d);
            v
        })
        .collect();
    let mut image: Vec<Vec<BigInt>> = columns
        .iter()
        .map(|c| c.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    image.extend(torsion.iter().cloned());
    if Lattice::from_vectors(n, &image).index() != Index::Finite(BigInt::from(1)) {
        return Err(TwistedError::NotAutomorphism);
    }
    let mut vectors: Vec<Vec<BigInt>> = columns
        .iter()
        .enumerate()
        .map(|(j, c)| {
            c.iter()
                .enumerate()
                .map(|(i, &x)| BigInt::from(x - i64::from(i == j)))
                .collect()
        })
        .collect();
    vectors.extend(torsion);
    let l = Lattice::from_vectors(n, &vectors);
    let reduce = |v: &[BigInt]| -> Vec<i64> {
        v.iter()
            .zip(invariants)
            .map(|(x, &d)| {
                let x = x.to_i64().expect("coordinate fits i64");
                if d == 0 {
                    x
                } else {
                    x.rem_euclid(d)
                }
            })
            .collect()
    };
    match l.transversal() {
        Ok(t) => {
            let classes: Vec<TwistedClass> = t
                .iter()
                .enumerate()
                .map(|(i, v)| TwistedClass {
                    representative: PcElement::from(reduce(v)),
                    layer_trace: vec![i],
                })
                .collect();
            Ok(ReidemeisterResult::Finite {
                count: classes.len(),
                classes,
            })
        }
        Err(_) => {
            let vector = l
                .annihilator()
                .expect("infinite index lattice has an annihilator")
                .iter()
                .map(|x| x.to_i64().expect("witness entry fits i64"))
                .collect();
            Ok(ReidemeisterResult::Infinite(InfinityWitness::DegenerateLattice {
                layer: 1,
                representative: PcElement::identity(n),
                vector,
            }))
        }
    }
}
