use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::intlat::{kernel, primitive, Matrix};
use crate::pc::{upper_central_series, GroupMap};

use super::{InfinityWitness, TwistedError};

/// The first upper central factor `ζ_{i+1}/ζ_i` on which `φ` fixes a nonzero
/// vector. Such a vector forces infinitely many classes.
pub fn infinity_witness_uc(phi: &GroupMap) -> Result<Option<InfinityWitness>, TwistedError> {
    let g = phi.source();
    let upper = upper_central_series(g);
    for (i, factor) in upper.factors.iter().enumerate() {
        if factor.free_rank() != factor.rank() {
            return Err(TwistedError::TorsionPresent(i));
        }
        let n = factor.rank();
        let m = factor.induced_matrix(g, |x| phi.apply(x));
        let shifted: Vec<Vec<BigInt>> = m
            .iter()
            .enumerate()
            .map(|(j, c)| {
                c.iter()
                    .enumerate()
                    .map(|(k, &x)| BigInt::from(x - i64::from(k == j)))
                    .collect()
            })
            .collect();
        if let Some(v) = kernel(&Matrix::from_columns(n, &shifted)).into_iter().next() {
            let vector: Vec<i64> = primitive(v)
                .iter()
                .map(|x| x.to_i64().expect("witness entry fits i64"))
                .collect();
            let element = factor.section(g, &vector);
            return Ok(Some(InfinityWitness::FixedOnFactor {
                factor: i,
                vector,
                element,
            }));
        }
    }
    Ok(None)
}
