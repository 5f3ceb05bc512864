use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::pc::{check_map, GroupMap, MapKind, PcElement, PcPresentation};

use super::{reidemeister, TwistedError};

const ATTEMPTS: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpectrumValue {
    Finite(usize),
    Infinite,
}

impl fmt::Display for SpectrumValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectrumValue::Finite(n) => write!(f, "{n}"),
            SpectrumValue::Infinite => write!(f, "infinite"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SpectrumSample {
    pub index: usize,
    pub map: GroupMap,
    pub value: SpectrumValue,
}

/// Ways to rebuild a generator of weight ≥ 2 from earlier images: a
/// conjugation relation whose tail is exactly `g_k^ε`.
fn definitions(g: &PcPresentation) -> Result<Vec<(usize, usize, i64)>, TwistedError> {
    let start = g.layer_start(2);
    (start..g.len())
        .map(|k| {
            for j in 0..k {
                for i in 0..j {
                    if let [(jj, 1), (kk, e)] = g.conjugate_relation(j, i).as_slice() {
                        if *jj == j && *kk == k {
                            return Ok((j, i, *e));
                        }
                    }
                }
            }
            Err(TwistedError::SamplingUnsupported(format!(
                "generator {} is not a commutator of earlier generators",
                g.gen_names()[k]
            )))
        })
        .collect()
}

fn trivial_power(g: &PcPresentation, i: usize) -> bool {
    g.power_relation(i).is_none_or(|w| w.is_empty())
}

/// Modulus shared by the abelianization generators (`None` for `Z`).
fn top_modulus(g: &PcPresentation) -> Result<Option<i64>, TwistedError> {
    let orders = &g.relative_orders()[g.layer(1)];
    let first = orders.first().copied().flatten();
    let uniform = orders.iter().all(|&o| o == first);
    if !uniform || !(g.layer(1)).all(|i| trivial_power(g, i)) {
        return Err(TwistedError::SamplingUnsupported(
            "abelianization generators must share one order and have trivial powers".into(),
        ));
    }
    Ok(first)
}

fn unit(rng: &mut impl Rng, m: Option<i64>) -> i64 {
    match m {
        None => {
            if rng.gen_bool(0.5) {
                1
            } else {
                -1
            }
        }
        Some(m) => loop {
            let u = rng.gen_range(1..m.max(2));
            if u.gcd(&m) == 1 {
                return u;
            }
        },
    }
}

/// `P·D·U·L` with `P` a permutation, `D` a diagonal of units and `U`, `L`
/// unitriangular with entries in `[-2, 2]`; columns are returned.
fn random_unimodular(rng: &mut impl Rng, n: usize, m: Option<i64>) -> Vec<Vec<i64>> {
    let mut u = vec![vec![0i64; n]; n];
    let mut l = vec![vec![0i64; n]; n];
    for i in 0..n {
        u[i][i] = 1;
        l[i][i] = 1;
        for j in 0..n {
            if j > i {
                u[i][j] = rng.gen_range(-2..=2);
            } else if j < i {
                l[i][j] = rng.gen_range(-2..=2);
            }
        }
    }
    let mul = |a: &Vec<Vec<i64>>, b: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
            .collect()
    };
    let ul = mul(&u, &l);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let d: Vec<i64> = (0..n).map(|_| unit(rng, m)).collect();
    // row i of P·D·(U·L) is d[perm[i]] times row perm[i]
    (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    let x = d[perm[i]] * ul[perm[i]][j];
                    match m {
                        None => x,
                        Some(m) => x.rem_euclid(m),
                    }
                })
                .collect()
        })
        .collect()
}

/// A random automorphism: a random invertible matrix on the abelianization,
/// lifted with random corrections from `γ₂`, extended to the remaining
/// generators through their defining commutators and validated.
pub fn random_automorphism(g: &Arc<PcPresentation>, rng: &mut impl Rng) -> Result<GroupMap, TwistedError> {
    let top = g.layer(1);
    let n1 = top.len();
    let modulus = top_modulus(g)?;
    let defs = definitions(g)?;
    for _ in 0..ATTEMPTS {
        let cols = random_unimodular(rng, n1, modulus);
        let mut images: Vec<PcElement> = Vec::with_capacity(g.len());
        for col in &cols {
            let mut e = vec![0i64; g.len()];
            e[..n1].copy_from_slice(col);
            for (k, x) in e.iter_mut().enumerate().skip(n1) {
                *x = match g.relative_orders()[k] {
                    None => rng.gen_range(-1..=1),
                    Some(m) => rng.gen_range(0..m),
                };
            }
            images.push(g.element(&e));
        }
        let mut ok = true;
        for (k, &(j, i, eps)) in (n1..).zip(&defs) {
            let comm = g.commutator(&images[j], &images[i]);
            let power = match g.relative_orders()[k] {
                None if eps.abs() == 1 => eps,
                Some(m) if trivial_power(g, k) && eps.gcd(&m) == 1 => {
                    let (_, inv, _) = crate::intlat::ext_gcd(&eps.rem_euclid(m), &m);
                    inv.rem_euclid(m)
                }
                _ => {
                    ok = false;
                    break;
                }
            };
            images.push(g.pow(&comm, power));
        }
        if !ok {
            return Err(TwistedError::SamplingUnsupported(format!(
                "defining commutator of a weight ≥ 2 generator has exponent that cannot be inverted in {}",
                g.name()
            )));
        }
        if let Ok(f) = check_map(g, g, images, MapKind::Automorphism) {
            return Ok(f);
        }
    }
    Err(TwistedError::SamplingUnsupported(format!(
        "no valid automorphism of {} found in {ATTEMPTS} attempts",
        g.name()
    )))
}

/// `budget` random automorphisms with their Reidemeister numbers. Sample `i`
/// draws from stream `i` of a ChaCha generator seeded with `seed`, so the
/// output does not depend on scheduling.
pub fn spectrum_sample(g: &Arc<PcPresentation>, budget: usize, seed: u64) -> Result<Vec<SpectrumSample>, TwistedError> {
    top_modulus(g)?;
    definitions(g)?;
    (0..budget)
        .into_par_iter()
        .map(|index| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(index as u64);
            let map = random_automorphism(g, &mut rng)?;
            let value = match reidemeister(&map)?.count() {
                Some(n) => SpectrumValue::Finite(n),
                None => SpectrumValue::Infinite,
            };
            Ok(SpectrumSample { index, map, value })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freenil::build_free_nilpotent;
    use crate::pc::parse_presentation;

    #[test]
    fn samples_are_automorphisms_and_reproducible() {
        let g = Arc::new(build_free_nilpotent(2, 2).unwrap());
        let a = spectrum_sample(&g, 12, 7).unwrap();
        let b = spectrum_sample(&g, 12, 7).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.map.images(), y.map.images());
            assert_eq!(x.value, y.value);
            assert_eq!(x.map.kind(), MapKind::Automorphism);
        }
    }

    #[test]
    fn finite_heisenberg_sampler() {
        let g = Arc::new(parse_presentation("pcgroup H3\ngens a b c\norders 3 3 3\nconj b a = b c^2\n").unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..5 {
            random_automorphism(&g, &mut rng).unwrap();
        }
    }

    #[test]
    fn mixed_orders_unsupported() {
        let g = Arc::new(parse_presentation("pcgroup M\ngens x y\norders 2 0\n").unwrap());
        assert!(matches!(
            spectrum_sample(&g, 1, 0).unwrap_err(),
            TwistedError::SamplingUnsupported(_)
        ));
    }
}
