use std::collections::HashMap;

use crate::intlat::{hnf, Hermite, Int, Matrix};
use crate::pc::{PcPresentation, Relations, Word};

use super::{hall_basis, FreenilError, HallBasis, Monomial, TruncatedSeries};

/// Default cap on the Hirsch length of a constructed group.
pub const DEFAULT_MAX_HIRSCH: usize = 100;

/// `N_{r,c}` realized in the truncated Magnus algebra. Each Hall generator
/// is a series: `1 + x_i` for letters, and for `[u, v]` the group commutator
/// `[b_v, b_u]`, so that `a1, a2` satisfy `[a1, a2] = c1`.
#[derive(Clone)]
pub struct FreeNilpotent<T> {
    basis: HallBasis,
    elements: Vec<TruncatedSeries<T>>,
    /// Per weight: the monomials of that degree and a Hermite form of the
    /// matrix whose columns are the leading Lie polynomials of that weight.
    solvers: Vec<(HashMap<Monomial, usize>, Hermite<T>)>,
}

impl<T: Int> FreeNilpotent<T> {
    pub fn new(r: usize, c: usize) -> Result<Self, FreenilError> {
        let basis = hall_basis(r, c);
        let mut elements: Vec<TruncatedSeries<T>> = Vec::with_capacity(basis.len());
        for e in &basis.elements {
            let s = match e.parts {
                None => TruncatedSeries::generator(r, c, elements.len()),
                Some((u, v)) => elements[v].commutator(&elements[u])?,
            };
            elements.push(s);
        }
        let mut solvers = Vec::with_capacity(c);
        for w in 1..=c {
            let monomials = all_monomials(r, w);
            let index: HashMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            let columns: Vec<Vec<T>> = basis
                .elements
                .iter()
                .zip(&elements)
                .filter(|(e, _)| e.weight == w)
                .map(|(_, s)| dense(s, w, &index))
                .collect();
            let h = hnf(&Matrix::from_columns(monomials.len(), &columns));
            debug_assert_eq!(h.rank(), columns.len(), "Lie polynomials independent");
            solvers.push((index, h));
        }
        Ok(FreeNilpotent {
            basis,
            elements,
            solvers,
        })
    }

    pub fn basis(&self) -> &HallBasis {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rank
    }

    pub fn class(&self) -> usize {
        self.basis.class
    }

    /// Series of the `k`-th Hall generator.
    pub fn element(&self, k: usize) -> &TruncatedSeries<T> {
        &self.elements[k]
    }

    /// Magnus image of a word in the Hall generators.
    pub fn image(&self, word: &[(usize, i64)]) -> Result<TruncatedSeries<T>, FreenilError> {
        let mut s = TruncatedSeries::one(self.rank(), self.class());
        for &(k, e) in word {
            s = s.mul(&self.elements[k].pow(e)?)?;
        }
        Ok(s)
    }

    /// Exponents `e` with `u = ∏ b_k^{e_k}` in Hall order, extracted weight by
    /// weight: the lowest homogeneous part of `u − 1` is solved against the
    /// Lie polynomials of that weight and the corresponding factor stripped.
    pub fn malcev_coordinates(&self, u: &TruncatedSeries<T>) -> Result<Vec<i64>, FreenilError> {
        if (u.rank(), u.class()) != (self.rank(), self.class()) {
            return Err(FreenilError::RankClassMismatch);
        }
        if !u.constant().is_one() {
            return Err(FreenilError::NotInGroup);
        }
        let mut exps = vec![0i64; self.basis.len()];
        let mut rest = u.clone();
        let mut offset = 0;
        for w in 1..=self.class() {
            let (index, h) = &self.solvers[w - 1];
            let count = h.h.cols();
            let lowest = rest.valuation();
            if lowest.is_some_and(|d| d < w) {
                return Err(FreenilError::NotInGroup);
            }
            if lowest == Some(w) {
                let target = dense(&rest, w, index);
                let coeffs = h.solve(&target).ok_or(FreenilError::NotInGroup)?;
                let mut factor = TruncatedSeries::one(self.rank(), self.class());
                for (k, c) in coeffs.iter().enumerate() {
                    let e = c.to_i64().ok_or(FreenilError::NotInGroup)?;
                    exps[offset + k] = e;
                    if e != 0 {
                        factor = factor.mul(&self.elements[offset + k].pow(e)?)?;
                    }
                }
                rest = factor.inv()?.mul(&rest)?;
            }
            offset += count;
        }
        if !rest.is_one() {
            return Err(FreenilError::NotInGroup);
        }
        Ok(exps)
    }

    /// The pc presentation on the Hall generators. Pairs whose weights sum
    /// past the class commute; every other conjugation relation is read off
    /// from the Mal'cev coordinates of `[b_j, b_i]`.
    pub fn presentation(&self) -> Result<PcPresentation, FreenilError> {
        let n = self.basis.len();
        let weights = self.basis.weights();
        let mut rel = Relations::default();
        for j in 0..n {
            for i in 0..j {
                if weights[i] + weights[j] > self.class() {
                    continue;
                }
                let comm = self.elements[j].commutator(&self.elements[i])?;
                let tail = self.malcev_coordinates(&comm)?;
                if tail.iter().all(|&e| e == 0) {
                    continue;
                }
                let mut w: Word = vec![(j, 1)];
                w.extend(tail.iter().enumerate().filter(|(_, &e)| e != 0).map(|(k, &e)| (k, e)));
                rel.conj.push(((j, i), w));
            }
        }
        let names = self.basis.elements.iter().map(|e| e.name.clone()).collect();
        let name = format!("N{}_{}", self.rank(), self.class());
        Ok(PcPresentation::with_weights(name, names, vec![None; n], rel, weights)?)
    }
}

impl<T: Int> std::fmt::Debug for FreeNilpotent<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "FreeNilpotent(r = {}, c = {}, {} generators)",
            self.rank(),
            self.class(),
            self.basis.len()
        )
    }
}

/// `build_free_nilpotent` with the default Hirsch-length cap.
pub fn build_free_nilpotent(r: usize, c: usize) -> Result<PcPresentation, FreenilError> {
    build_free_nilpotent_bounded(r, c, DEFAULT_MAX_HIRSCH)
}

pub fn build_free_nilpotent_bounded(r: usize, c: usize, max_hirsch: usize) -> Result<PcPresentation, FreenilError> {
    if r == 0 || c == 0 {
        return Err(FreenilError::BadParameters);
    }
    let size = hall_basis(r, c).len();
    if size > max_hirsch {
        return Err(FreenilError::TooLarge {
            size,
            bound: max_hirsch,
        });
    }
    FreeNilpotent::<i128>::new(r, c)?.presentation()
}

fn all_monomials(r: usize, w: usize) -> Vec<Monomial> {
    let mut out = vec![Vec::new()];
    for _ in 0..w {
        out = out
            .into_iter()
            .flat_map(|m| {
                (0..r as u8).map(move |l| {
                    let mut m = m.clone();
                    m.push(l);
                    m
                })
            })
            .collect();
    }
    out
}

fn dense<T: Int>(s: &TruncatedSeries<T>, w: usize, index: &HashMap<Monomial, usize>) -> Vec<T> {
    let mut v = vec![T::zero(); index.len()];
    for (m, c) in s.grade(w) {
        v[index[m]] = c.clone();
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn coordinates_of_ab_and_ba() {
        let f = FreeNilpotent::<BigInt>::new(2, 2).unwrap();
        let ab = f.image(&[(0, 1), (1, 1)]).unwrap();
        assert_eq!(f.malcev_coordinates(&ab).unwrap(), vec![1, 1, 0]);
        let ba = f.image(&[(1, 1), (0, 1)]).unwrap();
        assert_eq!(f.malcev_coordinates(&ba).unwrap(), vec![1, 1, -1]);
        let one = TruncatedSeries::one(2, 2);
        assert_eq!(f.malcev_coordinates(&one).unwrap(), vec![0, 0, 0]);
        let bad = TruncatedSeries::from_terms(2, 2, [(vec![], BigInt::from(1)), (vec![0, 0], BigInt::from(1))]);
        assert_eq!(f.malcev_coordinates(&bad).unwrap_err(), FreenilError::NotInGroup);
    }

    #[test]
    fn heisenberg_from_builder() {
        let g = build_free_nilpotent(2, 2).unwrap();
        assert_eq!(g.len(), 3);
        let (a, b, c) = (g.generator(0), g.generator(1), g.generator(2));
        assert_eq!(g.commutator(&a, &b), c);
        assert_eq!(g.weights(), &[1, 1, 2]);
    }

    #[test]
    fn class_two_rank_three_is_central() {
        let g = build_free_nilpotent(3, 2).unwrap();
        assert_eq!(g.len(), 6);
        for k in 3..6 {
            for i in 0..6 {
                assert!(g.commutator(&g.generator(k), &g.generator(i)).is_identity());
            }
        }
        let z = build_free_nilpotent(2, 1).unwrap();
        assert_eq!(z.len(), 2);
        assert!(z.relations().conj.is_empty());
    }

    #[test]
    fn round_trip_coordinates() {
        let f = FreeNilpotent::<i128>::new(2, 4).unwrap();
        let e = vec![2, -1, 3, 0, -2, 1, 0, 4];
        let word: Vec<(usize, i64)> = e.iter().enumerate().map(|(k, &x)| (k, x)).collect();
        assert_eq!(f.malcev_coordinates(&f.image(&word).unwrap()).unwrap(), e);
    }

    #[test]
    fn size_guard() {
        assert_eq!(
            build_free_nilpotent_bounded(2, 8, 60).unwrap_err(),
            FreenilError::TooLarge { size: 71, bound: 60 }
        );
    }
}
