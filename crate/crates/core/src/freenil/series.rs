use std::collections::HashMap;
use std::fmt;

use crate::intlat::Int;

use super::FreenilError;

/// A noncommutative monomial: a word in the letters `0..r`.
pub type Monomial = Vec<u8>;

/// An element of `Z⟨x₁, …, x_r⟩` truncated above degree `c`, stored by degree.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries<T> {
    rank: usize,
    class: usize,
    grades: Vec<HashMap<Monomial, T>>,
}

impl<T: Int> TruncatedSeries<T> {
    pub fn zero(rank: usize, class: usize) -> Self {
        TruncatedSeries {
            rank,
            class,
            grades: vec![HashMap::new(); class + 1],
        }
    }

    pub fn one(rank: usize, class: usize) -> Self {
        let mut s = Self::zero(rank, class);
        s.grades[0].insert(Vec::new(), T::one());
        s
    }

    /// `1 + x_i`, the image of the `i`-th free generator.
    pub fn generator(rank: usize, class: usize, i: usize) -> Self {
        assert!(i < rank);
        let mut s = Self::one(rank, class);
        if class >= 1 {
            s.grades[1].insert(vec![i as u8], T::one());
        }
        s
    }

    pub fn from_terms(rank: usize, class: usize, terms: impl IntoIterator<Item = (Monomial, T)>) -> Self {
        let mut s = Self::zero(rank, class);
        for (m, c) in terms {
            assert!(m.iter().all(|&l| (l as usize) < rank), "letter out of range");
            if m.len() <= class {
                s.add_term(m, c);
            }
        }
        s
    }

    fn add_term(&mut self, m: Monomial, c: T) {
        if c.is_zero() {
            return;
        }
        let grade = &mut self.grades[m.len()];
        match grade.get_mut(&m) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    grade.remove(&m);
                }
            }
            None => {
                grade.insert(m, c);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn coefficient(&self, m: &[u8]) -> T {
        self.grades
            .get(m.len())
            .and_then(|g| g.get(m))
            .cloned()
            .unwrap_or_else(T::zero)
    }

    pub fn constant(&self) -> T {
        self.coefficient(&[])
    }

    /// Homogeneous part of degree `d`.
    pub fn grade(&self, d: usize) -> &HashMap<Monomial, T> {
        &self.grades[d]
    }

    /// Least positive degree with a nonzero term.
    pub fn valuation(&self) -> Option<usize> {
        (1..=self.class).find(|&d| !self.grades[d].is_empty())
    }

    pub fn is_one(&self) -> bool {
        self.constant().is_one() && self.valuation().is_none()
    }

    fn check(&self, other: &Self) -> Result<(), FreenilError> {
        if (self.rank, self.class) != (other.rank, other.class) {
            return Err(FreenilError::RankClassMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, FreenilError> {
        self.check(other)?;
        let mut s = self.clone();
        for g in &other.grades {
            for (m, c) in g {
                s.add_term(m.clone(), c.clone());
            }
        }
        Ok(s)
    }

    pub fn scale(&self, k: &T) -> Self {
        let mut s = Self::zero(self.rank, self.class);
        if k.is_zero() {
            return s;
        }
        for (d, g) in self.grades.iter().enumerate() {
            s.grades[d] = g.iter().map(|(m, c)| (m.clone(), c.clone() * k.clone())).collect();
        }
        s
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FreenilError> {
        self.check(other)?;
        let mut out = Self::zero(self.rank, self.class);
        for (da, ga) in self.grades.iter().enumerate() {
            if ga.is_empty() {
                continue;
            }
            for (db, gb) in other.grades.iter().enumerate().take(self.class + 1 - da) {
                if gb.is_empty() {
                    continue;
                }
                let target = &mut out.grades[da + db];
                for (ma, ca) in ga {
                    for (mb, cb) in gb {
                        let mut m = Vec::with_capacity(da + db);
                        m.extend_from_slice(ma);
                        m.extend_from_slice(mb);
                        let entry = target.entry(m).or_insert_with(T::zero);
                        *entry = entry.clone() + ca.clone() * cb.clone();
                    }
                }
                target.retain(|_, v| !v.is_zero());
            }
        }
        Ok(out)
    }

    /// Inverse of a series with constant term `1`: `Σ (−β)^k` for `u = 1 + β`.
    pub fn inv(&self) -> Result<Self, FreenilError> {
        if !self.constant().is_one() {
            return Err(FreenilError::NotAUnit);
        }
        let beta = self.without_constant();
        let neg = beta.scale(&-T::one());
        let mut out = Self::one(self.rank, self.class);
        let mut term = Self::one(self.rank, self.class);
        let steps = match beta.valuation() {
            Some(w) => self.class / w,
            None => 0,
        };
        for _ in 0..steps {
            term = term.mul(&neg)?;
            out = out.add(&term)?;
        }
        Ok(out)
    }

    fn without_constant(&self) -> Self {
        let mut s = self.clone();
        s.grades[0].clear();
        s
    }

    /// `u^e` for `u = 1 + β` by the binomial series `Σ C(e, k) β^k`, which
    /// has at most `c / v(β)` nonconstant terms.
    pub fn pow(&self, e: i64) -> Result<Self, FreenilError> {
        if !self.constant().is_one() {
            return Err(FreenilError::NotAUnit);
        }
        let beta = self.without_constant();
        let mut out = Self::one(self.rank, self.class);
        if e == 0 {
            return Ok(out);
        }
        let steps = match beta.valuation() {
            Some(w) => self.class / w,
            None => 0,
        };
        let e = T::from_i64(e).expect("exponent fits scalar");
        let mut binom = T::one();
        let mut term = Self::one(self.rank, self.class);
        for k in 1..=steps {
            let kk = T::from_usize(k).expect("small");
            binom = binom * (e.clone() - kk.clone() + T::one()) / kk;
            if binom.is_zero() {
                break;
            }
            term = term.mul(&beta)?;
            out = out.add(&term.scale(&binom))?;
        }
        Ok(out)
    }

    /// Group commutator `u⁻¹·v⁻¹·u·v`.
    pub fn commutator(&self, other: &Self) -> Result<Self, FreenilError> {
        let uv = self.mul(other)?;
        let vu = other.mul(self)?;
        vu.inv()?.mul(&uv)
    }

    /// All terms, ordered by degree then monomial.
    pub fn terms(&self) -> Vec<(Monomial, T)> {
        let mut out = Vec::new();
        for g in &self.grades {
            let mut ts: Vec<(Monomial, T)> = g.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
            ts.sort();
            out.extend(ts);
        }
        out
    }
}

impl<T: Int> fmt::Debug for TruncatedSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for l in m {
                write!(f, "·x{}", l + 1)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type S = TruncatedSeries<BigInt>;

    fn x(i: u8) -> Monomial {
        vec![i]
    }

    #[test]
    fn truncated_inverse_pair() {
        let u = S::generator(1, 2, 0);
        let v = S::from_terms(1, 2, [(vec![], 1.into()), (x(0), (-1).into()), (vec![0, 0], 1.into())]);
        assert!(u.mul(&v).unwrap().is_one());
        assert_eq!(u.inv().unwrap(), v);
        assert!(S::one(2, 3).inv().unwrap().is_one());
    }

    #[test]
    fn degree_two_expansion() {
        let p = S::generator(2, 2, 0).mul(&S::generator(2, 2, 1)).unwrap();
        let want = S::from_terms(
            2,
            2,
            [
                (vec![], 1.into()),
                (x(0), 1.into()),
                (x(1), 1.into()),
                (vec![0, 1], 1.into()),
            ],
        );
        assert_eq!(p, want);
    }

    #[test]
    fn inverse_of_sum() {
        let u = S::from_terms(2, 2, [(vec![], 1.into()), (x(0), 1.into()), (x(1), 1.into())]);
        let inv = u.inv().unwrap();
        assert!(u.mul(&inv).unwrap().is_one());
        assert_eq!(inv.coefficient(&[0, 1]), BigInt::from(1));
        assert_eq!(inv.coefficient(&[1]), BigInt::from(-1));
    }

    #[test]
    fn powers_and_errors() {
        let a = S::generator(2, 4, 0);
        let a3 = a.pow(3).unwrap();
        assert_eq!(a3, a.mul(&a).unwrap().mul(&a).unwrap());
        assert_eq!(a.pow(-2).unwrap(), a.inv().unwrap().pow(2).unwrap());
        assert_eq!(S::zero(1, 2).inv().unwrap_err(), FreenilError::NotAUnit);
        assert_eq!(a.mul(&S::one(2, 3)).unwrap_err(), FreenilError::RankClassMismatch);
    }

    #[test]
    fn commutator_leading_term_is_lie_bracket() {
        let a = S::generator(2, 3, 0);
        let b = S::generator(2, 3, 1);
        let c = a.commutator(&b).unwrap();
        assert_eq!(c.valuation(), Some(2));
        assert_eq!(c.coefficient(&[0, 1]), BigInt::from(1));
        assert_eq!(c.coefficient(&[1, 0]), BigInt::from(-1));
    }
}
