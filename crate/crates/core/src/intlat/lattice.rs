use std::fmt;

use super::{hnf, snf, Hermite, Int, IntlatError, Matrix, SmithDecomposition};

/// Index of a sublattice: a positive integer or infinite.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Index<T> {
    Finite(T),
    Infinite,
}

impl<T: Int> Index<T> {
    pub fn is_finite(&self) -> bool {
        matches!(self, Index::Finite(_))
    }

    pub fn finite(&self) -> Option<&T> {
        match self {
            Index::Finite(n) => Some(n),
            Index::Infinite => None,
        }
    }
}

impl<T: fmt::Display> fmt::Display for Index<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(n) => write!(f, "{n}"),
            Index::Infinite => write!(f, "infinite"),
        }
    }
}

/// A sublattice of `Zⁿ`, stored as its canonical column Hermite basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lattice<T> {
    ambient: usize,
    basis: Matrix<T>,
}

impl<T: Int> Lattice<T> {
    /// Span of the columns of `generators` (`ambient` rows).
    pub fn from_generators(generators: &Matrix<T>) -> Self {
        let h = hnf(generators);
        Lattice {
            ambient: generators.rows(),
            basis: h.basis(),
        }
    }

    pub fn from_vectors(ambient: usize, vectors: &[Vec<T>]) -> Self {
        Self::from_generators(&Matrix::from_columns(ambient, vectors))
    }

    pub fn zero(ambient: usize) -> Self {
        Lattice {
            ambient,
            basis: Matrix::zeros(ambient, 0),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Lattice {
            ambient,
            basis: Matrix::identity(ambient),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix<T> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<T>> {
        self.basis.columns()
    }

    /// Sum of two sublattices of the same ambient space.
    pub fn join(&self, other: &Lattice<T>) -> Lattice<T> {
        assert_eq!(self.ambient, other.ambient);
        Self::from_generators(&self.basis.hcat(&other.basis))
    }

    pub fn index(&self) -> Index<T> {
        if self.rank() < self.ambient {
            Index::Infinite
        } else {
            Index::Finite(self.basis.det().abs())
        }
    }

    fn hermite(&self) -> Hermite<T> {
        // The stored basis is already reduced; this recovers pivot data.
        hnf(&self.basis)
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.hermite().solve(v).is_some()
    }

    /// Coefficients of `v` over the stored basis.
    pub fn coordinates(&self, v: &[T]) -> Option<Vec<T>> {
        self.hermite().solve(v)
    }

    pub fn smith(&self) -> SmithDecomposition<T> {
        snf(&self.basis)
    }

    /// Coset representatives of `Zⁿ / L`, ordered lexicographically in the
    /// Smith coordinate box `∏ [0, dᵢ)` and mapped back to `Zⁿ`.
    pub fn transversal(&self) -> Result<Vec<Vec<T>>, IntlatError> {
        if self.rank() < self.ambient {
            return Err(IntlatError::IndexInfinite);
        }
        let smith = self.smith();
        let diag = smith.diagonal();
        let mut out = Vec::new();
        let mut y = vec![T::zero(); self.ambient];
        loop {
            out.push(smith.u_inv.mul_vec(&y));
            // odometer with the last coordinate fastest
            let mut k = self.ambient;
            loop {
                if k == 0 {
                    return Ok(out);
                }
                k -= 1;
                y[k] = y[k].clone() + T::one();
                if y[k] < diag[k] {
                    break;
                }
                y[k] = T::zero();
            }
        }
    }

    /// Smith coordinates of `v` reduced into the transversal box; two vectors
    /// are congruent modulo `L` exactly when these agree.
    pub fn coset_key(&self, v: &[T]) -> Result<Vec<T>, IntlatError> {
        if self.rank() < self.ambient {
            return Err(IntlatError::IndexInfinite);
        }
        let smith = self.smith();
        let y = smith.u.mul_vec(v);
        Ok(y.into_iter()
            .zip(smith.diagonal())
            .map(|(a, d)| a.mod_floor(&d))
            .collect())
    }

    /// A primitive nonzero vector `y` with `y·b = 0` for every basis vector
    /// `b`, when the lattice is not of full rank.
    pub fn annihilator(&self) -> Option<Vec<T>> {
        if self.rank() == self.ambient {
            return None;
        }
        let smith = self.smith();
        let rank = smith.rank();
        let row = smith.u.row(rank);
        Some(primitive(row))
    }
}

/// Divides out the content and makes the first nonzero entry positive.
pub fn primitive<T: Int>(v: Vec<T>) -> Vec<T> {
    let g = v.iter().fold(T::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return v;
    }
    let neg = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    v.into_iter()
        .map(|x| {
            let q = x / g.clone();
            if neg {
                -q
            } else {
                q
            }
        })
        .collect()
}

impl<T: fmt::Debug> fmt::Debug for Lattice<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice(Z^{}, basis {:?})", self.ambient, self.basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn index_examples() {
        let two_z = Lattice::from_vectors(1, &[b(&[2])]);
        assert_eq!(two_z.index(), Index::Finite(BigInt::from(2)));
        let diag = Lattice::from_vectors(2, &[b(&[1, 1])]);
        assert_eq!(diag.index(), Index::Infinite);
        assert_eq!(Lattice::<BigInt>::full(2).index(), Index::Finite(BigInt::from(1)));
    }

    #[test]
    fn transversal_examples() {
        let two_z = Lattice::from_vectors(1, &[b(&[2])]);
        assert_eq!(two_z.transversal().unwrap(), vec![b(&[0]), b(&[1])]);
        let twos = Lattice::from_vectors(2, &[b(&[2, 0]), b(&[0, 2])]);
        let mut t = twos.transversal().unwrap();
        t.sort();
        assert_eq!(t, vec![b(&[0, 0]), b(&[0, 1]), b(&[1, 0]), b(&[1, 1])]);
        assert_eq!(Lattice::<BigInt>::full(1).transversal().unwrap(), vec![b(&[0])]);
        assert_eq!(
            Lattice::from_vectors(2, &[b(&[1, 1])]).transversal(),
            Err(IntlatError::IndexInfinite)
        );
    }

    #[test]
    fn annihilator_kills_basis() {
        let l = Lattice::from_vectors(3, &[b(&[1, 2, 3]), b(&[2, 4, 7])]);
        let y = l.annihilator().unwrap();
        for v in l.basis_vectors() {
            let dot: BigInt = y.iter().zip(&v).map(|(a, b)| a * b).sum();
            assert_eq!(dot, BigInt::from(0));
        }
        assert!(y.iter().any(|x| *x != BigInt::from(0)));
        assert!(Lattice::<BigInt>::full(2).annihilator().is_none());
    }

    #[test]
    fn hermite_basis_is_canonical() {
        let a = Lattice::from_vectors(2, &[b(&[2, 0]), b(&[1, 1])]);
        let c = Lattice::from_vectors(2, &[b(&[1, 1]), b(&[3, 1]), b(&[0, 2])]);
        assert_eq!(a, c);
    }
}
