use std::fmt;

/// A sparse word `g_{i₁}^{e₁} g_{i₂}^{e₂} …` over generator indices.
pub type Word = Vec<(usize, i64)>;

/// Inverse of a word: reversed with negated exponents.
pub fn invert_word(w: &[(usize, i64)]) -> Word {
    w.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

/// A group element in normal form: one exponent per generator of the
/// polycyclic sequence (its Mal'cev coordinates).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PcElement(pub(crate) Vec<i64>);

impl PcElement {
    pub fn identity(len: usize) -> Self {
        PcElement(vec![0; len])
    }

    /// Unit vector for generator `g`.
    pub fn generator(len: usize, g: usize) -> Self {
        let mut v = vec![0; len];
        v[g] = 1;
        PcElement(v)
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Index of the first nonzero exponent.
    pub fn depth(&self) -> Option<usize> {
        self.0.iter().position(|&e| e != 0)
    }

    pub fn leading_exponent(&self) -> Option<i64> {
        self.depth().map(|d| self.0[d])
    }

    /// The normal form as a sparse word.
    pub fn to_word(&self) -> Word {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(g, &e)| (g, e))
            .collect()
    }

    /// Same exponents, padded with zeros or cut to `len` generators.
    pub fn resized(&self, len: usize) -> PcElement {
        let mut v = self.0.clone();
        v.resize(len, 0);
        PcElement(v)
    }
}

impl fmt::Debug for PcElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<i64>> for PcElement {
    /// Wraps raw exponents without normalizing them. Use
    /// [`PcPresentation::element`](super::PcPresentation::element) for
    /// arbitrary exponent vectors.
    fn from(v: Vec<i64>) -> Self {
        PcElement(v)
    }
}
