use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::intlat::{snf, Matrix};

use super::{PcElement, PcPresentation, Subgroup};

/// The abelian quotient `U/V` for subgroups `V ⊴ U` with `[U, U] ⊆ V`,
/// written as `Z^f ⊕ Z_{d₁} ⊕ …` in Smith coordinates.
///
/// Coordinates come from the induced sequence of `U`: an element
/// `∏ u_k^{e_k}` maps to `U·e` reduced by the invariants, where `U` is the
/// row transform of the Smith form of the relation lattice of `U/V`.
#[derive(Clone, Debug)]
pub struct AbelianSection {
    top: Subgroup,
    bottom: Subgroup,
    invariants: Vec<i64>,
    keep: Vec<usize>,
    u: Matrix<BigInt>,
    u_inv: Matrix<BigInt>,
}

impl AbelianSection {
    pub fn new(g: &PcPresentation, top: &Subgroup, bottom: &Subgroup) -> Self {
        let m = top.len();
        let rows = top.gens();
        let dec = |x: &PcElement| -> Vec<BigInt> {
            top.decompose(g, x)
                .expect("relation lies in the top subgroup")
                .into_iter()
                .map(BigInt::from)
                .collect()
        };
        let mut rel: Vec<Vec<BigInt>> = Vec::new();
        for (k, o) in top.relative_orders(g).into_iter().enumerate() {
            if let Some(r) = o {
                let mut v: Vec<BigInt> = dec(&g.pow(&rows[k], r)).into_iter().map(|x| -x).collect();
                v[k] += r;
                rel.push(v);
            }
        }
        for q in 0..m {
            for p in 0..q {
                let c = g.commutator(&rows[q], &rows[p]);
                if !c.is_identity() {
                    rel.push(dec(&c));
                }
            }
        }
        for b in bottom.gens() {
            rel.push(dec(b));
        }
        rel.retain(|v| v.iter().any(|x| !x.is_zero()));
        let smith = snf(&Matrix::from_columns(m, &rel));
        let diag = smith.diagonal();
        let mut invariants = Vec::new();
        let mut keep = Vec::new();
        for i in 0..m {
            let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
            if d.is_one() {
                continue;
            }
            keep.push(i);
            invariants.push(d.to_i64().expect("invariant factor fits i64"));
        }
        AbelianSection {
            top: top.clone(),
            bottom: bottom.clone(),
            invariants,
            keep,
            u: smith.u,
            u_inv: smith.u_inv,
        }
    }

    pub fn top(&self) -> &Subgroup {
        &self.top
    }

    pub fn bottom(&self) -> &Subgroup {
        &self.bottom
    }

    /// Number of cyclic coordinates.
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    /// Per coordinate: `0` for a free factor, otherwise the cyclic order.
    pub fn invariants(&self) -> &[i64] {
        &self.invariants
    }

    pub fn free_rank(&self) -> usize {
        self.invariants.iter().filter(|&&d| d == 0).count()
    }

    pub fn torsion(&self) -> Vec<i64> {
        self.invariants.iter().copied().filter(|&d| d != 0).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }

    /// Order of the section when finite.
    pub fn order(&self) -> Option<u128> {
        self.invariants
            .iter()
            .try_fold(1u128, |acc, &d| if d == 0 { None } else { acc.checked_mul(d as u128) })
    }

    /// Coordinates of `x ∈ U` in the section; `None` when `x ∉ U`.
    pub fn coords(&self, g: &PcPresentation, x: &PcElement) -> Option<Vec<i64>> {
        let e: Vec<BigInt> = self.top.decompose(g, x)?.into_iter().map(BigInt::from).collect();
        Some(self.coords_of_exponents(&e))
    }

    fn coords_of_exponents(&self, e: &[BigInt]) -> Vec<i64> {
        let y = self.u.mul_vec(e);
        self.keep
            .iter()
            .zip(&self.invariants)
            .map(|(&i, &d)| {
                let v = if d == 0 {
                    y[i].clone()
                } else {
                    num_integer::Integer::mod_floor(&y[i], &BigInt::from(d))
                };
                v.to_i64().expect("coordinate fits i64")
            })
            .collect()
    }

    /// A fixed preimage in `U` of the given coordinates.
    pub fn section(&self, g: &PcPresentation, y: &[i64]) -> PcElement {
        assert_eq!(y.len(), self.rank(), "coordinate length");
        let mut full = vec![BigInt::zero(); self.top.len()];
        for (&i, &v) in self.keep.iter().zip(y) {
            full[i] = BigInt::from(v);
        }
        let e: Vec<i64> = self
            .u_inv
            .mul_vec(&full)
            .into_iter()
            .map(|x| x.to_i64().expect("exponent fits i64"))
            .collect();
        self.top.element(g, &e)
    }

    /// Columns of `diag(invariants)` for torsion coordinates: the lattice that
    /// coordinates are taken modulo.
    pub fn torsion_lattice(&self) -> Vec<Vec<BigInt>> {
        let k = self.rank();
        self.invariants
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(|(i, &d)| {
                let mut v = vec![BigInt::zero(); k];
                v[i] = BigInt::from(d);
                v
            })
            .collect()
    }

    /// Reduces arbitrary coordinates by the invariants.
    pub fn reduce(&self, y: &[i64]) -> Vec<i64> {
        y.iter()
            .zip(&self.invariants)
            .map(|(&v, &d)| if d == 0 { v } else { v.rem_euclid(d) })
            .collect()
    }

    /// Matrix (columns = images of coordinate vectors) of the map induced on
    /// this section by `f`, which must send `U` into `U` and `V` into `V`.
    pub fn induced_matrix(&self, g: &PcPresentation, f: impl Fn(&PcElement) -> PcElement) -> Vec<Vec<i64>> {
        (0..self.rank())
            .map(|j| {
                let mut e = vec![0; self.rank()];
                e[j] = 1;
                let x = f(&self.section(g, &e));
                self.coords(g, &x).expect("map preserves the section")
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn heisenberg_abelianization() {
        let g = heisenberg();
        let whole = Subgroup::whole(&g);
        let ab = AbelianSection::new(&g, &whole, &Subgroup::trivial(&g));
        assert_eq!(ab.invariants(), &[0, 0]);
        assert_eq!(ab.coords(&g, &g.generator(2)), Some(vec![0, 0]));
        let x = g.element(&[3, -2, 7]);
        let y = ab.coords(&g, &x).unwrap();
        let back = ab.section(&g, &y);
        assert_eq!(ab.coords(&g, &back).unwrap(), y);
    }

    #[test]
    fn subgroup_abelianization_kills_c_squared() {
        let g = heisenberg();
        let h = Subgroup::generated(&g, [g.element(&[2, 0, 0]), g.generator(1)]);
        let ab = AbelianSection::new(&g, &h, &Subgroup::trivial(&g));
        assert_eq!(ab.free_rank(), 2);
        assert!(ab.torsion().is_empty());
    }

    #[test]
    fn z2_abelianization_and_torsion() {
        let g = z2();
        let ab = AbelianSection::new(&g, &Subgroup::whole(&g), &Subgroup::trivial(&g));
        assert_eq!(ab.invariants(), &[0, 0]);
        let h = Subgroup::generated(&g, [g.element(&[2, 0]), g.element(&[0, 6])]);
        let q = AbelianSection::new(&g, &Subgroup::whole(&g), &h);
        assert_eq!(q.invariants(), &[2, 6]);
        assert_eq!(q.order(), Some(12));
    }
}
