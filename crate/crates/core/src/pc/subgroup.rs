use crate::intlat::ext_gcd;

use super::{PcElement, PcPresentation};

/// A subgroup given by its canonical induced sequence: one element per
/// occupied depth, leading exponents positive (dividing the relative order
/// when that is finite), and entries of each row at the depths of later rows
/// reduced into `[0, lead)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subgroup {
    ambient: usize,
    rows: Vec<PcElement>,
}

impl Subgroup {
    pub fn trivial(g: &PcPresentation) -> Self {
        Subgroup {
            ambient: g.len(),
            rows: Vec::new(),
        }
    }

    pub fn whole(g: &PcPresentation) -> Self {
        Self::tail(g, 0)
    }

    /// `⟨g_s, g_{s+1}, …⟩`.
    pub fn tail(g: &PcPresentation, start: usize) -> Self {
        Subgroup {
            ambient: g.len(),
            rows: (start..g.len()).map(|i| g.generator(i)).collect(),
        }
    }

    pub fn generated(g: &PcPresentation, gens: impl IntoIterator<Item = PcElement>) -> Self {
        Self::close(g, gens, &[])
    }

    /// Smallest subgroup containing `gens` and normalized by `conjugators`.
    pub fn close(g: &PcPresentation, gens: impl IntoIterator<Item = PcElement>, conjugators: &[PcElement]) -> Self {
        let n = g.len();
        let mut table: Vec<Option<PcElement>> = vec![None; n];
        let mut queue: Vec<PcElement> = gens.into_iter().collect();
        while let Some(mut y) = queue.pop() {
            debug_assert_eq!(y.len(), n);
            while let Some(d) = y.depth() {
                let b = y.0[d];
                let Some(r) = &table[d] else {
                    install(g, &mut table, &mut queue, conjugators, y);
                    break;
                };
                let a = r.0[d];
                if b % a == 0 {
                    y = g.mul(&g.pow(r, -(b / a)), &y);
                    continue;
                }
                let (_, s, t) = ext_gcd(&a, &b);
                let combined = g.mul(&g.pow(r, s), &g.pow(&y, t));
                let old = table[d].take().expect("row present");
                queue.push(old);
                queue.push(y);
                install(g, &mut table, &mut queue, conjugators, combined);
                break;
            }
        }
        let mut rows: Vec<PcElement> = table.into_iter().flatten().collect();
        canonicalize(g, &mut rows);
        Subgroup { ambient: n, rows }
    }

    /// Normal closure of `gens` in the whole group.
    pub fn normal_closure(g: &PcPresentation, gens: impl IntoIterator<Item = PcElement>) -> Self {
        let conj: Vec<PcElement> = (0..g.len()).map(|i| g.generator(i)).collect();
        Self::close(g, gens, &conj)
    }

    /// Normal closure of `gens` inside `self`.
    pub fn normal_closure_in(&self, g: &PcPresentation, gens: impl IntoIterator<Item = PcElement>) -> Self {
        Self::close(g, gens, &self.rows)
    }

    pub fn join(&self, g: &PcPresentation, other: &Subgroup) -> Self {
        Self::generated(g, self.rows.iter().chain(&other.rows).cloned())
    }

    /// The induced sequence.
    pub fn gens(&self) -> &[PcElement] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn ambient_len(&self) -> usize {
        self.ambient
    }

    /// Depth of each row.
    pub fn depths(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.depth().expect("nontrivial row")).collect()
    }

    /// `Some(s)` when the subgroup is exactly `⟨g_s, …, g_n⟩`.
    pub fn as_tail(&self) -> Option<usize> {
        let start = self.ambient - self.rows.len();
        let is_tail = self
            .rows
            .iter()
            .enumerate()
            .all(|(k, r)| *r == PcElement::generator(self.ambient, start + k));
        is_tail.then_some(start)
    }

    /// Relative orders of the induced sequence, `None` for infinite.
    pub fn relative_orders(&self, g: &PcPresentation) -> Vec<Option<i64>> {
        self.rows
            .iter()
            .map(|r| {
                let d = r.depth().expect("nontrivial row");
                g.relative_orders()[d].map(|m| m / r.0[d])
            })
            .collect()
    }

    /// Exponents `e` with `x = ∏ rows[k]^{e_k}`, if `x` lies in the subgroup.
    pub fn decompose(&self, g: &PcPresentation, x: &PcElement) -> Option<Vec<i64>> {
        let mut e = vec![0; self.rows.len()];
        let mut y = x.clone();
        let mut k = 0;
        while let Some(d) = y.depth() {
            while k < self.rows.len() && self.rows[k].depth() < Some(d) {
                k += 1;
            }
            let r = self.rows.get(k).filter(|r| r.depth() == Some(d))?;
            let a = r.0[d];
            let b = y.0[d];
            if b % a != 0 {
                return None;
            }
            e[k] = b / a;
            y = g.mul(&g.pow(r, -e[k]), &y);
        }
        Some(e)
    }

    pub fn contains(&self, g: &PcPresentation, x: &PcElement) -> bool {
        self.decompose(g, x).is_some()
    }

    pub fn contains_subgroup(&self, g: &PcPresentation, other: &Subgroup) -> bool {
        other.rows.iter().all(|r| self.contains(g, r))
    }

    /// `∏ rows[k]^{e_k}`.
    pub fn element(&self, g: &PcPresentation, e: &[i64]) -> PcElement {
        assert_eq!(e.len(), self.rows.len());
        let mut x = g.identity();
        for (r, &k) in self.rows.iter().zip(e) {
            if k != 0 {
                x = g.mul(&x, &g.pow(r, k));
            }
        }
        x
    }

    /// Order of the subgroup when finite.
    pub fn order(&self, g: &PcPresentation) -> Option<u128> {
        self.relative_orders(g)
            .into_iter()
            .try_fold(1u128, |acc, o| o.and_then(|m| acc.checked_mul(m as u128)))
    }
}

fn install(
    g: &PcPresentation,
    table: &mut [Option<PcElement>],
    queue: &mut Vec<PcElement>,
    conjugators: &[PcElement],
    x: PcElement,
) {
    let d = x.depth().expect("installing a nontrivial element");
    let b = x.0[d];
    let x = match g.relative_orders()[d] {
        None => {
            if b < 0 {
                g.inv(&x)
            } else {
                x
            }
        }
        Some(m) => {
            let (lead, k, _) = ext_gcd(&b, &m);
            let y = if k.rem_euclid(m) == 1 {
                x
            } else {
                queue.push(x.clone());
                g.pow(&x, k.rem_euclid(m))
            };
            debug_assert_eq!(y.0[d], lead);
            queue.push(g.pow(&y, m / lead));
            y
        }
    };
    for r in table.iter().flatten() {
        queue.push(g.commutator(&x, r));
    }
    for c in conjugators {
        queue.push(g.commutator(&x, c));
    }
    table[d] = Some(x);
}

fn canonicalize(g: &PcPresentation, rows: &mut [PcElement]) {
    let depths: Vec<usize> = rows.iter().map(|r| r.depth().expect("nontrivial row")).collect();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let dj = depths[j];
            let lead = rows[j].0[dj];
            let q = rows[i].0[dj].div_euclid(lead);
            if q != 0 {
                rows[i] = g.mul(&rows[i], &g.pow(&rows[j], -q));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn gcd_of_generators() {
        let g = z2();
        let h = Subgroup::generated(&g, [g.element(&[2, 0]), g.element(&[3, 0])]);
        assert_eq!(h.gens(), &[g.element(&[1, 0])]);
    }

    #[test]
    fn heisenberg_subgroup_adjoins_commutator() {
        let g = heisenberg();
        let a2 = g.element(&[2, 0, 0]);
        let b = g.generator(1);
        let h = Subgroup::generated(&g, [a2.clone(), b.clone()]);
        assert_eq!(h.gens(), &[a2, b, g.element(&[0, 0, 2])]);
        assert_eq!(h.decompose(&g, &g.generator(2)), None);
        assert!(Subgroup::generated(&g, []).is_trivial());
    }

    #[test]
    fn decompose_reevaluates() {
        let g = z2();
        let h = Subgroup::generated(&g, [g.generator(0)]);
        assert_eq!(h.decompose(&g, &g.element(&[5, 0])), Some(vec![5]));
        assert_eq!(h.decompose(&g, &g.element(&[0, 1])), None);
        let g = heisenberg();
        let h = Subgroup::generated(&g, [g.element(&[1, 1, 0]), g.element(&[0, 2, 5])]);
        let x = g.element(&[3, 4, -7]);
        if let Some(e) = h.decompose(&g, &x) {
            assert_eq!(h.element(&g, &e), x);
        }
        let y = g.mul(&g.pow(&h.gens()[0], 3), &h.gens()[1]);
        let e = h.decompose(&g, &y).unwrap();
        assert_eq!(h.element(&g, &e), y);
    }

    #[test]
    fn finite_relative_orders() {
        let g = heisenberg_mod(3);
        let h = Subgroup::generated(&g, [g.element(&[2, 0, 0])]);
        assert_eq!(h.gens(), &[g.generator(0)]);
        assert_eq!(h.order(&g), Some(3));
        assert_eq!(Subgroup::whole(&g).order(&g), Some(27));
        let n = Subgroup::normal_closure(&g, [g.generator(0)]);
        assert_eq!(n.order(&g), Some(9));
        assert_eq!(Subgroup::normal_closure(&g, [g.generator(2)]).as_tail(), Some(2));
    }
}
