use std::sync::Arc;

use num_bigint::BigInt;

use crate::intlat::{Index, Lattice};

use super::{AbelianSection, PcElement, PcError, PcPresentation, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Homomorphism,
    Endomorphism,
    Automorphism,
}

/// A homomorphism given by the images of the generators of its source.
#[derive(Clone, Debug)]
pub struct GroupMap {
    source: Arc<PcPresentation>,
    target: Arc<PcPresentation>,
    images: Vec<PcElement>,
    kind: MapKind,
}

impl GroupMap {
    pub fn source(&self) -> &Arc<PcPresentation> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PcPresentation> {
        &self.target
    }

    pub fn images(&self) -> &[PcElement] {
        &self.images
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn apply(&self, x: &PcElement) -> PcElement {
        let t = &self.target;
        let mut y = t.identity();
        for (i, &e) in x.exponents().iter().enumerate() {
            if e != 0 {
                y = t.mul(&y, &t.pow(&self.images[i], e));
            }
        }
        y
    }

    pub fn identity(g: &Arc<PcPresentation>) -> Self {
        GroupMap {
            source: g.clone(),
            target: g.clone(),
            images: (0..g.len()).map(|i| g.generator(i)).collect(),
            kind: MapKind::Automorphism,
        }
    }

    /// `x ↦ g⁻¹·f(x)·g`, again an automorphism when `f` is one.
    pub fn twisted_by(&self, g: &PcElement) -> Self {
        let t = &self.target;
        let gi = t.inv(g);
        GroupMap {
            images: self.images.iter().map(|y| t.mul(&gi, &t.mul(y, g))).collect(),
            ..self.clone()
        }
    }

    /// `x ↦ other(self(x))`.
    pub fn then(&self, other: &GroupMap) -> Self {
        assert!(Arc::ptr_eq(&self.target, &other.source) || *self.target.gen_names() == *other.source.gen_names());
        let kind = match (self.kind, other.kind) {
            (MapKind::Automorphism, MapKind::Automorphism) => MapKind::Automorphism,
            (MapKind::Homomorphism, _) | (_, MapKind::Homomorphism) => MapKind::Homomorphism,
            _ => MapKind::Endomorphism,
        };
        GroupMap {
            source: self.source.clone(),
            target: other.target.clone(),
            images: self.images.iter().map(|y| other.apply(y)).collect(),
            kind,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, y)| *y == PcElement::generator(self.source.len(), i))
    }

    /// Images as words in the target's generators.
    pub fn image_words(&self) -> Vec<String> {
        self.images.iter().map(|y| self.target.word_string(y)).collect()
    }
}

/// Validates generator images. Every conjugation and power relation of the
/// source (commuting pairs included) must map to an identity in the target;
/// an automorphism must additionally induce a surjection, hence a bijection,
/// on the abelianization.
pub fn check_map(
    source: &Arc<PcPresentation>,
    target: &Arc<PcPresentation>,
    images: Vec<PcElement>,
    require: MapKind,
) -> Result<GroupMap, PcError> {
    if images.len() != source.len() {
        return Err(PcError::ImageCount {
            expected: source.len(),
            got: images.len(),
        });
    }
    if let Some(y) = images.iter().find(|y| y.len() != target.len()) {
        return Err(PcError::GroupMismatch(format!(
            "image {y:?} has {} exponents, target has {} generators",
            y.len(),
            target.len()
        )));
    }
    let images: Vec<PcElement> = images.iter().map(|y| target.element(y.exponents())).collect();
    if require != MapKind::Homomorphism && source.gen_names() != target.gen_names() {
        return Err(PcError::GroupMismatch("endomorphism between different groups".into()));
    }
    let map = GroupMap {
        source: source.clone(),
        target: target.clone(),
        images,
        kind: require,
    };
    let names = source.gen_names();
    let n = source.len();
    for j in 0..n {
        for i in 0..j {
            let lhs = target.conjugate(&map.images[j], &map.images[i]);
            let rhs = map.apply(&source.evaluate(source.conjugate_relation(j, i)));
            if lhs != rhs {
                return Err(PcError::RelationViolated(format!(
                    "{}^{} = {}",
                    names[j],
                    names[i],
                    source.word_string(&source.evaluate(source.conjugate_relation(j, i)))
                )));
            }
        }
        if let (Some(m), Some(w)) = (source.relative_orders()[j], source.power_relation(j)) {
            let lhs = target.pow(&map.images[j], m);
            let rhs = map.apply(&source.evaluate(w));
            if lhs != rhs {
                return Err(PcError::RelationViolated(format!(
                    "{}^{} = {}",
                    names[j],
                    m,
                    source.word_string(&source.evaluate(w))
                )));
            }
        }
    }
    if require == MapKind::Automorphism && !surjective_on_abelianization(&map) {
        return Err(PcError::NotBijective);
    }
    Ok(map)
}

fn surjective_on_abelianization(map: &GroupMap) -> bool {
    let g = &map.target;
    let ab = AbelianSection::new(g, &Subgroup::whole(g), &Subgroup::tail(g, g.layer_start(2)));
    let mut cols: Vec<Vec<BigInt>> = map
        .images
        .iter()
        .map(|y| {
            ab.coords(g, y)
                .expect("element of G")
                .into_iter()
                .map(BigInt::from)
                .collect()
        })
        .collect();
    cols.extend(ab.torsion_lattice());
    let lattice = Lattice::from_vectors(ab.rank(), &cols);
    lattice.index() == Index::Finite(BigInt::from(1))
}

/// `G/G_s` for a tail `G_s`, with its projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: Arc<PcPresentation>,
    pub cut: usize,
    pub projection: GroupMap,
}

impl Quotient {
    pub fn project(&self, x: &PcElement) -> PcElement {
        PcElement(x.exponents()[..self.cut].to_vec())
    }

    /// The section of the projection: same exponents, zeros on the kernel.
    pub fn lift(&self, x: &PcElement) -> PcElement {
        x.resized(self.projection.source().len())
    }
}

/// Quotient by a normal subgroup generated by a tail of the sequence.
pub fn quotient_mod(g: &Arc<PcPresentation>, n: &Subgroup) -> Result<Quotient, PcError> {
    let cut = n.as_tail().ok_or(PcError::NotTailCompatible)?;
    if !Subgroup::normal_closure(g, n.gens().iter().cloned())
        .as_tail()
        .is_some_and(|s| s == cut)
    {
        return Err(PcError::NotTailCompatible);
    }
    let truncate = |w: &[(usize, i64)]| -> Vec<(usize, i64)> { w.iter().copied().filter(|&(k, _)| k < cut).collect() };
    let mut rel = g.relations();
    rel.conj.retain(|&((j, _), _)| j < cut);
    for (_, w) in &mut rel.conj {
        *w = truncate(w);
    }
    rel.pow.retain(|&(i, _)| i < cut);
    for (_, w) in &mut rel.pow {
        *w = truncate(w);
    }
    let names = g.gen_names()[..cut].to_vec();
    let orders = g.relative_orders()[..cut].to_vec();
    let name = format!("{}_mod_{}", g.name(), cut);
    let on_boundary = (1..=g.class() + 1).any(|w| g.layer_start(w) == cut);
    let q = if on_boundary {
        PcPresentation::with_weights(name, names, orders, rel, g.weights()[..cut].to_vec())?
    } else {
        PcPresentation::new(name, names, orders, rel)?
    };
    let q = Arc::new(q);
    let images = (0..g.len())
        .map(|i| if i < cut { q.generator(i) } else { q.identity() })
        .collect();
    let projection = check_map(g, &q, images, MapKind::Homomorphism)?;
    Ok(Quotient {
        group: q,
        cut,
        projection,
    })
}

/// The map induced by `f` on `q`'s quotient; `f`'s kernel preservation is
/// checked on the generators of the kernel.
pub fn induced_map(f: &GroupMap, q: &Quotient) -> Result<GroupMap, PcError> {
    let induced = f.on_prefix_quotient(&q.group)?;
    for i in 0..f.source.len() {
        let x = f.source.generator(i);
        debug_assert_eq!(q.project(&f.apply(&x)), induced.apply(&q.project(&x)));
    }
    Ok(induced)
}

impl GroupMap {
    /// The endomorphism induced on `quotient`, which must be the quotient of
    /// the source by the tail starting at `quotient.len()`.
    pub fn on_prefix_quotient(&self, quotient: &Arc<PcPresentation>) -> Result<GroupMap, PcError> {
        let cut = quotient.len();
        let g = &self.source;
        if cut > g.len() || quotient.gen_names() != &g.gen_names()[..cut] {
            return Err(PcError::GroupMismatch("not a prefix quotient of the source".into()));
        }
        for k in cut..g.len() {
            if self.images[k].exponents()[..cut].iter().any(|&e| e != 0) {
                return Err(PcError::KernelNotPreserved);
            }
        }
        Ok(GroupMap {
            source: quotient.clone(),
            target: quotient.clone(),
            images: self.images[..cut]
                .iter()
                .map(|y| PcElement(y.exponents()[..cut].to_vec()))
                .collect(),
            kind: self.kind,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    fn swap_map(g: &Arc<PcPresentation>) -> Result<GroupMap, PcError> {
        // a ↦ b, b ↦ ab, c ↦ c⁻¹
        check_map(
            g,
            g,
            vec![g.generator(1), g.element(&[1, 1, 0]), g.element(&[0, 0, -1])],
            MapKind::Automorphism,
        )
    }

    #[test]
    fn heisenberg_automorphism_accepted() {
        let g = Arc::new(heisenberg());
        let f = swap_map(&g).unwrap();
        for (x, y) in [([1, 2, 3], [-1, 0, 4]), ([0, 5, -2], [3, -3, 1])] {
            let (x, y) = (g.element(&x), g.element(&y));
            assert_eq!(f.apply(&g.mul(&x, &y)), g.mul(&f.apply(&x), &f.apply(&y)));
        }
    }

    #[test]
    fn wrong_central_image_is_rejected() {
        let g = Arc::new(heisenberg());
        let bad = check_map(
            &g,
            &g,
            vec![g.generator(1), g.element(&[1, 1, 0]), g.generator(2)],
            MapKind::Automorphism,
        );
        assert!(matches!(bad, Err(PcError::RelationViolated(_))));
    }

    #[test]
    fn non_bijective_rejected() {
        let g = Arc::new(heisenberg());
        let f = check_map(
            &g,
            &g,
            vec![g.element(&[2, 0, 0]), g.generator(1), g.element(&[0, 0, 2])],
            MapKind::Automorphism,
        );
        assert_eq!(f.unwrap_err(), PcError::NotBijective);
        let z = Arc::new(z2());
        assert!(check_map(
            &z,
            &z,
            vec![z.element(&[1, 1]), z.element(&[0, 1])],
            MapKind::Automorphism
        )
        .is_ok());
    }

    #[test]
    fn quotients_and_induced_maps() {
        let g = Arc::new(heisenberg());
        let q = quotient_mod(&g, &Subgroup::tail(&g, 2)).unwrap();
        assert_eq!(q.group.len(), 2);
        assert_eq!(q.group.class(), 1);
        let f = swap_map(&g).unwrap();
        let fbar = induced_map(&f, &q).unwrap();
        assert_eq!(fbar.images(), &[q.group.element(&[0, 1]), q.group.element(&[1, 1])]);
        let same = quotient_mod(&g, &Subgroup::trivial(&g)).unwrap();
        assert_eq!(same.group.len(), 3);
        let id = GroupMap::identity(&g);
        assert!(induced_map(&id, &q).unwrap().is_identity());
        let not_tail = Subgroup::generated(&g, [g.element(&[0, 0, 2])]);
        assert_eq!(quotient_mod(&g, &not_tail).unwrap_err(), PcError::NotTailCompatible);
    }

    #[test]
    fn center_restriction_inverts() {
        let g = Arc::new(heisenberg());
        let f = swap_map(&g).unwrap();
        let center = AbelianSection::new(&g, &Subgroup::tail(&g, 2), &Subgroup::trivial(&g));
        assert_eq!(center.induced_matrix(&g, |x| f.apply(x)), vec![vec![-1]]);
    }
}
