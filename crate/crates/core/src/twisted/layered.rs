use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::intlat::{solve_in_span, Index, Lattice, Matrix};
use crate::pc::{quotient_mod, AbelianSection, GroupMap, MapKind, PcElement, PcPresentation, Subgroup};

use super::{infinity_witness_uc, InfinityWitness, ReidemeisterResult, TwistedClass, TwistedError};

/// `L(C, ψ)` for a central `C`: the image of `μ : x ↦ (xψ)·x⁻¹` on the full
/// preimage `H` of `Fix(ψ̄)`.
#[derive(Clone, Debug)]
pub struct LSubgroupResult {
    /// Coordinates of `C`.
    pub section: AbelianSection,
    /// The induced sequence of `H`.
    pub preimages: Vec<PcElement>,
    /// `c_j = μ(f_j)`, so that `f_j ψ = c_j f_j`.
    pub generators: Vec<PcElement>,
    /// Section coordinates of each `c_j`.
    pub coordinates: Vec<Vec<i64>>,
    /// `L` in section coordinates, torsion of `C` included.
    pub lattice: Lattice<BigInt>,
}

impl LSubgroupResult {
    pub fn index(&self) -> Index<BigInt> {
        self.lattice.index()
    }

    /// `x ∈ H` with `xψ = c·x`, or `None` when `c ∉ L`.
    pub fn preimage_of(&self, g: &PcPresentation, h: &Subgroup, c: &PcElement) -> Option<PcElement> {
        let target: Vec<BigInt> = self.section.coords(g, c)?.into_iter().map(BigInt::from).collect();
        let m = self.coordinates.len();
        let mut cols: Vec<Vec<BigInt>> = self
            .coordinates
            .iter()
            .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        cols.extend(self.section.torsion_lattice());
        let e = solve_in_span(&Matrix::from_columns(self.section.rank(), &cols), &target)?;
        let e: Vec<i64> = e[..m].iter().map(|x| x.to_i64().expect("exponent fits i64")).collect();
        Some(h.element(g, &e))
    }
}

/// Builds the `L` data from `H` (which must contain `C` and map into `C·H`
/// under `μ`).
fn l_core(
    g: &PcPresentation,
    section: &AbelianSection,
    h: &Subgroup,
    psi: &GroupMap,
) -> Result<LSubgroupResult, TwistedError> {
    let mut generators = Vec::with_capacity(h.len());
    let mut coordinates = Vec::with_capacity(h.len());
    for f in h.gens() {
        let c = g.mul(&psi.apply(f), &g.inv(f));
        let y = section.coords(g, &c).ok_or_else(|| {
            TwistedError::MuNotWellDefined(format!(
                "μ({}) = {} lies outside C",
                g.word_string(f),
                g.word_string(&c)
            ))
        })?;
        generators.push(c);
        coordinates.push(y);
    }
    let mut vectors: Vec<Vec<BigInt>> = coordinates
        .iter()
        .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    vectors.extend(section.torsion_lattice());
    let lattice = Lattice::from_vectors(section.rank(), &vectors);
    Ok(LSubgroupResult {
        section: section.clone(),
        preimages: h.gens().to_vec(),
        generators,
        coordinates,
        lattice,
    })
}

/// `G` together with its quotients `G/γ_{k+1}` and the maps induced by `φ`.
#[derive(Clone, Debug)]
pub struct Tower {
    group: Arc<PcPresentation>,
    phi: GroupMap,
    /// `levels[k - 1] = G/γ_{k+1}` for `k = 1..=class`.
    levels: Vec<Arc<PcPresentation>>,
    maps: Vec<GroupMap>,
    sections: Vec<AbelianSection>,
}

impl Tower {
    pub fn new(phi: &GroupMap) -> Result<Self, TwistedError> {
        let g = phi.source().clone();
        let class = g.class();
        let mut levels = Vec::with_capacity(class);
        let mut maps = Vec::with_capacity(class);
        let mut sections = Vec::with_capacity(class);
        for k in 1..=class {
            let level = if k == class {
                g.clone()
            } else {
                quotient_mod(&g, &Subgroup::tail(&g, g.layer_start(k + 1)))?.group
            };
            let map = if k == class {
                phi.clone()
            } else {
                phi.on_prefix_quotient(&level)?
            };
            let c = Subgroup::tail(&level, level.layer_start(k));
            sections.push(AbelianSection::new(&level, &c, &Subgroup::trivial(&level)));
            levels.push(level);
            maps.push(map);
        }
        Ok(Tower {
            group: g,
            phi: phi.clone(),
            levels,
            maps,
            sections,
        })
    }

    pub fn group(&self) -> &Arc<PcPresentation> {
        &self.group
    }

    pub fn map(&self) -> &GroupMap {
        &self.phi
    }

    pub fn class(&self) -> usize {
        self.levels.len()
    }

    /// `G/γ_{k+1}`.
    pub fn level(&self, k: usize) -> &Arc<PcPresentation> {
        &self.levels[k - 1]
    }

    /// The induced map on `G/γ_{k+1}`.
    pub fn level_map(&self, k: usize) -> &GroupMap {
        &self.maps[k - 1]
    }

    /// Coordinates of `γ_k/γ_{k+1}` inside `G/γ_{k+1}`.
    pub fn layer_section(&self, k: usize) -> &AbelianSection {
        &self.sections[k - 1]
    }

    fn down(&self, k: usize, psi: &GroupMap) -> GroupMap {
        psi.on_prefix_quotient(self.level(k - 1))
            .expect("lower central terms are characteristic")
    }

    /// Full preimage in level `k` of `Fix` of the map induced by `psi` on
    /// level `k - 1`.
    fn preimage(&self, k: usize, psi: &GroupMap) -> Result<Subgroup, TwistedError> {
        let level = self.level(k);
        let c = self.layer_section(k).top().clone();
        if k == 1 {
            return Ok(c);
        }
        let below = self.fix_at(k - 1, &self.down(k, psi))?;
        let lifts = below.gens().iter().map(|x| x.resized(level.len()));
        Ok(Subgroup::generated(level, lifts.chain(c.gens().iter().cloned())))
    }

    /// `L(γ_k/γ_{k+1}, psi)` in level `k` with its `H`.
    pub fn l_at(&self, k: usize, psi: &GroupMap) -> Result<(Subgroup, LSubgroupResult), TwistedError> {
        let h = self.preimage(k, psi)?;
        let l = l_core(self.level(k), self.layer_section(k), &h, psi)?;
        Ok((h, l))
    }

    /// `Fix(psi)` for an endomorphism `psi` of level `k`.
    pub fn fix_at(&self, k: usize, psi: &GroupMap) -> Result<Subgroup, TwistedError> {
        let level = self.level(k);
        let (h, l) = self.l_at(k, psi)?;
        let fix = kernel_of_mu(level, &h, &l);
        for x in fix.gens() {
            if psi.apply(x) != *x {
                return Err(TwistedError::MuNotWellDefined(format!(
                    "kernel element {} is not fixed",
                    level.word_string(x)
                )));
            }
        }
        Ok(fix)
    }

    pub fn fix(&self) -> Result<Subgroup, TwistedError> {
        if self.class() == 0 {
            return Ok(Subgroup::trivial(&self.group));
        }
        self.fix_at(self.class(), &self.phi)
    }

    /// `[C_k : L(C_k, φ_g)]` for any `g` in level `k`.
    pub fn layer_index(&self, k: usize, g: &PcElement) -> Result<Index<BigInt>, TwistedError> {
        let psi = self.level_map(k).twisted_by(g);
        Ok(self.l_at(k, &psi)?.1.index())
    }

    /// Classes of the map induced on level `k`, built layer by layer.
    pub fn classes_at(&self, k: usize) -> Result<ReidemeisterResult, TwistedError> {
        let mut classes = vec![TwistedClass {
            representative: PcElement::identity(0),
            layer_trace: Vec::new(),
        }];
        for layer in 1..=k {
            match self.lift_layer(layer, &classes)? {
                Ok(next) => classes = next,
                Err(w) => return Ok(ReidemeisterResult::Infinite(w)),
            }
        }
        Ok(ReidemeisterResult::Finite {
            count: classes.len(),
            classes,
        })
    }

    /// Lifts the classes of level `k - 1` to level `k`.
    fn lift_layer(
        &self,
        k: usize,
        downstairs: &[TwistedClass],
    ) -> Result<Result<Vec<TwistedClass>, InfinityWitness>, TwistedError> {
        if downstairs.is_empty() {
            return Err(TwistedError::EmptyDownstairs);
        }
        let level = self.level(k);
        let section = self.layer_section(k);
        let mut out = Vec::new();
        for class in downstairs {
            let g = class.representative.resized(level.len());
            let psi = self.level_map(k).twisted_by(&g);
            let (_, l) = self.l_at(k, &psi)?;
            let transversal = match l.lattice.transversal() {
                Ok(t) => t,
                Err(_) => {
                    let vector = l
                        .lattice
                        .annihilator()
                        .expect("infinite index lattice has an annihilator")
                        .iter()
                        .map(|x| x.to_i64().expect("witness entry fits i64"))
                        .collect();
                    return Ok(Err(InfinityWitness::DegenerateLattice {
                        layer: k,
                        representative: g,
                        vector,
                    }));
                }
            };
            for (i, t) in transversal.iter().enumerate() {
                let t: Vec<i64> = t.iter().map(|x| x.to_i64().expect("coordinate fits i64")).collect();
                let c = section.section(level, &section.reduce(&t));
                let mut layer_trace = class.layer_trace.clone();
                layer_trace.push(i);
                out.push(TwistedClass {
                    representative: level.mul(&g, &c),
                    layer_trace,
                });
            }
        }
        Ok(Ok(out))
    }

    /// Layered algorithm on the whole group.
    pub fn reidemeister(&self) -> Result<ReidemeisterResult, TwistedError> {
        if self.class() == 0 {
            return Ok(ReidemeisterResult::Finite {
                count: 1,
                classes: vec![TwistedClass {
                    representative: self.group.identity(),
                    layer_trace: Vec::new(),
                }],
            });
        }
        self.classes_at(self.class())
    }

    /// `x` with `(xφ)·g = f·x`.
    pub fn decide(&self, g: &PcElement, f: &PcElement) -> Result<Option<PcElement>, TwistedError> {
        if self.class() == 0 {
            return Ok(Some(self.group.identity()));
        }
        let x = self.decide_at(self.class(), g, f)?;
        if let Some(x) = &x {
            let grp = &self.group;
            if grp.mul(&self.phi.apply(x), g) != grp.mul(f, x) {
                return Err(TwistedError::MuNotWellDefined("assembled witness fails".into()));
            }
        }
        Ok(x)
    }

    fn decide_at(&self, k: usize, g: &PcElement, f: &PcElement) -> Result<Option<PcElement>, TwistedError> {
        let level = self.level(k);
        let phi = self.level_map(k);
        let x0 = if k == 1 {
            level.identity()
        } else {
            let below = self.level(k - 1).len();
            let gb = PcElement(g.exponents()[..below].to_vec());
            let fb = PcElement(f.exponents()[..below].to_vec());
            match self.decide_at(k - 1, &gb, &fb)? {
                Some(x) => x.resized(level.len()),
                None => return Ok(None),
            }
        };
        // (x0 φ)·g = f·x0·c with c central in level k
        let c = level.mul(&level.inv(&level.mul(f, &x0)), &level.mul(&phi.apply(&x0), g));
        let psi = phi.twisted_by(g);
        let (h, l) = self.l_at(k, &psi)?;
        let Some(y) = l.preimage_of(level, &h, &level.inv(&c)) else {
            return Ok(None);
        };
        Ok(Some(level.mul(&x0, &y)))
    }
}

/// `ker μ` on `H`, from the coordinates of `μ` on the induced sequence.
fn kernel_of_mu(g: &PcPresentation, h: &Subgroup, l: &LSubgroupResult) -> Subgroup {
    if l.section.rank() == 0 {
        return h.clone();
    }
    crate::pc::kernel_of_coordinates(g, h, &l.coordinates, l.section.invariants())
}

fn require_automorphism(phi: &GroupMap) -> Result<(), TwistedError> {
    if phi.kind() != MapKind::Automorphism {
        return Err(TwistedError::NotAutomorphism);
    }
    Ok(())
}

/// `R(φ)` with representatives. For a torsion-free group of class at least
/// two an upper-central fixed vector is tried first.
pub fn reidemeister(phi: &GroupMap) -> Result<ReidemeisterResult, TwistedError> {
    require_automorphism(phi)?;
    let g = phi.source();
    if g.class() >= 2 && g.relative_orders().iter().all(Option::is_none) {
        if let Some(w) = infinity_witness_uc(phi)? {
            return Ok(ReidemeisterResult::Infinite(w));
        }
    }
    Tower::new(phi)?.reidemeister()
}

/// `R(φ)` by the layered algorithm alone.
pub fn reidemeister_layered(phi: &GroupMap) -> Result<ReidemeisterResult, TwistedError> {
    require_automorphism(phi)?;
    Tower::new(phi)?.reidemeister()
}

pub fn fix_subgroup(phi: &GroupMap) -> Result<Subgroup, TwistedError> {
    Tower::new(phi)?.fix()
}

pub fn decide(phi: &GroupMap, g: &PcElement, f: &PcElement) -> Result<Option<PcElement>, TwistedError> {
    require_automorphism(phi)?;
    Tower::new(phi)?.decide(g, f)
}

/// Checks that `c` is a central tail mapped into itself by `psi`.
fn check_central_tail(g: &Arc<PcPresentation>, c: &Subgroup, psi: &GroupMap) -> Result<usize, TwistedError> {
    for x in c.gens() {
        for i in 0..g.len() {
            if !g.commutator(x, &g.generator(i)).is_identity() {
                return Err(TwistedError::NotCentral);
            }
        }
        if !c.contains(g, &psi.apply(x)) {
            return Err(TwistedError::NotAdmissible);
        }
    }
    Ok(c.as_tail().ok_or(crate::pc::PcError::NotTailCompatible)?)
}

/// `L(C, ψ)` for a central tail `C` of `G`, returned with `H`.
pub fn l_subgroup(c: &Subgroup, psi: &GroupMap) -> Result<(Subgroup, LSubgroupResult), TwistedError> {
    let g = psi.source();
    let cut = check_central_tail(g, c, psi)?;
    let section = AbelianSection::new(g, c, &Subgroup::trivial(g));
    let h = if cut == 0 {
        Subgroup::whole(g)
    } else {
        let q = quotient_mod(g, c)?;
        let fix = fix_subgroup(&psi.on_prefix_quotient(&q.group)?)?;
        Subgroup::generated(g, fix.gens().iter().map(|x| q.lift(x)).chain(c.gens().iter().cloned()))
    };
    let l = l_core(g, &section, &h, psi)?;
    Ok((h, l))
}

/// Classes of `φ` on `G` lying over the given classes of `G/C`; the lift of
/// a representative keeps its exponents and puts zeros on `C`.
pub fn lift_classes(
    c: &Subgroup,
    phi: &GroupMap,
    downstairs: &[TwistedClass],
) -> Result<ReidemeisterResult, TwistedError> {
    if downstairs.is_empty() {
        return Err(TwistedError::EmptyDownstairs);
    }
    let g = phi.source();
    check_central_tail(g, c, phi)?;
    let mut out = Vec::new();
    for class in downstairs {
        let rep = class.representative.resized(g.len());
        let psi = phi.twisted_by(&rep);
        let (_, l) = l_subgroup(c, &psi)?;
        let transversal = match l.lattice.transversal() {
            Ok(t) => t,
            Err(_) => {
                let vector = l
                    .lattice
                    .annihilator()
                    .expect("infinite index lattice has an annihilator")
                    .iter()
                    .map(|x| x.to_i64().expect("witness entry fits i64"))
                    .collect();
                return Ok(ReidemeisterResult::Infinite(InfinityWitness::DegenerateLattice {
                    layer: g.weights().get(c.as_tail().unwrap_or(0)).copied().unwrap_or(0),
                    representative: rep,
                    vector,
                }));
            }
        };
        for (i, t) in transversal.iter().enumerate() {
            let t: Vec<i64> = t.iter().map(|x| x.to_i64().expect("coordinate fits i64")).collect();
            let z = l.section.section(g, &l.section.reduce(&t));
            let mut layer_trace = class.layer_trace.clone();
            layer_trace.push(i);
            out.push(TwistedClass {
                representative: g.mul(&rep, &z),
                layer_trace,
            });
        }
    }
    Ok(ReidemeisterResult::Finite {
        count: out.len(),
        classes: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pc::{check_map, parse_presentation};

    const H: &str = "pcgroup H\ngens a b c\norders 0 0 0\nconj b a = b c^-1\n";

    fn heis() -> Arc<PcPresentation> {
        Arc::new(parse_presentation(H).unwrap())
    }

    fn aut(g: &Arc<PcPresentation>, images: &[&[i64]]) -> GroupMap {
        let imgs = images.iter().map(|e| g.element(e)).collect();
        check_map(g, g, imgs, MapKind::Automorphism).unwrap()
    }

    #[test]
    fn heisenberg_two_classes() {
        let g = heis();
        // a ↦ b, b ↦ ab, c ↦ c⁻¹
        let phi = aut(&g, &[&[0, 1, 0], &[1, 1, 0], &[0, 0, -1]]);
        let r = reidemeister(&phi).unwrap();
        assert_eq!(r.count(), Some(2));
        let reps: Vec<String> = r.representatives().iter().map(|x| g.word_string(x)).collect();
        assert_eq!(reps, vec!["1", "c"]);
    }

    #[test]
    fn heisenberg_infinite_and_four() {
        let g = heis();
        // a ↦ ab, b ↦ b, c ↦ c
        let phi = aut(&g, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(reidemeister_layered(&phi).unwrap().is_infinite());
        assert!(reidemeister(&phi).unwrap().is_infinite());
        // a ↦ ab, b ↦ a²b, c ↦ c^{det} = c⁻¹
        let phi = aut(&g, &[&[1, 1, 0], &[2, 1, 0], &[0, 0, -1]]);
        assert_eq!(reidemeister(&phi).unwrap().count(), Some(4));
    }

    #[test]
    fn decide_examples() {
        let g = heis();
        let phi = aut(&g, &[&[0, 1, 0], &[1, 1, 0], &[0, 0, -1]]);
        let one = g.identity();
        assert_eq!(decide(&phi, &one, &g.element(&[0, 0, 1])).unwrap(), None);
        let x = decide(&phi, &one, &g.element(&[0, 0, 2])).unwrap().unwrap();
        assert_eq!(x, g.element(&[0, 0, -1]));
        let y = g.element(&[2, -1, 3]);
        assert_eq!(decide(&phi, &y, &y).unwrap(), Some(g.identity()));
    }

    #[test]
    fn fix_examples() {
        let g = heis();
        let phi = aut(&g, &[&[1, 0, 0], &[0, 1, 1], &[0, 0, 1]]);
        let fix = fix_subgroup(&phi).unwrap();
        assert_eq!(fix, Subgroup::generated(&g, [g.generator(0), g.generator(2)]));
        assert_eq!(fix_subgroup(&GroupMap::identity(&g)).unwrap(), Subgroup::whole(&g));
        let z2 = Arc::new(parse_presentation("pcgroup Z2\ngens x y\norders 0 0\n").unwrap());
        let swap = aut(&z2, &[&[0, 1], &[1, 0]]);
        assert_eq!(
            fix_subgroup(&swap).unwrap(),
            Subgroup::generated(&z2, [z2.element(&[1, 1])])
        );
    }

    #[test]
    fn l_subgroup_examples() {
        let g = heis();
        let phi = aut(&g, &[&[0, 1, 0], &[1, 1, 0], &[0, 0, -1]]);
        let c = Subgroup::tail(&g, 2);
        let (_, l) = l_subgroup(&c, &phi).unwrap();
        assert_eq!(l.index(), Index::Finite(BigInt::from(2)));
        for (f, cj) in l.preimages.iter().zip(&l.generators) {
            assert_eq!(phi.apply(f), g.mul(cj, f));
        }
        let (_, l) = l_subgroup(&c, &GroupMap::identity(&g)).unwrap();
        assert!(l.generators.iter().all(PcElement::is_identity));
        let whole = Subgroup::whole(&g);
        assert_eq!(l_subgroup(&whole, &phi).unwrap_err(), TwistedError::NotCentral);
    }

    #[test]
    fn lift_classes_examples() {
        let g = heis();
        let phi = aut(&g, &[&[0, 1, 0], &[1, 1, 0], &[0, 0, -1]]);
        let down = vec![TwistedClass {
            representative: PcElement::identity(2),
            layer_trace: vec![0],
        }];
        let c = Subgroup::tail(&g, 2);
        assert_eq!(lift_classes(&c, &phi, &down).unwrap().count(), Some(2));
        assert_eq!(lift_classes(&c, &phi, &[]).unwrap_err(), TwistedError::EmptyDownstairs);
        let z2 = Arc::new(parse_presentation("pcgroup Z2\ngens x y\norders 0 0\n").unwrap());
        let id = GroupMap::identity(&z2);
        let down = vec![TwistedClass {
            representative: PcElement::identity(0),
            layer_trace: vec![],
        }];
        assert!(lift_classes(&Subgroup::whole(&z2), &id, &down).unwrap().is_infinite());
    }

    #[test]
    fn not_an_automorphism() {
        let g = heis();
        let imgs = vec![g.generator(0), g.identity(), g.identity()];
        let f = check_map(&g, &g, imgs, MapKind::Endomorphism).unwrap();
        assert_eq!(reidemeister(&f).unwrap_err(), TwistedError::NotAutomorphism);
    }
}
