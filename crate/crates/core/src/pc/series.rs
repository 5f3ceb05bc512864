use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::intlat::{kernel, Matrix};

use super::{AbelianSection, PcElement, PcError, PcPresentation, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    Lower,
    Upper,
}

/// A central series with its abelian factors. Lower series terms are listed
/// descending from the whole group to the trivial group, upper series terms
/// ascending from the trivial group to the whole group; `factors[i]` is the
/// section between `terms[i]` and `terms[i + 1]`.
#[derive(Clone, Debug)]
pub struct CentralSeriesData {
    pub kind: SeriesKind,
    pub terms: Vec<Subgroup>,
    pub factors: Vec<AbelianSection>,
}

impl CentralSeriesData {
    pub fn length(&self) -> usize {
        self.factors.len()
    }
}

/// `γ_w` as tails of the generating sequence.
pub fn lower_central_series(g: &PcPresentation) -> CentralSeriesData {
    let class = g.class();
    let terms: Vec<Subgroup> = (1..=class + 1)
        .map(|w| {
            if w <= class {
                Subgroup::tail(g, g.layer(w).start)
            } else {
                Subgroup::trivial(g)
            }
        })
        .collect();
    let factors = terms.windows(2).map(|t| AbelianSection::new(g, &t[0], &t[1])).collect();
    CentralSeriesData {
        kind: SeriesKind::Lower,
        terms,
        factors,
    }
}

/// Computes `γ_{w+1} = [γ_w, G]` by normal closure and checks that each term
/// is a tail of the sequence; returns the weight of every generator.
pub(crate) fn infer_weights(g: &PcPresentation) -> Result<Vec<usize>, PcError> {
    let n = g.len();
    let gens: Vec<PcElement> = (0..n).map(|i| g.generator(i)).collect();
    let mut weights = vec![0; n];
    let mut term = Subgroup::whole(g);
    let mut start = 0;
    let mut w = 1;
    while !term.is_trivial() {
        let next = Subgroup::normal_closure(
            g,
            term.gens()
                .iter()
                .flat_map(|t| gens.iter().map(move |x| (t, x)))
                .map(|(t, x)| g.commutator(t, x)),
        );
        let Some(next_start) = next.as_tail() else {
            return Err(PcError::NotRefined(format!(
                "term {} of the lower central series is not generated by a tail",
                w + 1
            )));
        };
        if next_start <= start {
            return Err(PcError::NotNilpotent("lower central series does not descend".into()));
        }
        for wt in &mut weights[start..next_start] {
            *wt = w;
        }
        start = next_start;
        term = next;
        w += 1;
    }
    Ok(weights)
}

/// `ζ_i` computed one centre at a time. For `Z = ζ_i`, the next term is cut
/// out of `G` by descending the filtration `Z·γ_w`: on the current candidate
/// `K` with `[K, G] ⊆ Z·γ_w`, each `x ↦ [x, g]` is a homomorphism into the
/// abelian section `Z·γ_w / Z·γ_{w+1}`, and the next candidate is the
/// intersection of the kernels.
pub fn upper_central_series(g: &PcPresentation) -> CentralSeriesData {
    let n = g.len();
    let gens: Vec<PcElement> = (0..n).map(|i| g.generator(i)).collect();
    let lower: Vec<Subgroup> = (1..=g.class() + 1)
        .map(|w| {
            if w <= g.class() {
                Subgroup::tail(g, g.layer(w).start)
            } else {
                Subgroup::trivial(g)
            }
        })
        .collect();
    let whole = Subgroup::whole(g);
    let mut terms = vec![Subgroup::trivial(g)];
    while terms.last().expect("nonempty") != &whole {
        let z = terms.last().expect("nonempty").clone();
        let mut k = whole.clone();
        for w in 1..lower.len() {
            let upper = z.join(g, &lower[w - 1]);
            let below = z.join(g, &lower[w]);
            if upper == below {
                continue;
            }
            let section = AbelianSection::new(g, &upper, &below);
            k = kernel_into_section(g, &k, &section, |x| gens.iter().map(|y| g.commutator(x, y)).collect());
        }
        assert!(k != z, "upper central series stalled");
        terms.push(k);
    }
    let factors = terms.windows(2).map(|t| AbelianSection::new(g, &t[1], &t[0])).collect();
    CentralSeriesData {
        kind: SeriesKind::Upper,
        terms,
        factors,
    }
}

/// Kernel of a homomorphism from `h` into a product of copies of an abelian
/// section, given by the images of the induced sequence of `h`.
pub(crate) fn kernel_into_section(
    g: &PcPresentation,
    h: &Subgroup,
    section: &AbelianSection,
    images: impl Fn(&PcElement) -> Vec<PcElement>,
) -> Subgroup {
    let rows = h.gens();
    let columns: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| {
            images(r)
                .iter()
                .flat_map(|y| section.coords(g, y).expect("image lies in the section"))
                .collect()
        })
        .collect();
    kernel_of_coordinates(g, h, &columns, section.invariants())
}

/// Kernel of the homomorphism `h → ⊕ copies of Z/d` sending the `k`-th row of
/// `h` to `columns[k]`, with `invariants` repeated over the copies.
pub(crate) fn kernel_of_coordinates(
    g: &PcPresentation,
    h: &Subgroup,
    columns: &[Vec<i64>],
    invariants: &[i64],
) -> Subgroup {
    let rows = h.gens();
    let m = rows.len();
    let height = columns.first().map_or(0, Vec::len);
    if height == 0 || columns.iter().all(|c| c.iter().all(|&x| x == 0)) {
        return h.clone();
    }
    let mut cols: Vec<Vec<BigInt>> = columns
        .iter()
        .map(|c| c.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    for i in 0..height {
        let d = invariants[i % invariants.len()];
        if d != 0 {
            let mut v = vec![BigInt::from(0); height];
            v[i] = BigInt::from(d);
            cols.push(v);
        }
    }
    let basis = kernel(&Matrix::from_columns(height, &cols));
    let mut gens: Vec<PcElement> = basis
        .iter()
        .map(|b| {
            let e: Vec<i64> = b[..m].iter().map(|x| x.to_i64().expect("exponent fits i64")).collect();
            h.element(g, &e)
        })
        .collect();
    for q in 0..m {
        for p in 0..q {
            gens.push(g.commutator(&rows[q], &rows[p]));
        }
    }
    h.normal_closure_in(g, gens)
}
